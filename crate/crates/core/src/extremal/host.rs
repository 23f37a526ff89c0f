use std::collections::HashMap;

use itertools::Itertools;

use crate::hypergraph::{EdgeOracle, Hypergraph};

/// Largest `n` for which edge ranks are looked up in a dense mask table.
const DENSE_LIMIT: usize = 20;

enum RankIndex {
    Dense(Vec<u32>),
    Sparse(HashMap<u128, u32>),
}

/// Mutable `k`-graph over the lexicographically ranked `k`-subsets of `0..n`.
pub(crate) struct EdgeSet {
    k: usize,
    n: usize,
    all: Vec<Vec<u32>>,
    index: RankIndex,
    present: Vec<bool>,
    degrees: Vec<usize>,
    count: usize,
}

fn mask(edge: &[u32]) -> u128 {
    edge.iter().fold(0u128, |m, &v| m | (1u128 << v))
}

impl EdgeSet {
    pub(crate) fn new(k: usize, n: usize) -> Self {
        assert!(n <= 128, "rank index supports at most 128 vertices");
        let all: Vec<Vec<u32>> = (0..n as u32).combinations(k).collect();
        let index = if n <= DENSE_LIMIT {
            let mut t = vec![u32::MAX; 1 << n];
            for (r, e) in all.iter().enumerate() {
                t[mask(e) as usize] = r as u32;
            }
            RankIndex::Dense(t)
        } else {
            RankIndex::Sparse(all.iter().enumerate().map(|(r, e)| (mask(e), r as u32)).collect())
        };
        EdgeSet {
            k,
            n,
            present: vec![false; all.len()],
            all,
            index,
            degrees: vec![0; n],
            count: 0,
        }
    }

    pub(crate) fn from_graph(g: &Hypergraph) -> Self {
        let mut s = EdgeSet::new(g.k(), g.n());
        for e in g.edges() {
            let r = s.rank(e).expect("valid edge");
            s.insert(r);
        }
        s
    }

    /// All potential edges in lexicographic order; position = rank.
    pub(crate) fn all(&self) -> &[Vec<u32>] {
        &self.all
    }

    pub(crate) fn rank(&self, edge: &[u32]) -> Option<usize> {
        if edge.len() != self.k || edge.iter().any(|&v| v as usize >= self.n) {
            return None;
        }
        let m = mask(edge);
        if m.count_ones() as usize != self.k {
            return None;
        }
        let r = match &self.index {
            RankIndex::Dense(t) => t[m as usize],
            RankIndex::Sparse(h) => *h.get(&m)?,
        };
        Some(r as usize)
    }

    pub(crate) fn is_present(&self, r: usize) -> bool {
        self.present[r]
    }

    pub(crate) fn insert(&mut self, r: usize) {
        if !self.present[r] {
            self.present[r] = true;
            self.count += 1;
            for &v in &self.all[r] {
                self.degrees[v as usize] += 1;
            }
        }
    }

    pub(crate) fn remove(&mut self, r: usize) {
        if self.present[r] {
            self.present[r] = false;
            self.count -= 1;
            for &v in &self.all[r] {
                self.degrees[v as usize] -= 1;
            }
        }
    }

    pub(crate) fn count(&self) -> usize {
        self.count
    }

    pub(crate) fn ranks(&self) -> Vec<usize> {
        (0..self.all.len()).filter(|&r| self.present[r]).collect()
    }

    pub(crate) fn to_hypergraph(&self) -> Hypergraph {
        Hypergraph::from_edge_set(self.k, self.n, self.ranks().into_iter().map(|r| self.all[r].clone()))
    }
}

impl EdgeOracle for EdgeSet {
    fn uniformity(&self) -> usize {
        self.k
    }

    fn vertex_count(&self) -> usize {
        self.n
    }

    fn contains_edge(&self, edge: &[u32]) -> bool {
        self.rank(edge).is_some_and(|r| self.present[r])
    }

    fn degree(&self, v: u32) -> usize {
        self.degrees[v as usize]
    }
}
