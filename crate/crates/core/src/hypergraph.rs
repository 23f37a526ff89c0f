//! Uniform hypergraphs on dense vertex sets `0..n`.
//!
//! A [`Hypergraph`] is an immutable value: edges are strictly sorted vertex
//! tuples kept in lexicographic order, with a membership index backed by
//! 128-bit vertex masks when `n <= 128` and by sorted tuples otherwise.

use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Read-only edge membership, implemented by materialized hypergraphs and by
/// implicit hosts such as [`BlowUpView`].
pub trait EdgeOracle {
    fn uniformity(&self) -> usize;
    fn vertex_count(&self) -> usize;
    /// `edge` must hold `uniformity()` vertices in any order. Tuples with a
    /// repeated vertex are never edges.
    fn contains_edge(&self, edge: &[u32]) -> bool;
    fn degree(&self, v: u32) -> usize;
}

#[derive(Clone)]
enum EdgeIndex {
    Mask(HashSet<u128>),
    Tuple(HashSet<Vec<u32>>),
}

fn mask_of(edge: &[u32]) -> u128 {
    edge.iter().fold(0u128, |m, &v| m | (1u128 << v))
}

#[derive(Clone)]
pub struct Hypergraph {
    k: usize,
    n: usize,
    edges: Vec<Vec<u32>>,
    degrees: Vec<usize>,
    index: EdgeIndex,
}

impl Hypergraph {
    /// Builds a `k`-graph on `n` vertices. Edges may list their vertices in
    /// any order; duplicates are rejected rather than merged.
    pub fn new<E: AsRef<[u32]>>(k: usize, n: usize, edges: impl IntoIterator<Item = E>) -> Result<Self> {
        if k < 2 {
            return Err(Error::Uniformity(k));
        }
        let mut sorted = Vec::new();
        for e in edges {
            let e = e.as_ref();
            if e.len() != k {
                return Err(Error::EdgeArity {
                    edge: e.to_vec(),
                    expected: k,
                    found: e.len(),
                });
            }
            if let Some(&v) = e.iter().find(|&&v| v as usize >= n) {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            let mut s = e.to_vec();
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::RepeatedVertex { edge: e.to_vec() });
            }
            sorted.push(s);
        }
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].clone()));
        }
        Ok(Self::from_sorted_unique(k, n, sorted))
    }

    /// Set-semantics constructor for internal builders whose definitions are
    /// edge *sets* (quotients, degenerate zycles). Inputs must be well formed.
    pub(crate) fn from_edge_set(k: usize, n: usize, edges: impl IntoIterator<Item = Vec<u32>>) -> Self {
        let mut sorted: Vec<Vec<u32>> = edges
            .into_iter()
            .map(|mut e| {
                e.sort_unstable();
                debug_assert_eq!(e.len(), k);
                debug_assert!(e.windows(2).all(|w| w[0] < w[1]));
                debug_assert!(e.iter().all(|&v| (v as usize) < n));
                e
            })
            .collect();
        sorted.sort_unstable();
        sorted.dedup();
        Self::from_sorted_unique(k, n, sorted)
    }

    fn from_sorted_unique(k: usize, n: usize, edges: Vec<Vec<u32>>) -> Self {
        let mut degrees = vec![0usize; n];
        for e in &edges {
            for &v in e {
                degrees[v as usize] += 1;
            }
        }
        let index = if n <= 128 {
            EdgeIndex::Mask(edges.iter().map(|e| mask_of(e)).collect())
        } else {
            EdgeIndex::Tuple(edges.iter().cloned().collect())
        };
        Hypergraph {
            k,
            n,
            edges,
            degrees,
            index,
        }
    }

    pub fn empty(k: usize, n: usize) -> Result<Self> {
        Self::new::<Vec<u32>>(k, n, Vec::new())
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in lexicographic order, each strictly increasing.
    pub fn edges(&self) -> &[Vec<u32>] {
        &self.edges
    }

    pub fn has_edge(&self, edge: &[u32]) -> bool {
        self.contains_edge(edge)
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// Image of `self` under the vertex relabeling `perm` (a permutation of `0..n`).
    pub fn relabel(&self, perm: &[u32]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::PartialMap {
                expected: self.n,
                got: perm.len(),
            });
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p as usize >= self.n || std::mem::replace(&mut seen[p as usize], true) {
                return Err(invalid("relabeling is not a permutation"));
            }
        }
        Ok(Self::from_edge_set(
            self.k,
            self.n,
            self.edges.iter().map(|e| e.iter().map(|&v| perm[v as usize]).collect()),
        ))
    }

    /// Adds `extra` edges (set union). Pre-existing edges are kept as is.
    pub fn with_edges(&self, extra: impl IntoIterator<Item = Vec<u32>>) -> Result<Self> {
        let mut all = self.edges.clone();
        for e in extra {
            if e.len() != self.k {
                return Err(Error::EdgeArity {
                    found: e.len(),
                    expected: self.k,
                    edge: e,
                });
            }
            if let Some(&v) = e.iter().find(|&&v| v as usize >= self.n) {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
            }
            let mut s = e.clone();
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::RepeatedVertex { edge: e });
            }
            all.push(s);
        }
        Ok(Self::from_edge_set(self.k, self.n, all))
    }

    /// Blow-up `B(F, t)`: vertex `v` becomes `{v·t, …, v·t+t−1}` and every
    /// edge becomes all of its transversals.
    pub fn blow_up(&self, t: usize) -> Result<Self> {
        if t < 1 {
            return Err(invalid("blow-up factor must be ≥ 1"));
        }
        let t32 = t as u32;
        let mut out = Vec::with_capacity(self.edges.len() * t.pow(self.k as u32));
        for e in &self.edges {
            for offsets in (0..self.k).map(|_| 0..t32).multi_cartesian_product() {
                out.push(e.iter().zip(&offsets).map(|(&v, &o)| v * t32 + o).collect());
            }
        }
        Ok(Self::from_edge_set(self.k, self.n * t, out))
    }

    /// Replaces the single vertex `v` by `r` copies: `v` itself plus new
    /// vertices `n, …, n+r−2`. Edges through `v` fan out over the copies.
    pub fn blow_up_vertex(&self, v: u32, r: usize) -> Result<Self> {
        if v as usize >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        if r < 1 {
            return Err(invalid("vertex blow-up factor must be ≥ 1"));
        }
        let copies: Vec<u32> = std::iter::once(v)
            .chain((0..r - 1).map(|i| (self.n + i) as u32))
            .collect();
        let mut out = Vec::new();
        for e in &self.edges {
            if e.contains(&v) {
                for &c in &copies {
                    out.push(e.iter().map(|&u| if u == v { c } else { u }).collect());
                }
            } else {
                out.push(e.clone());
            }
        }
        Ok(Self::from_edge_set(self.k, self.n + r - 1, out))
    }

    /// Serializes to the `khg v1` text format.
    pub fn to_khg(&self) -> String {
        let mut s = format!("{} {} {}\n", self.k, self.n, self.edges.len());
        for e in &self.edges {
            s.push_str(&e.iter().join(" "));
            s.push('\n');
        }
        s
    }

    /// Parses the `khg v1` text format. Lines must already be in canonical
    /// order so that parsing and printing round-trip byte for byte.
    pub fn from_khg(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or_else(|| Error::Parse {
            position: 1,
            message: "missing header line".into(),
        })?;
        let head: Vec<usize> = parse_numbers(header, 1)?;
        if head.len() != 3 {
            return Err(Error::Parse {
                position: 1,
                message: "header must be `k n m`".into(),
            });
        }
        let (k, n, m) = (head[0], head[1], head[2]);
        let mut edges: Vec<Vec<u32>> = Vec::with_capacity(m);
        for (i, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let e: Vec<u32> = parse_numbers(line, i + 1)?;
            if e.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Parse {
                    position: i + 1,
                    message: "edge vertices must be strictly increasing".into(),
                });
            }
            if edges.last().is_some_and(|last| *last >= e) {
                return Err(Error::Parse {
                    position: i + 1,
                    message: "edges must be in strictly increasing lexicographic order".into(),
                });
            }
            edges.push(e);
        }
        if edges.len() != m {
            return Err(Error::Parse {
                position: 1,
                message: format!("header announces {m} edges, found {}", edges.len()),
            });
        }
        Self::new(k, n, edges)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("hypergraph serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            position: e.column(),
            message: e.to_string(),
        })
    }
}

fn parse_numbers<T: std::str::FromStr>(line: &str, lineno: usize) -> Result<Vec<T>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse().map_err(|_| Error::Parse {
                position: lineno,
                message: format!("not a non-negative integer: {tok:?}"),
            })
        })
        .collect()
}

impl EdgeOracle for Hypergraph {
    fn uniformity(&self) -> usize {
        self.k
    }

    fn vertex_count(&self) -> usize {
        self.n
    }

    fn contains_edge(&self, edge: &[u32]) -> bool {
        if edge.len() != self.k || edge.iter().any(|&v| v as usize >= self.n) {
            return false;
        }
        match &self.index {
            EdgeIndex::Mask(set) => set.contains(&mask_of(edge)),
            EdgeIndex::Tuple(set) => {
                let mut s = edge.to_vec();
                s.sort_unstable();
                set.contains(&s)
            }
        }
    }

    fn degree(&self, v: u32) -> usize {
        self.degrees[v as usize]
    }
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Hypergraph {}

impl Hash for Hypergraph {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.k.hash(state);
        self.n.hash(state);
        self.edges.hash(state);
    }
}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hypergraph(k={}, n={}, edges={:?})", self.k, self.n, self.edges)
    }
}

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_khg())
    }
}

#[derive(Serialize, Deserialize)]
struct HypergraphJson {
    k: usize,
    n: usize,
    edges: Vec<Vec<u32>>,
}

impl Serialize for Hypergraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        HypergraphJson {
            k: self.k,
            n: self.n,
            edges: self.edges.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Hypergraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = HypergraphJson::deserialize(d)?;
        Hypergraph::new(raw.k, raw.n, raw.edges).map_err(serde::de::Error::custom)
    }
}

/// Implicit blow-up `B(H, t)`: vertex `v` is copy `v % t` of base vertex `v / t`.
#[derive(Clone, Copy, Debug)]
pub struct BlowUpView<'a> {
    base: &'a Hypergraph,
    factor: usize,
}

impl<'a> BlowUpView<'a> {
    pub fn new(base: &'a Hypergraph, factor: usize) -> Result<Self> {
        if factor < 1 {
            return Err(invalid("blow-up factor must be ≥ 1"));
        }
        Ok(BlowUpView { base, factor })
    }

    pub fn base(&self) -> &'a Hypergraph {
        self.base
    }

    pub fn factor(&self) -> usize {
        self.factor
    }

    /// The class projection: the base vertex a copy belongs to.
    pub fn class_of(&self, v: u32) -> u32 {
        v / self.factor as u32
    }
}

impl EdgeOracle for BlowUpView<'_> {
    fn uniformity(&self) -> usize {
        self.base.k
    }

    fn vertex_count(&self) -> usize {
        self.base.n * self.factor
    }

    fn contains_edge(&self, edge: &[u32]) -> bool {
        if edge.iter().any(|&v| v as usize >= self.vertex_count()) {
            return false;
        }
        let classes: Vec<u32> = edge.iter().map(|&v| self.class_of(v)).collect();
        self.base.contains_edge(&classes)
    }

    fn degree(&self, v: u32) -> usize {
        self.base.degree(self.class_of(v)) * self.factor.pow(self.base.k as u32 - 1)
    }
}

/// All `C(n, k)` edges.
pub fn complete_kgraph(k: usize, n: usize) -> Result<Hypergraph> {
    if k < 2 {
        return Err(Error::Uniformity(k));
    }
    if n < k {
        return Err(invalid(format!("complete k-graph needs n ≥ k (n={n}, k={k})")));
    }
    Ok(Hypergraph::from_sorted_unique(
        k,
        n,
        (0..n as u32).combinations(k).collect(),
    ))
}

/// Sizes of a near-balanced split of `total` into `parts` classes: sizes
/// differ by at most one and larger classes come first.
pub fn near_balanced_sizes(total: usize, parts: usize) -> Vec<usize> {
    if parts == 0 {
        return Vec::new();
    }
    let (q, r) = (total / parts, total % parts);
    (0..parts).map(|i| q + usize::from(i < r)).collect()
}

/// Rainbow edges across consecutive vertex blocks of the given sizes.
/// Parts may be empty here; the public constructor rejects that.
pub(crate) fn rainbow_edges(k: usize, parts: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for chosen in (0..parts.len()).combinations(k) {
        for picks in chosen
            .iter()
            .map(|&p| parts[p].iter().copied())
            .multi_cartesian_product()
        {
            out.push(picks);
        }
    }
    out
}

pub(crate) fn consecutive_blocks(start: u32, sizes: &[usize]) -> Vec<Vec<u32>> {
    let mut next = start;
    sizes
        .iter()
        .map(|&s| {
            let block: Vec<u32> = (next..next + s as u32).collect();
            next += s as u32;
            block
        })
        .collect()
}

/// Complete multipartite `k`-graph: parts are consecutive vertex blocks and
/// every edge meets `k` distinct parts.
pub fn complete_multipartite(k: usize, part_sizes: &[usize]) -> Result<Hypergraph> {
    if k < 2 {
        return Err(Error::Uniformity(k));
    }
    if part_sizes.is_empty() {
        return Err(invalid("complete multipartite graph needs at least one part"));
    }
    if part_sizes.contains(&0) {
        return Err(invalid("part sizes must be ≥ 1"));
    }
    let parts = consecutive_blocks(0, part_sizes);
    let n = part_sizes.iter().sum();
    Ok(Hypergraph::from_edge_set(k, n, rainbow_edges(k, &parts)))
}

/// `C(n, k)` as `u64`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}
