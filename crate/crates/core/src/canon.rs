//! Canonical labeling by colour refinement and individualization.
//!
//! Vertex colours are refined until equitable: a vertex's new colour is
//! determined by its old colour and the multiset, over incident edges, of the
//! colours of the other vertices in the edge. Non-discrete partitions are
//! split by individualizing each vertex of the first non-singleton cell.
//! The canonical form is the lexicographically least relabeled edge list over
//! all leaves; automorphisms discovered at equal leaves prune sibling
//! branches lying in an already explored orbit.

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::hypergraph::{EdgeOracle, Hypergraph};
use crate::search::{Engine, Reuse, SearchLimits, SearchOutcome};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CanonicalForm {
    pub k: usize,
    pub n: usize,
    pub edges: Vec<Vec<u32>>,
}

impl CanonicalForm {
    /// Hex prefix of the SHA-256 of the `khg v1` rendering.
    pub fn stable_hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.graph().to_khg().as_bytes());
        let digest = h.finalize();
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn graph(&self) -> Hypergraph {
        Hypergraph::from_edge_set(self.k, self.n, self.edges.iter().cloned())
    }
}

type Cert = Vec<(u8, Vec<u32>)>;

struct Canonizer<'a> {
    n: usize,
    edges: &'a [(u8, Vec<u32>)],
    incident: Vec<Vec<usize>>,
    best: Option<(Cert, Vec<u32>)>,
    automorphisms: Vec<Vec<u32>>,
}

impl<'a> Canonizer<'a> {
    fn new(n: usize, edges: &'a [(u8, Vec<u32>)]) -> Self {
        let mut incident = vec![Vec::new(); n];
        for (i, (_, e)) in edges.iter().enumerate() {
            for &v in e {
                incident[v as usize].push(i);
            }
        }
        Canonizer {
            n,
            edges,
            incident,
            best: None,
            automorphisms: Vec::new(),
        }
    }

    fn refine(&self, colors: &mut [u32]) {
        type Signature = (u32, Vec<(u8, Vec<u32>)>);
        let mut classes = colors.iter().collect::<std::collections::BTreeSet<_>>().len();
        loop {
            let sigs: Vec<Signature> = (0..self.n)
                .map(|v| {
                    let mut around: Vec<(u8, Vec<u32>)> = self.incident[v]
                        .iter()
                        .map(|&ei| {
                            let (c, e) = &self.edges[ei];
                            let mut others: Vec<u32> = e
                                .iter()
                                .filter(|&&w| w as usize != v)
                                .map(|&w| colors[w as usize])
                                .collect();
                            others.sort_unstable();
                            (*c, others)
                        })
                        .collect();
                    around.sort_unstable();
                    (colors[v], around)
                })
                .collect();
            let mut ranked: Vec<&Signature> = sigs.iter().collect();
            ranked.sort_unstable();
            ranked.dedup();
            for v in 0..self.n {
                colors[v] = ranked.binary_search(&&sigs[v]).expect("signature present") as u32;
            }
            if ranked.len() == classes {
                return;
            }
            classes = ranked.len();
        }
    }

    fn certificate(&self, colors: &[u32]) -> Cert {
        let mut cert: Cert = self
            .edges
            .iter()
            .map(|(c, e)| {
                let mut r: Vec<u32> = e.iter().map(|&v| colors[v as usize]).collect();
                r.sort_unstable();
                (*c, r)
            })
            .collect();
        cert.sort_unstable();
        cert
    }

    fn orbit_rep(&self, prefix: &[u32], v: u32, explored: &[u32]) -> bool {
        // Union-find over generators that fix the prefix pointwise.
        let mut parent: Vec<u32> = (0..self.n as u32).collect();
        fn root(p: &mut [u32], mut x: u32) -> u32 {
            while p[x as usize] != x {
                p[x as usize] = p[p[x as usize] as usize];
                x = p[x as usize];
            }
            x
        }
        for g in &self.automorphisms {
            if prefix.iter().all(|&p| g[p as usize] == p) {
                for x in 0..self.n as u32 {
                    let (a, b) = (root(&mut parent, x), root(&mut parent, g[x as usize]));
                    if a != b {
                        parent[a as usize] = b;
                    }
                }
            }
        }
        let rv = root(&mut parent, v);
        explored.iter().any(|&e| root(&mut parent, e) == rv)
    }

    fn search(&mut self, mut colors: Vec<u32>, prefix: &mut Vec<u32>) {
        self.refine(&mut colors);
        let mut sizes = vec![0usize; self.n];
        for &c in &colors {
            sizes[c as usize] += 1;
        }
        let target = (0..self.n).find(|&c| sizes[c] > 1);
        let Some(target) = target else {
            let cert = self.certificate(&colors);
            match &self.best {
                None => self.best = Some((cert, colors)),
                Some((best, best_colors)) => {
                    if cert == *best {
                        // Vertex v of this leaf plays the role of the best
                        // leaf's vertex with the same label.
                        let mut inv = vec![0u32; self.n];
                        for (v, &c) in best_colors.iter().enumerate() {
                            inv[c as usize] = v as u32;
                        }
                        let g: Vec<u32> = colors.iter().map(|&c| inv[c as usize]).collect();
                        self.automorphisms.push(g);
                    } else if cert < *best {
                        self.best = Some((cert, colors));
                    }
                }
            }
            return;
        };
        let cell: Vec<u32> = (0..self.n as u32)
            .filter(|&v| colors[v as usize] == target as u32)
            .collect();
        let mut explored = Vec::new();
        for &v in &cell {
            if self.orbit_rep(prefix, v, &explored) {
                continue;
            }
            let child: Vec<u32> = colors
                .iter()
                .enumerate()
                .map(|(w, &c)| {
                    if c > target as u32 || (c == target as u32 && w as u32 != v) {
                        c + 1
                    } else {
                        c
                    }
                })
                .collect();
            prefix.push(v);
            self.search(child, prefix);
            prefix.pop();
            explored.push(v);
        }
    }
}

/// Canonical relabeling of an edge-coloured `k`-graph: returns `labels`
/// (old vertex -> new vertex) and the relabeled, sorted coloured edge list.
pub(crate) fn canonical_colored(n: usize, edges: &[(u8, Vec<u32>)]) -> (Vec<u32>, Cert) {
    let mut c = Canonizer::new(n, edges);
    c.search(vec![0; n], &mut Vec::new());
    let (cert, labels) = c.best.expect("at least one leaf");
    (labels, cert)
}

/// A relabeling `perm` (old -> new) such that `F.relabel(perm)` is canonical.
pub fn canonical_labeling(f: &Hypergraph) -> Vec<u32> {
    let colored: Vec<(u8, Vec<u32>)> = f.edges().iter().map(|e| (0, e.clone())).collect();
    canonical_colored(f.n(), &colored).0
}

pub fn canonical_form(f: &Hypergraph) -> CanonicalForm {
    let colored: Vec<(u8, Vec<u32>)> = f.edges().iter().map(|e| (0, e.clone())).collect();
    let (_, cert) = canonical_colored(f.n(), &colored);
    CanonicalForm {
        k: f.k(),
        n: f.n(),
        edges: cert.into_iter().map(|(_, e)| e).collect(),
    }
}

pub fn is_isomorphic(f: &Hypergraph, g: &Hypergraph) -> bool {
    f.k() == g.k() && f.n() == g.n() && f.edge_count() == g.edge_count() && canonical_form(f) == canonical_form(g)
}

/// `|Aut(F)|`, counted as the bijective self-embeddings of `F`.
pub fn automorphism_count(f: &Hypergraph) -> u64 {
    let engine = Engine::new(f, f, Reuse::Injective, &[]).expect("same uniformity");
    match engine.count(&SearchLimits::default()) {
        SearchOutcome::Found(c) => c,
        _ => unreachable!("no deadline"),
    }
}

/// Number of vertices of `host` of each degree; a cheap isomorphism invariant.
pub fn degree_sequence<H: EdgeOracle + ?Sized>(host: &H) -> Vec<usize> {
    let mut d: Vec<usize> = (0..host.vertex_count() as u32).map(|v| host.degree(v)).collect();
    d.sort_unstable();
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{complete_kgraph, complete_multipartite};
    use itertools::Itertools;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn brute_aut(f: &Hypergraph) -> u64 {
        (0..f.n() as u32)
            .permutations(f.n())
            .filter(|p| f.relabel(p).unwrap() == *f)
            .count() as u64
    }

    #[test]
    fn automorphism_examples() {
        assert_eq!(automorphism_count(&complete_kgraph(2, 3).unwrap()), 6);
        let f = Hypergraph::new(3, 4, [[0, 1, 2]]).unwrap();
        assert_eq!(brute_aut(&f), 6);
        assert_eq!(automorphism_count(&f), 6);
        let k222 = complete_multipartite(3, &[2, 2, 2]).unwrap();
        assert_eq!(automorphism_count(&k222), brute_aut(&k222));
    }

    #[test]
    fn canonical_form_is_relabeling_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let graphs = [
            complete_multipartite(3, &[2, 2, 1]).unwrap(),
            Hypergraph::new(3, 7, [[0, 1, 2], [1, 2, 3], [3, 4, 5], [4, 5, 6], [0, 5, 6]]).unwrap(),
            complete_kgraph(2, 6).unwrap(),
            Hypergraph::new(2, 8, [[0, 1], [1, 2], [2, 3], [4, 5], [5, 6], [6, 7], [7, 4]]).unwrap(),
        ];
        for g in &graphs {
            let base = canonical_form(g);
            for _ in 0..100 {
                let mut perm: Vec<u32> = (0..g.n() as u32).collect();
                perm.shuffle(&mut rng);
                assert_eq!(canonical_form(&g.relabel(&perm).unwrap()), base);
            }
            assert_eq!(g.relabel(&canonical_labeling(g)).unwrap(), base.graph());
        }
    }

    #[test]
    fn non_isomorphic_graphs_differ() {
        // C6 vs two triangles: same degree sequence, different structure.
        let c6 = Hypergraph::new(2, 6, [[0, 1], [1, 2], [2, 3], [3, 4], [4, 5], [0, 5]]).unwrap();
        let tt = Hypergraph::new(2, 6, [[0, 1], [1, 2], [0, 2], [3, 4], [4, 5], [3, 5]]).unwrap();
        assert_eq!(degree_sequence(&c6), degree_sequence(&tt));
        assert!(!is_isomorphic(&c6, &tt));
        assert!(is_isomorphic(&c6, &c6.relabel(&[3, 1, 4, 0, 5, 2]).unwrap()));
    }

    #[test]
    fn stable_hash_is_fixed() {
        let h = canonical_form(&complete_kgraph(2, 3).unwrap()).stable_hash();
        assert_eq!(h.len(), 16);
        assert_eq!(h, canonical_form(&complete_kgraph(2, 3).unwrap()).stable_hash());
    }
}
