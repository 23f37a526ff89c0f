//! Proper colorings: no edge holds two vertices of the same class.
//!
//! A proper `N`-coloring of `F` is exactly a homomorphism into the complete
//! `k`-graph on `N` vertices, so it certifies containment of `F` in a
//! blow-up of that complete graph.

use serde::Serialize;

use crate::hypergraph::Hypergraph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Coloring {
    pub classes: Vec<u32>,
}

impl Coloring {
    pub fn class_count(&self) -> usize {
        self.classes.iter().max().map_or(0, |&m| m as usize + 1)
    }

    pub fn is_proper(&self, f: &Hypergraph) -> bool {
        self.classes.len() == f.n()
            && f.edges().iter().all(|e| {
                let mut cs: Vec<u32> = e.iter().map(|&v| self.classes[v as usize]).collect();
                cs.sort_unstable();
                cs.windows(2).all(|w| w[0] != w[1])
            })
    }
}

/// Exact decision by backtracking. Vertices are colored in descending degree
/// order and a fresh class is opened only as the next unused index.
pub fn proper_coloring(f: &Hypergraph, classes: usize) -> Option<Coloring> {
    if classes == 0 {
        return (f.n() == 0).then(|| Coloring { classes: Vec::new() });
    }
    let n = f.n();
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(f.degrees()[v as usize]), v));
    let mut neighbors: Vec<Vec<u32>> = vec![Vec::new(); n];
    for e in f.edges() {
        for &a in e {
            for &b in e {
                if a != b {
                    neighbors[a as usize].push(b);
                }
            }
        }
    }
    for nb in &mut neighbors {
        nb.sort_unstable();
        nb.dedup();
    }
    const NONE: u32 = u32::MAX;
    let mut color = vec![NONE; n];

    fn go(d: usize, used: u32, order: &[u32], neighbors: &[Vec<u32>], color: &mut [u32], limit: u32) -> bool {
        let Some(&v) = order.get(d) else {
            return true;
        };
        for c in 0..(used + 1).min(limit) {
            if neighbors[v as usize].iter().any(|&w| color[w as usize] == c) {
                continue;
            }
            color[v as usize] = c;
            if go(d + 1, used.max(c + 1), order, neighbors, color, limit) {
                return true;
            }
        }
        color[v as usize] = NONE;
        false
    }

    go(0, 0, &order, &neighbors, &mut color, classes as u32).then_some(Coloring { classes: color })
}
