//! Ladders, zycles and the glued constructions built from them.
//!
//! Every constructor returns a [`LabeledGraph`]: the hypergraph plus named
//! coordinates (`v[i,j]`, `w[i,j]`, `t`, `x[i]`, and per-pair variants such as
//! `v[1-2,i,j]`) so callers can address structural vertices directly. Rows are
//! 1-based in labels and 0-based in the `ladder_rows`/`cycle_rows` vectors.
//!
//! Vertex layout of the glued graphs: the shared set `X = {x[1..s]}` comes
//! first, then each pair `{x_a, x_b}` (lexicographic order) contributes its
//! fresh first-row vertices, its later ladder rows, and finally its terminal
//! (glued ladders) or its closing rows `w[2..l]` (glued ladder-zycles). The
//! first row of pair `{x_a, x_b}` ends with `x_a, x_b`.

mod hom_image;
mod spec;

use std::collections::BTreeMap;

use itertools::Itertools;

pub use hom_image::hom_image_family;
pub use spec::FamilySpec;

use crate::error::{invalid, Error, Result};
use crate::hypergraph::{consecutive_blocks, near_balanced_sizes, rainbow_edges, Hypergraph};

#[derive(Debug, Clone)]
pub struct LabeledGraph {
    pub graph: Hypergraph,
    pub labels: BTreeMap<String, u32>,
    /// First row of every ladder-like piece, `k−1` vertices ordered by `j`.
    pub starting_sets: Vec<Vec<u32>>,
    /// Per piece, the ladder rows `v[1..]`.
    pub ladder_rows: Vec<Vec<Vec<u32>>>,
    /// Per piece, the closing rows `w[2..l]`; empty for ladders.
    pub cycle_rows: Vec<Vec<Vec<u32>>>,
    /// Per piece, the terminal vertex, if any.
    pub terminals: Vec<Option<u32>>,
    /// The shared set `X` of glued constructions.
    pub x: Vec<u32>,
    /// Index pairs into `x`, one per piece of a glued construction.
    pub pairs: Vec<(usize, usize)>,
}

impl LabeledGraph {
    /// Wraps a graph with labels `u[v]`.
    pub fn unlabeled(graph: Hypergraph) -> Self {
        let labels = (0..graph.n() as u32).map(|v| (format!("u[{v}]"), v)).collect();
        labeled(graph, labels)
    }

    pub fn vertex(&self, label: &str) -> Option<u32> {
        self.labels.get(label).copied()
    }

    /// Labels ordered by vertex index.
    pub fn names(&self) -> Vec<&str> {
        let mut v: Vec<(&u32, &String)> = self.labels.iter().map(|(s, i)| (i, s)).collect();
        v.sort();
        v.into_iter().map(|(_, s)| s.as_str()).collect()
    }

    pub fn labels_json(&self) -> String {
        let names: BTreeMap<&str, u32> = self.labels.iter().map(|(s, &i)| (s.as_str(), i)).collect();
        serde_json::to_string_pretty(&serde_json::json!({
            "labels": names,
            "starting_sets": self.starting_sets,
        }))
        .expect("labels serialize")
    }
}

#[derive(Default)]
struct Builder {
    n: u32,
    labels: BTreeMap<String, u32>,
    edges: Vec<Vec<u32>>,
}

impl Builder {
    fn fresh(&mut self, label: String) -> u32 {
        let v = self.n;
        self.n += 1;
        let prev = self.labels.insert(label, v);
        debug_assert!(prev.is_none());
        v
    }

    fn row(&mut self, width: usize, label: impl Fn(usize) -> String) -> Vec<u32> {
        (1..=width).map(|j| self.fresh(label(j))).collect()
    }

    /// Edges `row ∪ {y}` for every `y` in `next`.
    fn span(&mut self, row: &[u32], next: &[u32]) {
        for &y in next {
            let mut e = row.to_vec();
            e.push(y);
            self.edges.push(e);
        }
    }

    fn finish(self, k: usize) -> (Hypergraph, BTreeMap<String, u32>) {
        let g = Hypergraph::from_edge_set(k, self.n as usize, self.edges);
        (g, self.labels)
    }
}

fn labeled(graph: Hypergraph, labels: BTreeMap<String, u32>) -> LabeledGraph {
    LabeledGraph {
        graph,
        labels,
        starting_sets: Vec::new(),
        ladder_rows: Vec::new(),
        cycle_rows: Vec::new(),
        terminals: Vec::new(),
        x: Vec::new(),
        pairs: Vec::new(),
    }
}

fn check_k(k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::Uniformity(k));
    }
    Ok(())
}

fn check_glued(k: usize, s: usize) -> Result<()> {
    check_k(k)?;
    if k < 3 {
        return Err(invalid(
            "glued constructions need k ≥ 3 (the first row holds a pair of X)",
        ));
    }
    if s <= k {
        return Err(invalid(format!("s must exceed k (s={s}, k={k})")));
    }
    Ok(())
}

/// Ladder of length `l`: rows of `k−1` vertices, each row spanning an edge
/// with every vertex of the next row, the last row closed by a terminal.
pub fn ladder(k: usize, l: usize) -> Result<LabeledGraph> {
    check_k(k)?;
    if l < 1 {
        return Err(invalid("ladder length must be ≥ 1"));
    }
    let mut b = Builder::default();
    let rows: Vec<Vec<u32>> = (1..=l).map(|i| b.row(k - 1, |j| format!("v[{i},{j}]"))).collect();
    let t = b.fresh("t".into());
    for w in rows.windows(2) {
        b.span(&w[0], &w[1]);
    }
    b.span(&rows[l - 1], &[t]);
    let (g, labels) = b.finish(k);
    Ok(LabeledGraph {
        starting_sets: vec![rows[0].clone()],
        ladder_rows: vec![rows],
        cycle_rows: vec![Vec::new()],
        terminals: vec![Some(t)],
        ..labeled(g, labels)
    })
}

/// Zycle of length `l ≥ 2`: a ladder wrapped over `Z/lZ`. Row `a` occupies
/// vertices `a(k−1) .. a(k−1)+k−2`.
pub fn zycle(k: usize, l: usize) -> Result<LabeledGraph> {
    check_k(k)?;
    if l < 2 {
        return Err(invalid("zycle length must be ≥ 2"));
    }
    let mut b = Builder::default();
    let rows: Vec<Vec<u32>> = (1..=l).map(|i| b.row(k - 1, |j| format!("v[{i},{j}]"))).collect();
    for i in 0..l {
        let next = rows[(i + 1) % l].clone();
        b.span(&rows[i].clone(), &next);
    }
    let (g, labels) = b.finish(k);
    Ok(LabeledGraph {
        starting_sets: vec![rows[0].clone()],
        ladder_rows: vec![rows],
        cycle_rows: vec![Vec::new()],
        terminals: vec![None],
        ..labeled(g, labels)
    })
}

/// Emits the ladder-plus-zycle edges of one piece: ladder rows `v`, closing
/// rows `w` (rows `w[2..l]`), wrapping back onto the last ladder row.
fn ladder_zycle_edges(b: &mut Builder, v: &[Vec<u32>], w: &[Vec<u32>]) {
    for pair in v.windows(2) {
        b.span(&pair[0], &pair[1]);
    }
    let last = v.last().expect("ladder part has a row");
    b.span(last, &w[0]);
    for pair in w.windows(2) {
        b.span(&pair[0], &pair[1]);
    }
    b.span(w.last().expect("closing rows exist"), last);
}

/// Ladder of length `m` whose last row is the starting row of a zycle of length `l`.
pub fn ladder_zycle(k: usize, m: usize, l: usize) -> Result<LabeledGraph> {
    check_k(k)?;
    if m < 1 {
        return Err(invalid("ladder length m must be ≥ 1"));
    }
    if l < 2 {
        return Err(invalid("zycle length must be ≥ 2"));
    }
    let mut b = Builder::default();
    let v: Vec<Vec<u32>> = (1..=m).map(|i| b.row(k - 1, |j| format!("v[{i},{j}]"))).collect();
    let w: Vec<Vec<u32>> = (2..=l).map(|i| b.row(k - 1, |j| format!("w[{i},{j}]"))).collect();
    ladder_zycle_edges(&mut b, &v, &w);
    let (g, labels) = b.finish(k);
    Ok(LabeledGraph {
        starting_sets: vec![v[0].clone()],
        ladder_rows: vec![v],
        cycle_rows: vec![w],
        terminals: vec![None],
        ..labeled(g, labels)
    })
}

fn x_set(b: &mut Builder, s: usize) -> Vec<u32> {
    (1..=s).map(|i| b.fresh(format!("x[{i}]"))).collect()
}

fn x_pairs(s: usize) -> Vec<(usize, usize)> {
    (0..s).tuple_combinations().collect()
}

/// The `k`-uniform expansion of `K_s`: each pair of `X` gets `k−2` fresh vertices.
pub fn expansion_complete(k: usize, s: usize) -> Result<LabeledGraph> {
    check_k(k)?;
    if s <= k {
        return Err(invalid(format!("s must exceed k (s={s}, k={k})")));
    }
    let mut b = Builder::default();
    let x = x_set(&mut b, s);
    let pairs = x_pairs(s);
    let mut starting_sets = Vec::new();
    for &(a, c) in &pairs {
        let tag = format!("{}-{}", a + 1, c + 1);
        let fresh = b.row(k - 2, |i| format!("v[{tag},{i}]"));
        let mut e = fresh.clone();
        e.extend([x[a], x[c]]);
        if k >= 3 {
            let mut start = fresh[..k - 3].to_vec();
            start.extend([x[a], x[c]]);
            starting_sets.push(start);
        }
        b.edges.push(e);
    }
    let (g, labels) = b.finish(k);
    Ok(LabeledGraph {
        starting_sets,
        x,
        pairs,
        ..labeled(g, labels)
    })
}

/// First row of the piece on pair `(a, c)`: `k−3` fresh vertices, then `x_a, x_c`.
fn first_row(b: &mut Builder, k: usize, x: &[u32], a: usize, c: usize, tag: &str) -> Vec<u32> {
    let mut row = b.row(k - 3, |j| format!("v[{tag},1,{j}]"));
    row.extend([x[a], x[c]]);
    row
}

/// Shared set `X` of size `s` with a ladder of length `lengths[r]` glued on
/// the `r`-th pair. Lengths must be non-increasing; they are not reordered.
pub fn glued_ladders(k: usize, s: usize, lengths: &[usize]) -> Result<LabeledGraph> {
    check_glued(k, s)?;
    let pairs = x_pairs(s);
    if lengths.len() != pairs.len() {
        return Err(invalid(format!(
            "expected C(s,2) = {} ladder lengths, got {}",
            pairs.len(),
            lengths.len()
        )));
    }
    if lengths.contains(&0) {
        return Err(invalid("ladder length must be ≥ 1"));
    }
    if lengths.windows(2).any(|w| w[0] < w[1]) {
        return Err(invalid("ladder lengths must be non-increasing"));
    }
    let mut b = Builder::default();
    let x = x_set(&mut b, s);
    let (mut ladder_rows, mut terminals, mut starting_sets) = (Vec::new(), Vec::new(), Vec::new());
    for (&(a, c), &len) in pairs.iter().zip(lengths) {
        let tag = format!("{}-{}", a + 1, c + 1);
        let mut rows = vec![first_row(&mut b, k, &x, a, c, &tag)];
        for i in 2..=len {
            rows.push(b.row(k - 1, |j| format!("v[{tag},{i},{j}]")));
        }
        let t = b.fresh(format!("t[{tag}]"));
        for w in rows.windows(2) {
            b.span(&w[0], &w[1]);
        }
        b.span(&rows[len - 1], &[t]);
        starting_sets.push(rows[0].clone());
        ladder_rows.push(rows);
        terminals.push(Some(t));
    }
    let (g, labels) = b.finish(k);
    Ok(LabeledGraph {
        starting_sets,
        cycle_rows: vec![Vec::new(); pairs.len()],
        ladder_rows,
        terminals,
        x,
        pairs,
        ..labeled(g, labels)
    })
}

/// Glued ladders of common length `m`, each closed by a zycle of length `l`.
/// The first row of every piece contains its pair of `X`, as in [`glued_ladders`].
pub fn glued_ladder_zycles(k: usize, s: usize, m: usize, l: usize) -> Result<LabeledGraph> {
    check_glued(k, s)?;
    if m < 1 {
        return Err(invalid("ladder length m must be ≥ 1"));
    }
    if l < 2 {
        return Err(invalid("zycle length must be ≥ 2"));
    }
    let pairs = x_pairs(s);
    let mut b = Builder::default();
    let x = x_set(&mut b, s);
    let (mut ladder_rows, mut cycle_rows, mut starting_sets) = (Vec::new(), Vec::new(), Vec::new());
    for &(a, c) in &pairs {
        let tag = format!("{}-{}", a + 1, c + 1);
        let mut v = vec![first_row(&mut b, k, &x, a, c, &tag)];
        for i in 2..=m {
            v.push(b.row(k - 1, |j| format!("v[{tag},{i},{j}]")));
        }
        let w: Vec<Vec<u32>> = (2..=l).map(|i| b.row(k - 1, |j| format!("w[{tag},{i},{j}]"))).collect();
        ladder_zycle_edges(&mut b, &v, &w);
        starting_sets.push(v[0].clone());
        ladder_rows.push(v);
        cycle_rows.push(w);
    }
    let (g, labels) = b.finish(k);
    Ok(LabeledGraph {
        starting_sets,
        terminals: vec![None; pairs.len()],
        ladder_rows,
        cycle_rows,
        x,
        pairs,
        ..labeled(g, labels)
    })
}

/// Near-balanced complete `(s−1)`-partite `k`-graph on `[n]` with a
/// near-balanced complete `k`-partite `k`-graph added inside every class.
pub fn part1_base(k: usize, s: usize, n: usize) -> Result<Hypergraph> {
    check_k(k)?;
    if s <= k {
        return Err(invalid(format!("s must exceed k (s={s}, k={k})")));
    }
    if n < s - 1 {
        return Err(invalid(format!("n must be ≥ s−1 (n={n}, s={s})")));
    }
    let classes = consecutive_blocks(0, &near_balanced_sizes(n, s - 1));
    let mut edges = rainbow_edges(k, &classes);
    for class in &classes {
        let inner = consecutive_blocks(class[0], &near_balanced_sizes(class.len(), k));
        edges.extend(rainbow_edges(k, &inner));
    }
    Ok(Hypergraph::from_edge_set(k, n, edges))
}

/// Adds every rainbow `k`-set of a near-balanced `k`-partition of `t_set`
/// (sorted, split into consecutive blocks). Returns the new graph and the
/// partition used; edges already present are kept.
pub fn add_kpartite_on(h: &Hypergraph, t_set: &[u32], k: usize) -> Result<(Hypergraph, Vec<Vec<u32>>)> {
    if k != h.k() {
        return Err(Error::UniformityMismatch(k, h.k()));
    }
    let mut t: Vec<u32> = t_set.to_vec();
    t.sort_unstable();
    if t.windows(2).any(|w| w[0] == w[1]) {
        return Err(invalid("T must not repeat vertices"));
    }
    if let Some(&v) = t.iter().find(|&&v| v as usize >= h.n()) {
        return Err(Error::VertexOutOfRange { vertex: v, n: h.n() });
    }
    if t.len() < k {
        return Err(invalid(format!("|T| must be ≥ k (|T|={}, k={k})", t.len())));
    }
    let sizes = near_balanced_sizes(t.len(), k);
    let mut parts = Vec::with_capacity(k);
    let mut rest = &t[..];
    for s in sizes {
        let (head, tail) = rest.split_at(s);
        parts.push(head.to_vec());
        rest = tail;
    }
    let g = h.with_edges(rainbow_edges(k, &parts))?;
    Ok((g, parts))
}
