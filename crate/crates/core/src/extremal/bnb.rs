use std::collections::HashSet;
use std::time::Instant;

use super::forbid::{Forbidden, Probe};
use super::host::EdgeSet;
use crate::canon::canonical_colored;
use crate::hypergraph::{EdgeOracle, Hypergraph};
use crate::search::SearchLimits;

pub(crate) struct Outcome {
    /// Lexicographically least free graph with at least the initial target
    /// and the maximum edge count, if one was reached.
    pub(crate) best: Option<Hypergraph>,
    pub(crate) complete: bool,
    pub(crate) nodes: u64,
}

struct Bnb<'a> {
    forbidden: &'a Forbidden,
    host: EdgeSet,
    all: Vec<Vec<u32>>,
    /// `suffix[i][v]`: potential edges of rank ≥ i containing `v`.
    suffix: Vec<Vec<u32>>,
    target: usize,
    cap: usize,
    prev_ub: Option<usize>,
    iso_depth: usize,
    seen: HashSet<Vec<(u8, Vec<u32>)>>,
    best: Option<Vec<usize>>,
    nodes: u64,
    limits: SearchLimits,
    timed_out: bool,
}

/// Searches for a free graph with at least `target` edges, raising the
/// target past every graph found; `cap` is a proven upper bound.
pub(crate) fn run(
    forbidden: &Forbidden,
    n: usize,
    target: usize,
    cap: usize,
    prev_ub: Option<usize>,
    iso_depth: usize,
    limits: &SearchLimits,
) -> Outcome {
    let host = EdgeSet::new(forbidden.k, n);
    let all = host.all().to_vec();
    let mut suffix = vec![vec![0u32; n]; all.len() + 1];
    for i in (0..all.len()).rev() {
        suffix[i] = suffix[i + 1].clone();
        for &v in &all[i] {
            suffix[i][v as usize] += 1;
        }
    }
    let mut b = Bnb {
        forbidden,
        host,
        all,
        suffix,
        target,
        cap,
        prev_ub,
        iso_depth,
        seen: HashSet::new(),
        best: None,
        nodes: 0,
        limits: *limits,
        timed_out: false,
    };
    b.dfs(0);
    let best = b
        .best
        .map(|ranks| Hypergraph::from_edge_set(forbidden.k, n, ranks.into_iter().map(|r| b.all[r].clone())));
    Outcome {
        best,
        complete: !b.timed_out,
        nodes: b.nodes,
    }
}

impl Bnb<'_> {
    fn expired(&mut self) -> bool {
        if !self.timed_out && self.nodes.is_multiple_of(256) {
            if let Some(d) = self.limits.deadline {
                self.timed_out = Instant::now() >= d;
            }
        }
        self.timed_out
    }

    fn dfs(&mut self, i: usize) {
        self.nodes += 1;
        if self.target > self.cap || self.expired() {
            return;
        }
        let count = self.host.count();
        let total = self.all.len();
        if count + (total - i) < self.target {
            return;
        }
        // Deleting any vertex leaves a free graph on n − 1 vertices.
        if let Some(p) = self.prev_ub {
            let need = self.target.saturating_sub(p);
            if need > 0 {
                let row = &self.suffix[i];
                if (0..row.len()).any(|v| self.host.degree(v as u32) + (row[v] as usize) < need) {
                    return;
                }
            }
        }
        if i >= 1 && i <= self.iso_depth {
            let decided: Vec<(u8, Vec<u32>)> = (0..i)
                .map(|r| (if self.host.is_present(r) { 1 } else { 2 }, self.all[r].clone()))
                .collect();
            let (_, cert) = canonical_colored(self.host.vertex_count(), &decided);
            if !self.seen.insert(cert) {
                return;
            }
        }
        if i == total {
            self.best = Some(self.host.ranks());
            self.target = count + 1;
            return;
        }
        self.host.insert(i);
        match self.forbidden.probe(&self.host, &self.all[i], &self.limits) {
            Probe::Free => self.dfs(i + 1),
            Probe::Hit(_) => {}
            Probe::Timeout => self.timed_out = true,
        }
        self.host.remove(i);
        if self.timed_out {
            return;
        }
        self.dfs(i + 1);
    }
}
