//! Incremental detection of forbidden structures through a newly added edge.

use itertools::Itertools;
use rayon::prelude::*;

use super::host::EdgeSet;
use crate::canon::canonical_form;
use crate::error::{invalid, Error, Result};
use crate::hypergraph::{EdgeOracle, Hypergraph};
use crate::morphisms::{contains_copy, find_homomorphism};
use crate::search::{Engine, Plan, Reuse, SearchLimits, SearchOutcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Mode {
    /// No member embeds.
    Embedding,
    /// The single member admits no homomorphism.
    Homomorphism,
}

pub(crate) enum Probe {
    Free,
    /// Host edges of a forbidden image through the probed edge.
    Hit(Vec<Vec<u32>>),
    Timeout,
}

struct Anchor {
    member: usize,
    edge: Vec<u32>,
    plan: Plan,
}

pub(crate) struct Forbidden {
    pub(crate) mode: Mode,
    pub(crate) k: usize,
    pub(crate) members: Vec<Hypergraph>,
    anchors: Vec<Anchor>,
}

/// Reduced family: canonical relabelings, isomorphic duplicates dropped, and
/// any member containing another member dropped (same extremal number).
pub(crate) fn reduce_family(family: &[Hypergraph]) -> Result<Vec<Hypergraph>> {
    let Some(first) = family.first() else {
        return Ok(Vec::new());
    };
    let k = first.k();
    let mut forms = Vec::new();
    for f in family {
        if f.k() != k {
            return Err(Error::UniformityMismatch(k, f.k()));
        }
        if f.edge_count() == 0 {
            return Err(invalid("family member without edges is contained in every host"));
        }
        forms.push(canonical_form(f));
    }
    forms.sort_by(|a, b| (a.n, a.edges.len(), a).cmp(&(b.n, b.edges.len(), b)));
    forms.dedup();
    let mut kept: Vec<Hypergraph> = Vec::new();
    for cf in forms {
        let g = cf.graph();
        if !kept.iter().any(|m| contains_copy(&g, m).expect("uniformity checked")) {
            kept.push(g);
        }
    }
    Ok(kept)
}

impl Forbidden {
    pub(crate) fn new(mode: Mode, k: usize, members: Vec<Hypergraph>) -> Self {
        let mut anchors = Vec::new();
        for (mi, f) in members.iter().enumerate() {
            for e in f.edges() {
                anchors.push(Anchor {
                    member: mi,
                    edge: e.clone(),
                    plan: Plan::new(f, e),
                });
            }
        }
        Forbidden {
            mode,
            k,
            members,
            anchors,
        }
    }

    fn reuse(&self) -> Reuse {
        match self.mode {
            Mode::Embedding => Reuse::Injective,
            Mode::Homomorphism => Reuse::Unbounded,
        }
    }

    fn active(&self, mi: usize, n: usize) -> bool {
        self.mode == Mode::Homomorphism || self.members[mi].n() <= n
    }

    /// True iff no member is active on `n` vertices, so every host is free.
    pub(crate) fn vacuous(&self, n: usize) -> bool {
        (0..self.members.len()).all(|mi| !self.active(mi, n))
    }

    fn probe_anchor(&self, a: &Anchor, host: &EdgeSet, edge: &[u32], limits: &SearchLimits) -> Probe {
        let f = &self.members[a.member];
        for perm in edge.iter().copied().permutations(self.k) {
            let pins: Vec<(u32, u32)> = a.edge.iter().copied().zip(perm).collect();
            let engine =
                Engine::with_plan(f, host, self.reuse(), &pins, a.plan.clone()).expect("pins lie on a host edge");
            match engine.find(limits).0 {
                SearchOutcome::Found(img) => {
                    let edges = f
                        .edges()
                        .iter()
                        .map(|e| {
                            let mut h: Vec<u32> = e.iter().map(|&v| img[v as usize]).collect();
                            h.sort_unstable();
                            h
                        })
                        .collect();
                    return Probe::Hit(edges);
                }
                SearchOutcome::Unknown => return Probe::Timeout,
                SearchOutcome::Absent => {}
            }
        }
        Probe::Free
    }

    /// Looks for a forbidden image using `edge`, which must be present in
    /// `host`. Anchors are tried in a fixed order so the reported image does
    /// not depend on `threads`.
    pub(crate) fn probe(&self, host: &EdgeSet, edge: &[u32], limits: &SearchLimits) -> Probe {
        let n = host.vertex_count();
        let sequential = SearchLimits { threads: 1, ..*limits };
        let active: Vec<&Anchor> = self.anchors.iter().filter(|a| self.active(a.member, n)).collect();
        if limits.threads > 1 && active.len() > 1 {
            let results: Vec<Probe> = active
                .par_iter()
                .map(|a| self.probe_anchor(a, host, edge, &sequential))
                .collect();
            let mut timeout = false;
            for r in results {
                match r {
                    Probe::Hit(h) => return Probe::Hit(h),
                    Probe::Timeout => timeout = true,
                    Probe::Free => {}
                }
            }
            return if timeout { Probe::Timeout } else { Probe::Free };
        }
        for a in active {
            match self.probe_anchor(a, host, edge, &sequential) {
                Probe::Free => {}
                other => return other,
            }
        }
        Probe::Free
    }

    /// Full (non-incremental) check of a finished graph.
    pub(crate) fn admits(&self, g: &Hypergraph) -> bool {
        match self.mode {
            Mode::Embedding => self
                .members
                .iter()
                .filter(|f| f.n() <= g.n())
                .any(|f| contains_copy(g, f).expect("uniformity checked")),
            Mode::Homomorphism => self
                .members
                .iter()
                .any(|f| find_homomorphism(f, g, &[]).expect("uniformity checked").is_some()),
        }
    }
}
