//! Exact and heuristic extremal numbers.
//!
//! `ex(n, ℱ)` is computed by branch and bound over the `C(n,k)` potential
//! edges in lexicographic order, include-first. Each inclusion is checked
//! incrementally: only images of a forbidden member through the new edge are
//! searched. Pruning uses the edge-count bound, the averaging bound
//! `ex(n) ≤ ⌊n·ex(n−1)/(n−k)⌋` with the matching minimum-degree condition
//! `deg(v) ≥ target − ex(n−1)`, and isomorph rejection of shallow partial
//! assignments. The incumbent is seeded by [`ex_lower_search`].
//!
//! The search is sequential, so for a completed solve the witness is the
//! lexicographically least optimal edge set regardless of `threads`, which
//! only parallelizes the per-edge forbidden-image probes.

mod bnb;
mod density;
mod forbid;
mod host;
mod local;
mod probes;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::canon::canonical_form;
use crate::error::{invalid, Result};
use crate::families::hom_image_family;
use crate::hypergraph::{binomial, complete_kgraph, Hypergraph};
use crate::search::SearchLimits;

pub use density::{density_series, mubayi_density, series_csv, verify_monotone, DensityPoint};
pub use probes::{blowup_monotonicity_check, supersaturation_probe, BlowupCheck, SupersaturationStats};

use forbid::{reduce_family, Forbidden, Mode};

#[derive(Debug, Clone)]
pub struct SolverConfig {
    /// Per solved `n`; `None` runs to completion.
    pub time_limit: Option<Duration>,
    /// Partial assignments with at most this many decided edges are checked
    /// for isomorphic duplicates.
    pub iso_depth: usize,
    pub threads: usize,
    pub seed: u64,
    pub local_search_iterations: usize,
    /// Use the bound from `n − 1` vertices. Disabling it only slows solves.
    pub averaging_bound: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            time_limit: Some(Duration::from_secs(60)),
            iso_depth: 3,
            threads: 1,
            seed: 0,
            local_search_iterations: 2000,
            averaging_bound: true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExtremalResult {
    pub n: usize,
    pub k: usize,
    /// Stable hashes of the reduced family members (or the single hom pattern).
    pub family: Vec<String>,
    /// True when the constraint is "no homomorphism" rather than "no copy".
    pub hom: bool,
    pub value: usize,
    pub witness: Hypergraph,
    pub proven_optimal: bool,
    /// Equals `value` when proven.
    pub upper_bound: usize,
    pub nodes_explored: u64,
    pub wall_time: Duration,
}

#[derive(Serialize)]
struct ResultJson<'a> {
    n: usize,
    k: usize,
    mode: &'static str,
    family: &'a [String],
    value: usize,
    upper_bound: usize,
    proven_optimal: bool,
    nodes_explored: u64,
    witness: String,
}

impl ExtremalResult {
    /// JSON with the witness embedded as `khg v1` text. Wall time is left out
    /// so equal runs serialize identically.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&ResultJson {
            n: self.n,
            k: self.k,
            mode: if self.hom { "homomorphism" } else { "embedding" },
            family: &self.family,
            value: self.value,
            upper_bound: self.upper_bound,
            proven_optimal: self.proven_optimal,
            nodes_explored: self.nodes_explored,
            witness: self.witness.to_khg(),
        })
        .expect("result serializes")
    }
}

/// Solves successive `n` for one family, reusing each level's bound.
pub struct Solver {
    forbidden: Forbidden,
    config: SolverConfig,
    labels: Vec<String>,
    levels: BTreeMap<usize, ExtremalResult>,
}

impl Solver {
    /// Forbids copies of every member. Members must share one uniformity and
    /// have at least one edge; the empty family forbids nothing and needs `k`.
    pub fn embedding(k: usize, family: &[Hypergraph], config: SolverConfig) -> Result<Self> {
        if let Some(f) = family.iter().find(|f| f.k() != k) {
            return Err(crate::error::Error::UniformityMismatch(k, f.k()));
        }
        let members = reduce_family(family)?;
        let labels = members.iter().map(|f| canonical_form(f).stable_hash()).collect();
        Ok(Solver {
            forbidden: Forbidden::new(Mode::Embedding, k, members),
            config,
            labels,
            levels: BTreeMap::new(),
        })
    }

    /// Forbids homomorphisms from `f`.
    pub fn homomorphism(f: &Hypergraph, config: SolverConfig) -> Result<Self> {
        if f.edge_count() == 0 {
            return Err(invalid("a pattern without edges maps into every host"));
        }
        Ok(Solver {
            forbidden: Forbidden::new(Mode::Homomorphism, f.k(), vec![f.clone()]),
            config,
            labels: vec![canonical_form(f).stable_hash()],
            levels: BTreeMap::new(),
        })
    }

    pub fn k(&self) -> usize {
        self.forbidden.k
    }

    pub fn solve(&mut self, n: usize) -> Result<ExtremalResult> {
        let k = self.k();
        if n < k {
            return Err(invalid(format!("need n ≥ k (n={n}, k={k})")));
        }
        if let Some(r) = self.levels.get(&n) {
            return Ok(r.clone());
        }
        let prev = if n > k && !self.forbidden.vacuous(n) {
            Some(self.solve(n - 1)?)
        } else {
            None
        };
        let r = self.solve_level(n, prev.as_ref());
        self.levels.insert(n, r.clone());
        Ok(r)
    }

    fn solve_level(&self, n: usize, prev: Option<&ExtremalResult>) -> ExtremalResult {
        let k = self.k();
        let start = Instant::now();
        let total = binomial(n as u64, k as u64) as usize;
        let mut result = ExtremalResult {
            n,
            k,
            family: self.labels.clone(),
            hom: self.forbidden.mode == Mode::Homomorphism,
            value: total,
            witness: complete_kgraph(k, n).expect("k ≥ 2"),
            proven_optimal: true,
            upper_bound: total,
            nodes_explored: 0,
            wall_time: Duration::ZERO,
        };
        if self.forbidden.vacuous(n) {
            result.wall_time = start.elapsed();
            return result;
        }
        let prev_ub = prev.filter(|_| self.config.averaging_bound).map(|p| p.upper_bound);
        let cap = match prev_ub {
            Some(p) => total.min(n * p / (n - k)),
            None => total,
        };
        let limits = SearchLimits {
            deadline: self.config.time_limit.map(|t| start + t),
            threads: self.config.threads,
        };
        // The previous witness plus an isolated vertex is usually still free.
        let lifted = prev
            .map(|p| Hypergraph::from_edge_set(k, n, p.witness.edges().iter().cloned()))
            .filter(|g| !self.forbidden.admits(g));
        let seeded = local::search(
            &self.forbidden,
            n,
            lifted.as_ref(),
            self.config.local_search_iterations,
            self.config.seed.wrapping_add(n as u64),
            &limits,
        );
        let out = bnb::run(
            &self.forbidden,
            n,
            seeded.count(),
            cap,
            prev_ub,
            self.config.iso_depth,
            &limits,
        );
        let witness = match out.best {
            Some(g) => g,
            None => seeded.to_hypergraph(),
        };
        assert!(!self.forbidden.admits(&witness), "extremal witness must be free");
        result.value = witness.edge_count();
        result.witness = witness;
        result.proven_optimal = out.complete;
        result.upper_bound = if out.complete { result.value } else { cap };
        result.nodes_explored = out.nodes;
        result.wall_time = start.elapsed();
        result
    }
}

/// `ex(n, family)`: the maximum edge count of an `n`-vertex `k`-graph with
/// no copy of any member.
pub fn ex_exact(n: usize, family: &[Hypergraph], config: &SolverConfig) -> Result<ExtremalResult> {
    let k = family
        .first()
        .map(Hypergraph::k)
        .ok_or_else(|| invalid("empty family: uniformity unknown, use Solver::embedding"))?;
    Solver::embedding(k, family, config.clone())?.solve(n)
}

/// `ex_hom(t, F)`, decided directly: graphs admitting a homomorphism from `F`
/// through the newly added edge are pruned.
pub fn ex_hom_exact(t: usize, f: &Hypergraph, config: &SolverConfig) -> Result<ExtremalResult> {
    Solver::homomorphism(f, config.clone())?.solve(t)
}

/// `ex_hom(t, F)` as `ex(t, hom_image_family(F))`.
pub fn ex_hom_via_family(t: usize, f: &Hypergraph, config: &SolverConfig) -> Result<ExtremalResult> {
    if t < f.k() {
        return Err(invalid(format!("need t ≥ k (t={t}, k={})", f.k())));
    }
    if f.edge_count() == 0 {
        return Err(invalid("a pattern without edges maps into every host"));
    }
    ex_exact(t, &hom_image_family(f), config)
}

/// A family-free graph found by seeded add/repair hill climbing with restarts.
pub fn ex_lower_search(n: usize, k: usize, family: &[Hypergraph], iterations: usize, seed: u64) -> Result<Hypergraph> {
    if n < k {
        return Err(invalid(format!("need n ≥ k (n={n}, k={k})")));
    }
    let solver = Solver::embedding(k, family, SolverConfig::default())?;
    if solver.forbidden.vacuous(n) {
        return complete_kgraph(k, n);
    }
    let g = local::search(&solver.forbidden, n, None, iterations, seed, &SearchLimits::default()).to_hypergraph();
    debug_assert!(!solver.forbidden.admits(&g));
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{expansion_complete, part1_base};
    use crate::hypergraph::complete_multipartite;
    use crate::morphisms::is_free;
    use itertools::Itertools;

    fn cfg() -> SolverConfig {
        SolverConfig {
            time_limit: None,
            ..SolverConfig::default()
        }
    }

    /// Exhaustive maximum over all edge subsets.
    fn brute_ex(n: usize, k: usize, family: &[Hypergraph]) -> usize {
        let all: Vec<Vec<u32>> = (0..n as u32).combinations(k).collect();
        let mut best = 0;
        for mask in 0u64..(1 << all.len()) {
            let size = mask.count_ones() as usize;
            if size <= best {
                continue;
            }
            let g = Hypergraph::new(
                k,
                n,
                (0..all.len()).filter(|i| mask >> i & 1 == 1).map(|i| all[i].clone()),
            )
            .unwrap();
            if is_free(&g, family).unwrap() {
                best = size;
            }
        }
        best
    }

    #[test]
    fn examples() {
        let k3 = complete_kgraph(2, 3).unwrap();
        let r = ex_exact(5, std::slice::from_ref(&k3), &cfg()).unwrap();
        assert_eq!((r.value, r.proven_optimal), (6, true));
        assert_eq!(brute_ex(5, 2, &[k3]), 6);
        let k43 = complete_kgraph(3, 4).unwrap();
        assert_eq!(ex_exact(4, &[k43], &cfg()).unwrap().value, 3);
        let g4 = expansion_complete(3, 4).unwrap().graph;
        let r = ex_exact(5, &[g4], &cfg()).unwrap();
        assert_eq!((r.value, r.proven_optimal), (10, true));
    }

    #[test]
    fn errors() {
        let k3 = complete_kgraph(2, 3).unwrap();
        assert!(ex_exact(1, std::slice::from_ref(&k3), &cfg()).is_err());
        assert!(ex_exact(5, &[k3.clone(), complete_kgraph(3, 4).unwrap()], &cfg()).is_err());
        assert!(ex_hom_exact(2, &complete_kgraph(3, 3).unwrap(), &cfg()).is_err());
    }

    #[test]
    fn agrees_with_brute_force_on_small_3_graphs() {
        let fams = [
            Hypergraph::new(3, 4, [[0, 1, 2], [0, 1, 3]]).unwrap(),
            Hypergraph::new(3, 5, [[0, 1, 2], [2, 3, 4]]).unwrap(),
            Hypergraph::new(3, 4, [[0, 1, 2], [0, 1, 3], [0, 2, 3]]).unwrap(),
        ];
        for f in &fams {
            for n in 4..=5 {
                let r = ex_exact(n, std::slice::from_ref(f), &cfg()).unwrap();
                assert!(r.proven_optimal);
                assert_eq!(r.value, brute_ex(n, 3, std::slice::from_ref(f)), "{f} n={n}");
            }
        }
    }

    #[test]
    fn averaging_bound_does_not_change_values() {
        let k4 = complete_kgraph(2, 4).unwrap();
        let plain = SolverConfig {
            averaging_bound: false,
            iso_depth: 0,
            ..cfg()
        };
        for n in 4..=7 {
            let a = ex_exact(n, std::slice::from_ref(&k4), &cfg()).unwrap();
            let b = ex_exact(n, std::slice::from_ref(&k4), &plain).unwrap();
            assert_eq!(a.value, b.value);
            assert_eq!(a.witness, b.witness, "lexicographically least witness");
        }
    }

    #[test]
    fn witness_is_independent_of_threads() {
        let k3 = complete_kgraph(2, 3).unwrap();
        let one = ex_exact(7, std::slice::from_ref(&k3), &cfg()).unwrap();
        let four = ex_exact(7, &[k3], &SolverConfig { threads: 4, ..cfg() }).unwrap();
        assert_eq!(one.to_json(), four.to_json());
    }

    #[test]
    fn hom_examples() {
        let k3 = complete_kgraph(2, 3).unwrap();
        assert_eq!(ex_hom_exact(5, &k3, &cfg()).unwrap().value, 6);
        let e = Hypergraph::new(3, 3, [[0, 1, 2]]).unwrap();
        assert_eq!(ex_hom_exact(3, &e, &cfg()).unwrap().value, 0);
        let two = Hypergraph::new(2, 4, [[0, 1], [2, 3]]).unwrap();
        assert_eq!(ex_hom_exact(4, &two, &cfg()).unwrap().value, 0);
        assert_eq!(ex_hom_via_family(4, &two, &cfg()).unwrap().value, 0);
    }

    #[test]
    fn lower_search_examples() {
        let k3 = complete_kgraph(2, 3).unwrap();
        let g = ex_lower_search(8, 2, std::slice::from_ref(&k3), 10_000, 7).unwrap();
        assert_eq!(g.edge_count(), 16);
        assert!(is_free(&g, std::slice::from_ref(&k3)).unwrap());
        assert_eq!(g, ex_lower_search(8, 2, &[k3], 10_000, 7).unwrap());
        assert_eq!(
            ex_lower_search(6, 3, &[], 10, 0).unwrap(),
            complete_kgraph(3, 6).unwrap()
        );
        let gl = crate::families::glued_ladders(3, 4, &[2; 6]).unwrap().graph;
        let base = part1_base(3, 4, 12).unwrap();
        assert!(ex_lower_search(12, 3, &[gl], 10_000, 1).unwrap().edge_count() >= base.edge_count());
    }

    #[test]
    fn redundant_member_and_relabeling_invariance() {
        let k3 = complete_kgraph(2, 3).unwrap();
        let c4 = Hypergraph::new(2, 4, [[0, 1], [1, 2], [2, 3], [0, 3]]).unwrap();
        let base = ex_exact(6, &[k3.clone(), c4.clone()], &cfg()).unwrap().value;
        let k4 = complete_kgraph(2, 4).unwrap();
        assert_eq!(ex_exact(6, &[k3.clone(), c4.clone(), k4], &cfg()).unwrap().value, base);
        let moved = c4.relabel(&[3, 1, 0, 2]).unwrap();
        assert_eq!(ex_exact(6, &[moved, k3], &cfg()).unwrap().value, base);
    }

    #[test]
    fn json_embeds_khg_witness() {
        let r = ex_exact(4, &[complete_multipartite(2, &[1, 1, 1]).unwrap()], &cfg()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["value"], 4);
        let w = Hypergraph::from_khg(v["witness"].as_str().unwrap()).unwrap();
        assert_eq!(w, r.witness);
    }

    #[test]
    fn timeout_reports_unproven() {
        let g4 = expansion_complete(3, 4).unwrap().graph;
        let quick = SolverConfig {
            time_limit: Some(Duration::from_millis(200)),
            local_search_iterations: 50,
            ..SolverConfig::default()
        };
        let r = ex_exact(10, std::slice::from_ref(&g4), &quick).unwrap();
        assert!(!r.proven_optimal);
        assert!(r.upper_bound >= r.value);
        assert!(is_free(&r.witness, &[g4]).unwrap());
    }
}
