use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::density::format_fraction;
use super::host::EdgeSet;
use super::{ex_exact, ExtremalResult, SolverConfig};
use crate::error::{invalid, Result};
use crate::hypergraph::{binomial, Hypergraph};
use crate::morphisms::count_copies;

#[derive(Debug, Clone, Serialize)]
pub struct SupersaturationStats {
    pub n: usize,
    pub ex_value: usize,
    /// Edges of every sampled graph: `ex_value + surplus`.
    pub edges: usize,
    pub samples: usize,
    pub min: u64,
    pub max: u64,
    #[serde(serialize_with = "fraction")]
    pub mean: BigRational,
}

fn fraction<S: serde::Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_fraction(q))
}

/// Copy counts of `f` in graphs with `ex(n, f) + surplus` edges. The first
/// sample is the extremal witness plus its `surplus` lexicographically first
/// non-edges; the rest are uniform random edge sets of that size.
pub fn supersaturation_probe(
    n: usize,
    f: &Hypergraph,
    surplus: usize,
    samples: usize,
    seed: u64,
    config: &SolverConfig,
) -> Result<SupersaturationStats> {
    if samples == 0 {
        return Err(invalid("need at least one sample"));
    }
    let ex = ex_exact(n, std::slice::from_ref(f), config)?;
    let k = f.k();
    let total = binomial(n as u64, k as u64) as usize;
    let edges = ex.value + surplus;
    if edges > total {
        return Err(invalid(format!(
            "ex + surplus = {edges} exceeds the {total} available edges"
        )));
    }
    let mut first = EdgeSet::from_graph(&ex.witness);
    let mut added = 0;
    for r in 0..total {
        if added == surplus {
            break;
        }
        if !first.is_present(r) {
            first.insert(r);
            added += 1;
        }
    }
    let mut counts = vec![count_copies(&first.to_hypergraph(), f)?];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let all = first.all().to_vec();
    for _ in 1..samples {
        let pick = sample(&mut rng, total, edges);
        let g = Hypergraph::from_edge_set(k, n, pick.iter().map(|r| all[r].clone()));
        counts.push(count_copies(&g, f)?);
    }
    let sum: u64 = counts.iter().sum();
    Ok(SupersaturationStats {
        n,
        ex_value: ex.value,
        edges,
        samples,
        min: *counts.iter().min().expect("nonempty"),
        max: *counts.iter().max().expect("nonempty"),
        mean: BigRational::new(BigInt::from(sum), BigInt::from(samples)),
    })
}

/// Both sides of `ex(n, F) ≤ ex(n, B(F, t))`.
#[derive(Debug, Clone)]
pub struct BlowupCheck {
    pub base: ExtremalResult,
    pub blown: ExtremalResult,
}

impl BlowupCheck {
    pub fn holds(&self) -> bool {
        self.base.value <= self.blown.value
    }

    pub fn proven(&self) -> bool {
        self.base.proven_optimal && self.blown.proven_optimal
    }
}

pub fn blowup_monotonicity_check(n: usize, f: &Hypergraph, t: usize, config: &SolverConfig) -> Result<BlowupCheck> {
    let base = ex_exact(n, std::slice::from_ref(f), config)?;
    let blown = ex_exact(n, &[f.blow_up(t)?], config)?;
    Ok(BlowupCheck { base, blown })
}
