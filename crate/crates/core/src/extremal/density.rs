use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use super::{Solver, SolverConfig};
use crate::error::{invalid, Result};
use crate::hypergraph::{binomial, Hypergraph};

/// One term `ex(n)/C(n,k)` of a density sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DensityPoint {
    pub n: usize,
    pub ex_value: usize,
    #[serde(serialize_with = "fraction")]
    pub density: BigRational,
    /// False when the solve hit its time limit; such points are skipped by
    /// [`verify_monotone`].
    pub proven: bool,
}

fn fraction<S: Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_fraction(q))
}

/// `p/q` in lowest terms; integers keep the `/1`.
pub fn format_fraction(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn density_series(
    k: usize,
    family: &[Hypergraph],
    n_min: usize,
    n_max: usize,
    config: &SolverConfig,
) -> Result<Vec<DensityPoint>> {
    if n_min < k {
        return Err(invalid(format!("need n_min ≥ k (n_min={n_min}, k={k})")));
    }
    let mut solver = Solver::embedding(k, family, config.clone())?;
    (n_min..=n_max)
        .map(|n| {
            let r = solver.solve(n)?;
            Ok(DensityPoint {
                n,
                ex_value: r.value,
                density: BigRational::new(BigInt::from(r.value), BigInt::from(binomial(n as u64, k as u64))),
                proven: r.proven_optimal,
            })
        })
        .collect()
}

/// True iff the proven points are non-increasing in `n`.
pub fn verify_monotone(series: &[DensityPoint]) -> bool {
    let mut proven: Vec<&DensityPoint> = series.iter().filter(|p| p.proven).collect();
    proven.sort_by_key(|p| p.n);
    proven.windows(2).all(|w| w[1].density <= w[0].density)
}

/// `(s−1)(s−2)⋯(s−k) / (s−1)^k`, the density of the complete expansion.
pub fn mubayi_density(s: usize, k: usize) -> Result<BigRational> {
    if k < 2 || s <= k {
        return Err(invalid(format!("need s > k ≥ 2 (s={s}, k={k})")));
    }
    let num: BigInt = (1..=k).map(|i| BigInt::from(s - i)).product();
    let den = num_traits::pow(BigInt::from(s - 1), k);
    Ok(BigRational::new(num, den))
}

/// CSV with header `n,ex,proven,density`; `float` inserts a decimal column
/// before the exact fraction, which always comes last.
pub fn series_csv(series: &[DensityPoint], float: bool) -> String {
    let mut out = String::from(if float {
        "n,ex,proven,decimal,density\n"
    } else {
        "n,ex,proven,density\n"
    });
    for p in series {
        write!(out, "{},{},{}", p.n, p.ex_value, p.proven).unwrap();
        if float {
            write!(out, ",{:.6}", p.density.to_f64().unwrap_or(f64::NAN)).unwrap();
        }
        writeln!(out, ",{}", format_fraction(&p.density)).unwrap();
    }
    out
}
