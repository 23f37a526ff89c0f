use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::forbid::{Forbidden, Probe};
use super::host::EdgeSet;
use crate::hypergraph::Hypergraph;
use crate::search::SearchLimits;

/// Probability of keeping a move that lost edges.
const DOWNHILL: f64 = 0.1;

/// Adds a random non-edge, then deletes random edges of forbidden images
/// through it until none remain. Non-losing moves are kept; losing moves are
/// kept with a small probability. After a stretch without improvement the
/// walk restarts from the best graph seen. `start` must be free.
pub(crate) fn search(
    forbidden: &Forbidden,
    n: usize,
    start: Option<&Hypergraph>,
    iterations: usize,
    seed: u64,
    limits: &SearchLimits,
) -> EdgeSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = match start {
        Some(g) => EdgeSet::from_graph(g),
        None => EdgeSet::new(forbidden.k, n),
    };
    let mut best = cur.ranks();
    let restart_after = (iterations / 10).max(50);
    let mut stall = 0;
    let probe_limits = SearchLimits { threads: 1, ..*limits };
    for it in 0..iterations {
        if it % 64 == 0 && limits.deadline.is_some_and(|d| Instant::now() >= d) {
            break;
        }
        let missing: Vec<usize> = (0..cur.all().len()).filter(|&r| !cur.is_present(r)).collect();
        if missing.is_empty() {
            break;
        }
        let before = cur.count();
        let r = missing[rng.gen_range(0..missing.len())];
        let edge = cur.all()[r].clone();
        cur.insert(r);
        let mut removed = Vec::new();
        let mut timed_out = false;
        loop {
            match forbidden.probe(&cur, &edge, &probe_limits) {
                Probe::Free => break,
                Probe::Timeout => {
                    timed_out = true;
                    break;
                }
                Probe::Hit(image) => {
                    let mut others: Vec<usize> = image
                        .iter()
                        .filter(|e| **e != edge)
                        .map(|e| cur.rank(e).expect("image edges are host edges"))
                        .collect();
                    others.sort_unstable();
                    others.dedup();
                    if others.is_empty() {
                        cur.remove(r);
                        break;
                    }
                    let victim = others[rng.gen_range(0..others.len())];
                    cur.remove(victim);
                    removed.push(victim);
                }
            }
        }
        let revert = timed_out || (cur.count() < before && !rng.gen_bool(DOWNHILL));
        if revert {
            cur.remove(r);
            for v in removed {
                cur.insert(v);
            }
        }
        if timed_out {
            break;
        }
        if cur.count() > best.len() {
            best = cur.ranks();
            stall = 0;
        } else {
            stall += 1;
        }
        if stall >= restart_after {
            cur = EdgeSet::new(forbidden.k, n);
            for &b in &best {
                cur.insert(b);
            }
            stall = 0;
        }
    }
    let mut out = EdgeSet::new(forbidden.k, n);
    for b in best {
        out.insert(b);
    }
    out
}
