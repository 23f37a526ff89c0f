//! Closing projected ladders into zycles.
//!
//! An embedding of glued ladders into a blow-up `B(H, b)` projects, via the
//! class map, to a sequence of `(k−1)`-sets of `H` per ladder. With
//! `C(t, k−1) + 1` rows some row set must repeat; the stretch between two
//! equal rows closes into a zycle homomorphism, cycling it reaches a common
//! length `L` for all pairs, and winding the remaining ladder rows into that
//! zycle yields a homomorphism of the glued ladder-zycle graph into `H`.

use std::collections::HashMap;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::families::{glued_ladder_zycles, glued_ladders, ladder_zycle, zycle};
use crate::hypergraph::{binomial, EdgeOracle, Hypergraph};
use crate::morphisms::{find_embedding_in_blow_up, verify_homomorphism, MapKind, VertexMap};
use crate::search::{SearchLimits, SearchOutcome};

/// Images of consecutive ladder rows in a target graph. Row `a` together
/// with any vertex of row `a+1` must be an edge of the target.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RowTrace {
    pub rows: Vec<Vec<u32>>,
    /// Index of the source ladder row each entry came from.
    pub source_rows: Vec<usize>,
}

impl RowTrace {
    pub fn new(rows: Vec<Vec<u32>>) -> Self {
        let source_rows = (0..rows.len()).collect();
        RowTrace { rows, source_rows }
    }

    /// True iff consecutive rows satisfy the ladder edge pattern in `target`.
    pub fn is_valid_in(&self, target: &(impl EdgeOracle + ?Sized)) -> bool {
        self.rows.windows(2).all(|w| {
            w[1].iter().all(|&y| {
                let mut e = w[0].clone();
                e.push(y);
                target.contains_edge(&e)
            })
        })
    }

    fn row_set(&self, i: usize) -> Vec<u32> {
        let mut r = self.rows[i].clone();
        r.sort_unstable();
        r
    }

    /// First repeated row set: the smallest `i` whose set already occurred
    /// at some `i′ < i`, returned as `(i′, i)`.
    pub fn first_repeat(&self) -> Option<(usize, usize)> {
        let mut first: HashMap<Vec<u32>, usize> = HashMap::new();
        for i in 0..self.rows.len() {
            if let Some(&prev) = first.get(&self.row_set(i)) {
                return Some((prev, i));
            }
            first.insert(self.row_set(i), i);
        }
        None
    }
}

/// A homomorphism of `zycle(k, length)` into some target; row `a`, coordinate
/// `j` of the zycle is source vertex `a(k−1)+j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZycleHom {
    pub k: usize,
    pub length: usize,
    pub map: VertexMap,
}

impl ZycleHom {
    pub fn row(&self, a: usize) -> &[u32] {
        let w = self.k - 1;
        &self.map.image[a * w..(a + 1) * w]
    }

    pub fn starting_set(&self) -> &[u32] {
        self.row(0)
    }
}

/// Closes the stretch of `trace` between equal rows `i_prime < i` into a
/// homomorphism of the zycle of length `i − i_prime`, whose starting set is
/// row `i_prime`.
pub fn close_zycle(
    trace: &RowTrace,
    i_prime: usize,
    i: usize,
    target: &(impl EdgeOracle + ?Sized),
) -> Result<ZycleHom> {
    if i_prime >= i || i >= trace.rows.len() {
        return Err(invalid(format!(
            "need i′ < i < {} (got i′={i_prime}, i={i})",
            trace.rows.len()
        )));
    }
    if trace.row_set(i_prime) != trace.row_set(i) {
        return Err(invalid(format!("rows {i_prime} and {i} differ as sets")));
    }
    let length = i - i_prime;
    if length < 2 {
        return Err(invalid("zycle length must be ≥ 2"));
    }
    let k = target.uniformity();
    let image: Vec<u32> = (0..length)
        .flat_map(|a| trace.rows[i_prime + a].iter().copied())
        .collect();
    let z = zycle(k, length)?;
    if !verify_homomorphism(&z.graph, target, &image)? {
        return Err(invalid(
            "trace rows do not follow the ladder edge pattern in the target",
        ));
    }
    Ok(ZycleHom {
        k,
        length,
        map: VertexMap {
            kind: MapKind::Homomorphism,
            image,
        },
    })
}

/// Traverses the period of `z` `r` times: a homomorphism of the zycle of
/// length `z.length · r` with the same starting set.
pub fn cycle_multiply(z: &ZycleHom, r: usize, target: &(impl EdgeOracle + ?Sized)) -> Result<ZycleHom> {
    if r < 1 {
        return Err(invalid("repetition count must be ≥ 1"));
    }
    let length = z.length * r;
    let image: Vec<u32> = (0..length).flat_map(|a| z.row(a % z.length).iter().copied()).collect();
    let big = zycle(z.k, length)?;
    if !verify_homomorphism(&big.graph, target, &image)? {
        return Err(invalid("input is not a zycle homomorphism into the target"));
    }
    Ok(ZycleHom {
        k: z.k,
        length,
        map: VertexMap {
            kind: MapKind::Homomorphism,
            image,
        },
    })
}

/// Starting-set preserving homomorphism `LZ(k, j′, l) → LZ(k, j, l)` for
/// `1 ≤ j ≤ j′`: the first `j` ladder rows map to themselves and everything
/// beyond winds around the target's zycle (its row 0 being ladder row `j`).
pub fn lz_contraction_hom(k: usize, j: usize, j_prime: usize, base_length: usize) -> Result<VertexMap> {
    if j < 1 {
        return Err(invalid("ladder length m must be ≥ 1"));
    }
    if j > j_prime {
        return Err(invalid(format!("contraction needs j ≤ j′ (j={j}, j′={j_prime})")));
    }
    let source = ladder_zycle(k, j_prime, base_length)?;
    let target = ladder_zycle(k, j, base_length)?;
    let zrow = |b: usize| -> &Vec<u32> {
        let b = b % base_length;
        if b == 0 {
            &target.ladder_rows[0][j - 1]
        } else {
            &target.cycle_rows[0][b - 1]
        }
    };
    let mut image = vec![0u32; source.graph.n()];
    let mut put = |src: &[u32], dst: &[u32]| {
        for (&s, &d) in src.iter().zip(dst) {
            image[s as usize] = d;
        }
    };
    for (a, row) in source.ladder_rows[0].iter().enumerate() {
        if a < j {
            put(row, &target.ladder_rows[0][a]);
        } else {
            put(row, zrow(a + 1 - j));
        }
    }
    for (b, row) in source.cycle_rows[0].iter().enumerate() {
        put(row, zrow(j_prime - j + b + 1));
    }
    debug_assert!(verify_homomorphism(&source.graph, &target.graph, &image).unwrap_or(false));
    Ok(VertexMap {
        kind: if j == j_prime {
            MapKind::Embedding
        } else {
            MapKind::Homomorphism
        },
        image,
    })
}

/// Output of [`assemble_glz_hom`].
#[derive(Debug, Clone, Serialize)]
pub struct GlzHom {
    pub k: usize,
    pub s: usize,
    /// Ladder length `C(t, k−1) + 1`.
    pub m: usize,
    /// Zycle length: lcm of `cycle_lengths`.
    pub l: usize,
    pub cycle_lengths: Vec<usize>,
    /// Per pair, the closing row indices `(i′, i)` (0-based).
    pub repeats: Vec<(usize, usize)>,
    /// Images in `H` of the shared set `X`.
    pub x_images: Vec<u32>,
    /// Homomorphism of `glued_ladder_zycles(k, s, m, l)` into `H`.
    pub map: VertexMap,
    /// Embedding of `glued_ladders(k, s, [m; C(s,2)])` into `B(H, b)`.
    pub blow_up_embedding: VertexMap,
}

#[derive(Debug, Clone)]
pub enum PipelineOutcome {
    Assembled(Box<GlzHom>),
    /// Glued ladders of length `C(t,k−1)+1` do not embed in the blow-up.
    Absent,
    Unknown,
}

/// Runs the full projection, pigeonhole, closing, cycling and winding
/// pipeline on a `t`-vertex host.
pub fn assemble_glz_hom(
    host: &Hypergraph,
    s: usize,
    blow_factor: usize,
    limits: &SearchLimits,
) -> Result<PipelineOutcome> {
    let k = host.k();
    let t = host.n();
    let m = binomial(t as u64, k as u64 - 1) as usize + 1;
    let pairs = binomial(s as u64, 2) as usize;
    let gl = glued_ladders(k, s, &vec![m; pairs])?;
    let embedding = match find_embedding_in_blow_up(&gl.graph, host, blow_factor, &[], limits)? {
        SearchOutcome::Found(e) => e,
        SearchOutcome::Absent => return Ok(PipelineOutcome::Absent),
        SearchOutcome::Unknown => return Ok(PipelineOutcome::Unknown),
    };
    let class = |v: u32| embedding.image[v as usize] / blow_factor as u32;

    let mut zycles = Vec::with_capacity(pairs);
    let mut repeats = Vec::with_capacity(pairs);
    let mut traces = Vec::with_capacity(pairs);
    for rows in &gl.ladder_rows {
        let trace = RowTrace::new(rows.iter().map(|r| r.iter().map(|&v| class(v)).collect()).collect());
        debug_assert!(trace.is_valid_in(host));
        let (ip, i) = trace.first_repeat().expect("C(t,k−1)+1 rows over a t-set must repeat");
        zycles.push(close_zycle(&trace, ip, i, host)?);
        repeats.push((ip, i));
        traces.push(trace);
    }
    let cycle_lengths: Vec<usize> = zycles.iter().map(|z| z.length).collect();
    let l = cycle_lengths.iter().fold(1usize, |acc, &p| acc.lcm(&p));

    let glz = glued_ladder_zycles(k, s, m, l)?;
    let w = k - 1;
    let mut image = vec![u32::MAX; glz.graph.n()];
    for r in 0..pairs {
        let (ip, _) = repeats[r];
        let zl = cycle_multiply(&zycles[r], l / zycles[r].length, host)?;
        // LZ(ip+1, l) -> H: ladder rows from the trace, closing rows from the zycle.
        let short = ladder_zycle(k, ip + 1, l)?;
        let mut short_img = vec![0u32; short.graph.n()];
        for (a, row) in short.ladder_rows[0].iter().enumerate() {
            for (jj, &v) in row.iter().enumerate() {
                short_img[v as usize] = traces[r].rows[a][jj];
            }
        }
        for (b, row) in short.cycle_rows[0].iter().enumerate() {
            for (jj, &v) in row.iter().enumerate() {
                short_img[v as usize] = zl.row(b + 1)[jj];
            }
        }
        let contraction = lz_contraction_hom(k, ip + 1, m, l)?;
        let lz_img: Vec<u32> = contraction.image.iter().map(|&v| short_img[v as usize]).collect();
        // LZ(m, l) layout: ladder row a at a·w, closing row i at (m + i − 2)·w.
        let place = |slot: &mut u32, val: u32| -> Result<()> {
            if *slot != u32::MAX && *slot != val {
                return Err(invalid("shared vertex received two different images"));
            }
            *slot = val;
            Ok(())
        };
        for (a, row) in glz.ladder_rows[r].iter().enumerate() {
            for (jj, &v) in row.iter().enumerate() {
                place(&mut image[v as usize], lz_img[a * w + jj])?;
            }
        }
        for (b, row) in glz.cycle_rows[r].iter().enumerate() {
            for (jj, &v) in row.iter().enumerate() {
                place(&mut image[v as usize], lz_img[(m + b) * w + jj])?;
            }
        }
    }
    if !verify_homomorphism(&glz.graph, host, &image)? {
        return Err(invalid("assembled map is not a homomorphism"));
    }
    let x_images = glz.x.iter().map(|&x| image[x as usize]).collect();
    Ok(PipelineOutcome::Assembled(Box::new(GlzHom {
        k,
        s,
        m,
        l,
        cycle_lengths,
        repeats,
        x_images,
        map: VertexMap {
            kind: MapKind::Homomorphism,
            image,
        },
        blow_up_embedding: embedding,
    })))
}
