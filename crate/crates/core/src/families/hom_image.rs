use std::collections::BTreeMap;

use crate::canon::{canonical_form, CanonicalForm};
use crate::hypergraph::Hypergraph;
use crate::morphisms::contains_copy;

/// Minimal homomorphic images of `f`.
///
/// Enumerates the quotients of `f` by vertex partitions that never merge two
/// vertices of a common edge (restricted growth strings), deduplicates them
/// up to isomorphism and keeps only those containing no other image. A host
/// admits a homomorphism from `f` iff it contains a copy of some member.
/// Members are returned in canonical labeling, ordered by vertex count, edge
/// count and canonical form.
pub fn hom_image_family(f: &Hypergraph) -> Vec<Hypergraph> {
    let n = f.n();
    let mut conflicts: Vec<Vec<u32>> = vec![Vec::new(); n];
    for e in f.edges() {
        for &a in e {
            for &b in e {
                if a < b {
                    conflicts[b as usize].push(a);
                }
            }
        }
    }
    let mut images: BTreeMap<(usize, usize, CanonicalForm), Hypergraph> = BTreeMap::new();
    let mut block = vec![0u32; n];

    fn walk(
        v: usize,
        blocks: u32,
        block: &mut [u32],
        conflicts: &[Vec<u32>],
        f: &Hypergraph,
        out: &mut BTreeMap<(usize, usize, CanonicalForm), Hypergraph>,
    ) {
        if v == block.len() {
            let q = Hypergraph::from_edge_set(
                f.k(),
                blocks as usize,
                f.edges().iter().map(|e| e.iter().map(|&u| block[u as usize]).collect()),
            );
            let cf = canonical_form(&q);
            let key = (cf.n, cf.edges.len(), cf);
            out.entry(key).or_insert_with_key(|k| k.2.graph());
            return;
        }
        for b in 0..=blocks {
            if conflicts[v].iter().any(|&u| block[u as usize] == b) {
                continue;
            }
            block[v] = b;
            walk(v + 1, blocks.max(b + 1), block, conflicts, f, out);
        }
    }

    walk(0, 0, &mut block, &conflicts, f, &mut images);

    // Keys sort by (vertices, edges): anything a candidate could contain was
    // already decided.
    let mut minimal: Vec<Hypergraph> = Vec::new();
    for (_, g) in images {
        let dominated = minimal
            .iter()
            .any(|m| contains_copy(&g, m).expect("uniformity matches"));
        if !dominated {
            minimal.push(g);
        }
    }
    minimal
}
