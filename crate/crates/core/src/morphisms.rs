//! Embedding and homomorphism search, copy counting and map verification.

use serde::{Deserialize, Serialize};

use crate::canon::automorphism_count;
use crate::error::{invalid, Error, Result};
use crate::hypergraph::{BlowUpView, EdgeOracle, Hypergraph};
use crate::search::{Engine, Reuse, SearchLimits, SearchOutcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MapKind {
    #[serde(rename = "hom")]
    Homomorphism,
    #[serde(rename = "emb")]
    Embedding,
}

/// A total map from source vertices to target vertices. Every source edge is
/// sent to a target edge; embeddings are additionally injective.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexMap {
    pub kind: MapKind,
    pub image: Vec<u32>,
}

impl VertexMap {
    pub fn identity(n: usize) -> Self {
        VertexMap {
            kind: MapKind::Embedding,
            image: (0..n as u32).collect(),
        }
    }

    pub fn apply(&self, v: u32) -> u32 {
        self.image[v as usize]
    }

    /// `other ∘ self`. Injectivity is kept only if both maps are embeddings.
    pub fn then(&self, other: &VertexMap) -> VertexMap {
        let kind = if self.kind == MapKind::Embedding && other.kind == MapKind::Embedding {
            MapKind::Embedding
        } else {
            MapKind::Homomorphism
        };
        VertexMap {
            kind,
            image: self.image.iter().map(|&v| other.apply(v)).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("vertex map serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            position: e.column(),
            message: e.to_string(),
        })
    }
}

fn check_total(source: &Hypergraph, target: &(impl EdgeOracle + ?Sized), image: &[u32]) -> Result<()> {
    if source.k() != target.uniformity() {
        return Err(Error::UniformityMismatch(source.k(), target.uniformity()));
    }
    if image.len() != source.n() {
        return Err(Error::PartialMap {
            expected: source.n(),
            got: image.len(),
        });
    }
    if let Some(&v) = image.iter().find(|&&v| v as usize >= target.vertex_count()) {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            n: target.vertex_count(),
        });
    }
    Ok(())
}

/// True iff every source edge maps onto a target edge with `k` distinct images.
pub fn verify_homomorphism(source: &Hypergraph, target: &(impl EdgeOracle + ?Sized), image: &[u32]) -> Result<bool> {
    check_total(source, target, image)?;
    let mut buf = vec![0u32; source.k()];
    Ok(source.edges().iter().all(|e| {
        for (slot, &v) in buf.iter_mut().zip(e) {
            *slot = image[v as usize];
        }
        target.contains_edge(&buf)
    }))
}

/// [`verify_homomorphism`] plus global injectivity.
pub fn verify_embedding(source: &Hypergraph, target: &(impl EdgeOracle + ?Sized), image: &[u32]) -> Result<bool> {
    if !verify_homomorphism(source, target, image)? {
        return Ok(false);
    }
    let mut seen = vec![false; target.vertex_count()];
    Ok(image.iter().all(|&v| !std::mem::replace(&mut seen[v as usize], true)))
}

/// Checks a returned map against its declared kind.
pub fn verify_map(source: &Hypergraph, target: &(impl EdgeOracle + ?Sized), map: &VertexMap) -> Result<bool> {
    match map.kind {
        MapKind::Embedding => verify_embedding(source, target, &map.image),
        MapKind::Homomorphism => verify_homomorphism(source, target, &map.image),
    }
}

fn finish(
    outcome: SearchOutcome<Vec<u32>>,
    kind: MapKind,
    source: &Hypergraph,
    target: &(impl EdgeOracle + ?Sized),
) -> SearchOutcome<VertexMap> {
    outcome.map(|image| {
        let map = VertexMap { kind, image };
        debug_assert!(verify_map(source, target, &map).unwrap_or(false));
        map
    })
}

/// Injective edge-preserving map of `pattern` into `host` extending `pin`.
pub fn find_embedding_within<H: EdgeOracle + Sync + ?Sized>(
    pattern: &Hypergraph,
    host: &H,
    pin: &[(u32, u32)],
    limits: &SearchLimits,
) -> Result<SearchOutcome<VertexMap>> {
    let engine = Engine::new(pattern, host, Reuse::Injective, pin)?;
    if pattern.n() > host.vertex_count() {
        return Ok(SearchOutcome::Absent);
    }
    let (outcome, _) = engine.find(limits);
    Ok(finish(outcome, MapKind::Embedding, pattern, host))
}

pub fn find_embedding<H: EdgeOracle + Sync + ?Sized>(
    pattern: &Hypergraph,
    host: &H,
    pin: &[(u32, u32)],
) -> Result<Option<VertexMap>> {
    Ok(find_embedding_within(pattern, host, pin, &SearchLimits::default())?.found())
}

/// Edge-preserving (not necessarily injective) map extending `pin`.
pub fn find_homomorphism_within<H: EdgeOracle + Sync + ?Sized>(
    pattern: &Hypergraph,
    host: &H,
    pin: &[(u32, u32)],
    limits: &SearchLimits,
) -> Result<SearchOutcome<VertexMap>> {
    let engine = Engine::new(pattern, host, Reuse::Unbounded, pin)?;
    let (outcome, _) = engine.find(limits);
    Ok(finish(outcome, MapKind::Homomorphism, pattern, host))
}

pub fn find_homomorphism<H: EdgeOracle + Sync + ?Sized>(
    pattern: &Hypergraph,
    host: &H,
    pin: &[(u32, u32)],
) -> Result<Option<VertexMap>> {
    Ok(find_homomorphism_within(pattern, host, pin, &SearchLimits::default())?.found())
}

/// Embedding of `pattern` into the blow-up `B(base, factor)`.
///
/// An injective map into the blow-up is the same thing as a homomorphism into
/// `base` whose fibres have at most `factor` vertices, so the search runs on
/// `base` with that capacity and the copies are assigned afterwards. Pins use
/// blow-up coordinates. The returned map targets [`BlowUpView`] coordinates.
pub fn find_embedding_in_blow_up(
    pattern: &Hypergraph,
    base: &Hypergraph,
    factor: usize,
    pin: &[(u32, u32)],
    limits: &SearchLimits,
) -> Result<SearchOutcome<VertexMap>> {
    let view = BlowUpView::new(base, factor)?;
    if pattern.k() != base.k() {
        return Err(Error::UniformityMismatch(pattern.k(), base.k()));
    }
    let mut pinned_copy = vec![None; pattern.n()];
    let mut taken = std::collections::HashSet::new();
    for &(p, h) in pin {
        if h as usize >= view.vertex_count() || p as usize >= pattern.n() {
            return Err(Error::InconsistentPin(format!("pin ({p}, {h}) out of range")));
        }
        if !taken.insert(h) && pinned_copy[p as usize] != Some(h) {
            return Err(Error::InconsistentPin(format!("blow-up vertex {h} pinned twice")));
        }
        pinned_copy[p as usize] = Some(h);
    }
    if pattern.n() > view.vertex_count() {
        return Ok(SearchOutcome::Absent);
    }
    let class_pins: Vec<(u32, u32)> = pin.iter().map(|&(p, h)| (p, view.class_of(h))).collect();
    let capacity = u32::try_from(factor).map_err(|_| invalid("blow-up factor too large"))?;
    let engine = Engine::new(pattern, base, Reuse::Capacity(capacity), &class_pins)?;
    let (outcome, _) = engine.find(limits);
    Ok(outcome.map(|classes| {
        let b = factor as u32;
        let mut next = vec![0u32; base.n()];
        let image: Vec<u32> = classes
            .iter()
            .enumerate()
            .map(|(p, &c)| match pinned_copy[p] {
                Some(h) => h,
                None => loop {
                    let cand = c * b + next[c as usize];
                    next[c as usize] += 1;
                    if !taken.contains(&cand) {
                        break cand;
                    }
                },
            })
            .collect();
        let map = VertexMap {
            kind: MapKind::Embedding,
            image,
        };
        debug_assert!(verify_map(pattern, &view, &map).unwrap_or(false));
        map
    }))
}

pub fn contains_copy<H: EdgeOracle + Sync + ?Sized>(host: &H, pattern: &Hypergraph) -> Result<bool> {
    Ok(find_embedding(pattern, host, &[])?.is_some())
}

/// True iff no family member embeds into `host`. The empty family is vacuous.
pub fn is_free<H: EdgeOracle + Sync + ?Sized>(host: &H, family: &[Hypergraph]) -> Result<bool> {
    for f in family {
        if contains_copy(host, f)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Number of labeled (injective) embeddings of `pattern` into `host`.
pub fn count_embeddings<H: EdgeOracle + Sync + ?Sized>(host: &H, pattern: &Hypergraph) -> Result<u64> {
    match count_embeddings_within(host, pattern, &SearchLimits::default())? {
        SearchOutcome::Found(c) => Ok(c),
        _ => unreachable!("no deadline"),
    }
}

pub fn count_embeddings_within<H: EdgeOracle + Sync + ?Sized>(
    host: &H,
    pattern: &Hypergraph,
    limits: &SearchLimits,
) -> Result<SearchOutcome<u64>> {
    let engine = Engine::new(pattern, host, Reuse::Injective, &[])?;
    if pattern.n() > host.vertex_count() {
        return Ok(SearchOutcome::Found(0));
    }
    Ok(engine.count(limits))
}

/// Unlabeled copies: labeled embeddings divided by `|Aut(pattern)|`.
pub fn count_copies<H: EdgeOracle + Sync + ?Sized>(host: &H, pattern: &Hypergraph) -> Result<u64> {
    let labeled = count_embeddings(host, pattern)?;
    let aut = automorphism_count(pattern);
    assert_eq!(labeled % aut, 0, "labeled count must be a multiple of |Aut|");
    Ok(labeled / aut)
}
