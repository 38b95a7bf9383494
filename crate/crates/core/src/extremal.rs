//! Largest per-edge count of one pattern, found by biased edge sampling.
//!
//! Sampled edges are evaluated exactly and the maximum is reported as is,
//! so the result never exceeds the true maximum. Weighting the selection by
//! core number steers the sample toward dense regions where large counts of
//! clique-like patterns live.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::graphlet::Graphlet;
use crate::micro::{MicroConfig, MicroCounter};
use crate::sampling::{sample_edges, SampleDesign};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtremalResult {
    pub pattern: Graphlet,
    /// Largest observed per-edge count.
    pub z: f64,
    pub edge: EdgeId,
    pub endpoints: (VertexId, VertexId),
    /// Distinct edges evaluated.
    pub evaluated: usize,
}

/// Per-edge maximum of `pattern` over the edges selected by `design`.
/// Ties go to the smallest edge id.
pub fn max_graphlet_estimate(
    g: &Graph,
    pattern: Graphlet,
    design: &SampleDesign,
    workers: usize,
) -> Result<ExtremalResult> {
    if pattern.id() < 3 {
        return Err(Error::InvalidArgument(format!(
            "pattern {} has no per-edge maximum",
            pattern.name()
        )));
    }
    let mut edges = sample_edges(g, design)?;
    edges.sort_unstable();
    edges.dedup();
    if edges.is_empty() {
        return Err(Error::EmptySample);
    }

    let best_of = |chunk: &[EdgeId]| -> Result<(f64, EdgeId)> {
        let mut counter = MicroCounter::new(g);
        let mut best = (f64::NEG_INFINITY, EdgeId::MAX);
        for &e in chunk {
            let x = counter.count(e, &MicroConfig::exact())?.x[pattern];
            if x > best.0 {
                best = (x, e);
            }
        }
        Ok(best)
    };

    let workers = workers.max(1).min(edges.len());
    let parts: Vec<Result<(f64, EdgeId)>> = if workers == 1 {
        vec![best_of(&edges)]
    } else {
        let chunk = edges.len().div_ceil(workers);
        std::thread::scope(|s| {
            let handles: Vec<_> = edges.chunks(chunk).map(|c| s.spawn(move || best_of(c))).collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
        })
    };
    let mut best = (f64::NEG_INFINITY, EdgeId::MAX);
    for p in parts {
        let (z, e) = p?;
        if z > best.0 || (z == best.0 && e < best.1) {
            best = (z, e);
        }
    }
    let (a, b) = g.edge(best.1);
    Ok(ExtremalResult {
        pattern,
        z: best.0,
        edge: best.1,
        endpoints: (a, b),
        evaluated: edges.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{complete, cycle, disjoint_union};
    use crate::sampling::Weighting;

    #[test]
    fn exhaustive_finds_true_max() {
        let g = disjoint_union(&complete(4), &cycle(4));
        let r = max_graphlet_estimate(&g, Graphlet::FourClique, &SampleDesign::exhaustive(), 1).unwrap();
        assert_eq!((r.z, r.edge), (1.0, 0));
        let r = max_graphlet_estimate(&g, Graphlet::FourCycle, &SampleDesign::exhaustive(), 3).unwrap();
        assert_eq!(r.z, 1.0);
        assert!(r.endpoints.0 >= 4);
    }

    #[test]
    fn never_exceeds_exact_max() {
        let g = disjoint_union(&complete(5), &cycle(6));
        for seed in 0..20 {
            let d = SampleDesign::probability(0.3, seed).with_weighting(Weighting::KCore);
            if let Ok(r) = max_graphlet_estimate(&g, Graphlet::FourClique, &d, 1) {
                assert!(r.z <= 3.0);
            }
        }
    }

    #[test]
    fn rejects_patterns_without_edges() {
        let g = complete(4);
        assert!(max_graphlet_estimate(&g, Graphlet::Edge, &SampleDesign::exhaustive(), 1).is_err());
    }
}
