//! Brute-force ground truth by exhaustive enumeration of vertex subsets.
//!
//! Deliberately simple and slow; every other counting path is checked
//! against it.

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::graphlet::{choose, Graphlet, GraphletVec};

/// Largest graph [`brute_force_counts`] accepts by default.
pub const DEFAULT_CAP: usize = 64;

/// Pattern induced by 3 or 4 distinct vertices, from the edge count and the
/// sorted degree sequence of the induced subgraph.
pub fn classify_induced(g: &Graph, vertices: &[VertexId]) -> Result<Graphlet> {
    use Graphlet::*;
    let k = vertices.len();
    if !(3..=4).contains(&k) {
        return Err(Error::InvalidArgument(format!(
            "expected 3 or 4 vertices, got {k}"
        )));
    }
    let mut degree = [0usize; 4];
    let mut edges = 0;
    for i in 0..k {
        for j in i + 1..k {
            if vertices[i] == vertices[j] {
                return Err(Error::InvalidArgument("vertices must be distinct".into()));
            }
            if g.has_edge(vertices[i], vertices[j]) {
                edges += 1;
                degree[i] += 1;
                degree[j] += 1;
            }
        }
    }
    let mut deg = degree[..k].to_vec();
    deg.sort_unstable();
    let pattern = match (k, edges, deg.as_slice()) {
        (3, 3, _) => Triangle,
        (3, 2, _) => TwoStar,
        (3, 1, _) => ThreeNodeOneEdge,
        (3, 0, _) => ThreeNodeIndependent,
        (4, 6, _) => FourClique,
        (4, 5, _) => ChordalCycle,
        (4, 4, [1, 2, 2, 3]) => TailedTriangle,
        (4, 4, [2, 2, 2, 2]) => FourCycle,
        (4, 3, [1, 1, 1, 3]) => ThreeStar,
        (4, 3, [1, 1, 2, 2]) => FourPath,
        (4, 3, [0, 2, 2, 2]) => FourNodeOneTriangle,
        (4, 2, [0, 1, 1, 2]) => FourNodeTwoStar,
        (4, 2, [1, 1, 1, 1]) => FourNodeTwoEdge,
        (4, 1, _) => FourNodeOneEdge,
        (4, 0, _) => FourNodeIndependent,
        _ => unreachable!("every graph on 4 vertices is covered"),
    };
    Ok(pattern)
}

fn check_cap(g: &Graph, cap: usize) -> Result<()> {
    if g.n() > cap {
        Err(Error::OracleCap { n: g.n(), cap })
    } else {
        Ok(())
    }
}

/// Exact count of every pattern by enumerating all 3- and 4-subsets.
pub fn brute_force_counts(g: &Graph) -> Result<GraphletVec<u128>> {
    brute_force_counts_capped(g, DEFAULT_CAP)
}

pub fn brute_force_counts_capped(g: &Graph, cap: usize) -> Result<GraphletVec<u128>> {
    check_cap(g, cap)?;
    let n = g.n() as VertexId;
    let mut y = GraphletVec::<u128>::zeros();
    y[Graphlet::Edge] = g.m() as u128;
    y[Graphlet::TwoNodeIndependent] = choose(g.n() as u128, 2) - g.m() as u128;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                y[classify_induced(g, &[a, b, c])?] += 1;
                for d in c + 1..n {
                    y[classify_induced(g, &[a, b, c, d])?] += 1;
                }
            }
        }
    }
    Ok(y)
}

/// Per-edge exact counts: every vertex set of size 2, 3 or 4 containing both
/// endpoints of `e`, classified. Patterns without edges are always zero.
pub fn brute_force_edge_counts(g: &Graph, e: EdgeId) -> Result<GraphletVec<u128>> {
    check_cap(g, DEFAULT_CAP)?;
    let (u, v) = g.edge(e);
    let rest: Vec<VertexId> = (0..g.n() as VertexId).filter(|&w| w != u && w != v).collect();
    let mut y = GraphletVec::<u128>::zeros();
    y[Graphlet::Edge] = 1;
    for (i, &a) in rest.iter().enumerate() {
        y[classify_induced(g, &[u, v, a])?] += 1;
        for &b in &rest[i + 1..] {
            y[classify_induced(g, &[u, v, a, b])?] += 1;
        }
    }
    Ok(y)
}
