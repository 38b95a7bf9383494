//! Deterministic synthetic graphs for tests, examples and benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::graph::{Graph, VertexId};

fn build(n: usize, edges: Vec<(VertexId, VertexId)>) -> Graph {
    Graph::from_edges(n, edges).expect("generator produced at least one edge")
}

/// Complete graph `K_k`.
pub fn complete(k: usize) -> Graph {
    let mut edges = Vec::new();
    for a in 0..k as VertexId {
        for b in a + 1..k as VertexId {
            edges.push((a, b));
        }
    }
    build(k, edges)
}

/// Path on `k` vertices.
pub fn path(k: usize) -> Graph {
    build(k, (1..k as VertexId).map(|i| (i - 1, i)).collect())
}

/// Cycle on `k` vertices.
pub fn cycle(k: usize) -> Graph {
    let mut edges: Vec<_> = (1..k as VertexId).map(|i| (i - 1, i)).collect();
    edges.push((k as VertexId - 1, 0));
    build(k, edges)
}

/// Star with center 0 and `leaves` leaves.
pub fn star(leaves: usize) -> Graph {
    build(leaves + 1, (1..=leaves as VertexId).map(|i| (0, i)).collect())
}

/// Triangle on {0, 1, 2} plus isolated vertex 3.
pub fn triangle_plus_isolated() -> Graph {
    build(4, vec![(0, 1), (1, 2), (0, 2)])
}

/// Vertex-disjoint union; the vertices of `b` follow those of `a`.
pub fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
    let shift = a.n() as VertexId;
    let edges = a
        .edges()
        .iter()
        .copied()
        .chain(b.edges().iter().map(|&(x, y)| (x + shift, y + shift)))
        .collect();
    build(a.n() + b.n(), edges)
}

/// Erdős–Rényi `G(n, p)`: each pair `a < b`, in lexicographic order, is
/// kept when a uniform draw from a ChaCha8 stream seeded with `seed` falls
/// below `p`. Panics if no edge is kept; see [`try_erdos_renyi`].
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Graph {
    try_erdos_renyi(n, p, seed).expect("G(n, p) draw has at least one edge")
}

/// As [`erdos_renyi`], returning [`Error::EmptyGraph`](crate::Error::EmptyGraph)
/// when no edge is kept.
pub fn try_erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for a in 0..n as VertexId {
        for b in a + 1..n as VertexId {
            if rng.gen::<f64>() < p {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// Barabási–Albert preferential attachment: a seed clique on `k + 1`
/// vertices, then each new vertex links to `k` distinct existing vertices
/// chosen proportionally to degree. Produces about `n * k` edges.
pub fn barabasi_albert(n: usize, k: usize, seed: u64) -> Graph {
    assert!(k >= 1 && n > k + 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::with_capacity(n * k);
    // Each endpoint appears once per incident edge.
    let mut ends: Vec<VertexId> = Vec::with_capacity(2 * n * k);
    for a in 0..=k as VertexId {
        for b in a + 1..=k as VertexId {
            edges.push((a, b));
            ends.push(a);
            ends.push(b);
        }
    }
    let mut targets: Vec<VertexId> = Vec::with_capacity(k);
    for v in (k + 1) as VertexId..n as VertexId {
        targets.clear();
        while targets.len() < k {
            let t = ends[rng.gen_range(0..ends.len())];
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for &t in &targets {
            edges.push((t, v));
            ends.push(t);
            ends.push(v);
        }
    }
    build(n, edges)
}

/// `G(n, p)` with a clique planted on vertices `0..clique`.
pub fn planted_clique(n: usize, p: f64, clique: usize, seed: u64) -> Graph {
    let base = erdos_renyi(n, p, seed);
    let mut edges = base.edges().to_vec();
    for a in 0..clique as VertexId {
        for b in a + 1..clique as VertexId {
            edges.push((a, b));
        }
    }
    build(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_families() {
        assert_eq!(complete(5).m(), 10);
        assert_eq!(path(4).m(), 3);
        assert_eq!(cycle(4).m(), 4);
        assert_eq!(star(3).degree(0), 3);
        assert_eq!(triangle_plus_isolated().n(), 4);
        let u = disjoint_union(&complete(4), &cycle(4));
        assert_eq!((u.n(), u.m()), (8, 10));
    }

    #[test]
    fn random_graphs_are_seeded() {
        assert_eq!(erdos_renyi(50, 0.1, 1), erdos_renyi(50, 0.1, 1));
        assert_ne!(erdos_renyi(50, 0.1, 1), erdos_renyi(50, 0.1, 2));
        let ba = barabasi_albert(1000, 3, 7);
        assert_eq!(ba.m(), 6 + (1000 - 4) * 3);
        let pc = planted_clique(100, 0.05, 8, 3);
        assert!(pc.has_edge(0, 7));
    }
}
