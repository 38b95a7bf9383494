//! Per-edge neighborhood decomposition and exact local pattern counts.
//!
//! For an edge `e = (u, v)` with `d_u <= d_v` the other vertices split into
//! the common neighbors `T_e`, the exclusive neighbors `S_u` and `S_v`, and
//! `R_e` vertices adjacent to neither endpoint. Every per-edge quantity used
//! by the estimators is a closed form over those sets plus two scans: the
//! 4-cliques through `e` (adjacent pairs inside `T_e`) and the 4-cycles
//! through `e` (edges between `S_u` and `S_v`).

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::graphlet::{Graphlet, GraphletVec};

/// Vertex classification codes relative to the current edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mark {
    #[default]
    Unmarked,
    /// Neighbor of `v` only.
    StarV,
    /// Neighbor of `u` only.
    StarU,
    /// Common neighbor.
    Triangle,
    /// Common neighbor whose clique scan has completed.
    Done,
}

/// Per-vertex code table with O(1) reset via a generation counter.
#[derive(Debug, Clone)]
pub struct VertexMarker {
    stamp: Vec<u32>,
    marks: Vec<Mark>,
    generation: u32,
}

impl VertexMarker {
    pub fn new(n: usize) -> VertexMarker {
        VertexMarker {
            stamp: vec![0; n],
            marks: vec![Mark::Unmarked; n],
            generation: 1,
        }
    }

    /// Invalidates every mark.
    pub fn reset(&mut self) {
        if self.generation == u32::MAX {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.generation = 1;
        } else {
            self.generation += 1;
        }
    }

    #[inline]
    pub fn get(&self, w: VertexId) -> Mark {
        let w = w as usize;
        if self.stamp[w] == self.generation {
            self.marks[w]
        } else {
            Mark::Unmarked
        }
    }

    #[inline]
    pub fn set(&mut self, w: VertexId, mark: Mark) {
        let w = w as usize;
        self.stamp[w] = self.generation;
        self.marks[w] = mark;
    }

    pub fn len(&self) -> usize {
        self.marks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.marks.is_empty()
    }
}

/// Decomposition of the neighborhood of one edge.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EdgeLocal {
    pub edge: EdgeId,
    /// Lower-degree endpoint (ties broken by smaller id).
    pub u: VertexId,
    pub v: VertexId,
    /// `N(u) ∩ N(v)`, sorted.
    pub triangles: Vec<VertexId>,
    /// `N(u) \ N[v]`, sorted.
    pub star_u: Vec<VertexId>,
    /// `N(v) \ N[u]`, sorted.
    pub star_v: Vec<VertexId>,
    /// Vertices adjacent to neither endpoint: `n - |T| - |S_u| - |S_v| - 2`.
    pub far: u64,
}

impl EdgeLocal {
    pub fn stars(&self) -> usize {
        self.star_u.len() + self.star_v.len()
    }
}

fn oriented(g: &Graph, e: EdgeId) -> (VertexId, VertexId) {
    let (a, b) = g.edge(e);
    if g.degree(a) <= g.degree(b) {
        (a, b)
    } else {
        (b, a)
    }
}

fn far_count(g: &Graph, loc: &EdgeLocal) -> u64 {
    (g.n() - loc.triangles.len() - loc.stars() - 2) as u64
}

/// Splits the neighborhood of `e` into `T_e`, `S_u`, `S_v` and marks each
/// vertex in `marker` (`Triangle`, `StarU`, `StarV`). Runs in `O(d_u + d_v)`.
pub fn classify_neighborhood(g: &Graph, e: EdgeId, marker: &mut VertexMarker) -> EdgeLocal {
    let mut loc = EdgeLocal::default();
    classify_into(g, e, marker, &mut loc);
    loc
}

/// As [`classify_neighborhood`], reusing the buffers in `loc`.
pub fn classify_into(g: &Graph, e: EdgeId, marker: &mut VertexMarker, loc: &mut EdgeLocal) {
    let (u, v) = oriented(g, e);
    marker.reset();
    loc.edge = e;
    loc.u = u;
    loc.v = v;
    loc.triangles.clear();
    loc.star_u.clear();
    loc.star_v.clear();

    for &w in g.neighbors(v) {
        if w != u {
            marker.set(w, Mark::StarV);
        }
    }
    for &w in g.neighbors(u) {
        if w == v {
            continue;
        }
        if marker.get(w) == Mark::StarV {
            loc.triangles.push(w);
            marker.set(w, Mark::Triangle);
        } else {
            loc.star_u.push(w);
            marker.set(w, Mark::StarU);
        }
    }
    for &w in g.neighbors(v) {
        if w != u && marker.get(w) == Mark::StarV {
            loc.star_v.push(w);
        }
    }
    loc.far = far_count(g, loc);
}

/// Marker-free classification by merging the two sorted neighbor lists.
/// Uses `O(Δ)` auxiliary space.
pub fn classify_by_merge(g: &Graph, e: EdgeId, loc: &mut EdgeLocal) {
    let (u, v) = oriented(g, e);
    loc.edge = e;
    loc.u = u;
    loc.v = v;
    loc.triangles.clear();
    loc.star_u.clear();
    loc.star_v.clear();

    let (nu, nv) = (g.neighbors(u), g.neighbors(v));
    let (mut i, mut j) = (0, 0);
    while i < nu.len() || j < nv.len() {
        let a = nu.get(i).copied();
        let b = nv.get(j).copied();
        match (a, b) {
            (Some(x), Some(y)) if x == y => {
                loc.triangles.push(x);
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => {
                if x != v {
                    loc.star_u.push(x);
                }
                i += 1;
            }
            (Some(x), None) => {
                if x != v {
                    loc.star_u.push(x);
                }
                i += 1;
            }
            (_, Some(y)) => {
                if y != u {
                    loc.star_v.push(y);
                }
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    loc.far = far_count(g, loc);
}

/// 4-cliques containing the classified edge: adjacent pairs within `T_e`.
///
/// Each processed `w` is demoted from `Triangle` to `Done` so that every pair
/// is found exactly once. Leaves every `T_e` vertex marked `Done`.
pub fn clique_count_marker(g: &Graph, marker: &mut VertexMarker, triangles: &[VertexId]) -> u64 {
    let mut k = 0u64;
    for &w in triangles {
        for &r in g.neighbors(w) {
            if marker.get(r) == Mark::Triangle {
                k += 1;
            }
        }
        marker.set(w, Mark::Done);
    }
    k
}

/// 4-cycles containing the classified edge: edges from `S_u` into `S_v`.
pub fn cycle_count_marker(g: &Graph, marker: &VertexMarker, star_u: &[VertexId]) -> u64 {
    let mut c = 0u64;
    for &w in star_u {
        for &r in g.neighbors(w) {
            if marker.get(r) == Mark::StarV {
                c += 1;
            }
        }
    }
    c
}

/// `|a ∩ b|` for sorted slices, binary-searching the shorter into the longer.
fn sorted_intersection_size(a: &[VertexId], b: &[VertexId]) -> u64 {
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    small
        .iter()
        .filter(|x| large.binary_search(x).is_ok())
        .count() as u64
}

/// [`clique_count_marker`] without a vertex table: each `w_i` is searched
/// against the later entries of `T_e`.
pub fn clique_count_bsearch(g: &Graph, triangles: &[VertexId]) -> u64 {
    triangles
        .iter()
        .enumerate()
        .map(|(i, &w)| sorted_intersection_size(g.neighbors(w), &triangles[i + 1..]))
        .sum()
}

/// [`cycle_count_marker`] without a vertex table.
pub fn cycle_count_bsearch(g: &Graph, star_u: &[VertexId], star_v: &[VertexId]) -> u64 {
    star_u
        .iter()
        .map(|&w| sorted_intersection_size(g.neighbors(w), star_v))
        .sum()
}

/// Per-edge unrestricted counts, indexed by pattern.
///
/// Nonzero entries: `3: |T|`, `4: |S_u|+|S_v|`, `5: R`, `7: K_e`,
/// `8: C(|T|,2)`, `9: |T|(|S_u|+|S_v|)`, `10: C_e`, `11: C(|S_u|,2)+C(|S_v|,2)`,
/// `12: |S_u||S_v|`, `13: (|S_u|+|S_v|) R`, `14: |T| R`, `15: C(R,2)`,
/// `16: m - d_u - d_v + 1` (edges sharing no endpoint with `e`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EdgeUnrestricted(pub GraphletVec<u128>);

impl EdgeUnrestricted {
    pub fn get(&self, g: Graphlet) -> u128 {
        self.0[g]
    }
}

fn pairs(x: u128) -> Option<u128> {
    if x < 2 {
        Some(0)
    } else {
        x.checked_mul(x - 1).map(|p| p / 2)
    }
}

/// Closed-form per-edge counts from the decomposition plus `K_e` and `C_e`.
pub fn unrestricted_counts(
    loc: &EdgeLocal,
    cliques: u64,
    cycles: u64,
    g: &Graph,
) -> Result<EdgeUnrestricted> {
    use Graphlet::*;
    let overflow = |what| Error::Overflow(what);
    let t = loc.triangles.len() as u128;
    let su = loc.star_u.len() as u128;
    let sv = loc.star_v.len() as u128;
    let s = su + sv;
    let r = loc.far as u128;
    let m = g.m() as u128;
    let du = g.degree(loc.u) as u128;
    let dv = g.degree(loc.v) as u128;

    let mut c = GraphletVec::<u128>::zeros();
    c[Triangle] = t;
    c[TwoStar] = s;
    c[ThreeNodeOneEdge] = r;
    c[FourClique] = cliques as u128;
    c[ChordalCycle] = pairs(t).ok_or_else(|| overflow("chordal-cycle"))?;
    c[TailedTriangle] = t.checked_mul(s).ok_or_else(|| overflow("tailed-triangle"))?;
    c[FourCycle] = cycles as u128;
    c[ThreeStar] = pairs(su)
        .zip(pairs(sv))
        .and_then(|(a, b)| a.checked_add(b))
        .ok_or_else(|| overflow("3-star"))?;
    c[FourPath] = su.checked_mul(sv).ok_or_else(|| overflow("4-path"))?;
    c[FourNodeOneTriangle] = s.checked_mul(r).ok_or_else(|| overflow("4-node-1-triangle"))?;
    c[FourNodeTwoStar] = t.checked_mul(r).ok_or_else(|| overflow("4-node-2-star"))?;
    c[FourNodeTwoEdge] = pairs(r).ok_or_else(|| overflow("4-node-2-edge"))?;
    c[FourNodeOneEdge] = (m + 1)
        .checked_sub(du + dv)
        .ok_or_else(|| overflow("4-node-1-edge"))?;
    Ok(EdgeUnrestricted(c))
}

/// How 4-cliques and 4-cycles are located.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountingStrategy {
    /// Full-size vertex code table per worker.
    Marker,
    /// Binary search over sorted neighbor lists, `O(Δ)` space.
    BinarySearch,
    /// Marker tables when one fits in `budget_bytes`, binary search otherwise.
    Auto { budget_bytes: usize },
}

impl Default for CountingStrategy {
    fn default() -> Self {
        CountingStrategy::Auto {
            budget_bytes: 256 << 20,
        }
    }
}

impl CountingStrategy {
    fn use_marker(self, n: usize) -> bool {
        match self {
            CountingStrategy::Marker => true,
            CountingStrategy::BinarySearch => false,
            CountingStrategy::Auto { budget_bytes } => {
                n * (std::mem::size_of::<u32>() + std::mem::size_of::<Mark>()) <= budget_bytes
            }
        }
    }
}

/// Reusable per-worker state for computing [`EdgeUnrestricted`] values.
pub struct EdgeCounter<'g> {
    g: &'g Graph,
    marker: Option<VertexMarker>,
    local: EdgeLocal,
}

impl<'g> EdgeCounter<'g> {
    pub fn new(g: &'g Graph, strategy: CountingStrategy) -> EdgeCounter<'g> {
        let marker = strategy.use_marker(g.n()).then(|| VertexMarker::new(g.n()));
        EdgeCounter {
            g,
            marker,
            local: EdgeLocal::default(),
        }
    }

    /// `(K_e, C_e)` and the decomposition for `e`.
    pub fn cliques_and_cycles(&mut self, e: EdgeId) -> (&EdgeLocal, u64, u64) {
        let g = self.g;
        match self.marker.as_mut() {
            Some(marker) => {
                classify_into(g, e, marker, &mut self.local);
                let k = clique_count_marker(g, marker, &self.local.triangles);
                let c = cycle_count_marker(g, marker, &self.local.star_u);
                (&self.local, k, c)
            }
            None => {
                classify_by_merge(g, e, &mut self.local);
                let k = clique_count_bsearch(g, &self.local.triangles);
                let c = cycle_count_bsearch(g, &self.local.star_u, &self.local.star_v);
                (&self.local, k, c)
            }
        }
    }

    pub fn count(&mut self, e: EdgeId) -> Result<EdgeUnrestricted> {
        let g = self.g;
        let (loc, k, c) = self.cliques_and_cycles(e);
        unrestricted_counts(loc, k, c, g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Graphlet::*;

    fn k(n: u32) -> Graph {
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                edges.push((a, b));
            }
        }
        Graph::from_edges(n as usize, edges).unwrap()
    }

    fn c4() -> Graph {
        Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    fn p4() -> Graph {
        Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap()
    }

    fn triangle_isolated() -> Graph {
        Graph::from_edges(4, [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn local(g: &Graph, a: u32, b: u32) -> (EdgeLocal, VertexMarker) {
        let mut m = VertexMarker::new(g.n());
        let loc = classify_neighborhood(g, g.edge_id(a, b).unwrap(), &mut m);
        (loc, m)
    }

    #[test]
    fn classify_k4() {
        let (loc, m) = local(&k(4), 0, 1);
        assert_eq!(loc.triangles, vec![2, 3]);
        assert!(loc.star_u.is_empty() && loc.star_v.is_empty());
        assert_eq!(loc.far, 0);
        assert_eq!(m.get(2), Mark::Triangle);
        assert_eq!(m.get(0), Mark::Unmarked);
    }

    #[test]
    fn classify_path_middle() {
        let (loc, m) = local(&p4(), 1, 2);
        assert!(loc.triangles.is_empty());
        let mut stars = [loc.star_u.clone(), loc.star_v.clone()];
        stars.sort();
        assert_eq!(stars, [vec![0], vec![3]]);
        assert_eq!(loc.far, 0);
        assert_eq!(m.get(loc.star_u[0]), Mark::StarU);
        assert_eq!(m.get(loc.star_v[0]), Mark::StarV);
    }

    #[test]
    fn classify_triangle_plus_isolated() {
        let (loc, _) = local(&triangle_isolated(), 0, 1);
        assert_eq!(loc.triangles, vec![2]);
        assert_eq!(loc.stars(), 0);
        assert_eq!(loc.far, 1);
    }

    #[test]
    fn orientation_prefers_lower_degree() {
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let (loc, _) = local(&star, 0, 1);
        assert_eq!((loc.u, loc.v), (1, 0));
        assert_eq!(loc.star_v, vec![2, 3]);
    }

    #[test]
    fn marker_reset_is_constant_time() {
        let mut m = VertexMarker::new(3);
        m.set(1, Mark::Triangle);
        m.reset();
        assert_eq!(m.get(1), Mark::Unmarked);
    }

    fn kc(g: &Graph, a: u32, b: u32) -> (u64, u64, u64, u64) {
        let (loc, mut m) = local(g, a, b);
        let kb = clique_count_bsearch(g, &loc.triangles);
        let cb = cycle_count_bsearch(g, &loc.star_u, &loc.star_v);
        let cm = cycle_count_marker(g, &m, &loc.star_u);
        let km = clique_count_marker(g, &mut m, &loc.triangles);
        (km, kb, cm, cb)
    }

    #[test]
    fn clique_examples() {
        assert_eq!(kc(&k(4), 0, 1).0, 1);
        assert_eq!(kc(&c4(), 0, 1).0, 0);
        assert_eq!(kc(&k(5), 0, 1).0, 3);
        for (g, a, b) in [(k(4), 0, 1), (c4(), 0, 1), (k(5), 0, 1)] {
            let (km, kb, _, _) = kc(&g, a, b);
            assert_eq!(km, kb);
        }
    }

    #[test]
    fn cycle_examples() {
        assert_eq!(kc(&c4(), 0, 1).2, 1);
        assert_eq!(kc(&k(4), 0, 1).2, 0);
        assert_eq!(kc(&p4(), 1, 2).2, 0);
        for (g, a, b) in [(c4(), 0, 1), (k(4), 0, 1), (p4(), 1, 2)] {
            let (_, _, cm, cb) = kc(&g, a, b);
            assert_eq!(cm, cb);
        }
    }

    fn counts(g: &Graph, a: u32, b: u32) -> EdgeUnrestricted {
        EdgeCounter::new(g, CountingStrategy::Marker)
            .count(g.edge_id(a, b).unwrap())
            .unwrap()
    }

    #[test]
    fn unrestricted_triangle_plus_isolated() {
        let c = counts(&triangle_isolated(), 0, 1);
        let mut expect = GraphletVec::<u128>::zeros();
        expect[Triangle] = 1;
        expect[ThreeNodeOneEdge] = 1;
        expect[FourNodeTwoStar] = 1;
        assert_eq!(c.0, expect);
    }

    #[test]
    fn unrestricted_k4() {
        let c = counts(&k(4), 0, 1);
        let mut expect = GraphletVec::<u128>::zeros();
        expect[Triangle] = 2;
        expect[FourClique] = 1;
        expect[ChordalCycle] = 1;
        expect[FourNodeOneEdge] = 1;
        assert_eq!(c.0, expect);
    }

    #[test]
    fn unrestricted_c4() {
        let c = counts(&c4(), 0, 1);
        let mut expect = GraphletVec::<u128>::zeros();
        expect[TwoStar] = 2;
        expect[FourCycle] = 1;
        expect[FourPath] = 1;
        expect[FourNodeOneEdge] = 1;
        assert_eq!(c.0, expect);
    }

    #[test]
    fn merge_classification_matches_marker() {
        let g = Graph::from_edges(
            7,
            [(0, 1), (0, 2), (1, 2), (1, 3), (2, 4), (3, 4), (0, 5), (5, 6), (1, 6)],
        )
        .unwrap();
        let mut m = VertexMarker::new(g.n());
        for e in 0..g.m() {
            let a = classify_neighborhood(&g, e, &mut m);
            let mut b = EdgeLocal::default();
            classify_by_merge(&g, e, &mut b);
            assert_eq!(a, b);
        }
    }
}
