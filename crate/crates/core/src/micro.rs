//! Per-edge (micro) graphlet counts with optional neighbor subsampling.
//!
//! For an edge `e` the counts are: every vertex set of size 3 or 4 that
//! contains both endpoints, classified by induced pattern. Only the edges
//! between the classes `T_e`, `S_u`, `S_v` and the distant vertices are
//! needed; they are found by scanning the neighbors of each vertex in
//! `T_e ∪ S_u ∪ S_v`. With `p_e < 1` each scan looks at `ceil(d_w p_e)`
//! neighbors drawn without replacement and credits every hit `d_w / s_w`.

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::graphlet::{Graphlet, GraphletVec, NUM_GRAPHLETS};
use crate::local::{classify_into, EdgeLocal, Mark, VertexMarker};

use Graphlet::*;

/// Options for [`micro_counts_with`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MicroConfig {
    /// Fraction of each neighbor list scanned, in `(0, 1]`.
    pub p_e: f64,
    pub seed: u64,
    /// Upper bound on neighbors scanned per vertex.
    pub max_scan: Option<usize>,
}

impl MicroConfig {
    pub fn exact() -> MicroConfig {
        MicroConfig {
            p_e: 1.0,
            seed: 0,
            max_scan: None,
        }
    }

    pub fn sampled(p_e: f64, seed: u64) -> MicroConfig {
        MicroConfig {
            p_e,
            seed,
            max_scan: None,
        }
    }
}

/// Edge counts between neighborhood classes of one edge.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct ClassEdges {
    /// Edges inside `T_e`.
    pub tt: f64,
    pub ts: f64,
    pub tf: f64,
    pub susu: f64,
    pub svsv: f64,
    pub susv: f64,
    /// Edges from `S_u ∪ S_v` to distant vertices.
    pub sf: f64,
}

impl ClassEdges {
    /// Edges with both ends in `N(u) ∪ N(v) \ {u, v}`.
    pub fn omega(&self) -> f64 {
        self.tt + self.ts + self.susu + self.svsv + self.susv
    }
}

/// Per-edge counts, exact or estimated.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MicroEstimate {
    pub edge: EdgeId,
    /// Endpoints, lower degree first.
    pub endpoints: (VertexId, VertexId),
    pub x: GraphletVec<f64>,
    pub p_e: f64,
    pub omega: f64,
    pub class_edges: ClassEdges,
    /// Largest neighbor count scanned.
    pub d_ub: usize,
    /// Patterns whose raw estimate was negative and was clamped to zero.
    pub clamped: GraphletVec<bool>,
    pub seed: u64,
}

impl MicroEstimate {
    pub fn get(&self, g: Graphlet) -> f64 {
        self.x[g]
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Stream seed for edge `e` under run seed `seed`.
pub fn edge_seed(seed: u64, e: EdgeId) -> u64 {
    splitmix(seed ^ splitmix(e as u64))
}

/// Reusable state for per-edge queries on one graph.
pub struct MicroCounter<'g> {
    g: &'g Graph,
    marker: VertexMarker,
    local: EdgeLocal,
    picks: Vec<VertexId>,
}

impl<'g> MicroCounter<'g> {
    pub fn new(g: &'g Graph) -> MicroCounter<'g> {
        MicroCounter {
            g,
            marker: VertexMarker::new(g.n()),
            local: EdgeLocal::default(),
            picks: Vec::new(),
        }
    }

    pub fn count(&mut self, e: EdgeId, cfg: &MicroConfig) -> Result<MicroEstimate> {
        let g = self.g;
        if e >= g.m() {
            return Err(Error::InvalidArgument(format!("edge id {e} out of range")));
        }
        if !(cfg.p_e > 0.0 && cfg.p_e <= 1.0) {
            return Err(Error::InvalidArgument(format!("p_e {} outside (0, 1]", cfg.p_e)));
        }
        if cfg.max_scan == Some(0) {
            return Err(Error::InvalidArgument("max_scan must be positive".into()));
        }
        self.marker.reset();
        classify_into(g, e, &mut self.marker, &mut self.local);
        let (u, v) = (self.local.u, self.local.v);
        let mut rng = ChaCha8Rng::seed_from_u64(edge_seed(cfg.seed, e));
        let mut ce = ClassEdges::default();
        let mut d_ub = 0;

        let mut susu2 = 0.0;
        let mut svsv2 = 0.0;
        let local = std::mem::take(&mut self.local);
        for (class, members) in [
            (Mark::Triangle, &local.triangles),
            (Mark::StarU, &local.star_u),
            (Mark::StarV, &local.star_v),
        ] {
            for &w in members {
                let credit = self.scan(w, cfg, &mut rng, &mut d_ub);
                for &x in &self.picks {
                    if x == u || x == v {
                        continue;
                    }
                    let mark = self.marker.get(x);
                    match (class, mark) {
                        (Mark::Triangle, Mark::Triangle) => ce.tt += credit,
                        (Mark::Triangle, Mark::StarU | Mark::StarV) => ce.ts += credit,
                        (Mark::Triangle, Mark::Unmarked) => ce.tf += credit,
                        (Mark::StarU, Mark::StarU) => susu2 += credit,
                        (Mark::StarU, Mark::StarV) => ce.susv += credit,
                        (Mark::StarV, Mark::StarV) => svsv2 += credit,
                        (Mark::StarU | Mark::StarV, Mark::Unmarked) => ce.sf += credit,
                        _ => {}
                    }
                }
                if class == Mark::Triangle {
                    // Each edge inside T is then found from its first endpoint only.
                    self.marker.set(w, Mark::Done);
                }
            }
        }
        ce.susu = susu2 / 2.0;
        ce.svsv = svsv2 / 2.0;
        let (x, clamped) = closed_forms(g, &local, &ce);
        let est = MicroEstimate {
            edge: e,
            endpoints: (u, v),
            x,
            p_e: cfg.p_e,
            omega: ce.omega(),
            class_edges: ce,
            d_ub,
            clamped,
            seed: cfg.seed,
        };
        self.local = local;
        Ok(est)
    }

    /// Fills `picks` with the scanned neighbors of `w`; returns the credit
    /// per hit.
    fn scan(&mut self, w: VertexId, cfg: &MicroConfig, rng: &mut ChaCha8Rng, d_ub: &mut usize) -> f64 {
        let nbrs = self.g.neighbors(w);
        let d = nbrs.len();
        let mut s = ((d as f64) * cfg.p_e).ceil() as usize;
        if let Some(cap) = cfg.max_scan {
            s = s.min(cap);
        }
        let s = s.clamp(1, d.max(1)).min(d);
        *d_ub = (*d_ub).max(s);
        self.picks.clear();
        if s == d {
            self.picks.extend_from_slice(nbrs);
            1.0
        } else {
            self.picks
                .extend(index::sample(rng, d, s).into_iter().map(|i| nbrs[i]));
            d as f64 / s as f64
        }
    }
}

/// Per-edge pattern counts from the class sizes and class-pair edge counts.
fn closed_forms(g: &Graph, loc: &EdgeLocal, ce: &ClassEdges) -> (GraphletVec<f64>, GraphletVec<bool>) {
    let t = loc.triangles.len() as f64;
    let su = loc.star_u.len() as f64;
    let sv = loc.star_v.len() as f64;
    let s = su + sv;
    let r = loc.far as f64;
    let m = g.m() as f64;
    let du = g.degree(loc.u) as f64;
    let dv = g.degree(loc.v) as f64;
    let pairs = |x: f64| x * (x - 1.0) / 2.0;
    let ff = m - (du + dv - 1.0) - ce.omega() - ce.tf - ce.sf;

    let mut x = GraphletVec::<f64>::zeros();
    x[Edge] = 1.0;
    x[Triangle] = t;
    x[TwoStar] = s;
    x[ThreeNodeOneEdge] = r;
    x[FourClique] = ce.tt;
    x[ChordalCycle] = pairs(t) - ce.tt + ce.ts;
    x[TailedTriangle] = t * s - ce.ts + ce.tf + ce.susu + ce.svsv;
    x[FourCycle] = ce.susv;
    x[ThreeStar] = pairs(su) - ce.susu + pairs(sv) - ce.svsv;
    x[FourPath] = su * sv - ce.susv + ce.sf;
    x[FourNodeOneTriangle] = t * r - ce.tf;
    x[FourNodeTwoStar] = s * r - ce.sf;
    x[FourNodeTwoEdge] = ff;
    x[FourNodeOneEdge] = pairs(r) - ff;

    let mut clamped = GraphletVec::<bool>::zeros();
    for i in 0..NUM_GRAPHLETS {
        if x.0[i] < 0.0 {
            x.0[i] = 0.0;
            clamped.0[i] = true;
        }
        x.0[i] += 0.0;
    }
    (x, clamped)
}

/// Per-edge counts with neighbor subsampling at fraction `p_e`.
pub fn micro_counts(g: &Graph, e: EdgeId, p_e: f64, seed: u64) -> Result<MicroEstimate> {
    MicroCounter::new(g).count(e, &MicroConfig::sampled(p_e, seed))
}

pub fn micro_counts_with(g: &Graph, e: EdgeId, cfg: &MicroConfig) -> Result<MicroEstimate> {
    MicroCounter::new(g).count(e, cfg)
}

/// Exact per-edge counts.
pub fn micro_exact(g: &Graph, e: EdgeId) -> Result<MicroEstimate> {
    MicroCounter::new(g).count(e, &MicroConfig::exact())
}

/// Summary statistics of one pattern's per-edge counts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UnivariateStats {
    pub count: usize,
    pub mean: f64,
    pub median: f64,
    pub min: f64,
    pub max: f64,
    /// Population variance.
    pub variance: f64,
    pub q1: f64,
    pub q3: f64,
    pub iqr: f64,
}

/// Quantile by linear interpolation between closest ranks of sorted data.
pub fn quantile(sorted: &[f64], p: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Statistics of raw values.
pub fn summarize(values: &[f64]) -> Result<UnivariateStats> {
    if values.is_empty() {
        return Err(Error::EmptySample);
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    let variance = v.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    let q1 = quantile(&v, 0.25);
    let q3 = quantile(&v, 0.75);
    Ok(UnivariateStats {
        count: v.len(),
        mean,
        median: quantile(&v, 0.5),
        min: v[0],
        max: v[v.len() - 1],
        variance,
        q1,
        q3,
        iqr: q3 - q1,
    })
}

/// Statistics of `pattern`'s per-edge counts over `edges`.
pub fn univariate_stats(
    g: &Graph,
    pattern: Graphlet,
    edges: &[EdgeId],
    cfg: &MicroConfig,
) -> Result<UnivariateStats> {
    let mut counter = MicroCounter::new(g);
    let values = edges
        .iter()
        .map(|&e| counter.count(e, cfg).map(|m| m.x[pattern]))
        .collect::<Result<Vec<_>>>()?;
    summarize(&values)
}
