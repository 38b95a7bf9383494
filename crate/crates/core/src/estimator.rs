//! Aggregation of per-edge unrestricted counts and unbiased global estimates.
//!
//! Every estimate is linear in the per-edge unrestricted counts `c(e)`: the
//! coefficient chain turns the summed counts into pattern counts, and the
//! same chain applied to a single edge gives that edge's contribution
//! `z(e)`. Variances are computed from second moments of `c(e)`, so any
//! [`WeightVector`] can be evaluated against one accumulator.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph};
use crate::graphlet::{checked_choose, Graphlet, GraphletVec, NUM_GRAPHLETS};
use crate::local::{CountingStrategy, EdgeCounter};
use crate::sampling::{draw_sample, Inclusion, Sample, SampleDesign};

use Graphlet::*;

/// Slots of the unrestricted vector that can be nonzero.
const ACTIVE: [Graphlet; 13] = [
    Triangle,
    TwoStar,
    ThreeNodeOneEdge,
    FourClique,
    ChordalCycle,
    TailedTriangle,
    FourCycle,
    ThreeStar,
    FourPath,
    FourNodeOneTriangle,
    FourNodeTwoStar,
    FourNodeTwoEdge,
    FourNodeOneEdge,
];
const A: usize = ACTIVE.len();

/// Exact rational with a positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ratio {
    pub num: i128,
    pub den: i128,
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Ratio {
    pub const ZERO: Ratio = Ratio { num: 0, den: 1 };
    pub const ONE: Ratio = Ratio { num: 1, den: 1 };

    pub fn new(num: i128, den: i128) -> Ratio {
        assert!(den != 0, "zero denominator");
        let s = if den < 0 { -1 } else { 1 };
        let g = gcd(num, den).max(1);
        Ratio {
            num: s * num / g,
            den: s * den / g,
        }
    }

    pub fn int(n: i128) -> Ratio {
        Ratio { num: n, den: 1 }
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    fn add(self, o: Ratio) -> Ratio {
        Ratio::new(self.num * o.den + o.num * self.den, self.den * o.den)
    }

    fn mul(self, o: Ratio) -> Ratio {
        Ratio::new(self.num * o.num, self.den * o.den)
    }
}

/// Per-pattern multiplicity correction applied by the estimator chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeightVector(pub [Ratio; NUM_GRAPHLETS]);

impl WeightVector {
    fn from_pairs(p: [(i128, i128); NUM_GRAPHLETS]) -> WeightVector {
        WeightVector(p.map(|(a, b)| Ratio::new(a, b)))
    }

    /// Weights under which full sampling reproduces exhaustive enumeration.
    pub fn validated() -> WeightVector {
        WeightVector::from_pairs([
            (1, 1),
            (1, 1),
            (1, 3),
            (1, 2),
            (1, 1),
            (1, 1),
            (1, 6),
            (1, 1),
            (1, 2),
            (1, 4),
            (1, 3),
            (1, 1),
            (1, 3),
            (1, 2),
            (1, 2),
            (1, 1),
            (1, 1),
        ])
    }

    /// The weights as commonly published, which misplace entries 13 to 16.
    /// Kept to demonstrate the failure; full sampling does not reproduce
    /// exact counts with them.
    pub fn as_published() -> WeightVector {
        WeightVector::from_pairs([
            (1, 1),
            (1, 1),
            (1, 3),
            (1, 2),
            (1, 1),
            (1, 1),
            (1, 6),
            (1, 1),
            (1, 2),
            (1, 4),
            (1, 3),
            (1, 1),
            (1, 2),
            (1, 1),
            (1, 2),
            (1, 3),
            (1, 1),
        ])
    }

    pub fn get(&self, g: Graphlet) -> Ratio {
        self.0[g.index()]
    }
}

impl Default for WeightVector {
    fn default() -> Self {
        WeightVector::validated()
    }
}

/// Linear form `z_i = Σ_j coef[i][j] c_j` over the active slots, plus a
/// constant term for the complement patterns.
struct Chain {
    coef: [[Ratio; A]; NUM_GRAPHLETS],
    /// Multiplier on `C(n,3)` / `C(n,4)` for patterns 6 and 17.
    complement: [Ratio; NUM_GRAPHLETS],
}

fn slot(g: Graphlet) -> usize {
    ACTIVE.iter().position(|&a| a == g).expect("active slot")
}

impl Chain {
    fn new(w: &WeightVector) -> Chain {
        type Form = [Ratio; A];
        let unit = |g: Graphlet| {
            let mut f = [Ratio::ZERO; A];
            f[slot(g)] = Ratio::ONE;
            f
        };
        let lin = |terms: &[(i128, &Form)]| {
            let mut f = [Ratio::ZERO; A];
            for (k, t) in terms {
                for j in 0..A {
                    f[j] = f[j].add(t[j].mul(Ratio::int(*k)));
                }
            }
            f
        };
        let scale = |r: Ratio, f: Form| f.map(|x| x.mul(r));

        let mut coef = [[Ratio::ZERO; A]; NUM_GRAPHLETS];
        let mut complement = [Ratio::ZERO; NUM_GRAPHLETS];
        let x3 = scale(w.get(Triangle), unit(Triangle));
        let x4 = scale(w.get(TwoStar), unit(TwoStar));
        let x5 = scale(w.get(ThreeNodeOneEdge), unit(ThreeNodeOneEdge));
        let x6 = scale(w.get(ThreeNodeIndependent), lin(&[(-1, &x3), (-1, &x4), (-1, &x5)]));
        complement[ThreeNodeIndependent.index()] = w.get(ThreeNodeIndependent);

        let c = unit;
        let x7 = scale(w.get(FourClique), c(FourClique));
        let x8 = scale(w.get(ChordalCycle), lin(&[(1, &c(ChordalCycle)), (-1, &c(FourClique))]));
        let x9 = scale(w.get(TailedTriangle), lin(&[(1, &c(TailedTriangle)), (-4, &x8)]));
        let x10 = scale(w.get(FourCycle), c(FourCycle));
        let x11 = scale(w.get(ThreeStar), lin(&[(1, &c(ThreeStar)), (-1, &x9)]));
        let x12 = scale(w.get(FourPath), lin(&[(1, &c(FourPath)), (-1, &c(FourCycle))]));
        // Slot 14 holds |T| R and slot 13 holds (|S_u|+|S_v|) R.
        let x13 = scale(
            w.get(FourNodeOneTriangle),
            lin(&[(1, &c(FourNodeTwoStar)), (-1, &x9)]),
        );
        let x14 = scale(
            w.get(FourNodeTwoStar),
            lin(&[(1, &c(FourNodeOneTriangle)), (-2, &x12)]),
        );
        let x15 = scale(
            w.get(FourNodeTwoEdge),
            lin(&[
                (1, &c(FourNodeOneEdge)),
                (-6, &x7),
                (-4, &x8),
                (-2, &x9),
                (-4, &x10),
                (-2, &x12),
            ]),
        );
        let x16 = scale(
            w.get(FourNodeOneEdge),
            lin(&[(1, &c(FourNodeTwoEdge)), (-2, &x15)]),
        );
        let connected = [&x7, &x8, &x9, &x10, &x11, &x12, &x13, &x14, &x15, &x16];
        let neg: Vec<(i128, &Form)> = connected.iter().map(|f| (-1, *f)).collect();
        let x17 = scale(w.get(FourNodeIndependent), lin(&neg));
        complement[FourNodeIndependent.index()] = w.get(FourNodeIndependent);

        for (g, f) in [
            (Triangle, x3),
            (TwoStar, x4),
            (ThreeNodeOneEdge, x5),
            (ThreeNodeIndependent, x6),
            (FourClique, x7),
            (ChordalCycle, x8),
            (TailedTriangle, x9),
            (FourCycle, x10),
            (ThreeStar, x11),
            (FourPath, x12),
            (FourNodeOneTriangle, x13),
            (FourNodeTwoStar, x14),
            (FourNodeTwoEdge, x15),
            (FourNodeOneEdge, x16),
            (FourNodeIndependent, x17),
        ] {
            coef[g.index()] = f;
        }
        Chain { coef, complement }
    }

    fn f64_row(&self, i: usize) -> [f64; A] {
        self.coef[i].map(Ratio::to_f64)
    }

    /// `Σ_j coef[i][j] s_j` as an exact rational over a common denominator.
    fn exact_row(&self, i: usize, s: &[u128; A]) -> Option<Ratio> {
        let den = self.coef[i]
            .iter()
            .fold(1i128, |l, r| l / gcd(l, r.den) * r.den);
        let mut num: i128 = 0;
        for j in 0..A {
            let r = self.coef[i][j];
            if r.num == 0 {
                continue;
            }
            let k = r.num.checked_mul(den / r.den)?;
            let v = i128::try_from(s[j]).ok()?;
            num = num.checked_add(k.checked_mul(v)?)?;
        }
        Some(Ratio { num, den })
    }

    /// `Σ_jk a_j a_k M_jk` for row `i`. Results lost in cancellation
    /// error are reported as zero.
    fn quad(&self, i: usize, m: &[[f64; A]; A]) -> f64 {
        let a = self.f64_row(i);
        let (mut s, mut scale) = (0.0, 0.0);
        for j in 0..A {
            if a[j] == 0.0 {
                continue;
            }
            for k in 0..A {
                let t = a[j] * a[k] * m[j][k];
                s += t;
                scale += t.abs();
            }
        }
        if s.abs() <= 1e-12 * scale {
            0.0
        } else {
            s
        }
    }

    fn dot(&self, i: usize, v: &[f64; A]) -> f64 {
        let a = self.f64_row(i);
        (0..A).map(|j| a[j] * v[j]).sum()
    }
}

/// Floating-point sums for designs with per-edge expansion factors `a_e`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedSums {
    /// `Σ a c_j`.
    pub first: [f64; A],
    /// `Σ a² c_j c_k`.
    pub second: [[f64; A]; A],
    /// `Σ a c_j c_k`.
    pub second_linear: [[f64; A]; A],
}

impl WeightedSums {
    fn zero() -> WeightedSums {
        WeightedSums {
            first: [0.0; A],
            second: [[0.0; A]; A],
            second_linear: [[0.0; A]; A],
        }
    }

    fn add_edge(&mut self, a: f64, c: &[u128; A]) {
        let c = c.map(|x| x as f64);
        for j in 0..A {
            self.first[j] += a * c[j];
            for k in 0..A {
                let p = c[j] * c[k];
                self.second[j][k] += a * a * p;
                self.second_linear[j][k] += a * p;
            }
        }
    }

    fn merge(&mut self, o: &WeightedSums) {
        for j in 0..A {
            self.first[j] += o.first[j];
            for k in 0..A {
                self.second[j][k] += o.second[j][k];
                self.second_linear[j][k] += o.second_linear[j][k];
            }
        }
    }
}

/// Summed unrestricted counts over a set of sampled edges.
#[derive(Debug, Clone, PartialEq)]
pub struct UnrestrictedAccumulator {
    /// `Σ c_i(e)`, exact.
    pub counts: GraphletVec<u128>,
    /// `Σ c_j(e) c_k(e)` over active slots; empty when not needed.
    pub moments: Option<Box<[[u128; A]; A]>>,
    pub weighted: Option<Box<WeightedSums>>,
    /// Number of sampled edges, counting repeats.
    pub k_used: usize,
    pub inclusion: Inclusion,
}

impl UnrestrictedAccumulator {
    /// Adds the sums of `other`, which must come from disjoint draws.
    pub fn merge(&mut self, other: &UnrestrictedAccumulator) -> Result<()> {
        for i in 0..NUM_GRAPHLETS {
            self.counts.0[i] = self.counts.0[i]
                .checked_add(other.counts.0[i])
                .ok_or(Error::Overflow("accumulator"))?;
        }
        match (&mut self.moments, &other.moments) {
            (Some(a), Some(b)) => add_moments(a, b)?,
            (None, Some(b)) => self.moments = Some(b.clone()),
            _ => {}
        }
        match (&mut self.weighted, &other.weighted) {
            (Some(a), Some(b)) => a.merge(b),
            (None, Some(b)) => self.weighted = Some(b.clone()),
            _ => {}
        }
        self.k_used += other.k_used;
        Ok(())
    }
}

fn add_moments(a: &mut [[u128; A]; A], b: &[[u128; A]; A]) -> Result<()> {
    for j in 0..A {
        for k in j..A {
            a[j][k] = a[j][k]
                .checked_add(b[j][k])
                .ok_or(Error::Overflow("second moments"))?;
        }
    }
    Ok(())
}

fn symmetric_f64(m: &[[u128; A]; A]) -> [[f64; A]; A] {
    let mut out = [[0.0; A]; A];
    for j in 0..A {
        for k in j..A {
            out[j][k] = m[j][k] as f64;
            out[k][j] = out[j][k];
        }
    }
    out
}

/// Options for the parallel engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineConfig {
    pub workers: usize,
    pub strategy: CountingStrategy,
    /// Edges per dispatched batch; `None` picks `max(64, K / (16 workers))`.
    pub batch: Option<usize>,
}

impl EngineConfig {
    pub fn new(workers: usize) -> EngineConfig {
        EngineConfig {
            workers: workers.max(1),
            strategy: CountingStrategy::default(),
            batch: None,
        }
    }
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig::new(1)
    }
}

struct WorkerTotals {
    counts: [u128; NUM_GRAPHLETS],
    moments: Option<Box<[[u128; A]; A]>>,
}

fn process_edge(
    counter: &mut EdgeCounter<'_>,
    e: EdgeId,
    totals: &mut WorkerTotals,
) -> Result<[u128; A]> {
    let c = counter.count(e)?;
    for i in 0..NUM_GRAPHLETS {
        totals.counts[i] = totals.counts[i]
            .checked_add(c.0 .0[i])
            .ok_or(Error::Overflow("accumulator"))?;
    }
    let active = ACTIVE.map(|g| c.get(g));
    if let Some(m) = totals.moments.as_mut() {
        for j in 0..A {
            if active[j] == 0 {
                continue;
            }
            for k in j..A {
                let p = active[j]
                    .checked_mul(active[k])
                    .ok_or(Error::Overflow("second moments"))?;
                m[j][k] = m[j][k]
                    .checked_add(p)
                    .ok_or(Error::Overflow("second moments"))?;
            }
        }
    }
    Ok(active)
}

/// Sums unrestricted counts over `edges` with `workers` threads.
///
/// `edges` is treated as a uniform sample without replacement: all `m`
/// edges means full enumeration. Use [`accumulate_sample`] for other
/// designs.
pub fn accumulate(g: &Graph, edges: &[EdgeId], workers: usize) -> Result<UnrestrictedAccumulator> {
    let inclusion = if edges.len() == g.m() {
        Inclusion::Full
    } else {
        Inclusion::SimpleRandom {
            k: edges.len(),
            m: g.m(),
        }
    };
    accumulate_sample(
        g,
        &Sample {
            edges: edges.to_vec(),
            inclusion,
        },
        EngineConfig::new(workers),
    )
}

/// Per-edge expansion factors `a_e` for weighted designs.
fn expansion(sample: &Sample) -> Result<Option<Vec<f64>>> {
    let check = |p: f64| {
        if p > 0.0 {
            Ok(())
        } else {
            Err(Error::ZeroProbability("sampled edge"))
        }
    };
    match &sample.inclusion {
        Inclusion::HorvitzThompson { inclusion, .. } => {
            if inclusion.len() != sample.edges.len() {
                return Err(Error::LengthMismatch(inclusion.len(), sample.edges.len()));
            }
            inclusion.iter().try_for_each(|&p| check(p))?;
            Ok(Some(inclusion.iter().map(|p| 1.0 / p).collect()))
        }
        Inclusion::HansenHurwitz { selection } => {
            if selection.len() != sample.edges.len() {
                return Err(Error::LengthMismatch(selection.len(), sample.edges.len()));
            }
            selection.iter().try_for_each(|&p| check(p))?;
            let k = selection.len() as f64;
            Ok(Some(selection.iter().map(|p| 1.0 / (k * p)).collect()))
        }
        _ => Ok(None),
    }
}

/// Sums unrestricted counts over a drawn sample.
///
/// Edges are processed in descending hardness order in dynamically
/// dispatched batches. Integer sums are exact, and floating-point sums for
/// weighted designs are reduced over fixed chunks in a fixed order, so the
/// result is identical for any worker count.
pub fn accumulate_sample(
    g: &Graph,
    sample: &Sample,
    cfg: EngineConfig,
) -> Result<UnrestrictedAccumulator> {
    let edges = &sample.edges;
    if let Some(&bad) = edges.iter().find(|&&e| e >= g.m()) {
        return Err(Error::InvalidArgument(format!("edge id {bad} out of range")));
    }
    let factors = expansion(sample)?;
    let need_moments = factors.is_none() && sample.inclusion != Inclusion::Full;

    let k = edges.len();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(g.edge_hardness(edges[i])), edges[i], i));

    let workers = cfg.workers.max(1);
    let batch = match (cfg.batch, &factors) {
        (Some(b), _) => b.max(1),
        (None, Some(_)) => (k / 64).max(64),
        (None, None) => (k / (16 * workers)).max(64),
    };
    let batches = k.div_ceil(batch);
    let cursor = AtomicUsize::new(0);
    let partials: Mutex<Vec<(usize, WeightedSums)>> = Mutex::new(Vec::new());

    let work = || -> Result<WorkerTotals> {
        let mut counter = EdgeCounter::new(g, cfg.strategy);
        let mut totals = WorkerTotals {
            counts: [0; NUM_GRAPHLETS],
            moments: need_moments.then(|| Box::new([[0u128; A]; A])),
        };
        loop {
            let b = cursor.fetch_add(1, Ordering::Relaxed);
            if b >= batches {
                break;
            }
            let range = b * batch..((b + 1) * batch).min(k);
            let mut part = factors.as_ref().map(|_| WeightedSums::zero());
            for &i in &order[range] {
                let active = process_edge(&mut counter, edges[i], &mut totals)?;
                if let (Some(p), Some(a)) = (part.as_mut(), factors.as_ref()) {
                    p.add_edge(a[i], &active);
                }
            }
            if let Some(p) = part {
                partials.lock().expect("partials lock").push((b, p));
            }
        }
        Ok(totals)
    };

    let results: Vec<Result<WorkerTotals>> = if workers == 1 {
        vec![work()]
    } else {
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..workers).map(|_| s.spawn(&work)).collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("worker panicked"))
                .collect()
        })
    };

    let mut counts = GraphletVec::<u128>::zeros();
    let mut moments = need_moments.then(|| Box::new([[0u128; A]; A]));
    for r in results {
        let t = r?;
        for i in 0..NUM_GRAPHLETS {
            counts.0[i] = counts.0[i]
                .checked_add(t.counts[i])
                .ok_or(Error::Overflow("accumulator"))?;
        }
        if let (Some(m), Some(tm)) = (moments.as_mut(), t.moments.as_ref()) {
            add_moments(m, tm)?;
        }
    }
    let weighted = factors.map(|_| {
        let mut parts = partials.into_inner().expect("partials lock");
        parts.sort_by_key(|(b, _)| *b);
        let mut total = WeightedSums::zero();
        for (_, p) in &parts {
            total.merge(p);
        }
        Box::new(total)
    });

    Ok(UnrestrictedAccumulator {
        counts,
        moments,
        weighted,
        k_used: k,
        inclusion: sample.inclusion.clone(),
    })
}

/// Estimated counts with variances and confidence bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphletEstimate {
    pub x: GraphletVec<f64>,
    pub var: GraphletVec<f64>,
    pub lb: GraphletVec<f64>,
    pub ub: GraphletVec<f64>,
    pub alpha: f64,
    /// Patterns whose raw estimate was negative. Patterns 3 to 16 are then
    /// clamped to zero; the complements 6 and 17 are left as computed so the
    /// size identities still hold.
    pub clamped: GraphletVec<bool>,
    /// Exact integer counts, present when every edge was enumerated.
    pub exact: Option<GraphletVec<u128>>,
    pub k_used: usize,
}

impl GraphletEstimate {
    /// Recomputes the bounds at significance level `alpha`.
    pub fn with_alpha(mut self, alpha: f64) -> Result<GraphletEstimate> {
        let (lb, ub) = confidence_bounds(&self.x, &self.var, alpha)?;
        self.lb = lb;
        self.ub = ub;
        self.alpha = alpha;
        Ok(self)
    }

    pub fn get(&self, g: Graphlet) -> f64 {
        self.x[g]
    }
}

/// Default significance level of reported bounds.
pub const DEFAULT_ALPHA: f64 = 0.05;

/// `z_{α/2}` of the standard normal.
pub fn normal_critical(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidArgument(format!("alpha {alpha} outside (0, 1)")));
    }
    let n = Normal::new(0.0, 1.0).expect("standard normal");
    Ok(n.inverse_cdf(1.0 - alpha / 2.0))
}

/// Normal-approximation bounds `X ∓ z_{α/2} √V`, with the lower bound
/// clamped at zero. A zero variance collapses the interval to `X`.
pub fn confidence_bounds(
    x: &GraphletVec<f64>,
    var: &GraphletVec<f64>,
    alpha: f64,
) -> Result<(GraphletVec<f64>, GraphletVec<f64>)> {
    let z = normal_critical(alpha)?;
    let mut lb = GraphletVec::<f64>::zeros();
    let mut ub = GraphletVec::<f64>::zeros();
    for i in 0..NUM_GRAPHLETS {
        let (xi, vi) = (x.0[i], var.0[i]);
        if vi == 0.0 {
            lb.0[i] = xi;
            ub.0[i] = xi;
            continue;
        }
        let half = z * vi.sqrt();
        lb.0[i] = (xi - half).max(0.0).min(xi);
        ub.0[i] = (xi + half).max(xi);
    }
    Ok((lb, ub))
}

/// `a - b` for nonnegative `a` and `b`, floored at zero, with differences
/// below rounding error treated as zero.
fn difference(a: f64, b: f64) -> f64 {
    let d = a - b;
    if d <= 1e-12 * (a.abs() + b.abs()) {
        0.0
    } else {
        d
    }
}

fn binomials(g: &Graph) -> Result<(u128, u128, u128)> {
    let n = g.n() as u128;
    let c2 = checked_choose(n, 2).ok_or(Error::Overflow("C(n,2)"))?;
    let c3 = checked_choose(n, 3).ok_or(Error::Overflow("C(n,3)"))?;
    let c4 = checked_choose(n, 4).ok_or(Error::Overflow("C(n,4)"))?;
    Ok((c2, c3, c4))
}

/// Turns summed unrestricted counts into global pattern estimates.
pub fn estimate_counts(
    acc: &UnrestrictedAccumulator,
    g: &Graph,
    w: &WeightVector,
) -> Result<GraphletEstimate> {
    let chain = Chain::new(w);
    let m = g.m() as f64;
    let (c2, c3, c4) = binomials(g)?;
    let active_u: [u128; A] = ACTIVE.map(|a| acc.counts[a]);
    let active_f = active_u.map(|x| x as f64);

    let mut lin = [0.0f64; NUM_GRAPHLETS];
    let mut var = [0.0f64; NUM_GRAPHLETS];
    let mut exact_rows: Option<[Ratio; NUM_GRAPHLETS]> = None;

    let moments = || -> Result<[[f64; A]; A]> {
        let mm = acc
            .moments
            .as_ref()
            .ok_or_else(|| Error::InvalidArgument("accumulator lacks second moments".into()))?;
        Ok(symmetric_f64(mm))
    };
    let uniform_sums = |q: f64, lin: &mut [f64; NUM_GRAPHLETS]| {
        for i in 0..NUM_GRAPHLETS {
            lin[i] = q * chain.dot(i, &active_f);
        }
    };

    match &acc.inclusion {
        Inclusion::Full => {
            let mut rows = [Ratio::ZERO; NUM_GRAPHLETS];
            for i in 0..NUM_GRAPHLETS {
                let r = chain
                    .exact_row(i, &active_u)
                    .ok_or(Error::Overflow("estimate"))?;
                rows[i] = r;
                lin[i] = r.to_f64();
            }
            exact_rows = Some(rows);
        }
        Inclusion::Bernoulli { p } => {
            let p = *p;
            uniform_sums(1.0 / p, &mut lin);
            let mm = moments()?;
            for i in 0..NUM_GRAPHLETS {
                var[i] = (1.0 - p) / (p * p) * chain.quad(i, &mm).max(0.0);
            }
        }
        Inclusion::SimpleRandom { k, m: pop } | Inclusion::WithReplacement { k, m: pop } => {
            let (k, pop) = (*k as f64, *pop as f64);
            let fpc = match acc.inclusion {
                Inclusion::SimpleRandom { .. } => 1.0 - k / pop,
                _ => 1.0,
            };
            uniform_sums(pop / k, &mut lin);
            let mm = moments()?;
            for i in 0..NUM_GRAPHLETS {
                let s = chain.dot(i, &active_f);
                var[i] = if k < 2.0 {
                    f64::INFINITY
                } else {
                    let ss = difference(chain.quad(i, &mm), s * s / k) / (k - 1.0);
                    pop * pop * fpc / k * ss
                };
                if fpc == 0.0 {
                    var[i] = 0.0;
                }
            }
        }
        Inclusion::HorvitzThompson { .. } | Inclusion::HansenHurwitz { .. } => {
            let ws = acc
                .weighted
                .as_ref()
                .ok_or_else(|| Error::InvalidArgument("accumulator lacks weighted sums".into()))?;
            let hh = matches!(acc.inclusion, Inclusion::HansenHurwitz { .. });
            let k = acc.k_used as f64;
            for i in 0..NUM_GRAPHLETS {
                lin[i] = chain.dot(i, &ws.first);
                let s2 = chain.quad(i, &ws.second);
                var[i] = if hh {
                    if k < 2.0 {
                        f64::INFINITY
                    } else {
                        difference(k * s2, lin[i] * lin[i]) / (k - 1.0)
                    }
                } else {
                    difference(s2, chain.quad(i, &ws.second_linear))
                };
            }
        }
    }

    let mut x = [0.0f64; NUM_GRAPHLETS];
    let mut clamped = [false; NUM_GRAPHLETS];
    x[Edge.index()] = m;
    x[TwoNodeIndependent.index()] = c2 as f64 - m;
    for g in ACTIVE {
        let i = g.index();
        // Adding zero turns a negative zero into a positive one.
        x[i] = lin[i] + 0.0;
        if x[i] < 0.0 {
            x[i] = 0.0;
            clamped[i] = true;
        }
    }
    let w6 = chain.complement[ThreeNodeIndependent.index()];
    let three: f64 = [Triangle, TwoStar, ThreeNodeOneEdge]
        .iter()
        .map(|g| x[g.index()])
        .sum();
    x[ThreeNodeIndependent.index()] = w6.to_f64() * (c3 as f64 - three);
    let w17 = chain.complement[FourNodeIndependent.index()];
    let four: f64 = Graphlet::ALL[6..16].iter().map(|g| x[g.index()]).sum();
    x[FourNodeIndependent.index()] = w17.to_f64() * (c4 as f64 - four);
    for g in [ThreeNodeIndependent, FourNodeIndependent] {
        clamped[g.index()] = x[g.index()] < 0.0;
    }

    let exact = match exact_rows {
        Some(rows) => integer_counts(&rows, &chain, g, (c2, c3, c4)),
        None => None,
    };
    if let Some(e) = &exact {
        // Keep floats consistent with the integers when both exist.
        for i in 0..NUM_GRAPHLETS {
            x[i] = e.0[i] as f64;
        }
    }

    let x = GraphletVec(x);
    let var = GraphletVec(var);
    let (lb, ub) = confidence_bounds(&x, &var, DEFAULT_ALPHA)?;
    Ok(GraphletEstimate {
        x,
        var,
        lb,
        ub,
        alpha: DEFAULT_ALPHA,
        clamped: GraphletVec(clamped),
        exact,
        k_used: acc.k_used,
    })
}

/// Integer counts when every row is a nonnegative integer.
fn integer_counts(
    rows: &[Ratio; NUM_GRAPHLETS],
    chain: &Chain,
    g: &Graph,
    (c2, c3, c4): (u128, u128, u128),
) -> Option<GraphletVec<u128>> {
    let mut y = [0u128; NUM_GRAPHLETS];
    y[Edge.index()] = g.m() as u128;
    y[TwoNodeIndependent.index()] = c2 - g.m() as u128;
    for a in ACTIVE {
        let r = rows[a.index()];
        if r.num < 0 || r.num % r.den != 0 {
            return None;
        }
        y[a.index()] = (r.num / r.den) as u128;
    }
    if chain.complement[ThreeNodeIndependent.index()] != Ratio::ONE
        || chain.complement[FourNodeIndependent.index()] != Ratio::ONE
    {
        return None;
    }
    let three = y[Triangle.index()] + y[TwoStar.index()] + y[ThreeNodeOneEdge.index()];
    y[ThreeNodeIndependent.index()] = c3.checked_sub(three)?;
    let four: u128 = Graphlet::ALL[6..16].iter().map(|g| y[g.index()]).sum();
    y[FourNodeIndependent.index()] = c4.checked_sub(four)?;
    Some(GraphletVec(y))
}

/// Exact counts by full enumeration of edge neighborhoods.
pub fn exact_counts(g: &Graph, workers: usize) -> Result<GraphletEstimate> {
    let all: Vec<EdgeId> = (0..g.m()).collect();
    let acc = accumulate(g, &all, workers)?;
    estimate_counts(&acc, g, &WeightVector::validated())
}

/// Exact integer counts of all 17 patterns.
pub fn exact_integer_counts(g: &Graph, workers: usize) -> Result<GraphletVec<u128>> {
    exact_counts(g, workers)?
        .exact
        .ok_or(Error::Overflow("exact counts exceed float-free range"))
}

/// Draws a sample per `design` and estimates all counts.
pub fn estimate(g: &Graph, design: &SampleDesign, cfg: EngineConfig) -> Result<GraphletEstimate> {
    let sample = draw_sample(g, design)?;
    let acc = accumulate_sample(g, &sample, cfg)?;
    estimate_counts(&acc, g, &WeightVector::validated())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::*;
    use crate::oracle::brute_force_counts;
    use crate::sampling::Weighting;

    fn exact(g: &Graph) -> GraphletVec<u128> {
        exact_integer_counts(g, 1).unwrap()
    }

    #[test]
    fn k4_accumulator() {
        let k4 = complete(4);
        let all: Vec<_> = (0..6).collect();
        let acc = accumulate(&k4, &all, 1).unwrap();
        assert_eq!(acc.counts[Triangle], 12);
        assert_eq!(acc.counts[FourClique], 6);
        assert_eq!(acc.counts[ChordalCycle], 6);
        assert_eq!(acc.counts[FourNodeOneEdge], 6);
        assert_eq!(acc.inclusion, Inclusion::Full);
    }

    #[test]
    fn triangle_plus_isolated_accumulator() {
        let g = triangle_plus_isolated();
        let acc = accumulate(&g, &[0, 1, 2], 2).unwrap();
        assert_eq!(acc.counts[Triangle], 3);
        assert_eq!(acc.counts[ThreeNodeOneEdge], 3);
        assert_eq!(acc.counts[FourNodeTwoStar], 3);
    }

    #[test]
    fn small_exact_examples() {
        let y = exact(&triangle_plus_isolated());
        assert_eq!(y.0, [3, 3, 1, 0, 3, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0]);
        let y = exact(&path(4));
        assert_eq!((y[TwoStar], y[ThreeNodeOneEdge], y[FourPath]), (2, 2, 1));
        let y = exact(&star(3));
        assert_eq!((y[TwoStar], y[ThreeNodeIndependent], y[ThreeStar]), (3, 1, 1));
        let y = exact(&complete(4));
        assert_eq!((y[Triangle], y[FourClique]), (4, 1));
    }

    #[test]
    fn exact_matches_oracle() {
        for seed in 0..10 {
            let g = erdos_renyi(25, 0.25, seed);
            assert_eq!(exact(&g), brute_force_counts(&g).unwrap(), "seed {seed}");
        }
    }

    #[test]
    fn published_weights_fail_full_sampling() {
        let g = erdos_renyi(20, 0.3, 1);
        let all: Vec<_> = (0..g.m()).collect();
        let acc = accumulate(&g, &all, 1).unwrap();
        let est = estimate_counts(&acc, &g, &WeightVector::as_published()).unwrap();
        let truth = brute_force_counts(&g).unwrap();
        assert!(Graphlet::ALL
            .iter()
            .any(|&p| est.x[p] != truth[p] as f64));
    }

    #[test]
    fn exact_has_zero_variance() {
        let est = exact_counts(&erdos_renyi(30, 0.2, 3), 1).unwrap();
        assert!(est.var.0.iter().all(|&v| v == 0.0));
        assert_eq!(est.lb, est.x);
        assert_eq!(est.ub, est.x);
    }

    #[test]
    fn complements_hold_under_sampling() {
        let g = erdos_renyi(40, 0.15, 2);
        let n = g.n() as f64;
        for seed in 0..5 {
            let est = estimate(&g, &SampleDesign::probability(0.3, seed), EngineConfig::new(2)).unwrap();
            let three: f64 = est.x.0[2..6].iter().sum();
            let four: f64 = est.x.0[6..17].iter().sum();
            let c3 = n * (n - 1.0) * (n - 2.0) / 6.0;
            let c4 = c3 * (n - 3.0) / 4.0;
            assert!((three - c3).abs() < 1e-6 * c3);
            assert!((four - c4).abs() < 1e-6 * c4);
        }
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let g = barabasi_albert(3000, 4, 1);
        let base = exact_counts(&g, 1).unwrap();
        for w in [2, 3, 4] {
            assert_eq!(exact_counts(&g, w).unwrap(), base);
        }
        let d = SampleDesign::probability(0.2, 5).with_weighting(Weighting::KCore);
        let a = estimate(&g, &d, EngineConfig::new(1)).unwrap();
        let b = estimate(&g, &d, EngineConfig::new(4)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn srswor_of_everything_is_exact() {
        let g = erdos_renyi(30, 0.2, 9);
        let est = estimate(&g, &SampleDesign::size(g.m(), 1), EngineConfig::new(1)).unwrap();
        assert_eq!(est.exact.unwrap(), exact(&g));
    }

    #[test]
    fn bounds() {
        let x = GraphletVec([10.0; NUM_GRAPHLETS]);
        let v = GraphletVec([4.0; NUM_GRAPHLETS]);
        let (lb, ub) = confidence_bounds(&x, &v, 0.05).unwrap();
        assert!((ub.0[0] - (10.0 + 1.959964 * 2.0)).abs() < 1e-5);
        assert!((lb.0[0] - (10.0 - 1.959964 * 2.0)).abs() < 1e-5);
        let big = GraphletVec([100.0; NUM_GRAPHLETS]);
        let (lb, _) = confidence_bounds(&x, &big, 0.05).unwrap();
        assert_eq!(lb.0[0], 0.0);
        assert!(confidence_bounds(&x, &v, 1.0).is_err());
        assert!(confidence_bounds(&x, &v, 0.0).is_err());
    }

    #[test]
    fn weighted_designs_are_close_on_average() {
        let g = erdos_renyi(40, 0.2, 4);
        let truth = exact(&g);
        let designs = [
            SampleDesign::probability(0.4, 0).with_weighting(Weighting::KCore),
            SampleDesign::size(60, 0)
                .with_weighting(Weighting::KCore)
                .with_replacement(true),
            SampleDesign::size(60, 0).with_replacement(true),
        ];
        for d in designs {
            let runs = 400;
            let mut mean = 0.0;
            for seed in 0..runs {
                let mut d = d.clone();
                d.seed = seed;
                mean += estimate(&g, &d, EngineConfig::new(1)).unwrap().x[Triangle];
            }
            mean /= runs as f64;
            let t = truth[Triangle] as f64;
            assert!((mean - t).abs() < 0.05 * t, "{d:?}: {mean} vs {t}");
        }
    }
}
