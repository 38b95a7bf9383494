//! Estimation without a preset sample size.
//!
//! The sample grows in rounds. Round `t` adds `ceil(φ (m - |E_s|))` new
//! distinct edges, recomputes the estimate from the cumulative sums, and
//! compares it with the previous round's estimate. The loop stops once the
//! change falls within the requested bound, the round cap is reached, or
//! every edge has been sampled. `φ` halves after each round.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::distribution::{gfd, ks_statistic, l1_distance, GfdVariant};
use crate::error::{Error, Result};
use crate::estimator::{accumulate_sample, estimate_counts, EngineConfig, GraphletEstimate, WeightVector};
use crate::graph::{EdgeId, Graph};
use crate::graphlet::{Graphlet, GraphletVec};
use crate::sampling::{Inclusion, Sample};

/// How successive estimates are compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LossKind {
    /// Largest relative change over the 4-vertex patterns.
    MaxRelative,
    /// KS statistic between combined 4-vertex distributions.
    Ks,
    /// L1 distance between combined 4-vertex distributions.
    L1,
}

impl std::str::FromStr for LossKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "max-relative" | "max-relative-error" | "relative" => Ok(LossKind::MaxRelative),
            "ks" | "KS" => Ok(LossKind::Ks),
            "l1" | "L1" => Ok(LossKind::L1),
            _ => Err(Error::InvalidArgument(format!("unknown loss {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdaptiveConfig {
    /// Target bound on the loss between successive estimates, in `[0, 1]`.
    pub beta: f64,
    pub t_max: usize,
    pub epsilon: f64,
    /// Initial growth fraction; defaults to `(1 + ε) / √m`.
    pub phi0: Option<f64>,
    pub loss: LossKind,
    pub seed: u64,
    #[serde(skip)]
    pub engine: EngineConfig,
}

impl AdaptiveConfig {
    pub fn new(beta: f64, seed: u64) -> AdaptiveConfig {
        AdaptiveConfig {
            beta,
            t_max: 200,
            epsilon: 1e-6,
            phi0: None,
            loss: LossKind::MaxRelative,
            seed,
            engine: EngineConfig::default(),
        }
    }

    fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.beta) {
            return Err(Error::InvalidArgument(format!("beta {} outside [0, 1]", self.beta)));
        }
        if self.t_max == 0 {
            return Err(Error::InvalidArgument("t_max must be at least 1".into()));
        }
        if !(self.epsilon > 0.0) {
            return Err(Error::InvalidArgument("epsilon must be positive".into()));
        }
        if let Some(p) = self.phi0 {
            if !(p > 0.0 && p <= 1.0) {
                return Err(Error::InvalidArgument(format!("phi0 {p} outside (0, 1]")));
            }
        }
        Ok(())
    }
}

/// One round of the loop.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdaptiveStep {
    pub t: usize,
    pub k_t: usize,
    pub cumulative: usize,
    pub phi: f64,
    /// Loss against the previous round; 1 until two estimates exist.
    pub delta: f64,
    #[serde(skip)]
    pub x: GraphletVec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    Converged,
    IterationCap,
    Exhausted,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdaptiveTrace {
    pub steps: Vec<AdaptiveStep>,
    pub stop: StopReason,
}

impl AdaptiveTrace {
    pub fn final_delta(&self) -> f64 {
        self.steps.last().map_or(1.0, |s| s.delta)
    }
}

/// Distance between successive estimates.
pub fn loss(x_t: &GraphletVec<f64>, x_prev: &GraphletVec<f64>, kind: LossKind) -> f64 {
    match kind {
        LossKind::MaxRelative => Graphlet::ALL[6..]
            .iter()
            .filter(|&&g| x_prev[g] != 0.0)
            .map(|&g| (x_t[g] - x_prev[g]).abs() / x_prev[g].abs())
            .fold(0.0, f64::max),
        LossKind::Ks | LossKind::L1 => {
            let (a, b) = match (gfd(x_t, GfdVariant::Combined), gfd(x_prev, GfdVariant::Combined)) {
                (Ok(a), Ok(b)) => (a, b),
                _ => return 1.0,
            };
            let d = if kind == LossKind::Ks {
                ks_statistic(&a, &b)
            } else {
                l1_distance(&a, &b)
            };
            d.unwrap_or(1.0)
        }
    }
}

/// Incremental uniform draws without replacement.
struct LazyPermutation {
    items: Vec<EdgeId>,
    taken: usize,
    rng: ChaCha8Rng,
}

impl LazyPermutation {
    fn new(m: usize, seed: u64) -> LazyPermutation {
        LazyPermutation {
            items: (0..m).collect(),
            taken: 0,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn remaining(&self) -> usize {
        self.items.len() - self.taken
    }

    fn take(&mut self, k: usize) -> Vec<EdgeId> {
        let start = self.taken;
        for i in start..start + k {
            let j = self.rng.gen_range(i..self.items.len());
            self.items.swap(i, j);
        }
        self.taken += k;
        self.items[start..self.taken].to_vec()
    }
}

/// Runs the adaptive loop and returns the final estimate with its trace.
pub fn adaptive_estimate(g: &Graph, cfg: &AdaptiveConfig) -> Result<(GraphletEstimate, AdaptiveTrace)> {
    cfg.validate()?;
    let m = g.m();
    let w = WeightVector::validated();
    let mut phi = cfg
        .phi0
        .unwrap_or((1.0 + cfg.epsilon) / (m as f64).sqrt())
        .min(1.0);
    let mut perm = LazyPermutation::new(m, cfg.seed);
    let mut acc = None;
    let mut steps: Vec<AdaptiveStep> = Vec::new();
    let (stop, estimate) = loop {
        let t = steps.len() + 1;
        let remaining = perm.remaining();
        let k_t = ((phi * remaining as f64).ceil() as usize).clamp(1, remaining);
        let batch = Sample {
            edges: perm.take(k_t),
            inclusion: Inclusion::SimpleRandom { k: k_t, m },
        };
        let part = accumulate_sample(g, &batch, cfg.engine)?;
        let acc = match acc.as_mut() {
            None => acc.insert(part),
            Some(a) => {
                a.merge(&part)?;
                a
            }
        };
        let cumulative = m - perm.remaining();
        acc.inclusion = if cumulative == m {
            Inclusion::Full
        } else {
            Inclusion::SimpleRandom { k: cumulative, m }
        };
        let est = estimate_counts(acc, g, &w)?;
        let delta = match steps.last() {
            Some(prev) => loss(&est.x, &prev.x, cfg.loss),
            None => 1.0,
        };
        steps.push(AdaptiveStep {
            t,
            k_t,
            cumulative,
            phi,
            delta,
            x: est.x,
        });
        phi /= 2.0;

        if t >= 2 && delta - cfg.epsilon <= cfg.beta {
            break (StopReason::Converged, est);
        }
        if cumulative == m {
            break (StopReason::Exhausted, est);
        }
        if t >= cfg.t_max {
            break (StopReason::IterationCap, est);
        }
    };
    Ok((estimate, AdaptiveTrace { steps, stop }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimator::exact_counts;
    use crate::generate::erdos_renyi;

    #[test]
    fn loss_examples() {
        let mut x = GraphletVec::<f64>::zeros();
        for i in 6..17 {
            x.0[i] = (i + 1) as f64;
        }
        for kind in [LossKind::MaxRelative, LossKind::Ks, LossKind::L1] {
            assert_eq!(loss(&x, &x, kind), 0.0);
        }
        let y = x.map(|v| v * 1.1);
        assert!((loss(&y, &x, LossKind::MaxRelative) - 0.1).abs() < 1e-12);

        let mut a = GraphletVec::<f64>::zeros();
        let mut b = GraphletVec::<f64>::zeros();
        a[Graphlet::FourClique] = 1.0;
        b[Graphlet::FourNodeIndependent] = 1.0;
        assert_eq!(loss(&a, &b, LossKind::Ks), 1.0);
        assert_eq!(loss(&a, &GraphletVec::zeros(), LossKind::Ks), 1.0);
    }

    #[test]
    fn zero_bound_exhausts_to_exact() {
        let g = erdos_renyi(30, 0.25, 4);
        assert!(g.m() >= 90);
        let mut cfg = AdaptiveConfig::new(0.0, 1);
        cfg.t_max = 100_000;
        cfg.phi0 = Some(0.2);
        let (est, trace) = adaptive_estimate(&g, &cfg).unwrap();
        assert_eq!(trace.stop, StopReason::Exhausted);
        assert_eq!(est, exact_counts(&g, 1).unwrap());
        let cum: Vec<_> = trace.steps.iter().map(|s| s.cumulative).collect();
        assert!(cum.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn vacuous_bound_stops_after_first_comparison() {
        let g = erdos_renyi(60, 0.1, 2);
        let (_, trace) = adaptive_estimate(&g, &AdaptiveConfig::new(1.0, 3)).unwrap();
        assert_eq!(trace.steps.len(), 2);
        assert_eq!(trace.stop, StopReason::Converged);
    }

    #[test]
    fn phi_halves() {
        let g = erdos_renyi(60, 0.1, 2);
        let mut cfg = AdaptiveConfig::new(0.0, 3);
        cfg.t_max = 5;
        let (_, trace) = adaptive_estimate(&g, &cfg).unwrap();
        for w in trace.steps.windows(2) {
            assert_eq!(w[1].phi, w[0].phi / 2.0);
        }
        assert!(trace.steps.len() <= 5);
    }

    #[test]
    fn invalid_configs() {
        let g = erdos_renyi(20, 0.2, 1);
        assert!(adaptive_estimate(&g, &AdaptiveConfig::new(1.5, 0)).is_err());
        let mut c = AdaptiveConfig::new(0.1, 0);
        c.t_max = 0;
        assert!(adaptive_estimate(&g, &c).is_err());
    }
}
