//! Selection of edge neighborhoods.

use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph};
use crate::kcore::kcore_numbers;

/// How many neighborhoods to select.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleMode {
    /// Each edge independently with probability `p` (or `round(p m)` draws
    /// when sampling with replacement).
    Probability(f64),
    /// A fixed number of draws.
    Size(usize),
}

/// Selection distribution over edges.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Weighting {
    Uniform,
    /// Proportional to the edge core number `min(core[u], core[v])`.
    KCore,
    /// Proportional to caller-supplied nonnegative per-edge weights.
    Custom(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleDesign {
    pub mode: SampleMode,
    pub weighting: Weighting,
    pub replacement: bool,
    pub seed: u64,
}

impl SampleDesign {
    pub fn probability(p: f64, seed: u64) -> SampleDesign {
        SampleDesign {
            mode: SampleMode::Probability(p),
            weighting: Weighting::Uniform,
            replacement: false,
            seed,
        }
    }

    pub fn size(k: usize, seed: u64) -> SampleDesign {
        SampleDesign {
            mode: SampleMode::Size(k),
            weighting: Weighting::Uniform,
            replacement: false,
            seed,
        }
    }

    /// Every edge exactly once.
    pub fn exhaustive() -> SampleDesign {
        SampleDesign::probability(1.0, 0)
    }

    pub fn with_weighting(mut self, weighting: Weighting) -> SampleDesign {
        self.weighting = weighting;
        self
    }

    pub fn with_replacement(mut self, replacement: bool) -> SampleDesign {
        self.replacement = replacement;
        self
    }

    pub fn validate(&self, m: usize) -> Result<()> {
        match self.mode {
            SampleMode::Probability(p) if !(p > 0.0 && p <= 1.0) => {
                return Err(Error::InvalidDesign(format!("probability {p} outside (0, 1]")))
            }
            SampleMode::Size(0) => return Err(Error::InvalidDesign("sample size is zero".into())),
            SampleMode::Size(k) if !self.replacement && k > m => {
                return Err(Error::InvalidDesign(format!(
                    "cannot draw {k} distinct edges from {m}"
                )))
            }
            _ => {}
        }
        if let Weighting::Custom(w) = &self.weighting {
            if w.len() != m {
                return Err(Error::InvalidDesign(format!(
                    "{} custom weights for {m} edges",
                    w.len()
                )));
            }
            if w.iter().any(|x| !(*x >= 0.0) || !x.is_finite()) {
                return Err(Error::InvalidDesign("custom weights must be finite and nonnegative".into()));
            }
            if w.iter().sum::<f64>() <= 0.0 {
                return Err(Error::InvalidDesign("custom weights sum to zero".into()));
            }
        }
        Ok(())
    }
}

/// Inclusion structure of a drawn sample, needed to scale sums into
/// unbiased totals and to estimate their variance.
#[derive(Debug, Clone, PartialEq)]
pub enum Inclusion {
    /// Every edge exactly once.
    Full,
    /// Independent inclusion with a common probability.
    Bernoulli { p: f64 },
    /// `k` distinct edges drawn uniformly from `m`.
    SimpleRandom { k: usize, m: usize },
    /// `k` uniform draws with replacement from `m`.
    WithReplacement { k: usize, m: usize },
    /// Per-sampled-edge inclusion probabilities, aligned with `Sample::edges`.
    /// `approximate` marks probabilities that are only first-order accurate.
    HorvitzThompson { inclusion: Vec<f64>, approximate: bool },
    /// Per-draw selection probabilities for weighted draws with replacement.
    HansenHurwitz { selection: Vec<f64> },
}

impl Inclusion {
    /// Common inclusion probability, when the design has one.
    pub fn uniform_probability(&self) -> Option<f64> {
        match *self {
            Inclusion::Full => Some(1.0),
            Inclusion::Bernoulli { p } => Some(p),
            Inclusion::SimpleRandom { k, m } | Inclusion::WithReplacement { k, m } => {
                Some(k as f64 / m as f64)
            }
            _ => None,
        }
    }
}

/// Sampled edges with their inclusion structure.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub edges: Vec<EdgeId>,
    pub inclusion: Inclusion,
}

/// Draws edge ids according to `design`. Deterministic for a fixed seed.
pub fn sample_edges(g: &Graph, design: &SampleDesign) -> Result<Vec<EdgeId>> {
    Ok(draw_sample(g, design)?.edges)
}

fn weights(g: &Graph, w: &Weighting) -> Option<Vec<f64>> {
    match w {
        Weighting::Uniform => None,
        Weighting::KCore => Some(
            kcore_numbers(g)
                .edge_core
                .into_iter()
                .map(|c| c as f64)
                .collect(),
        ),
        Weighting::Custom(w) => Some(w.clone()),
    }
}

/// Draws a sample and records how each edge entered it.
pub fn draw_sample(g: &Graph, design: &SampleDesign) -> Result<Sample> {
    let m = g.m();
    design.validate(m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(design.seed);
    let draws = |p: f64| ((p * m as f64).round() as usize).max(1);

    let sample = match (weights(g, &design.weighting), design.mode, design.replacement) {
        (None, SampleMode::Probability(p), false) if p >= 1.0 => full(m),
        (None, SampleMode::Probability(p), false) => Sample {
            edges: (0..m).filter(|_| rng.gen::<f64>() < p).collect(),
            inclusion: Inclusion::Bernoulli { p },
        },
        (None, SampleMode::Size(k), false) if k == m => full(m),
        (None, SampleMode::Size(k), false) => Sample {
            edges: index::sample(&mut rng, m, k).into_vec(),
            inclusion: Inclusion::SimpleRandom { k, m },
        },
        (None, mode, true) => {
            let k = match mode {
                SampleMode::Probability(p) => draws(p),
                SampleMode::Size(k) => k,
            };
            Sample {
                edges: (0..k).map(|_| rng.gen_range(0..m)).collect(),
                inclusion: Inclusion::WithReplacement { k, m },
            }
        }
        (Some(w), SampleMode::Probability(p), false) => {
            let total: f64 = w.iter().sum();
            let mut edges = Vec::new();
            let mut inclusion = Vec::new();
            for (e, &we) in w.iter().enumerate() {
                let pi = (p * m as f64 * we / total).min(1.0);
                if rng.gen::<f64>() < pi {
                    edges.push(e);
                    inclusion.push(pi);
                }
            }
            Sample {
                edges,
                inclusion: Inclusion::HorvitzThompson {
                    inclusion,
                    approximate: false,
                },
            }
        }
        (Some(w), mode, true) => {
            let k = match mode {
                SampleMode::Probability(p) => draws(p),
                SampleMode::Size(k) => k,
            };
            let total: f64 = w.iter().sum();
            let dist = WeightedIndex::new(&w)
                .map_err(|err| Error::InvalidDesign(format!("weights: {err}")))?;
            let edges: Vec<EdgeId> = (0..k).map(|_| dist.sample(&mut rng)).collect();
            let selection = edges.iter().map(|&e| w[e] / total).collect();
            Sample {
                edges,
                inclusion: Inclusion::HansenHurwitz { selection },
            }
        }
        (Some(w), SampleMode::Size(k), false) => weighted_without_replacement(&w, k, &mut rng)?,
    };
    Ok(sample)
}

fn full(m: usize) -> Sample {
    Sample {
        edges: (0..m).collect(),
        inclusion: Inclusion::Full,
    }
}

/// Successive weighted sampling via exponential keys (Efraimidis–Spirakis):
/// the first selected edge is drawn proportionally to its weight, and so on
/// among the remainder. Inclusion probabilities have no closed form; the
/// recorded values `1 - (1 - w/W)^k` are first-order approximations.
fn weighted_without_replacement(w: &[f64], k: usize, rng: &mut ChaCha8Rng) -> Result<Sample> {
    let positive = w.iter().filter(|&&x| x > 0.0).count();
    if k > positive {
        return Err(Error::InvalidDesign(format!(
            "cannot draw {k} distinct edges from {positive} with positive weight"
        )));
    }
    let total: f64 = w.iter().sum();
    let mut keyed: Vec<(f64, EdgeId)> = w
        .iter()
        .enumerate()
        .filter(|(_, &x)| x > 0.0)
        .map(|(e, &x)| {
            let u: f64 = rng.gen::<f64>().max(f64::MIN_POSITIVE);
            (u.ln() / x, e)
        })
        .collect();
    keyed.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    let edges: Vec<EdgeId> = keyed[..k].iter().map(|&(_, e)| e).collect();
    let inclusion = edges
        .iter()
        .map(|&e| 1.0 - (1.0 - w[e] / total).powi(k as i32))
        .collect();
    Ok(Sample {
        edges,
        inclusion: Inclusion::HorvitzThompson {
            inclusion,
            approximate: true,
        },
    })
}
