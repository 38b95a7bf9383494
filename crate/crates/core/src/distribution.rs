//! Graphlet frequency distributions and comparison statistics.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphlet::{Graphlet, GraphletVec};

/// Which 4-vertex patterns a distribution covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GfdVariant {
    /// Patterns 7 to 12.
    Connected,
    /// Patterns 13 to 17.
    Disconnected,
    /// Patterns 7 to 17.
    Combined,
}

impl GfdVariant {
    pub fn patterns(self) -> &'static [Graphlet] {
        match self {
            GfdVariant::Connected => &Graphlet::CONNECTED_4,
            GfdVariant::Disconnected => &Graphlet::DISCONNECTED_4,
            GfdVariant::Combined => &Graphlet::ALL[6..],
        }
    }
}

impl std::str::FromStr for GfdVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "connected" => Ok(GfdVariant::Connected),
            "disconnected" => Ok(GfdVariant::Disconnected),
            "combined" => Ok(GfdVariant::Combined),
            _ => Err(Error::InvalidArgument(format!("unknown GFD variant {s:?}"))),
        }
    }
}

/// Normalized counts over the patterns of `variant`, in id order.
pub fn gfd(x: &GraphletVec<f64>, variant: GfdVariant) -> Result<Vec<f64>> {
    let vals: Vec<f64> = variant.patterns().iter().map(|&g| x[g].max(0.0)).collect();
    let total: f64 = vals.iter().sum();
    if !(total > 0.0) || !total.is_finite() {
        return Err(Error::EmptyDistribution);
    }
    Ok(vals.into_iter().map(|v| v / total).collect())
}

/// Largest absolute difference between the cumulative sums of `a` and `b`.
pub fn ks_statistic(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    let (mut ca, mut cb, mut d) = (0.0f64, 0.0f64, 0.0f64);
    for (x, y) in a.iter().zip(b) {
        ca += x;
        cb += y;
        d = d.max((ca - cb).abs());
    }
    Ok(d.min(1.0))
}

/// `Σ |a_i - b_i|`.
pub fn l1_distance(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    Ok(a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum())
}

/// Per-pattern comparison of an estimate with the truth.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RelativeError {
    /// `|x - y| / y` for `y > 0`.
    Relative(f64),
    /// For `y = 0`: whether the estimate is also zero.
    ExactMatch(bool),
}

impl RelativeError {
    pub fn value(self) -> Option<f64> {
        match self {
            RelativeError::Relative(r) => Some(r),
            RelativeError::ExactMatch(_) => None,
        }
    }
}

pub fn relative_error(x: &GraphletVec<f64>, y: &GraphletVec<f64>) -> GraphletVec<RelativeError> {
    GraphletVec(std::array::from_fn(|i| {
        if y.0[i] > 0.0 {
            RelativeError::Relative((x.0[i] - y.0[i]).abs() / y.0[i])
        } else {
            RelativeError::ExactMatch(x.0[i] == 0.0)
        }
    }))
}

/// Largest relative error over patterns with a positive true count.
pub fn max_relative_error(x: &GraphletVec<f64>, y: &GraphletVec<f64>) -> f64 {
    relative_error(x, y)
        .0
        .iter()
        .filter_map(|r| r.value())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimator::exact_counts;
    use crate::generate::{complete, cycle, path};

    #[test]
    fn gfd_examples() {
        let x = exact_counts(&complete(4), 1).unwrap().x;
        assert_eq!(gfd(&x, GfdVariant::Connected).unwrap(), vec![1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        let x = exact_counts(&path(4), 1).unwrap().x;
        assert_eq!(gfd(&x, GfdVariant::Connected).unwrap(), vec![0.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
        let x = exact_counts(&cycle(4), 1).unwrap().x;
        assert_eq!(gfd(&x, GfdVariant::Connected).unwrap()[3], 1.0);
        assert!(gfd(&x, GfdVariant::Disconnected).is_err());
        let comb = gfd(&exact_counts(&cycle(6), 1).unwrap().x, GfdVariant::Combined).unwrap();
        assert_eq!(comb.len(), 11);
        assert!((comb.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ks_examples() {
        assert_eq!(ks_statistic(&[0.3, 0.7], &[0.3, 0.7]).unwrap(), 0.0);
        assert_eq!(ks_statistic(&[1.0, 0.0], &[0.0, 1.0]).unwrap(), 1.0);
        assert!((ks_statistic(&[0.6, 0.4], &[0.5, 0.5]).unwrap() - 0.1).abs() < 1e-12);
        assert!(ks_statistic(&[1.0], &[0.5, 0.5]).is_err());
    }

    #[test]
    fn relative_errors() {
        let mut x = GraphletVec::<f64>::zeros();
        let mut y = GraphletVec::<f64>::zeros();
        x[Graphlet::Triangle] = 110.0;
        y[Graphlet::Triangle] = 100.0;
        let r = relative_error(&x, &y);
        assert!((r[Graphlet::Triangle].value().unwrap() - 0.1).abs() < 1e-12);
        assert_eq!(r[Graphlet::FourClique], RelativeError::ExactMatch(true));
        assert!((max_relative_error(&x, &y) - 0.1).abs() < 1e-12);
        assert_eq!(max_relative_error(&y, &y), 0.0);
    }
}
