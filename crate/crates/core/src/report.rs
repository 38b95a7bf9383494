//! JSON and TSV renderings of estimates.

use indexmap::IndexMap;
use serde::Serialize;
use serde_json::Value;

use crate::estimator::GraphletEstimate;
use crate::graphlet::{Graphlet, GraphletVec};

/// One row of the 17-pattern table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphletRow {
    pub id: usize,
    pub name: &'static str,
    pub estimate: Value,
    pub variance: f64,
    pub lower: f64,
    pub upper: f64,
    pub clamped: bool,
}

fn count_value(est: &GraphletEstimate, g: Graphlet) -> Value {
    match &est.exact {
        Some(y) => Value::from(u128_json(y[g])),
        None => float(est.x[g]),
    }
}

/// Integers up to `u64::MAX` stay integers; anything larger is a float.
fn u128_json(v: u128) -> Value {
    match u64::try_from(v) {
        Ok(x) => Value::from(x),
        Err(_) => float(v as f64),
    }
}

fn float(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

/// Pattern name to estimated (or exact) count, in id order.
pub fn counts_map(est: &GraphletEstimate) -> IndexMap<&'static str, Value> {
    Graphlet::ALL
        .iter()
        .map(|&g| (g.name(), count_value(est, g)))
        .collect()
}

/// Pattern name to exact count, in id order.
pub fn exact_map(y: &GraphletVec<u128>) -> IndexMap<&'static str, Value> {
    y.iter().map(|(g, &v)| (g.name(), u128_json(v))).collect()
}

pub fn rows(est: &GraphletEstimate) -> Vec<GraphletRow> {
    Graphlet::ALL
        .iter()
        .map(|&g| GraphletRow {
            id: g.id(),
            name: g.name(),
            estimate: count_value(est, g),
            variance: est.var[g],
            lower: est.lb[g],
            upper: est.ub[g],
            clamped: est.clamped[g],
        })
        .collect()
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => "NA".into(),
        other => other.to_string(),
    }
}

/// Tab-separated 17-row table with a header line.
pub fn estimate_tsv(est: &GraphletEstimate) -> String {
    let mut out = String::from("id\tname\testimate\tvariance\tlower\tupper\tclamped\n");
    for r in rows(est) {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            r.id,
            r.name,
            cell(&r.estimate),
            r.variance,
            r.lower,
            r.upper,
            r.clamped
        ));
    }
    out
}

pub fn exact_tsv(y: &GraphletVec<u128>) -> String {
    let mut out = String::from("id\tname\tcount\n");
    for (g, v) in y.iter() {
        out.push_str(&format!("{}\t{}\t{}\n", g.id(), g.name(), v));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimator::exact_counts;
    use crate::generate::complete;

    #[test]
    fn exact_counts_render_as_integers() {
        let est = exact_counts(&complete(4), 1).unwrap();
        let m = counts_map(&est);
        assert_eq!(m["4-clique"], Value::from(1u64));
        assert_eq!(m.keys().next(), Some(&"edge"));
        let tsv = estimate_tsv(&est);
        assert_eq!(tsv.lines().count(), 18);
        assert!(tsv.contains("7\t4-clique\t1\t0\t1\t1\tfalse"));
    }

    #[test]
    fn huge_counts_fall_back_to_float() {
        assert_eq!(u128_json(5), Value::from(5u64));
        assert!(u128_json(u128::MAX).is_f64());
    }
}
