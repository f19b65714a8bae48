use serde::{Deserialize, Serialize};

use super::IterationTrace;
use crate::error::{Error, Result};
use crate::linalg::NormKind;
use crate::real::Real;

/// Computational order of convergence.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrderEstimate {
    pub coc: f64,
    pub samples_used: usize,
}

/// `ln(e_{n+1}/e_n) / ln(e_n/e_{n−1})` on the last triple of the leading run
/// of positive, strictly decreasing errors.
pub fn estimate_order<R: Real>(errors: &[R]) -> Result<OrderEstimate> {
    match errors.first() {
        Some(e) => estimate_order_with_floor(errors, &e.zero_like()),
        None => Err(Error::InsufficientData { usable: 0 }),
    }
}

/// As [`estimate_order`], but errors at or below `floor` are not admissible.
pub fn estimate_order_with_floor<R: Real>(errors: &[R], floor: &R) -> Result<OrderEstimate> {
    let mut run: Vec<&R> = Vec::new();
    for e in errors {
        let admissible = e.is_finite() && !e.is_zero() && e > floor && run.last().is_none_or(|p| e < *p);
        if !admissible {
            break;
        }
        run.push(e);
    }
    let n = run.len();
    if n < 3 {
        return Err(Error::InsufficientData { usable: n });
    }
    let (a, b, c) = (run[n - 3].clone(), run[n - 2].clone(), run[n - 1].clone());
    let coc = (c / b.clone()).ln() / (b / a).ln();
    Ok(OrderEstimate { coc: coc.to_f64(), samples_used: n })
}

/// Order from a trace's errors to the root, ignoring errors within
/// `100·ε·max(1, ‖x_last‖)` of zero.
pub fn trace_order<R: Real>(trace: &IterationTrace<R>) -> Result<OrderEstimate> {
    let errors = trace.errors().ok_or(Error::MissingRoot)?;
    let last = &trace.last().x;
    let scale = NormKind::Sup.norm(last).max_of(last[0].one_like());
    let floor = last[0].lift(100.0) * last[0].epsilon() * scale;
    estimate_order_with_floor(&errors, &floor)
}
