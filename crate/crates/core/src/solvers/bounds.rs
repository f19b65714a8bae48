use serde::{Deserialize, Serialize};

use super::{IterationMethod, IterationTrace};
use crate::error::{Error, Result};
use crate::linalg::NormKind;
use crate::majorant::{eval_all, RadiusReport};
use crate::real::Real;

/// Which inequality a [`BoundCheck`] tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    /// `‖y_n − x*‖ ≤ g₁(a)·a`
    Y,
    /// `‖z_n¹ − x*‖ ≤ g₂(a)·a`
    Z1,
    /// `‖z_n² − x*‖ ≤ g₃(a)·a`
    Z2,
    /// `‖x_{n+1} − x*‖ ≤ g(a)·a` with the last majorant of the method.
    Next,
    /// `‖x_{n+1} − x*‖ ≤ ‖x_n − x*‖`
    Monotone,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub step: usize,
    pub kind: BoundKind,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// Checks every per-step error bound along `trace`, where `a = ‖x_n − x*‖`
/// and `g_i` are the report's majorants.
///
/// The seventh-order scheme uses `g₁..g₄`; the fifth-order scheme uses
/// `g₁, g₂` for `y, z` and `g₃` for its update. Newton is not covered by these
/// majorants. A bound holds if `lhs ≤ rhs·(1 + 1e−12) + 8ε·max(1, ‖x*‖)`.
pub fn verify_error_bounds<R: Real>(
    trace: &IterationTrace<R>,
    x_star: &[R],
    report: &RadiusReport,
    norm: NormKind,
) -> Result<Vec<BoundCheck>> {
    if trace.method == IterationMethod::Newton {
        return Err(Error::InvalidConfig(
            "error bounds are defined for the fifth- and seventh-order schemes only".into(),
        ));
    }
    let dist = |v: &[R]| norm.distance(v, x_star).to_f64();
    let start = dist(&trace.steps[0].x);
    if !(start < report.rho_min) {
        return Err(Error::BallViolation { distance: start, radius: report.rho_min });
    }
    let eps = x_star[0].epsilon().to_f64();
    let slack = 8.0 * eps * norm.norm(x_star).to_f64().max(1.0);
    let check =
        |step, kind, lhs: f64, rhs: f64| BoundCheck { step, kind, lhs, rhs, holds: lhs <= rhs * (1.0 + 1e-12) + slack };

    let mut out = Vec::new();
    for (n, pair) in trace.steps.windows(2).enumerate() {
        let (cur, next) = (&pair[0], &pair[1]);
        let a = dist(&cur.x);
        let g = eval_all(&report.constants, a)?;
        let sub = [(BoundKind::Y, &cur.y, g[0]), (BoundKind::Z1, &cur.z1, g[1]), (BoundKind::Z2, &cur.z2, g[2])];
        for (kind, v, gi) in sub {
            if let Some(v) = v {
                out.push(check(n, kind, dist(v), gi * a));
            }
        }
        let g_next = match trace.method {
            IterationMethod::SeventhOrder => g[3],
            _ => g[2],
        };
        let e_next = dist(&next.x);
        out.push(check(n, BoundKind::Next, e_next, g_next * a));
        out.push(check(n, BoundKind::Monotone, e_next, a));
    }
    Ok(out)
}
