//! Newton, fifth-order and seventh-order iterations with per-step traces.
//!
//! With `Γ = T'(x)⁻¹` and `B = 2T'(y)⁻¹ − Γ`, one seventh-order step is
//!
//! ```text
//! y   = x − ½ Γ T(x)
//! z¹  = x − T'(y)⁻¹ T(x)
//! z²  = z¹ − B T(z¹)
//! x⁺  = z² − B T(z²)
//! ```
//!
//! The fifth-order step stops at `x⁺ = z²`. Inverses are never formed; each
//! Jacobian is factorized once and reused for every solve against it.

mod bounds;
mod order;

pub use bounds::{verify_error_bounds, BoundCheck, BoundKind};
pub use order::{estimate_order, estimate_order_with_floor, trace_order, OrderEstimate};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Stage};
use crate::linalg::{sub_vec, Lu, Matrix, NormKind};
use crate::problems::{Operator, OperatorSpec};
use crate::real::{Real, DOUBLE_DIGITS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IterationMethod {
    Newton,
    #[serde(rename = "fifth")]
    FifthOrder,
    #[serde(rename = "seventh")]
    SeventhOrder,
}

impl IterationMethod {
    pub const ALL: [IterationMethod; 3] = [Self::Newton, Self::FifthOrder, Self::SeventhOrder];

    /// Theoretical order of convergence.
    pub fn order(self) -> u32 {
        match self {
            Self::Newton => 2,
            Self::FifthOrder => 5,
            Self::SeventhOrder => 7,
        }
    }
}

impl std::fmt::Display for IterationMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Newton => "newton",
            Self::FifthOrder => "fifth",
            Self::SeventhOrder => "seventh",
        })
    }
}

/// Quantity compared against `residual_tol`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StopRule {
    /// `‖T(x_n)‖ ≤ tol`.
    #[default]
    Residual,
    /// `‖x_n − x*‖ ≤ tol`; needs a known root.
    Error,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolveConfig {
    pub residual_tol: f64,
    pub max_iterations: usize,
    /// Significant decimal digits; 16 selects native `f64`.
    pub precision_digits: u32,
    pub norm: NormKind,
    pub stop: StopRule,
}

impl Default for SolveConfig {
    fn default() -> Self {
        Self {
            residual_tol: 1e-12,
            max_iterations: 50,
            precision_digits: DOUBLE_DIGITS,
            norm: NormKind::Sup,
            stop: StopRule::Residual,
        }
    }
}

impl SolveConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.residual_tol > 0.0 && self.residual_tol.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "residual tolerance must be positive, got {}",
                self.residual_tol
            )));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidConfig("max_iterations must be at least 1".into()));
        }
        if self.precision_digits < DOUBLE_DIGITS {
            return Err(Error::InvalidConfig(format!(
                "precision must be at least {DOUBLE_DIGITS} digits, got {}",
                self.precision_digits
            )));
        }
        Ok(())
    }
}

/// Iterate `x_n` with the sub-iterates computed from it.
///
/// The last record of a trace carries no sub-iterates.
#[derive(Debug, Clone, PartialEq)]
pub struct StepRecord<R> {
    pub x: Vec<R>,
    pub y: Option<Vec<R>>,
    pub z1: Option<Vec<R>>,
    pub z2: Option<Vec<R>>,
    pub residual_norm: R,
    pub error_to_root: Option<R>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterationTrace<R> {
    pub steps: Vec<StepRecord<R>>,
    pub converged: bool,
    pub method: IterationMethod,
}

impl<R: Real> IterationTrace<R> {
    /// Number of completed iterations.
    pub fn iterations(&self) -> usize {
        self.steps.len().saturating_sub(1)
    }

    pub fn last(&self) -> &StepRecord<R> {
        self.steps.last().expect("a trace holds at least the starting point")
    }

    /// `‖x_n − x*‖` for every recorded iterate, when the root is known.
    pub fn errors(&self) -> Option<Vec<R>> {
        self.steps.iter().map(|s| s.error_to_root.clone()).collect()
    }

    pub fn ensure_converged(&self) -> Result<()> {
        if self.converged {
            Ok(())
        } else {
            Err(Error::MaxIterations { iterations: self.iterations() })
        }
    }
}

fn factor<R: Real>(j: &Matrix<R>, stage: Stage) -> Result<Lu<R>> {
    Lu::factor(j).map_err(|_| Error::SingularJacobian { stage })
}

/// `2 T'(y)⁻¹ v − Γ v`.
fn corrected<R: Real>(base: &Lu<R>, pred: &Lu<R>, v: &[R]) -> Vec<R> {
    let a = pred.solve(v);
    let b = base.solve(v);
    a.into_iter().zip(b).map(|(a, b)| a.clone() + a - b).collect()
}

struct Advance<R> {
    next: Vec<R>,
    y: Option<Vec<R>>,
    z1: Option<Vec<R>>,
    z2: Option<Vec<R>>,
}

/// One step from `x` given `fx = T(x)`.
fn advance<R, O>(method: IterationMethod, op: &O, x: &[R], fx: &[R]) -> Result<Advance<R>>
where
    R: Real,
    O: Operator<R> + ?Sized,
{
    let base = factor(&op.jacobian(x)?, Stage::Base)?;
    let gfx = base.solve(fx);
    if method == IterationMethod::Newton {
        return Ok(Advance { next: sub_vec(x, &gfx), y: None, z1: None, z2: None });
    }

    let half = x[0].lift(0.5);
    let y: Vec<R> = x.iter().zip(&gfx).map(|(xi, gi)| xi.clone() - half.clone() * gi.clone()).collect();
    let pred = factor(&op.jacobian(&y)?, Stage::Predictor)?;
    let z1 = sub_vec(x, &pred.solve(fx));
    let fz1 = op.evaluate(&z1)?;
    let z2 = sub_vec(&z1, &corrected(&base, &pred, &fz1));
    if method == IterationMethod::FifthOrder {
        return Ok(Advance { next: z2, y: Some(y), z1: Some(z1), z2: None });
    }

    let fz2 = op.evaluate(&z2)?;
    let next = sub_vec(&z2, &corrected(&base, &pred, &fz2));
    Ok(Advance { next, y: Some(y), z1: Some(z1), z2: Some(z2) })
}

/// `x − T'(x)⁻¹T(x)`.
pub fn step_newton<R: Real, O: Operator<R> + ?Sized>(op: &O, x: &[R]) -> Result<Vec<R>> {
    let fx = op.evaluate(x)?;
    advance(IterationMethod::Newton, op, x, &fx).map(|a| a.next)
}

/// Fifth-order step: two factorizations, two evaluations.
pub fn step_fifth<R: Real, O: Operator<R> + ?Sized>(op: &O, x: &[R]) -> Result<Vec<R>> {
    let fx = op.evaluate(x)?;
    advance(IterationMethod::FifthOrder, op, x, &fx).map(|a| a.next)
}

/// Seventh-order step: two factorizations, three evaluations.
///
/// The record holds `x`, its sup-norm residual and the sub-iterates.
pub fn step_seventh<R: Real, O: Operator<R> + ?Sized>(op: &O, x: &[R]) -> Result<(Vec<R>, StepRecord<R>)> {
    let fx = op.evaluate(x)?;
    let a = advance(IterationMethod::SeventhOrder, op, x, &fx)?;
    let record = StepRecord {
        x: x.to_vec(),
        y: a.y,
        z1: a.z1,
        z2: a.z2,
        residual_norm: NormKind::Sup.norm(&fx),
        error_to_root: None,
    };
    Ok((a.next, record))
}

fn check_domain<R: Real, O: Operator<R> + ?Sized>(op: &O, x: &[R]) -> Result<()> {
    match op.domain() {
        Some(d) if !d.contains(x) => {
            Err(Error::Domain { what: "the operator's declared domain".into(), value: d.distance(x).to_f64() })
        }
        _ => Ok(()),
    }
}

/// Iterates from `x0` until the stopping rule holds or `max_iterations` steps
/// have been taken.
///
/// Running out of iterations is not an error here: the trace comes back with
/// `converged = false` (see [`IterationTrace::ensure_converged`]).
pub fn solve<R, O>(
    method: IterationMethod,
    op: &O,
    x0: &[R],
    x_star: Option<&[R]>,
    cfg: &SolveConfig,
) -> Result<IterationTrace<R>>
where
    R: Real,
    O: Operator<R> + ?Sized,
{
    cfg.validate()?;
    if x0.len() != op.dimension() {
        return Err(Error::Dimension { expected: op.dimension(), got: x0.len() });
    }
    if cfg.stop == StopRule::Error && x_star.is_none() {
        return Err(Error::MissingRoot);
    }
    check_domain(op, x0)?;

    let mut steps = Vec::new();
    let mut x = x0.to_vec();
    for k in 0..=cfg.max_iterations {
        let fx = op.evaluate(&x)?;
        let residual_norm = cfg.norm.norm(&fx);
        let error_to_root = x_star.map(|r| cfg.norm.distance(&x, r));
        let measure = match cfg.stop {
            StopRule::Residual => residual_norm.to_f64(),
            StopRule::Error => error_to_root.as_ref().map_or(f64::INFINITY, R::to_f64),
        };
        let done = measure <= cfg.residual_tol;
        if done || k == cfg.max_iterations {
            steps.push(StepRecord { x, y: None, z1: None, z2: None, residual_norm, error_to_root });
            return Ok(IterationTrace { steps, converged: done, method });
        }
        let a = advance(method, op, &x, &fx)?;
        check_domain(op, &a.next)?;
        steps.push(StepRecord { x, y: a.y, z1: a.z1, z2: a.z2, residual_norm, error_to_root });
        x = a.next;
    }
    unreachable!("the loop returns on its last pass")
}

/// Newton-polishes a stated root at the working precision of `root`.
///
/// Falls back to the stated value if the Jacobian is singular there or the
/// iteration wanders more than `1e-6·max(1, ‖root‖)` away.
pub fn refine_root<R: Real, O: Operator<R> + ?Sized>(op: &O, root: &[R]) -> Vec<R> {
    let scale = NormKind::Sup.norm(root).to_f64().max(1.0);
    let eps = root[0].epsilon().to_f64();
    let mut x = root.to_vec();
    for _ in 0..200 {
        let Ok(next) = step_newton(op, &x) else {
            return root.to_vec();
        };
        let delta = NormKind::Sup.distance(&next, &x).to_f64();
        x = next;
        if delta <= 4.0 * eps * scale {
            break;
        }
    }
    if NormKind::Sup.distance(&x, root).to_f64() > 1e-6 * scale {
        return root.to_vec();
    }
    x
}

/// Trace of a corpus or user problem at the configured precision.
#[derive(Debug, Clone)]
pub struct Solution<R> {
    pub trace: IterationTrace<R>,
    /// Known root refined to working precision.
    pub root: Option<Vec<R>>,
}

/// Lifts `x0` to `cfg.precision_digits`, refines the known root if any, and solves.
pub fn solve_spec<R: Real>(
    method: IterationMethod,
    spec: &OperatorSpec,
    x0: &[f64],
    cfg: &SolveConfig,
) -> Result<Solution<R>> {
    cfg.validate()?;
    let lift = |v: &[f64]| -> Vec<R> { v.iter().map(|&t| R::with_digits(t, cfg.precision_digits)).collect() };
    let root = spec.known_root().map(|r| refine_root(spec, &lift(r)));
    let trace = solve(method, spec, &lift(x0), root.as_deref(), cfg)?;
    Ok(Solution { trace, root })
}
