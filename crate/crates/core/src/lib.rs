//! Multi-step root finding for `T(x) = 0` with local convergence analysis.
//!
//! * [`majorant`]: majorant functions under Lipschitz and Hölder continuity,
//!   their smallest positive roots and convergence-radius reports.
//! * [`solvers`]: Newton, fifth-order and seventh-order iterations, order
//!   estimation and per-step error-bound verification.
//! * [`problems`]: built-in operators, a Nyström-discretized Hammerstein
//!   equation, parsed user systems and sampled continuity constants.
//!
//! Iterations are generic over [`Real`], so the same code runs on `f64` and on
//! the extended-precision [`BigReal`].

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod linalg;
pub mod majorant;
pub mod problems;
pub mod real;
pub mod solvers;

pub use error::{Error, Result, Stage};
pub use linalg::{Matrix, NormKind};
pub use majorant::{ContinuityClass, ContinuityConstants, MajorantIndex, RadiusReport, RootSearchConfig};
pub use problems::{Operator, OperatorSpec};
pub use real::{BigReal, Real};
pub use solvers::{IterationMethod, IterationTrace, SolveConfig, StepRecord};
