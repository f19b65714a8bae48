//! Operators `T: ℝⁿ → ℝⁿ` with Jacobians: the worked examples, the
//! Nyström-discretized Hammerstein equation, parsed user systems, and affine
//! test maps.

mod estimate;
pub mod expr;
mod file;
mod quadrature;

pub use estimate::{estimate_constants, ConstantEstimate};
pub use expr::ParsedSystem;
pub use file::ProblemFile;
pub use quadrature::{gauss_legendre_rule, QuadratureRule};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, NormKind};
use crate::real::Real;

/// Anything the iterations can run on.
pub trait Operator<R: Real> {
    fn dimension(&self) -> usize;
    fn evaluate(&self, x: &[R]) -> Result<Vec<R>>;
    fn jacobian(&self, x: &[R]) -> Result<Matrix<R>>;

    /// Region the iterates must stay in; `None` means unrestricted.
    fn domain(&self) -> Option<&Domain> {
        None
    }
}

/// Sup-norm ball; `radius = None` is the whole space.
#[derive(Debug, Clone, PartialEq)]
pub struct Domain {
    pub center: Vec<f64>,
    pub radius: Option<f64>,
}

impl Domain {
    pub fn unbounded(dim: usize) -> Self {
        Self { center: vec![0.0; dim], radius: None }
    }

    pub fn ball(center: Vec<f64>, radius: f64) -> Self {
        Self { center, radius: Some(radius) }
    }

    /// Sup-norm distance from the center, in working precision.
    pub fn distance<R: Real>(&self, x: &[R]) -> R {
        let c: Vec<R> = self.center.iter().map(|&v| x[0].lift(v)).collect();
        NormKind::Sup.distance(x, &c)
    }

    pub fn contains<R: Real>(&self, x: &[R]) -> bool {
        match self.radius {
            None => x.iter().all(R::is_finite),
            Some(r) => {
                let d = self.distance(x);
                d.is_finite() && d.to_f64() <= r
            }
        }
    }
}

/// Nyström discretization data: `kernel[i][j] = w_j G(s_i, s_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Hammerstein {
    pub rule: QuadratureRule,
    kernel: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
enum Kind {
    LogPoly,
    Planck,
    Hammerstein(Hammerstein),
    Parsed(ParsedSystem),
    Affine { a: Matrix<f64>, b: Vec<f64> },
}

/// An operator with its optional known root and declared domain.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorSpec {
    name: String,
    dimension: usize,
    kind: Kind,
    known_root: Option<Vec<f64>>,
    domain: Domain,
}

impl OperatorSpec {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn known_root(&self) -> Option<&[f64]> {
        self.known_root.as_deref()
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn with_known_root(mut self, root: Vec<f64>) -> Result<Self> {
        self.check_dim(root.len())?;
        self.known_root = Some(root);
        Ok(self)
    }

    pub fn with_domain(mut self, domain: Domain) -> Result<Self> {
        self.check_dim(domain.center.len())?;
        self.domain = domain;
        Ok(self)
    }

    pub fn hammerstein_data(&self) -> Option<&Hammerstein> {
        match &self.kind {
            Kind::Hammerstein(h) => Some(h),
            _ => None,
        }
    }

    fn check_dim(&self, got: usize) -> Result<()> {
        if got == self.dimension {
            Ok(())
        } else {
            Err(Error::Dimension { expected: self.dimension, got })
        }
    }

    /// User system from `"e1; e2; ..."` over `x1..xn`.
    pub fn parsed(source: &str) -> Result<Self> {
        Ok(Self::from_system(ParsedSystem::parse(source)?, "parsed"))
    }

    pub fn from_system(system: ParsedSystem, name: &str) -> Self {
        let n = system.dimension();
        Self {
            name: name.to_string(),
            dimension: n,
            kind: Kind::Parsed(system),
            known_root: None,
            domain: Domain::unbounded(n),
        }
    }

    /// `F(x) = A x − b`.
    pub fn affine(a: Matrix<f64>, b: Vec<f64>) -> Result<Self> {
        let n = b.len();
        if a.rows() != n || a.cols() != n {
            return Err(Error::Dimension { expected: n, got: a.rows() });
        }
        Ok(Self {
            name: "affine".into(),
            dimension: n,
            kind: Kind::Affine { a, b },
            known_root: None,
            domain: Domain::unbounded(n),
        })
    }
}

/// `f(x) = x³ log(x²) + x⁵ − x⁴` on `[−1/2, 5/2]`, root 1.
pub fn logpoly_problem() -> OperatorSpec {
    OperatorSpec {
        name: "logpoly".into(),
        dimension: 1,
        kind: Kind::LogPoly,
        known_root: Some(vec![1.0]),
        domain: Domain::ball(vec![1.0], 1.5),
    }
}

/// Wien displacement equation `f(x) = e^{−x} − 1 + x/5`.
pub fn planck_problem() -> OperatorSpec {
    OperatorSpec {
        name: "planck".into(),
        dimension: 1,
        kind: Kind::Planck,
        known_root: Some(vec![4.965114]),
        domain: Domain::unbounded(1),
    }
}

/// Green's function of `-u''` with homogeneous boundary values on `[0, 1]`.
pub fn green_kernel(s: f64, t: f64) -> f64 {
    if t <= s {
        (1.0 - s) * t
    } else {
        s * (1.0 - t)
    }
}

/// Nyström discretization of
/// `T(x)(s) = x(s) − ∫₀¹ G(s,t) (x(t)^{5/2} + x(t)²/2) dt` on the rule's nodes.
///
/// Negative iterates use the odd extension `sign(t)|t|^{5/2}`.
pub fn hammerstein_problem(n: usize, rule: QuadratureRule) -> Result<OperatorSpec> {
    if n < 2 {
        return Err(Error::InvalidConfig(format!("Hammerstein discretization needs n >= 2, got {n}")));
    }
    if rule.len() != n {
        return Err(Error::Dimension { expected: n, got: rule.len() });
    }
    let mut kernel = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            kernel.push(rule.weights[j] * green_kernel(rule.nodes[i], rule.nodes[j]));
        }
    }
    Ok(OperatorSpec {
        name: "hammerstein".into(),
        dimension: n,
        kind: Kind::Hammerstein(Hammerstein { rule, kernel }),
        known_root: Some(vec![0.0; n]),
        domain: Domain::ball(vec![0.0; n], 1.0),
    })
}

impl Hammerstein {
    pub fn kernel(&self, i: usize, j: usize) -> f64 {
        self.kernel[i * self.rule.len() + j]
    }
}

/// `sign(t)|t|^{5/2}`
fn pow52<R: Real>(t: &R) -> R {
    let a = t.abs();
    let v = a.clone() * a.clone() * a.sqrt();
    if *t < t.zero_like() {
        -v
    } else {
        v
    }
}

/// `|t|^{3/2}`
fn pow32<R: Real>(t: &R) -> R {
    let a = t.abs();
    a.clone() * a.sqrt()
}

fn logpoly_value<R: Real>(x: &R) -> R {
    if x.is_zero() {
        return x.zero_like();
    }
    let x2 = x.clone() * x.clone();
    let x3 = x2.clone() * x.clone();
    let x4 = x2.clone() * x2.clone();
    x3 * x2.ln() + x4.clone() * x.clone() - x4
}

fn logpoly_derivative<R: Real>(x: &R) -> R {
    if x.is_zero() {
        return x.zero_like();
    }
    let x2 = x.clone() * x.clone();
    let x3 = x2.clone() * x.clone();
    let x4 = x2.clone() * x2.clone();
    x.lift(3.0) * x2.clone() * x2.ln() + x.lift(5.0) * x4 - x.lift(4.0) * x3 + x.lift(2.0) * x2
}

fn finite<R: Real>(v: Vec<R>, what: &str) -> Result<Vec<R>> {
    match v.iter().find(|x| !x.is_finite()) {
        Some(bad) => Err(Error::EvalDomain { function: what.into(), value: bad.to_f64() }),
        None => Ok(v),
    }
}

impl<R: Real> Operator<R> for OperatorSpec {
    fn dimension(&self) -> usize {
        self.dimension
    }

    fn domain(&self) -> Option<&Domain> {
        Some(&self.domain)
    }

    fn evaluate(&self, x: &[R]) -> Result<Vec<R>> {
        self.check_dim(x.len())?;
        let out = match &self.kind {
            Kind::LogPoly => vec![logpoly_value(&x[0])],
            Kind::Planck => {
                let t = &x[0];
                vec![(-t.clone()).exp() - t.lift(1.0) + t.clone() / t.lift(5.0)]
            }
            Kind::Hammerstein(h) => {
                let n = self.dimension;
                let nonlinear: Vec<R> = x.iter().map(|t| pow52(t) + t.clone() * t.clone() / t.lift(2.0)).collect();
                (0..n)
                    .map(|i| {
                        let integral = (0..n)
                            .fold(x[0].zero_like(), |acc, j| acc + x[0].lift(h.kernel(i, j)) * nonlinear[j].clone());
                        x[i].clone() - integral
                    })
                    .collect()
            }
            Kind::Parsed(sys) => sys.evaluate(x)?,
            Kind::Affine { a, b } => {
                let a = a.map(|v| x[0].lift(*v));
                a.mul_vec(x).into_iter().zip(b).map(|(ax, bi)| ax.clone() - ax.lift(*bi)).collect()
            }
        };
        finite(out, &self.name)
    }

    fn jacobian(&self, x: &[R]) -> Result<Matrix<R>> {
        self.check_dim(x.len())?;
        let jac = match &self.kind {
            Kind::LogPoly => Matrix::from_rows(1, 1, vec![logpoly_derivative(&x[0])]),
            Kind::Planck => {
                let t = &x[0];
                Matrix::from_rows(1, 1, vec![-(-t.clone()).exp() + t.lift(1.0) / t.lift(5.0)])
            }
            Kind::Hammerstein(h) => {
                let n = self.dimension;
                let deriv: Vec<R> = x.iter().map(|t| t.lift(2.5) * pow32(t) + t.clone()).collect();
                Matrix::from_fn(n, n, |i, j| {
                    let delta = x[0].lift(if i == j { 1.0 } else { 0.0 });
                    delta - x[0].lift(h.kernel(i, j)) * deriv[j].clone()
                })
            }
            Kind::Parsed(sys) => sys.jacobian(x)?,
            Kind::Affine { a, .. } => a.map(|v| x[0].lift(*v)),
        };
        for i in 0..jac.rows() {
            finite(jac.row(i).to_vec(), &self.name)?;
        }
        Ok(jac)
    }
}
