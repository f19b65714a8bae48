//! Scalar majorant functions, their smallest positive roots, and
//! convergence-radius reports.
//!
//! For a distance `a` from the root, the i-th majorant bounds the ratio
//! `‖s_i − x*‖ / ‖x_n − x*‖` for the i-th sub-iterate `s_i` of the
//! seventh-order scheme (`y_n`, `z_n^(1)`, `z_n^(2)`, `x_{n+1}`). The radius
//! `ρ_i` is the smallest `a > 0` at which that bound reaches 1.
//!
//! Two continuity classes are supported. Lipschitz constants `(ψ₀, ψ)` give
//! the majorants `η_i`; Hölder constants `(κ₀, κ, q)` give `μ_i`. The two
//! families are transcribed separately and agree at `q = 1`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ContinuityClass {
    Lipschitz,
    Hoelder,
}

impl std::fmt::Display for ContinuityClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ContinuityClass::Lipschitz => f.write_str("lipschitz"),
            ContinuityClass::Hoelder => f.write_str("hoelder"),
        }
    }
}

/// Center and full continuity constants of `[T'(x*)]⁻¹ T'`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContinuityConstants {
    class: ContinuityClass,
    center: f64,
    full: f64,
    q: f64,
}

impl ContinuityConstants {
    /// Lipschitz pair `ψ₀ ≤ ψ`.
    pub fn lipschitz(psi0: f64, psi: f64) -> Result<Self> {
        Self::validate(psi0, psi, 1.0)?;
        Ok(Self { class: ContinuityClass::Lipschitz, center: psi0, full: psi, q: 1.0 })
    }

    /// Hölder triple `κ₀ ≤ κ`, exponent `q ∈ (0, 1]`.
    pub fn hoelder(kappa0: f64, kappa: f64, q: f64) -> Result<Self> {
        Self::validate(kappa0, kappa, q)?;
        Ok(Self { class: ContinuityClass::Hoelder, center: kappa0, full: kappa, q })
    }

    pub fn new(class: ContinuityClass, center: f64, full: f64, q: f64) -> Result<Self> {
        match class {
            ContinuityClass::Lipschitz if q != 1.0 => {
                Err(Error::InvalidConstants(format!("Lipschitz constants have exponent 1, got q = {q}")))
            }
            ContinuityClass::Lipschitz => Self::lipschitz(center, full),
            ContinuityClass::Hoelder => Self::hoelder(center, full, q),
        }
    }

    fn validate(center: f64, full: f64, q: f64) -> Result<()> {
        if !(center.is_finite() && center > 0.0) {
            return Err(Error::InvalidConstants(format!("center constant must be positive, got {center}")));
        }
        if !(full.is_finite() && full > 0.0) {
            return Err(Error::InvalidConstants(format!("full constant must be positive, got {full}")));
        }
        if center > full {
            return Err(Error::InvalidConstants(format!("center constant {center} exceeds full constant {full}")));
        }
        if !(q > 0.0 && q <= 1.0) {
            return Err(Error::InvalidConstants(format!("exponent q must lie in (0, 1], got {q}")));
        }
        Ok(())
    }

    pub fn class(&self) -> ContinuityClass {
        self.class
    }

    /// `ψ₀` or `κ₀`.
    pub fn center(&self) -> f64 {
        self.center
    }

    /// `ψ` or `κ`.
    pub fn full(&self) -> f64 {
        self.full
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    /// Same constants scaled by `c > 0`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        Self::new(self.class, self.center * c, self.full * c, self.q)
    }
}

/// Selects `η_i` / `μ_i` and the matching gap function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct MajorantIndex(u8);

impl MajorantIndex {
    pub const ONE: Self = Self(1);
    pub const TWO: Self = Self(2);
    pub const THREE: Self = Self(3);
    pub const FOUR: Self = Self(4);
    pub const ALL: [Self; 4] = [Self::ONE, Self::TWO, Self::THREE, Self::FOUR];

    pub fn new(i: u8) -> Result<Self> {
        if (1..=4).contains(&i) {
            Ok(Self(i))
        } else {
            Err(Error::InvalidConfig(format!("majorant index must be 1..=4, got {i}")))
        }
    }

    pub fn get(self) -> usize {
        self.0 as usize
    }

    fn slot(self) -> usize {
        self.get() - 1
    }
}

impl TryFrom<u8> for MajorantIndex {
    type Error = Error;
    fn try_from(i: u8) -> Result<Self> {
        Self::new(i)
    }
}

impl From<MajorantIndex> for u8 {
    fn from(i: MajorantIndex) -> u8 {
        i.0
    }
}

/// Bracket-and-bisect settings for locating `ρ_i`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RootSearchConfig {
    pub grid_points: usize,
    pub abs_tol: f64,
    /// Relative shrink of the first search window away from the pole.
    pub domain_margin: f64,
}

impl Default for RootSearchConfig {
    fn default() -> Self {
        Self { grid_points: 10_000, abs_tol: 1e-12, domain_margin: 1e-9 }
    }
}

impl RootSearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.grid_points < 100 {
            return Err(Error::InvalidConfig(format!("grid_points must be at least 100, got {}", self.grid_points)));
        }
        if !(self.abs_tol > 0.0) {
            return Err(Error::InvalidConfig(format!("abs_tol must be positive, got {}", self.abs_tol)));
        }
        if !(self.domain_margin > 0.0 && self.domain_margin < 1.0) {
            return Err(Error::InvalidConfig(format!("domain_margin must lie in (0, 1), got {}", self.domain_margin)));
        }
        Ok(())
    }
}

/// `1/ψ₀` for Lipschitz, `(1/κ₀)^{1/q}` for Hölder.
pub fn domain_limit(c: &ContinuityConstants) -> f64 {
    match c.class {
        ContinuityClass::Lipschitz => 1.0 / c.center,
        ContinuityClass::Hoelder => (1.0 / c.center).powf(1.0 / c.q),
    }
}

/// Closed-form root of the first gap function.
pub fn rho1_closed_form(c: &ContinuityConstants) -> f64 {
    match c.class {
        ContinuityClass::Lipschitz => 2.0 / (2.0 * c.full + 5.0 * c.center),
        ContinuityClass::Hoelder => {
            let q = c.q;
            ((q + 1.0) / (2.0 * c.full + c.center * (3.0 + 2.0 * q))).powf(1.0 / q)
        }
    }
}

fn positive(denominator: f64, what: &str, a: f64) -> Result<f64> {
    if denominator > 0.0 && denominator.is_finite() {
        Ok(denominator)
    } else {
        Err(Error::Domain { what: what.to_string(), value: a })
    }
}

/// Values of `p` and the first `count` majorants at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Majorants {
    p: f64,
    values: [f64; 4],
}

fn lipschitz_majorants(psi0: f64, psi: f64, a: f64, count: usize) -> Result<Majorants> {
    let d0 = positive(1.0 - psi0 * a, "1 - psi0 a", a)?;
    let eta1 = (psi * a / 2.0 + (1.0 + psi0 / 2.0 * a) / 2.0) / d0;
    let p = psi0 * eta1 * a;
    let mut values = [eta1, 0.0, 0.0, 0.0];
    if count == 1 {
        return Ok(Majorants { p, values });
    }
    let dp = positive(1.0 - p, "1 - p(a)", a)?;
    values[1] = (psi * a / 2.0 + psi * (1.0 + eta1) * (psi0 / 2.0 * a + 1.0) * a / dp) / d0;

    // η₃ from η₂, η₄ from η₃: identical shape with the previous majorant.
    for k in 2..count {
        let prev = values[k - 1];
        let pa = prev * a;
        let dprev = positive(1.0 - psi0 * pa, "1 - psi0 eta a", a)?;
        let g = 1.0 + psi0 / 2.0 * pa;
        let t1 = psi * pa / (2.0 * dprev);
        let t2 = psi * (eta1 + prev) * a / dprev * (g / dp);
        // ψ[a + η₁(a)a] written as ψ(1 + η₁(a))a.
        let t3 = 1.0 / d0 * (psi * (1.0 + eta1) * a / dp) * g;
        values[k] = (t1 + t2 + t3) * prev;
    }
    Ok(Majorants { p, values })
}

fn hoelder_majorants(kappa0: f64, kappa: f64, q: f64, a: f64, count: usize) -> Result<Majorants> {
    let aq = a.powf(q);
    let q1 = q + 1.0;
    let d0 = positive(1.0 - kappa0 * aq, "1 - kappa0 a^q", a)?;
    let mu1 = (kappa * aq / q1 + (1.0 + kappa0 / q1 * aq) / 2.0) / d0;
    let mu1q = mu1.powf(q);
    let p = kappa0 * mu1q * aq;
    let mut values = [mu1, 0.0, 0.0, 0.0];
    if count == 1 {
        return Ok(Majorants { p, values });
    }
    let dp = positive(1.0 - p, "1 - p(a)", a)?;
    values[1] = (kappa * aq / q1 + kappa * (1.0 + mu1q) * (kappa0 / q1 * aq + 1.0) * aq / dp) / d0;

    for k in 2..count {
        let prev = values[k - 1];
        let prevq = prev.powf(q);
        let pa = prevq * aq;
        let dprev = positive(1.0 - kappa0 * pa, "1 - kappa0 mu^q a^q", a)?;
        let g = 1.0 + kappa0 / q1 * pa;
        let t1 = kappa * pa / (q1 * dprev);
        let t2 = kappa * (mu1q + prevq) * aq / dprev * (g / dp);
        let t3 = 1.0 / d0 * (kappa * (1.0 + mu1q) * aq / dp) * g;
        values[k] = (t1 + t2 + t3) * prev;
    }
    Ok(Majorants { p, values })
}

fn majorants(c: &ContinuityConstants, a: f64, count: usize) -> Result<Majorants> {
    if !(a >= 0.0 && a.is_finite()) {
        return Err(Error::Domain { what: "nonnegative distance".into(), value: a });
    }
    match c.class {
        ContinuityClass::Lipschitz => lipschitz_majorants(c.center, c.full, a, count),
        ContinuityClass::Hoelder => hoelder_majorants(c.center, c.full, c.q, a, count),
    }
}

/// `p(a) = ψ₀η₁(a)a` or `κ₀μ₁(a)^q a^q`.
pub fn eval_p(c: &ContinuityConstants, a: f64) -> Result<f64> {
    majorants(c, a, 1).map(|m| m.p)
}

/// `η_i(a)` or `μ_i(a)`.
pub fn eval_majorant(c: &ContinuityConstants, i: MajorantIndex, a: f64) -> Result<f64> {
    majorants(c, a, i.get()).map(|m| m.values[i.slot()])
}

/// All four majorants at `a`, failing if any denominator is nonpositive.
pub fn eval_all(c: &ContinuityConstants, a: f64) -> Result<[f64; 4]> {
    majorants(c, a, 4).map(|m| m.values)
}

/// `H_i(a) = η_i(a) − 1` or `M_i(a) = μ_i(a) − 1`.
pub fn eval_gap(c: &ContinuityConstants, i: MajorantIndex, a: f64) -> Result<f64> {
    eval_majorant(c, i, a).map(|v| v - 1.0)
}

/// Sign of the gap for bracketing; undefined points count as positive.
fn gap_negative(c: &ContinuityConstants, i: MajorantIndex, a: f64) -> bool {
    matches!(eval_gap(c, i, a), Ok(g) if g < 0.0)
}

/// Leftmost sign change of the i-th gap on `(0, search_upper]`, bisected to
/// width `abs_tol·min(1, ρ)`.
pub fn smallest_positive_root(
    c: &ContinuityConstants,
    i: MajorantIndex,
    search_upper: f64,
    cfg: &RootSearchConfig,
) -> Result<f64> {
    cfg.validate()?;
    let limit = domain_limit(c) * (1.0 - cfg.domain_margin);
    if !(search_upper > 0.0) || search_upper > limit {
        return Err(Error::InvalidConfig(format!("search upper limit {search_upper} must lie in (0, {limit}]")));
    }
    if !gap_negative(c, i, 0.0) {
        return Err(Error::NoRoot { index: i.get(), upper: search_upper });
    }

    let n = cfg.grid_points;
    let mut lo = 0.0;
    let mut hi = None;
    for j in 1..=n {
        let a = search_upper * j as f64 / n as f64;
        if gap_negative(c, i, a) {
            lo = a;
        } else {
            hi = Some(a);
            break;
        }
    }
    let mut hi = hi.ok_or(Error::NoRoot { index: i.get(), upper: search_upper })?;

    // Relative below 1, so tiny Hoelder radii are resolved as finely as large ones.
    while hi - lo > cfg.abs_tol * hi.min(1.0) {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if gap_negative(c, i, mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Radii `ρ₁..ρ₄`, the convergence radius and the uniqueness bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadiusReport {
    pub rho: [f64; 4],
    pub rho_min: f64,
    /// Supremum of radii on which the root is unique.
    pub uniqueness_sup: f64,
    /// Whether `uniqueness_sup` itself is admissible.
    pub uniqueness_closed: bool,
    pub domain_limit: f64,
    pub constants: ContinuityConstants,
}

impl RadiusReport {
    pub fn rho(&self, i: MajorantIndex) -> f64 {
        self.rho[i.slot()]
    }

    /// Checks `0 < ρ₄ ≤ ρ₃ ≤ ρ₂ ≤ ρ₁ < domain_limit` and the other report invariants.
    pub fn is_consistent(&self) -> bool {
        let [r1, r2, r3, r4] = self.rho;
        let min = self.rho.iter().copied().fold(f64::INFINITY, f64::min);
        0.0 < r4
            && r4 <= r3
            && r3 <= r2
            && r2 <= r1
            && r1 < self.domain_limit
            && self.rho_min == min
            && self.rho_min <= self.uniqueness_sup
    }
}

/// Builds the report: `ρ₁` in closed form, then each `ρ_i` searched on `(0, ρ_{i−1}]`.
pub fn radius_report(c: &ContinuityConstants, cfg: &RootSearchConfig) -> Result<RadiusReport> {
    cfg.validate()?;
    let limit = domain_limit(c);
    let mut rho = [rho1_closed_form(c), 0.0, 0.0, 0.0];
    for i in &MajorantIndex::ALL[1..] {
        rho[i.slot()] = smallest_positive_root(c, *i, rho[i.slot() - 1], cfg)?;
    }
    let rho_min = rho.iter().copied().fold(f64::INFINITY, f64::min);
    let (uniqueness_sup, uniqueness_closed) = match c.class {
        ContinuityClass::Lipschitz => (limit, false),
        ContinuityClass::Hoelder => (((1.0 + c.q) / c.center).powf(1.0 / c.q), true),
    };
    Ok(RadiusReport { rho, rho_min, uniqueness_sup, uniqueness_closed, domain_limit: limit, constants: *c })
}

/// Bounds on `‖T'(x*)⁻¹T'(x)‖`, `‖T'(x*)⁻¹T'(x* + t(x−x*))‖` and
/// `‖T'(x*)⁻¹T(x)‖` at distance `dist` from the root.
pub fn hoelder_bounds(c: &ContinuityConstants, dist: f64, t: f64) -> (f64, f64, f64) {
    let k0 = c.center;
    let q = c.q;
    let dq = dist.powf(q);
    let b1 = 1.0 + k0 * dq;
    let b2 = 1.0 + k0 * t.powf(q) * dq;
    let b3 = (1.0 + k0 / (q + 1.0) * dq) * dist;
    (b1, b2, b3)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lip(a: f64, b: f64) -> ContinuityConstants {
        ContinuityConstants::lipschitz(a, b).unwrap()
    }

    fn hol(a: f64, b: f64, q: f64) -> ContinuityConstants {
        ContinuityConstants::hoelder(a, b, q).unwrap()
    }

    const EX41: f64 = 96.6628;

    fn ex43() -> f64 {
        (2.5 * 2f64.sqrt() + 1.0) / 8.0
    }

    #[test]
    fn constants_validation() {
        assert!(ContinuityConstants::lipschitz(2.0, 1.0).is_err());
        assert!(ContinuityConstants::lipschitz(0.0, 1.0).is_err());
        assert!(ContinuityConstants::hoelder(1.0, 1.0, 0.0).is_err());
        assert!(ContinuityConstants::hoelder(1.0, 1.0, 1.5).is_err());
        assert!(ContinuityConstants::new(ContinuityClass::Lipschitz, 1.0, 1.0, 0.5).is_err());
        assert!(ContinuityConstants::hoelder(1.0, 2.0, 0.5).is_ok());
        assert!(MajorantIndex::new(0).is_err());
        assert!(MajorantIndex::new(5).is_err());
    }

    #[test]
    fn domain_limit_examples() {
        assert_eq!(domain_limit(&lip(1.0, 1.0)), 1.0);
        assert!((domain_limit(&hol(4.0, 4.0, 0.5)) - 0.0625).abs() < 1e-15);
        assert!((domain_limit(&lip(EX41, EX41)) - 1.0 / EX41).abs() < 1e-18);
        assert!((domain_limit(&lip(EX41, EX41)) - 0.0103452).abs() < 1e-7);
    }

    #[test]
    fn p_examples() {
        assert_eq!(eval_p(&lip(1.0, 1.0), 0.0).unwrap(), 0.0);
        assert!((eval_p(&lip(1.0, 1.0), 0.2).unwrap() - 0.1625).abs() < 1e-15);
        assert!((eval_p(&hol(1.0, 1.0, 1.0), 0.2).unwrap() - 0.1625).abs() < 1e-15);
    }

    #[test]
    fn majorant_examples() {
        assert_eq!(eval_majorant(&lip(1.0, 1.0), MajorantIndex::ONE, 0.0).unwrap(), 0.5);
        let c = lip(EX41, EX41);
        let at_rho1 = eval_majorant(&c, MajorantIndex::ONE, 0.00295578).unwrap();
        assert!((at_rho1 - 1.0).abs() < 1e-4, "{at_rho1}");
        // (0.0966628 + 1.0483314) / 2 / (1 - 0.0966628)
        let hand = (0.0966628 / 2.0 + (1.0 + 0.0483314) / 2.0) / (1.0 - 0.0966628);
        let v = eval_majorant(&c, MajorantIndex::ONE, 0.001).unwrap();
        assert!((v - hand).abs() < 1e-14);
        assert!((v - 0.63376).abs() < 1e-5);
        let h = hol(EX41, EX41, 1.0);
        let l3 = eval_majorant(&c, MajorantIndex::THREE, 0.001).unwrap();
        let h3 = eval_majorant(&h, MajorantIndex::THREE, 0.001).unwrap();
        assert!((l3 - h3).abs() < 1e-12);
    }

    #[test]
    fn gap_examples() {
        let c = lip(1.0, 1.0);
        assert_eq!(eval_gap(&c, MajorantIndex::ONE, 0.0).unwrap(), -0.5);
        assert_eq!(eval_gap(&c, MajorantIndex::TWO, 0.0).unwrap(), -1.0);
        let g = eval_gap(&lip(EX41, EX41), MajorantIndex::ONE, 0.00295578).unwrap();
        assert!(g.abs() < 1e-4);
    }

    #[test]
    fn pole_is_domain_error() {
        let c = lip(1.0, 1.0);
        assert!(matches!(eval_majorant(&c, MajorantIndex::ONE, 1.0), Err(Error::Domain { .. })));
        assert!(eval_p(&c, 1.5).is_err());
        assert!(eval_majorant(&c, MajorantIndex::ONE, -0.1).is_err());
    }

    #[test]
    fn literal_and_factored_third_term_agree() {
        // ψ[a + η₁a] vs ψ(1 + η₁)a for the term shared by η₃ and η₄.
        let (psi0, psi) = (0.7, 1.3);
        for k in 1..50 {
            let a = 0.3 * k as f64 / 50.0;
            let eta1 = eval_majorant(&lip(psi0, psi), MajorantIndex::ONE, a).unwrap();
            let literal = psi * (a + eta1 * a);
            let factored = psi * (1.0 + eta1) * a;
            assert!((literal - factored).abs() <= 1e-15 * literal.abs().max(1.0));
        }
    }

    #[test]
    fn closed_form_rho1() {
        assert!((rho1_closed_form(&lip(1.0, 1.0)) - 2.0 / 7.0).abs() < 1e-15);
        let r = rho1_closed_form(&lip(EX41, EX41));
        assert!((r / 0.00295578 - 1.0).abs() < 1e-5);
        let r = rho1_closed_form(&hol(0.0608658, 0.094888, 1.0));
        assert!((r / 4.04772 - 1.0).abs() < 1e-5);
        let r = rho1_closed_form(&hol(ex43(), ex43(), 1.0));
        assert!((r / 0.503957 - 1.0).abs() < 1e-5);
        for c in [lip(0.3, 2.0), hol(0.5, 0.9, 0.4)] {
            assert!(rho1_closed_form(&c) < domain_limit(&c));
        }
    }

    #[test]
    fn root_search_examples() {
        let cfg = RootSearchConfig::default();
        let c = lip(EX41, EX41);
        let r2 = smallest_positive_root(&c, MajorantIndex::TWO, rho1_closed_form(&c), &cfg).unwrap();
        assert!((r2 / 0.00246894 - 1.0).abs() < 0.01);

        let c = lip(1.0, 1.0);
        let upper = domain_limit(&c) * (1.0 - cfg.domain_margin);
        let r1 = smallest_positive_root(&c, MajorantIndex::ONE, upper, &cfg).unwrap();
        assert!((r1 - 2.0 / 7.0).abs() <= cfg.abs_tol);
    }

    #[test]
    fn root_search_rejects_window_past_pole() {
        let c = lip(1.0, 1.0);
        let cfg = RootSearchConfig::default();
        assert!(smallest_positive_root(&c, MajorantIndex::ONE, 1.0, &cfg).is_err());
        let bad = RootSearchConfig { grid_points: 10, ..cfg };
        assert!(smallest_positive_root(&c, MajorantIndex::ONE, 0.5, &bad).is_err());
    }

    #[test]
    fn no_sign_change_is_no_root() {
        let c = lip(1.0, 1.0);
        let cfg = RootSearchConfig::default();
        // η₂ stays below 1 on a tiny window.
        let err = smallest_positive_root(&c, MajorantIndex::TWO, 1e-3, &cfg).unwrap_err();
        assert_eq!(err, Error::NoRoot { index: 2, upper: 1e-3 });
    }

    #[test]
    fn report_tables_one_and_two() {
        let cfg = RootSearchConfig::default();
        let r = radius_report(&lip(EX41, EX41), &cfg).unwrap();
        assert!(r.is_consistent());
        assert!((r.rho_min / 0.00208131 - 1.0).abs() < 0.01);
        assert!(!r.uniqueness_closed);
        assert_eq!(r.uniqueness_sup, r.domain_limit);

        let r = radius_report(&hol(0.0608658, 0.094888, 1.0), &cfg).unwrap();
        assert!(r.is_consistent());
        assert!((r.rho_min / 2.45972 - 1.0).abs() < 0.01);
        assert!(r.uniqueness_closed);
        assert!((r.uniqueness_sup - 2.0 / 0.0608658).abs() < 1e-9);
    }

    #[test]
    fn lipschitz_and_unit_hoelder_reports_share_radii() {
        let cfg = RootSearchConfig::default();
        let l = radius_report(&lip(1.0, 1.0), &cfg).unwrap();
        let h = radius_report(&hol(1.0, 1.0, 1.0), &cfg).unwrap();
        for (a, b) in l.rho.iter().zip(h.rho) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!((l.rho_min - h.rho_min).abs() < 1e-12);
        assert!((l.domain_limit - h.domain_limit).abs() < 1e-12);
    }

    #[test]
    fn hoelder_bounds_examples() {
        assert_eq!(hoelder_bounds(&hol(1.0, 1.0, 1.0), 0.0, 0.5), (1.0, 1.0, 0.0));
        let (b1, b2, b3) = hoelder_bounds(&hol(1.0, 1.0, 1.0), 0.5, 1.0);
        assert_eq!((b1, b2), (1.5, 1.5));
        assert!((b3 - 0.625).abs() < 1e-15);
        let (b1, b2, b3) = hoelder_bounds(&hol(4.0, 4.0, 0.5), 0.25, 0.0);
        assert!((b1 - 3.0).abs() < 1e-15);
        assert_eq!(b2, 1.0);
        assert!((b3 - 0.25 * (1.0 + 4.0 / 1.5 * 0.5)).abs() < 1e-15);
        // Lipschitz constants use exponent 1.
        let (b1, _, _) = hoelder_bounds(&lip(2.0, 3.0), 0.25, 1.0);
        assert_eq!(b1, 1.5);
    }
}
