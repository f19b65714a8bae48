use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Operator, OperatorSpec};
use crate::error::{Error, Result};
use crate::linalg::{Lu, NormKind};

/// Sampled continuity constants of `[T'(x*)]⁻¹ T'` on a ball around `x*`.
///
/// Both values are maxima over a finite sample, hence lower bounds of the
/// true suprema.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantEstimate {
    pub kappa0_hat: f64,
    pub kappa_hat: f64,
    pub q: f64,
    pub samples: usize,
    pub ball_radius: f64,
}

/// Draws `samples` pairs uniformly from the sup-norm ball of `ball_radius`
/// around the known root and maximizes
/// `‖T'(x*)⁻¹(T'(x) − T'(y))‖ / ‖x − y‖^q` (induced sup-norm).
///
/// The center constant anchors `y = x*`. Pairs `(x, x*)` also enter the
/// full-constant maximum, so `kappa0_hat ≤ kappa_hat` always.
pub fn estimate_constants(
    op: &OperatorSpec,
    q: f64,
    ball_radius: f64,
    samples: usize,
    seed: u64,
) -> Result<ConstantEstimate> {
    if !(q > 0.0 && q <= 1.0) {
        return Err(Error::InvalidConfig(format!("exponent q must lie in (0, 1], got {q}")));
    }
    if !(ball_radius > 0.0 && ball_radius.is_finite()) {
        return Err(Error::InvalidConfig(format!("ball radius must be positive, got {ball_radius}")));
    }
    if samples == 0 {
        return Err(Error::InvalidConfig("at least one sample is required".into()));
    }
    let root = op.known_root().ok_or(Error::MissingRoot)?.to_vec();
    let j_star = Operator::<f64>::jacobian(op, &root)?;
    let lu = Lu::factor(&j_star).map_err(|_| Error::SingularJacobian { stage: crate::error::Stage::Base })?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| -> Vec<f64> {
        root.iter().map(|c| c + ball_radius * rng.gen_range(-1.0..=1.0)).collect()
    };

    let ratio = |x: &[f64], y: &[f64], jy: &crate::linalg::Matrix<f64>| -> Result<Option<f64>> {
        let dist = NormKind::Sup.distance(x, y);
        if dist == 0.0 {
            return Ok(None);
        }
        let jx = Operator::<f64>::jacobian(op, x)?;
        let scaled = lu.solve_matrix(&jx.sub(jy));
        Ok(Some(scaled.sup_norm() / dist.powf(q)))
    };

    let mut center: f64 = 0.0;
    let mut full: f64 = 0.0;
    for _ in 0..samples {
        let x = draw(&mut rng);
        let y = draw(&mut rng);
        if let Some(r) = ratio(&x, &root, &j_star)? {
            center = center.max(r);
        }
        let jy = Operator::<f64>::jacobian(op, &y)?;
        if let Some(r) = ratio(&x, &y, &jy)? {
            full = full.max(r);
        }
    }
    Ok(ConstantEstimate { kappa0_hat: center, kappa_hat: full.max(center), q, samples, ball_radius })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::{planck_problem, OperatorSpec};

    #[test]
    fn affine_has_zero_constants() {
        let a = crate::linalg::Matrix::from_rows(2, 2, vec![2.0, 1.0, 1.0, 3.0]);
        let op = OperatorSpec::affine(a, vec![1.0, 0.0]).unwrap().with_known_root(vec![0.2, -0.4]).unwrap();
        let est = estimate_constants(&op, 1.0, 1.0, 200, 3).unwrap();
        assert_eq!((est.kappa0_hat, est.kappa_hat), (0.0, 0.0));
    }

    #[test]
    fn square_has_unit_constant() {
        let op = OperatorSpec::parsed("x1^2 - 1").unwrap().with_known_root(vec![1.0]).unwrap();
        let est = estimate_constants(&op, 1.0, 0.5, 2000, 11).unwrap();
        assert!((est.kappa_hat - 1.0).abs() < 0.05);
        assert!((est.kappa0_hat - 1.0).abs() < 0.05);
        assert!(est.kappa_hat <= 1.0 + 1e-15);
    }

    #[test]
    fn deterministic_for_seed_and_monotone_in_samples() {
        let op = planck_problem();
        let a = estimate_constants(&op, 1.0, 1.0, 300, 7).unwrap();
        let b = estimate_constants(&op, 1.0, 1.0, 300, 7).unwrap();
        assert_eq!(a, b);
        let mut prev = (0.0, 0.0);
        for n in [1, 10, 50, 300, 1000] {
            let e = estimate_constants(&op, 1.0, 1.0, n, 7).unwrap();
            assert!(e.kappa0_hat >= prev.0 && e.kappa_hat >= prev.1);
            assert!(e.kappa0_hat <= e.kappa_hat);
            prev = (e.kappa0_hat, e.kappa_hat);
        }
    }

    #[test]
    fn requires_known_root() {
        let op = OperatorSpec::parsed("x1^2 - 1").unwrap();
        assert_eq!(estimate_constants(&op, 1.0, 1.0, 10, 0).unwrap_err(), Error::MissingRoot);
    }

    #[test]
    fn singular_jacobian_at_root() {
        let op = OperatorSpec::parsed("x1^2").unwrap().with_known_root(vec![0.0]).unwrap();
        assert!(matches!(estimate_constants(&op, 1.0, 1.0, 10, 0), Err(Error::SingularJacobian { .. })));
    }
}
