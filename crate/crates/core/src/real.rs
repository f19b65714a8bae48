//! Real-number contract used by the iteration code.
//!
//! Iterations run either on native `f64` or on [`BigReal`], a software
//! floating-point type backed by `astro-float`. High-order methods exhaust
//! double precision after one or two steps, so measuring their order
//! requires the extended backend.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, RoundingMode};

/// Significant decimal digits of native double precision.
pub const DOUBLE_DIGITS: u32 = 16;

pub trait Real:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Builds a value carrying `digits` significant decimal digits.
    fn with_digits(v: f64, digits: u32) -> Self;

    /// Converts `v` to a value with the same precision as `self`.
    fn lift(&self, v: f64) -> Self;

    fn to_f64(&self) -> f64;
    fn digits(&self) -> u32;

    /// Relative spacing of representable numbers near 1.
    fn epsilon(&self) -> Self;

    fn abs(&self) -> Self;
    fn sqrt(&self) -> Self;
    fn exp(&self) -> Self;
    fn ln(&self) -> Self;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn powi(&self, n: i32) -> Self;
    fn is_finite(&self) -> bool;

    fn zero_like(&self) -> Self {
        self.lift(0.0)
    }

    fn one_like(&self) -> Self {
        self.lift(1.0)
    }

    fn is_zero(&self) -> bool {
        self.to_f64() == 0.0
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
}

impl Real for f64 {
    fn with_digits(v: f64, _digits: u32) -> Self {
        v
    }

    fn lift(&self, v: f64) -> Self {
        v
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn digits(&self) -> u32 {
        DOUBLE_DIGITS
    }

    fn epsilon(&self) -> Self {
        f64::EPSILON
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }

    fn exp(&self) -> Self {
        f64::exp(*self)
    }

    fn ln(&self) -> Self {
        f64::ln(*self)
    }

    fn sin(&self) -> Self {
        f64::sin(*self)
    }

    fn cos(&self) -> Self {
        f64::cos(*self)
    }

    fn powi(&self, n: i32) -> Self {
        f64::powi(*self, n)
    }

    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
}

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constants cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|cc| f(&mut cc.borrow_mut()))
}

/// Binary precision needed to hold `digits` decimal digits, plus guard bits.
fn bits_for(digits: u32) -> usize {
    (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as usize + 16
}

/// Extended-precision real.
///
/// Binary operations run at the larger of the two operand precisions, so
/// constants must be created with [`Real::lift`] from a working value.
#[derive(Clone)]
pub struct BigReal {
    value: BigFloat,
    digits: u32,
}

impl BigReal {
    fn bits(&self) -> usize {
        bits_for(self.digits)
    }

    fn wrap(&self, value: BigFloat) -> Self {
        Self { value, digits: self.digits }
    }

    fn binary(self, rhs: Self, op: impl FnOnce(&BigFloat, &BigFloat, usize) -> BigFloat) -> Self {
        let digits = self.digits.max(rhs.digits);
        let value = op(&self.value, &rhs.value, bits_for(digits));
        Self { value, digits }
    }

    pub fn inner(&self) -> &BigFloat {
        &self.value
    }
}

impl fmt::Debug for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigReal({}, {} digits)", self.value, self.digits)
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.value, f)
    }
}

impl PartialEq for BigReal {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl PartialOrd for BigReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.value.partial_cmp(&other.value)
    }
}

impl Add for BigReal {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.binary(rhs, |a, b, p| a.add(b, p, RM))
    }
}

impl Sub for BigReal {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.binary(rhs, |a, b, p| a.sub(b, p, RM))
    }
}

impl Mul for BigReal {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.binary(rhs, |a, b, p| a.mul(b, p, RM))
    }
}

impl Div for BigReal {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self.binary(rhs, |a, b, p| a.div(b, p, RM))
    }
}

impl Neg for BigReal {
    type Output = Self;
    fn neg(self) -> Self {
        let value = self.value.neg();
        Self { value, ..self }
    }
}

impl Real for BigReal {
    fn with_digits(v: f64, digits: u32) -> Self {
        Self { value: BigFloat::from_f64(v, bits_for(digits)), digits }
    }

    fn lift(&self, v: f64) -> Self {
        Self::with_digits(v, self.digits)
    }

    fn to_f64(&self) -> f64 {
        if self.value.is_nan() {
            return f64::NAN;
        }
        if self.value.is_inf_pos() {
            return f64::INFINITY;
        }
        if self.value.is_inf_neg() {
            return f64::NEG_INFINITY;
        }
        self.value.to_string().parse().unwrap_or(f64::NAN)
    }

    fn digits(&self) -> u32 {
        self.digits
    }

    fn epsilon(&self) -> Self {
        let ten = self.lift(10.0);
        self.lift(1.0) / ten.powi(self.digits as i32)
    }

    fn abs(&self) -> Self {
        self.wrap(self.value.abs())
    }

    fn sqrt(&self) -> Self {
        self.wrap(self.value.sqrt(self.bits(), RM))
    }

    fn exp(&self) -> Self {
        let p = self.bits();
        self.wrap(with_consts(|cc| self.value.exp(p, RM, cc)))
    }

    fn ln(&self) -> Self {
        let p = self.bits();
        self.wrap(with_consts(|cc| self.value.ln(p, RM, cc)))
    }

    fn sin(&self) -> Self {
        let p = self.bits();
        self.wrap(with_consts(|cc| self.value.sin(p, RM, cc)))
    }

    fn cos(&self) -> Self {
        let p = self.bits();
        self.wrap(with_consts(|cc| self.value.cos(p, RM, cc)))
    }

    fn powi(&self, n: i32) -> Self {
        let p = self.bits();
        let pos = self.wrap(self.value.powi(n.unsigned_abs() as usize, p, RM));
        if n < 0 {
            self.one_like() / pos
        } else {
            pos
        }
    }

    fn is_finite(&self) -> bool {
        !(self.value.is_nan() || self.value.is_inf())
    }

    fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn big_real_carries_requested_digits() {
        let third = BigReal::with_digits(1.0, 64) / BigReal::with_digits(3.0, 64);
        let s = third.to_string();
        // 64 threes survive in the mantissa.
        assert!(s.starts_with(&format!("3.{}", "3".repeat(63))), "{s}");
        assert_eq!(third.digits(), 64);
    }

    #[test]
    fn lifted_constants_keep_precision() {
        let x = BigReal::with_digits(2.0, 50);
        let y = x.lift(1.0) / x.lift(7.0);
        assert_eq!(y.digits(), 50);
        assert!((y.to_f64() - 1.0 / 7.0).abs() < 1e-16);
    }

    #[test]
    fn elementary_functions_match_f64() {
        let x = BigReal::with_digits(0.7, 40);
        let checks = [
            (x.exp().to_f64(), 0.7f64.exp()),
            (x.ln().to_f64(), 0.7f64.ln()),
            (x.sqrt().to_f64(), 0.7f64.sqrt()),
            (x.sin().to_f64(), 0.7f64.sin()),
            (x.cos().to_f64(), 0.7f64.cos()),
            (x.powi(-3).to_f64(), 0.7f64.powi(-3)),
        ];
        for (big, native) in checks {
            assert!((big - native).abs() <= 4.0 * f64::EPSILON * native.abs(), "{big} vs {native}");
        }
    }

    #[test]
    fn log_of_negative_is_not_finite() {
        let x = BigReal::with_digits(-2.0, 30);
        assert!(!x.ln().is_finite());
        assert!(x.ln().to_f64().is_nan());
        assert!(!(-2.0f64).ln().is_finite());
    }

    #[test]
    fn tiny_values_are_not_zero() {
        let tiny = BigReal::with_digits(1e-200, 40) * BigReal::with_digits(1e-200, 40);
        assert!(!tiny.is_zero());
        assert_eq!(tiny.to_f64(), 0.0);
        assert!(tiny.zero_like().is_zero());
    }

    #[test]
    fn epsilon_tracks_digits() {
        let e = BigReal::with_digits(1.0, 30).epsilon().to_f64();
        assert!((e / 1e-30 - 1.0).abs() < 1e-12);
        assert_eq!(1.0f64.epsilon(), f64::EPSILON);
    }
}
