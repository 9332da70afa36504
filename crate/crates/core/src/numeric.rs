//! High-precision real constants (λ, ω, θ) and the closed-form counting
//! formulas built from them. Values are binary fixed point over `BigInt`
//! with [`FRAC_BITS`] fractional bits (~96 decimal digits).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::field::lambda_bits;

pub const FRAC_BITS: u32 = 320;

/// Absolute error bound carried by every constant in [`NumericConstants`].
pub const CONSTANT_ERROR: f64 = 1e-90;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Fixed(BigInt);

impl Fixed {
    pub fn from_int(n: i64) -> Self {
        Self(BigInt::from(n) << FRAC_BITS)
    }

    pub fn from_bigint(n: &BigInt) -> Self {
        Self(n << FRAC_BITS)
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        Self((BigInt::from(p) << FRAC_BITS) / BigInt::from(q))
    }

    pub fn zero() -> Self {
        Self(BigInt::zero())
    }

    pub fn one() -> Self {
        Self(BigInt::one() << FRAC_BITS)
    }

    pub fn raw(&self) -> &BigInt {
        &self.0
    }

    pub fn div(&self, o: &Self) -> Self {
        Self((&self.0 << FRAC_BITS) / &o.0)
    }

    pub fn sqrt(&self) -> Self {
        assert!(!self.0.is_negative(), "sqrt of negative fixed-point value");
        Self((&self.0 << FRAC_BITS).sqrt())
    }

    pub fn abs(&self) -> Self {
        Self(self.0.abs())
    }

    pub fn powi(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Nearest integer, ties away from zero.
    pub fn round(&self) -> BigInt {
        let half = BigInt::one() << (FRAC_BITS - 1);
        if self.0.is_negative() {
            -((-&self.0 + half) >> FRAC_BITS)
        } else {
            (&self.0 + half) >> FRAC_BITS
        }
    }

    pub fn to_f64(&self) -> f64 {
        // keep 64 significant bits before converting
        let shift = FRAC_BITS - 64;
        let top = &self.0 >> shift;
        top.to_f64().unwrap_or(f64::NAN) / 2f64.powi(64)
    }

    pub fn cos(&self) -> Self {
        self.taylor(Self::one(), 0)
    }

    pub fn sin(&self) -> Self {
        self.taylor(self.clone(), 1)
    }

    fn taylor(&self, first: Self, start: i64) -> Self {
        let x2 = self * self;
        let mut term = first;
        let mut sum = term.clone();
        let mut k = start;
        loop {
            term = &(&term * &x2) * &Self::from_ratio(-1, (k + 1) * (k + 2));
            k += 2;
            if term.0.is_zero() {
                return sum;
            }
            sum = &sum + &term;
        }
    }

    /// Decimal rendering with `digits` places after the point, truncated.
    pub fn to_decimal(&self, digits: usize) -> String {
        let neg = self.0.is_negative();
        let a = self.0.abs();
        let int = &a >> FRAC_BITS;
        let frac = &a - (&int << FRAC_BITS);
        let scaled = (frac * BigInt::from(10).pow(digits as u32)) >> FRAC_BITS;
        let mut s = String::new();
        if neg {
            s.push('-');
        }
        s.push_str(&int.to_string());
        if digits > 0 {
            s.push('.');
            s.push_str(&format!("{:0>width$}", scaled.to_string(), width = digits));
        }
        s
    }
}

impl Add for &Fixed {
    type Output = Fixed;
    fn add(self, o: &Fixed) -> Fixed {
        Fixed(&self.0 + &o.0)
    }
}

impl Sub for &Fixed {
    type Output = Fixed;
    fn sub(self, o: &Fixed) -> Fixed {
        Fixed(&self.0 - &o.0)
    }
}

impl Mul for &Fixed {
    type Output = Fixed;
    fn mul(self, o: &Fixed) -> Fixed {
        Fixed((&self.0 * &o.0) >> FRAC_BITS)
    }
}

impl Neg for &Fixed {
    type Output = Fixed;
    fn neg(self) -> Fixed {
        Fixed(-&self.0)
    }
}

impl fmt::Debug for Fixed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(30))
    }
}

#[derive(Clone, Debug)]
pub struct NumericConstants {
    pub lambda: Fixed,
    pub omega: Fixed,
    pub sqrt_omega: Fixed,
    /// ½√ω(5−ω)
    pub cos_theta: Fixed,
    pub theta: Fixed,
    pub error_bound: f64,
}

impl NumericConstants {
    pub fn get() -> &'static NumericConstants {
        static C: OnceLock<NumericConstants> = OnceLock::new();
        C.get_or_init(Self::compute)
    }

    fn compute() -> Self {
        let lambda = Fixed(lambda_bits(FRAC_BITS + 32) >> 32u32);
        let omega = &(&lambda * &lambda) * &lambda;
        let sqrt_omega = omega.sqrt();
        let half = Fixed::from_ratio(1, 2);
        let cos_theta = &(&half * &sqrt_omega) * &(&Fixed::from_int(5) - &omega);
        // Newton on cos θ = c starting from the double-precision guess
        let mut theta = Fixed::from_bigint(&BigInt::zero());
        theta.0 = BigInt::from((cos_theta.to_f64().acos() * 2f64.powi(52)) as i64)
            << (FRAC_BITS - 52);
        for _ in 0..12 {
            let step = (&theta.cos() - &cos_theta).div(&theta.sin());
            theta = &theta + &step;
        }
        Self {
            lambda,
            omega,
            sqrt_omega,
            cos_theta,
            theta,
            error_bound: CONSTANT_ERROR,
        }
    }

    /// cos(nθ) by the Chebyshev recurrence.
    pub fn cos_n_theta(&self, n: u32) -> Fixed {
        let two_c = &Fixed::from_int(2) * &self.cos_theta;
        let (mut prev, mut cur) = (Fixed::one(), self.cos_theta.clone());
        if n == 0 {
            return prev;
        }
        for _ in 1..n {
            let next = &(&two_c * &cur) - &prev;
            prev = cur;
            cur = next;
        }
        cur
    }

    fn parts(&self, n: u32) -> (Fixed, Fixed, Fixed, Fixed, Fixed) {
        let w_n = self.omega.powi(n);
        let w_neg_n = Fixed::one().div(&w_n);
        let s_n = self.sqrt_omega.powi(n);
        let s_neg_n = Fixed::one().div(&s_n);
        (w_n, w_neg_n, s_n, s_neg_n, self.cos_n_theta(n))
    }

    /// ω^{−n}+ω^{n}+2(√ω^{−n}+√ω^{n})cos(nθ)−5
    pub fn fix_count_closed_form(&self, n: u32) -> Fixed {
        let (w, wi, s, si, c) = self.parts(n);
        let two = Fixed::from_int(2);
        let osc = &(&two * &(&si + &s)) * &c;
        &(&(&wi + &w) + &osc) - &Fixed::from_int(5)
    }

    /// ω^{−n}−ω^{n}−2(√ω^{−n}−√ω^{n})cos(nθ)
    pub fn i_n_closed_form(&self, n: u32) -> Fixed {
        let (w, wi, s, si, c) = self.parts(n);
        let two = Fixed::from_int(2);
        let osc = &(&two * &(&si - &s)) * &c;
        &(&wi - &w) - &osc
    }

    /// 4√ω^{−n}cos(nθ)+2ω^{n}−5
    pub fn difference_closed_form(&self, n: u32) -> Fixed {
        let (w, _, _, si, c) = self.parts(n);
        let four = Fixed::from_int(4);
        &(&(&(&four * &si) * &c) + &(&Fixed::from_int(2) * &w)) - &Fixed::from_int(5)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> Fixed {
        // 2^-300
        Fixed(BigInt::one() << (FRAC_BITS - 300))
    }

    #[test]
    fn lambda_is_a_root() {
        let c = NumericConstants::get();
        let l = &c.lambda;
        let f = &(&(&(&(l * l) * l) + &(l * l)) + l) - &Fixed::one();
        assert!(f.abs() < tiny());
        assert!((c.lambda.to_f64() - 0.543_689_012_692_076_4).abs() < 1e-15);
    }

    #[test]
    fn theta_matches_its_cosine() {
        let c = NumericConstants::get();
        assert!((&c.theta.cos() - &c.cos_theta).abs() < tiny());
        assert!((c.cos_theta.to_f64() - 0.5 * c.omega.to_f64().sqrt() * (5.0 - c.omega.to_f64())).abs() < 1e-14);
        // cos(2θ) via recurrence equals the direct double-angle value
        let direct = (&Fixed::from_int(2) * &c.theta).cos();
        assert!((&direct - &c.cos_n_theta(2)).abs() < tiny());
    }

    #[test]
    fn small_closed_forms() {
        let c = NumericConstants::get();
        assert_eq!(c.fix_count_closed_form(1).round(), BigInt::from(7));
        assert_eq!(c.i_n_closed_form(1).round(), BigInt::from(2));
        assert_eq!(c.difference_closed_form(1).round(), BigInt::from(5));
        assert_eq!(c.i_n_closed_form(2).round(), BigInt::from(28));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(Fixed::from_ratio(1, 8).to_decimal(4), "0.1250");
        assert_eq!(Fixed::from_ratio(-3, 2).to_decimal(2), "-1.50");
        assert_eq!(Fixed::from_ratio(-3, 2).round(), BigInt::from(-2));
    }
}
