//! Fixed-width elements of Z[λ] for the hot loops (cycle enumeration,
//! denominator scans). Overflow panics in debug builds; callers keep
//! magnitudes far below i128 range.

use std::cmp::Ordering;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;

use super::reduce_quartic;
use super::sign::{sign_int, LAMBDA_F64};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntTriple(pub [i128; 3]);

impl IntTriple {
    pub const ZERO: Self = Self([0, 0, 0]);
    pub const ONE: Self = Self([1, 0, 0]);

    pub fn new(a: i128, b: i128, c: i128) -> Self {
        Self([a, b, c])
    }

    pub fn mul_lambda(self) -> Self {
        let [a, b, c] = self.0;
        Self([c, a - c, b - c])
    }

    pub fn scale(self, k: i128) -> Self {
        Self(self.0.map(|x| x * k))
    }

    pub fn rem_euclid(self, m: i128) -> Self {
        Self(self.0.map(|x| x.rem_euclid(m)))
    }

    pub fn div_euclid(self, m: i128) -> Self {
        Self(self.0.map(|x| x.div_euclid(m)))
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Self::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Sign of a + bλ + cλ²; a float filter with exact fallback.
    pub fn sign(self) -> Ordering {
        let [a, b, c] = self.0;
        let (af, bf, cf) = (a as f64, b as f64, c as f64);
        let v = af + LAMBDA_F64 * (bf + LAMBDA_F64 * cf);
        let err = (af.abs() + bf.abs() + cf.abs()) * 1e-13;
        if v > err {
            Ordering::Greater
        } else if v < -err {
            Ordering::Less
        } else {
            sign_int(&self.0.map(BigInt::from))
        }
    }

    pub fn to_f64(self) -> f64 {
        let [a, b, c] = self.0;
        a as f64 + LAMBDA_F64 * (b as f64 + LAMBDA_F64 * c as f64)
    }

    pub fn max_abs(self) -> i128 {
        self.0.iter().map(|x| x.abs()).max().unwrap_or(0)
    }
}

impl Add for IntTriple {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl AddAssign for IntTriple {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl Sub for IntTriple {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }
}

impl Neg for IntTriple {
    type Output = Self;
    fn neg(self) -> Self {
        Self(self.0.map(|x| -x))
    }
}

impl Mul for IntTriple {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let a = self.0;
        let b = o.0;
        Self(reduce_quartic([
            a[0] * b[0],
            a[0] * b[1] + a[1] * b[0],
            a[0] * b[2] + a[1] * b[1] + a[2] * b[0],
            a[1] * b[2] + a[2] * b[1],
            a[2] * b[2],
        ]))
    }
}
