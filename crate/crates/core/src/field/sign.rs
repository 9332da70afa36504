//! Exact sign determination for elements of Q(λ) under the real embedding.
//!
//! λ is located by a dyadic isolating interval `[L/2^k, (L+1)/2^k]` held in a
//! process-wide cache. Refinement only ever increases `k`, so readers never
//! observe a coarser interval than one they have already used.

use std::cmp::Ordering;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Double-precision value of λ, used only by floating-point filters.
pub(crate) const LAMBDA_F64: f64 = 0.543_689_012_692_076_4;

const INITIAL_BITS: u32 = 512;

struct LambdaCache {
    bits: u32,
    /// floor(λ·2^bits)
    floor: BigInt,
}

fn cubic_sign(x: &BigInt, scale: &BigInt) -> Ordering {
    // sign of f(x/scale)·scale³ = x³ + x²·s + x·s² − s³
    let s2 = scale * scale;
    let v = x * x * x + x * x * scale + x * &s2 - &s2 * scale;
    v.sign().cmp(&num_bigint::Sign::NoSign)
}

/// Largest x in [lo, hi) with f(x/2^bits) < 0, given f(lo) < 0 < f(hi).
fn bisect_floor(mut lo: BigInt, mut hi: BigInt, bits: u32) -> BigInt {
    let scale = BigInt::one() << bits;
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) >> 1u32;
        if cubic_sign(&mid, &scale) == Ordering::Less {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

fn cache() -> &'static RwLock<LambdaCache> {
    static CACHE: OnceLock<RwLock<LambdaCache>> = OnceLock::new();
    CACHE.get_or_init(|| {
        // λ ∈ [1/2, 5/8]
        let lo = BigInt::one() << (INITIAL_BITS - 1);
        let hi = BigInt::from(5) << (INITIAL_BITS - 3);
        RwLock::new(LambdaCache {
            bits: INITIAL_BITS,
            floor: bisect_floor(lo, hi, INITIAL_BITS),
        })
    })
}

/// floor(λ·2^bits), refining the shared cache if needed.
pub fn lambda_bits(bits: u32) -> BigInt {
    {
        let c = cache().read().expect("lambda cache poisoned");
        if c.bits >= bits {
            return &c.floor >> (c.bits - bits);
        }
    }
    let mut c = cache().write().expect("lambda cache poisoned");
    while c.bits < bits {
        let k = c.bits;
        let lo = &c.floor << k;
        let hi = (&c.floor + 1u32) << k;
        c.floor = bisect_floor(lo, hi, 2 * k);
        c.bits = 2 * k;
    }
    &c.floor >> (c.bits - bits)
}

/// Sign of a + bλ + cλ² for integer a, b, c. Exact.
pub fn sign_int(coef: &[BigInt; 3]) -> Ordering {
    let [a, b, c] = coef;
    if a.is_zero() && b.is_zero() && c.is_zero() {
        return Ordering::Equal;
    }
    if let (Some(af), Some(bf), Some(cf)) = (a.to_f64(), b.to_f64(), c.to_f64()) {
        if af.is_finite() && bf.is_finite() && cf.is_finite() {
            let v = af + LAMBDA_F64 * (bf + LAMBDA_F64 * cf);
            let err = (af.abs() + bf.abs() + cf.abs()) * 1e-13;
            if v > err {
                return Ordering::Greater;
            }
            if v < -err {
                return Ordering::Less;
            }
        }
    }
    let mut bits = 128u32;
    loop {
        let l0 = lambda_bits(bits);
        let l1 = &l0 + 1u32;
        let s = BigInt::one() << bits;
        let s2 = &s * &s;
        let (bl0, bl1) = (b * &l0, b * &l1);
        let (cl0, cl1) = (c * &l0 * &l0, c * &l1 * &l1);
        let (bmin, bmax) = if bl0 <= bl1 { (bl0, bl1) } else { (bl1, bl0) };
        let (cmin, cmax) = if cl0 <= cl1 { (cl0, cl1) } else { (cl1, cl0) };
        let base = a * &s2;
        let lower = &base + bmin * &s + cmin;
        let upper = base + bmax * &s + cmax;
        if lower.is_positive() {
            return Ordering::Greater;
        }
        if upper.is_negative() {
            return Ordering::Less;
        }
        bits *= 2;
    }
}

/// One of the two complex conjugate roots of x³+x²+x−1, as (re, im).
pub(crate) fn complex_root() -> (f64, f64) {
    let re = -(1.0 + LAMBDA_F64) / 2.0;
    let im = (1.0 / LAMBDA_F64 - re * re).sqrt();
    (re, im)
}

/// Rational bracket [lo, hi] around λ with f(lo) < 0 < f(hi).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatingInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

fn f_rational(x: &BigRational) -> BigRational {
    x * x * x + x * x + x - BigRational::one()
}

impl IsolatingInterval {
    pub fn initial() -> Self {
        Self {
            lo: BigRational::new(1.into(), 2.into()),
            hi: BigRational::new(5.into(), 8.into()),
        }
    }

    /// The dyadic bracket of width 2^-bits from the shared cache.
    pub fn with_bits(bits: u32) -> Self {
        let l = lambda_bits(bits);
        let d = BigInt::one() << bits;
        Self {
            lo: BigRational::new(l.clone(), d.clone()),
            hi: BigRational::new(l + 1u32, d),
        }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    /// Halves the bracket, keeping the sign change.
    pub fn refine(&mut self) {
        let mid = (&self.lo + &self.hi) / BigRational::from_integer(2.into());
        if f_rational(&mid).is_negative() {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
    }

    pub fn is_valid(&self) -> bool {
        let zero = BigRational::zero();
        self.lo > zero
            && self.hi < BigRational::one()
            && self.lo < self.hi
            && (f_rational(&self.lo) * f_rational(&self.hi)).is_negative()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn initial_interval_brackets_lambda() {
        let mut iv = IsolatingInterval::initial();
        assert!(iv.is_valid());
        for _ in 0..60 {
            iv.refine();
            assert!(iv.is_valid());
        }
        let mid = ((&iv.lo + &iv.hi) / BigRational::from_integer(2.into()))
            .to_f64()
            .unwrap();
        assert!((mid - LAMBDA_F64).abs() < 1e-15);
    }

    #[test]
    fn cache_refinement_is_consistent() {
        let a = lambda_bits(100);
        let b = lambda_bits(3000);
        assert_eq!(a, &b >> 2900u32);
        assert!(IsolatingInterval::with_bits(3000).is_valid());
        assert!(IsolatingInterval::with_bits(7).is_valid());
    }

    #[test]
    fn sign_of_huge_near_cancellation() {
        // a + bλ + cλ² with coefficients taken from a tight rational approximation
        let bits = 400;
        let l = lambda_bits(bits);
        // L - λ·2^400 is in (-1, 0]: the element L − 2^400·λ is ≤ 0 and nonzero.
        let coef = [l.clone(), -(BigInt::one() << bits), BigInt::zero()];
        assert_eq!(sign_int(&coef), Ordering::Less);
        let coef = [l + 1u32, -(BigInt::one() << bits), BigInt::zero()];
        assert_eq!(sign_int(&coef), Ordering::Greater);
    }
}
