//! Deterministic decimal rendering of exact rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::field::Rational;

/// `r` rounded (half up) to `sig` significant digits. Values below 1e-4
/// use `d.dddde-N` notation.
pub fn sig_digits(r: &Rational, sig: usize) -> String {
    if r.is_zero() {
        return "0".into();
    }
    let neg = r.is_negative();
    let a = r.abs();
    // exponent e with 10^e ≤ a < 10^(e+1)
    let ten = BigInt::from(10);
    let mut e: i64 = (a.numer().to_string().len() as i64) - (a.denom().to_string().len() as i64);
    let pow = |k: i64| -> Rational {
        if k >= 0 {
            Rational::from_integer(ten.pow(k as u32))
        } else {
            Rational::new(BigInt::from(1), ten.pow((-k) as u32))
        }
    };
    while a < pow(e) {
        e -= 1;
    }
    while a >= pow(e + 1) {
        e += 1;
    }
    let shift = sig as i64 - 1 - e;
    let scaled = &a * pow(shift);
    let twice: BigInt = scaled.numer() * 2u32 + scaled.denom();
    let mut digits = twice.div_floor(&(scaled.denom() * 2u32));
    let mut e = e;
    if digits.to_string().len() > sig {
        // rounding carried into a new digit
        digits /= 10;
        e += 1;
    }
    let ds = digits.to_string();
    let body = if e < -4 {
        let (h, t) = ds.split_at(1);
        if t.is_empty() {
            format!("{h}e{e}")
        } else {
            format!("{h}.{t}e{e}")
        }
    } else if e < 0 {
        format!("0.{}{}", "0".repeat((-e - 1) as usize), ds)
    } else {
        let int_len = (e + 1) as usize;
        if ds.len() <= int_len {
            format!("{}{}", ds, "0".repeat(int_len - ds.len()))
        } else {
            format!("{}.{}", &ds[..int_len], &ds[int_len..])
        }
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// `r` with exactly `places` digits after the point, rounded half up.
pub fn fixed_places(r: &Rational, places: usize) -> String {
    let neg = r.is_negative();
    let a = r.abs();
    let scale = BigInt::from(10).pow(places as u32);
    let twice: BigInt = a.numer() * &scale * 2u32 + a.denom();
    let v = twice.div_floor(&(a.denom() * 2u32));
    let s = format!("{:0>width$}", v.to_string(), width = places + 1);
    let (int, frac) = s.split_at(s.len() - places);
    let sign = if neg && !v.is_zero() { "-" } else { "" };
    if places == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p.into(), d.into())
    }

    #[test]
    fn significant_digits() {
        assert_eq!(sig_digits(&q(2, 7), 4), "0.2857");
        assert_eq!(sig_digits(&q(14, 45), 4), "0.3111");
        assert_eq!(sig_digits(&q(1534, 2245761), 4), "0.0006831");
        assert_eq!(sig_digits(&q(374, 58077), 4), "0.006440");
        assert_eq!(sig_digits(&q(1, 3), 5), "0.33333");
        assert_eq!(sig_digits(&q(99999, 100000), 2), "1.0");
        assert_eq!(sig_digits(&q(12345, 1), 3), "12300");
        assert_eq!(sig_digits(&q(3, 40000), 5), "7.5000e-5");
        assert_eq!(sig_digits(&q(-1, 8), 2), "-0.13");
        assert_eq!(sig_digits(&q(0, 1), 3), "0");
    }

    #[test]
    fn fixed_decimal_places() {
        assert_eq!(fixed_places(&q(1, 3), 12), "0.333333333333");
        assert_eq!(fixed_places(&q(2, 3), 2), "0.67");
        assert_eq!(fixed_places(&q(-1, 2), 0), "-1");
        assert_eq!(fixed_places(&q(5, 1), 1), "5.0");
    }
}
