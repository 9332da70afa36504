//! Exact arithmetic in the cubic field Q(λ), λ the real root of x³+x²+x−1.
//!
//! Elements are stored in the power basis (1, λ, λ²) with rational
//! coefficients. The ring of integers is Z[λ]; an element is integral iff
//! all three coefficients are integers.

mod lattice;
mod residue;
mod sign;

pub use lattice::IntTriple;
pub use residue::ResidueElement;
pub use sign::{lambda_bits, sign_int, IsolatingInterval};

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Reduces a product of two degree-2 polynomials in λ back to the basis.
///
/// With e_k the coefficient of λ^k (k ≤ 4), λ³ = 1−λ−λ² and λ⁴ = −1+2λ.
#[inline]
pub(crate) fn reduce_quartic<T>(e: [T; 5]) -> [T; 3]
where
    T: Clone + Add<Output = T> + Sub<Output = T>,
{
    let [e0, e1, e2, e3, e4] = e;
    [
        e0 + e3.clone() - e4.clone(),
        e1 - e3.clone() + e4.clone() + e4,
        e2 - e3,
    ]
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    c: [Rational; 3],
}

impl FieldElement {
    pub fn new(c0: Rational, c1: Rational, c2: Rational) -> Self {
        Self { c: [c0, c1, c2] }
    }

    pub fn from_ints(c0: i64, c1: i64, c2: i64) -> Self {
        Self::new(
            Rational::from_integer(c0.into()),
            Rational::from_integer(c1.into()),
            Rational::from_integer(c2.into()),
        )
    }

    pub fn from_bigints(c: [BigInt; 3]) -> Self {
        let [a, b, d] = c;
        Self::new(
            Rational::from_integer(a),
            Rational::from_integer(b),
            Rational::from_integer(d),
        )
    }

    /// `num / den` with an integer numerator triple.
    pub fn from_ratio(num: [i128; 3], den: i128) -> Self {
        let d = BigInt::from(den);
        let f = |n: i128| Rational::new(BigInt::from(n), d.clone());
        Self::new(f(num[0]), f(num[1]), f(num[2]))
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::new(r, Rational::zero(), Rational::zero())
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0, 0)
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0, 0)
    }

    pub fn lambda() -> Self {
        Self::from_ints(0, 1, 0)
    }

    /// ω = λ³ = 1 − λ − λ², the scaling factor.
    pub fn omega() -> Self {
        Self::from_ints(1, -1, -1)
    }

    /// ω⁻¹ = λ⁻³, an algebraic integer since λ is a unit.
    pub fn omega_inv() -> Self {
        Self::omega().invert().expect("omega is a unit")
    }

    pub fn coeffs(&self) -> &[Rational; 3] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> &Rational {
        &self.c[i]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.c.iter().all(|r| r.is_integer())
    }

    /// Integer coefficients, or `None` if some coefficient is fractional.
    pub fn to_int_triple(&self) -> Option<IntTriple> {
        if !self.is_integral() {
            return None;
        }
        let mut out = [0i128; 3];
        for (o, r) in out.iter_mut().zip(&self.c) {
            *o = i128::try_from(r.numer()).ok()?;
        }
        Some(IntTriple(out))
    }

    /// Common positive denominator and integer numerator triple.
    pub fn to_common_denominator(&self) -> ([BigInt; 3], BigInt) {
        let den = self
            .c
            .iter()
            .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let num = self.c.clone().map(|r| (r * Rational::from_integer(den.clone())).to_integer());
        (num, den)
    }

    /// Least positive integer D with D·self ∈ Z[λ].
    pub fn denominator(&self) -> BigInt {
        self.to_common_denominator().1
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self {
            c: self.c.clone().map(|r| r * k),
        }
    }

    pub fn mul_lambda(&self) -> Self {
        let [a, b, c] = &self.c;
        Self::new(c.clone(), a - c, b - c)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn powi(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.invert()?.pow(e.unsigned_abs()))
        }
    }

    /// Matrix of multiplication by `self` on the basis (1, λ, λ²); column k
    /// holds the coefficients of self·λ^k.
    pub fn mult_matrix(&self) -> [[Rational; 3]; 3] {
        let c0 = self.clone();
        let c1 = c0.mul_lambda();
        let c2 = c1.mul_lambda();
        let cols = [c0.c, c1.c, c2.c];
        std::array::from_fn(|r| std::array::from_fn(|k| cols[k][r].clone()))
    }

    /// Field norm: the determinant of the multiplication operator. Signed.
    pub fn norm(&self) -> Rational {
        det3(&self.mult_matrix())
    }

    pub fn invert(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDivision);
        }
        let m = self.mult_matrix();
        let det = det3(&m);
        // first column of the inverse matrix = adj(M) e_0 / det
        let cof = |r0: usize, r1: usize, c0: usize, c1: usize| {
            &m[r0][c0] * &m[r1][c1] - &m[r0][c1] * &m[r1][c0]
        };
        let x0 = cof(1, 2, 1, 2) / &det;
        let x1 = -cof(1, 2, 0, 2) / &det;
        let x2 = cof(1, 2, 0, 1) / &det;
        Ok(Self::new(x0, x1, x2))
    }

    /// Sign under the real embedding; exact.
    pub fn sign(&self) -> Ordering {
        if self.is_zero() {
            return Ordering::Equal;
        }
        let (num, _) = self.to_common_denominator();
        sign_int(&num)
    }

    /// Exact real-order comparison.
    pub fn cmp_real(&self, other: &Self) -> Ordering {
        (self - other).sign()
    }

    /// `0 ≤ self < 1` under the real embedding.
    pub fn in_unit_interval(&self) -> bool {
        self.sign() != Ordering::Less && (self - &Self::one()).sign() == Ordering::Less
    }

    /// Unique split x = ξ + β with ξ coefficients in [0,1), β ∈ Z[λ].
    pub fn frac_int_split(&self) -> (Self, Self) {
        let beta = self.c.clone().map(|r| r.floor());
        let xi = std::array::from_fn(|i| &self.c[i] - &beta[i]);
        (Self { c: xi }, Self { c: beta })
    }

    /// Returns (M, α) with self·α = M, α ∈ Z[λ] and M the least positive
    /// integer divisible by `self` in Z[λ].
    pub fn min_integer_multiple(&self) -> Result<(BigInt, Self)> {
        if !self.is_integral() {
            return Err(Error::NotIntegral(self.to_string()));
        }
        let inv = self.invert()?;
        let m = inv.denominator();
        let alpha = inv.scale(&Rational::from_integer(m.clone()));
        Ok((m, alpha))
    }

    /// Floating-point approximation of the real image.
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let l = sign::LAMBDA_F64;
        let f = |r: &Rational| r.to_f64().unwrap_or(f64::NAN);
        f(&self.c[0]) + l * (f(&self.c[1]) + l * f(&self.c[2]))
    }

    /// Images under the pair of complex embeddings, as (re, im) of one of them.
    pub fn complex_image(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        let (zr, zi) = sign::complex_root();
        let f = |r: &Rational| r.to_f64().unwrap_or(f64::NAN);
        let (a, b, c) = (f(&self.c[0]), f(&self.c[1]), f(&self.c[2]));
        let z2r = zr * zr - zi * zi;
        let z2i = 2.0 * zr * zi;
        (a + b * zr + c * z2r, b * zi + c * z2i)
    }
}

pub(crate) fn det3(m: &[[Rational; 3]; 3]) -> Rational {
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
        - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, o: &FieldElement) -> FieldElement {
        FieldElement {
            c: std::array::from_fn(|i| &self.c[i] + &o.c[i]),
        }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, o: &FieldElement) -> FieldElement {
        FieldElement {
            c: std::array::from_fn(|i| &self.c[i] - &o.c[i]),
        }
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, o: &FieldElement) -> FieldElement {
        let a = &self.c;
        let b = &o.c;
        let e = [
            &a[0] * &b[0],
            &a[0] * &b[1] + &a[1] * &b[0],
            &a[0] * &b[2] + &a[1] * &b[1] + &a[2] * &b[0],
            &a[1] * &b[2] + &a[2] * &b[1],
            &a[2] * &b[2],
        ];
        FieldElement { c: reduce_quartic(e) }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            c: self.c.clone().map(|r| -r),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for FieldElement {
            type Output = FieldElement;
            fn $f(self, o: FieldElement) -> FieldElement {
                (&self).$f(&o)
            }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $f(self, o: &FieldElement) -> FieldElement {
                (&self).$f(o)
            }
        }
        impl $tr<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $f(self, o: FieldElement) -> FieldElement {
                self.$f(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

impl From<IntTriple> for FieldElement {
    fn from(t: IntTriple) -> Self {
        FieldElement::from_ratio(t.0, 1)
    }
}

fn fmt_rational(r: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Canonical serialization `c0;c1;c2`, each coefficient `p/q` in lowest
/// terms with `q > 0`, `/q` omitted when q = 1.
impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_rational(&self.c[0], f)?;
        f.write_str(";")?;
        fmt_rational(&self.c[1], f)?;
        f.write_str(";")?;
        fmt_rational(&self.c[2], f)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({self})")
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(p, q))
}

impl FromStr for FieldElement {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(';').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("expected c0;c1;c2, got {s:?}")));
        }
        Ok(Self::new(
            parse_rational(parts[0])?,
            parse_rational(parts[1])?,
            parse_rational(parts[2])?,
        ))
    }
}

/// Integer coefficients as `(m0,m1,m2)`, the notation used for core-region points.
pub fn triple_label(t: &IntTriple) -> String {
    format!("({},{},{})", t.0[0], t.0[1], t.0[2])
}
