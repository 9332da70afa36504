//! The finite ring Z[λ]/mZ[λ] with m³ elements.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{reduce_quartic, FieldElement, IntTriple};
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResidueElement {
    m: u64,
    c: [u64; 3],
}

impl ResidueElement {
    pub fn new(m: u64, c: [i128; 3]) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroModulus);
        }
        let mi = m as i128;
        Ok(Self {
            m,
            c: c.map(|x| x.rem_euclid(mi) as u64),
        })
    }

    /// Reduction of an algebraic integer modulo m.
    pub fn reduce(a: &FieldElement, m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroModulus);
        }
        if !a.is_integral() {
            return Err(Error::NotIntegral(a.to_string()));
        }
        let mb = BigInt::from(m);
        let c: [u64; 3] = std::array::from_fn(|i| {
            let n = a.coeff(i).numer();
            let r = ((n % &mb) + &mb) % &mb;
            r.to_u64().expect("residue fits u64")
        });
        Ok(Self { m, c })
    }

    pub fn from_triple(t: IntTriple, m: u64) -> Result<Self> {
        Self::new(m, t.0)
    }

    pub fn zero(m: u64) -> Result<Self> {
        Self::new(m, [0, 0, 0])
    }

    pub fn one(m: u64) -> Result<Self> {
        Self::new(m, [1, 0, 0])
    }

    pub fn omega(m: u64) -> Result<Self> {
        Self::new(m, [1, -1, -1])
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn coeffs(&self) -> [u64; 3] {
        self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c == [0, 0, 0]
    }

    pub fn to_triple(&self) -> IntTriple {
        IntTriple(self.c.map(|x| x as i128))
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.m != o.m {
            Err(Error::ModulusMismatch(self.m, o.m))
        } else {
            Ok(())
        }
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self.mul_unchecked(o))
    }

    pub(crate) fn mul_unchecked(&self, o: &Self) -> Self {
        let m = self.m as i128;
        let a = self.c.map(|x| x as i128);
        let b = o.c.map(|x| x as i128);
        // each partial product < m², sums stay well inside i128 for m < 2^40
        let e = [
            a[0] * b[0] % m,
            (a[0] * b[1] + a[1] * b[0]) % m,
            (a[0] * b[2] + a[1] * b[1] + a[2] * b[0]) % m,
            (a[1] * b[2] + a[2] * b[1]) % m,
            a[2] * b[2] % m,
        ];
        let r = reduce_quartic(e);
        Self {
            m: self.m,
            c: r.map(|x| x.rem_euclid(m) as u64),
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let m = self.m as u128;
        Ok(Self {
            m: self.m,
            c: std::array::from_fn(|i| ((self.c[i] as u128 + o.c[i] as u128) % m) as u64),
        })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let m = self.m as u128;
        Ok(Self {
            m: self.m,
            c: std::array::from_fn(|i| ((self.c[i] as u128 + m - o.c[i] as u128) % m) as u64),
        })
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = Self {
            m: self.m,
            c: [1 % self.m, 0, 0],
        };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for ResidueElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{};{} mod {}", self.c[0], self.c[1], self.c[2], self.m)
    }
}

impl fmt::Debug for ResidueElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ResidueElement({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduce_examples() {
        let w = ResidueElement::reduce(&FieldElement::omega(), 2).unwrap();
        assert_eq!(w.coeffs(), [1, 1, 1]);
        let z = ResidueElement::reduce(&FieldElement::zero(), 9).unwrap();
        assert!(z.is_zero());
        assert_eq!(
            ResidueElement::reduce(&FieldElement::one(), 0),
            Err(Error::ZeroModulus)
        );
        assert!(ResidueElement::reduce(&"1/2;0;0".parse().unwrap(), 3).is_err());
    }

    #[test]
    fn multiplication_is_a_homomorphism() {
        let l = ResidueElement::reduce(&FieldElement::lambda(), 3).unwrap();
        let l2 = ResidueElement::reduce(&"0;0;1".parse().unwrap(), 3).unwrap();
        assert_eq!(
            l.mul(&l2).unwrap(),
            ResidueElement::reduce(&FieldElement::omega(), 3).unwrap()
        );
        let other = ResidueElement::one(5).unwrap();
        assert_eq!(l.mul(&other), Err(Error::ModulusMismatch(3, 5)));
    }
}
