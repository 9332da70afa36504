use std::cmp::Ordering;

use ay_core::field::{lambda_bits, FieldElement, IntTriple, Rational};
use ay_core::ResidueElement;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn element() -> impl Strategy<Value = FieldElement> {
    (small_rational(), small_rational(), small_rational()).prop_map(|(a, b, c)| FieldElement::new(a, b, c))
}

fn nonzero() -> impl Strategy<Value = FieldElement> {
    element().prop_filter("nonzero", |x| !x.is_zero())
}

fn conjugate_norm(x: &FieldElement) -> f64 {
    let (re, im) = x.complex_image();
    x.to_f64() * (re * re + im * im)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms(a in element(), b in element(), c in element()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a - &a, FieldElement::zero());
        prop_assert_eq!(&a * &FieldElement::one(), a.clone());
    }

    #[test]
    fn inverse_and_norm(a in nonzero(), b in nonzero()) {
        let inv = a.invert().unwrap();
        prop_assert_eq!(&a * &inv, FieldElement::one());
        prop_assert_eq!((&a * &b).norm(), a.norm() * b.norm());
        let n = a.norm().to_f64().unwrap();
        prop_assert!((n - conjugate_norm(&a)).abs() <= 1e-9 * (1.0 + n.abs()));
    }

    #[test]
    fn split_reassembles(a in element()) {
        let (xi, beta) = a.frac_int_split();
        prop_assert!(beta.is_integral());
        prop_assert!(xi.coeffs().iter().all(|r| !r.is_negative() && *r < Rational::one()));
        prop_assert_eq!(&xi + &beta, a);
    }

    #[test]
    fn sign_agrees_with_float(a in element()) {
        let f = a.to_f64();
        if f.abs() > 1e-9 {
            prop_assert_eq!(a.sign(), f.partial_cmp(&0.0).unwrap());
        }
        prop_assert_eq!(a.sign() == Ordering::Equal, a.is_zero());
    }

    #[test]
    fn min_integer_multiple_divides_norm(a in -50i64..50, b in -50i64..50, c in -50i64..50) {
        let a = FieldElement::from_ints(a, b, c);
        prop_assume!(!a.is_zero());
        let (m, q) = a.min_integer_multiple().unwrap();
        prop_assert!(m > BigInt::zero());
        prop_assert!(q.is_integral());
        prop_assert_eq!(&a * &q, FieldElement::from_rational(Rational::from_integer(m.clone())));
        // a | N(a), so M | N(a)
        let n = a.norm().numer().abs();
        prop_assert!((n % &m).is_zero());
    }

    #[test]
    fn residue_matches_exact(a in -30i128..30, b in -30i128..30, c in -30i128..30,
                             d in -30i128..30, e in -30i128..30, f in -30i128..30, m in 2u64..40) {
        let x = IntTriple::new(a, b, c);
        let y = IntTriple::new(d, e, f);
        let rx = ResidueElement::from_triple(x, m).unwrap();
        let ry = ResidueElement::from_triple(y, m).unwrap();
        prop_assert_eq!(rx.mul(&ry).unwrap(), ResidueElement::from_triple(x * y, m).unwrap());
        prop_assert_eq!(rx.add(&ry).unwrap(), ResidueElement::from_triple(x + y, m).unwrap());
    }
}

#[test]
fn sign_of_near_cancellation() {
    // a + bλ + cλ² with |value| < 2^-100: a convergent of λ's binary expansion
    let bits = 100u32;
    let l = lambda_bits(bits);
    let scale = BigInt::one() << bits;
    for delta in [0i64, 1] {
        let q = &l + BigInt::from(delta);
        let x = FieldElement::new(
            Rational::new(-q.clone(), scale.clone()),
            Rational::one(),
            Rational::zero(),
        );
        let expect = if delta == 0 { Ordering::Greater } else { Ordering::Less };
        assert_eq!(x.sign(), expect);
    }
}

#[test]
fn lambda_cubic_relations() {
    let l = FieldElement::lambda();
    let l3 = l.pow(3);
    assert_eq!(&(&(&l3 + &l.pow(2)) + &l) - &FieldElement::one(), FieldElement::zero());
    assert_eq!(l.pow(4), FieldElement::from_ints(-1, 2, 0));
    assert_eq!(FieldElement::omega().norm(), Rational::one());
    assert!(FieldElement::omega_inv().is_integral());
}
