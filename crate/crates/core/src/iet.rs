//! The scale-invariant interval exchange ρ on [0,1).

use std::cmp::Ordering;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::field::{FieldElement, Rational};

/// Number of exchanged intervals.
pub const N: usize = 7;

/// Default cap on iteration counts for first-return searches.
pub const DEFAULT_CAP: usize = 10_000;

fn fe(s: &str) -> FieldElement {
    s.parse().expect("static table entry")
}

/// Half-open interval [lo, hi) with field endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: FieldElement,
    pub hi: FieldElement,
}

impl Interval {
    pub fn new(lo: FieldElement, hi: FieldElement) -> Self {
        Self { lo, hi }
    }

    pub fn contains(&self, x: &FieldElement) -> bool {
        x.cmp_real(&self.lo) != Ordering::Less && x.cmp_real(&self.hi) == Ordering::Less
    }

    /// [a,b) ⊆ self
    pub fn covers(&self, other: &Interval) -> bool {
        other.lo.cmp_real(&self.lo) != Ordering::Less
            && other.hi.cmp_real(&self.hi) != Ordering::Greater
    }

    pub fn length(&self) -> FieldElement {
        &self.hi - &self.lo
    }

    pub fn translate(&self, t: &FieldElement) -> Self {
        Self::new(&self.lo + t, &self.hi + t)
    }

    pub fn scale(&self, s: &FieldElement) -> Self {
        Self::new(&self.lo * s, &self.hi * s)
    }
}

/// Discontinuities δ_j, translations τ_j, return times ν_j and the path
/// function p(j,t) of the map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IETTable {
    pub delta: [FieldElement; N + 1],
    pub tau: [FieldElement; N],
    pub nu: [usize; N],
    pub path: [Vec<usize>; N],
}

impl IETTable {
    pub fn canonical() -> &'static IETTable {
        static T: OnceLock<IETTable> = OnceLock::new();
        T.get_or_init(|| IETTable {
            delta: [
                fe("0;0;0"),
                fe("1;-1;-1"),
                fe("1;-2;1"),
                fe("3/2;-2;-1/2"),
                fe("1/2;0;-1/2"),
                fe("-1/2;1;3/2"),
                fe("0;1;0"),
                fe("1;0;0"),
            ],
            tau: [
                fe("0;1;1"),
                fe("-1;3;0"),
                fe("0;1;-1"),
                fe("-1;2;1"),
                fe("1;-1;-1"),
                fe("0;1;-1"),
                fe("0;-1;0"),
            ],
            nu: [4, 13, 12, 8, 8, 12, 4],
            path: [
                vec![0, 6, 3, 6],
                vec![0, 6, 3, 6, 1, 6, 2, 5, 6, 1, 6, 3, 6],
                vec![0, 6, 3, 6, 1, 6, 2, 5, 6, 2, 4, 6],
                vec![0, 6, 3, 6, 1, 6, 3, 6],
                vec![0, 6, 4, 5, 6, 2, 4, 6],
                vec![0, 6, 4, 5, 6, 2, 5, 6, 1, 6, 3, 6],
                vec![0, 6, 4, 6],
            ],
        })
    }

    pub fn omega_interval(&self, j: usize) -> Interval {
        Interval::new(self.delta[j].clone(), self.delta[j + 1].clone())
    }

    pub fn p(&self, j: usize, t: usize) -> usize {
        self.path[j][t]
    }

    pub fn symbol_count(&self) -> usize {
        self.nu.iter().sum()
    }

    /// Unique j with δ_j ≤ x < δ_{j+1}.
    pub fn interval_index(&self, x: &FieldElement) -> Result<usize> {
        if x.sign() == Ordering::Less || x.cmp_real(&self.delta[N]) != Ordering::Less {
            return Err(Error::OutOfDomain(x.to_string()));
        }
        // largest j with δ_j ≤ x
        let (mut lo, mut hi) = (0usize, N);
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if x.cmp_real(&self.delta[mid]) == Ordering::Less {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(lo)
    }

    pub fn rho(&self, x: &FieldElement) -> Result<FieldElement> {
        let j = self.interval_index(x)?;
        Ok(x + &self.tau[j])
    }

    /// Checks that the translated intervals Ω_j + τ_j tile [0,1) and
    /// reports their left-to-right order.
    pub fn verify_permutation(&self) -> PermutationReport {
        let mut issues = Vec::new();
        let images: Vec<Interval> = (0..N)
            .map(|j| self.omega_interval(j).translate(&self.tau[j]))
            .collect();
        let mut total = FieldElement::zero();
        for (j, im) in images.iter().enumerate() {
            if im.length().sign() != Ordering::Greater {
                issues.push(format!("image of interval {j} is empty"));
            }
            total = &total + &im.length();
        }
        let mut order: Vec<usize> = (0..N).collect();
        order.sort_by(|&a, &b| images[a].lo.cmp_real(&images[b].lo));
        if images[order[0]].lo.sign() != Ordering::Equal {
            issues.push("images do not start at 0".into());
        }
        for w in order.windows(2) {
            match images[w[0]].hi.cmp_real(&images[w[1]].lo) {
                Ordering::Greater => issues.push(format!("images {} and {} overlap", w[0], w[1])),
                Ordering::Less => issues.push(format!("gap between images {} and {}", w[0], w[1])),
                Ordering::Equal => {}
            }
        }
        if images[order[N - 1]].hi != FieldElement::one() {
            issues.push("images do not end at 1".into());
        }
        PermutationReport {
            permutation: order.clone().try_into().expect("N entries"),
            total_length: total,
            issues,
        }
    }

    /// First return of `x` to `target` under ρ.
    pub fn first_return(
        &self,
        x: &FieldElement,
        target: &Interval,
        cap: usize,
    ) -> Result<FirstReturn> {
        if !target.contains(x) {
            return Err(Error::OutOfDomain(x.to_string()));
        }
        let mut y = x.clone();
        let mut itinerary = Vec::new();
        for _ in 0..cap {
            let j = self.interval_index(&y)?;
            itinerary.push(j);
            y = &y + &self.tau[j];
            if target.contains(&y) {
                return Ok(FirstReturn {
                    point: y,
                    time: itinerary.len(),
                    itinerary,
                });
            }
        }
        Err(Error::CapExceeded(cap))
    }

    /// Recomputes ν_j and p(j,·) by iterating each whole interval ωΩ_j
    /// until it returns to Ω_0 = [0, ω), requiring it to stay inside a
    /// single Ω_i at every step.
    pub fn derive_path_data(&self, cap: usize) -> Result<DerivedPaths> {
        let omega = FieldElement::omega();
        let target = self.omega_interval(0);
        let mut nu = [0usize; N];
        let mut path: [Vec<usize>; N] = Default::default();
        let mut images_match = true;
        for j in 0..N {
            let mut cur = self.omega_interval(j).scale(&omega);
            let mut itin = Vec::new();
            loop {
                if itin.len() >= cap {
                    return Err(Error::CapExceeded(cap));
                }
                let i = self.interval_index(&cur.lo)?;
                if !self.omega_interval(i).covers(&cur) {
                    return Err(Error::Straddle {
                        lo: cur.lo.to_string(),
                        hi: cur.hi.to_string(),
                        step: itin.len(),
                    });
                }
                itin.push(i);
                cur = cur.translate(&self.tau[i]);
                if target.contains(&cur.lo) {
                    if !target.covers(&cur) {
                        return Err(Error::Straddle {
                            lo: cur.lo.to_string(),
                            hi: cur.hi.to_string(),
                            step: itin.len(),
                        });
                    }
                    break;
                }
            }
            // the return map on Ω_0 is ρ conjugated by scaling with ω
            let expected = self.omega_interval(j).translate(&self.tau[j]).scale(&omega);
            images_match &= cur == expected;
            nu[j] = itin.len();
            path[j] = itin;
        }
        Ok(DerivedPaths {
            nu,
            path,
            images_match,
        })
    }

    /// For each sample x ∈ [0, ω): first-return image equals ω·ρ(x/ω).
    pub fn scaling_conjugacy_check(&self, samples: &[FieldElement]) -> Result<ConjugacyReport> {
        let omega = FieldElement::omega();
        let omega_inv = FieldElement::omega_inv();
        let target = self.omega_interval(0);
        let mut failures = Vec::new();
        for x in samples {
            let ret = self.first_return(x, &target, DEFAULT_CAP)?;
            let conj = &omega * &self.rho(&(x * &omega_inv))?;
            if ret.point != conj {
                failures.push(x.clone());
            }
        }
        Ok(ConjugacyReport {
            checked: samples.len(),
            failures,
        })
    }

    /// Copy of the table with one translation replaced (for negative tests).
    pub fn with_tau(&self, j: usize, tau: FieldElement) -> Self {
        let mut t = self.clone();
        t.tau[j] = tau;
        t
    }

    pub fn total_length(&self) -> FieldElement {
        (0..N).fold(FieldElement::zero(), |acc, j| &acc + &self.omega_interval(j).length())
    }
}

#[derive(Clone, Debug)]
pub struct PermutationReport {
    /// indices j of the images Ω_j + τ_j, read left to right
    pub permutation: [usize; N],
    pub total_length: FieldElement,
    pub issues: Vec<String>,
}

impl PermutationReport {
    pub fn passed(&self) -> bool {
        self.issues.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct FirstReturn {
    pub point: FieldElement,
    pub time: usize,
    pub itinerary: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedPaths {
    pub nu: [usize; N],
    pub path: [Vec<usize>; N],
    /// ρ^{ν_j}(ωΩ_j) = ω(Ω_j + τ_j) for every j
    pub images_match: bool,
}

impl DerivedPaths {
    pub fn matches(&self, table: &IETTable) -> bool {
        self.nu == table.nu && self.path == table.path && self.images_match
    }
}

#[derive(Clone, Debug)]
pub struct ConjugacyReport {
    pub checked: usize,
    pub failures: Vec<FieldElement>,
}

/// Rational helper used by tests and sampling code.
pub fn rational(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> &'static IETTable {
        IETTable::canonical()
    }

    #[test]
    fn table_invariants() {
        let t = table();
        for j in 0..N {
            assert_eq!(t.delta[j].cmp_real(&t.delta[j + 1]), Ordering::Less);
            assert_eq!(t.path[j].len(), t.nu[j]);
            assert_eq!(t.path[j][0], 0);
        }
        assert_eq!(t.symbol_count(), 61);
        assert_eq!(t.total_length(), FieldElement::one());
        assert_eq!(t.delta[1], FieldElement::omega());
    }

    #[test]
    fn interval_index_examples() {
        let t = table();
        assert_eq!(t.interval_index(&FieldElement::zero()).unwrap(), 0);
        assert_eq!(t.interval_index(&FieldElement::lambda()).unwrap(), 6);
        assert!(t.interval_index(&FieldElement::one()).is_err());
        assert!(t.interval_index(&fe("-1/100;0;0")).is_err());
        for j in 0..N {
            assert_eq!(t.interval_index(&t.delta[j]).unwrap(), j);
        }
    }

    #[test]
    fn rho_examples() {
        let t = table();
        assert_eq!(t.rho(&FieldElement::zero()).unwrap(), fe("0;1;1"));
        assert_eq!(t.rho(&FieldElement::lambda()).unwrap(), FieldElement::zero());
        assert_eq!(t.rho(&t.delta[1]).unwrap(), &t.delta[1] + &fe("-1;3;0"));
    }

    #[test]
    fn permutation_and_lengths() {
        let r = table().verify_permutation();
        assert!(r.passed(), "{:?}", r.issues);
        assert_eq!(r.permutation, [6, 2, 4, 3, 5, 1, 0]);
        assert_eq!(r.total_length, FieldElement::one());

        let bad = table().with_tau(0, &table().tau[0] + &fe("1/1000;0;0"));
        let r = bad.verify_permutation();
        assert!(!r.passed());
        assert!(r.issues.iter().any(|s| s.contains("overlap") || s.contains("end at 1")));
    }

    #[test]
    fn first_return_examples() {
        let t = table();
        let target = t.omega_interval(0);
        let w = FieldElement::omega();
        let r = t.first_return(&FieldElement::zero(), &target, DEFAULT_CAP).unwrap();
        assert_eq!((r.time, r.itinerary), (4, vec![0, 6, 3, 6]));
        let r = t.first_return(&(&w * &t.delta[6]), &target, DEFAULT_CAP).unwrap();
        assert_eq!((r.time, r.itinerary), (4, vec![0, 6, 4, 6]));
        let r = t.first_return(&(&w * &t.delta[1]), &target, DEFAULT_CAP).unwrap();
        assert_eq!(r.time, 13);
        assert_eq!(r.itinerary, t.path[1]);
        assert!(matches!(
            t.first_return(&FieldElement::zero(), &target, 2),
            Err(Error::CapExceeded(2))
        ));
        assert!(t.first_return(&FieldElement::lambda(), &target, 10).is_err());
    }

    #[test]
    fn derive_path_data_reproduces_table() {
        let t = table();
        let d = t.derive_path_data(DEFAULT_CAP).unwrap();
        assert_eq!(d.nu, [4, 13, 12, 8, 8, 12, 4]);
        assert_eq!(d.path[0], vec![0, 6, 3, 6]);
        assert_eq!(d.path[3], vec![0, 6, 3, 6, 1, 6, 3, 6]);
        assert!(d.matches(t));
    }

    #[test]
    fn derive_path_data_detects_broken_table() {
        let t = table();
        let bad = t.with_tau(3, &t.tau[3] + &fe("1/50;0;0"));
        assert!(bad.derive_path_data(200).is_err() || !bad.derive_path_data(200).unwrap().matches(t));
    }

    #[test]
    fn conjugacy_examples() {
        let t = table();
        let w = FieldElement::omega();
        let target = t.omega_interval(0);
        let r = t.first_return(&FieldElement::zero(), &target, DEFAULT_CAP).unwrap();
        assert_eq!(r.point, &w * &fe("0;1;1"));
        let r = t.first_return(&(&w * &FieldElement::lambda()), &target, DEFAULT_CAP).unwrap();
        assert_eq!(r.point, FieldElement::zero());
        let samples: Vec<FieldElement> = (0..20)
            .map(|k| &w * &FieldElement::from_rational(rational(k, 20)))
            .collect();
        let rep = t.scaling_conjugacy_check(&samples).unwrap();
        assert_eq!(rep.checked, 20);
        assert!(rep.failures.is_empty());
    }
}
