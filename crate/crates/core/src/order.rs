//! Orders of fractional parts modulo m, the bound T(m) derived from the
//! splitting of f(x) = x³+x²+x−1 modulo primes, the cyclotomic
//! factorization of 1−ωⁿ, and the denominator-ordered survey of periodic
//! points.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;
use rayon::prelude::*;

use crate::coding::Coding;
use crate::cycles::{pool, REFERENCE_CORE};
use crate::error::{Error, Result};
use crate::field::{FieldElement, IntTriple, Rational, ResidueElement};

/// Discriminant of f.
pub const DISCRIMINANT: i64 = -44;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SplittingKind {
    RamifiedTotal,
    RamifiedPartial,
    Inert,
    Splits,
    SplitsCompletely,
}

impl SplittingKind {
    pub fn label(self) -> &'static str {
        match self {
            Self::RamifiedTotal => "ramified-total",
            Self::RamifiedPartial => "ramified-partial",
            Self::Inert => "inert",
            Self::Splits => "splits",
            Self::SplitsCompletely => "splits-completely",
        }
    }
}

impl fmt::Display for SplittingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A root r of f mod p. The matching linear factor is (x + a) with
/// a = −r mod p.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Root {
    pub root: u64,
    pub multiplicity: u32,
}

impl Root {
    pub fn factor_constant(&self, p: u64) -> u64 {
        (p - self.root) % p
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingReport {
    pub p: u64,
    pub kind: SplittingKind,
    pub roots: Vec<Root>,
}

impl fmt::Display for SplittingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={} {}", self.p, self.kind)?;
        for r in &self.roots {
            write!(f, " (x+{})^{}", r.factor_constant(self.p), r.multiplicity)?;
        }
        Ok(())
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut e = 0;
        while n % d == 0 {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if sieve[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
    }
    out
}

pub fn mobius(n: u64) -> i64 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Σ_{d|m} d³ μ(m/d): the number of ξ with exact denominator m.
pub fn primitive_count(m: u64) -> i64 {
    divisors(m)
        .into_iter()
        .map(|d| (d * d * d) as i64 * mobius(m / d))
        .sum()
}

// f = x³+x²+x−1, ascending, as residues mod p
fn f_mod(p: u64) -> Vec<u64> {
    vec![p - 1, 1 % p, 1 % p, 1 % p]
}

fn eval_mod(poly: &[u64], x: u64, p: u64) -> u64 {
    poly.iter().rev().fold(0, |acc, &c| (acc * x + c) % p)
}

// synthetic division by (x − r); the remainder is assumed zero
fn deflate(poly: &[u64], r: u64, p: u64) -> Vec<u64> {
    let n = poly.len() - 1;
    let mut q = vec![0; n];
    let mut carry = 0;
    for i in (0..n).rev() {
        carry = (poly[i + 1] + carry * r) % p;
        q[i] = carry;
    }
    q
}

pub fn splitting_type(p: u64) -> Result<SplittingReport> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut poly = f_mod(p);
    let mut roots: Vec<Root> = Vec::new();
    for r in 0..p {
        let mut mult = 0;
        while poly.len() > 1 && eval_mod(&poly, r, p) == 0 {
            poly = deflate(&poly, r, p);
            mult += 1;
        }
        if mult > 0 {
            roots.push(Root {
                root: r,
                multiplicity: mult,
            });
        }
        if poly.len() == 1 {
            break;
        }
    }
    let max_mult = roots.iter().map(|r| r.multiplicity).max().unwrap_or(0);
    let kind = match (max_mult, roots.len()) {
        (3, _) => SplittingKind::RamifiedTotal,
        (2, _) => SplittingKind::RamifiedPartial,
        (_, 0) => SplittingKind::Inert,
        (_, 1) => SplittingKind::Splits,
        _ => SplittingKind::SplitsCompletely,
    };
    let ramified = matches!(kind, SplittingKind::RamifiedTotal | SplittingKind::RamifiedPartial);
    debug_assert_eq!(ramified, DISCRIMINANT % p as i64 == 0);
    Ok(SplittingReport { p, kind, roots })
}

/// T(p) from the splitting table (e = 1).
pub fn t_prime(p: u64) -> Result<u64> {
    let kind = splitting_type(p)?.kind;
    let third = |v: u64| if p % 3 == 1 { v / 3 } else { v };
    Ok(match kind {
        SplittingKind::RamifiedTotal => p * p * (p - 1),
        SplittingKind::RamifiedPartial => p * (p - 1),
        SplittingKind::Inert => third(p * p + p + 1),
        SplittingKind::Splits => (p * p - 1) / 3,
        SplittingKind::SplitsCompletely => third(p - 1),
    })
}

/// One primary factor p^e of an [`OrderBound`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimaryPart {
    pub p: u64,
    pub e: u32,
    pub t: u64,
    /// largest k ≤ e with ω^{T(p)} ≡ 1 mod p^k
    pub lifting_exponent: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderBound {
    pub m: u64,
    pub t: u64,
    pub parts: Vec<PrimaryPart>,
}

fn lifting_exponent(p: u64, e: u32, tp: u64) -> Result<u32> {
    let mut k = 0;
    for j in 1..=e {
        let w = ResidueElement::omega(p.pow(j))?.pow(tp);
        if w != ResidueElement::one(p.pow(j))? {
            break;
        }
        k = j;
    }
    Ok(k)
}

/// T(p^e) = T(p)·p^{max(0, e−k)}.
pub fn t_prime_power(p: u64, e: u32) -> Result<PrimaryPart> {
    let tp = t_prime(p)?;
    let k = lifting_exponent(p, e, tp)?;
    if k == 0 && e > 0 {
        return Err(Error::InvalidArgument(format!(
            "ω^{tp} is not 1 modulo {p}; T({p}) is not a valid bound"
        )));
    }
    Ok(PrimaryPart {
        p,
        e,
        t: tp * p.pow(e.saturating_sub(k)),
        lifting_exponent: k,
    })
}

pub fn t_bound(m: u64) -> Result<OrderBound> {
    if m == 0 {
        return Err(Error::ZeroModulus);
    }
    let parts = factorize(m)
        .into_iter()
        .map(|(p, e)| t_prime_power(p, e))
        .collect::<Result<Vec<_>>>()?;
    let t = parts.iter().fold(1, |acc, q| acc.lcm(&q.t));
    Ok(OrderBound { m, t, parts })
}

/// t(ξ) = min{k ≥ 1 : ωᵏξ ≡ ξ mod m}, capped at T(m).
pub fn order_of(xi: &ResidueElement) -> Result<u64> {
    let m = xi.modulus();
    let cap = t_bound(m)?.t;
    let w = ResidueElement::omega(m)?;
    let mut cur = w.mul(xi)?;
    let mut k = 1;
    while cur != *xi {
        if k >= cap {
            return Err(Error::CapExceeded(cap as usize));
        }
        cur = w.mul(&cur)?;
        k += 1;
    }
    Ok(k)
}

/// Multiplicative order of ω in Z[λ]/(m).
pub fn omega_order(m: u64) -> Result<u64> {
    order_of(&ResidueElement::one(m)?)
}

/// Orders of all m³ residues, indexed by a + b·m + c·m². Multiplication
/// by ω permutes the residues, so each orbit is walked once.
pub fn all_orders(m: u64) -> Result<Vec<u64>> {
    if m == 0 {
        return Err(Error::ZeroModulus);
    }
    let cap = t_bound(m)?.t;
    let size = (m * m * m) as usize;
    let index = |r: &ResidueElement| {
        let c = r.coeffs();
        (c[0] + c[1] * m + c[2] * m * m) as usize
    };
    let w = ResidueElement::omega(m)?;
    let mut orders = vec![0u64; size];
    for i in 0..size {
        if orders[i] != 0 {
            continue;
        }
        let i64_ = i as u64;
        let start = ResidueElement::new(
            m,
            [(i64_ % m) as i128, (i64_ / m % m) as i128, (i64_ / (m * m)) as i128],
        )?;
        let mut orbit = vec![i];
        let mut cur = w.mul(&start)?;
        while cur != start {
            if orbit.len() as u64 >= cap {
                return Err(Error::CapExceeded(cap as usize));
            }
            orbit.push(index(&cur));
            cur = w.mul(&cur)?;
        }
        let len = orbit.len() as u64;
        for j in orbit {
            orders[j] = len;
        }
    }
    Ok(orders)
}

/// Index of the ideal (ξ, m) in Z[λ]: the gcd of the 3×3 minors of the
/// generators ξ, ξλ, ξλ², m, mλ, mλ². Equals 1 iff ξ and m are coprime.
pub fn ideal_index(xi: IntTriple, m: u64) -> u64 {
    let mut rows: Vec<[i128; 3]> = Vec::with_capacity(6);
    let mut g = xi;
    for _ in 0..3 {
        rows.push(g.0);
        g = g.mul_lambda();
    }
    let m = m as i128;
    rows.extend([[m, 0, 0], [0, m, 0], [0, 0, m]]);
    let mut g: i128 = 0;
    for i in 0..6 {
        for j in i + 1..6 {
            for k in j + 1..6 {
                let (a, b, c) = (rows[i], rows[j], rows[k]);
                let det = a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
                    + a[2] * (b[0] * c[1] - b[1] * c[0]);
                g = g.gcd(&det);
            }
        }
    }
    g as u64
}

pub fn is_coprime(xi: IntTriple, m: u64) -> bool {
    ideal_index(xi, m) == 1
}

/// The cyclotomic polynomial Cₙ, ascending integer coefficients, from
/// xⁿ−1 = Π_{d|n} C_d(x).
pub fn cyclotomic(n: u64) -> Vec<i64> {
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in divisors(n).into_iter().filter(|&d| d < n) {
        num = poly_div_exact(&num, &cyclotomic(d));
    }
    num
}

// exact division by a monic polynomial
fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dl = den.len() - 1;
    let ql = num.len() - dl;
    let mut q = vec![0i64; ql];
    for i in (0..ql).rev() {
        let c = rem[i + dl];
        q[i] = c;
        for j in 0..=dl {
            rem[i + j] -= c * den[j];
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "non-exact cyclotomic division");
    q
}

/// Exact value of Σ cᵢλⁱ.
pub fn eval_at_lambda(poly: &[i64]) -> FieldElement {
    let lam = FieldElement::lambda();
    poly.iter().rev().fold(FieldElement::zero(), |acc, &c| {
        &(&acc * &lam) + &FieldElement::from_ints(c, 0, 0)
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicCheck {
    pub n: u64,
    /// indices d of the factors C_d used
    pub factors: Vec<u64>,
    pub product: FieldElement,
    pub expected: FieldElement,
}

impl CyclotomicCheck {
    pub fn passed(&self) -> bool {
        self.product == self.expected
    }
}

/// 1−ωⁿ = −Π_{d|n} C_{3d}(λ) Π_{d|n, 3∤d} C_d(λ).
pub fn cyclotomic_check(n: u64) -> Result<CyclotomicCheck> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let mut factors = Vec::new();
    for d in divisors(n) {
        factors.push(3 * d);
        if d % 3 != 0 {
            factors.push(d);
        }
    }
    factors.sort_unstable();
    let product = factors
        .iter()
        .fold(-FieldElement::one(), |acc, &d| &acc * &eval_at_lambda(&cyclotomic(d)));
    let expected = &FieldElement::one() - &FieldElement::omega().pow(n);
    Ok(CyclotomicCheck {
        n,
        factors,
        product,
        expected,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CebotarevReport {
    pub bound: u64,
    pub inert: u64,
    pub splits: u64,
    pub splits_completely: u64,
}

impl CebotarevReport {
    pub fn total(&self) -> u64 {
        self.inert + self.splits + self.splits_completely
    }

    /// (inert, splits, splits completely)
    pub fn frequencies(&self) -> (f64, f64, f64) {
        let t = self.total() as f64;
        (
            self.inert as f64 / t,
            self.splits as f64 / t,
            self.splits_completely as f64 / t,
        )
    }
}

/// Splitting-type tallies over primes ≤ bound, skipping the ramified 2 and 11.
pub fn cebotarev_frequencies(bound: u64) -> Result<CebotarevReport> {
    if bound < 100 {
        return Err(Error::InvalidArgument(format!("bound {bound} below 100")));
    }
    let mut r = CebotarevReport {
        bound,
        inert: 0,
        splits: 0,
        splits_completely: 0,
    };
    for p in primes_up_to(bound) {
        match splitting_type(p)?.kind {
            SplittingKind::Inert => r.inert += 1,
            SplittingKind::Splits => r.splits += 1,
            SplittingKind::SplitsCompletely => r.splits_completely += 1,
            _ => {}
        }
    }
    Ok(r)
}

/// A periodic point ξ+β found by the survey.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurveyPoint {
    pub m: u64,
    /// m·ξ, coefficients in [0, m)
    pub xi: IntTriple,
    pub order: u64,
    pub period: usize,
    pub beta: IntTriple,
    /// number of periodic points sharing this ξ
    pub multiplicity: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DenominatorRow {
    pub m: u64,
    pub primitive: u64,
    pub mobius_count: i64,
    pub bound: u64,
    /// every order divides the bound
    pub orders_divide: bool,
    /// order → count over primitive ξ
    pub order_histogram: BTreeMap<u64, u64>,
    pub points: u64,
    pub boundary_xi: u64,
    /// ξ for which no candidate β produced a periodic point
    pub unresolved: u64,
    /// every period is a multiple of the order of its ξ
    pub periods_consistent: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SurveyReport {
    pub max_m: u64,
    pub rows: Vec<DenominatorRow>,
    pub points: Vec<SurveyPoint>,
    /// β → number of periodic points
    pub beta_counts: BTreeMap<IntTriple, u64>,
}

impl SurveyReport {
    pub fn total_xi(&self) -> u64 {
        self.rows.iter().map(|r| r.primitive).sum()
    }

    pub fn total_points(&self) -> u64 {
        self.rows.iter().map(|r| r.points).sum()
    }

    pub fn boundary_fraction(&self) -> Rational {
        let b: u64 = self.rows.iter().map(|r| r.boundary_xi).sum();
        Rational::new(b.into(), self.total_xi().max(1).into())
    }

    /// μ′(β): share of periodic points with integer part β. Each ξ enters
    /// once, at its minimal denominator.
    pub fn mu_prime(&self) -> Vec<(IntTriple, Rational)> {
        let total = self.total_points().max(1);
        let mut v: Vec<_> = self
            .beta_counts
            .iter()
            .map(|(b, &c)| (*b, Rational::new(c.into(), total.into())))
            .collect();
        v.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        v
    }

    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| {
            r.primitive as i64 == r.mobius_count
                && r.orders_divide
                && r.periods_consistent
                && r.unresolved == 0
        })
    }
}

/// Residues of Ξ_m that do not lie in any Ξ_d with d | m, d < m, found by
/// removing the scaled copies of the smaller lattices.
fn primitive_mask(m: u64) -> Vec<bool> {
    let size = (m * m * m) as usize;
    let mut mask = vec![true; size];
    for d in divisors(m).into_iter().filter(|&d| d < m) {
        let s = m / d;
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let i = (a * s) + (b * s) * m + (c * s) * m * m;
                    mask[i as usize] = false;
                }
            }
        }
    }
    mask
}

/// The periodic points ξ+β for one primitive m·ξ, with β drawn from
/// `core`, as (β, period).
fn periodic_lifts(coding: &Coding, xi: IntTriple, m: u64, core: &[IntTriple]) -> Vec<(IntTriple, usize)> {
    let den = m as i128;
    let one = IntTriple::new(den, 0, 0);
    let mut out = Vec::new();
    for &beta in core {
        let num = xi + beta.scale(den);
        // cheap reject before the exact interval test
        let approx = num.to_f64() / m as f64;
        if !(-1e-9..1.0 + 1e-9).contains(&approx) {
            continue;
        }
        if num.sign().is_lt() || (num - one).sign().is_ge() {
            continue;
        }
        let code = coding.encode_lattice(num, den);
        if code.is_purely_periodic() {
            out.push((beta, code.period.len()));
        }
    }
    out
}

pub fn survey_core() -> Vec<IntTriple> {
    let set: BTreeSet<IntTriple> = REFERENCE_CORE.iter().map(|(b, _)| IntTriple(*b)).collect();
    set.into_iter().collect()
}

/// Exhaustive survey of Ξ_m for 2 ≤ m ≤ max_m. With `lift` set, every
/// primitive ξ is lifted to its periodic points ξ+β, β in `core`.
pub fn denominator_survey(max_m: u64, core: &[IntTriple], lift: bool, workers: usize) -> Result<SurveyReport> {
    if max_m < 2 {
        return Err(Error::InvalidArgument(format!("max_m {max_m} below 2")));
    }
    if max_m > 64 {
        return Err(Error::Budget {
            need_mb: max_m * max_m * max_m * 8 / (1 << 20) + 1,
            cap_mb: 0,
        });
    }
    let coding = Coding::canonical();
    let pool = pool(workers)?;
    let mut report = SurveyReport {
        max_m,
        ..Default::default()
    };
    for m in 2..=max_m {
        let bound = t_bound(m)?.t;
        let orders = all_orders(m)?;
        let mask = primitive_mask(m);
        // shard by the constant coefficient, merged in shard order
        let shards: Vec<(Vec<SurveyPoint>, DenominatorRow)> = pool.install(|| {
            (0..m)
                .into_par_iter()
                .map(|a| {
                    let mut row = DenominatorRow {
                        orders_divide: true,
                        periods_consistent: true,
                        ..Default::default()
                    };
                    let mut pts = Vec::new();
                    for c in 0..m {
                        for b in 0..m {
                            let i = (a + b * m + c * m * m) as usize;
                            if !mask[i] {
                                continue;
                            }
                            let order = orders[i];
                            row.primitive += 1;
                            *row.order_histogram.entry(order).or_default() += 1;
                            row.orders_divide &= bound % order == 0;
                            if !lift {
                                continue;
                            }
                            let xi = IntTriple::new(a as i128, b as i128, c as i128);
                            let lifts = periodic_lifts(coding, xi, m, core);
                            let k = lifts.len() as u64;
                            match k {
                                0 => row.unresolved += 1,
                                1 => {}
                                _ => row.boundary_xi += 1,
                            }
                            for (beta, period) in lifts {
                                row.points += 1;
                                row.periods_consistent &= period as u64 % order == 0;
                                pts.push(SurveyPoint {
                                    m,
                                    xi,
                                    order,
                                    period,
                                    beta,
                                    multiplicity: k,
                                });
                            }
                        }
                    }
                    (pts, row)
                })
                .collect()
        });
        let mut row = DenominatorRow {
            m,
            mobius_count: primitive_count(m),
            bound,
            orders_divide: true,
            periods_consistent: true,
            ..Default::default()
        };
        for (pts, r) in shards {
            row.primitive += r.primitive;
            row.points += r.points;
            row.boundary_xi += r.boundary_xi;
            row.unresolved += r.unresolved;
            row.orders_divide &= r.orders_divide;
            row.periods_consistent &= r.periods_consistent;
            for (k, v) in r.order_histogram {
                *row.order_histogram.entry(k).or_default() += v;
            }
            for p in pts {
                *report.beta_counts.entry(p.beta).or_default() += 1;
                report.points.push(p);
            }
        }
        report.rows.push(row);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ramified_primes() {
        let r2 = splitting_type(2).unwrap();
        assert_eq!(r2.kind, SplittingKind::RamifiedTotal);
        assert_eq!(r2.roots, vec![Root { root: 1, multiplicity: 3 }]);
        assert_eq!(r2.roots[0].factor_constant(2), 1);
        let r11 = splitting_type(11).unwrap();
        assert_eq!(r11.kind, SplittingKind::RamifiedPartial);
        let consts: Vec<_> = r11.roots.iter().map(|r| (r.factor_constant(11), r.multiplicity)).collect();
        assert!(consts.contains(&(3, 2)) && consts.contains(&(6, 1)));
        assert_eq!(splitting_type(3).unwrap().kind, SplittingKind::Inert);
        assert_eq!(splitting_type(7).unwrap().roots, vec![Root { root: 5, multiplicity: 1 }]);
        assert!(matches!(splitting_type(9), Err(Error::NotPrime(9))));
    }

    #[test]
    fn only_discriminant_primes_ramify() {
        for p in primes_up_to(500) {
            let k = splitting_type(p).unwrap().kind;
            let ram = matches!(k, SplittingKind::RamifiedTotal | SplittingKind::RamifiedPartial);
            assert_eq!(ram, p == 2 || p == 11, "p={p}");
        }
    }

    #[test]
    fn t_values() {
        assert_eq!(t_prime(2).unwrap(), 4);
        assert_eq!(t_prime(11).unwrap(), 110);
        assert_eq!(t_prime(3).unwrap(), 13);
        assert_eq!(t_bound(7).unwrap().t, 16);
        assert_eq!(t_bound(6).unwrap().t, 52);
        assert_eq!(t_bound(1).unwrap().t, 1);
        assert!(t_bound(0).is_err());
        for m in [2, 3, 7, 11] {
            assert_eq!(omega_order(m).unwrap(), t_bound(m).unwrap().t, "m={m}");
        }
    }

    #[test]
    fn orders_small_moduli() {
        assert_eq!(order_of(&ResidueElement::zero(5).unwrap()).unwrap(), 1);
        for m in [2u64, 3] {
            let t = t_bound(m).unwrap().t;
            let o = all_orders(m).unwrap();
            assert_eq!(o.len() as u64, m * m * m);
            assert!(o.iter().all(|k| t % k == 0));
            let xi = ResidueElement::new(m, [1, 1, 0]).unwrap();
            assert_eq!(o[(1 + m) as usize], order_of(&xi).unwrap());
        }
    }

    #[test]
    fn ideal_index_basics() {
        assert_eq!(ideal_index(IntTriple::ONE, 6), 1);
        assert_eq!(ideal_index(IntTriple::ZERO, 3), 27);
        assert_eq!(ideal_index(IntTriple::new(2, 0, 0), 4), 8);
        // (2, λ+1) is the prime above 2, of norm 2
        assert_eq!(ideal_index(IntTriple::new(1, 1, 0), 2), 2);
        assert_eq!(ideal_index(IntTriple::new(3, 0, 0), 3), 27);
    }

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic(1), vec![-1, 1]);
        assert_eq!(cyclotomic(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic(12), vec![1, 0, -1, 0, 1]);
        let c = cyclotomic_check(1).unwrap();
        assert_eq!(c.factors, vec![1, 3]);
        assert!(c.passed());
        assert!(cyclotomic_check(2).unwrap().passed());
    }

    #[test]
    fn mobius_counts() {
        assert_eq!(primitive_count(2), 7);
        assert_eq!(primitive_count(1), 1);
        for m in 2..=12u64 {
            let direct = primitive_mask(m).iter().filter(|&&b| b).count() as i64;
            assert_eq!(direct, primitive_count(m), "m={m}");
        }
    }

    #[test]
    fn small_survey() {
        let r = denominator_survey(4, &survey_core(), true, 1).unwrap();
        assert!(r.passed(), "{:?}", r.rows);
        assert_eq!(r.rows[0].primitive, 7);
    }
}
