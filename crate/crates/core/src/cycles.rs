//! Enumeration of the periodic points Fix(γⁿ) and their split into
//! fractional part ξ and integer part β.
//!
//! An n-periodic code ((j_1,t_1),…,(j_n,t_n))^∞ is a closed walk of length n
//! in the admissibility graph. Its point is x = S/(1−ωⁿ) with
//! S = Σ d_i ω^{i−1} ∈ Z[λ]; writing (1−ωⁿ)α_n = M_n gives x = S·α_n/M_n,
//! so every n-cycle is an integer triple over the common denominator M_n
//! and the whole enumeration runs in fixed-width integer arithmetic.
//!
//! Work is sharded by the first symbol of the word (61 shards) and merged
//! in shard order, so results do not depend on the worker count.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;

use crate::coding::{is_forbidden_tail, Coding, PeriodicCode, Symbol};
use crate::error::{Error, Result};
use crate::field::{FieldElement, IntTriple, Rational};
use crate::format::sig_digits;

/// Default grouping-memory cap in MB when `AY_MAX_MEMORY_MB` is unset.
pub const DEFAULT_MEMORY_MB: u64 = 3072;

/// A γ-periodic point with its code and decomposition x = ξ + β.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    pub code: PeriodicCode,
    pub x: FieldElement,
    pub xi: FieldElement,
    pub beta: FieldElement,
}

/// 1 − ωⁿ
pub fn one_minus_omega_pow(n: u32) -> FieldElement {
    &FieldElement::one() - &FieldElement::omega().pow(n as u64)
}

/// #ℐ_n = |N(1 − ωⁿ)|
pub fn i_n_size(n: u32) -> BigInt {
    one_minus_omega_pow(n).norm().to_integer().abs()
}

/// M_n, the least positive integer divisible by 1 − ωⁿ in Z[λ].
pub fn m_n(n: u32) -> BigInt {
    one_minus_omega_pow(n)
        .min_integer_multiple()
        .expect("1 − ωⁿ is a nonzero algebraic integer")
        .0
}

/// Per-period constants shared by all shards.
pub struct PeriodContext<'a> {
    coding: &'a Coding,
    n: usize,
    pub m: i128,
    pub alpha: IntTriple,
    /// d_k·ω^i for position i and symbol k
    weighted: Vec<Vec<IntTriple>>,
}

impl<'a> PeriodContext<'a> {
    pub fn new(coding: &'a Coding, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("period must be at least 1".into()));
        }
        let (m, alpha) = one_minus_omega_pow(n).min_integer_multiple()?;
        let m = m
            .to_i128()
            .ok_or_else(|| Error::InvalidArgument(format!("M_{n} too large")))?;
        let alpha = alpha.to_int_triple().expect("α_n is integral");
        let omega = IntTriple::new(1, -1, -1);
        let mut weighted = Vec::with_capacity(n as usize);
        let mut w = IntTriple::ONE;
        for _ in 0..n {
            weighted.push(
                (0..coding.symbol_count())
                    .map(|k| coding.digit_int(k) * w)
                    .collect(),
            );
            w = w * omega;
        }
        Ok(Self {
            coding,
            n: n as usize,
            m,
            alpha,
            weighted,
        })
    }

    pub fn period(&self) -> usize {
        self.n
    }

    /// Numerator of x over M_n for a word with digit polynomial `sum`.
    #[inline]
    pub fn numerator(&self, sum: IntTriple) -> IntTriple {
        sum * self.alpha
    }

    pub fn cycle(&self, word: &[usize], num: IntTriple) -> Cycle {
        let code = PeriodicCode::periodic(word.iter().map(|&k| self.coding.symbols[k]).collect());
        Cycle {
            code,
            x: FieldElement::from_ratio(num.0, self.m),
            xi: FieldElement::from_ratio(num.rem_euclid(self.m).0, self.m),
            beta: FieldElement::from(num.div_euclid(self.m)),
        }
    }

    /// Depth-first walk over all n-periodic words starting with symbol
    /// `first`; `visit` receives the word (symbol indices) and the
    /// numerator of its point.
    pub fn walk_shard<F>(&self, first: usize, mut visit: F)
    where
        F: FnMut(&[usize], IntTriple),
    {
        let mut word = Vec::with_capacity(self.n);
        word.push(first);
        let closing_j = self.coding.p_idx(first);
        self.dfs(
            &mut word,
            self.weighted[0][first],
            true,
            closing_j,
            &mut visit,
        );
    }

    fn dfs<F>(
        &self,
        word: &mut Vec<usize>,
        sum: IntTriple,
        constant: bool,
        closing_j: usize,
        visit: &mut F,
    ) where
        F: FnMut(&[usize], IntTriple),
    {
        let depth = word.len();
        let first = word[0];
        if depth == self.n {
            // n = 1: the single symbol must close on itself
            if self.coding.symbols[word[depth - 1]].j != closing_j {
                return;
            }
            if constant && is_forbidden_tail(self.coding.symbols[first]) {
                return;
            }
            visit(word, self.numerator(sum));
            return;
        }
        let last_j = self.coding.symbols[word[depth - 1]].j;
        let last = depth + 1 == self.n;
        for &k in self.coding.successors(last_j) {
            if last && self.coding.symbols[k].j != closing_j {
                continue;
            }
            word.push(k);
            self.dfs(
                word,
                sum + self.weighted[depth][k],
                constant && k == first,
                closing_j,
                visit,
            );
            word.pop();
        }
    }

    /// Number of n-periodic words starting with `first` (no arithmetic).
    pub fn count_shard(&self, first: usize) -> u64 {
        let mut stack = Vec::with_capacity(self.n);
        stack.push(first);
        self.count_rec(&mut stack, self.coding.p_idx(first), true)
    }

    fn count_rec(&self, word: &mut Vec<usize>, closing_j: usize, constant: bool) -> u64 {
        let depth = word.len();
        let first = word[0];
        if depth == self.n {
            if self.coding.symbols[word[depth - 1]].j != closing_j {
                return 0;
            }
            let excluded = constant && is_forbidden_tail(self.coding.symbols[first]);
            return u64::from(!excluded);
        }
        let last_j = self.coding.symbols[word[depth - 1]].j;
        let succ = self.coding.successors(last_j);
        if depth + 1 == self.n {
            let mut c = 0;
            for &k in succ {
                if self.coding.symbols[k].j == closing_j {
                    let excluded = constant && k == first && is_forbidden_tail(self.coding.symbols[k]);
                    c += u64::from(!excluded);
                }
            }
            return c;
        }
        let mut total = 0;
        for &k in succ {
            word.push(k);
            total += self.count_rec(word, closing_j, constant && k == first);
            word.pop();
        }
        total
    }
}

pub(crate) fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))
}

/// #Fix(γⁿ) by exhaustive enumeration of periodic words.
pub fn count_fixed(n: u32, workers: usize) -> Result<u64> {
    let coding = Coding::canonical();
    let ctx = PeriodContext::new(coding, n)?;
    let counts: Vec<u64> = pool(workers)?.install(|| {
        (0..coding.symbol_count())
            .into_par_iter()
            .map(|k| ctx.count_shard(k))
            .collect()
    });
    Ok(counts.iter().sum())
}

/// All n-cycles, sorted by x.
pub fn enumerate_fixed(n: u32, workers: usize) -> Result<Vec<Cycle>> {
    let coding = Coding::canonical();
    let ctx = PeriodContext::new(coding, n)?;
    let mut raw: Vec<(IntTriple, Vec<usize>)> = pool(workers)?.install(|| {
        (0..coding.symbol_count())
            .into_par_iter()
            .flat_map_iter(|k| {
                let mut v = Vec::new();
                ctx.walk_shard(k, |w, num| v.push((num, w.to_vec())));
                v
            })
            .collect()
    });
    raw.sort_by(|a, b| (a.0 - b.0).sign());
    Ok(raw.into_iter().map(|(num, w)| ctx.cycle(&w, num)).collect())
}

/// Visits every n-cycle's (word, numerator, M_n) sequentially.
pub fn for_each_cycle<F>(n: u32, mut visit: F) -> Result<()>
where
    F: FnMut(&[usize], IntTriple, i128),
{
    let coding = Coding::canonical();
    let ctx = PeriodContext::new(coding, n)?;
    let m = ctx.m;
    for k in 0..coding.symbol_count() {
        ctx.walk_shard(k, |w, num| visit(w, num, m));
    }
    Ok(())
}

/// Counting and multiplicity data for Fix(γⁿ).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleSetStats {
    pub n: u32,
    pub fix_count: u64,
    pub i_n_size: BigInt,
    pub m_n: i128,
    /// #ℐ′_n: distinct fractional parts among the n-cycles
    pub i_prime_count: u64,
    /// #ℐ″_n: fractional parts shared by at least two n-cycles
    pub i_doubleprime_count: u64,
    /// #ℬ_n: distinct integer parts
    pub b_n_count: usize,
    /// multiplicity → number of ξ with that multiplicity
    pub multiplicity_histogram: BTreeMap<u64, u64>,
    /// integer part → number of n-cycles
    pub beta_counts: BTreeMap<IntTriple, u64>,
}

impl CycleSetStats {
    pub fn doubleprime_ratio(&self) -> Rational {
        Rational::new(self.i_doubleprime_count.into(), self.fix_count.into())
    }

    pub fn core_histogram(&self) -> CoreHistogram {
        CoreHistogram::from_counts(&self.beta_counts, self.fix_count)
    }
}

/// Memory cap for ξ grouping, from `AY_MAX_MEMORY_MB`.
pub fn memory_cap_mb() -> u64 {
    std::env::var("AY_MAX_MEMORY_MB")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_MEMORY_MB)
}

fn pack_key(xi: IntTriple, m: i128) -> u128 {
    let [a, b, c] = xi.0.map(|v| v as u128);
    let m = m as u128;
    a + m * (b + m * c)
}

struct ShardStats {
    keys: Vec<u128>,
    betas: BTreeMap<IntTriple, u64>,
}

/// Groups all n-cycles by exact fractional part (multiplicity within
/// Fix(γⁿ)) and tallies integer parts.
pub fn stats(n: u32, workers: usize, cap_mb: u64) -> Result<CycleSetStats> {
    let coding = Coding::canonical();
    let ctx = PeriodContext::new(coding, n)?;
    let expected = coding.incidence_matrix().trace_power(n) - 6;
    let need_mb = (expected as u64).saturating_mul(40) / (1 << 20) + 1;
    if need_mb > cap_mb {
        return Err(Error::Budget {
            need_mb,
            cap_mb,
        });
    }
    let m = ctx.m;
    if (m as f64).powi(3) >= 2f64.powi(127) {
        return Err(Error::InvalidArgument(format!("M_{n} too large to pack keys")));
    }
    let shards: Vec<ShardStats> = pool(workers)?.install(|| {
        (0..coding.symbol_count())
            .into_par_iter()
            .map(|k| {
                let mut s = ShardStats {
                    keys: Vec::new(),
                    betas: BTreeMap::new(),
                };
                ctx.walk_shard(k, |_, num| {
                    s.keys.push(pack_key(num.rem_euclid(m), m));
                    *s.betas.entry(num.div_euclid(m)).or_default() += 1;
                });
                s
            })
            .collect()
    });
    let mut keys = Vec::with_capacity(expected as usize);
    let mut beta_counts: BTreeMap<IntTriple, u64> = BTreeMap::new();
    for s in shards {
        keys.extend_from_slice(&s.keys);
        for (b, c) in s.betas {
            *beta_counts.entry(b).or_default() += c;
        }
    }
    pool(workers)?.install(|| keys.par_sort_unstable());
    let mut hist: BTreeMap<u64, u64> = BTreeMap::new();
    let mut i = 0;
    while i < keys.len() {
        let mut j = i + 1;
        while j < keys.len() && keys[j] == keys[i] {
            j += 1;
        }
        *hist.entry((j - i) as u64).or_default() += 1;
        i = j;
    }
    let i_prime_count = hist.values().sum();
    let i_doubleprime_count = hist.iter().filter(|(k, _)| **k > 1).map(|(_, v)| v).sum();
    Ok(CycleSetStats {
        n,
        fix_count: keys.len() as u64,
        i_n_size: i_n_size(n),
        m_n: m,
        i_prime_count,
        i_doubleprime_count,
        b_n_count: beta_counts.len(),
        multiplicity_histogram: hist,
        beta_counts,
    })
}

/// Densities of integer parts among a set of periodic points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreHistogram {
    pub total: u64,
    /// (β, count), sorted by count descending then β
    pub entries: Vec<(IntTriple, u64)>,
}

impl CoreHistogram {
    pub fn from_counts(counts: &BTreeMap<IntTriple, u64>, total: u64) -> Self {
        let mut entries: Vec<(IntTriple, u64)> = counts.iter().map(|(b, c)| (*b, *c)).collect();
        entries.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        Self { total, entries }
    }

    pub fn density(&self, i: usize) -> Rational {
        Rational::new(self.entries[i].1.into(), self.total.into())
    }

    /// Density rounded to 5 significant digits.
    pub fn density_display(&self, i: usize) -> String {
        sig_digits(&self.density(i), 5)
    }

    pub fn density_of(&self, beta: IntTriple) -> Rational {
        self.entries
            .iter()
            .find(|(b, _)| *b == beta)
            .map(|(_, c)| Rational::new((*c).into(), self.total.into()))
            .unwrap_or_default()
    }

    pub fn density_sum(&self) -> Rational {
        (0..self.entries.len()).map(|i| self.density(i)).sum()
    }
}

/// Core-region elements with their densities at period 14, in the order
/// listed for the full-scale computation.
pub const REFERENCE_CORE: [([i128; 3], f64); 31] = [
    ([0, 0, 0], 0.21275),
    ([0, -1, -1], 0.18921),
    ([0, 0, -1], 0.13777),
    ([1, -2, -1], 0.095625),
    ([-1, 0, 0], 0.077155),
    ([-1, 0, 1], 0.062213),
    ([0, -2, 0], 0.057952),
    ([0, -1, 1], 0.029308),
    ([1, -3, 0], 0.026514),
    ([1, -2, 0], 0.026416),
    ([0, -2, -1], 0.022014),
    ([0, -2, 1], 0.013304),
    ([0, -1, 0], 0.011009),
    ([0, 0, 1], 0.0088053),
    ([-1, 1, 0], 0.0079830),
    ([-1, 1, 1], 0.0068150),
    ([0, 1, 0], 0.0056188),
    ([1, -1, -1], 0.0052609),
    ([1, -3, -1], 0.0020418),
    ([-1, 0, -1], 0.0011707),
    ([-1, -1, 1], 0.00075025),
    ([1, -4, 0], 0.00020069),
    ([0, -3, 0], 7.5092e-5),
    ([1, -2, 1], 2.1757e-5),
    ([1, -3, 1], 3.7439e-6),
    ([0, -1, -2], 3.6509e-6),
    ([1, 0, -1], 3.4058e-6),
    ([1, -1, -2], 2.6498e-7),
    ([0, -3, 1], 2.6498e-7),
    ([-1, 1, -1], 9.3050e-8),
    ([-1, -1, 0], 1.2873e-11),
];

/// The two code families ((1,4)^k,(3,4),(1,2))^∞ and ((2,9)^k,(4,5),(2,10))^∞.
pub fn boundary_family(k: usize, family: u8) -> Result<(PeriodicCode, FieldElement)> {
    let (rep, a, b) = match family {
        1 => (Symbol::new(1, 4), Symbol::new(3, 4), Symbol::new(1, 2)),
        2 => (Symbol::new(2, 9), Symbol::new(4, 5), Symbol::new(2, 10)),
        _ => return Err(Error::InvalidArgument(format!("unknown family {family}"))),
    };
    let mut period = vec![rep; k];
    period.push(a);
    period.push(b);
    let code = PeriodicCode::periodic(period);
    let coding = Coding::canonical();
    coding.check_code(&code)?;
    let x = coding.decode(&code)?;
    if !x.in_unit_interval() {
        return Err(Error::OutOfDomain(x.to_string()));
    }
    Ok((code, x))
}

/// Least period of a purely periodic word.
pub fn least_period(word: &[Symbol]) -> usize {
    let n = word.len();
    (1..=n)
        .find(|&d| n % d == 0 && (0..n).all(|i| word[i] == word[i % d]))
        .unwrap_or(n)
}

/// Distinct periodic points of period ≤ `max_period` whose fractional part
/// equals `xi`.
pub fn points_with_fractional_part(xi: &FieldElement, max_period: u32) -> Result<Vec<FieldElement>> {
    let mut found: HashSet<FieldElement> = HashSet::new();
    let mut out = Vec::new();
    for n in 1..=max_period {
        let ctx = PeriodContext::new(Coding::canonical(), n)?;
        let scaled = xi.scale(&Rational::from_integer(ctx.m.into()));
        let Some(target) = scaled.to_int_triple() else {
            continue;
        };
        for k in 0..Coding::canonical().symbol_count() {
            ctx.walk_shard(k, |_, num| {
                if num.rem_euclid(ctx.m) == target {
                    let x = FieldElement::from_ratio(num.0, ctx.m);
                    if found.insert(x.clone()) {
                        out.push(x);
                    }
                }
            });
        }
    }
    Ok(out)
}

/// Coefficient triple of a fractional part: the embedding into [0,1)³.
pub fn embed(xi: &FieldElement) -> Result<[Rational; 3]> {
    let zero = Rational::from_integer(0.into());
    let one = Rational::from_integer(1.into());
    if xi.coeffs().iter().any(|r| *r < zero || *r >= one) {
        return Err(Error::InvalidArgument(format!("{xi} is not a fractional part")));
    }
    Ok(xi.coeffs().clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn period_one_cycles_are_the_allowed_fixed_codes() {
        let cycles = enumerate_fixed(1, 1).unwrap();
        assert_eq!(cycles.len(), 7);
        let mut syms: Vec<Symbol> = cycles.iter().map(|c| c.code.period[0]).collect();
        syms.sort();
        assert_eq!(syms, Coding::canonical().allowed_fixed_codes());
        let xis: HashSet<FieldElement> = cycles.iter().map(|c| c.xi.clone()).collect();
        assert_eq!(xis.len(), 2);
        let zero: Vec<_> = cycles.iter().filter(|c| c.xi.is_zero()).collect();
        assert!(zero.iter().any(|c| c.x.is_zero()));
        assert!(zero.iter().any(|c| c.x == FieldElement::lambda()));
    }

    #[test]
    fn small_counts() {
        assert_eq!(count_fixed(1, 1).unwrap(), 7);
        assert_eq!(count_fixed(2, 1).unwrap(), 45);
        assert_eq!(count_fixed(3, 2).unwrap(), 259);
        assert!(count_fixed(0, 1).is_err());
    }

    #[test]
    fn cycles_are_fixed_by_gamma_power() {
        let coding = Coding::canonical();
        for n in 1..=3 {
            let cycles = enumerate_fixed(n, 1).unwrap();
            let set: HashSet<&FieldElement> = cycles.iter().map(|c| &c.x).collect();
            assert_eq!(set.len(), cycles.len());
            for c in &cycles {
                assert!(c.x.in_unit_interval());
                assert_eq!(&c.xi + &c.beta, c.x);
                assert_eq!(coding.decode(&c.code).unwrap(), c.x);
                let mut y = c.x.clone();
                for _ in 0..n {
                    y = coding.gamma(&y).unwrap();
                }
                assert_eq!(y, c.x);
            }
        }
    }

    #[test]
    fn stats_small() {
        let s = stats(1, 1, 100).unwrap();
        assert_eq!((s.fix_count, s.i_doubleprime_count, s.b_n_count), (7, 2, 7));
        assert_eq!(s.multiplicity_histogram, BTreeMap::from([(3, 1), (4, 1)]));
        assert_eq!(s.i_n_size, BigInt::from(2));
        let s = stats(2, 2, 100).unwrap();
        assert_eq!((s.fix_count, s.i_doubleprime_count, s.b_n_count), (45, 14, 17));
        assert_eq!(s.core_histogram().density_sum(), Rational::from_integer(1.into()));
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(stats(9, 1, 1), Err(Error::Budget { .. })));
    }

    #[test]
    fn i_n_and_m_n() {
        assert_eq!(i_n_size(1), BigInt::from(2));
        assert_eq!(i_n_size(2), BigInt::from(28));
        assert_eq!(m_n(1), BigInt::from(2));
        assert_eq!(m_n(2) % 14, BigInt::from(0));
    }

    #[test]
    fn boundary_family_codes() {
        let (code, _) = boundary_family(0, 1).unwrap();
        assert_eq!(code.period, vec![Symbol::new(3, 4), Symbol::new(1, 2)]);
        for k in 0..4 {
            for fam in [1, 2] {
                let (code, _) = boundary_family(k, fam).unwrap();
                assert_eq!(least_period(&code.period), k + 2);
            }
        }
        assert!(boundary_family(0, 3).is_err());
    }

    #[test]
    fn embedding() {
        assert_eq!(embed(&FieldElement::zero()).unwrap(), FieldElement::zero().coeffs().clone());
        let h: FieldElement = "1/2;0;0".parse().unwrap();
        assert_eq!(embed(&h).unwrap()[0], Rational::new(1.into(), 2.into()));
        assert!(embed(&FieldElement::one()).is_err());
    }
}
