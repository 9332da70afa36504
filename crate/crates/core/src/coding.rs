//! Symbolic coding of [0,1) by the recursive tiling: symbols (j,t),
//! algebraic-integer digits, the ω-expansion and the scaling shift γ.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, IntTriple, Rational};
use crate::iet::{IETTable, Interval, N};

/// A pair (j,t) with 0 ≤ j < 7 and 0 ≤ t < ν_j.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol {
    pub j: usize,
    pub t: usize,
}

impl Symbol {
    pub const fn new(j: usize, t: usize) -> Self {
        Self { j, t }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.j, self.t)
    }
}

/// The six fixed codes s^∞ removed to make the coding injective.
pub const FORBIDDEN_TAILS: [Symbol; 6] = [
    Symbol::new(1, 9),
    Symbol::new(2, 6),
    Symbol::new(3, 2),
    Symbol::new(4, 6),
    Symbol::new(5, 3),
    Symbol::new(6, 1),
];

pub fn is_forbidden_tail(s: Symbol) -> bool {
    FORBIDDEN_TAILS.contains(&s)
}

/// An eventually periodic code: `preperiod` followed by `period` repeated.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PeriodicCode {
    pub preperiod: Vec<Symbol>,
    pub period: Vec<Symbol>,
}

impl PeriodicCode {
    pub fn periodic(period: Vec<Symbol>) -> Self {
        Self {
            preperiod: Vec::new(),
            period,
        }
    }

    pub fn is_purely_periodic(&self) -> bool {
        self.preperiod.is_empty()
    }

    /// True if the tail is one of the six excluded constant codes.
    pub fn has_forbidden_tail(&self) -> bool {
        let first = self.period[0];
        is_forbidden_tail(first) && self.period.iter().all(|&s| s == first)
    }

    /// The code of γ(x): drop the first symbol.
    pub fn shift(&self) -> Self {
        if let Some((_, rest)) = self.preperiod.split_first() {
            Self {
                preperiod: rest.to_vec(),
                period: self.period.clone(),
            }
        } else {
            let mut p = self.period.clone();
            p.rotate_left(1);
            Self::periodic(p)
        }
    }

    /// The first `n` symbols of the infinite word.
    pub fn prefix(&self, n: usize) -> Vec<Symbol> {
        self.preperiod
            .iter()
            .chain(self.period.iter().cycle())
            .take(n)
            .copied()
            .collect()
    }
}

/// `(j,t)(j,t)[(j,t)...]` with the period in brackets.
impl fmt::Display for PeriodicCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.preperiod {
            write!(f, "{s}")?;
        }
        f.write_str("[")?;
        for s in &self.period {
            write!(f, "{s}")?;
        }
        f.write_str("]")
    }
}

/// A tile of level `symbols.len()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tile {
    pub symbols: Vec<Symbol>,
    pub interval: Interval,
}

/// Incidence matrix A[i][j] = #{t : p(i,t) = j}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IncidenceMatrix(pub [[u64; N]; N]);

/// The matrix printed for the first-return visits of ωΩ_i to Ω_j.
pub const PRINTED_INCIDENCE: [[u64; N]; N] = [
    [1, 0, 0, 1, 0, 0, 2],
    [1, 2, 1, 2, 0, 1, 6],
    [1, 1, 2, 1, 1, 1, 5],
    [1, 1, 0, 2, 0, 0, 4],
    [1, 0, 1, 0, 2, 1, 3],
    [1, 1, 1, 1, 1, 2, 5],
    [1, 0, 0, 0, 1, 0, 2],
];

impl IncidenceMatrix {
    pub fn trace(&self) -> u64 {
        (0..N).map(|i| self.0[i][i]).sum()
    }

    fn mul(a: &[[u128; N]; N], b: &[[u128; N]; N]) -> [[u128; N]; N] {
        let mut c = [[0u128; N]; N];
        for i in 0..N {
            for k in 0..N {
                if a[i][k] == 0 {
                    continue;
                }
                for j in 0..N {
                    c[i][j] += a[i][k] * b[k][j];
                }
            }
        }
        c
    }

    /// Tr Aⁿ by exact integer matrix powering.
    pub fn trace_power(&self, n: u32) -> u128 {
        let a: [[u128; N]; N] = self.0.map(|r| r.map(u128::from));
        let mut acc = [[0u128; N]; N];
        for (i, row) in acc.iter_mut().enumerate() {
            row[i] = 1;
        }
        for _ in 0..n {
            acc = Self::mul(&acc, &a);
        }
        (0..N).map(|i| acc[i][i]).sum()
    }

    /// Characteristic polynomial det(xI − A), coefficients from x⁰ up to x⁷.
    /// Faddeev–LeVerrier over the integers.
    pub fn char_poly(&self) -> Vec<i128> {
        let a: [[i128; N]; N] = self.0.map(|r| r.map(|v| v as i128));
        let mut coeffs = vec![0i128; N + 1];
        coeffs[N] = 1;
        let mut m = [[0i128; N]; N];
        for k in 1..=N {
            // M_k = A·M_{k−1} + c_{N−k+1} I
            let mut next = [[0i128; N]; N];
            for i in 0..N {
                for j in 0..N {
                    next[i][j] = (0..N).map(|l| a[i][l] * m[l][j]).sum();
                }
                next[i][i] += coeffs[N - k + 1];
            }
            m = next;
            let am_trace: i128 = (0..N)
                .map(|i| (0..N).map(|l| a[i][l] * m[l][i]).sum::<i128>())
                .sum();
            assert_eq!(am_trace % k as i128, 0, "Faddeev–LeVerrier division");
            coeffs[N - k] = -am_trace / k as i128;
        }
        coeffs
    }
}

/// Precomputed symbol data for a table: the 61 symbols, their digits,
/// the sorted level-1 tiles and the admissibility graph.
pub struct Coding {
    pub table: IETTable,
    pub symbols: Vec<Symbol>,
    index: [Vec<usize>; N],
    digits: Vec<FieldElement>,
    digits_int: Vec<IntTriple>,
    /// symbol indices sorted by the left endpoint of their level-1 tile
    tiles_sorted: Vec<usize>,
    tile_lo: Vec<FieldElement>,
    /// 2·(tile left endpoint), integral
    tile_lo2: Vec<IntTriple>,
    /// symbols s' with p(s') = j, for each j
    successors: [Vec<usize>; N],
    omega_inv: FieldElement,
    omega_inv_int: IntTriple,
}

impl Coding {
    pub fn canonical() -> &'static Coding {
        static C: OnceLock<Coding> = OnceLock::new();
        C.get_or_init(|| Coding::new(IETTable::canonical().clone()))
    }

    pub fn new(table: IETTable) -> Self {
        let mut symbols = Vec::new();
        let mut index: [Vec<usize>; N] = Default::default();
        for j in 0..N {
            for t in 0..table.nu[j] {
                index[j].push(symbols.len());
                symbols.push(Symbol::new(j, t));
            }
        }
        let digits: Vec<FieldElement> = symbols
            .iter()
            .map(|s| {
                (0..s.t).fold(FieldElement::zero(), |acc, u| {
                    &acc + &table.tau[table.path[s.j][u]]
                })
            })
            .collect();
        let digits_int = digits
            .iter()
            .map(|d| d.to_int_triple().expect("digits are algebraic integers"))
            .collect();
        let omega = FieldElement::omega();
        let tile_lo: Vec<FieldElement> = symbols
            .iter()
            .zip(&digits)
            .map(|(s, d)| &(&omega * &table.delta[s.j]) + d)
            .collect();
        let mut tiles_sorted: Vec<usize> = (0..symbols.len()).collect();
        tiles_sorted.sort_by(|&a, &b| tile_lo[a].cmp_real(&tile_lo[b]));
        let two = Rational::from_integer(2.into());
        let tile_lo2 = tile_lo
            .iter()
            .map(|x| x.scale(&two).to_int_triple().expect("2δ is integral"))
            .collect();
        let mut successors: [Vec<usize>; N] = Default::default();
        for (k, s) in symbols.iter().enumerate() {
            successors[table.path[s.j][s.t]].push(k);
        }
        let omega_inv = FieldElement::omega_inv();
        let omega_inv_int = omega_inv.to_int_triple().expect("ω is a unit");
        Self {
            table,
            symbols,
            index,
            digits,
            digits_int,
            tiles_sorted,
            tile_lo,
            tile_lo2,
            successors,
            omega_inv,
            omega_inv_int,
        }
    }

    pub fn symbol_count(&self) -> usize {
        self.symbols.len()
    }

    pub fn index_of(&self, s: Symbol) -> Result<usize> {
        self.index
            .get(s.j)
            .and_then(|v| v.get(s.t))
            .copied()
            .ok_or(Error::InvalidSymbol(s.j, s.t))
    }

    /// p(j,t): the interval containing the level-1 tile of (j,t).
    pub fn p(&self, s: Symbol) -> usize {
        self.table.path[s.j][s.t]
    }

    pub(crate) fn p_idx(&self, k: usize) -> usize {
        self.p(self.symbols[k])
    }

    pub(crate) fn successors(&self, j: usize) -> &[usize] {
        &self.successors[j]
    }

    pub(crate) fn digit_int(&self, k: usize) -> IntTriple {
        self.digits_int[k]
    }

    /// d(j,t) = Σ_{u<t} τ_{p(j,u)}
    pub fn digit(&self, s: Symbol) -> Result<&FieldElement> {
        Ok(&self.digits[self.index_of(s)?])
    }

    /// Distinct digit values, ordered by coefficient triple.
    pub fn digit_alphabet(&self) -> Vec<FieldElement> {
        let set: BTreeSet<IntTriple> = self.digits_int.iter().copied().collect();
        set.into_iter().map(FieldElement::from).collect()
    }

    pub fn forbidden_tails(&self) -> [Symbol; 6] {
        FORBIDDEN_TAILS
    }

    /// Self-loops p(j,t) = j, i.e. constant admissible codes.
    pub fn self_loops(&self) -> Vec<Symbol> {
        self.symbols
            .iter()
            .copied()
            .filter(|&s| self.p(s) == s.j)
            .collect()
    }

    /// Self-loops that are not excluded: the codes of the fixed points of γ.
    pub fn allowed_fixed_codes(&self) -> Vec<Symbol> {
        self.self_loops()
            .into_iter()
            .filter(|&s| !is_forbidden_tail(s))
            .collect()
    }

    pub fn incidence_matrix(&self) -> IncidenceMatrix {
        let mut a = [[0u64; N]; N];
        for s in &self.symbols {
            a[s.j][self.p(*s)] += 1;
        }
        IncidenceMatrix(a)
    }

    /// j_k = p(j_{k+1}, t_{k+1}) for consecutive symbols.
    pub fn can_follow(&self, prev: Symbol, next: Symbol) -> bool {
        prev.j == self.p(next)
    }

    pub fn check_word(&self, word: &[Symbol]) -> Result<()> {
        for (k, s) in word.iter().enumerate() {
            self.index_of(*s)?;
            if k > 0 && !self.can_follow(word[k - 1], *s) {
                return Err(Error::Inadmissible(k));
            }
        }
        Ok(())
    }

    /// Admissibility of the whole infinite word, including the wrap-around
    /// inside the period and the junction preperiod → period.
    pub fn check_code(&self, code: &PeriodicCode) -> Result<()> {
        if code.period.is_empty() {
            return Err(Error::Inadmissible(0));
        }
        let mut word = code.preperiod.clone();
        word.extend_from_slice(&code.period);
        word.push(code.period[0]);
        self.check_word(&word)
    }

    pub fn tile_of(&self, symbols: &[Symbol]) -> Result<Tile> {
        if symbols.is_empty() {
            return Err(Error::Inadmissible(0));
        }
        self.check_word(symbols)?;
        let omega = FieldElement::omega();
        let last = symbols[symbols.len() - 1];
        let mut iv = self.table.omega_interval(last.j);
        for s in symbols.iter().rev() {
            iv = iv.scale(&omega).translate(self.digit(*s)?);
        }
        Ok(Tile {
            symbols: symbols.to_vec(),
            interval: iv,
        })
    }

    /// All tiles of the given level, in symbol-lexicographic order.
    pub fn tiles(&self, level: usize) -> Vec<Tile> {
        let mut words: Vec<Vec<Symbol>> = self.symbols.iter().map(|&s| vec![s]).collect();
        for _ in 1..level {
            words = words
                .into_iter()
                .flat_map(|w| {
                    let last = *w.last().expect("nonempty");
                    self.successors[last.j].iter().map(move |&k| {
                        let mut w2 = w.clone();
                        w2.push(self.symbols[k]);
                        w2
                    })
                })
                .collect();
        }
        words
            .into_iter()
            .map(|w| self.tile_of(&w).expect("generated words are admissible"))
            .collect()
    }

    /// The level-1 tile containing x ∈ [0,1).
    fn locate(&self, x: &FieldElement) -> Result<usize> {
        if !x.in_unit_interval() {
            return Err(Error::OutOfDomain(x.to_string()));
        }
        let pos = self
            .tiles_sorted
            .partition_point(|&k| x.cmp_real(&self.tile_lo[k]) != Ordering::Less);
        Ok(self.tiles_sorted[pos - 1])
    }

    /// Level-1 tile containing num/den (den > 0), integer arithmetic only.
    fn locate_lattice(&self, num: IntTriple, den: i128) -> usize {
        let twice = num.scale(2);
        let pos = self
            .tiles_sorted
            .partition_point(|&k| (twice - self.tile_lo2[k].scale(den)).sign() != Ordering::Less);
        self.tiles_sorted[pos - 1]
    }

    /// γ(x) = (x − d₁)ω⁻¹
    pub fn gamma(&self, x: &FieldElement) -> Result<FieldElement> {
        let k = self.locate(x)?;
        Ok(&(x - &self.digits[k]) * &self.omega_inv)
    }

    /// First `depth` symbols of the code of x.
    pub fn encode(&self, x: &FieldElement, depth: usize) -> Result<Vec<Symbol>> {
        let mut out: Vec<Symbol> = Vec::with_capacity(depth);
        let mut cur = x.clone();
        for _ in 0..depth {
            let k = self.locate(&cur)?;
            let s = self.symbols[k];
            if let Some(&prev) = out.last() {
                assert!(self.can_follow(prev, s), "encode emitted inadmissible pair");
            }
            out.push(s);
            cur = &(&cur - &self.digits[k]) * &self.omega_inv;
        }
        Ok(out)
    }

    /// The eventually periodic code of x ∈ Q(λ) ∩ [0,1), found by detecting
    /// the first repeated state of the γ-orbit.
    pub fn encode_rational(&self, x: &FieldElement) -> Result<PeriodicCode> {
        if !x.in_unit_interval() {
            return Err(Error::OutOfDomain(x.to_string()));
        }
        let (num, den) = x.to_common_denominator();
        let small = |v: &num_bigint::BigInt| v.bits() < 48;
        if small(&den) && num.iter().all(small) {
            let t = IntTriple(num.map(|v| i128::try_from(v).expect("checked size")));
            let d = i128::try_from(den).expect("checked size");
            return Ok(self.encode_lattice(t, d));
        }
        self.encode_rational_exact(x)
    }

    /// Same as [`Coding::encode_rational`] using `FieldElement` states.
    pub fn encode_rational_exact(&self, x: &FieldElement) -> Result<PeriodicCode> {
        let mut seen: HashMap<FieldElement, usize> = HashMap::new();
        let mut syms = Vec::new();
        let mut cur = x.clone();
        loop {
            if let Some(&start) = seen.get(&cur) {
                return Ok(self.split_code(syms, start));
            }
            seen.insert(cur.clone(), syms.len());
            let k = self.locate(&cur)?;
            syms.push(self.symbols[k]);
            cur = &(&cur - &self.digits[k]) * &self.omega_inv;
        }
    }

    /// Code of the point num/den ∈ [0,1), den > 0. The denominator is
    /// invariant under γ since digits and ω⁻¹ are integral.
    pub fn encode_lattice(&self, num: IntTriple, den: i128) -> PeriodicCode {
        let mut seen: HashMap<IntTriple, usize> = HashMap::new();
        let mut syms = Vec::new();
        let mut cur = num;
        loop {
            if let Some(&start) = seen.get(&cur) {
                return self.split_code(syms, start);
            }
            seen.insert(cur, syms.len());
            let k = self.locate_lattice(cur, den);
            syms.push(self.symbols[k]);
            cur = (cur - self.digits_int[k].scale(den)) * self.omega_inv_int;
        }
    }

    fn split_code(&self, mut syms: Vec<Symbol>, start: usize) -> PeriodicCode {
        let period = syms.split_off(start);
        for w in syms.iter().chain(&period).collect::<Vec<_>>().windows(2) {
            assert!(self.can_follow(*w[0], *w[1]), "inadmissible code emitted");
        }
        PeriodicCode {
            preperiod: syms,
            period,
        }
    }

    /// Σ_{i<n} d_i ω^i over a finite word.
    pub fn digit_polynomial(&self, word: &[Symbol]) -> Result<FieldElement> {
        // digits are integral, so Horner runs on BigInt triples
        let mut acc: [BigInt; 3] = Default::default();
        for s in word.iter().rev() {
            for _ in 0..3 {
                let [a, b, c] = acc;
                acc = [c.clone(), a - &c, b - c];
            }
            let d = self.digits_int[self.index_of(*s)?];
            for (x, v) in acc.iter_mut().zip(d.0) {
                *x += v;
            }
        }
        Ok(FieldElement::from_bigints(acc))
    }

    /// x(σ) = Σ d_i ω^{i−1}, summed in closed form.
    pub fn decode(&self, code: &PeriodicCode) -> Result<FieldElement> {
        self.check_code(code)?;
        let omega = FieldElement::omega();
        let head = self.digit_polynomial(&code.preperiod)?;
        let tail = self.digit_polynomial(&code.period)?;
        let n = code.period.len() as u64;
        let denom = &FieldElement::one() - &omega.pow(n);
        let tail = &(&tail * &omega.pow(code.preperiod.len() as u64)) * &denom.invert()?;
        Ok(&head + &tail)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c() -> &'static Coding {
        Coding::canonical()
    }

    fn fe(s: &str) -> FieldElement {
        s.parse().unwrap()
    }

    fn sym(j: usize, t: usize) -> Symbol {
        Symbol::new(j, t)
    }

    #[test]
    fn digit_examples() {
        for j in 0..N {
            assert!(c().digit(sym(j, 0)).unwrap().is_zero());
        }
        assert_eq!(c().digit(sym(0, 1)).unwrap(), &fe("0;1;1"));
        assert_eq!(c().digit(sym(6, 3)).unwrap(), &fe("1;-1;0"));
        assert!(c().digit(sym(0, 4)).is_err());
        assert!(c().digit(sym(7, 0)).is_err());
    }

    #[test]
    fn alphabet() {
        assert_eq!(c().symbol_count(), 61);
        let digits = c().digit_alphabet();
        assert_eq!(digits.len(), 25);
        assert!(digits.contains(&FieldElement::zero()));
        assert!(digits.contains(&fe("0;1;1")));
        assert!(digits.iter().all(FieldElement::is_integral));
    }

    #[test]
    fn forbidden_and_fixed() {
        for s in c().forbidden_tails() {
            assert_eq!(c().p(s), s.j);
        }
        assert!(is_forbidden_tail(sym(1, 9)));
        assert!(!is_forbidden_tail(sym(6, 3)));
        assert_eq!(c().self_loops().len(), 13);
        assert_eq!(
            c().allowed_fixed_codes(),
            vec![sym(0, 0), sym(1, 4), sym(2, 9), sym(3, 6), sym(4, 2), sym(5, 6), sym(6, 3)]
        );
    }

    #[test]
    fn tile_examples() {
        let t = c().tile_of(&[sym(0, 0)]).unwrap();
        let w = FieldElement::omega();
        assert_eq!(t.interval, Interval::new(FieldElement::zero(), &w * &w));
        let t = c().tile_of(&[sym(6, 3)]).unwrap();
        assert!(t.interval.contains(&FieldElement::lambda()));
        assert!(c().tile_of(&[sym(0, 0), sym(1, 0)]).is_ok());
        assert!(c().tile_of(&[sym(0, 0), sym(0, 1)]).is_err());
        assert!(c().tile_of(&[]).is_err());
    }

    #[test]
    fn level_one_tiles_partition() {
        let tiles = c().tiles(1);
        assert_eq!(tiles.len(), 61);
        let total = tiles
            .iter()
            .fold(FieldElement::zero(), |acc, t| &acc + &t.interval.length());
        assert_eq!(total, FieldElement::one());
    }

    #[test]
    fn encode_examples() {
        let z = c().encode(&FieldElement::zero(), 3).unwrap();
        assert_eq!(z, vec![sym(0, 0); 3]);
        let l = c().encode(&FieldElement::lambda(), 2).unwrap();
        assert_eq!(l, vec![sym(6, 3); 2]);
        assert!(c().encode(&FieldElement::one(), 1).is_err());
    }

    #[test]
    fn encode_rational_examples() {
        let code = c().encode_rational(&FieldElement::zero()).unwrap();
        assert_eq!(code, PeriodicCode::periodic(vec![sym(0, 0)]));
        let code = c().encode_rational(&FieldElement::lambda()).unwrap();
        assert_eq!(code, PeriodicCode::periodic(vec![sym(6, 3)]));
        let half = fe("1/2;0;0");
        let code = c().encode_rational(&half).unwrap();
        assert_eq!(c().decode(&code).unwrap(), half);
        assert_eq!(c().encode_rational_exact(&half).unwrap(), code);
    }

    #[test]
    fn decode_examples() {
        assert!(c().decode(&PeriodicCode::periodic(vec![sym(0, 0)])).unwrap().is_zero());
        assert_eq!(
            c().decode(&PeriodicCode::periodic(vec![sym(6, 3)])).unwrap(),
            FieldElement::lambda()
        );
        // the excluded tail (6,1)^∞ sums to 1, outside [0,1)
        let one = c().decode(&PeriodicCode::periodic(vec![sym(6, 1)])).unwrap();
        assert_eq!(one, FieldElement::one());
        assert!(PeriodicCode::periodic(vec![sym(6, 1)]).has_forbidden_tail());
        assert!(c().decode(&PeriodicCode::periodic(vec![sym(0, 0), sym(0, 1)])).is_err());
    }

    #[test]
    fn gamma_examples() {
        assert!(c().gamma(&FieldElement::zero()).unwrap().is_zero());
        assert_eq!(c().gamma(&FieldElement::lambda()).unwrap(), FieldElement::lambda());
        assert!(c().gamma(&fe("-1;0;0")).is_err());
    }

    #[test]
    fn incidence_examples() {
        let a = c().incidence_matrix();
        assert_eq!(a.0, PRINTED_INCIDENCE);
        assert_eq!(a.0[0][6], 2);
        assert_eq!(a.trace(), 13);
        for i in 0..N {
            assert_eq!(a.0[i].iter().sum::<u64>() as usize, c().table.nu[i]);
        }
        assert_eq!(a.char_poly(), vec![-1, 13, -59, 123, -123, 59, -13, 1]);
        assert_eq!(a.trace_power(1), 13);
    }

    #[test]
    fn code_display() {
        let code = PeriodicCode {
            preperiod: vec![sym(0, 1)],
            period: vec![sym(6, 3)],
        };
        assert_eq!(code.to_string(), "(0,1)[(6,3)]");
        assert_eq!(code.shift(), PeriodicCode::periodic(vec![sym(6, 3)]));
        assert_eq!(code.prefix(3), vec![sym(0, 1), sym(6, 3), sym(6, 3)]);
    }
}
