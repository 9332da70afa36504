//! The fifteen acceptance criteria, shared by `ay reproduce-all` and the
//! acceptance test target.

use std::fmt;

use ay_core::coding::{Coding, PeriodicCode, Symbol, PRINTED_INCIDENCE};
use ay_core::cycles::{self, boundary_family, i_n_size, m_n, one_minus_omega_pow, points_with_fractional_part};
use ay_core::iet::{IETTable, DEFAULT_CAP};
use ay_core::numeric::{Fixed, NumericConstants};
use ay_core::order;
use ay_core::{FieldElement, IntTriple, Rational};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::args::{Command, Format};
use crate::commands::{self, expected_char_poly, Context, EXPECTED_PERMUTATION};

pub const MULTIPLICITY_STATS: [(u64, usize); 9] = [
    (2, 7),
    (14, 17),
    (38, 21),
    (86, 22),
    (182, 24),
    (374, 24),
    (758, 27),
    (1534, 30),
    (3170, 30),
];

pub const TOP_FIVE: [([i128; 3], f64); 5] = [
    ([0, 0, 0], 0.21275),
    ([0, -1, -1], 0.18921),
    ([0, 0, -1], 0.13777),
    ([1, -2, -1], 0.095625),
    ([-1, 0, 0], 0.077155),
];

pub const DENSITY_TOLERANCE: f64 = 0.01;
pub const CLOSED_FORM_TOLERANCE: f64 = 1e-6;
pub const CEBOTAREV_TOLERANCE: f64 = 0.05;
pub const BOUNDARY_FRACTION_LIMIT: f64 = 0.01;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Passed,
    Failed,
    Skipped,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Self::Passed => "passed",
            Self::Failed => "failed",
            Self::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub id: u32,
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.status {
            Status::Passed => "PASS",
            Status::Failed => "FAIL",
            Status::Skipped => "SKIP",
        };
        write!(f, "[{tag}] {:>2} {}: {}", self.id, self.name, self.detail)
    }
}

type Outcome = (bool, String);

pub struct Criterion {
    pub id: u32,
    pub name: &'static str,
    /// rough single-core cost, used for budgeting
    pub estimate_secs: u64,
    pub run: fn(&Context) -> Outcome,
}

pub const CRITERIA: [Criterion; 15] = [
    Criterion { id: 1, name: "path data re-derivation", estimate_secs: 1, run: path_data },
    Criterion { id: 2, name: "incidence data", estimate_secs: 1, run: incidence },
    Criterion { id: 3, name: "symbol census", estimate_secs: 1, run: census },
    Criterion { id: 4, name: "counting identities n<=12", estimate_secs: 120, run: counting },
    Criterion { id: 5, name: "multiplicity statistics n=1..8", estimate_secs: 10, run: multiplicity_stats },
    Criterion { id: 6, name: "core-region densities n=9", estimate_secs: 5, run: core_densities },
    Criterion { id: 7, name: "tiling levels 1-4", estimate_secs: 5, run: tiling },
    Criterion { id: 8, name: "round trip", estimate_secs: 10, run: round_trip },
    Criterion { id: 9, name: "universal denominators M_n", estimate_secs: 1, run: universal_denominators },
    Criterion { id: 10, name: "cyclotomic identity n<=12", estimate_secs: 1, run: cyclotomic },
    Criterion { id: 11, name: "order bound T(m)", estimate_secs: 10, run: order_bound },
    Criterion { id: 12, name: "boundary families k<=5", estimate_secs: 5, run: boundary },
    Criterion { id: 13, name: "denominator survey m<=20", estimate_secs: 30, run: survey },
    Criterion { id: 14, name: "Cebotarev frequencies", estimate_secs: 1, run: cebotarev },
    Criterion { id: 15, name: "determinism across workers", estimate_secs: 2, run: determinism },
];

pub fn run_criterion(c: &Criterion, ctx: &Context) -> Verdict {
    let (ok, detail) = (c.run)(ctx);
    Verdict {
        id: c.id,
        name: c.name.into(),
        status: if ok { Status::Passed } else { Status::Failed },
        detail,
    }
}

/// Runs criteria in order while their summed estimates fit the budget;
/// the rest are skipped. Skipping depends on estimates only, so the
/// summary is reproducible.
pub fn run_all(budget_secs: u64, ctx: &Context) -> Vec<Verdict> {
    let mut spent = 0;
    CRITERIA
        .iter()
        .map(|c| {
            if spent + c.estimate_secs > budget_secs {
                return Verdict {
                    id: c.id,
                    name: c.name.into(),
                    status: Status::Skipped,
                    detail: format!("needs ~{}s, budget {}s", c.estimate_secs, budget_secs),
                };
            }
            spent += c.estimate_secs;
            run_criterion(c, ctx)
        })
        .collect()
}

fn path_data(_: &Context) -> Outcome {
    let table = IETTable::canonical();
    let derived = match table.derive_path_data(DEFAULT_CAP) {
        Ok(d) => d,
        Err(e) => return (false, e.to_string()),
    };
    let perm = table.verify_permutation();
    let ok = derived.matches(table)
        && derived.nu == [4, 13, 12, 8, 8, 12, 4]
        && perm.passed()
        && perm.permutation == EXPECTED_PERMUTATION;
    (ok, format!("nu={:?} permutation={:?}", derived.nu, perm.permutation))
}

fn incidence(_: &Context) -> Outcome {
    let a = Coding::canonical().incidence_matrix();
    let poly = a.char_poly();
    let ok = a.0 == PRINTED_INCIDENCE && poly == expected_char_poly() && a.trace() == 13;
    (ok, format!("trace={} char_poly={:?}", a.trace(), poly))
}

fn census(_: &Context) -> Outcome {
    let c = Coding::canonical();
    let tails = c.forbidden_tails();
    let fixed = c.allowed_fixed_codes();
    let ok = c.symbol_count() == 61
        && c.digit_alphabet().len() == 25
        && tails.len() == 6
        && tails.iter().all(|s| c.p(*s) == s.j)
        && fixed.len() == 7;
    (
        ok,
        format!(
            "symbols={} digits={} forbidden_tails={} fixed_codes={}",
            c.symbol_count(),
            c.digit_alphabet().len(),
            tails.len(),
            fixed.len()
        ),
    )
}

fn counting(ctx: &Context) -> Outcome {
    let a = Coding::canonical().incidence_matrix();
    let k = NumericConstants::get();
    let mut worst: f64 = 0.0;
    for n in 1..=12u32 {
        let count = match cycles::count_fixed(n, ctx.workers) {
            Ok(c) => c,
            Err(e) => return (false, format!("n={n}: {e}")),
        };
        if count as u128 != a.trace_power(n) - 6 {
            return (false, format!("n={n}: enumerated {count}, Tr A^n - 6 = {}", a.trace_power(n) - 6));
        }
        let closed = k.fix_count_closed_form(n);
        let residual = (&closed - &Fixed::from_bigint(&BigInt::from(count))).abs().to_f64();
        worst = worst.max(residual);
        if closed.round() != BigInt::from(count) || residual >= CLOSED_FORM_TOLERANCE {
            return (false, format!("n={n}: closed form residual {residual:e}"));
        }
        let norm = one_minus_omega_pow(n).norm();
        let i_n = i_n_size(n);
        if Rational::from_integer(i_n.clone()) != norm.abs() || k.i_n_closed_form(n).round() != i_n {
            return (false, format!("n={n}: #I_n mismatch"));
        }
    }
    let residual = if worst == 0.0 { "below 2^-64".to_string() } else { format!("{worst:.1e}") };
    (true, format!("#Fix(gamma^12)={} max closed-form residual {residual}", a.trace_power(12) - 6))
}

fn multiplicity_stats(ctx: &Context) -> Outcome {
    let mut got = Vec::new();
    for n in 1..=9u32 {
        match cycles::stats(n, ctx.workers, ctx.memory_mb) {
            Ok(s) => got.push((s.i_doubleprime_count, s.b_n_count)),
            Err(ay_core::Error::Budget { .. }) if n == 9 => break,
            Err(e) => return (false, format!("n={n}: {e}")),
        }
    }
    let ok = got.len() >= 8 && got.iter().zip(MULTIPLICITY_STATS).all(|(g, e)| *g == e);
    let note = if got.len() == 9 { "n=9 included" } else { "n=9 skipped under memory cap" };
    let dp: Vec<u64> = got.iter().map(|g| g.0).collect();
    let b: Vec<usize> = got.iter().map(|g| g.1).collect();
    (ok, format!("I''={dp:?} B={b:?} ({note})"))
}

fn core_densities(ctx: &Context) -> Outcome {
    let h = match cycles::stats(9, ctx.workers, ctx.memory_mb) {
        Ok(s) => s.core_histogram(),
        Err(e) => return (false, e.to_string()),
    };
    let mut worst: f64 = 0.0;
    let mut ok = h.entries.len() >= 5;
    for (i, (beta, reference)) in TOP_FIVE.iter().enumerate() {
        if i >= h.entries.len() || h.entries[i].0 != IntTriple(*beta) {
            ok = false;
            continue;
        }
        let d = h.density(i).to_f64().unwrap_or(f64::NAN);
        worst = worst.max((d - reference).abs());
    }
    ok &= worst < DENSITY_TOLERANCE;
    let shown: Vec<String> = (0..5.min(h.entries.len())).map(|i| h.density_display(i)).collect();
    (ok, format!("top five densities {shown:?}, max deviation {worst:.4}"))
}

fn tiling(_: &Context) -> Outcome {
    let coding = Coding::canonical();
    let one = FieldElement::one();
    for level in 1..=4 {
        let mut tiles = coding.tiles(level);
        tiles.sort_by(|a, b| a.interval.lo.to_f64().total_cmp(&b.interval.lo.to_f64()));
        let contiguous = tiles.windows(2).all(|w| w[0].interval.hi == w[1].interval.lo);
        let nonempty = tiles.iter().all(|t| t.interval.lo.cmp_real(&t.interval.hi).is_lt());
        let ends = tiles[0].interval.lo.is_zero() && tiles[tiles.len() - 1].interval.hi == one;
        let total = tiles.iter().fold(FieldElement::zero(), |acc, t| &acc + &t.interval.length());
        if !(contiguous && nonempty && ends && total == one) {
            return (false, format!("level {level} is not a partition"));
        }
    }
    let sizes: Vec<usize> = (1..=4).map(|l| coding.tiles(l).len()).collect();
    (true, format!("tile counts {sizes:?}"))
}

/// Uniform-ish element of Q(λ) ∩ [0,1) with denominator ≤ max_den.
pub fn random_point(rng: &mut impl Rng, max_den: i128) -> FieldElement {
    loop {
        let d = rng.gen_range(1..=max_den);
        let num = [0; 3].map(|_| rng.gen_range(-2 * d..=2 * d));
        let x = FieldElement::from_ratio(num, d);
        let y = &x - &FieldElement::from_ints(x.to_f64().floor() as i64, 0, 0);
        if y.in_unit_interval() {
            return y;
        }
    }
}

fn round_trip(ctx: &Context) -> Outcome {
    let coding = Coding::canonical();
    let mut rng = ChaCha8Rng::seed_from_u64(0x00a7_0c0d);
    for i in 0..1000 {
        let x = random_point(&mut rng, 50);
        let back = coding.encode_rational(&x).and_then(|c| coding.decode(&c));
        if back.as_ref() != Ok(&x) {
            return (false, format!("sample {i}: {x} did not round-trip"));
        }
    }
    let mut checked = 0;
    for n in 1..=5 {
        let all = match cycles::enumerate_fixed(n, ctx.workers) {
            Ok(a) => a,
            Err(e) => return (false, e.to_string()),
        };
        for c in all {
            let code = match coding.encode_rational(&c.x) {
                Ok(code) => code,
                Err(e) => return (false, e.to_string()),
            };
            let reps = c.code.period.len() / code.period.len().max(1);
            let expanded = PeriodicCode::periodic(code.period.repeat(reps));
            if !code.is_purely_periodic() || expanded != c.code {
                return (false, format!("cycle {} encodes to {code}", c.code));
            }
            checked += 1;
        }
    }
    (true, format!("1000 random points, {checked} cycle points of period <= 5"))
}

fn universal_denominators(_: &Context) -> Outcome {
    let two = BigInt::from(2);
    let fourteen = BigInt::from(14);
    let mut ms = Vec::new();
    for n in 1..=12u32 {
        let m = m_n(n);
        let ok = (&m % &two).is_zero()
            && (n % 2 == 1 || (&m % &fourteen).is_zero())
            && (i_n_size(n) % &m).is_zero();
        if !ok || (n == 1 && m != two) {
            return (false, format!("n={n}: M_n={m}"));
        }
        ms.push(m.to_string());
    }
    (true, format!("M_1..M_12 = {}", ms.join(",")))
}

fn cyclotomic(_: &Context) -> Outcome {
    for n in 1..=12 {
        match order::cyclotomic_check(n) {
            Ok(c) if c.passed() => {}
            Ok(_) => return (false, format!("n={n}: product differs from 1-omega^n")),
            Err(e) => return (false, e.to_string()),
        }
    }
    (true, "exact for n=1..12".into())
}

fn order_bound(_: &Context) -> Outcome {
    for m in 2..=20u64 {
        let t = match order::t_bound(m) {
            Ok(b) => b.t,
            Err(e) => return (false, e.to_string()),
        };
        match order::all_orders(m) {
            Ok(o) if o.iter().all(|k| t % k == 0) => {}
            Ok(_) => return (false, format!("m={m}: an order does not divide T={t}")),
            Err(e) => return (false, format!("m={m}: {e}")),
        }
    }
    for (m, want) in [(2u64, 4u64), (11, 110), (3, 13), (7, 16)] {
        let t = order::t_bound(m).map(|b| b.t).unwrap_or(0);
        let brute = order::omega_order(m).unwrap_or(0);
        if t != want || brute != want {
            return (false, format!("T({m})={t}, brute force {brute}, expected {want}"));
        }
    }
    for p in [2u64, 3, 5, 7, 11, 13] {
        let ts: Vec<u64> = (1..=3).filter_map(|e| order::t_prime_power(p, e).ok().map(|q| q.t)).collect();
        let regular = ts.len() == 3
            && ts.windows(2).all(|w| w[1] == w[0] || w[1] == w[0] * p)
            // once the order grows by p it keeps growing
            && !(ts[1] == ts[0] * p && ts[2] == ts[1]);
        if !regular {
            return (false, format!("lifting irregular at p={p}: {ts:?}"));
        }
    }
    (true, "orders divide T(m) for m<=20; T(2)=4 T(11)=110 T(3)=13 T(7)=16".into())
}

fn boundary(_: &Context) -> Outcome {
    let mut mults = Vec::new();
    for family in [1u8, 2] {
        for k in 1..=5 {
            let (code, x) = match boundary_family(k, family) {
                Ok(v) => v,
                Err(e) => return (false, format!("family {family} k={k}: {e}")),
            };
            if cycles::least_period(&code.period) != k + 2 {
                return (false, format!("family {family} k={k}: period {}", code.period.len()));
            }
            let (xi, _) = x.frac_int_split();
            let count = points_with_fractional_part(&xi, k as u32 + 2).map(|v| v.len()).unwrap_or(0);
            if count < 2 {
                return (false, format!("family {family} k={k}: multiplicity {count}"));
            }
            mults.push(count);
        }
    }
    let coding = Coding::canonical();
    for s in [Symbol::new(1, 4), Symbol::new(2, 9)] {
        let Ok(x) = coding.decode(&PeriodicCode::periodic(vec![s])) else {
            return (false, format!("{s}^inf does not decode"));
        };
        let (xi, _) = x.frac_int_split();
        if points_with_fractional_part(&xi, 1).map(|v| v.len()).unwrap_or(0) < 2 {
            return (false, format!("{s}^inf is not a boundary point"));
        }
    }
    (true, format!("multiplicities {mults:?}; anchors (1,4), (2,9) on the boundary"))
}

fn survey(ctx: &Context) -> Outcome {
    let r = match order::denominator_survey(20, &order::survey_core(), true, ctx.workers) {
        Ok(r) => r,
        Err(e) => return (false, e.to_string()),
    };
    let frac = r.boundary_fraction();
    let f = frac.to_f64().unwrap_or(1.0);
    let ok = r.passed() && f < BOUNDARY_FRACTION_LIMIT;
    (
        ok,
        format!("{} fractional parts, {} points, boundary fraction {frac} ({f:.5})", r.total_xi(), r.total_points()),
    )
}

fn cebotarev(_: &Context) -> Outcome {
    let r = match order::cebotarev_frequencies(10_000) {
        Ok(r) => r,
        Err(e) => return (false, e.to_string()),
    };
    let (a, b, c) = r.frequencies();
    let primes = order::primes_up_to(10_000).len() as u64;
    let ok = (a - 1.0 / 3.0).abs() < CEBOTAREV_TOLERANCE
        && (b - 0.5).abs() < CEBOTAREV_TOLERANCE
        && (c - 1.0 / 6.0).abs() < CEBOTAREV_TOLERANCE
        && r.total() == primes - 2;
    (ok, format!("inert {a:.4}, splits {b:.4}, splits completely {c:.4} over {} primes", r.total()))
}

/// `stats --max-period 6` rendered with 1 and 8 workers, in every format.
fn determinism(ctx: &Context) -> Outcome {
    let cmd = Command::Stats { max_period: 6 };
    let render = |workers: usize, format: Format| {
        let c = Context { workers, ..*ctx };
        commands::run(&cmd, &c).map(|r| r.render(format))
    };
    for format in [Format::Text, Format::Csv, Format::Json] {
        match (render(1, format), render(8, format)) {
            (Ok(a), Ok(b)) if a == b => {}
            (Ok(_), Ok(_)) => return (false, format!("{format:?} output differs")),
            (Err(e), _) | (_, Err(e)) => return (false, e.to_string()),
        }
    }
    (true, "identical bytes for 1 and 8 workers (text, csv, json)".into())
}
