use std::collections::BTreeSet;

use ay_core::coding::{Coding, PRINTED_INCIDENCE};
use ay_core::cycles::{self, CycleSetStats, REFERENCE_CORE};
use ay_core::field::triple_label;
use ay_core::format::{fixed_places, sig_digits};
use ay_core::iet::{IETTable, DEFAULT_CAP, N};
use ay_core::order;
use ay_core::{Error, FieldElement, IntTriple, Rational, Result};
use serde_json::json;

use crate::acceptance;
use crate::args::{Cli, Command};
use crate::output::{Report, Table};

pub const EXPECTED_PERMUTATION: [usize; N] = [6, 2, 4, 3, 5, 1, 0];

/// Everything a command needs besides its own arguments.
#[derive(Clone, Copy, Debug)]
pub struct Context {
    pub workers: usize,
    pub precision: Option<u32>,
    pub memory_mb: u64,
}

impl Context {
    pub fn from_cli(cli: &Cli) -> Self {
        Self {
            workers: cli.workers as usize,
            precision: cli.precision,
            memory_mb: cycles::memory_cap_mb(),
        }
    }

    fn sig(&self, default: u32) -> usize {
        self.precision.unwrap_or(default) as usize
    }
}

/// The command line echoed into reports, without the global flags.
pub fn echo(cmd: &Command) -> String {
    match cmd {
        Command::VerifyTables => "verify-tables".into(),
        Command::Code { point, depth } => match depth {
            Some(d) => format!("code --point {point} --depth {d}"),
            None => format!("code --point {point}"),
        },
        Command::Cycles { period } => format!("cycles --period {period}"),
        Command::Stats { max_period } => format!("stats --max-period {max_period}"),
        Command::CoreRegion { max_period } => format!("core-region --max-period {max_period}"),
        Command::Embed { period } => format!("embed --period {period}"),
        Command::Order { modulus } => format!("order --modulus {modulus}"),
        Command::Denominators { max_m } => format!("denominators --max-m {max_m}"),
        Command::Cyclotomic { max_n } => format!("cyclotomic --max-n {max_n}"),
        Command::ReproduceAll { budget_minutes } => format!("reproduce-all --budget-minutes {budget_minutes}"),
    }
}

pub fn run(cmd: &Command, ctx: &Context) -> Result<Report> {
    let mut r = Report::new(echo(cmd));
    match cmd {
        Command::VerifyTables => verify_tables(&mut r)?,
        Command::Code { point, depth } => code(&mut r, point, *depth)?,
        Command::Cycles { period } => list_cycles(&mut r, *period, ctx)?,
        Command::Stats { max_period } => stats(&mut r, *max_period, ctx)?,
        Command::CoreRegion { max_period } => core_region(&mut r, *max_period, ctx)?,
        Command::Embed { period } => embed(&mut r, *period, ctx)?,
        Command::Order { modulus } => order_report(&mut r, *modulus)?,
        Command::Denominators { max_m } => denominators(&mut r, *max_m, ctx)?,
        Command::Cyclotomic { max_n } => cyclotomic(&mut r, *max_n)?,
        Command::ReproduceAll { budget_minutes } => reproduce_all(&mut r, *budget_minutes, ctx),
    }
    Ok(r)
}

fn path_label(p: &[usize]) -> String {
    let v: Vec<String> = p.iter().map(|k| k.to_string()).collect();
    format!("({})", v.join(","))
}

/// Ascending coefficients of Π factors.
pub fn poly_product(factors: &[&[i128]]) -> Vec<i128> {
    factors.iter().fold(vec![1], |acc, f| {
        let mut out = vec![0; acc.len() + f.len() - 1];
        for (i, a) in acc.iter().enumerate() {
            for (j, b) in f.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        out
    })
}

/// (x−1)(x³−5x²+7x−1)(x³−7x²+5x−1), ascending.
pub fn expected_char_poly() -> Vec<i128> {
    poly_product(&[&[-1, 1], &[-1, 7, -5, 1], &[-1, 5, -7, 1]])
}

fn verify_tables(r: &mut Report) -> Result<()> {
    let table = IETTable::canonical();
    let coding = Coding::canonical();
    let derived = table.derive_path_data(DEFAULT_CAP)?;
    let perm = table.verify_permutation();

    let mut t = Table::new(["j", "delta", "tau", "nu", "path", "derived_nu", "derived_path"]);
    for j in 0..N {
        t.push([
            j.to_string(),
            table.delta[j].to_string(),
            table.tau[j].to_string(),
            table.nu[j].to_string(),
            path_label(&table.path[j]),
            derived.nu[j].to_string(),
            path_label(&derived.path[j]),
        ]);
    }
    let a = coding.incidence_matrix();
    let poly = a.char_poly();
    let census = (
        coding.symbol_count(),
        coding.digit_alphabet().len(),
        coding.forbidden_tails().iter().filter(|s| coding.p(**s) == s.j).count(),
        coding.allowed_fixed_codes().len(),
    );

    r.text = format!(
        "{}\npermutation {}\ncharacteristic polynomial (ascending) {:?}\ntrace {}\nsymbols {}, digit values {}, forbidden tails {}, allowed fixed codes {}\n",
        t.to_text(),
        path_label(&perm.permutation),
        poly,
        a.trace(),
        census.0,
        census.1,
        census.2,
        census.3
    );
    r.set("rows", t.to_json());
    r.set("permutation", perm.permutation);
    r.set("char_poly", &poly);
    r.set("trace", a.trace());
    r.set("incidence", a.0);
    r.set(
        "census",
        json!({"symbols": census.0, "digits": census.1, "forbidden_tails": census.2, "fixed_codes": census.3}),
    );
    r.table = t;

    r.check("path data re-derived", derived.matches(table));
    r.check("images of scaled intervals", derived.images_match);
    r.check("permutation (6,2,4,3,5,1,0)", perm.passed() && perm.permutation == EXPECTED_PERMUTATION);
    r.check("incidence matrix", a.0 == PRINTED_INCIDENCE);
    r.check("characteristic polynomial", poly == expected_char_poly());
    r.check("trace 13", a.trace() == 13);
    r.check("symbol census", census == (61, 25, 6, 7));
    Ok(())
}

fn code(r: &mut Report, point: &str, depth: Option<u64>) -> Result<()> {
    let coding = Coding::canonical();
    let x: FieldElement = point.parse()?;
    if !x.in_unit_interval() {
        return Err(Error::OutOfDomain(format!("{x} is not in [0,1)")));
    }
    let (symbols, label, code) = match depth {
        Some(d) => {
            let w = coding.encode(&x, d as usize)?;
            let label: String = w.iter().map(|s| s.to_string()).collect();
            (w, label, None)
        }
        None => {
            let c = coding.encode_rational(&x)?;
            let mut w = c.preperiod.clone();
            w.extend_from_slice(&c.period);
            (w, c.to_string(), Some(c))
        }
    };
    let mut t = Table::new(["position", "j", "t", "digit"]);
    for (i, s) in symbols.iter().enumerate() {
        t.push([(i + 1).to_string(), s.j.to_string(), s.t.to_string(), coding.digit(*s)?.to_string()]);
    }
    r.text = format!("{x}\n{label}\n");
    r.set("point", x.to_string());
    r.set("code", &label);
    r.set("symbols", t.to_json());
    if let Some(c) = &code {
        r.set("preperiod", c.preperiod.len());
        r.set("period", c.period.len());
        r.check("decode reproduces the point", coding.decode(c)? == x);
        r.check("no forbidden tail", !c.has_forbidden_tail());
    }
    r.table = t;
    Ok(())
}

fn budget(need_bytes: u128, ctx: &Context) -> Result<()> {
    let need_mb = (need_bytes >> 20) as u64 + 1;
    if need_mb > ctx.memory_mb {
        return Err(Error::Budget {
            need_mb,
            cap_mb: ctx.memory_mb,
        });
    }
    Ok(())
}

fn fix_count(n: u32) -> u128 {
    Coding::canonical().incidence_matrix().trace_power(n) - 6
}

fn list_cycles(r: &mut Report, n: u32, ctx: &Context) -> Result<()> {
    budget(fix_count(n) * 1024, ctx)?;
    let all = cycles::enumerate_fixed(n, ctx.workers)?;
    let mut t = Table::new(["code", "x", "xi", "beta"]);
    for c in &all {
        t.push([c.code.to_string(), c.x.to_string(), c.xi.to_string(), c.beta.to_string()]);
    }
    r.text = t.to_text();
    r.set("period", n);
    r.set("fix_count", all.len());
    r.set("cycles", t.to_json());
    r.check("count equals Tr A^n - 6", all.len() as u128 == fix_count(n));
    r.table = t;
    Ok(())
}

fn histogram_json(s: &CycleSetStats) -> serde_json::Value {
    let m: serde_json::Map<String, serde_json::Value> = s
        .multiplicity_histogram
        .iter()
        .map(|(k, v)| (k.to_string(), json!(v)))
        .collect();
    serde_json::Value::Object(m)
}

fn all_stats(max: u32, ctx: &Context) -> Result<Vec<CycleSetStats>> {
    (1..=max).map(|n| cycles::stats(n, ctx.workers, ctx.memory_mb)).collect()
}

fn stats(r: &mut Report, max: u32, ctx: &Context) -> Result<()> {
    let rows = all_stats(max, ctx)?;
    let sig = ctx.sig(4);
    let mut text = Table::new(["n", "#I''_n", "#I''_n/#Fix", "#B_n"]);
    let mut t = Table::new([
        "period",
        "fix_count",
        "i_n",
        "i_prime",
        "i_doubleprime",
        "ratio",
        "ratio_display",
        "b_n",
        "m_n",
    ]);
    let mut json_rows = Vec::new();
    for s in &rows {
        let ratio = s.doubleprime_ratio();
        let shown = sig_digits(&ratio, sig);
        text.push([s.n.to_string(), s.i_doubleprime_count.to_string(), shown.clone(), s.b_n_count.to_string()]);
        t.push([
            s.n.to_string(),
            s.fix_count.to_string(),
            s.i_n_size.to_string(),
            s.i_prime_count.to_string(),
            s.i_doubleprime_count.to_string(),
            ratio.to_string(),
            shown.clone(),
            s.b_n_count.to_string(),
            s.m_n.to_string(),
        ]);
        json_rows.push(json!({
            "period": s.n,
            "fix_count": s.fix_count,
            "i_n": s.i_n_size.to_string(),
            "i_prime": s.i_prime_count,
            "i_doubleprime": s.i_doubleprime_count,
            "ratio": ratio.to_string(),
            "ratio_display": shown,
            "b_n": s.b_n_count,
            "m_n": s.m_n.to_string(),
            "histogram": histogram_json(s),
        }));
        r.check(format!("n={}: #Fix = Tr A^n - 6", s.n), s.fix_count as u128 == fix_count(s.n));
    }
    r.text = text.to_text();
    r.set("rows", json_rows);
    r.table = t;
    Ok(())
}

fn reference_density(beta: IntTriple) -> Option<f64> {
    REFERENCE_CORE.iter().find(|(b, _)| IntTriple(*b) == beta).map(|(_, d)| *d)
}

fn core_region(r: &mut Report, max: u32, ctx: &Context) -> Result<()> {
    let last = cycles::stats(max, ctx.workers, ctx.memory_mb)?.core_histogram();
    let prev = if max > 1 {
        Some(cycles::stats(max - 1, ctx.workers, ctx.memory_mb)?.core_histogram())
    } else {
        None
    };
    let sig = ctx.sig(5);
    let prev_col = format!("mu_{}", max.saturating_sub(1));
    let last_col = format!("mu_{max}");
    let mut t = Table::new([
        "beta".to_string(),
        "count".into(),
        format!("{last_col}_exact"),
        prev_col.clone(),
        last_col.clone(),
        "reference_mu_14".into(),
    ]);
    let mut text = Table::new(["beta".to_string(), prev_col, last_col, "reference mu_14".into()]);
    let mut entries = Vec::new();
    for (i, (beta, count)) in last.entries.iter().enumerate() {
        let d = last.density(i);
        let p = prev
            .as_ref()
            .map(|h| sig_digits(&h.density_of(*beta), sig))
            .unwrap_or_else(|| "-".into());
        let reference = reference_density(*beta).map_or("-".to_string(), |v| format!("{v}"));
        let shown = last.density_display(i);
        let shown = if ctx.precision.is_some() { sig_digits(&d, sig) } else { shown };
        t.push([triple_label(beta), count.to_string(), d.to_string(), p.clone(), shown.clone(), reference.clone()]);
        text.push([triple_label(beta), p, shown.clone(), reference]);
        entries.push(json!({"beta": triple_label(beta), "count": count, "density": d.to_string(), "display": shown}));
    }
    r.text = text.to_text();
    r.set("period", max);
    r.set("fix_count", last.total);
    r.set("histogram", entries);
    r.check("densities sum to 1", last.density_sum() == Rational::from_integer(1.into()));
    r.table = t;
    Ok(())
}

fn embed(r: &mut Report, n: u32, ctx: &Context) -> Result<()> {
    budget(fix_count(n) * 64, ctx)?;
    let mut xis: BTreeSet<(IntTriple, i128)> = BTreeSet::new();
    cycles::for_each_cycle(n, |_, num, m| {
        xis.insert((num.rem_euclid(m), m));
    })?;
    let places = ctx.precision.unwrap_or(12) as usize;
    let mut t = Table::new(["r0", "r1", "r2", "xi"]);
    for (num, m) in &xis {
        let xi = FieldElement::from_ratio(num.0, *m);
        let e = cycles::embed(&xi)?;
        t.push([
            fixed_places(&e[0], places),
            fixed_places(&e[1], places),
            fixed_places(&e[2], places),
            xi.to_string(),
        ]);
    }
    r.text = t.to_text();
    r.set("period", n);
    r.set("i_prime", xis.len());
    r.set("points", t.to_json());
    r.table = t;
    Ok(())
}

fn order_report(r: &mut Report, m: u64) -> Result<()> {
    let bound = order::t_bound(m)?;
    let mut parts = Table::new(["p", "e", "splitting", "factors", "T(p^e)", "lifting_k"]);
    let mut json_parts = Vec::new();
    for q in &bound.parts {
        let s = order::splitting_type(q.p)?;
        let factors = s.to_string();
        let factors = factors.splitn(3, ' ').nth(2).unwrap_or("").to_string();
        parts.push([
            q.p.to_string(),
            q.e.to_string(),
            s.kind.to_string(),
            factors.clone(),
            q.t.to_string(),
            q.lifting_exponent.to_string(),
        ]);
        json_parts.push(json!({
            "p": q.p, "e": q.e, "splitting": s.kind.label(), "factors": factors,
            "t": q.t, "lifting_exponent": q.lifting_exponent,
        }));
    }
    let mut text = format!("m = {m}\n{}T(m) = {}\n", parts.to_text(), bound.t);
    r.set("modulus", m);
    r.set("t", bound.t);
    r.set("parts", json_parts);
    let mut t = Table::new(["order", "count"]);
    if m >= 2 {
        let w = order::omega_order(m)?;
        text.push_str(&format!("order of omega = {w}\n"));
        r.set("omega_order", w);
        r.check("order of omega divides T(m)", bound.t % w == 0);
        if m <= 40 {
            let orders = order::all_orders(m)?;
            let mut hist = std::collections::BTreeMap::<u64, u64>::new();
            for k in &orders {
                *hist.entry(*k).or_default() += 1;
            }
            for (k, c) in &hist {
                t.push([k.to_string(), c.to_string()]);
            }
            text.push_str(&t.to_text());
            r.set("histogram", hist.iter().map(|(k, c)| (k.to_string(), *c)).collect::<std::collections::BTreeMap<_, _>>());
            r.check("every order divides T(m)", orders.iter().all(|k| bound.t % k == 0));
        }
    }
    r.text = text;
    r.table = if t.rows.is_empty() { parts } else { t };
    Ok(())
}

fn denominators(r: &mut Report, max_m: u64, ctx: &Context) -> Result<()> {
    let s = order::denominator_survey(max_m, &order::survey_core(), true, ctx.workers)?;
    let mut summary = Table::new([
        "m", "primitive", "mobius", "T(m)", "points", "boundary", "unresolved", "orders_divide", "periods_consistent",
    ]);
    for row in &s.rows {
        summary.push([
            row.m.to_string(),
            row.primitive.to_string(),
            row.mobius_count.to_string(),
            row.bound.to_string(),
            row.points.to_string(),
            row.boundary_xi.to_string(),
            row.unresolved.to_string(),
            row.orders_divide.to_string(),
            row.periods_consistent.to_string(),
        ]);
    }
    let mut pts = Table::new(["m", "xi", "order", "period", "beta", "multiplicity"]);
    for p in &s.points {
        let xi = FieldElement::from_ratio(p.xi.0, p.m as i128);
        pts.push([
            p.m.to_string(),
            xi.to_string(),
            p.order.to_string(),
            p.period.to_string(),
            FieldElement::from(p.beta).to_string(),
            p.multiplicity.to_string(),
        ]);
    }
    let sig = ctx.sig(5);
    let mut mu = Table::new(["beta", "mu_prime"]);
    let mut mu_json = Vec::new();
    for (b, d) in s.mu_prime() {
        mu.push([triple_label(&b), sig_digits(&d, sig)]);
        mu_json.push(json!({"beta": triple_label(&b), "mu_prime": d.to_string(), "display": sig_digits(&d, sig)}));
    }
    let frac = s.boundary_fraction();
    r.text = format!(
        "{}\n{}\nboundary fraction {} ({})\n",
        summary.to_text(),
        mu.to_text(),
        frac,
        sig_digits(&frac, sig)
    );
    r.set("max_m", max_m);
    r.set("rows", summary.to_json());
    r.set("mu_prime", mu_json);
    r.set("boundary_fraction", frac.to_string());
    r.set("points", pts.to_json());
    for row in &s.rows {
        r.check(
            format!("m={}", row.m),
            row.primitive as i64 == row.mobius_count && row.orders_divide && row.periods_consistent && row.unresolved == 0,
        );
    }
    r.table = pts;
    Ok(())
}

fn cyclotomic(r: &mut Report, max_n: u64) -> Result<()> {
    let mut t = Table::new(["n", "factors", "product", "expected", "passed"]);
    for n in 1..=max_n {
        let c = order::cyclotomic_check(n)?;
        let f: Vec<String> = c.factors.iter().map(|d| format!("C{d}")).collect();
        t.push([n.to_string(), f.join("*"), c.product.to_string(), c.expected.to_string(), c.passed().to_string()]);
        r.check(format!("n={n}"), c.passed());
    }
    r.text = t.to_text();
    r.set("rows", t.to_json());
    r.table = t;
    Ok(())
}

fn reproduce_all(r: &mut Report, budget_minutes: u64, ctx: &Context) {
    let verdicts = acceptance::run_all(budget_minutes * 60, ctx);
    let mut t = Table::new(["id", "name", "status", "detail"]);
    for v in &verdicts {
        t.push([v.id.to_string(), v.name.clone(), v.status.label().to_string(), v.detail.clone()]);
        r.check(format!("criterion {}", v.id), v.status != acceptance::Status::Failed);
    }
    r.text = verdicts.iter().map(|v| format!("{v}\n")).collect();
    r.set("criteria", &verdicts);
    r.table = t;
}
