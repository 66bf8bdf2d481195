//! Batch verification front-end.
//!
//! Exit status: 0 when every executed check passes, 1 when some check
//! fails, 2 on usage errors (reported by clap).

use std::collections::BTreeMap;
use std::io::Write;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bch::{bch_direct, bch_linear_closed, bch_log, linear_part, Y};
use crate::cylinder::{self, bch_substitution, cyl_classical, cyl_perturbed, dsu_tail, xy2x_coefficient};
use crate::error::{Error, Result};
use crate::exact::{bernoulli_table, int, render};
use crate::freeseries::Series;
use crate::gauge::{gauge, gauge_ode, is_mc, morphism_from_gauge};
use crate::identities::{eq4_residual, euler_residual, gen_euler_residual, recursion_residual, GenEulerVariant};
use crate::models::{
    chain_map_check, d_squared_report, dz_alternative, ls_alphabet, mismatch_failure, model_interval, model_ls,
    model_s0, series_failure, Failure, GeneratorReport,
};
use crate::sampling::{free_target_alphabet, model_free_target, random_series};

pub const DEFAULT_ORDER: usize = 8;
pub const DEFAULT_SEED: u64 = 0x05ee_d1a5;
pub const RECURSION_MAX_N: usize = 60;
pub const EULER_MAX_N: usize = 40;
pub const GEN_EULER_MIN_N: usize = 4;
pub const EQ4_MAX_WEIGHT: usize = 20;
pub const GAUGE_ODE_CASES: usize = 20;
pub const PROP1_CASES: usize = 10;

#[derive(Debug, Parser)]
#[command(name = "lsverify", version, about = "Exact checks for the Lawrence-Sullivan interval model and its cylinder")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print B_0..B_max.
    Bernoulli {
        #[arg(long)]
        max: usize,
        #[arg(long)]
        json: bool,
    },
    /// Print the Baker-Campbell-Hausdorff series through an order.
    Bch {
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum, default_value_t = BchForm::Log)]
        form: BchForm,
        #[arg(long)]
        json: bool,
    },
    /// Apply the gauge action of a degree-0 generator to a degree −1 generator.
    Gauge {
        #[arg(long, value_enum)]
        model: GaugeModel,
        #[arg(long)]
        x: String,
        #[arg(long)]
        a: String,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
        #[arg(long)]
        json: bool,
    },
    /// Run one named check.
    Verify {
        #[arg(value_enum)]
        check: CheckName,
        #[command(flatten)]
        params: Params,
        #[arg(long)]
        json: bool,
    },
    /// Run every check.
    RunAll {
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BchForm {
    Log,
    Direct,
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GaugeModel {
    Ls,
    Interval,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    AsPrinted,
    SumCorrected,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckName {
    LsD2,
    IntervalD2,
    S0D2,
    DzForms,
    LsGauge,
    CylinderD2,
    ClassicalCylD2,
    Theorem1,
    Inclusions,
    Projection,
    BchCross,
    BchLinear,
    Corollary,
    GaugeOde,
    Prop1,
    Eq2,
    Gamma,
    Eq4,
    Recursion,
    Euler,
    GenEuler,
}

impl CheckName {
    pub const ALL: [CheckName; 21] = [
        CheckName::LsD2,
        CheckName::IntervalD2,
        CheckName::S0D2,
        CheckName::DzForms,
        CheckName::LsGauge,
        CheckName::CylinderD2,
        CheckName::ClassicalCylD2,
        CheckName::Theorem1,
        CheckName::Inclusions,
        CheckName::Projection,
        CheckName::BchCross,
        CheckName::BchLinear,
        CheckName::Corollary,
        CheckName::GaugeOde,
        CheckName::Prop1,
        CheckName::Eq2,
        CheckName::Gamma,
        CheckName::Eq4,
        CheckName::Recursion,
        CheckName::Euler,
        CheckName::GenEuler,
    ];

    pub fn label(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }

    fn uses_order(self) -> bool {
        !matches!(self, CheckName::Eq4 | CheckName::Recursion | CheckName::Euler | CheckName::GenEuler)
    }
}

#[derive(Debug, Clone, clap::Args)]
pub struct Params {
    #[arg(long, default_value_t = DEFAULT_ORDER)]
    pub order: usize,
    #[arg(long)]
    pub max_n: Option<usize>,
    /// Smallest even n for `gen-euler`.
    #[arg(long)]
    pub min_n: Option<usize>,
    #[arg(long)]
    pub max_weight: Option<usize>,
    #[arg(long, value_enum, default_value_t = VariantArg::Both)]
    pub variant: VariantArg,
    /// Seed for the randomized checks.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

impl Params {
    pub fn at_order(order: usize) -> Self {
        Params { order, max_n: None, min_n: None, max_weight: None, variant: VariantArg::Both, seed: DEFAULT_SEED }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FailureRecord {
    pub location: String,
    pub expected: String,
    pub actual: String,
}

impl From<Failure> for FailureRecord {
    fn from(f: Failure) -> Self {
        FailureRecord { location: f.location, expected: render(&f.expected), actual: render(&f.actual) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub params: BTreeMap<String, Value>,
    pub status: Status,
    pub first_failure: Option<FailureRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub elapsed_ms: u64,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn text(&self) -> String {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={}", plain(v))).collect();
        let mut line = format!(
            "{} {} [{}] ({} ms)",
            if self.passed() { "PASS" } else { "FAIL" },
            self.check,
            params.join(" "),
            self.elapsed_ms
        );
        if let Some(f) = &self.first_failure {
            line.push_str(&format!(
                "\n  first failure at {}: expected {}, actual {}",
                f.location, f.expected, f.actual
            ));
        }
        if let Some(n) = &self.note {
            line.push_str(&format!("\n  note: {n}"));
        }
        line
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Result of a check body before timing and bookkeeping are attached.
#[derive(Debug, Default)]
struct Outcome {
    failure: Option<Failure>,
    note: Option<String>,
}

impl Outcome {
    fn from_failure(failure: Option<Failure>) -> Self {
        Outcome { failure, note: None }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

fn labelled(label: &str, report: &GeneratorReport) -> Option<Failure> {
    report.first_failure().map(|f| Failure { location: format!("{label} / {}", f.location), ..f })
}

fn first_of(reports: &[(String, GeneratorReport)]) -> Option<Failure> {
    reports.iter().find_map(|(l, r)| labelled(l, r))
}

fn tuple_failure(location: String, actual: crate::Rational) -> Failure {
    Failure { location, expected: int(0), actual }
}

fn variant_list(v: VariantArg) -> Vec<GenEulerVariant> {
    match v {
        VariantArg::AsPrinted => vec![GenEulerVariant::AsPrinted],
        VariantArg::SumCorrected => vec![GenEulerVariant::SumCorrected],
        VariantArg::Both => GenEulerVariant::ALL.to_vec(),
    }
}

fn check_params(check: CheckName, p: &Params) -> BTreeMap<String, Value> {
    let mut m = BTreeMap::new();
    if check.uses_order() {
        m.insert("order".into(), json!(p.order));
    }
    match check {
        CheckName::GaugeOde | CheckName::Prop1 => {
            m.insert("seed".into(), json!(p.seed));
            let cases = if check == CheckName::GaugeOde { GAUGE_ODE_CASES } else { PROP1_CASES };
            m.insert("cases".into(), json!(cases));
        }
        CheckName::Eq4 => {
            m.insert("max_weight".into(), json!(p.max_weight.unwrap_or(EQ4_MAX_WEIGHT)));
        }
        CheckName::Recursion => {
            m.insert("max_n".into(), json!(p.max_n.unwrap_or(RECURSION_MAX_N)));
        }
        CheckName::Euler => {
            m.insert("max_n".into(), json!(p.max_n.unwrap_or(EULER_MAX_N)));
        }
        CheckName::GenEuler => {
            m.insert("min_n".into(), json!(p.min_n.unwrap_or(GEN_EULER_MIN_N)));
            m.insert("max_n".into(), json!(p.max_n.unwrap_or(EULER_MAX_N)));
            let v = match p.variant {
                VariantArg::AsPrinted => "as-printed",
                VariantArg::SumCorrected => "sum-corrected",
                VariantArg::Both => "both",
            };
            m.insert("variant".into(), json!(v));
        }
        _ => {}
    }
    m
}

/// Runs one check and wraps the outcome in a report. Kernel errors (which
/// indicate a malformed request such as an order below 2) become failures.
pub fn run_check(check: CheckName, params: &Params) -> CheckReport {
    let start = Instant::now();
    let outcome = match execute(check, params) {
        Ok(o) => o,
        Err(e) => Outcome::from_failure(Some(Failure {
            location: format!("error: {e}"),
            expected: int(0),
            actual: int(0),
        })),
    };
    CheckReport {
        check: check.label(),
        params: check_params(check, params),
        status: if outcome.failure.is_none() { Status::Pass } else { Status::Fail },
        first_failure: outcome.failure.map(FailureRecord::from),
        note: outcome.note,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

fn execute(check: CheckName, p: &Params) -> Result<Outcome> {
    let n = p.order;
    Ok(match check {
        CheckName::LsD2 => Outcome::from_failure(d_squared_report(&model_ls(n)?)?.first_failure()),
        CheckName::IntervalD2 => Outcome::from_failure(d_squared_report(&model_interval(n)?)?.first_failure()),
        CheckName::S0D2 => Outcome::from_failure(d_squared_report(&model_s0(n)?)?.first_failure()),
        CheckName::CylinderD2 => Outcome::from_failure(d_squared_report(&cyl_perturbed(n)?)?.first_failure()),
        CheckName::ClassicalCylD2 => Outcome::from_failure(d_squared_report(&cyl_classical(n)?)?.first_failure()),
        CheckName::DzForms => {
            let m = model_ls(n)?;
            Outcome::from_failure(mismatch_failure(m.image("z")?, &dz_alternative(n)?, n))
        }
        CheckName::LsGauge => {
            let m = model_ls(n)?;
            let got = gauge(&m, &m.generator("z")?, &m.generator("b")?)?;
            Outcome::from_failure(mismatch_failure(&got, &m.generator("a")?, n))
        }
        CheckName::Theorem1 => Outcome::from_failure(cylinder::theorem1_check(n)?.first_failure()),
        CheckName::Inclusions => Outcome::from_failure(first_of(&cylinder::inclusion_reports(n)?)),
        CheckName::Projection => Outcome::from_failure(first_of(&cylinder::projection_reports(n)?)),
        CheckName::BchCross => Outcome::from_failure(mismatch_failure(&bch_direct(n), &bch_log(n)?, n)),
        CheckName::BchLinear => {
            Outcome::from_failure(mismatch_failure(&linear_part(&bch_log(n)?, Y), &bch_linear_closed(n), n))
        }
        CheckName::Corollary => {
            let substituted = bch_substitution(n)?.apply(&linear_part(&bch_log(n)?, Y))?;
            let model = cyl_perturbed(n)?;
            let (su, up) = (model.generator("su")?, model.generator("u'")?);
            let tail = model.image("su")?.try_sub(&(&su * &up - &up * &su))?;
            let direct = dsu_tail(n)?;
            let failure = mismatch_failure(&substituted, &tail, n).or_else(|| mismatch_failure(&tail, &direct, n));
            Outcome::from_failure(failure)
        }
        CheckName::GaugeOde => gauge_ode_check(n, p.seed, GAUGE_ODE_CASES)?,
        CheckName::Prop1 => prop1_check(n, p.seed, PROP1_CASES)?,
        CheckName::Eq2 => Outcome::from_failure(series_failure(&cylinder::eq2_residual(n)?)),
        CheckName::Gamma => {
            let g = cylinder::gamma_residual(n)?;
            let mut failure = series_failure(&g);
            if failure.is_none() {
                'outer: for w in 0..=n.saturating_sub(2) {
                    for pp in 0..=w {
                        let (extracted, direct) = (xy2x_coefficient(&g, pp, w - pp), eq4_residual(pp, w - pp));
                        if extracted != direct {
                            failure = Some(Failure {
                                location: format!("x^{pp} y² x^{}", w - pp),
                                expected: direct,
                                actual: extracted,
                            });
                            break 'outer;
                        }
                    }
                }
            }
            Outcome::from_failure(failure)
        }
        CheckName::Eq4 => {
            let max = p.max_weight.unwrap_or(EQ4_MAX_WEIGHT);
            let failure = (0..=max)
                .flat_map(|w| (0..=w).map(move |pp| (pp, w - pp)))
                .find_map(|(pp, qq)| {
                    let r = eq4_residual(pp, qq);
                    (!r.is_zero()).then(|| tuple_failure(format!("(p,q)=({pp},{qq})"), r))
                });
            Outcome::from_failure(failure)
        }
        CheckName::Recursion => {
            let max = p.max_n.unwrap_or(RECURSION_MAX_N);
            let mut failure = None;
            for k in 1..=max {
                let r = recursion_residual(k)?;
                if !r.is_zero() {
                    failure = Some(tuple_failure(format!("n={k}"), r));
                    break;
                }
            }
            let table = bernoulli_table(max + 1);
            if failure.is_none() {
                failure = (3..=max)
                    .step_by(2)
                    .find(|&k| !table[k].is_zero())
                    .map(|k| tuple_failure(format!("B_{k}"), table[k].clone()));
            }
            Outcome::from_failure(failure)
        }
        CheckName::Euler => {
            let max = p.max_n.unwrap_or(EULER_MAX_N);
            let mut failure = None;
            for k in (4..=max).step_by(2) {
                let r = euler_residual(k)?;
                if !r.is_zero() {
                    failure = Some(tuple_failure(format!("n={k}"), r));
                    break;
                }
            }
            Outcome::from_failure(failure)
        }
        CheckName::GenEuler => gen_euler_check(p)?,
    })
}

fn gen_euler_check(p: &Params) -> Result<Outcome> {
    let min_n = p.min_n.unwrap_or(GEN_EULER_MIN_N);
    let max_n = p.max_n.unwrap_or(EULER_MAX_N);
    let variants = variant_list(p.variant);
    let mut firsts = Vec::new();
    for &v in &variants {
        let f = crate::identities::gen_euler_first_failure(min_n, max_n, v)?;
        firsts.push((v, f));
    }
    let describe = |v: GenEulerVariant, f: &Option<((usize, usize), crate::Rational)>| match f {
        None => format!("{}: residual 0 for all even {min_n} <= n <= {max_n}, 0 <= m <= n-1", v.label()),
        Some(((n, m), r)) => format!("{}: first nonzero residual {} at (n,m)=({n},{m})", v.label(), render(r)),
    };
    let summary: Vec<String> = firsts.iter().map(|(v, f)| describe(*v, f)).collect();
    if variants.len() == 1 {
        let (v, f) = &firsts[0];
        let failure = f.as_ref().map(|((n, m), r)| tuple_failure(format!("(n,m)=({n},{m})"), r.clone()));
        return Ok(Outcome::from_failure(failure).with_note(describe(*v, f)));
    }
    // Arbitration: exactly one variant must hold on the whole range, and
    // both must hold wherever the second sum is empty.
    let passing: Vec<_> = firsts.iter().filter(|(_, f)| f.is_none()).map(|(v, _)| *v).collect();
    let mut failure = None;
    let start = min_n.max(2) + min_n.max(2) % 2;
    'outer: for n in (start..=max_n).step_by(2) {
        for m in n.saturating_sub(2)..n {
            for v in GenEulerVariant::ALL {
                let r = gen_euler_residual(n, m, v)?;
                if !r.is_zero() {
                    failure = Some(tuple_failure(format!("{} at (n,m)=({n},{m}), empty second sum", v.label()), r));
                    break 'outer;
                }
            }
        }
    }
    if failure.is_none() && passing.len() != 1 {
        failure = Some(Failure {
            location: "number of variants with zero residual on the whole range".into(),
            expected: int(1),
            actual: int(passing.len() as i64),
        });
    }
    let mut note = summary.join("; ");
    if let [winner] = passing.as_slice() {
        note.push_str(&format!(
            "; oracle-consistent variant: {} (agrees with the x^p y² x^q coefficient identity under n = p+q+1, m = p)",
            winner.label()
        ));
    }
    Ok(Outcome::from_failure(failure).with_note(note))
}

fn gauge_ode_check(order: usize, seed: u64, cases: usize) -> Result<Outcome> {
    let m = model_ls(order)?;
    let al = ls_alphabet();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..cases {
        let x = random_series(&mut rng, &al, order, 0, 3, 3);
        let a = random_series(&mut rng, &al, order, -1, 3, 3);
        let closed = gauge(&m, &x, &a)?;
        let path = gauge_ode(&m, &x, &a)?.at_one();
        if let Some(f) = mismatch_failure(&path, &closed, order) {
            return Ok(Outcome::from_failure(Some(Failure { location: format!("case {case}: {}", f.location), ..f })));
        }
    }
    Ok(Outcome::default())
}

fn prop1_check(order: usize, seed: u64, cases: usize) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let free = model_free_target(order)?;
    let ls = model_ls(order)?;
    for case in 0..cases {
        // Alternate between the free target (v flat) and L itself (b flat).
        let (target, w, v) = if case % 2 == 0 {
            let w = random_series(&mut rng, &free_target_alphabet(), order, 0, 3, 3);
            (&free, w, free.generator("v")?)
        } else {
            let w = random_series(&mut rng, &ls_alphabet(), order, 0, 3, 3);
            (&ls, w, ls.generator("b")?)
        };
        let phi = morphism_from_gauge(&w, &v, target)?;
        let report = chain_map_check(&phi, &ls, target)?;
        if let Some(f) = labelled(&format!("case {case} ({})", target.name()), &report) {
            return Ok(Outcome::from_failure(Some(f)));
        }
        let flat = is_mc(target, phi.image("a")?)?;
        if let Some(f) = series_failure(&flat.residual) {
            return Ok(Outcome::from_failure(Some(Failure { location: format!("case {case}: Φ(a) flatness / {}", f.location), ..f })));
        }
    }
    Ok(Outcome::default())
}

/// Every check at `order`, identity ranges at their defaults, in
/// declaration order.
pub fn run_all(order: usize) -> Vec<CheckReport> {
    let params = Params::at_order(order);
    CheckName::ALL.iter().map(|&c| run_check(c, &params)).collect()
}

fn emit_reports(out: &mut impl Write, reports: &[CheckReport], json: bool) -> std::io::Result<()> {
    for r in reports {
        if json {
            writeln!(out, "{}", serde_json::to_string(r).expect("report serializes"))?;
        } else {
            writeln!(out, "{}", r.text())?;
        }
    }
    Ok(())
}

fn emit_series(out: &mut impl Write, s: &Series, json: bool) -> std::io::Result<()> {
    if json {
        writeln!(out, "{}", serde_json::to_string(&s.records()).expect("records serialize"))
    } else {
        writeln!(out, "{s}")
    }
}

fn invalid(e: Error) -> std::io::Error {
    std::io::Error::new(std::io::ErrorKind::InvalidInput, e.to_string())
}

/// Executes a parsed command, writing to `out`. Returns the process exit code.
pub fn run(cli: Cli, out: &mut impl Write) -> std::io::Result<i32> {
    match cli.command {
        Command::Bernoulli { max, json } => {
            let table = bernoulli_table(max + 1);
            if json {
                let rows: Vec<Value> =
                    table.iter().enumerate().map(|(n, b)| json!({"n": n, "value": render(b)})).collect();
                writeln!(out, "{}", Value::Array(rows))?;
            } else {
                for (n, b) in table.iter().enumerate() {
                    writeln!(out, "B_{n} = {}", render(b))?;
                }
            }
            Ok(0)
        }
        Command::Bch { order, form, json } => {
            let s = match form {
                BchForm::Log => bch_log(order).map_err(invalid)?,
                BchForm::Direct => bch_direct(order),
                BchForm::Linear => bch_linear_closed(order),
            };
            emit_series(out, &s, json)?;
            Ok(0)
        }
        Command::Gauge { model, x, a, order, json } => {
            let m = match model {
                GaugeModel::Ls => model_ls(order),
                GaugeModel::Interval => model_interval(order),
            }
            .map_err(invalid)?;
            let xs = m.generator(&x).map_err(invalid)?;
            let as_ = m.generator(&a).map_err(invalid)?;
            let result = gauge(&m, &xs, &as_).map_err(invalid)?;
            let flat = is_mc(&m, &result).map_err(invalid)?.flat;
            if json {
                let rec = json!({
                    "model": m.name(), "x": x, "a": a, "order": order,
                    "result": result.records(), "flat": flat,
                });
                writeln!(out, "{rec}")?;
            } else {
                writeln!(out, "{x} * {a} = {result}")?;
                writeln!(out, "flat through order {order}: {flat}")?;
            }
            Ok(0)
        }
        Command::Verify { check, params, json } => {
            let report = run_check(check, &params);
            emit_reports(out, std::slice::from_ref(&report), json)?;
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::RunAll { order, json } => {
            let reports = run_all(order);
            emit_reports(out, &reports, json)?;
            Ok(if reports.iter().all(CheckReport::passed) { 0 } else { 1 })
        }
    }
}
