//! Command-line front end. Every subcommand takes the same flag set; a JSON
//! job file with the same keys (kebab-case, plus `"command"`) can stand in
//! for the flags, and flags given on the command line win over it.
//!
//! Exit codes: 0 success, 2 when a count left pairs Undecided, 1 on errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::counting::{count_window_from, lower_bound_box, predict, ratio_series, CountError, CountReport, PowerSumSide};
use crate::diophantine::{cf_expand, mu_profile};
use crate::effective::{
    four_power_linear_form, four_power_sides, window_alg_exp, window_four_power, window_metric, window_two_exp, EffectiveError,
    EffectiveWindow,
};
use crate::heights::{conjugate_moduli, log_height, make_params, waldschmidt_bound, HeightError, LogTerm};
use crate::liouville::{certify_counterexample, LiouvilleError, MAX_ORDER};
use crate::mpcert::{elementary, render_decimal, DecimalEnclosure, RealInterval};
use crate::rexpr::{parse_complex, parse_real, ComplexExpr, RealExpr, RexprError, DEFAULT_PREC_CAP, DEFAULT_PREC_START};

/// Version of the JSON report layout.
pub const SCHEMA: u32 = 1;

const DEFAULT_CF_TERMS: usize = 20;
const DEFAULT_CF_CAP: u32 = 4096;
const DEFAULT_SAMPLE_WINDOW: u64 = 64;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("config: {0}")]
    Config(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("expression: {0}")]
    Expr(#[from] RexprError),
    #[error("count: {0}")]
    Count(#[from] CountError),
    #[error("window: {0}")]
    Effective(#[from] EffectiveError),
    #[error("height: {0}")]
    Height(#[from] HeightError),
    #[error("liouville: {0}")]
    Liouville(#[from] LiouvilleError),
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Preset {
    /// e^n + (sqrt 5)^n against 7^m + pi^m
    FourPower,
    /// alpha^n against (e^beta)^m, alpha and beta real algebraic
    AlgExp,
    /// (e^alpha)^n against (e^beta)^m
    TwoExp,
    /// heuristic window from an irrationality exponent
    Metric,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    Count,
    Predict,
    Window,
    Cf,
    Mu,
    Liouville,
    Height,
    Waldschmidt,
    Series,
    Sample,
}

fn one_or_many<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<String>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum OneOrMany {
        One(String),
        Many(Vec<String>),
    }
    Ok(match OneOrMany::deserialize(d)? {
        OneOrMany::One(s) => vec![s],
        OneOrMany::Many(v) => v,
    })
}

#[derive(Args, Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, rename_all = "kebab-case")]
pub struct Opts {
    /// Left base; shorthand for a single --left
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    /// Right base; shorthand for a single --right
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    /// Left power-sum term, dominant first (repeatable)
    #[arg(long, allow_hyphen_values = true)]
    #[serde(deserialize_with = "one_or_many")]
    pub left: Vec<String>,
    /// Right power-sum term, dominant first (repeatable)
    #[arg(long, allow_hyphen_values = true)]
    #[serde(deserialize_with = "one_or_many")]
    pub right: Vec<String>,
    /// Bound x (repeatable for series and sample)
    #[arg(long)]
    #[serde(deserialize_with = "one_or_many")]
    pub x: Vec<String>,
    #[arg(long)]
    pub nmax: Option<u64>,
    #[arg(long)]
    pub mmax: Option<u64>,
    #[arg(long)]
    pub prec_start: Option<u32>,
    #[arg(long)]
    pub prec_cap: Option<u32>,
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Number of random draws for sample
    #[arg(long)]
    pub trials: Option<u32>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Order of the Liouville counterexample (0..=3); all orders when absent
    #[arg(long)]
    pub k: Option<usize>,
    /// Real number to expand (cf, mu)
    #[arg(long, allow_hyphen_values = true)]
    pub xi: Option<String>,
    /// Number of partial quotients (cf, mu)
    #[arg(long)]
    pub terms: Option<usize>,
    /// m for the four-power linear form (waldschmidt)
    #[arg(long)]
    pub m: Option<u64>,
    /// Field degree D, asserted by the caller (waldschmidt)
    #[arg(long)]
    pub degree: Option<u64>,
    /// Bound B on the coefficients (waldschmidt)
    #[arg(long)]
    pub b: Option<String>,
    /// Irrationality exponent (metric preset)
    #[arg(long)]
    pub mu: Option<String>,
    /// Approximation constant (metric preset)
    #[arg(long)]
    pub c: Option<String>,
}

impl Opts {
    /// Fill unset fields from `base`.
    fn over(self, base: Opts) -> Opts {
        let vec_or = |a: Vec<String>, b: Vec<String>| if a.is_empty() { b } else { a };
        Opts {
            alpha: self.alpha.or(base.alpha),
            beta: self.beta.or(base.beta),
            left: vec_or(self.left, base.left),
            right: vec_or(self.right, base.right),
            x: vec_or(self.x, base.x),
            nmax: self.nmax.or(base.nmax),
            mmax: self.mmax.or(base.mmax),
            prec_start: self.prec_start.or(base.prec_start),
            prec_cap: self.prec_cap.or(base.prec_cap),
            preset: self.preset.or(base.preset),
            format: self.format.or(base.format),
            seed: self.seed.or(base.seed),
            trials: self.trials.or(base.trials),
            out: self.out.or(base.out),
            k: self.k.or(base.k),
            xi: self.xi.or(base.xi),
            terms: self.terms.or(base.terms),
            m: self.m.or(base.m),
            degree: self.degree.or(base.degree),
            b: self.b.or(base.b),
            mu: self.mu.or(base.mu),
            c: self.c.or(base.c),
        }
    }
}

#[derive(Subcommand, Clone, Debug)]
pub enum Command {
    /// Certified count of |L(n) - R(m)| <= x over a window
    Count(Opts),
    /// Leading-term prediction and the lower-bound box
    Predict(Opts),
    /// Effective search window for a preset family
    Window(Opts),
    /// Certified continued-fraction expansion
    Cf(Opts),
    /// Irrationality-exponent profile from convergents
    Mu(Opts),
    /// Certify the Liouville-number counterexample pairs
    Liouville(Opts),
    /// Logarithmic height of an algebraic number
    Height(Opts),
    /// Linear-forms lower bound
    Waldschmidt(Opts),
    /// Counts and ratios for a sequence of x values
    Series(Opts),
    /// Ratio series over random base pairs
    Sample(Opts),
}

impl Command {
    fn split(self) -> (CommandKind, Opts) {
        use Command::*;
        match self {
            Count(o) => (CommandKind::Count, o),
            Predict(o) => (CommandKind::Predict, o),
            Window(o) => (CommandKind::Window, o),
            Cf(o) => (CommandKind::Cf, o),
            Mu(o) => (CommandKind::Mu, o),
            Liouville(o) => (CommandKind::Liouville, o),
            Height(o) => (CommandKind::Height, o),
            Waldschmidt(o) => (CommandKind::Waldschmidt, o),
            Series(o) => (CommandKind::Series, o),
            Sample(o) => (CommandKind::Sample, o),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "pillai", version, about = "Certified counting for |a^n - b^m| <= x")]
pub struct Cli {
    /// JSON job file; command-line flags override its entries
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Option<Command>,
}

/// A fully resolved job.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JobConfig {
    pub command: CommandKind,
    #[serde(flatten)]
    pub opts: Opts,
}

impl JobConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        Self::from_json(&fs::read_to_string(path)?)
    }
}

/// Rendered output plus the exit code it implies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub body: String,
    pub exit_code: i32,
}

impl Output {
    fn ok(body: String) -> Self {
        Output { body, exit_code: 0 }
    }
}

fn resolve(cli: Cli) -> Result<JobConfig, CliError> {
    let file = cli.config.as_deref().map(JobConfig::load).transpose()?;
    match (cli.command.map(Command::split), file) {
        (Some((command, opts)), Some(f)) => Ok(JobConfig { command, opts: opts.over(f.opts) }),
        (Some((command, opts)), None) => Ok(JobConfig { command, opts }),
        (None, Some(f)) => Ok(f),
        (None, None) => Err(usage("give a subcommand or --config")),
    }
}

/// Parse arguments, run, write the report; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let result = resolve(cli).and_then(|job| {
        let out = run(&job)?;
        emit(&out.body, job.opts.out.as_deref())?;
        Ok(out.exit_code)
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn emit(body: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(p) => fs::write(p, body)?,
        None => std::io::stdout().lock().write_all(body.as_bytes())?,
    }
    Ok(())
}

pub fn run(job: &JobConfig) -> Result<Output, CliError> {
    let o = &job.opts;
    match job.command {
        CommandKind::Count => run_count(o),
        CommandKind::Predict => run_predict(o),
        CommandKind::Window => run_window(o),
        CommandKind::Cf => run_cf(o),
        CommandKind::Mu => run_mu(o),
        CommandKind::Liouville => run_liouville(o),
        CommandKind::Height => run_height(o),
        CommandKind::Waldschmidt => run_waldschmidt(o),
        CommandKind::Series => run_series(o),
        CommandKind::Sample => run_sample(o),
    }
}

// ---- shared plumbing ----

fn prec_cap(o: &Opts) -> u32 {
    o.prec_cap.unwrap_or(DEFAULT_PREC_CAP)
}

fn prec_start(o: &Opts) -> u32 {
    o.prec_start.unwrap_or(DEFAULT_PREC_START)
}

fn format(o: &Opts) -> Format {
    o.format.unwrap_or_default()
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn dec(v: &RealInterval) -> Value {
    serde_json::to_value(render_decimal(v)).expect("serializable")
}

fn opt_dec(v: &Option<RealInterval>) -> Value {
    v.as_ref().map(dec).unwrap_or(Value::Null)
}

fn one_x(o: &Opts) -> Result<(String, RealExpr), CliError> {
    match o.x.as_slice() {
        [s] => Ok((s.clone(), parse_real(s)?)),
        [] => Err(usage("--x is required")),
        _ => Err(usage("give a single --x for this command")),
    }
}

fn algebraic_arg(s: Option<&String>, what: &str) -> Result<crate::rexpr::AlgebraicNumber, CliError> {
    let s = s.ok_or_else(|| usage(format!("--{what} is required")))?;
    parse_real(s)?
        .as_algebraic()
        .ok_or_else(|| usage(format!("--{what} must be a rational or a real algebraic(...) root")))
}

fn term_list(single: &Option<String>, many: &[String]) -> Result<Vec<ComplexExpr>, CliError> {
    let mut v = Vec::new();
    for s in single.iter().chain(many) {
        v.push(parse_complex(s)?);
    }
    Ok(v)
}

/// Power-sum sides from the flags, or from the preset when none are given.
fn sides(o: &Opts) -> Result<(PowerSumSide, PowerSumSide), CliError> {
    let cap = prec_cap(o);
    let l = term_list(&o.alpha, &o.left)?;
    let r = term_list(&o.beta, &o.right)?;
    let exp_of = |s: &Option<String>, w: &str| -> Result<ComplexExpr, CliError> {
        let e = parse_real(s.as_deref().ok_or_else(|| usage(format!("--{w} is required")))?)?;
        Ok(ComplexExpr::real(e.exp()))
    };
    let (l, r) = match o.preset {
        Some(Preset::FourPower) if l.is_empty() && r.is_empty() => return Ok(four_power_sides()),
        Some(Preset::AlgExp) => (l, vec![exp_of(&o.beta, "beta")?]),
        Some(Preset::TwoExp) => (vec![exp_of(&o.alpha, "alpha")?], vec![exp_of(&o.beta, "beta")?]),
        _ => (l, r),
    };
    if l.is_empty() || r.is_empty() {
        return Err(usage("both sides need at least one base (--alpha/--left and --beta/--right)"));
    }
    Ok((PowerSumSide::with_cap(l, cap)?, PowerSumSide::with_cap(r, cap)?))
}

fn compute_window(o: &Opts, x: &RealExpr) -> Result<EffectiveWindow, CliError> {
    let preset = o.preset.ok_or_else(|| usage("--preset is required"))?;
    Ok(match preset {
        Preset::FourPower => window_four_power(x)?,
        Preset::AlgExp => window_alg_exp(&algebraic_arg(o.alpha.as_ref(), "alpha")?, &algebraic_arg(o.beta.as_ref(), "beta")?, x)?,
        Preset::TwoExp => window_two_exp(&algebraic_arg(o.alpha.as_ref(), "alpha")?, &algebraic_arg(o.beta.as_ref(), "beta")?, x)?,
        Preset::Metric => {
            let get = |v: &Option<String>, w: &str| -> Result<RealExpr, CliError> {
                Ok(parse_real(v.as_deref().ok_or_else(|| usage(format!("--{w} is required")))?)?)
            };
            window_metric(&get(&o.alpha, "alpha")?, &get(&o.beta, "beta")?, x, &get(&o.mu, "mu")?, &get(&o.c, "c")?)?
        }
    })
}

/// Explicit window, or one computed from the preset.
fn window_for(o: &Opts, x: &RealExpr) -> Result<((u64, u64), Option<EffectiveWindow>), CliError> {
    match (o.nmax, o.mmax) {
        (Some(n), Some(m)) => Ok(((n, m), None)),
        (None, None) if o.preset.is_some() => {
            let w = compute_window(o, x)?;
            let nm = w.window_u64().ok_or_else(|| usage("computed window does not fit in 64 bits"))?;
            Ok((nm, Some(w)))
        }
        _ => Err(usage("give --nmax and --mmax, or a --preset to compute the window")),
    }
}

// ---- commands ----

fn count_footer(x_text: &str, rep: &CountReport, window: Option<&EffectiveWindow>) -> Value {
    json!({
        "schema": SCHEMA,
        "command": "count",
        "x": x_text,
        "window": [rep.window.0, rep.window.1],
        "window_certified": window.map(|w| w.certified),
        "count_in": rep.count_in,
        "count_undecided": rep.count_undecided,
        "count_out_evaluated": rep.count_out_evaluated,
        "count_pruned": rep.count_pruned,
        "predicted": opt_dec(&rep.predicted),
        "lower_bound": rep.lower_bound,
        "ratio": opt_dec(&rep.ratio),
        "certified": rep.certified(),
    })
}

fn run_count(o: &Opts) -> Result<Output, CliError> {
    let (x_text, x) = one_x(o)?;
    let (l, r) = sides(o)?;
    let ((n, m), w) = window_for(o, &x)?;
    let rep = count_window_from(&l, &r, &x, n, m, prec_start(o), prec_cap(o))?;
    let footer = count_footer(&x_text, &rep, w.as_ref());
    let body = match format(o) {
        Format::Csv => {
            let mut s = String::from("n,m,verdict,log10_lo,log10_hi\n");
            for rec in &rep.records {
                s.push_str(&rec.csv_line());
                s.push('\n');
            }
            let _ = writeln!(s, "# {}", serde_json::to_string(&footer).expect("serializable"));
            s
        }
        Format::Json => {
            let recs: Vec<Value> = rep
                .records
                .iter()
                .map(|r| {
                    let (lo, hi) = r.log10_bounds();
                    json!({"n": r.n, "m": r.m, "verdict": r.verdict.to_string(), "log10_lo": lo, "log10_hi": hi})
                })
                .collect();
            let mut v = footer;
            v["records"] = Value::Array(recs);
            json_text(&v)
        }
    };
    Ok(Output { body, exit_code: if rep.certified() { 0 } else { 2 } })
}

fn run_predict(o: &Opts) -> Result<Output, CliError> {
    let (x_text, x) = one_x(o)?;
    let (l, r) = sides(o)?;
    let p = predict(&l, &r, &x)?;
    let (a, b) = lower_bound_box(&l, &r, &x);
    let v = json!({
        "schema": SCHEMA,
        "command": "predict",
        "x": x_text,
        "predicted": dec(&p),
        "lower_bound": a.saturating_mul(b),
        "box": [a, b],
    });
    Ok(Output::ok(match format(o) {
        Format::Json => json_text(&v),
        Format::Csv => {
            let d = render_decimal(&p);
            format!("x,predicted_lo,predicted_hi,lower_bound\n{x_text},{},{},{}\n", d.lo, d.hi, a.saturating_mul(b))
        }
    }))
}

fn run_window(o: &Opts) -> Result<Output, CliError> {
    let (x_text, x) = one_x(o)?;
    let w = compute_window(o, &x)?;
    Ok(Output::ok(match format(o) {
        Format::Csv => format!("n_max,m_max,certified\n{},{},{}\n", w.n_max, w.m_max, w.certified),
        Format::Json => json_text(&json!({
            "schema": SCHEMA,
            "command": "window",
            "x": x_text,
            "window": w.summary(),
            "certified": w.certified && w.replay_all(),
        })),
    }))
}

fn xi_arg(o: &Opts) -> Result<RealExpr, CliError> {
    Ok(parse_real(o.xi.as_deref().ok_or_else(|| usage("--xi is required"))?)?)
}

fn run_cf(o: &Opts) -> Result<Output, CliError> {
    let cf = cf_expand(&xi_arg(o)?, o.terms.unwrap_or(DEFAULT_CF_TERMS), o.prec_cap.unwrap_or(DEFAULT_CF_CAP));
    Ok(Output::ok(match format(o) {
        Format::Csv => {
            let mut s = String::from("k,a_k,p_k,q_k\n");
            for (k, (a, (p, q))) in cf.partial_quotients.iter().zip(&cf.convergents).enumerate() {
                let _ = writeln!(s, "{k},{a},{p},{q}");
            }
            s
        }
        Format::Json => {
            let mut v = json!({"schema": SCHEMA, "command": "cf"});
            v["expansion"] = serde_json::to_value(&cf).expect("serializable");
            json_text(&v)
        }
    }))
}

fn run_mu(o: &Opts) -> Result<Output, CliError> {
    let cf = cf_expand(&xi_arg(o)?, o.terms.unwrap_or(DEFAULT_CF_TERMS), o.prec_cap.unwrap_or(DEFAULT_CF_CAP));
    let prof = mu_profile(&cf);
    Ok(Output::ok(match format(o) {
        Format::Csv => {
            let mut s = String::from("k,q_k,mu_lo,mu_hi\n");
            for e in &prof.entries {
                let _ = writeln!(s, "{},{},{},{}", e.k, e.q_k, e.mu_k.lo, e.mu_k.hi);
            }
            s
        }
        Format::Json => json_text(&json!({"schema": SCHEMA, "command": "mu", "profile": prof})),
    }))
}

fn run_liouville(o: &Opts) -> Result<Output, CliError> {
    let ks: Vec<usize> = match o.k {
        Some(k) => vec![k],
        None => (0..=MAX_ORDER).collect(),
    };
    let reps = ks.iter().map(|&k| certify_counterexample(k).map(|c| c.report())).collect::<Result<Vec<_>, _>>()?;
    Ok(Output::ok(match format(o) {
        Format::Csv => {
            let mut s = String::from("k,n,m,verdict,log10_lo,log10_hi\n");
            for r in &reps {
                let _ = writeln!(s, "{},{},{},{},{},{}", r.k, r.n, r.m, r.verdict, r.log10.lo, r.log10.hi);
            }
            s
        }
        Format::Json => {
            let mut v = json!({"schema": SCHEMA, "command": "liouville"});
            if let [one] = reps.as_slice() {
                if let Value::Object(m) = serde_json::to_value(one).expect("serializable") {
                    v.as_object_mut().expect("object").extend(m);
                }
            } else {
                v["results"] = serde_json::to_value(&reps).expect("serializable");
            }
            json_text(&v)
        }
    }))
}

const HEIGHT_PREC: u32 = 128;

fn run_height(o: &Opts) -> Result<Output, CliError> {
    let a = algebraic_arg(o.alpha.as_ref(), "alpha")?;
    let h = log_height(&a, HEIGHT_PREC)?;
    let mods = conjugate_moduli(a.minpoly(), HEIGHT_PREC)?;
    let v = json!({
        "schema": SCHEMA,
        "command": "height",
        "alpha": o.alpha,
        "degree": a.degree(),
        "minimal_polynomial": a.minpoly().to_string(),
        "isolation_only": a.isolation_only(),
        "conjugate_moduli": mods.iter().map(dec).collect::<Vec<_>>(),
        "height": dec(&h),
    });
    Ok(Output::ok(match format(o) {
        Format::Json => json_text(&v),
        Format::Csv => {
            let d = render_decimal(&h);
            format!("degree,height_lo,height_hi\n{},{},{}\n", a.degree(), d.lo, d.hi)
        }
    }))
}

fn run_waldschmidt(o: &Opts) -> Result<Output, CliError> {
    let (params, bound) = if o.preset == Some(Preset::FourPower) || o.m.is_some() {
        let f = four_power_linear_form(o.m.unwrap_or(100))?;
        (f.params, f.bound)
    } else {
        let d = o.degree.ok_or_else(|| usage("--degree is required (or use --preset four-power)"))?;
        if d == 0 {
            return Err(usage("--degree must be at least 1"));
        }
        let mut terms = Vec::new();
        for s in o.alpha.iter().chain(&o.left) {
            let a = algebraic_arg(Some(s), "alpha")?;
            let v = a.enclose_real(HEIGHT_PREC).ok_or_else(|| usage("only real alpha_j are supported"))?;
            let abs_log = elementary::log(&v.abs()).map_err(RexprError::from)?.abs();
            terms.push(LogTerm { alpha: a, abs_log });
        }
        if terms.is_empty() {
            return Err(usage("give at least one --alpha/--left"));
        }
        let b = parse_real(o.b.as_deref().ok_or_else(|| usage("--b is required"))?)?;
        let bv = crate::rexpr::eval_real(&b, HEIGHT_PREC)?;
        let p = make_params(&terms, &[], d, HEIGHT_PREC)?
            .with_b(bv, "given")
            .ok_or_else(|| usage("--b must dominate E and D log A_j"))?;
        let bound = waldschmidt_bound(&p);
        (p, bound)
    };
    let v = json!({
        "schema": SCHEMA,
        "command": "waldschmidt",
        "factors": params.factors(),
        "integer_factor": params.integer_factor().to_string(),
        "log_lower_bound": dec(&bound),
    });
    Ok(Output::ok(match format(o) {
        Format::Json => json_text(&v),
        Format::Csv => {
            let d = render_decimal(&bound);
            format!("t,d,log_lower_bound_lo,log_lower_bound_hi\n{},{},{},{}\n", params.t, params.d, d.lo, d.hi)
        }
    }))
}

fn split_dec(v: &Option<RealInterval>) -> (String, String) {
    match v {
        Some(v) => {
            let d = render_decimal(v);
            (d.lo, d.hi)
        }
        None => (String::new(), String::new()),
    }
}

fn run_series(o: &Opts) -> Result<Output, CliError> {
    let (l, r) = sides(o)?;
    if o.x.is_empty() {
        return Err(usage("give at least one --x"));
    }
    let xs = o.x.iter().map(|s| parse_real(s)).collect::<Result<Vec<_>, _>>()?;
    let (n, m) = (o.nmax.ok_or_else(|| usage("--nmax is required"))?, o.mmax.ok_or_else(|| usage("--mmax is required"))?);
    let rows = ratio_series(&l, &r, &xs, &[(n, m)], prec_cap(o))?;
    let undecided = rows.iter().any(|r| r.count_undecided > 0);
    let body = match format(o) {
        Format::Csv => {
            let mut s = String::from("x,count_in,count_undecided,lower_bound,predicted_lo,predicted_hi,ratio_lo,ratio_hi\n");
            for (t, row) in o.x.iter().zip(&rows) {
                let (plo, phi) = split_dec(&row.predicted);
                let (rlo, rhi) = split_dec(&row.ratio);
                let _ = writeln!(s, "{t},{},{},{},{plo},{phi},{rlo},{rhi}", row.count_in, row.count_undecided, row.lower_bound);
            }
            s
        }
        Format::Json => {
            let rs: Vec<Value> = o
                .x
                .iter()
                .zip(&rows)
                .map(|(t, row)| {
                    json!({
                        "x": t,
                        "count_in": row.count_in,
                        "count_undecided": row.count_undecided,
                        "lower_bound": row.lower_bound,
                        "predicted": opt_dec(&row.predicted),
                        "ratio": opt_dec(&row.ratio),
                    })
                })
                .collect();
            json_text(&json!({"schema": SCHEMA, "command": "series", "window": [n, m], "rows": rs, "certified": !undecided}))
        }
    };
    Ok(Output { body, exit_code: if undecided { 2 } else { 0 } })
}

/// A Gaussian rational `(a + b i)/q` with `q` in `1..=4` and modulus in `(1, 10]`.
fn draw_base(rng: &mut ChaCha8Rng) -> String {
    loop {
        let q: i64 = rng.gen_range(1..=4);
        let a: i64 = rng.gen_range(-10 * q..=10 * q);
        let b: i64 = rng.gen_range(-10 * q..=10 * q);
        let norm = a * a + b * b;
        if norm > q * q && norm <= 100 * q * q {
            return if b == 0 { format!("{a}/{q}") } else { format!("complex({a}/{q}, {b}/{q})") };
        }
    }
}

#[derive(Clone, Debug, Serialize)]
struct SampleRow {
    trial: u32,
    alpha: String,
    beta: String,
    x: String,
    count_in: u64,
    count_undecided: u64,
    ratio: Option<DecimalEnclosure>,
}

/// Random base pairs from a fixed rational grid; a data generator only.
fn run_sample(o: &Opts) -> Result<Output, CliError> {
    let trials = o.trials.unwrap_or(1);
    if trials == 0 {
        return Err(usage("--trials must be at least 1"));
    }
    if o.x.is_empty() {
        return Err(usage("give at least one --x"));
    }
    let xs = o.x.iter().map(|s| parse_real(s)).collect::<Result<Vec<_>, _>>()?;
    let win = (o.nmax.unwrap_or(DEFAULT_SAMPLE_WINDOW), o.mmax.unwrap_or(DEFAULT_SAMPLE_WINDOW));
    let mut rng = ChaCha8Rng::seed_from_u64(o.seed.unwrap_or(0));
    let mut rows = Vec::new();
    let mut sums = vec![(0.0f64, 0u32); xs.len()];
    for trial in 0..trials {
        let (a, b) = (draw_base(&mut rng), draw_base(&mut rng));
        let l = PowerSumSide::with_cap(vec![parse_complex(&a)?], prec_cap(o))?;
        let r = PowerSumSide::with_cap(vec![parse_complex(&b)?], prec_cap(o))?;
        let series = ratio_series(&l, &r, &xs, &[win], prec_cap(o))?;
        for (i, row) in series.iter().enumerate() {
            if let Some(q) = &row.ratio {
                sums[i].0 += q.to_f64();
                sums[i].1 += 1;
            }
            rows.push(SampleRow {
                trial,
                alpha: a.clone(),
                beta: b.clone(),
                x: o.x[i].clone(),
                count_in: row.count_in,
                count_undecided: row.count_undecided,
                ratio: row.ratio.as_ref().map(render_decimal),
            });
        }
    }
    let means: Vec<(String, Option<String>)> =
        o.x.iter().zip(&sums).map(|(x, (s, k))| (x.clone(), (*k > 0).then(|| format!("{:.6}", s / *k as f64)))).collect();
    let body = match format(o) {
        Format::Csv => {
            let mut s = String::from("trial,alpha,beta,x,count_in,count_undecided,ratio_lo,ratio_hi\n");
            for r in &rows {
                let (lo, hi) = r.ratio.as_ref().map(|d| (d.lo.clone(), d.hi.clone())).unwrap_or_default();
                let _ = writeln!(s, "{},\"{}\",\"{}\",{},{},{},{lo},{hi}", r.trial, r.alpha, r.beta, r.x, r.count_in, r.count_undecided);
            }
            s.push_str("# x,mean_ratio\n");
            for (x, m) in &means {
                let _ = writeln!(s, "# {x},{}", m.as_deref().unwrap_or(""));
            }
            s
        }
        Format::Json => json_text(&json!({
            "schema": SCHEMA,
            "command": "sample",
            "seed": o.seed.unwrap_or(0),
            "trials": trials,
            "window": [win.0, win.1],
            "rows": rows,
            "mean_ratio": means.iter().map(|(x, m)| json!({"x": x, "mean_ratio": m})).collect::<Vec<_>>(),
        })),
    };
    Ok(Output::ok(body))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn job(args: &[&str]) -> JobConfig {
        let mut v = vec!["pillai"];
        v.extend_from_slice(args);
        resolve(Cli::try_parse_from(v).unwrap()).unwrap()
    }

    #[test]
    fn count_small_window() {
        let out = run(&job(&["count", "--alpha", "2", "--beta", "3", "--x", "10", "--nmax", "64", "--mmax", "64"])).unwrap();
        assert_eq!(out.exit_code, 0);
        let lines: Vec<&str> = out.body.lines().collect();
        assert_eq!(lines[0], "n,m,verdict,log10_lo,log10_hi");
        let footer: Value = serde_json::from_str(lines.last().unwrap().trim_start_matches("# ")).unwrap();
        assert_eq!(footer["count_in"], 8);
        assert_eq!(footer["schema"], 1);
        assert_eq!(footer["certified"], true);
    }

    #[test]
    fn liouville_order_one() {
        let out = run(&job(&["liouville", "--k", "1", "--format", "json"])).unwrap();
        let v: Value = serde_json::from_str(&out.body).unwrap();
        assert_eq!(v["n"], "10^10");
        assert_eq!(v["m"], "1000000001");
        assert_eq!(v["verdict"], "In");
    }

    #[test]
    fn config_file_and_override() {
        let cfg = JobConfig::from_json(r#"{"command": "predict", "alpha": "2", "beta": "3", "x": "10^6", "format": "json"}"#).unwrap();
        let out = run(&cfg).unwrap();
        let v: Value = serde_json::from_str(&out.body).unwrap();
        assert_eq!(v["lower_bound"], 198);
        let merged = Opts { x: vec!["10^3".into()], ..Default::default() }.over(cfg.opts.clone());
        assert_eq!(merged.alpha.as_deref(), Some("2"));
        assert_eq!(merged.x, vec!["10^3".to_string()]);
    }

    #[test]
    fn sample_is_deterministic() {
        let args = ["sample", "--seed", "7", "--trials", "3", "--x", "100", "--x", "1000", "--nmax", "24", "--mmax", "24"];
        let a = run(&job(&args)).unwrap();
        let b = run(&job(&args)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.body.lines().filter(|l| !l.starts_with('#')).count(), 1 + 3 * 2);
    }

    #[test]
    fn errors_exit_one() {
        assert_eq!(main_with_args(["pillai", "count", "--x", "10"]), 1);
        assert_eq!(main_with_args(["pillai", "liouville", "--k", "4"]), 1);
        assert_eq!(main_with_args(["pillai", "nonsense"]), 1);
    }
}
