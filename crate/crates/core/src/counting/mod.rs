//! Windowed certified counting of pairs `(n, m)` with `|L(n) - R(m)| <= x`,
//! where each side is a power sum with a strictly dominant base.
//! Exponents start at 1.

mod side;

pub use side::PowerSumSide;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::mpcert::{cbox_abs, elementary, render_decimal, BigFloat, RealInterval};
use crate::rexpr::{eval_real, schedule, RealExpr, RexprError, DEFAULT_PREC_CAP, DEFAULT_PREC_START};
use side::{add_up, Gaussian};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("invalid side: {0}")]
    InvalidSide(String),
    #[error("dominance of the first term could not be certified")]
    DominanceUndecided,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Expr(#[from] RexprError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    In,
    Out,
    Undecided,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::In => "In",
            Verdict::Out => "Out",
            Verdict::Undecided => "Undecided",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionRecord {
    pub n: u64,
    pub m: u64,
    pub verdict: Verdict,
    /// Enclosure of `|L(n) - R(m)|`.
    pub value_enclosure: RealInterval,
    /// Working precision of the deciding evaluation; 0 on the exact path.
    pub precision_used: u32,
}

impl SolutionRecord {
    /// Decimal bounds on `log10` of the value; `-inf` for a zero lower end.
    pub fn log10_bounds(&self) -> (String, String) {
        let v = &self.value_enclosure;
        let p = v.prec().max(64);
        let one_sided = |b: &BigFloat| -> Option<RealInterval> {
            if !b.is_positive() {
                return None;
            }
            elementary::log10(&RealInterval::point(b.with_prec(p, crate::mpcert::Round::Down))).ok()
        };
        let lo = one_sided(v.lo()).map(|r| render_decimal(&r).lo).unwrap_or_else(|| "-inf".into());
        let hi = one_sided(v.hi()).map(|r| render_decimal(&r).hi).unwrap_or_else(|| "-inf".into());
        (lo, hi)
    }

    pub fn csv_line(&self) -> String {
        let (lo, hi) = self.log10_bounds();
        format!("{},{},{},{},{}", self.n, self.m, self.verdict, lo, hi)
    }
}

/// Exact `|z|` enclosure for a Gaussian rational at 128 bits.
fn exact_abs(z: &Gaussian) -> RealInterval {
    let norm = &z.0 * &z.0 + &z.1 * &z.1;
    RealInterval::from_rational(&norm, 128).sqrt().expect("nonnegative")
}

/// Decide `|L(n) - R(m)| <= x`. Exact Gaussian-rational inputs with a rational
/// `x` are decided exactly (ties count as In); otherwise the precision doubles
/// from 64 bits up to `prec_cap` and the pair is Undecided if still ambiguous.
pub fn classify_pair(
    l: &PowerSumSide,
    r: &PowerSumSide,
    n: u64,
    m: u64,
    x: &RealExpr,
    prec_cap: u32,
) -> SolutionRecord {
    classify_pair_from(l, r, n, m, x, DEFAULT_PREC_START, prec_cap)
}

/// As [`classify_pair`] with the first precision of the schedule given.
pub fn classify_pair_from(
    l: &PowerSumSide,
    r: &PowerSumSide,
    n: u64,
    m: u64,
    x: &RealExpr,
    prec_start: u32,
    prec_cap: u32,
) -> SolutionRecord {
    assert!(n >= 1 && m >= 1, "exponents start at 1");
    if let (Some(a), Some(b), Some(xr)) = (l.exact_value(n), r.exact_value(m), x.exact_rational()) {
        let z = (a.0 - b.0, a.1 - b.1);
        let norm = &z.0 * &z.0 + &z.1 * &z.1;
        let verdict = if !xr.is_negative() && norm <= &xr * &xr { Verdict::In } else { Verdict::Out };
        return SolutionRecord { n, m, verdict, value_enclosure: exact_abs(&z), precision_used: 0 };
    }
    // magnitude bits so that the scheduled precision is available below the leading digit
    let mag = (n as f64 * l.log2_dominant()).max(m as f64 * r.log2_dominant()).ceil() as u32;
    let mut last = None;
    for p in schedule(prec_start, prec_cap) {
        let w = p + mag;
        let (Ok(a), Ok(b), Ok(xv)) = (l.value(n, w), r.value(m, w), eval_real(x, w)) else { continue };
        let v = cbox_abs(&a.sub(&b));
        let verdict = if v.hi() <= xv.lo() {
            Verdict::In
        } else if v.lo() > xv.hi() {
            Verdict::Out
        } else {
            last = Some((v, w));
            continue;
        };
        return SolutionRecord { n, m, verdict, value_enclosure: v, precision_used: w };
    }
    let (v, w) = last.unwrap_or_else(|| (RealInterval::new(BigFloat::zero(64), BigFloat::zero(64)), 0));
    SolutionRecord { n, m, verdict: Verdict::Undecided, value_enclosure: v, precision_used: w }
}

#[derive(Clone, Debug)]
pub struct CountReport {
    pub x: RealExpr,
    pub window: (u64, u64),
    pub count_in: u64,
    pub count_undecided: u64,
    /// Pairs evaluated and found Out.
    pub count_out_evaluated: u64,
    /// Pairs excluded by the modulus bracket without evaluation.
    pub count_pruned: u64,
    pub predicted: Option<RealInterval>,
    pub lower_bound: u64,
    pub ratio: Option<RealInterval>,
    /// Every evaluated pair, sorted by `(n, m)`.
    pub records: Vec<SolutionRecord>,
}

impl CountReport {
    /// True when no pair in the window is Undecided.
    pub fn certified(&self) -> bool {
        self.count_undecided == 0
    }

    pub fn in_pairs(&self) -> Vec<(u64, u64)> {
        self.records.iter().filter(|r| r.verdict == Verdict::In).map(|r| (r.n, r.m)).collect()
    }

    pub fn undecided_pairs(&self) -> Vec<(u64, u64)> {
        self.records.iter().filter(|r| r.verdict == Verdict::Undecided).map(|r| (r.n, r.m)).collect()
    }
}

/// Bits used for the pruning bounds.
const BRACKET_PREC: u32 = 96;

/// Monotone envelopes of the modulus bounds of one side over `1..=k_max`:
/// suffix minima of the lower bounds and prefix maxima of the upper bounds.
fn envelopes(s: &PowerSumSide, k_max: u64) -> Result<(Vec<BigFloat>, Vec<BigFloat>, Vec<BigFloat>, Vec<BigFloat>), CountError> {
    let raw: Vec<(BigFloat, BigFloat)> =
        (1..=k_max).into_par_iter().map(|k| s.modulus_bounds(k, BRACKET_PREC)).collect::<Result<_, _>>()?;
    let lows: Vec<BigFloat> = raw.iter().map(|b| b.0.clone()).collect();
    let ups: Vec<BigFloat> = raw.iter().map(|b| b.1.clone()).collect();
    let mut low_env = lows.clone();
    for i in (0..low_env.len().saturating_sub(1)).rev() {
        if low_env[i + 1] < low_env[i] {
            low_env[i] = low_env[i + 1].clone();
        }
    }
    let mut up_env = ups.clone();
    for i in 1..up_env.len() {
        if up_env[i] < up_env[i - 1] {
            up_env[i] = up_env[i - 1].clone();
        }
    }
    Ok((lows, ups, low_env, up_env))
}

/// Count over `[1, n_max] x [1, m_max]`. For each `n`, only the `m` whose
/// modulus bounds are compatible with `||L(n)| - |R(m)|| <= x` are classified;
/// the rest are Out by the reverse triangle inequality.
pub fn count_window(
    l: &PowerSumSide,
    r: &PowerSumSide,
    x: &RealExpr,
    n_max: u64,
    m_max: u64,
    prec_cap: u32,
) -> Result<CountReport, CountError> {
    count_window_from(l, r, x, n_max, m_max, DEFAULT_PREC_START, prec_cap)
}

/// As [`count_window`] with the first precision of the schedule given.
pub fn count_window_from(
    l: &PowerSumSide,
    r: &PowerSumSide,
    x: &RealExpr,
    n_max: u64,
    m_max: u64,
    prec_start: u32,
    prec_cap: u32,
) -> Result<CountReport, CountError> {
    if n_max == 0 || m_max == 0 {
        return Err(CountError::InvalidInput("window bounds must be at least 1".into()));
    }
    let xv = eval_real(x, BRACKET_PREC)?;
    if xv.is_negative() {
        return Err(CountError::InvalidInput("x must be nonnegative".into()));
    }
    let x_hi = xv.hi().clone();
    let (l_low, l_up, _, _) = envelopes(l, n_max)?;
    let (_, _, r_low_env, r_up_env) = envelopes(r, m_max)?;

    let per_n: Vec<Vec<SolutionRecord>> = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let i = (n - 1) as usize;
            let upper = add_up(&l_up[i], &x_hi);
            // lower bound on |L(n)| - x; candidates need |R(m)| >= it
            let need = l_low[i].sub(&x_hi, BRACKET_PREC, crate::mpcert::Round::Down);
            let start = r_up_env.partition_point(|u| u < &need);
            let end = r_low_env.partition_point(|lo| lo <= &upper);
            (start..end.max(start))
                .map(|j| classify_pair_from(l, r, n, j as u64 + 1, x, prec_start, prec_cap))
                .collect()
        })
        .collect();
    let records: Vec<SolutionRecord> = per_n.into_iter().flatten().collect();
    let count_in = records.iter().filter(|r| r.verdict == Verdict::In).count() as u64;
    let count_undecided = records.iter().filter(|r| r.verdict == Verdict::Undecided).count() as u64;
    let evaluated = records.len() as u64;
    let predicted = predict(l, r, x).ok();
    let lower_bound = lower_bound_count(l, r, x);
    let ratio = ratio_of(l, r, x, count_in);
    Ok(CountReport {
        x: x.clone(),
        window: (n_max, m_max),
        count_in,
        count_undecided,
        count_out_evaluated: evaluated - count_in - count_undecided,
        count_pruned: n_max * m_max - evaluated,
        predicted,
        lower_bound,
        ratio,
        records,
    })
}

/// Convenience wrapper with the default precision cap.
pub fn count(l: &PowerSumSide, r: &PowerSumSide, x: &RealExpr, n_max: u64, m_max: u64) -> Result<CountReport, CountError> {
    count_window(l, r, x, n_max, m_max, DEFAULT_PREC_CAP)
}

const PREDICT_PREC: u32 = 128;

fn log_dominant(s: &PowerSumSide, prec: u32) -> RealInterval {
    let m = s.moduli(prec).expect("evaluated at construction")[0].clone();
    elementary::log(&m).expect("modulus exceeds 1")
}

/// `(log x)^2 / (log|b_1(L)| log|b_1(R)|)`, dominant bases only.
pub fn predict(l: &PowerSumSide, r: &PowerSumSide, x: &RealExpr) -> Result<RealInterval, CountError> {
    let p = PREDICT_PREC;
    let xv = eval_real(x, p)?;
    if !RealInterval::from_int(1, p).cert_lt(&xv) {
        return Err(CountError::InvalidInput("prediction needs x > 1".into()));
    }
    let lx = elementary::log(&xv).map_err(RexprError::from)?;
    Ok(lx.sqr().div(&log_dominant(l, p).mul(&log_dominant(r, p))).expect("positive logs"))
}

fn ratio_of(l: &PowerSumSide, r: &PowerSumSide, x: &RealExpr, count_in: u64) -> Option<RealInterval> {
    let p = PREDICT_PREC;
    let xv = eval_real(x, p).ok()?;
    if !RealInterval::from_int(1, p).cert_lt(&xv) {
        return None;
    }
    let lx = elementary::log(&xv).ok()?;
    let num = RealInterval::from_int(count_in as i64, p).mul(&log_dominant(l, p)).mul(&log_dominant(r, p));
    num.div(&lx.sqr()).ok()
}

/// Side length of the lower-bound box for one side:
/// `floor((log(x/2) - log t) / log|b_1|)`, clamped at 0. When the floor cannot
/// be pinned the smaller candidate is taken, which keeps the box inside the
/// solution set.
fn box_side(s: &PowerSumSide, x: &RealExpr) -> u64 {
    let mut best = 0u64;
    for p in schedule(PREDICT_PREC, 2048) {
        let Ok(xv) = eval_real(x, p) else { continue };
        let half = xv.mul_pow2(-1);
        if !half.is_positive() {
            return 0;
        }
        let t = RealInterval::from_int(s.len() as i64, p);
        let Ok(lh) = elementary::log(&half) else { return 0 };
        let lt = elementary::log(&t).expect("t >= 1");
        let Ok(q) = lh.sub(&lt).div(&log_dominant(s, p)) else { return 0 };
        if let Some(f) = q.certain_floor() {
            return f.to_u64().unwrap_or(if f.is_negative() { 0 } else { u64::MAX });
        }
        let f = q.floor_lo();
        best = if f.is_negative() { 0 } else { f.to_u64().unwrap_or(u64::MAX) };
    }
    best
}

/// Number of pairs in the box where `|L(n)| + |R(m)| <= x/2 + x/2` holds for
/// every pair, so each of them is a solution.
pub fn lower_bound_count(l: &PowerSumSide, r: &PowerSumSide, x: &RealExpr) -> u64 {
    let (a, b) = lower_bound_box(l, r, x);
    a.saturating_mul(b)
}

/// The `(n, m)` extents of the lower-bound box.
pub fn lower_bound_box(l: &PowerSumSide, r: &PowerSumSide, x: &RealExpr) -> (u64, u64) {
    (box_side(l, x), box_side(r, x))
}

#[derive(Clone, Debug)]
pub struct SeriesRow {
    pub x: RealExpr,
    pub window: (u64, u64),
    pub count_in: u64,
    pub count_undecided: u64,
    pub predicted: Option<RealInterval>,
    pub ratio: Option<RealInterval>,
    pub lower_bound: u64,
}

/// One row per `x`; `windows` holds either one shared window or one per `x`.
pub fn ratio_series(
    l: &PowerSumSide,
    r: &PowerSumSide,
    xs: &[RealExpr],
    windows: &[(u64, u64)],
    prec_cap: u32,
) -> Result<Vec<SeriesRow>, CountError> {
    if windows.len() != 1 && windows.len() != xs.len() {
        return Err(CountError::InvalidInput("give one window or one window per x".into()));
    }
    let mut prev: Option<RealInterval> = None;
    let mut rows = Vec::with_capacity(xs.len());
    for (i, x) in xs.iter().enumerate() {
        let xv = eval_real(x, PREDICT_PREC)?;
        if let Some(p) = &prev {
            if !p.cert_lt(&xv) {
                return Err(CountError::InvalidInput("x values must increase".into()));
            }
        }
        prev = Some(xv);
        let (nm, mm) = windows[if windows.len() == 1 { 0 } else { i }];
        let rep = count_window(l, r, x, nm, mm, prec_cap)?;
        rows.push(SeriesRow {
            x: x.clone(),
            window: (nm, mm),
            count_in: rep.count_in,
            count_undecided: rep.count_undecided,
            predicted: rep.predicted,
            ratio: rep.ratio,
            lower_bound: rep.lower_bound,
        });
    }
    Ok(rows)
}

/// Exact double-loop count for integer/rational bases; used as a reference.
pub fn exact_double_loop(l: &[BigRational], r: &[BigRational], x: &BigRational, n_max: u64, m_max: u64) -> Vec<(u64, u64)> {
    let pow_sum = |bs: &[BigRational], k: u64| -> BigRational {
        bs.iter().fold(BigRational::zero(), |acc, b| acc + num_traits::pow(b.clone(), k as usize))
    };
    let mut out = Vec::new();
    for n in 1..=n_max {
        let a = pow_sum(l, n);
        for m in 1..=m_max {
            if (&a - pow_sum(r, m)).abs() <= *x {
                out.push((n, m));
            }
        }
    }
    out
}
