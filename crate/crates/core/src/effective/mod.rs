//! Explicit search windows `(N_max, M_max)` containing every solution of the
//! power inequalities for which the linear-forms bound applies.
//!
//! Each window is built in two stages. The first follows the case analysis
//! with the linear-forms lower bound and the absorption lemma; its output is
//! certified but astronomically large. The second stage shrinks it with the
//! best-approximation property of continued fractions: for `0 < q < q_(k+1)`
//! and any integer `p`, `|q xi - p| >= |q_k xi - p_k|`.

mod alg;
mod four;

pub use alg::{window_alg_exp, window_metric, window_two_exp};
pub use four::{four_power_linear_form, four_power_sides, window_four_power, FourPowerForm};

use indexmap::IndexMap;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::diophantine::{cf_expand, lemma_ineq_threshold, DiophantineError};
use crate::heights::HeightError;
use crate::mpcert::{elementary, render_decimal, BigFloat, DecimalEnclosure, RealInterval};
use crate::rexpr::{eval_real, RealExpr, RexprError};

/// Working precision of the derivations.
pub(crate) const PREC: u32 = 256;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EffectiveError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("input carries an isolation-only polynomial; the true minimal polynomial is required")]
    IsolationOnlyInput,
    #[error("precision exhausted in {0}")]
    PrecisionExhausted(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
}

impl From<HeightError> for EffectiveError {
    fn from(e: HeightError) -> Self {
        match e {
            HeightError::IsolationOnlyInput => EffectiveError::IsolationOnlyInput,
            HeightError::RootIsolationFailure(s) => EffectiveError::PrecisionExhausted(s),
        }
    }
}

impl From<DiophantineError> for EffectiveError {
    fn from(e: DiophantineError) -> Self {
        match e {
            DiophantineError::PrecisionExhausted => EffectiveError::PrecisionExhausted("absorption threshold".into()),
            other => EffectiveError::InvalidParams(other.to_string()),
        }
    }
}

impl From<RexprError> for EffectiveError {
    fn from(e: RexprError) -> Self {
        EffectiveError::PrecisionExhausted(e.to_string())
    }
}

/// One certified inequality `lhs <= rhs` in a derivation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub name: String,
    pub claim: String,
    pub lhs: RealInterval,
    pub rhs: RealInterval,
}

impl Step {
    /// Re-check the inequality on the stored enclosures.
    pub fn replay(&self) -> bool {
        self.lhs.hi() <= self.rhs.lo()
    }
}

/// A continued-fraction reduction round.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionRound {
    pub bound_before: String,
    pub k: usize,
    pub q_k: String,
    pub q_k1: String,
    /// Lower bound on `|q_k xi - p_k|`.
    pub delta_lo: String,
    pub bound_after: String,
}

#[derive(Clone, Debug)]
pub struct EffectiveWindow {
    pub kind: &'static str,
    pub n_max: BigInt,
    pub m_max: BigInt,
    /// Window before the continued-fraction reduction.
    pub raw_n_max: BigInt,
    pub raw_m_max: BigInt,
    pub constants: IndexMap<String, RealInterval>,
    pub thresholds: IndexMap<String, BigInt>,
    pub derivation: Vec<Step>,
    pub reduction: Vec<ReductionRound>,
    /// Leading term of the count, `(log x)^2 / (log|a| log|b|)`.
    pub leading_term: Option<RealInterval>,
    pub certified: bool,
    pub notes: Vec<String>,
}

impl EffectiveWindow {
    pub(crate) fn new(kind: &'static str, certified: bool) -> Self {
        EffectiveWindow {
            kind,
            n_max: BigInt::zero(),
            m_max: BigInt::zero(),
            raw_n_max: BigInt::zero(),
            raw_m_max: BigInt::zero(),
            constants: IndexMap::new(),
            thresholds: IndexMap::new(),
            derivation: Vec::new(),
            reduction: Vec::new(),
            leading_term: None,
            certified,
            notes: Vec::new(),
        }
    }

    pub(crate) fn constant(&mut self, name: &str, v: &RealInterval) {
        self.constants.insert(name.to_string(), v.clone());
    }

    /// Record `lhs <= rhs`; fails if it cannot be certified.
    pub(crate) fn step(&mut self, name: &str, claim: &str, lhs: &RealInterval, rhs: &RealInterval) -> Result<(), EffectiveError> {
        let s = Step { name: name.into(), claim: claim.into(), lhs: lhs.clone(), rhs: rhs.clone() };
        if !s.replay() {
            return Err(EffectiveError::PrecisionExhausted(format!("step {name} not certified")));
        }
        self.derivation.push(s);
        Ok(())
    }

    /// True when every recorded step still checks.
    pub fn replay_all(&self) -> bool {
        self.derivation.iter().all(Step::replay)
    }

    /// The window as machine integers, if it fits.
    pub fn window_u64(&self) -> Option<(u64, u64)> {
        Some((self.n_max.to_u64()?, self.m_max.to_u64()?))
    }

    pub fn summary(&self) -> WindowSummary {
        WindowSummary {
            kind: self.kind,
            n_max: self.n_max.to_string(),
            m_max: self.m_max.to_string(),
            raw_n_max: self.raw_n_max.to_string(),
            raw_m_max: self.raw_m_max.to_string(),
            certified: self.certified,
            leading_term: self.leading_term.as_ref().map(render_decimal),
            constants: self.constants.iter().map(|(k, v)| (k.clone(), render_decimal(v))).collect(),
            thresholds: self.thresholds.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
            derivation: self
                .derivation
                .iter()
                .map(|s| StepSummary {
                    name: s.name.clone(),
                    claim: s.claim.clone(),
                    lhs: render_decimal(&s.lhs),
                    rhs: render_decimal(&s.rhs),
                    certified: s.replay(),
                })
                .collect(),
            reduction: self.reduction.clone(),
            notes: self.notes.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StepSummary {
    pub name: String,
    pub claim: String,
    pub lhs: DecimalEnclosure,
    pub rhs: DecimalEnclosure,
    pub certified: bool,
}

/// JSON view of a window with decimal enclosures.
#[derive(Clone, Debug, Serialize)]
pub struct WindowSummary {
    pub kind: &'static str,
    pub n_max: String,
    pub m_max: String,
    pub raw_n_max: String,
    pub raw_m_max: String,
    pub certified: bool,
    pub leading_term: Option<DecimalEnclosure>,
    pub constants: IndexMap<String, DecimalEnclosure>,
    pub thresholds: IndexMap<String, String>,
    pub derivation: Vec<StepSummary>,
    pub reduction: Vec<ReductionRound>,
    pub notes: Vec<String>,
}

// ---- interval helpers ----

pub(crate) fn iv(k: i64) -> RealInterval {
    RealInterval::from_int(k, PREC)
}

pub(crate) fn ln(v: &RealInterval) -> RealInterval {
    elementary::log(v).expect("positive argument")
}

pub(crate) fn ex(v: &RealInterval) -> RealInterval {
    elementary::exp(v).expect("moderate argument")
}

pub(crate) fn div(a: &RealInterval, b: &RealInterval) -> RealInterval {
    a.div(b).expect("nonzero divisor")
}

/// Largest integer `<=` every member's upper end, i.e. a certified integer
/// upper bound for any integer below the enclosed value.
pub(crate) fn floor_hi(v: &RealInterval) -> BigInt {
    v.hi().floor()
}

/// Round an enclosure up to the point at its upper end.
pub(crate) fn up(v: &RealInterval) -> RealInterval {
    RealInterval::point(v.hi().clone())
}

pub(crate) fn big(v: &BigInt) -> RealInterval {
    RealInterval::from_bigint(v, PREC)
}

pub(crate) fn max_big<'a>(vals: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    vals.into_iter().cloned().max().unwrap_or_else(BigInt::zero)
}

pub(crate) fn eval(e: &RealExpr) -> Result<RealInterval, EffectiveError> {
    Ok(eval_real(e, PREC)?)
}

/// `|log(1 + y)| <= 2|y|`, returned only when `|y| < 1/2` is certified.
pub fn guarded_log1p_bound(y: &RealInterval) -> Option<RealInterval> {
    let half = RealInterval::from_int(1, y.prec()).mul_pow2(-1);
    let a = y.abs();
    if a.cert_lt(&half) {
        Some(a.mul_pow2(1))
    } else {
        None
    }
}

/// Outcome of the absorption lemma applied to `n <= kz + c log n + d`.
pub(crate) struct Absorbed {
    pub threshold: BigInt,
    pub conclusion: RealInterval,
    pub bound: BigInt,
}

/// Every `n` with `n <= kz + c log n + d` satisfies `n <= bound`: either `n`
/// is below the lemma's threshold, or the lemma gives `n <= kz + 2c log z`.
/// `z` is raised to `2/k` and `d` to 0 when smaller, which only weakens the
/// hypothesis.
pub(crate) fn absorb(k: &RealInterval, c: &RealInterval, d: &RealInterval, z: &RealInterval) -> Result<Absorbed, EffectiveError> {
    if !k.is_positive() || !c.is_positive() {
        return Err(EffectiveError::InvalidParams("absorption needs k, c > 0".into()));
    }
    let d = d.max_with(&RealInterval::zero(PREC));
    let z = z.max_with(&div(&iv(2), k));
    let (kk, cc, dd) = (k.clone(), c.clone(), d.clone());
    let threshold = lemma_ineq_threshold(&move |_| kk.clone(), &move |_| cc.clone(), &move |_| dd.clone())?;
    let conclusion = k.mul(&z).add(&c.mul(&ln(&z)).mul_pow2(1));
    let bound = (&threshold - BigInt::one()).max(floor_hi(&conclusion));
    Ok(Absorbed { threshold, conclusion, bound })
}

/// Lower bound on `|q xi - p|` enclosed at enough precision to be positive.
fn delta_lower(xi: &RealExpr, p: &BigInt, q: &BigInt) -> Result<BigFloat, EffectiveError> {
    let bits = q.bits() as u32;
    let mut prec = 128 + 3 * bits;
    for _ in 0..6 {
        let x = eval_real(xi, prec)?;
        let d = x.mul(&RealInterval::from_bigint(q, prec)).sub(&RealInterval::from_bigint(p, prec)).abs();
        if d.lo().is_positive() {
            return Ok(d.lo().clone());
        }
        prec *= 2;
    }
    Err(EffectiveError::PrecisionExhausted("convergent distance".into()))
}

/// Shrink a bound on the denominator variable of `|q xi - p| <= eps(q, ...)`.
/// `next(delta)` returns the bound implied by `eps >= delta` for every case
/// of the derivation. Rounds repeat while the bound decreases.
pub(crate) fn reduce(
    xi: &RealExpr,
    start: &BigInt,
    next: impl Fn(&RealInterval) -> Result<BigInt, EffectiveError>,
) -> Result<(BigInt, Vec<ReductionRound>), EffectiveError> {
    let mut bound = start.clone();
    let mut rounds = Vec::new();
    let mut count = 16;
    loop {
        let cf = cf_expand(xi, count, 4096);
        if cf.terminated {
            return Err(EffectiveError::InvalidParams("the ratio is rational".into()));
        }
        // need k >= 1 with q_(k+1) > bound
        let idx = cf.convergents.iter().enumerate().skip(2).find(|(_, (_, q))| q > &bound).map(|(i, _)| i);
        let Some(i) = idx else {
            if cf.certified_through < count {
                return Err(EffectiveError::PrecisionExhausted("continued fraction".into()));
            }
            count *= 2;
            continue;
        };
        let (p, q) = &cf.convergents[i - 1];
        let delta = delta_lower(xi, p, q)?;
        let after = next(&RealInterval::point(delta.clone()))?;
        rounds.push(ReductionRound {
            bound_before: bound.to_string(),
            k: i - 1,
            q_k: q.to_string(),
            q_k1: cf.convergents[i].1.to_string(),
            delta_lo: render_decimal(&RealInterval::point(delta)).lo,
            bound_after: after.clone().min(bound.clone()).to_string(),
        });
        if after >= bound || rounds.len() > 64 {
            return Ok((bound, rounds));
        }
        bound = after.max(BigInt::one());
    }
}

/// `floor(log(a / delta) / lambda)`, the largest exponent with `a e^(-lambda n) >= delta`;
/// a negative result means no exponent qualifies.
pub(crate) fn exp_decay_bound(a: &RealInterval, delta: &RealInterval, lambda: &RealInterval) -> BigInt {
    let v = div(&ln(&div(a, delta)), lambda);
    let f = floor_hi(&v);
    if f.is_negative() {
        BigInt::zero()
    } else {
        f
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn guard_is_enforced() {
        let y = RealInterval::from_rational(&num_rational::BigRational::new(1.into(), 4.into()), 64);
        assert!(guarded_log1p_bound(&y).unwrap().contains(&BigFloat::from_f64_exact(0.5, 64)));
        let y = RealInterval::from_rational(&num_rational::BigRational::new(1.into(), 2.into()), 64);
        assert!(guarded_log1p_bound(&y).is_none());
        // the bound really holds on a grid of |y| < 1/2
        for i in -49..50 {
            let v = i as f64 / 100.0;
            assert!((1.0 + v).ln().abs() <= 2.0 * v.abs() + 1e-15);
        }
    }

    #[test]
    fn absorb_matches_threshold() {
        let a = absorb(&iv(1), &iv(1), &iv(0), &iv(1000)).unwrap();
        assert_eq!(a.threshold, BigInt::from(75));
        assert!((a.conclusion.to_f64() - 1013.8155).abs() < 1e-3);
        assert_eq!(a.bound, BigInt::from(1013));
    }

    #[test]
    fn reduction_on_log2() {
        // |n log 2 - m| <= 10 * 2^-n for n below 10^20
        let xi = crate::rexpr::parse_real("log(2)").unwrap();
        let ln2 = ln(&iv(2));
        let (b, rounds) = reduce(&xi, &BigInt::from(10u64).pow(20), |d| Ok(exp_decay_bound(&iv(10), d, &ln2))).unwrap();
        assert!(b < BigInt::from(90));
        assert!(!rounds.is_empty());
        // brute force: no n in (b, 2000] satisfies the inequality
        for n in (b.to_u64().unwrap() + 1)..2000 {
            let v = n as f64 * std::f64::consts::LN_2;
            assert!((v - v.round()).abs() > 10.0 * 2f64.powi(-(n as i32)));
        }
    }
}
