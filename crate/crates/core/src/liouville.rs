//! The well-approximable constant `c = sum 10^-a(i)`, `a(0) = 1`,
//! `a(i+1) = 10^a(i)`, and solutions of `|alpha^n - 2^m| <= 1` for
//! `alpha = 2^c` at the heights `n = q_k = 10^a(k)`, `m = p_k`.
//!
//! Nothing of size `q_2` or larger is ever materialized. With
//! `delta = n c - m = sum_(i>k) 10^(a(k)-a(i))` one has
//! `|alpha^n - 2^m| = 2^m (2^delta - 1)`, and its base-10 logarithm is
//! `-q_k (1 - c_k log10 2) + a(k) + rho` where `c_k = p_k/q_k` and `rho`
//! is a small enclosed correction. That is stored as `-mantissa * 10^a(k)`.
//!
//! The pair is `(n, m) = (q_k, p_k)`: `alpha^(q_k) = 2^(c q_k)` is close to
//! `2^(p_k)`, and `m/n ~ c ~ 0.1`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::counting::Verdict;
use crate::mpcert::{elementary, render_decimal, BigFloat, DecimalEnclosure, RealInterval, Round};
use crate::rexpr::{liouville_enclosure, RealExpr};

const PREC: u32 = 256;

/// Largest supported order; `a(4)` cannot be written down.
pub const MAX_ORDER: usize = 3;

/// `a(i)` for `i <= 2`; `a(3) = 10^(10^10)` only exists symbolically.
const A_SMALL: [u64; 3] = [1, 10, 10_000_000_000];

/// `floor(a(2) log2 10)`, so `10^a(2) > 2^A2_BITS`.
const A2_BITS: i64 = 33_219_280_948;

/// Materialize decimal expansions only up to this many digits.
const MAX_DIGITS: u64 = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LiouvilleError {
    #[error("order {0} exceeds the supported maximum of 3")]
    OrderTooLarge(usize),
}

fn check(k: usize) -> Result<(), LiouvilleError> {
    if k > MAX_ORDER {
        Err(LiouvilleError::OrderTooLarge(k))
    } else {
        Ok(())
    }
}

/// An exponent of ten: an integer, or `a(k) - minus` for `k = 3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TenExp {
    Int(BigInt),
    AMinus { k: usize, minus: BigInt },
}

impl TenExp {
    fn of(k: usize, minus: u64) -> Self {
        if k < A_SMALL.len() {
            TenExp::Int(BigInt::from(A_SMALL[k] - minus))
        } else {
            TenExp::AMinus { k, minus: BigInt::from(minus) }
        }
    }

    pub fn as_int(&self) -> Option<&BigInt> {
        match self {
            TenExp::Int(v) => Some(v),
            TenExp::AMinus { .. } => None,
        }
    }
}

fn a_text(k: usize) -> String {
    match k {
        0..=1 => A_SMALL[k].to_string(),
        _ => vec!["10"; k].join("^"),
    }
}

impl fmt::Display for TenExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TenExp::Int(v) => write!(f, "{v}"),
            TenExp::AMinus { k, minus } if minus.is_zero() => write!(f, "({})", a_text(*k)),
            TenExp::AMinus { k, minus } => write!(f, "({} - {minus})", a_text(*k)),
        }
    }
}

/// A sum of distinct powers of ten.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentForm {
    pub exponents: Vec<TenExp>,
}

impl ExponentForm {
    /// The exact integer, when it has at most a few thousand digits.
    pub fn to_bigint(&self) -> Option<BigInt> {
        let mut acc = BigInt::zero();
        for e in &self.exponents {
            let e = e.as_int()?;
            if e > &BigInt::from(MAX_DIGITS) {
                return None;
            }
            acc += num_traits::pow(BigInt::from(10), e.try_into().ok()?);
        }
        Some(acc)
    }

    /// Last decimal digit.
    pub fn last_digit(&self) -> u32 {
        self.exponents.iter().filter(|e| e.as_int().is_some_and(|v| v.is_zero())).count() as u32 % 10
    }
}

impl fmt::Display for ExponentForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(v) = self.to_bigint() {
            if self.exponents.len() > 1 || v < BigInt::from(10) {
                return write!(f, "{v}");
            }
        }
        for (i, e) in self.exponents.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match e.as_int() {
                Some(z) if z.is_zero() => write!(f, "1")?,
                _ => write!(f, "10^{e}")?,
            }
        }
        Ok(())
    }
}

/// Handle on the constant `c`.
#[derive(Clone, Copy, Debug, Default)]
pub struct LiouvilleConstant;

impl LiouvilleConstant {
    /// `a(i)` as an integer, for `i <= 2`.
    pub fn a(&self, i: usize) -> Option<BigInt> {
        A_SMALL.get(i).map(|&v| BigInt::from(v))
    }

    /// Expression view of `c`.
    pub fn expr(&self) -> RealExpr {
        RealExpr::LiouvilleC
    }

    pub fn enclosure(&self, prec: u32) -> RealInterval {
        liouville_enclosure(prec)
    }

    /// Enclosure of `c_k = sum_(i<=k) 10^-a(i)`.
    pub fn partial_sum(&self, k: usize, prec: u32) -> Result<RealInterval, LiouvilleError> {
        check(k)?;
        let mut s = BigRational::zero();
        for &a in A_SMALL.iter().take((k + 1).min(2)) {
            s += BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(10), a as usize));
        }
        let base = RealInterval::from_rational(&s, prec);
        if k < 2 {
            return Ok(base);
        }
        // 10^-a(2) + 10^-a(3) < 2 * 10^-a(2) < 2^(1 - A2_BITS)
        let tail = BigFloat::pow2(1 - A2_BITS, 8);
        Ok(RealInterval::new(base.lo().clone(), base.hi().add(&tail, prec, Round::Up)))
    }
}

/// `(p_k, q_k)` with `p_k/q_k = sum_(i<=k) 10^-a(i)` and `q_k = 10^a(k)`.
pub fn convergent_pair(k: usize) -> Result<(ExponentForm, ExponentForm), LiouvilleError> {
    check(k)?;
    let mut p = Vec::new();
    for i in 0..=k {
        let minus = if i < A_SMALL.len() { A_SMALL[i] } else { 0 };
        p.push(if i == k { TenExp::Int(BigInt::zero()) } else { TenExp::of(k, minus) });
    }
    let q = ExponentForm { exponents: vec![TenExp::of(k, 0)] };
    Ok((ExponentForm { exponents: p }, q))
}

/// `(n, m) = (q_k, p_k)`.
pub fn counterexample_pair(k: usize) -> Result<(ExponentForm, ExponentForm), LiouvilleError> {
    let (p, q) = convergent_pair(k)?;
    Ok((q, p))
}

/// `alpha = 2^c = exp(c log 2)`.
pub fn counterexample_alpha() -> RealExpr {
    RealExpr::LiouvilleC.mul(RealExpr::int(2).log()).exp()
}

#[derive(Clone, Debug)]
pub struct Certificate {
    pub k: usize,
    pub n: ExponentForm,
    pub m: ExponentForm,
    /// `log10 |alpha^n - 2^m| = -mantissa * 10^exponent`.
    pub mantissa: RealInterval,
    pub exponent: TenExp,
    /// The same logarithm as a plain enclosure, for `k <= 1`.
    pub log10: Option<RealInterval>,
    pub verdict: Verdict,
    /// `log10` of the displayed bound `4 log(2) n 2^m / 10^n` minus the upper
    /// end of the certified logarithm; positive means the bound dominates.
    pub bound_gap: RealInterval,
    pub bound_holds: bool,
}

impl Certificate {
    pub fn report(&self) -> CertificateReport {
        CertificateReport {
            k: self.k,
            n: self.n.to_string(),
            m: self.m.to_string(),
            log10: match &self.log10 {
                Some(v) => render_decimal(v),
                None => {
                    let d = render_decimal(&self.mantissa);
                    let e = &self.exponent;
                    DecimalEnclosure {
                        text: format!("-{} * 10^{e}", d.text),
                        lo: format!("-{} * 10^{e}", d.hi),
                        hi: format!("-{} * 10^{e}", d.lo),
                    }
                }
            },
            verdict: self.verdict.to_string(),
            stated_bound_dominates: self.bound_holds,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateReport {
    pub k: usize,
    pub n: String,
    pub m: String,
    pub log10: DecimalEnclosure,
    pub verdict: String,
    pub stated_bound_dominates: bool,
}

/// `(a(k) + rho) * 10^-a(k)` for `k <= 2`.
fn correction(k: usize, rho: &RealInterval) -> RealInterval {
    let a = A_SMALL[k];
    let ten = RealInterval::from_int(10, PREC);
    let inv = ten.pow_int(-(a as i64)).expect("nonzero base");
    RealInterval::from_int(a as i64, PREC).add(rho).mul(&inv)
}

/// Certify `|alpha^n - 2^m| <= 1` at `(n, m) = (q_k, p_k)`.
pub fn certify_counterexample(k: usize) -> Result<Certificate, LiouvilleError> {
    check(k)?;
    let (n, m) = counterexample_pair(k)?;
    let ln2 = elementary::ln2(PREC);
    let log10_2 = elementary::log10(&RealInterval::from_int(2, PREC)).expect("positive");
    let log10_ln2 = elementary::log10(&ln2).expect("positive");

    // delta = 10^(a(k) - a(k+1)) (1 + t) with 0 <= t < 2^-60, and
    // delta ln 2 <= 2^delta - 1 <= delta ln 2 * 2^delta with delta < 2^-29
    let unit = RealInterval::new(BigFloat::zero(PREC), BigFloat::pow2(0, PREC));
    let slack = unit.mul(&RealInterval::point(BigFloat::pow2(-60, PREC))).add(&unit.mul(&log10_2).mul_pow2(-29));
    let rho = log10_ln2.add(&slack);

    let ck = LiouvilleConstant.partial_sum(k, PREC)?;
    let mu = RealInterval::from_int(1, PREC).sub(&ck.mul(&log10_2));
    let corr = match k {
        0..=2 => correction(k, &rho),
        // (a + rho) 10^-a decreases in a, so the k = 2 value bounds it
        _ => RealInterval::new(BigFloat::zero(PREC), correction(2, &rho).hi().clone()),
    };
    let mantissa = mu.sub(&corr);
    let exponent = TenExp::of(k, 0);

    let log10 = (k <= 1).then(|| {
        let q = RealInterval::from_int(10, PREC).pow_int(A_SMALL[k] as i64).expect("positive");
        mantissa.mul(&q).neg()
    });
    let verdict = if mantissa.is_positive() {
        Verdict::In
    } else if mantissa.is_negative() {
        Verdict::Out
    } else {
        Verdict::Undecided
    };

    // log10 of the displayed bound is -q_k mu + a(k) + log10(4 ln 2)
    let four_ln2 = elementary::log10(&ln2.mul_pow2(2)).expect("positive");
    let bound_gap = four_ln2.sub(&RealInterval::point(rho.hi().clone()));
    let bound_holds = bound_gap.is_positive();

    Ok(Certificate { k, n, m, mantissa, exponent, log10, verdict, bound_gap, bound_holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rexpr::eval_real;

    #[test]
    fn pairs() {
        let (p, q) = convergent_pair(0).unwrap();
        assert_eq!((p.to_bigint().unwrap(), q.to_bigint().unwrap()), (1.into(), 10.into()));
        let (p, q) = convergent_pair(1).unwrap();
        assert_eq!(p.to_bigint().unwrap(), BigInt::from(1_000_000_001u64));
        assert_eq!(q.to_bigint().unwrap(), BigInt::from(10_000_000_000u64));
        let (n, m) = counterexample_pair(1).unwrap();
        assert_eq!(n.to_string(), "10^10");
        assert_eq!(m.to_string(), "1000000001");
        let (p, q) = convergent_pair(2).unwrap();
        assert_eq!(p.to_string(), "10^9999999999 + 10^9999999990 + 1");
        assert_eq!(q.to_string(), "10^10000000000");
        let (_, q) = convergent_pair(3).unwrap();
        assert_eq!(q.to_string(), "10^(10^10^10)");
        assert_eq!(convergent_pair(4), Err(LiouvilleError::OrderTooLarge(4)));
    }

    #[test]
    fn p_is_one_mod_ten() {
        for k in 0..=3 {
            let (p, _) = convergent_pair(k).unwrap();
            assert_eq!(p.last_digit(), 1);
            // every other term is a positive power of ten
            let zeros = p.exponents.iter().filter(|e| e.as_int().is_some_and(|v| v.is_zero())).count();
            assert_eq!(zeros, 1);
        }
    }

    #[test]
    fn order_zero_matches_direct_evaluation() {
        let c = certify_counterexample(0).unwrap();
        assert_eq!(c.verdict, Verdict::In);
        let l = c.log10.unwrap();
        assert!(l.to_f64() > -8.87 && l.to_f64() < -8.84);
        let direct = eval_real(&counterexample_alpha().powi(10).sub(RealExpr::int(2)), PREC).unwrap();
        let dl = elementary::log10(&direct).unwrap();
        assert!(l.intersect(&dl).is_some(), "{l:?} {dl:?}");
        assert!(c.bound_holds);
    }

    #[test]
    fn higher_orders() {
        let c = certify_counterexample(1).unwrap();
        let l = c.log10.unwrap().to_f64();
        // (10^9 + 1) log10 2 + 10 - 10^10 + log10 ln 2
        let expect = 1_000_000_001.0 * 2f64.log10() + 10.0 - 1e10 + 2f64.ln().log10();
        assert!((l - expect).abs() < 1.0);
        for k in 1..=3 {
            let c = certify_counterexample(k).unwrap();
            assert_eq!(c.verdict, Verdict::In);
            assert!(c.bound_holds);
            // mantissa is 1 - c_k log10 2 - (a(k) + log10 ln 2)/q_k
            let corr = if k == 1 { (10.0 + 2f64.ln().log10()) * 1e-10 } else { 0.0 };
            assert!((c.mantissa.to_f64() - (1.0 - 0.1000000001 * 2f64.log10()) + corr).abs() < 1e-15);
        }
        assert!(certify_counterexample(4).is_err());
    }

    #[test]
    fn alpha_value() {
        let a = eval_real(&counterexample_alpha(), 64).unwrap().to_f64();
        assert!((a - 2f64.powf(0.1000000001)).abs() < 1e-12);
    }
}
