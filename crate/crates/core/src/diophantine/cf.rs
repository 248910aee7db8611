use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::mpcert::{elementary, render_decimal, DecimalEnclosure, RealInterval};
use crate::rexpr::{eval_real, schedule, RealExpr, DEFAULT_PREC_START};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CFExpansion {
    #[serde(serialize_with = "ser_ints")]
    pub partial_quotients: Vec<BigInt>,
    #[serde(serialize_with = "ser_pairs")]
    pub convergents: Vec<(BigInt, BigInt)>,
    /// Number of leading partial quotients that are certified.
    pub certified_through: usize,
    /// The value is rational and the expansion is complete.
    pub terminated: bool,
    /// Precision at which the last quotient was certified (0 on the exact path).
    pub precision_used: u32,
}

fn ser_ints<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

fn ser_pairs<S: serde::Serializer>(v: &[(BigInt, BigInt)], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|(p, q)| [p.to_string(), q.to_string()]))
}

/// Convergents of a finite list of partial quotients.
pub fn convergents_of(a: &[BigInt]) -> Vec<(BigInt, BigInt)> {
    let (mut p0, mut q0) = (BigInt::zero(), BigInt::one());
    let (mut p1, mut q1) = (BigInt::one(), BigInt::zero());
    let mut out = Vec::with_capacity(a.len());
    for ak in a {
        let p = ak * &p1 + &p0;
        let q = ak * &q1 + &q0;
        p0 = std::mem::replace(&mut p1, p.clone());
        q0 = std::mem::replace(&mut q1, q.clone());
        out.push((p, q));
    }
    out
}

fn finish(a: Vec<BigInt>, terminated: bool, precision_used: u32) -> CFExpansion {
    let convergents = convergents_of(&a);
    CFExpansion { certified_through: a.len(), partial_quotients: a, convergents, terminated, precision_used }
}

/// Euclid's algorithm on a rational.
pub fn cf_rational(r: &BigRational, count: usize) -> CFExpansion {
    let (mut p, mut q) = (r.numer().clone(), r.denom().clone());
    let mut a = Vec::new();
    while a.len() < count && !q.is_zero() {
        let (t, rem) = p.div_mod_floor(&q);
        a.push(t);
        p = std::mem::replace(&mut q, rem);
    }
    let terminated = q.is_zero();
    finish(a, terminated, 0)
}

/// As many certified partial quotients as one enclosure allows.
fn certified_prefix(x: &RealInterval, count: usize) -> Vec<BigInt> {
    let mut a = Vec::new();
    let mut x = x.clone();
    while a.len() < count {
        let Some(f) = x.certain_floor() else { break };
        let frac = x.sub(&RealInterval::from_bigint(&f, x.prec()));
        a.push(f);
        if a.len() == count || !frac.is_positive() {
            break;
        }
        x = match frac.recip() {
            Ok(v) => v,
            Err(_) => break,
        };
    }
    a
}

/// Continued fraction of a certified real. Exact rationals go through Euclid;
/// otherwise each quotient is emitted only when the enclosure pins its floor,
/// with the precision doubled up to `prec_cap`.
pub fn cf_expand(xi: &RealExpr, count: usize, prec_cap: u32) -> CFExpansion {
    assert!(count >= 1);
    if let Some(r) = xi.exact_rational() {
        return cf_rational(&r, count);
    }
    let mut best: Vec<BigInt> = Vec::new();
    let mut used = 0;
    for p in schedule(DEFAULT_PREC_START, prec_cap) {
        let Ok(x) = eval_real(xi, p) else { continue };
        let a = certified_prefix(&x, count);
        // quotients certified at a lower precision must agree with this run
        debug_assert!(best.iter().zip(&a).all(|(u, v)| u == v));
        if a.len() > best.len() {
            best = a;
            used = p;
        }
        if best.len() >= count {
            break;
        }
    }
    finish(best, false, used)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MuEntry {
    pub k: usize,
    #[serde(serialize_with = "ser_int")]
    pub q_k: BigInt,
    pub mu_k: DecimalEnclosure,
    #[serde(skip)]
    pub mu_enclosure: RealInterval,
}

fn ser_int<S: serde::Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// `mu_k = 1 + log q_(k+1) / log q_k`. A finite diagnostic sequence; it does
/// not certify the irrationality exponent, which is a limit superior.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MuProfile {
    pub entries: Vec<MuEntry>,
    /// Always false: the profile is an empirical witness, not a certificate.
    pub certified: bool,
    pub note: &'static str,
}

const MU_NOTE: &str = "estimates only; the exponent itself is a supremum over infinitely many convergents";

pub fn mu_profile(cf: &CFExpansion) -> MuProfile {
    let qs: Vec<BigInt> = cf.convergents.iter().map(|(_, q)| q.clone()).collect();
    mu_profile_from_denominators(&qs)
}

/// Profile from an explicit list of convergent denominators `q_0, q_1, ...`.
pub fn mu_profile_from_denominators(qs: &[BigInt]) -> MuProfile {
    let prec = 128;
    let mut entries = Vec::new();
    for k in 0..qs.len().saturating_sub(1) {
        if qs[k] <= BigInt::one() {
            continue;
        }
        let lq = elementary::log(&RealInterval::from_bigint(&qs[k], prec)).expect("q > 1");
        let lq1 = elementary::log(&RealInterval::from_bigint(&qs[k + 1], prec)).expect("q > 1");
        let mu = RealInterval::from_int(1, prec).add(&lq1.div(&lq).expect("log q > 0"));
        entries.push(MuEntry { k, q_k: qs[k].clone(), mu_k: render_decimal(&mu), mu_enclosure: mu });
    }
    MuProfile { entries, certified: false, note: MU_NOTE }
}
