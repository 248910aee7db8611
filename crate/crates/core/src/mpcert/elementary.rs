//! Certified exp, log, sin, cos and the constants they need.
//!
//! Every routine works on point arguments at a working precision with an
//! explicit series remainder folded into the result, then the interval versions
//! combine endpoint evaluations (monotone functions) or a Lipschitz bound
//! (sin, cos).

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::bigfloat::{BigFloat, Round};
use super::interval::RealInterval;
use super::MpError;

const GUARD: u32 = 32;

/// Largest |x| accepted by exp; beyond this the binary exponent of the result
/// would not fit comfortably.
const EXP_ARG_LIMIT: f64 = 1.0e15;

fn cache() -> &'static Mutex<HashMap<(u8, u32), RealInterval>> {
    static CACHE: OnceLock<Mutex<HashMap<(u8, u32), RealInterval>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cached(tag: u8, prec: u32, compute: fn(u32) -> RealInterval) -> RealInterval {
    // bucket precisions so the cache stays small; the value for a bucket is a
    // pure function of the bucket, so results are schedule independent
    let bucket = prec.div_ceil(64) * 64;
    let key = (tag, bucket);
    if let Some(v) = cache().lock().unwrap().get(&key) {
        return v.with_prec(prec);
    }
    let v = compute(bucket);
    cache().lock().unwrap().insert(key, v.clone());
    v.with_prec(prec)
}

fn tiny(w: u32) -> BigFloat {
    BigFloat::pow2(-(w as i64) - 4, 8)
}

fn magnitude(x: &RealInterval) -> BigFloat {
    BigFloat::max(&x.lo().abs(), &x.hi().abs())
}

/// `Σ z^(2i+1)/(2i+1)` with `sign` alternation, for `|z| <= 1/2`, with remainder.
fn odd_series(z: &RealInterval, alternating: bool, w: u32) -> RealInterval {
    let z2 = z.sqr();
    let zmag = magnitude(z);
    let eps = tiny(w);
    let mut pow = z.clone();
    let mut sum = RealInterval::zero(w);
    let mut powmag = zmag.clone();
    let mut i: i64 = 0;
    loop {
        let term = pow.div(&RealInterval::from_int(2 * i + 1, w)).expect("odd denominator");
        sum = if alternating && i % 2 == 1 { sum.sub(&term) } else { sum.add(&term) };
        pow = pow.mul(&z2);
        powmag = powmag.mul(&zmag, w, Round::Up).mul(&zmag, w, Round::Up);
        i += 1;
        if powmag < eps {
            break;
        }
    }
    // geometric tail with ratio |z|^2 <= 1/4: bound by 4/3 of the next power
    let rem = powmag.mul(&BigFloat::from_int(4, w), w, Round::Up).div(&BigFloat::from_int(3, w), w, Round::Up);
    sum.widen(&rem)
}

fn ln2_raw(prec: u32) -> RealInterval {
    let w = prec + GUARD;
    let third = RealInterval::from_rational(&BigRational::new(1.into(), 3.into()), w);
    odd_series(&third, false, w).mul_pow2(1).with_prec(prec)
}

fn pi_raw(prec: u32) -> RealInterval {
    let w = prec + GUARD;
    let a = odd_series(&RealInterval::from_rational(&BigRational::new(1.into(), 5.into()), w), true, w);
    let b = odd_series(&RealInterval::from_rational(&BigRational::new(1.into(), 239.into()), w), true, w);
    a.mul_pow2(4).sub(&b.mul_pow2(2)).with_prec(prec)
}

pub fn ln2(prec: u32) -> RealInterval {
    cached(0, prec, ln2_raw)
}

pub fn pi(prec: u32) -> RealInterval {
    cached(1, prec, pi_raw)
}

pub fn ln10(prec: u32) -> RealInterval {
    cached(2, prec, |p| log_point(&BigFloat::from_int(10, p + 8), p + 16).with_prec(p))
}

pub fn euler_e(prec: u32) -> RealInterval {
    cached(3, prec, |p| exp_point(&BigFloat::from_int(1, p + 8), p + 16).expect("exp(1)").with_prec(p))
}

fn exp_point(x: &BigFloat, w: u32) -> Result<RealInterval, MpError> {
    if x.is_zero() {
        return Ok(RealInterval::from_int(1, w));
    }
    let xf = x.to_f64();
    if !(xf.abs() < EXP_ARG_LIMIT) {
        return Err(MpError::DomainError(format!("exp argument {x} too large")));
    }
    let k = (xf / std::f64::consts::LN_2).round() as i64;
    let kbits = 64 - k.unsigned_abs().leading_zeros();
    let s: u32 = ((w as f64).sqrt() as u32) / 2 + 2;
    let wp = w + s + kbits + 16;
    let xi = RealInterval::point(x.with_prec(wp.max(x.prec()), Round::Down));
    let r = xi.sub(&ln2(wp).mul(&RealInterval::from_int(k, wp))).mul_pow2(-(s as i64));
    let rmag = magnitude(&r);
    let eps = tiny(wp);
    let mut sum = RealInterval::from_int(1, wp);
    let mut term = RealInterval::from_int(1, wp);
    let mut termmag = BigFloat::one(wp);
    let mut i = 1i64;
    loop {
        term = term.mul(&r).div(&RealInterval::from_int(i, wp)).expect("positive");
        sum = sum.add(&term);
        termmag = termmag.mul(&rmag, wp, Round::Up).div(&BigFloat::from_int(i, wp), wp, Round::Up);
        i += 1;
        if termmag < eps {
            break;
        }
    }
    // |r| < 1/2 so the tail is below twice the next term
    let next = termmag.mul(&rmag, wp, Round::Up).mul_pow2(1);
    let mut y = sum.widen(&next);
    for _ in 0..s {
        y = y.sqr();
    }
    Ok(y.mul_pow2(k).with_prec(w))
}

fn log_point(x: &BigFloat, w: u32) -> RealInterval {
    debug_assert!(x.is_positive());
    if *x == BigFloat::one(8) {
        return RealInterval::zero(w);
    }
    let t = x.top_bit().expect("positive");
    let wp = w + 16;
    let mut e = t;
    let mut f = x.mul_pow2(-t);
    // f in [1,2); fold to (2/3, 4/3]
    if f.mul(&BigFloat::from_int(3, 8), wp + 8, Round::Down) > BigFloat::from_int(4, 8) {
        f = f.mul_pow2(-1);
        e += 1;
    }
    let fi = RealInterval::point(f.with_prec(wp.max(f.prec()), Round::Down));
    let one = RealInterval::from_int(1, wp);
    let z = fi.sub(&one).div(&fi.add(&one)).expect("positive");
    let ebits = 64 - e.unsigned_abs().leading_zeros();
    let l2 = ln2(wp + ebits);
    odd_series(&z, false, wp).mul_pow2(1).add(&l2.mul(&RealInterval::from_int(e, wp + ebits))).with_prec(w)
}

/// Returns `(sin x, cos x)`.
fn sincos_point(x: &BigFloat, w: u32) -> (RealInterval, RealInterval) {
    let unit = || RealInterval::new(BigFloat::from_int(-1, w), BigFloat::from_int(1, w));
    if x.is_zero() {
        return (RealInterval::zero(w), RealInterval::from_int(1, w));
    }
    let xf = x.to_f64();
    if !(xf.abs() < 1.0e15) {
        return (unit(), unit());
    }
    let q = (xf / std::f64::consts::FRAC_PI_2).round() as i64;
    let qbits = 64 - q.unsigned_abs().leading_zeros();
    let wp = w + qbits + 16;
    let half_pi = pi(wp + qbits).mul_pow2(-1);
    let xi = RealInterval::point(x.with_prec(wp.max(x.prec()), Round::Down));
    let r = xi.sub(&half_pi.mul(&RealInterval::from_int(q, wp + qbits)));
    let rmag = magnitude(&r);
    let r2 = r.sqr();
    let eps = tiny(wp);
    let mut sin = r.clone();
    let mut cos = RealInterval::from_int(1, wp);
    let mut sterm = r.clone();
    let mut cterm = RealInterval::from_int(1, wp);
    let mut mag = rmag.clone();
    let mut n = 1i64;
    loop {
        // cterm: r^(n+1)/(n+1)!, sterm: r^(n+2)/(n+2)!, alternating
        cterm = cterm.mul(&r2).div(&RealInterval::from_int(n * (n + 1), wp)).expect("positive").neg();
        sterm = sterm.mul(&r2).div(&RealInterval::from_int((n + 1) * (n + 2), wp)).expect("positive").neg();
        cos = cos.add(&cterm);
        sin = sin.add(&sterm);
        mag = mag
            .mul(&rmag, wp, Round::Up)
            .mul(&rmag, wp, Round::Up)
            .div(&BigFloat::from_int((n + 1) * (n + 2), wp), wp, Round::Up);
        n += 2;
        if mag < eps {
            break;
        }
    }
    // alternating series with decreasing terms once n > |r|: remainder below the
    // current magnitude bound for both series
    let sin = sin.widen(&mag);
    let cos = cos.widen(&mag);
    let (s, c) = match q.rem_euclid(4) {
        0 => (sin, cos),
        1 => (cos, sin.neg()),
        2 => (sin.neg(), cos.neg()),
        _ => (cos.neg(), sin),
    };
    let clamp = |v: RealInterval| v.intersect(&unit()).unwrap_or_else(unit).with_prec(w);
    (clamp(s), clamp(c))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElemFn {
    Exp,
    Log,
    Sin,
    Cos,
    Abs,
    Sqrt,
    PowInt(i64),
}

pub fn exp(a: &RealInterval) -> Result<RealInterval, MpError> {
    let p = a.prec();
    let w = p + GUARD;
    if a.is_point() {
        return Ok(exp_point(a.lo(), w)?.with_prec(p));
    }
    let lo = exp_point(a.lo(), w)?;
    let hi = exp_point(a.hi(), w)?;
    Ok(RealInterval::new(lo.lo().clone(), hi.hi().clone()).with_prec(p))
}

pub fn log(a: &RealInterval) -> Result<RealInterval, MpError> {
    if !a.lo().is_positive() {
        return Err(MpError::DomainError(format!("log of interval not certainly positive: {a}")));
    }
    let p = a.prec();
    let w = p + GUARD;
    if a.is_point() {
        return Ok(log_point(a.lo(), w).with_prec(p));
    }
    let lo = log_point(a.lo(), w);
    let hi = log_point(a.hi(), w);
    Ok(RealInterval::new(lo.lo().clone(), hi.hi().clone()).with_prec(p))
}

fn sincos_interval(a: &RealInterval, want_sin: bool) -> RealInterval {
    let p = a.prec();
    let w = p + GUARD;
    let pick = |(s, c): (RealInterval, RealInterval)| if want_sin { s } else { c };
    if a.is_point() {
        return pick(sincos_point(a.lo(), w)).with_prec(p);
    }
    let unit = RealInterval::new(BigFloat::from_int(-1, p), BigFloat::from_int(1, p));
    let width = a.width();
    if width > BigFloat::from_int(4, 8) {
        return unit;
    }
    let radius = width.mul_pow2(-1);
    let center = pick(sincos_point(&a.mid(), w));
    center.widen(&radius).intersect(&unit).unwrap_or(unit).with_prec(p)
}

pub fn sin(a: &RealInterval) -> RealInterval {
    sincos_interval(a, true)
}

pub fn cos(a: &RealInterval) -> RealInterval {
    sincos_interval(a, false)
}

/// Apply an elementary function with certified containment.
pub fn iv_elem(a: &RealInterval, f: ElemFn) -> Result<RealInterval, MpError> {
    match f {
        ElemFn::Exp => exp(a),
        ElemFn::Log => log(a),
        ElemFn::Sin => Ok(sin(a)),
        ElemFn::Cos => Ok(cos(a)),
        ElemFn::Abs => Ok(a.abs()),
        ElemFn::Sqrt => a.sqrt(),
        ElemFn::PowInt(k) => a.pow_int(k),
    }
}

/// `log10` via `log / ln 10`.
pub fn log10(a: &RealInterval) -> Result<RealInterval, MpError> {
    let p = a.prec();
    log(&a.with_prec(p + 8))?.div(&ln10(p + 8)).map(|v| v.with_prec(p))
}

/// Exact integer power of ten as an interval (outward rounded for huge exponents).
pub fn pow10(k: &BigInt, prec: u32) -> RealInterval {
    use num_traits::{Signed, ToPrimitive};
    let ten = RealInterval::from_int(10, prec);
    let mag = k.abs().to_u64().expect("power of ten exponent fits u64");
    let v = RealInterval::new(
        ten.lo().pow_nonneg(mag, prec, Round::Down),
        ten.hi().pow_nonneg(mag, prec, Round::Up),
    );
    if k.is_negative() { v.recip().expect("nonzero") } else { v }
}
