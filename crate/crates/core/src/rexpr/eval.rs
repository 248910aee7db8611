use num_bigint::BigInt;
use num_rational::BigRational;

use super::ast::{ComplexExpr, Part, RealExpr};
use super::RexprError;
use crate::mpcert::{cbox_abs, elementary, BigFloat, ComplexBox, MpError, RealInterval, Round};

pub const MIN_EVAL_PREC: u32 = 8;

/// `a(i)` for the first few indices that can ever matter numerically.
const LIOUVILLE_A: [u64; 3] = [1, 10, 10_000_000_000];

/// `floor(a(2) * log2(10))`: `10^a(2) > 2^LIOUVILLE_TAIL_BITS`.
const LIOUVILLE_TAIL_BITS: i64 = 33_219_280_948;

impl From<MpError> for RexprError {
    fn from(e: MpError) -> Self {
        RexprError::Domain(e.to_string())
    }
}

/// Enclosure of the Liouville constant. Terms `10^-a(i)` are included while
/// `a(i) <= prec*log10(2) + 64`; the omitted tail is below `2*10^-a(next)`
/// and is added to the upper endpoint.
pub fn liouville_enclosure(prec: u32) -> RealInterval {
    let limit = prec as f64 * std::f64::consts::LOG10_2 + 64.0;
    let mut sum = BigRational::from_integer(0.into());
    let mut next = 0;
    for (i, &a) in LIOUVILLE_A.iter().enumerate() {
        if (a as f64) > limit {
            break;
        }
        sum += BigRational::new(1.into(), num_traits::pow(BigInt::from(10), a as usize));
        next = i + 1;
    }
    // a(next) >= a(2) for every realistic precision, so 2*10^-a(next) <= 2^(1 - tail bits)
    debug_assert!(next <= 2);
    let tail_bits = if next == 2 { LIOUVILLE_TAIL_BITS } else { 33 };
    let base = RealInterval::from_rational(&sum, prec);
    let tail = BigFloat::pow2(1 - tail_bits, 8);
    RealInterval::new(base.lo().clone(), base.hi().add(&tail, prec, Round::Up))
}

/// Certified enclosure of a real expression.
pub fn eval_real(e: &RealExpr, prec: u32) -> Result<RealInterval, RexprError> {
    let prec = prec.max(MIN_EVAL_PREC);
    if let Some(r) = e.exact_rational() {
        return Ok(RealInterval::from_rational(&r, prec));
    }
    ev(e, prec)
}

fn ev(e: &RealExpr, p: u32) -> Result<RealInterval, RexprError> {
    use RealExpr::*;
    Ok(match e {
        Int(k) => RealInterval::from_bigint(k, p),
        Rat(r) => RealInterval::from_rational(r, p),
        Pi => elementary::pi(p),
        Exp(a) => elementary::exp(&ev(a, p)?)?,
        Log(a) => elementary::log(&ev(a, p)?)?,
        Sqrt(a) => ev(a, p)?.sqrt()?,
        Root(a, part) => {
            if let (Part::Re, Some(iv)) = (part, a.enclose_real(p)) {
                iv
            } else {
                let z = a.enclose(p);
                match part {
                    Part::Re => z.re,
                    Part::Im => z.im,
                    Part::Modulus => cbox_abs(&z),
                }
            }
        }
        PowInt(a, k) => match e.exact_rational() {
            Some(r) => RealInterval::from_rational(&r, p),
            None => ev(a, p)?.pow_int(*k)?,
        },
        Neg(a) => ev(a, p)?.neg(),
        Add(a, b) => ev(a, p)?.add(&ev(b, p)?),
        Sub(a, b) => ev(a, p)?.sub(&ev(b, p)?),
        Mul(a, b) => ev(a, p)?.mul(&ev(b, p)?),
        Div(a, b) => ev(a, p)?.div(&ev(b, p)?)?,
        LiouvilleC => liouville_enclosure(p),
    })
}

/// Certified enclosure of a complex expression.
pub fn eval_complex(c: &ComplexExpr, prec: u32) -> Result<ComplexBox, RexprError> {
    let prec = prec.max(MIN_EVAL_PREC);
    if let (RealExpr::Root(a, Part::Re), RealExpr::Root(b, Part::Im)) = (&c.re, &c.im) {
        if a == b {
            return Ok(a.enclose(prec));
        }
    }
    Ok(ComplexBox::new(eval_real(&c.re, prec)?, eval_real(&c.im, prec)?))
}
