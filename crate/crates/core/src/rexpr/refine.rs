use num_rational::BigRational;

use super::ast::RealExpr;
use super::eval::eval_real;
use super::RexprError;
use crate::mpcert::{BigFloat, CmpResult, RealInterval, Round};

pub const DEFAULT_PREC_START: u32 = 64;
pub const DEFAULT_PREC_CAP: u32 = 1 << 16;

#[derive(Clone, Debug)]
pub enum Goal {
    /// Width of the enclosure at most this (exact) bound.
    Width(BigRational),
    /// Certified strict comparison against a threshold expression.
    Decide(RealExpr),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Refined {
    Enclosure(RealInterval),
    /// `CertLess` or `CertGreater`, with the enclosure that decided it.
    Decision(CmpResult, RealInterval),
}

/// Precisions visited by the doubling schedule, ending exactly at `cap`.
pub fn schedule(start: u32, cap: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = start.max(8);
    while p < cap {
        out.push(p);
        p = p.saturating_mul(2);
    }
    out.push(cap.max(start.max(8)));
    out
}

/// Evaluate at doubling precisions until `goal` is met. Domain failures at
/// low precision (an argument that only looks nonpositive) are retried.
pub fn refine_until(e: &RealExpr, goal: &Goal, prec_start: u32, prec_cap: u32) -> Result<Refined, RexprError> {
    let mut last: Option<RealInterval> = None;
    let mut last_err = None;
    for p in schedule(prec_start, prec_cap) {
        let v = match eval_real(e, p) {
            Ok(v) => v,
            Err(err @ RexprError::Domain(_)) => {
                last_err = Some(err);
                continue;
            }
            Err(err) => return Err(err),
        };
        match goal {
            Goal::Width(eps) => {
                let bound = BigFloat::from_rational(eps, 64, Round::Down);
                if v.width() <= bound {
                    return Ok(Refined::Enclosure(v));
                }
            }
            Goal::Decide(t) => {
                let tv = match eval_real(t, p) {
                    Ok(tv) => tv,
                    Err(err @ RexprError::Domain(_)) => {
                        last_err = Some(err);
                        continue;
                    }
                    Err(err) => return Err(err),
                };
                let c = v.cmp_cert(&tv);
                if c != CmpResult::Overlap {
                    return Ok(Refined::Decision(c, v));
                }
            }
        }
        last = Some(v);
    }
    match (last, last_err) {
        (None, Some(err)) => Err(err),
        (last, _) => Err(RexprError::PrecisionExhausted { last: last.map(Box::new) }),
    }
}
