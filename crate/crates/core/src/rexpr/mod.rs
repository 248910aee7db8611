//! Exact expressions for the bases and thresholds, with parsing and adaptive
//! certified evaluation.

mod algebraic;
mod ast;
mod eval;
mod parser;
pub mod poly;
mod refine;

pub use algebraic::{AlgebraicNumber, Selector};
pub use ast::{ComplexExpr, Expr, Part, RealExpr};
pub use eval::{eval_complex, eval_real, liouville_enclosure, MIN_EVAL_PREC};
pub use parser::{parse, parse_complex, parse_poly, parse_real};
pub use poly::IntPoly;
pub use refine::{refine_until, schedule, Goal, Refined, DEFAULT_PREC_CAP, DEFAULT_PREC_START};

use thiserror::Error;

use crate::mpcert::RealInterval;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RexprError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("isolation error: {0}")]
    Isolation(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precision exhausted")]
    PrecisionExhausted { last: Option<Box<RealInterval>> },
}

/// Build an algebraic number from a polynomial and a rational box.
pub fn alg_root(poly: &IntPoly, selector: Selector) -> Result<AlgebraicNumber, RexprError> {
    AlgebraicNumber::alg_root(poly, selector)
}
