//! Arbitrary-precision directed-rounding arithmetic and interval/box types.
//!
//! This is the only place where rounding happens. Everything above works with
//! [`RealInterval`] and [`ComplexBox`] enclosures and never sees a rounded
//! scalar.

mod bigfloat;
mod complex;
mod decimal;
pub mod elementary;
mod interval;

pub use bigfloat::{BigFloat, Round};
pub use complex::{cbox_abs, ComplexBox};
pub use decimal::{render_decimal, DecimalEnclosure};
pub use elementary::{iv_elem, ElemFn};
pub use interval::{iv_arith, iv_cmp, ArithOp, CmpResult, RealInterval};

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MpError {
    #[error("division by an interval containing zero")]
    DivisionByZeroInterval,
    #[error("domain error: {0}")]
    DomainError(String),
}
