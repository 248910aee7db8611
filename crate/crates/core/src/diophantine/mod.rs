//! Continued fractions, irrationality-exponent profiles, the absorption
//! lemma, and multiplicative independence of rationals.

mod cf;
mod indep;
mod ineq;

pub use cf::{cf_expand, cf_rational, convergents_of, mu_profile, mu_profile_from_denominators, CFExpansion, MuEntry, MuProfile};
pub use indep::{
    factor, is_probable_prime, mult_indep_int, mult_indep_rational, mult_indep_rational_with_budget, Independence,
    DEFAULT_RHO_BUDGET,
};
pub use ineq::{lemma_ineq_bound, lemma_ineq_threshold, rational_param, Param};

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DiophantineError {
    #[error("precision cap reached before the comparison was decided")]
    PrecisionExhausted,
    #[error("factorisation budget exhausted on {0}")]
    FactorizationTooLarge(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
