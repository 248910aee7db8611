#![allow(dead_code)]

pub mod fixed;

use pillai::rexpr::{eval_real, parse_real, RealExpr};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn leaf(rng: &mut ChaCha8Rng) -> RealExpr {
    match rng.gen_range(0..7) {
        0 => RealExpr::int(rng.gen_range(-20..=20)),
        1 => RealExpr::rat(rng.gen_range(-50..=50), rng.gen_range(1..=17)),
        2 => RealExpr::Pi,
        3 => RealExpr::int(1).exp(),
        4 => RealExpr::int(rng.gen_range(2..=30)).sqrt(),
        5 => parse_real(["algebraic(x^2-5; 2, 3)", "algebraic(x^3-2; 1, 2)", "algebraic(x^2-x-1; -1, 0)"][rng.gen_range(0..3)])
            .expect("fixed expression"),
        _ => RealExpr::LiouvilleC,
    }
}

/// Random expression of bounded depth. Exponentials only see small
/// arguments so the values stay in a sane range.
pub fn random_expr(rng: &mut ChaCha8Rng, depth: u32) -> RealExpr {
    if depth == 0 || rng.gen_bool(0.25) {
        return leaf(rng);
    }
    let d = depth - 1;
    match rng.gen_range(0..9) {
        0 => random_expr(rng, d).add(random_expr(rng, d)),
        1 => random_expr(rng, d).sub(random_expr(rng, d)),
        2 => random_expr(rng, d).mul(random_expr(rng, d)),
        3 => random_expr(rng, d).div(random_expr(rng, d)),
        4 => leaf(rng).div(RealExpr::int(rng.gen_range(2..=9))).exp(),
        5 => random_expr(rng, d).log(),
        6 => random_expr(rng, d).sqrt(),
        7 => random_expr(rng, d).powi(rng.gen_range(-3..=4)),
        _ => random_expr(rng, d).neg(),
    }
}

/// Evaluate at `p`, `p + 64` and `4p`. Expressions outside their domain at
/// precision `p` are skipped (`Ok(false)`); a checked one returns `Ok(true)`.
pub fn check_nesting(e: &RealExpr, p: u32) -> Result<bool, String> {
    let Ok(lo) = eval_real(e, p) else { return Ok(false) };
    for q in [p + 64, 4 * p] {
        match eval_real(e, q) {
            Ok(hi) => {
                if !lo.contains_interval(&hi) {
                    return Err(format!("{e}: prec {q} enclosure {hi:?} escapes prec {p} enclosure {lo:?}"));
                }
            }
            Err(err) => return Err(format!("{e}: defined at {p} bits but fails at {q}: {err}")),
        }
    }
    Ok(true)
}
