//! Outward decimal rendering of enclosures.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::bigfloat::{BigFloat, Round};
use super::interval::RealInterval;

/// Significant digits used for the endpoint strings.
const ENDPOINT_DIGITS: usize = 17;

/// Beyond this binary exponent the endpoints are printed as `m*2^e`.
const MAX_DECIMAL_EXP: i64 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecimalEnclosure {
    /// Shortest decimal prefix whose cylinder set contains the enclosure, or a
    /// bracket when the endpoints disagree in the first digit.
    pub text: String,
    pub lo: String,
    pub hi: String,
}

pub fn render_decimal(iv: &RealInterval) -> DecimalEnclosure {
    let lo = render_endpoint(iv.lo(), ENDPOINT_DIGITS, Round::Down);
    let hi = render_endpoint(iv.hi(), ENDPOINT_DIGITS, Round::Up);
    let text = common_prefix(iv).unwrap_or_else(|| format!("[{lo}, {hi}]"));
    DecimalEnclosure { text, lo, hi }
}

fn too_wide_for_decimal(x: &BigFloat) -> bool {
    match x.top_bit() {
        Some(t) => t.abs() > MAX_DECIMAL_EXP,
        None => false,
    }
}

fn binary_form(x: &BigFloat) -> String {
    format!("{}*2^{}", x.mantissa(), x.exponent())
}

/// floor(log10 |r|) for nonzero r.
fn decimal_exponent(r: &BigRational) -> i64 {
    let a = r.abs();
    let est = (a.numer().bits() as f64 - a.denom().bits() as f64) * std::f64::consts::LOG10_2;
    let mut e = est.floor() as i64;
    loop {
        let p = pow10_rat(e);
        if p > a {
            e -= 1;
            continue;
        }
        if pow10_rat(e + 1) <= a {
            e += 1;
            continue;
        }
        return e;
    }
}

fn pow10_rat(e: i64) -> BigRational {
    let p = num_traits::pow(BigInt::from(10), e.unsigned_abs() as usize);
    if e >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

/// Scaled integer `s` with `s * 10^(e - digits + 1)` rounding `r` in `dir`.
fn scaled_digits(r: &BigRational, e: i64, digits: usize, dir: Round) -> BigInt {
    let scaled = r * pow10_rat(digits as i64 - 1 - e);
    let (q, rem) = scaled.numer().div_mod_floor(scaled.denom());
    if dir == Round::Up && !rem.is_zero() {
        q + 1
    } else {
        q
    }
}

/// A prefix keeps its trailing zeros; they are certified digits.
fn format_sci(s: &BigInt, e: i64, trim: bool) -> String {
    let neg = s.is_negative();
    let digits = s.abs().to_string();
    let (head, tail) = digits.split_at(1);
    let tail = if trim { tail.trim_end_matches('0') } else { tail };
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push_str(head);
    if !tail.is_empty() {
        out.push('.');
        out.push_str(tail);
    }
    if e != 0 {
        out.push_str(&format!("e{e}"));
    }
    out
}

fn render_endpoint(x: &BigFloat, digits: usize, dir: Round) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    if too_wide_for_decimal(x) {
        return binary_form(x);
    }
    let r = x.to_rational();
    let e = decimal_exponent(&r);
    let s = scaled_digits(&r, e, digits, dir);
    let carry = s.abs().to_string().len() as i64 - digits as i64;
    format_sci(&s, e + carry, true)
}

/// Longest decimal prefix shared by both endpoints after truncation toward
/// zero. The returned string names the set of reals with that prefix, which
/// contains the whole interval.
fn common_prefix(iv: &RealInterval) -> Option<String> {
    let (lo, hi) = (iv.lo(), iv.hi());
    if lo.is_zero() && hi.is_zero() {
        return Some("0".to_string());
    }
    if lo.signum() != hi.signum() || lo.is_zero() || hi.is_zero() {
        return None;
    }
    if too_wide_for_decimal(lo) || too_wide_for_decimal(hi) {
        return None;
    }
    let (rl, rh) = (lo.to_rational(), hi.to_rational());
    let e = decimal_exponent(&rl);
    if decimal_exponent(&rh) != e {
        return None;
    }
    let toward_zero = |r: &BigRational, d: usize| {
        let s = scaled_digits(&r.abs(), e, d, Round::Down);
        if r.is_negative() {
            -s
        } else {
            s
        }
    };
    let mut best = None;
    for d in 1..=40 {
        if rl == rh {
            let s = toward_zero(&rl, d);
            if BigRational::from_integer(s.clone()) * pow10_rat(e + 1 - d as i64) == rl {
                // exact terminating decimal
                return Some(format_sci(&s, e, true));
            }
        }
        let a = toward_zero(&rl, d);
        let b = toward_zero(&rh, d);
        if a != b {
            break;
        }
        best = Some(a);
    }
    best.map(|s| {
        let mut txt = format_sci(&s, e, false);
        if !txt.contains('e') {
            txt.push_str("...");
        } else {
            let pos = txt.find('e').unwrap();
            txt.insert_str(pos, "...");
        }
        txt
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integers_and_fractions() {
        let d = render_decimal(&RealInterval::from_int(1024, 64));
        assert_eq!(d.lo, "1.024e3");
        assert_eq!(d.hi, "1.024e3");
        let third = RealInterval::from_rational(&BigRational::new(1.into(), 3.into()), 64);
        let d = render_decimal(&third);
        assert_eq!(d.lo, "3.3333333333333333e-1");
        assert_eq!(d.hi, "3.3333333333333334e-1");
        assert!(d.text.starts_with("3.33333333333333"));
    }

    #[test]
    fn negative_endpoints_round_outward() {
        let iv = RealInterval::from_rational(&BigRational::new((-2).into(), 3.into()), 64);
        let d = render_decimal(&iv);
        assert_eq!(d.lo, "-6.6666666666666667e-1");
        assert_eq!(d.hi, "-6.6666666666666666e-1");
    }

    #[test]
    fn straddling_zero_is_bracketed() {
        let iv = RealInterval::new(BigFloat::from_int(-1, 8), BigFloat::from_int(2, 8));
        assert_eq!(render_decimal(&iv).text, "[-1, 2]");
    }

    #[test]
    fn carry_into_new_digit() {
        let iv = RealInterval::from_rational(&BigRational::new(99999999999999999999i128.into(), 1.into()), 128);
        let d = render_decimal(&iv);
        assert_eq!(d.hi, "1e20");
    }

    #[test]
    fn prefix_keeps_zero_digits() {
        let r = BigRational::new(1_000_000_001.into(), 10_000_000_000u64.into());
        let d = render_decimal(&RealInterval::from_rational(&r, 64));
        assert!(d.text.starts_with("1.00000000"), "{}", d.text);
        assert_eq!(render_decimal(&RealInterval::from_int(1, 64)).text, "1");
    }
}
