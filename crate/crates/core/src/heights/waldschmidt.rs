use num_bigint::BigInt;
use serde::Serialize;

use super::{log_height, HeightError};
use crate::mpcert::{elementary, render_decimal, CmpResult, DecimalEnclosure, RealInterval};
use crate::rexpr::AlgebraicNumber;

/// One `alpha_j` with the modulus of the chosen determination of its log.
#[derive(Clone, Debug)]
pub struct LogTerm {
    pub alpha: AlgebraicNumber,
    pub abs_log: RealInterval,
}

/// Raw quantities behind each parameter and the constraint that fixed it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamProvenance {
    pub heights: Vec<RealInterval>,
    pub abs_logs: Vec<RealInterval>,
    pub beta_heights: Vec<RealInterval>,
    pub log_a_binding: Vec<String>,
    pub log_e_binding: String,
    pub b_binding: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WaldschmidtParams {
    pub t: u32,
    pub d: u64,
    pub log_a: Vec<RealInterval>,
    pub log_e: RealInterval,
    pub b: RealInterval,
    pub provenance: ParamProvenance,
}

/// The bound split into its factors so callers can compare them one by one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundFactors {
    /// exponent of 2, `t + 25`
    pub pow2: u32,
    pub t: u32,
    /// exponent of t, `3t + 9`
    pub t_exp: u32,
    pub d: u64,
    /// exponent of D, `t + 2`
    pub d_exp: u32,
    pub log_a: Vec<DecimalEnclosure>,
    pub log_b: DecimalEnclosure,
    pub log_e: DecimalEnclosure,
}

/// Interval maximum plus the label of the certified winner ("tie" if no
/// candidate dominates the others).
fn labelled_max(cands: &[(&str, RealInterval)]) -> (RealInterval, String) {
    let mut acc = cands[0].1.clone();
    for (_, v) in &cands[1..] {
        acc = acc.max_with(v);
    }
    let winner = cands.iter().find(|(_, v)| {
        cands.iter().all(|(_, w)| std::ptr::eq(v, w) || matches!(v.cmp_cert(w), CmpResult::CertGreater) || v == w)
    });
    (acc, winner.map(|(l, _)| l.to_string()).unwrap_or_else(|| "tie".into()))
}

/// Minimal admissible parameters: `log E = max(1/D, log D)`,
/// `log A_j = max(h(alpha_j), (e/D)|log alpha_j|, 1/D)` and
/// `B = max(E, D log A_j, e^h(beta_j))`.
pub fn make_params(
    alphas: &[LogTerm],
    beta_heights: &[RealInterval],
    d: u64,
    prec: u32,
) -> Result<WaldschmidtParams, HeightError> {
    assert!(d >= 1 && !alphas.is_empty(), "need D >= 1 and t >= 1");
    let dd = RealInterval::from_int(d as i64, prec);
    let inv_d = RealInterval::from_int(1, prec).div(&dd).expect("D >= 1");
    let e = elementary::euler_e(prec);

    let log_d = elementary::log(&dd).expect("D >= 1");
    let (log_e, log_e_binding) = labelled_max(&[("e^(1/D)", inv_d.clone()), ("D", log_d)]);
    let big_e = elementary::exp(&log_e).expect("moderate exponent");

    let mut heights = Vec::new();
    let mut log_a = Vec::new();
    let mut log_a_binding = Vec::new();
    for term in alphas {
        let h = log_height(&term.alpha, prec)?;
        let scaled = e.mul(&term.abs_log).div(&dd).expect("D >= 1");
        let (la, which) = labelled_max(&[("h(alpha)", h.clone()), ("(e/D)|log alpha|", scaled), ("1/D", inv_d.clone())]);
        heights.push(h);
        log_a.push(la);
        log_a_binding.push(which);
    }

    let mut cands: Vec<(String, RealInterval)> = vec![("E".into(), big_e)];
    for (j, la) in log_a.iter().enumerate() {
        cands.push((format!("D log A_{}", j + 1), dd.mul(la)));
    }
    for (j, hb) in beta_heights.iter().enumerate() {
        cands.push((format!("e^h(beta_{j})"), elementary::exp(hb).expect("moderate height")));
    }
    let refs: Vec<(&str, RealInterval)> = cands.iter().map(|(l, v)| (l.as_str(), v.clone())).collect();
    let (b, b_binding) = labelled_max(&refs);

    Ok(WaldschmidtParams {
        t: alphas.len() as u32,
        d,
        log_a,
        log_e,
        b,
        provenance: ParamProvenance {
            heights,
            abs_logs: alphas.iter().map(|a| a.abs_log.clone()).collect(),
            beta_heights: beta_heights.to_vec(),
            log_a_binding,
            log_e_binding,
            b_binding,
        },
    })
}

impl WaldschmidtParams {
    /// Replace B by a caller-chosen larger value. Refused unless the new value
    /// certifiably dominates the minimal one.
    pub fn with_b(mut self, b: RealInterval, label: &str) -> Option<Self> {
        if !self.b.cert_le(&b) {
            return None;
        }
        self.b = b;
        self.provenance.b_binding = label.to_string();
        Some(self)
    }

    pub fn log_b(&self) -> RealInterval {
        elementary::log(&self.b).expect("B >= e > 0")
    }

    /// `2^(t+25) t^(3t+9) D^(t+2)` as an exact integer.
    pub fn integer_factor(&self) -> BigInt {
        let t = self.t;
        (BigInt::from(1) << (t + 25)) * num_traits::pow(BigInt::from(t), (3 * t + 9) as usize)
            * num_traits::pow(BigInt::from(self.d), (t + 2) as usize)
    }

    pub fn factors(&self) -> BoundFactors {
        BoundFactors {
            pow2: self.t + 25,
            t: self.t,
            t_exp: 3 * self.t + 9,
            d: self.d,
            d_exp: self.t + 2,
            log_a: self.log_a.iter().map(render_decimal).collect(),
            log_b: render_decimal(&self.log_b()),
            log_e: render_decimal(&self.log_e),
        }
    }
}

/// `-2^(t+25) t^(3t+9) D^(t+2) log A_1 ... log A_t log B log E`.
pub fn waldschmidt_bound(p: &WaldschmidtParams) -> RealInterval {
    let prec = p.log_e.prec().max(p.b.prec());
    let mut acc = RealInterval::from_bigint(&p.integer_factor(), prec);
    for la in &p.log_a {
        acc = acc.mul(la);
    }
    acc.mul(&p.log_b()).mul(&p.log_e).neg()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpcert::BigFloat;

    fn iv(v: i64) -> RealInterval {
        RealInterval::from_int(v, 128)
    }

    fn log_int(k: i64) -> RealInterval {
        elementary::log(&iv(k)).unwrap()
    }

    #[test]
    fn seven_with_linear_betas() {
        let m = 100;
        let term = LogTerm { alpha: AlgebraicNumber::from_int(7), abs_log: log_int(7) };
        let p = make_params(&[term], &[log_int(2 * m), log_int(m)], 1, 128).unwrap();
        let e = elementary::euler_e(128);
        let ela = e.mul(&log_int(7));
        assert!(p.log_a[0].contains_interval(&ela) || ela.contains_interval(&p.log_a[0]));
        assert_eq!(p.provenance.log_a_binding[0], "(e/D)|log alpha|");
        assert_eq!(p.log_e, iv(1));
        assert!(p.b.contains(&BigFloat::from_int(200, 8)));
        assert_eq!(p.provenance.b_binding, "e^h(beta_0)");
        let bound = waldschmidt_bound(&p);
        let expect = -(2f64.powi(26)) * std::f64::consts::E * 7f64.ln() * 200f64.ln();
        assert!((bound.to_f64() / expect - 1.0).abs() < 1e-14);
    }

    #[test]
    fn minus_one_with_pi_log() {
        let d = 2;
        let pi = elementary::pi(128);
        let term = LogTerm { alpha: AlgebraicNumber::from_int(-1), abs_log: pi.clone() };
        let p = make_params(&[term], &[], d, 128).unwrap();
        let expect = elementary::euler_e(128).mul(&pi).div(&iv(2)).unwrap();
        assert!((p.log_a[0].to_f64() - expect.to_f64()).abs() < 1e-15);
        assert!((p.log_a[0].to_f64() - 4.2699).abs() < 1e-4);
    }

    #[test]
    fn two_with_trivial_betas() {
        let term = LogTerm { alpha: AlgebraicNumber::from_int(2), abs_log: log_int(2) };
        let p = make_params(&[term], &[RealInterval::zero(128), RealInterval::zero(128)], 1, 128).unwrap();
        assert!((p.log_a[0].to_f64() - std::f64::consts::E * 2f64.ln()).abs() < 1e-15);
        assert!((p.b.to_f64() - std::f64::consts::E).abs() < 1e-15);
        assert_eq!(p.provenance.b_binding, "E");
    }

    #[test]
    fn unit_factors_give_two_to_the_26() {
        let p = WaldschmidtParams {
            t: 1,
            d: 1,
            log_a: vec![iv(1)],
            log_e: iv(1),
            b: elementary::euler_e(128),
            provenance: ParamProvenance {
                heights: vec![],
                abs_logs: vec![],
                beta_heights: vec![],
                log_a_binding: vec![],
                log_e_binding: String::new(),
                b_binding: String::new(),
            },
        };
        let v = waldschmidt_bound(&p);
        assert!(v.contains(&BigFloat::from_int(-(1 << 26), 8)));
        assert!(v.width() < BigFloat::pow2(-60, 8));
    }

    #[test]
    fn doubling_log_b_doubles_the_bound() {
        let term = LogTerm { alpha: AlgebraicNumber::from_int(3), abs_log: log_int(3) };
        let p = make_params(&[term], &[log_int(50)], 1, 128).unwrap();
        let b2 = p.b.sqr();
        let q = p.clone().with_b(b2, "B^2").unwrap();
        let ratio = waldschmidt_bound(&q).div(&waldschmidt_bound(&p)).unwrap();
        assert!(ratio.contains(&BigFloat::from_int(2, 8)));
        assert!(p.clone().with_b(iv(1), "too small").is_none());
    }
}
