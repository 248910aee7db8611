use num_bigint::BigInt;
use num_rational::BigRational;

use super::*;
use crate::counting::PowerSumSide;
use crate::heights::{make_params, waldschmidt_bound, BoundFactors, LogTerm, WaldschmidtParams};
use crate::rexpr::{parse_complex, AlgebraicNumber};

/// Left side `e^n + (sqrt 5)^n` and right side `7^m + pi^m`.
pub fn four_power_sides() -> (PowerSumSide, PowerSumSide) {
    let p = |s: &str| parse_complex(s).expect("fixed expression");
    let l = PowerSumSide::new(vec![p("e"), p("algebraic(x^2-5; 2, 3)")]).expect("e dominates sqrt 5");
    let r = PowerSumSide::new(vec![p("7"), p("pi")]).expect("7 dominates pi");
    (l, r)
}

/// The linear-forms instance for `n - m log 7` with `n <= 2m`.
#[derive(Clone, Debug)]
pub struct FourPowerForm {
    pub params: WaldschmidtParams,
    pub factors: BoundFactors,
    /// Lower bound for `log|n - m log 7|`.
    pub bound: RealInterval,
}

/// Parameters `t = 1`, `D = 1`, `alpha_1 = 7`, `beta_0 = n`, `beta_1 = -m`
/// with `B = 2m`; valid for `m >= 3`.
pub fn four_power_linear_form(m: u64) -> Result<FourPowerForm, EffectiveError> {
    if m < 3 {
        return Err(EffectiveError::InvalidParams("B = 2m needs m >= 3".into()));
    }
    let seven = iv(7);
    let term = LogTerm { alpha: AlgebraicNumber::from_int(7), abs_log: ln(&seven) };
    let mm = iv(m as i64);
    // e^h(beta_0) = n <= 2m and e^h(beta_1) = m hold exactly, so they are
    // folded into the choice B = 2m rather than passed as enclosed heights
    let params = make_params(&[term], &[], 1, PREC)?;
    let params = params
        .with_b(mm.mul_pow2(1), "2m")
        .ok_or_else(|| EffectiveError::InvalidParams("2m does not dominate the minimal B".into()))?;
    let bound = waldschmidt_bound(&params);
    Ok(FourPowerForm { factors: params.factors(), params, bound })
}

/// Window for `|e^n + (sqrt 5)^n - 7^m - pi^m| <= x`, `x >= 3`.
pub fn window_four_power(x: &RealExpr) -> Result<EffectiveWindow, EffectiveError> {
    let xv = eval(x)?;
    if !iv(3).cert_le(&xv) && !(xv == iv(3)) {
        return Err(EffectiveError::InvalidParams("x must be at least 3".into()));
    }
    let mut w = EffectiveWindow::new("four-power", true);
    let e = elementary::euler_e(PREC);
    let pi = elementary::pi(PREC);
    let l7 = ln(&iv(7));
    let lx = ln(&xv);
    let (ln2, ln8) = (ln(&iv(2)), ln(&iv(8)));
    let six_x = xv.mul(&iv(6));
    let l6x = ln(&six_x);
    let s5 = iv(5).sqrt().expect("positive");

    // decay rates of the subdominant terms in each branch
    let rho1 = div(&s5, &e);
    let rho2 = ex(&div(&ln(&div(&pi, &iv(7))), &l7));
    let rho3 = ex(&div(&ln(&pi), &l7).sub(&iv(1)));
    let rho = rho1.max_with(&rho2).max_with(&rho3);
    let rho_ref = RealInterval::from_rational(&BigRational::new(83.into(), 100.into()), PREC);
    w.constant("sqrt5/e", &rho1);
    w.constant("(pi/7)^(1/log 7)", &rho2);
    w.constant("pi^(1/log 7)/e", &rho3);
    w.step("rho <= 0.83", "all subdominant ratios are below 0.83", &rho, &rho_ref)?;
    let l_rho = ln(&rho).neg();

    // linear-forms constant: log|n - m log 7| >= -C_W log B
    let form = four_power_linear_form(100)?;
    let c_w = up(&div(&form.bound.neg(), &ln(&iv(200))));
    w.constant("C_W = 2^26 e log 7", &c_w);
    let ref_cw = RealInterval::from_bigint(&(BigInt::from(1) << 26), PREC).mul(&e).mul(&l7);
    w.step("C_W matches 2^26 e log 7", "t = 1, D = 1, log E = 1, log A_1 = e log 7", &ref_cw, &c_w)?;

    // small-n cutoff where 4 rho^n >= 1/2
    let ns = floor_hi(&div(&ln8, &l_rho));
    w.thresholds.insert("n with 4 rho^n >= 1/2".into(), ns.clone());
    let m_from_n = |n: &BigInt| -> BigInt {
        // 7^m <= R(m) <= L(n) + x <= 2 e^n + x
        floor_hi(&div(&ln(&ex(&big(n)).mul_pow2(1).add(&xv)), &l7))
    };

    // Branch A: e^n <= 7^m, so n <= m log 7 <= 2m
    let a1_small = floor_hi(&div(&l6x, &l7));
    let a1 = absorb(&div(&iv(1), &l7), &div(&c_w, &l7), &div(&c_w.mul(&ln2), &l7), &l6x)?;
    let a2_small = m_from_n(&ns);
    let a2c = div(&c_w, &l_rho.mul(&l7));
    let a2d = div(&ln2.mul_pow2(1).add(&div(&ln8.add(&c_w.mul(&ln2)), &l_rho)), &l7);
    let a2 = absorb(&div(&iv(1), &l7), &a2c, &a2d, &lx)?;
    let a2_direct = floor_hi(&div(&lx.add(&ln2), &l7));
    w.thresholds.insert("A case 1 absorption N".into(), a1.threshold.clone());
    w.thresholds.insert("A case 2 absorption N".into(), a2.threshold.clone());
    let m_a = max_big([&BigInt::from(2), &a1_small, &a1.bound, &a2_small, &a2.bound, &a2_direct]);
    let n_a = floor_hi(&big(&m_a).mul(&l7));

    // Branch B: e^n > 7^m, so m < n / log 7; the linear form uses B = n (n >= 6)
    let b1_small = floor_hi(&l6x);
    let b1 = absorb(&iv(1), &c_w, &RealInterval::zero(PREC), &l6x)?;
    let b2 = absorb(&iv(1), &div(&c_w, &l_rho), &div(&ln8, &l_rho), &iv(2))?;
    w.thresholds.insert("B case 1 absorption N".into(), b1.threshold.clone());
    w.thresholds.insert("B case 2 absorption N".into(), b2.threshold.clone());
    let n_b = max_big([&BigInt::from(5), &b1_small, &b1.bound, &ns, &b2.bound]);
    let m_b = floor_hi(&div(&big(&n_b), &l7));

    w.raw_m_max = m_a.max(m_b);
    w.raw_n_max = n_a.max(n_b);

    // every solution has |m log 7 - n| >= |q_k log 7 - p_k| once m < q_(k+1)
    let xi = RealExpr::int(7).log();
    let nb_small = max_big([&BigInt::from(5), &b1_small, &ns]);
    let small_m = max_big([&BigInt::from(2), &a1_small, &a2_small, &floor_hi(&div(&big(&nb_small), &l7))]);
    let next = |delta: &RealInterval| -> Result<BigInt, EffectiveError> {
        let a1 = exp_decay_bound(&six_x, delta, &l7);
        let na2 = exp_decay_bound(&iv(8), delta, &l_rho);
        let a2 = m_from_n(&na2);
        let nb1 = exp_decay_bound(&six_x, delta, &iv(1));
        let nb = nb1.max(na2);
        let b = floor_hi(&div(&big(&nb), &l7));
        Ok(max_big([&small_m, &a1, &a2, &b]))
    };
    let m_final = match reduce(&xi, &w.raw_m_max, next) {
        Ok((b, rounds)) => {
            w.reduction = rounds;
            b
        }
        Err(err) => {
            w.notes.push(format!("reduction skipped: {err}"));
            w.raw_m_max.clone()
        }
    };
    // e^n <= L(n) <= R(m) + x <= 2 * 7^m + x covers both branches
    let n_final = floor_hi(&ln(&iv(7).pow_int(m_final.to_i64().unwrap_or(i64::MAX)).expect("positive").mul_pow2(1).add(&xv)));
    w.m_max = m_final;
    w.n_max = n_final;
    w.leading_term = Some(div(&lx.sqr(), &l7));
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpcert::BigFloat;
    use num_traits::ToPrimitive;

    #[test]
    fn linear_form_constant() {
        let f = four_power_linear_form(100).unwrap();
        assert_eq!(f.factors.pow2, 26);
        assert_eq!(f.params.d, 1);
        assert_eq!(f.params.log_e, iv(1));
        let expect = RealInterval::from_bigint(&(BigInt::from(1) << 26), PREC)
            .mul(&elementary::euler_e(PREC))
            .mul(&ln(&iv(7)))
            .mul(&ln(&iv(200)))
            .neg();
        assert!(f.bound.intersect(&expect).is_some());
        assert!(f.bound.width() < BigFloat::pow2(-70, 8));
        assert!(four_power_linear_form(2).is_err());
    }

    #[test]
    fn window_for_a_million() {
        let w = window_four_power(&crate::rexpr::parse_real("10^6").unwrap()).unwrap();
        assert!(w.replay_all());
        let (n, m) = w.window_u64().unwrap();
        assert!(m as f64 >= 6.0 * 10f64.ln() / 7f64.ln());
        assert!(n as f64 >= 6.0 * 10f64.ln());
        assert!(n < 200 && m < 100, "{n} {m}");
        assert!(w.raw_m_max > BigInt::from(10u64).pow(12));
        let lead = w.leading_term.unwrap().to_f64();
        assert!((lead - 98.09).abs() < 0.01);
        assert!(w.raw_n_max.to_f64().unwrap() > n as f64);
    }
}
