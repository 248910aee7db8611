use num_bigint::BigInt;
use num_integer::Integer;

use super::*;
use crate::heights::{log_height, make_params, LogTerm};
use crate::rexpr::AlgebraicNumber;

/// `[Q(a, b) : Q]` when it can be determined from the degrees alone: one side
/// rational, or coprime degrees (the compositum degree is divisible by both
/// and at most their product).
fn field_degree(a: &AlgebraicNumber, b: &AlgebraicNumber) -> Result<u64, EffectiveError> {
    if a.isolation_only() || b.isolation_only() {
        return Err(EffectiveError::IsolationOnlyInput);
    }
    let (da, db) = (a.degree() as u64, b.degree() as u64);
    if da == 1 || db == 1 || da.gcd(&db) == 1 {
        Ok(da * db)
    } else {
        Err(EffectiveError::Unsupported(format!("degree of Q(a, b) with deg a = {da}, deg b = {db} sharing a factor")))
    }
}

fn real_value(a: &AlgebraicNumber, what: &str) -> Result<RealInterval, EffectiveError> {
    a.enclose_real(PREC).ok_or_else(|| EffectiveError::Unsupported(format!("{what} must be real")))
}

/// `max` over labelled candidates, rounded up, with the binding label.
fn labelled_max_up(cands: &[(&str, RealInterval)]) -> (RealInterval, String) {
    let mut best = 0;
    for (i, (_, v)) in cands.iter().enumerate() {
        if v.hi() > cands[best].1.hi() {
            best = i;
        }
    }
    (up(&cands[best].1), cands[best].0.to_string())
}

fn two_pow_26() -> RealInterval {
    RealInterval::from_bigint(&(BigInt::from(1) << 26), PREC)
}

fn check_x(x: &RealExpr) -> Result<RealInterval, EffectiveError> {
    let xv = eval(x)?;
    if !elementary::euler_e(PREC).cert_lt(&xv) {
        return Err(EffectiveError::InvalidParams("x must exceed e".into()));
    }
    Ok(xv)
}

/// Window for `|alpha^n - (e^gamma)^m| <= x` with real algebraic `|alpha| > 1`
/// and real algebraic `gamma > 0`.
pub fn window_alg_exp(alpha: &AlgebraicNumber, gamma: &AlgebraicNumber, x: &RealExpr) -> Result<EffectiveWindow, EffectiveError> {
    let mut w = EffectiveWindow::new("alg-exp", true);
    let a_signed = real_value(alpha, "alpha")?;
    let a = a_signed.abs();
    let g = real_value(gamma, "gamma")?;
    if !iv(1).cert_lt(&a) {
        return Err(EffectiveError::InvalidParams("|alpha| must exceed 1".into()));
    }
    if !g.is_positive() {
        return Err(EffectiveError::InvalidParams("gamma must be positive".into()));
    }
    let xv = check_x(x)?;
    let d = field_degree(alpha, gamma)?;
    let (la, lx) = (ln(&a), ln(&xv));
    let (ln2, ln3) = (ln(&iv(2)), ln(&iv(3)));
    let h_g = log_height(gamma, PREC)?;
    w.constant("log|alpha|", &la);
    w.constant("gamma", &g);
    w.constant("h(gamma)", &h_g);
    w.constant("D", &iv(d as i64));

    // Case 1: alpha^n <= 2x
    let n1 = floor_hi(&div(&lx.add(&ln2), &la));
    let m1 = floor_hi(&div(&ln(&xv.mul(&iv(3))), &g));
    w.thresholds.insert("case1 n".into(), n1.clone());
    w.thresholds.insert("case1 m".into(), m1.clone());

    // Case 2: m < n log|alpha|/gamma + log 3/gamma <= C1 n
    let c1 = up(&div(&la.add(&ln3), &g));
    w.constant("C1", &c1);
    let params = make_params(&[LogTerm { alpha: alpha.clone(), abs_log: la.clone() }], &[], d, PREC)?;
    let log_a1 = params.log_a[0].clone();
    let log_e = params.log_e.clone();
    let big_e = ex(&log_e);
    let dd = iv(d as i64);
    let d_log_a = dd.mul(&log_a1);
    let eh_c1 = ex(&h_g).mul(&c1);
    let (c2, binding) = labelled_max_up(&[
        ("e^h(gamma) C1", eh_c1.clone()),
        ("E", big_e.clone()),
        ("D log A_1", d_log_a.clone()),
        ("1", iv(1)),
    ]);
    w.constant("log A_1", &log_a1);
    w.constant("log E", &log_e);
    w.constant("C2", &c2);
    w.notes.push(format!("C2 bound by {binding}"));
    w.step("C2 >= e^h(gamma) C1", "B = C2 n dominates e^h(beta_0)", &eh_c1, &c2)?;
    w.step("C2 >= E", "B dominates E for n >= 1", &big_e, &c2)?;
    w.step("C2 >= D log A_1", "B dominates D log A_1 for n >= 1", &d_log_a, &c2)?;
    let c3 = up(&two_pow_26().mul(&dd.pow_int(3).expect("D >= 1")).mul(&log_a1).mul(&log_e));
    w.constant("C3", &c3);
    let c4 = up(&c3.mul(&ln(&c2).add(&iv(1))));
    w.constant("C4", &c4);
    let at3 = div(&c3.mul(&ln(&c2).add(&ln3)), &ln3);
    w.step("C4 >= C3 (log C2 + log n)/log n", "checked at n = 3; the ratio decreases in n", &at3, &c4)?;

    // n <= log x/log a + (C4/log a) log n + log 2/log a, for n >= 3
    let k = div(&iv(1), &la);
    let c = div(&c4, &la);
    let dcoef = div(&ln2, &la);
    let ab = absorb(&k, &c, &dcoef, &lx)?;
    w.thresholds.insert("N (absorption)".into(), ab.threshold.clone());
    w.constant("absorbed n bound", &ab.conclusion);
    let n2_raw = ab.bound.max(BigInt::from(2));
    let m_from = |n: &BigInt| floor_hi(&div(&big(n).mul(&la).add(&ln3), &g));
    w.raw_n_max = n1.clone().max(n2_raw.clone());
    w.raw_m_max = m1.clone().max(m_from(&n2_raw));

    // |n (log|a|/gamma) - m| <= 2x/(gamma |a|^n)
    let log_abs = if a_signed.is_negative() { RealExpr::root(alpha.clone()).neg() } else { RealExpr::root(alpha.clone()) };
    let xi = log_abs.log().div(RealExpr::root(gamma.clone()));
    let amp = div(&xv.mul_pow2(1), &g);
    let n2 = match reduce(&xi, &n2_raw, |delta| Ok(exp_decay_bound(&amp, delta, &la))) {
        Ok((b, rounds)) => {
            w.reduction = rounds;
            b.max(BigInt::from(2))
        }
        Err(e) => {
            w.notes.push(format!("reduction skipped: {e}"));
            n2_raw
        }
    };
    w.n_max = n1.max(n2.clone());
    w.m_max = m1.max(m_from(&n2));
    w.leading_term = Some(div(&lx.sqr(), &la.mul(&g)));
    Ok(w)
}

struct OneSide {
    case1: BigInt,
    raw: BigInt,
    reduced: BigInt,
}

/// The bound on the exponent of `e^g` in `|e^(g n) - e^(h m)| <= x`; the
/// other exponent is bounded by calling this again with the roles swapped.
#[allow(clippy::too_many_arguments)]
fn two_exp_side(
    w: &mut EffectiveWindow,
    tag: &str,
    g_num: &AlgebraicNumber,
    h_num: &AlgebraicNumber,
    g: &RealInterval,
    h: &RealInterval,
    xv: &RealInterval,
    d: u64,
) -> Result<OneSide, EffectiveError> {
    let lx = ln(xv);
    let (ln2, ln3) = (ln(&iv(2)), ln(&iv(3)));
    let pi = elementary::pi(PREC);
    let case1 = floor_hi(&div(&lx.add(&ln2), g));
    w.thresholds.insert(format!("{tag} case1"), case1.clone());

    // other exponent <= C5 * this exponent
    let c5 = up(&div(&g.add(&ln3), h));
    // |k| <= C6 max(n, m) <= C7 n; imaginary parts vanish for real inputs
    let c6 = up(&div(&pi, &pi.mul_pow2(1)));
    let c7 = up(&c6.mul(&c5.max_with(&iv(1))));
    let hg = log_height(g_num, PREC)?;
    let hh = log_height(h_num, PREC)?;
    let zero = RealInterval::zero(PREC);
    let c8 = up(&hg.add(&hh).add(&ln2).add(&ln(&c5).max_with(&zero)).add(&iv(2)));
    let c9 = up(&ln2.add(&ln(&c7).max_with(&zero)).add(&iv(1)));

    let minus_one = AlgebraicNumber::from_int(-1);
    let params = make_params(&[LogTerm { alpha: minus_one, abs_log: pi.clone() }], &[], d, PREC)?;
    let log_a1 = params.log_a[0].clone();
    let log_e = params.log_e.clone();
    let dd = iv(d as i64);
    let c10_cands = [
        ("C8", c8.clone()),
        ("C9", c9.clone()),
        ("log E / log 3", div(&log_e, &ln3)),
        ("log(D log A_1) / log 3", div(&ln(&dd.mul(&log_a1)).max_with(&zero), &ln3)),
        ("1", iv(1)),
    ];
    let (c10_raw, binding) = labelled_max_up(&c10_cands);
    let c10 = big(&c10_raw.hi().ceil());
    for (name, v) in &c10_cands {
        w.step(&format!("{tag}: C10 >= {name}"), "B = n^C10 dominates for n >= 3", v, &c10)?;
    }
    let c11 = up(&two_pow_26().mul(&dd.pow_int(3).expect("D >= 1")).mul(&log_a1).mul(&log_e));
    let c12 = up(&c11.mul(&c10));
    for (name, v) in [("C5", &c5), ("C6", &c6), ("C7", &c7), ("C8", &c8), ("C9", &c9), ("C10", &c10), ("C11", &c11), ("C12", &c12)] {
        w.constant(&format!("{tag} {name}"), v);
    }
    w.constant(&format!("{tag} log A_1"), &log_a1);
    w.notes.push(format!("{tag}: C10 bound by {binding}"));

    let k = div(&iv(1), g);
    let c = div(&c12, g);
    let dc = div(&ln2, g);
    let ab = absorb(&k, &c, &dc, &lx)?;
    w.thresholds.insert(format!("{tag} N (absorption)"), ab.threshold.clone());
    let raw = ab.bound.max(BigInt::from(2));

    // |n (g/h) - m| <= 2x/(h e^(g n))
    let xi = RealExpr::root(g_num.clone()).div(RealExpr::root(h_num.clone()));
    let amp = div(&xv.mul_pow2(1), h);
    let reduced = match reduce(&xi, &raw, |delta| Ok(exp_decay_bound(&amp, delta, g))) {
        Ok((b, rounds)) => {
            w.reduction.extend(rounds);
            b.max(BigInt::from(2))
        }
        Err(e) => {
            w.notes.push(format!("{tag}: reduction skipped: {e}"));
            raw.clone()
        }
    };
    Ok(OneSide { case1, raw, reduced })
}

/// Window for `|(e^gamma)^n - (e^delta)^m| <= x` with real algebraic
/// `gamma, delta > 0`, linearly independent over Q (assumed; equal inputs and
/// rational ratios are refused).
pub fn window_two_exp(gamma: &AlgebraicNumber, delta: &AlgebraicNumber, x: &RealExpr) -> Result<EffectiveWindow, EffectiveError> {
    if gamma == delta {
        return Err(EffectiveError::InvalidParams("gamma and delta are linearly dependent".into()));
    }
    let mut w = EffectiveWindow::new("two-exp", true);
    let g = real_value(gamma, "gamma")?;
    let h = real_value(delta, "delta")?;
    if !g.is_positive() || !h.is_positive() {
        return Err(EffectiveError::InvalidParams("gamma and delta must be positive".into()));
    }
    let xv = check_x(x)?;
    let d = field_degree(gamma, delta)?;
    w.constant("D", &iv(d as i64));
    w.notes.push("linear independence of gamma and delta over Q is assumed, not verified".into());
    let n = two_exp_side(&mut w, "n", gamma, delta, &g, &h, &xv, d)?;
    let m = two_exp_side(&mut w, "m", delta, gamma, &h, &g, &xv, d)?;
    w.raw_n_max = n.case1.clone().max(n.raw);
    w.raw_m_max = m.case1.clone().max(m.raw);
    w.n_max = n.case1.max(n.reduced);
    w.m_max = m.case1.max(m.reduced);
    let lx = ln(&xv);
    w.leading_term = Some(div(&lx.sqr(), &g.mul(&h)));
    Ok(w)
}

/// Heuristic window for `|alpha^n - beta^m| <= x` from a user-supplied
/// irrationality exponent `mu >= 2` and constant `c_const > 0` in
/// `|log a/log b - m/n| >= c_const / n^(mu + 0.1)`. Those inputs are not
/// computable in general, so the window is never certified.
pub fn window_metric(
    alpha: &RealExpr,
    beta: &RealExpr,
    x: &RealExpr,
    mu: &RealExpr,
    c_const: &RealExpr,
) -> Result<EffectiveWindow, EffectiveError> {
    let mu = eval(mu)?;
    let cc = eval(c_const)?;
    if !iv(2).cert_le(&mu) && !(mu == iv(2)) {
        return Err(EffectiveError::InvalidParams("mu must be at least 2".into()));
    }
    if !cc.is_positive() {
        return Err(EffectiveError::InvalidParams("c_const must be positive".into()));
    }
    let la = ln(&eval(alpha)?.abs());
    let lb = ln(&eval(beta)?.abs());
    if !la.is_positive() || !lb.is_positive() {
        return Err(EffectiveError::InvalidParams("|alpha| and |beta| must exceed 1".into()));
    }
    let xv = check_x(x)?;
    let lx = ln(&xv);
    let mut w = EffectiveWindow::new("metric", false);
    let nine_tenths = RealInterval::from_rational(&num_rational::BigRational::new(9.into(), 10.into()), PREC);
    let mut side = |tag: &str, la: &RealInterval, lb: &RealInterval| -> Result<BigInt, EffectiveError> {
        let ln2 = ln(&iv(2));
        let case1 = floor_hi(&div(&lx.add(&ln2), la));
        // a^n <= c~ x n^(mu - 0.9) with c~ = 2/(log b c_const)
        let c_tilde = div(&iv(2), &lb.mul(&cc));
        let c_hat = div(&ln(&c_tilde), la);
        let k = div(&iv(1), la);
        let c = div(&mu.sub(&nine_tenths), la);
        let ab = absorb(&k, &c, &c_hat, &lx)?;
        w.constant(&format!("{tag} c_hat"), &c_hat);
        w.thresholds.insert(format!("{tag} N (absorption)"), ab.threshold.clone());
        w.constant(&format!("{tag} absorbed bound"), &ab.conclusion);
        Ok(case1.max(ab.bound))
    };
    let n = side("n", &la, &lb)?;
    let m = side("m", &lb, &la)?;
    w.raw_n_max = n.clone();
    w.raw_m_max = m.clone();
    w.n_max = n;
    w.m_max = m;
    w.leading_term = Some(div(&lx.sqr(), &la.mul(&lb)));
    w.notes.push("heuristic: mu and c_const are caller inputs, not certified".into());
    Ok(w)
}
