mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use pillai::counting::{count, exact_double_loop, PowerSumSide};
use pillai::diophantine::{cf_rational, lemma_ineq_threshold, rational_param};
use pillai::mpcert::{elementary, RealInterval};
use pillai::rexpr::{parse_real, RealExpr};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

fn small_rat() -> impl Strategy<Value = BigRational> {
    (-1000i64..=1000, 1i64..=97).prop_map(|(p, q)| rat(p, q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn field_ops_contain_exact_result(a in small_rat(), b in small_rat(), prec in 16u32..200) {
        let (x, y) = (RealInterval::from_rational(&a, prec), RealInterval::from_rational(&b, prec));
        prop_assert!(x.add(&y).contains_rational(&(&a + &b)));
        prop_assert!(x.sub(&y).contains_rational(&(&a - &b)));
        prop_assert!(x.mul(&y).contains_rational(&(&a * &b)));
        if b != rat(0, 1) {
            prop_assert!(x.div(&y).unwrap().contains_rational(&(&a / &b)));
        }
        prop_assert!(x.sqr().contains_rational(&(&a * &a)));
    }

    #[test]
    fn integer_powers_contain_exact_result(a in small_rat(), k in 0i64..12, prec in 16u32..160) {
        let x = RealInterval::from_rational(&a, prec);
        prop_assert!(x.pow_int(k).unwrap().contains_rational(&num_traits::pow(a.clone(), k as usize)));
    }

    #[test]
    fn sqrt_squares_back(n in 1u64..1_000_000, prec in 32u32..256) {
        let r = RealInterval::from_int(n as i64, prec).sqrt().unwrap();
        // lo^2 <= n <= hi^2 with exact rational arithmetic
        let lo = r.lo().to_rational();
        let hi = r.hi().to_rational();
        let nn = BigRational::from_integer(BigInt::from(n));
        prop_assert!(&lo * &lo <= nn && nn <= &hi * &hi);
    }

    #[test]
    fn exp_log_agree_with_f64(v in -30.0f64..30.0) {
        let x = RealInterval::from_rational(&BigRational::from_float(v).unwrap(), 128);
        let e = elementary::exp(&x).unwrap();
        let f = v.exp();
        prop_assert!(e.lo().to_f64() <= f * (1.0 + 1e-14) && f * (1.0 - 1e-14) <= e.hi().to_f64());
        let lx = elementary::log(&e).unwrap();
        prop_assert!(lx.contains_rational(&BigRational::from_float(v).unwrap()));
    }

    #[test]
    fn random_expressions_nest(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = common::random_expr(&mut rng, 4);
        prop_assert!(common::check_nesting(&e, 64).is_ok(), "{}", common::check_nesting(&e, 64).unwrap_err());
    }

    #[test]
    fn cf_of_rationals_reconstructs(p in 1i64..1_000_000, q in 1i64..1_000_000) {
        let r = rat(p, q);
        let cf = cf_rational(&r, 64);
        prop_assert!(cf.terminated);
        let (pn, qn) = cf.convergents.last().unwrap();
        prop_assert_eq!(BigRational::new(pn.clone(), qn.clone()), r);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn count_matches_double_loop(a in 2i64..9, b in 2i64..9, x in 0i64..5000) {
        let l = PowerSumSide::parse(&[&a.to_string()]).unwrap();
        let r = PowerSumSide::parse(&[&b.to_string()]).unwrap();
        let rep = count(&l, &r, &RealExpr::int(x), 16, 16).unwrap();
        let oracle = exact_double_loop(&[rat(a, 1)], &[rat(b, 1)], &rat(x, 1), 16, 16);
        prop_assert_eq!(rep.in_pairs(), oracle);
        prop_assert!(rep.certified());
    }

    #[test]
    fn absorption_conclusion_holds(k in 1i64..=8, c in 1i64..=8, d in 0i64..=8) {
        let (kp, cp, dp) = (rational_param(k, 4), rational_param(c, 4), rational_param(d, 4));
        let n0 = lemma_ineq_threshold(&kp, &cp, &dp).unwrap();
        let n0: u64 = n0.try_into().unwrap();
        let (kf, cf, df) = (k as f64 / 4.0, c as f64 / 4.0, d as f64 / 4.0);
        for n in n0..n0 + 2000 {
            let nf = n as f64;
            let z = (nf - cf * nf.ln() - df) / kf;
            if z < 2.0 / kf {
                continue;
            }
            prop_assert!(nf <= kf * z + 2.0 * cf * z.ln() + 1e-9, "n = {n}, z = {z}");
        }
    }
}

#[test]
fn liouville_leaf_nests() {
    let e = RealExpr::LiouvilleC.mul(parse_real("log(2)").unwrap()).exp();
    assert!(common::check_nesting(&e, 64).unwrap());
}
