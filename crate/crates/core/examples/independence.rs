//! Multiplicative independence of rationals and the absorption threshold.

use num_rational::BigRational;
use pillai::diophantine::{lemma_ineq_threshold, mult_indep_int, mult_indep_rational, rational_param};

fn main() {
    for (a, b) in [(2, 3), (4, 8), (6, 36), (12, 18)] {
        println!("{a}, {b}: {:?}", mult_indep_int(a, b).unwrap());
    }
    let r = |p: i64, q: i64| BigRational::new(p.into(), q.into());
    println!("9/4, 27/8: {:?}", mult_indep_rational(&r(9, 4), &r(27, 8)).unwrap());

    for (k, c, d) in [(1, 1, 0), (1, 2, 1), (2, 1, 2)] {
        let n = lemma_ineq_threshold(&rational_param(k, 1), &rational_param(c, 1), &rational_param(d, 1)).unwrap();
        println!("threshold for k={k}, c={c}, d={d}: N = {n}");
    }
}
