//! Effective search windows for `|2^n - e^m|` and `|e^n - e^(sqrt2 m)|`,
//! followed by a count inside each window.

use pillai::counting::{count, PowerSumSide};
use pillai::effective::{window_alg_exp, window_two_exp, EffectiveWindow};
use pillai::rexpr::parse_real;

fn show(w: &EffectiveWindow) {
    println!("{}: raw window ({}, {}) reduced to ({}, {})", w.kind, w.raw_n_max, w.raw_m_max, w.n_max, w.m_max);
    for s in &w.derivation {
        println!("  {:<12} {}", s.name, s.claim);
    }
    for r in &w.reduction {
        println!("  reduction k={} q_k={} : {} -> {}", r.k, r.q_k, r.bound_before, r.bound_after);
    }
}

fn main() {
    let alg = |s: &str| parse_real(s).unwrap().as_algebraic().unwrap();
    let x = parse_real("10^4").unwrap();

    let w = window_alg_exp(&alg("2"), &alg("1"), &x).unwrap();
    show(&w);
    let (n, m) = w.window_u64().unwrap();
    let l = PowerSumSide::parse(&["2"]).unwrap();
    let r = PowerSumSide::parse(&["exp(1)"]).unwrap();
    println!("  solutions: {}\n", count(&l, &r, &x, n, m).unwrap().count_in);

    let w = window_two_exp(&alg("1"), &alg("algebraic(x^2-2; 1, 2)"), &x).unwrap();
    show(&w);
    let (n, m) = w.window_u64().unwrap();
    let l = PowerSumSide::parse(&["exp(1)"]).unwrap();
    let r = PowerSumSide::parse(&["exp(sqrt(2))"]).unwrap();
    println!("  solutions: {}", count(&l, &r, &x, n, m).unwrap().count_in);
}
