//! Certified tiny values of `|alpha^n - 2^m|` for the Liouville-type alpha.

use pillai::liouville::{certify_counterexample, MAX_ORDER};

fn main() {
    for k in 0..=MAX_ORDER {
        let c = certify_counterexample(k).unwrap();
        let r = c.report();
        println!("k = {k}: n = {}, m = {}", r.n, r.m);
        println!("  log10|alpha^n - 2^m| = {} ({}), bound holds: {}", r.log10.text, r.verdict, r.stated_bound_dominates);
    }
}
