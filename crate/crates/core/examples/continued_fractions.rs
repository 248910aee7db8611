//! Certified continued fractions and irrationality-exponent estimates.

use pillai::diophantine::{cf_expand, mu_profile};
use pillai::rexpr::parse_real;

fn main() {
    for s in ["log(3)/log(2)", "pi", "sqrt(2)", "exp(1)"] {
        let cf = cf_expand(&parse_real(s).unwrap(), 12, 2048);
        let pq: Vec<String> = cf.partial_quotients.iter().map(|a| a.to_string()).collect();
        println!("{s}: [{}] certified through {}", pq.join(", "), cf.certified_through);
        let mu = mu_profile(&cf);
        let tail: Vec<String> = mu.entries.iter().rev().take(3).map(|e| e.mu_k.text.clone()).collect();
        println!("  last mu_k: {}", tail.join(", "));
    }
}
