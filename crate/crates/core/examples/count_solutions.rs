//! Certified count of `|2^n - 3^m| <= x` for a few thresholds.

use pillai::counting::{count, PowerSumSide};
use pillai::rexpr::parse_real;

fn main() {
    let l = PowerSumSide::parse(&["2"]).unwrap();
    let r = PowerSumSide::parse(&["3"]).unwrap();
    for xs in ["1", "10", "10^3", "10^6"] {
        let x = parse_real(xs).unwrap();
        let rep = count(&l, &r, &x, 64, 64).unwrap();
        println!(
            "x = {xs:>5}: {} solutions, certified = {}, pairs {:?}",
            rep.count_in,
            rep.certified(),
            rep.in_pairs().iter().take(8).collect::<Vec<_>>()
        );
    }
}
