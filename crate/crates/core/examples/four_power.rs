//! `|e^n + sqrt5^n - 7^m - pi^m| <= 10^6`: linear-form bound, window and count.

use pillai::counting::{count, lower_bound_box};
use pillai::effective::{four_power_linear_form, four_power_sides, window_four_power};
use pillai::rexpr::parse_real;

fn main() {
    let f = four_power_linear_form(100).unwrap();
    println!("log|Lambda| >= {:.6e} at m = 100 ({:?})", f.bound.to_f64(), f.factors);

    let x = parse_real("10^6").unwrap();
    let w = window_four_power(&x).unwrap();
    let (n, m) = w.window_u64().unwrap();
    println!("window ({n}, {m}), raw m <= {}", w.raw_m_max);

    let (l, r) = four_power_sides();
    let rep = count(&l, &r, &x, n, m).unwrap();
    let (bn, bm) = lower_bound_box(&l, &r, &x);
    println!(
        "T(10^6) = {} (certified {}), predicted {:.4}, box {bn}x{bm}",
        rep.count_in,
        rep.certified(),
        rep.predicted.unwrap().to_f64()
    );
}
