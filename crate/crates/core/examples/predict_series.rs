//! Actual counts against the leading-term prediction as `x` grows.

use pillai::counting::{ratio_series, PowerSumSide};
use pillai::rexpr::parse_real;

fn main() {
    let l = PowerSumSide::parse(&["2"]).unwrap();
    let r = PowerSumSide::parse(&["3"]).unwrap();
    let xs: Vec<_> = (1..=6).map(|k| parse_real(&format!("10^{}", 5 * k)).unwrap()).collect();
    let rows = ratio_series(&l, &r, &xs, &[(128, 96)], 4096).unwrap();
    println!("x,count,predicted,ratio,lower_bound");
    for row in rows {
        let f = |v: &Option<pillai::mpcert::RealInterval>| v.as_ref().map(|v| format!("{:.4}", v.to_f64())).unwrap_or_default();
        println!("{},{},{},{},{}", row.x, row.count_in, f(&row.predicted), f(&row.ratio), row.lower_bound);
    }
}
