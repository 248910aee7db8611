//! Enclosures of real expressions at increasing precision.

use pillai::mpcert::render_decimal;
use pillai::rexpr::{eval_real, parse_real};

fn main() {
    for s in ["exp(pi*sqrt(163))", "log(2)^10 - 1/40", "algebraic(x^5-x-1; 1, 2)", "liouville"] {
        let e = parse_real(s).unwrap();
        for p in [64, 256] {
            let v = eval_real(&e, p).unwrap();
            println!("{s} @ {p} bits: {}", render_decimal(&v).text);
        }
    }
}
