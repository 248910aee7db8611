//! Logarithmic heights of algebraic numbers and a linear-forms bound.

use pillai::heights::{log_height, make_params, waldschmidt_bound, LogTerm};
use pillai::mpcert::elementary;
use pillai::rexpr::{eval_real, parse_real};

fn main() {
    let alg = |s: &str| parse_real(s).unwrap().as_algebraic().unwrap();
    for s in ["3/2", "algebraic(x^2-2; 1, 2)", "algebraic(x^3-x-1; 1, 2)"] {
        println!("h({s}) = {:.6}", log_height(&alg(s), 128).unwrap().to_f64());
    }

    let terms: Vec<LogTerm> = ["2", "3"]
        .iter()
        .map(|s| {
            let a = alg(s);
            let abs_log = elementary::log(&a.enclose_real(128).unwrap()).unwrap().abs();
            LogTerm { alpha: a, abs_log }
        })
        .collect();
    let b = eval_real(&parse_real("10^6").unwrap(), 128).unwrap();
    let p = make_params(&terms, &[], 1, 128).unwrap().with_b(b, "given").unwrap();
    println!("log|n log 2 - m log 3| >= {:.6e} for n, m <= 10^6", waldschmidt_bound(&p).to_f64());
}
