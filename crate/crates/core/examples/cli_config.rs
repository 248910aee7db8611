//! Drive the command-line front end from JSON job descriptions.

use pillai::cli::{run, JobConfig};

fn main() {
    let jobs = [
        r#"{ "command": "count", "left": ["2"], "right": ["3"], "x": "10", "nmax": 16, "mmax": 16 }"#,
        r#"{ "command": "series", "left": ["2"], "right": ["3"], "x": ["10^2", "10^4", "10^8"], "format": "json" }"#,
    ];
    for text in jobs {
        let out = run(&JobConfig::from_json(text).unwrap()).unwrap();
        print!("{}", out.body);
        println!("exit code {}\n", out.exit_code);
    }
}
