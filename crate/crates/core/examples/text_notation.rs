//! Parsing and printing the text notation, with caret diagnostics.

use protori::dsl;

fn main() {
    let good = ["1", "2^inf * 3^2", "2^1 ; rest = 1", "3^2 ; rest = inf"];
    for src in good {
        let n = dsl::parse_sn(src).expect("valid literal");
        println!("{src:<18} -> {n}");
    }

    let g = dsl::parse_group("prod[2^inf ; rest=0, 3^1]").expect("valid literal");
    println!("{} rows: {g}", g.rows().len());

    let bad = ["4^2", "2^1 * 3^1 * 2^2", "2^-1", "prod[2^1", "protorus{solenoids: [3^1]}"];
    for src in bad {
        let err = if src.starts_with("prod") {
            dsl::parse_group(src).unwrap_err()
        } else if src.starts_with("protorus") {
            dsl::parse_protorus(src).unwrap_err()
        } else {
            dsl::parse_sn(src).unwrap_err()
        };
        println!("{:?}", err.kind);
        print!("{}", err.render(src, false));
    }
}
