//! Parses expressions and assessment files, prints them back, and runs an extension
//! query written in the expression language.
//!
//! ```bash
//! cargo run --example dsl_roundtrip
//! ```

use conditionals::dsl::{build_assessment, parse, parse_bindings};
use conditionals::{extension_interval, Constraints, SearchOptions};

const FILE: &str = "\
# premises
P(A|H) = 0.8
P(B|K) = 3/5
# the gs conjunction is the target
PV((A|H) and_gs (B|K)) = ?
";

fn main() -> Result<(), conditionals::Error> {
    for text in [
        "(B|K) iter_C (A|H)",
        "((A|H) and_S (B|K)) iter_K (A|H)",
        "!(A & B) || C | H & !K",
        "A and_K B or_L (C|D)",
    ] {
        let ast = parse(text)?;
        let printed = ast.to_string();
        assert_eq!(parse(&printed)?, ast);
        println!("{text:<36} -> {printed}");
    }

    let statements = parse_bindings(FILE)?;
    for s in &statements {
        println!("line {}: {s}", s.line);
    }
    let spec = build_assessment(&statements, &Constraints::none())?;
    let interval = extension_interval(&spec.assessment, &SearchOptions::default())?;
    println!("{} in {interval}", spec.targets[0]);

    match parse("(A|H) and_K B|K|L") {
        Ok(_) => unreachable!(),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
