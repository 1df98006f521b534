//! Evaluates the property table of the eight iterated conditionals and the
//! triviality demonstration for Import-Export.
//!
//! ```bash
//! cargo run --release --example property_suite
//! ```

use conditionals::property_suite;
use conditionals::pvalidity::{lewis_triviality_demo, render_table};
use conditionals::rational::fmt_q;

fn main() -> Result<(), conditionals::Error> {
    let verdicts = property_suite()?;
    print!("{}", render_table(&verdicts));
    for v in verdicts.iter().filter(|v| !v.holds) {
        println!("{} {}: {}", v.operator, v.property, v.note);
        if let Some(c) = &v.counterexample {
            println!("    {c}");
        }
    }

    let demo = lewis_triviality_demo()?;
    println!("\nImport-Export holds for iter_dF: {}", demo.import_export);
    for row in demo.contradictions().into_iter().take(5) {
        println!(
            "coherent P(A) = {}, P(C) = {}, P(C|A) = {}, yet total probability would force {}",
            fmt_q(&row.p_a),
            fmt_q(&row.p_c),
            fmt_q(&row.p_c_given_a),
            fmt_q(&row.forced)
        );
    }
    Ok(())
}
