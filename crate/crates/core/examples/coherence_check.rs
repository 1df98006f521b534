//! Checks a few assessments for coherence and prints the Dutch book found for an
//! incoherent one.
//!
//! ```bash
//! cargo run --example coherence_check
//! ```

use conditionals::rational::{fmt_q, q, qi};
use conditionals::{
    check_coherence_with_witness, indicator, Assessment, ConditionalEvent, Constraints, Formula,
    Param,
};

fn main() -> Result<(), conditionals::Error> {
    let none = Constraints::none();
    let a = ConditionalEvent::event(Formula::atom("A"));
    let b = ConditionalEvent::event(Formula::atom("B"));
    let b_given_a = ConditionalEvent::new(Formula::atom("B"), Formula::atom("A"))?;
    let family = |pa, pba, pb| -> Result<Assessment, conditionals::Error> {
        Ok(Assessment::new(none.clone())
            .with(indicator(&a, &Param::probability("P(A)"), &none)?, pa)
            .with(
                indicator(&b_given_a, &Param::probability("P(B|A)"), &none)?,
                pba,
            )
            .with(indicator(&b, &Param::probability("P(B)"), &none)?, pb))
    };

    for assessment in [
        family(q(1, 2), q(1, 2), q(1, 2))?,
        family(q(1, 2), q(4, 5), q(1, 10))?,
        family(qi(1), qi(1), qi(0))?,
    ] {
        let result = check_coherence_with_witness(&assessment)?;
        println!("{assessment}");
        if result.coherent {
            println!(
                "  coherent ({} level(s) of the recursion)",
                result.trace.len()
            );
            continue;
        }
        println!("  incoherent");
        if let Some(book) = result.witness {
            for (member, stake) in assessment.family().iter().zip(&book.stakes) {
                println!("    stake {:>5} on {member}", fmt_q(stake));
            }
            let gains: Vec<String> = book.gains.iter().map(fmt_q).collect();
            println!("    gains: {}", gains.join(", "));
            assert!(book.verify(&assessment)?);
        }
    }
    Ok(())
}
