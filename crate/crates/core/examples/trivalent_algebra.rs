//! Prints the truth tables of the four trivalent conjunctions and of the three
//! iterated conditionals whose values are again conditional events.
//!
//! ```bash
//! cargo run --example trivalent_algebra
//! ```

use conditionals::dsl::{parse, value_table_of};
use conditionals::{
    conjoin_trivalent, disjoin_trivalent, negate, semantically_equal, ConditionalEvent,
    Constraints, Formula, TrivalentKind,
};

fn main() -> Result<(), conditionals::Error> {
    let none = Constraints::none();
    for kind in ["K", "L", "B", "S"] {
        let table = value_table_of(&parse(&format!("(A|H) and_{kind} (B|K)"))?, &none)?;
        println!("{table}");
    }
    for kind in ["C", "dF", "F"] {
        let table = value_table_of(&parse(&format!("(B|K) iter_{kind} (A|H)"))?, &none)?;
        println!("{table}");
    }

    let ah = ConditionalEvent::new(Formula::atom("A"), Formula::atom("H"))?;
    let bk = ConditionalEvent::new(Formula::atom("B"), Formula::atom("K"))?;
    for kind in TrivalentKind::ALL {
        let lhs = negate(&conjoin_trivalent(kind, &ah, &bk, &none)?);
        let rhs = disjoin_trivalent(kind, &negate(&ah), &negate(&bk), &none)?;
        println!(
            "De Morgan for {}: {}",
            kind.name(),
            semantically_equal(&lhs, &rhs, &none)?
        );
    }
    Ok(())
}
