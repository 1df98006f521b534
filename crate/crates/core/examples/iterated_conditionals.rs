//! Value tables of the five structural iterated conditionals, then the same table
//! instantiated at numbers.
//!
//! ```bash
//! cargo run --example iterated_conditionals
//! ```

use conditionals::dsl::{parse, value_table_of};
use conditionals::rational::{fmt_q, q};
use conditionals::{value_table, Binding, Constraints, Param};

fn main() -> Result<(), conditionals::Error> {
    let none = Constraints::none();
    for kind in ["K", "L", "B", "S", "gs"] {
        let table = value_table_of(&parse(&format!("(B|K) iter_{kind} (A|H)"))?, &none)?;
        println!("{table}");
        println!("distinct values: {}\n", table.distinct_values().join(", "));
    }

    let sp = conditionals::propagation::StandardPair::new();
    let mu = Param::prevision("mu");
    let crq = sp.iterated(conditionals::StructuralKind::B, &mu)?;
    let binding: Binding = [
        (sp.x.clone(), q(1, 2)),
        (sp.y.clone(), q(1, 3)),
        (mu.clone(), q(2, 3)),
    ]
    .into_iter()
    .collect();
    println!("{crq} at x = 1/2, y = 1/3, mu = 2/3:");
    for (event, value) in value_table(&crq, &binding)? {
        println!("  {:>6}  on {event}", fmt_q(&value));
    }
    Ok(())
}
