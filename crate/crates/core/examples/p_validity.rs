//! Generalized modus ponens and two-premise centering, decided by p-entailment.
//!
//! ```bash
//! cargo run --release --example p_validity
//! ```

use conditionals::propagation::StandardPair;
use conditionals::{check_inference, p_entails, Operator, Rule};

fn main() -> Result<(), conditionals::Error> {
    for rule in [Rule::ModusPonens, Rule::Centering] {
        for op in [
            Operator::C,
            Operator::DF,
            Operator::F,
            Operator::K,
            Operator::L,
            Operator::Gs,
        ] {
            let v = check_inference(rule, op)?;
            println!(
                "{:<12} iter_{:<2} {:<5} {}",
                rule.name(),
                op.name(),
                if v.holds { "holds" } else { "fails" },
                v.note
            );
            if let Some(c) = v.counterexample {
                println!("{:20}counterexample {c}", "");
            }
        }
    }

    // A|H alone does not p-entail B|K.
    let sp = StandardPair::new();
    let e = p_entails(&[sp.ah_crq()], &sp.bk_crq(), &sp.constraints)?;
    println!("A|H entails B|K: {} (interval {})", e.holds, e.interval);
    Ok(())
}
