//! The Bayes-type rules for the structural iterated conditionals: swapping the roles
//! of antecedent and consequent, and the total-probability form.
//!
//! ```bash
//! cargo run --release --example bayes
//! ```

use conditionals::propagation::{bayes_swapped_interval, bayes_total_check};
use conditionals::rational::{fmt_q, q};
use conditionals::{SearchOptions, StructuralKind};

fn main() -> Result<(), conditionals::Error> {
    let opts = SearchOptions::default();
    let (x, y, mu) = (q(1, 2), q(3, 4), q(1, 2));
    println!(
        "x = P(A|H) = {}, y = P(B|K) = {}, mu = {}",
        fmt_q(&x),
        fmt_q(&y),
        fmt_q(&mu)
    );
    println!("mu·x/y = {}", fmt_q(&(&mu * &x / &y)));
    for kind in StructuralKind::ALL {
        let swapped = bayes_swapped_interval(kind, &x, &y, &mu, &opts)?;
        let total = bayes_total_check(kind, &x, &y, &mu, &opts)?;
        println!(
            "{:?}: coherent nu {swapped}; nu_bar {} (rule gives {}, forced: {})",
            kind,
            total.interval,
            fmt_q(&total.expected),
            total.holds()
        );
    }
    Ok(())
}
