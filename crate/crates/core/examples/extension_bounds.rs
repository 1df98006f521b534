//! Coherent extension intervals found by exact bisection next to their closed forms.
//!
//! ```bash
//! cargo run --release --example extension_bounds
//! ```

use conditionals::propagation::{bound_family, unit_grid};
use conditionals::rational::fmt_q;
use conditionals::{closed_form_bounds, extension_interval, BoundKind, SearchOptions};

fn main() -> Result<(), conditionals::Error> {
    let grid = unit_grid(3);
    for kind in BoundKind::ALL {
        println!("{}", kind.name());
        for (x, y) in &grid {
            let (assessment, _) = bound_family(kind, x, y)?;
            let found = extension_interval(&assessment, &SearchOptions::default())?;
            let closed = closed_form_bounds(kind, x, y)?;
            println!(
                "  x = {:>3}, y = {:>3}: {:<14} closed form {}",
                fmt_q(x),
                fmt_q(y),
                found.to_string(),
                closed
            );
        }
    }
    Ok(())
}
