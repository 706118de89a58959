// The randomized property suites behind `orderforge verify`.
//
// ```bash
// cargo run --example property_suites
// ```

use orderforge::dimension::DEFAULT_BUDGET;
use orderforge::verify::{run_suite, Suite};

pub fn run_example() -> orderforge::Result<()> {
    for suite in [Suite::Dimension, Suite::Planar, Suite::Lemmas] {
        let r = run_suite(suite, 7, 10, DEFAULT_BUDGET)?;
        println!("{suite:?}: ok {}", r.ok());
        for c in &r.checks {
            println!("  {:<30} {:>3} cases {:>2} violations", c.name, c.cases, c.violations.len());
        }
        // Literal statements that fail on degenerate inputs.
        for c in &r.known_gaps {
            println!("  {:<30} {:>3} cases {:>2} counterexamples", c.name, c.cases, c.violations.len());
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> orderforge::Result<()> {
    run_example()
}
