// Exact dimension, standard examples and Kelly subposets.
//
// ```bash
// cargo run --example dimension
// ```

use orderforge::dimension::{dim_of_with, dim_poset, inc_min_max, kappa, rho_with, DEFAULT_BUDGET};
use orderforge::generators::{kelly, standard_example};
use orderforge::Poset;

pub fn run_example() -> orderforge::Result<()> {
    for n in 2..=5 {
        let s = standard_example(n)?;
        let r = dim_poset(&s)?;
        println!("dim(S_{n}) = {} ({} search nodes)", r.d, r.nodes);
    }

    // K_n contains S_n on its min-max pairs.
    let (k5, _) = kelly(5)?;
    let pairs = inc_min_max(&k5);
    let d = dim_of_with(&k5, &pairs, DEFAULT_BUDGET)?.d;
    let (rho, se) = rho_with(&k5, &pairs, DEFAULT_BUDGET)?;
    println!("K_5: {} elements, dim(Min, Max) = {d}, rho = {rho} via {:?}", k5.len(), se.pairs);
    let (kap, w) = kappa(&k5, 5)?;
    println!("K_5 contains K_{kap}: {}", w.is_some());

    // A 2-dimensional poset: the product of two chains.
    let grid = Poset::from_relations(&["00", "01", "10", "11"], &[("00", "01"), ("00", "10"), ("01", "11"), ("10", "11")])?;
    let r = dim_poset(&grid)?;
    for l in &r.realizer.extensions {
        println!("  grid extension {:?}", l.order);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> orderforge::Result<()> {
    run_example()
}
