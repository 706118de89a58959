// A cover(K_n) minor read off a Kelly subposet.
//
// ```bash
// cargo run --example minor_model
// ```

use orderforge::dimension::{find_kelly, DEFAULT_BUDGET};
use orderforge::exposed::kelly_minor_model;
use orderforge::generators::doubly_exposed_family;
use orderforge::planar::verify_minor_model;

pub fn run_example() -> orderforge::Result<()> {
    // Built on K_5 with subdivided covers and extra pendants.
    let d = doubly_exposed_family(11, 4)?;
    let w = find_kelly(&d.poset, 5, DEFAULT_BUDGET)?.expect("the instance contains K_5");
    let model = kelly_minor_model(&d.poset, &w)?;
    println!("verified: {:?}", verify_minor_model(&model));
    for (v, set) in model.branch_set_ids() {
        println!("  {v:>4} <- {set:?}");
    }
    let c = model.contracted();
    let missing = model.pattern.edge_ids().into_iter().filter(|(u, v)| {
        !matches!((c.index_of(u), c.index_of(v)), (Some(x), Some(y)) if c.has_edge(x, y))
    });
    println!("pattern edges missing after contraction: {}", missing.count());
    Ok(())
}

#[allow(dead_code)]
fn main() -> orderforge::Result<()> {
    run_example()
}
