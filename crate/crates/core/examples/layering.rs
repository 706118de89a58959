// Layers of the canonical Kelly drawings and the nested cycles that
// force them.
//
// ```bash
// cargo run --example layering
// ```

use orderforge::generators::kelly;
use orderforge::dimension::DEFAULT_BUDGET;
use orderforge::planar::{min_outerplanarity, nested_kelly_cycles};

pub fn run_example() -> orderforge::Result<()> {
    for n in [3, 5, 7, 11] {
        let (p, e) = kelly(n)?;
        let layers = e.layering();
        println!("K_{n}: {} layers", layers.len());
        for (i, l) in layers.ids(e.graph()).iter().enumerate() {
            println!("  V_{} = {l:?}", i + 1);
        }
        if n == 11 {
            let nc = nested_kelly_cycles(&p, &e)?;
            println!("  {} nested cycles, depth {}, certified layers {}", nc.cycles.len(), nc.depth, nc.certified_layers);
        }
    }
    // No drawing of cover(K_5) is outerplanar.
    let (p, _) = kelly(5)?;
    let m = min_outerplanarity(&p.cover_graph(), DEFAULT_BUDGET)?;
    println!("cover(K_5): best drawing has {} layers ({} rotation systems)", m.k, m.explored);
    Ok(())
}

#[allow(dead_code)]
fn main() -> orderforge::Result<()> {
    run_example()
}
