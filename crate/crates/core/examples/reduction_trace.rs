// Reductions with a step-by-step trace of the inequalities they rely on.
//
// ```bash
// cargo run --example reduction_trace
// ```

use orderforge::dimension::DEFAULT_BUDGET;
use orderforge::generators::kelly;
use orderforge::io;
use orderforge::reductions::{doubly_exposed_reduce, height_pipeline, is_doubly_exposed, min_max_reduce, DoublyExposedOptions, Drawn};

pub fn run_example() -> orderforge::Result<()> {
    let (p, e) = kelly(5)?;

    // Pendants make every element of A minimal and every element of B maximal.
    let all = p.all();
    let r = min_max_reduce(&p, &all, &all)?;
    println!("min-max reduction: {} -> {} elements, {} pendants", p.len(), r.poset.len(), r.added.len());

    let d = Drawn::new(p, e)?;
    let k = d.embedding.outerplanarity();
    let out = doubly_exposed_reduce(&d, k, DoublyExposedOptions { budget: DEFAULT_BUDGET, force_full: true })?;
    let exposed = is_doubly_exposed(&out.poset, &out.embedding, &out.pairs, &out.x0, &out.y0)?;
    println!(
        "doubly exposed reduction: {} pairs between {} and {}, {} layers, exposed {exposed}",
        out.pairs.len(),
        out.x0,
        out.y0,
        out.layers
    );
    for s in &out.trace.steps {
        println!("  {:<28} {:<48} lhs {:?} rhs {:?} verified {}", s.lemma, s.inequality, s.lhs, s.rhs, s.verified);
    }
    println!("sound: {}", out.trace.sound());

    let h = height_pipeline(&d, DEFAULT_BUDGET)?;
    println!("height {}: Q needs {} <= {} layers", h.height, h.q_layers, h.layer_bound);
    print!("{}", io::pretty(&h.trace));
    Ok(())
}

#[allow(dead_code)]
fn main() -> orderforge::Result<()> {
    run_example()
}
