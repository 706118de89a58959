// Witness trees, N paths and the pair digraph of a doubly exposed
// standard example.
//
// ```bash
// cargo run --example exposed_structure
// ```

use orderforge::dimension::StandardExample;
use orderforge::exposed::ExposedInstance;
use orderforge::generators::doubly_exposed_family;

pub fn run_example() -> orderforge::Result<()> {
    let d = doubly_exposed_family(3, 5)?;
    let inst = ExposedInstance::new(&d.poset, &d.embedding, &d.x0, &d.y0)?;
    let p = &inst.poset;
    let pairs = inst.resolve(&StandardExample { pairs: d.pairs.to_ids(&d.poset) })?;
    println!("{} elements, {} pairs exposed by {} and {}", p.len(), pairs.len(), d.x0, d.y0);

    // Blue order of the pairs, by their maximal elements.
    let sorted = inst.sorted(&pairs)?;
    println!("blue order: {:?}", inst.ids(&sorted));

    // N(a, b) joins a_i < b_j for i != j.
    let (a, b) = (sorted[0].0, sorted[1].1);
    let np = inst.n_path(a, b)?;
    let ids = |s: &[usize]| s.iter().map(|&v| p.id(v).to_string()).collect::<Vec<_>>();
    println!("N({}, {}): blue {:?} black {:?} red {:?}", p.id(a), p.id(b), ids(np.blue()), ids(np.black()), ids(np.red()));

    let g = inst.digraph(&pairs)?;
    println!("digraph: {} arcs, labels p {:?} q {:?}, max {}", g.arcs.len(), g.p, g.q, g.max_label());

    let r = inst.lemma_predicates(&pairs)?;
    for c in &r.checks {
        println!("  {:<28} {} cases, {} violations", c.lemma, c.cases, c.violation_count);
    }

    let big = doubly_exposed_family(1, 37)?;
    let inst = ExposedInstance::new(&big.poset, &big.embedding, &big.x0, &big.y0)?;
    let pairs = inst.resolve(&StandardExample { pairs: big.pairs.to_ids(&big.poset) })?;
    let sep = inst.extract_separated(&pairs, 1)?;
    println!("from 37 pairs: separated sub-example of size {}", sep.len());
    Ok(())
}

#[allow(dead_code)]
fn main() -> orderforge::Result<()> {
    run_example()
}
