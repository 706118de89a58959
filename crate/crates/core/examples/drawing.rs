// DOT and SVG drawings with layer colors and tree overlays.
//
// ```bash
// cargo run --example drawing > kelly.dot
// ```

use orderforge::dimension::StandardExample;
use orderforge::draw::{emit_drawing, DrawOptions, Format, Overlay};
use orderforge::exposed::ExposedInstance;
use orderforge::generators::{doubly_exposed_family, kelly};

pub fn run_example() -> orderforge::Result<()> {
    let (_, e) = kelly(7)?;
    let dot = emit_drawing(&e, &DrawOptions { title: "K7".into(), ..Default::default() })?;
    println!("{dot}");

    let d = doubly_exposed_family(0, 3)?;
    let inst = ExposedInstance::new(&d.poset, &d.embedding, &d.x0, &d.y0)?;
    let pairs = inst.resolve(&StandardExample { pairs: d.pairs.to_ids(&d.poset) })?;
    let mut overlays = Overlay::trees(&inst.poset, &inst.trees);
    let (a, b) = (pairs[0].0, pairs[1].1);
    overlays.extend(Overlay::n_path(&inst.poset, &inst.n_path(a, b)?));
    let svg = emit_drawing(&inst.embedding, &DrawOptions { format: Format::Svg, title: "exposed".into(), overlays })?;
    println!("svg: {} bytes, {} lines", svg.len(), svg.lines().count());
    Ok(())
}

#[allow(dead_code)]
fn main() -> orderforge::Result<()> {
    run_example()
}
