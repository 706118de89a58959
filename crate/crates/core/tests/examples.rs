macro_rules! example {
    ($name:ident, $file:literal) => {
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }
    };
}

example!(dimension, "dimension.rs");
example!(layering, "layering.rs");
example!(reduction_trace, "reduction_trace.rs");
example!(exposed_structure, "exposed_structure.rs");
example!(minor_model, "minor_model.rs");
example!(drawing, "drawing.rs");
example!(property_suites, "property_suites.rs");

#[test]
fn examples_run() {
    dimension::run_example().expect("dimension");
    layering::run_example().expect("layering");
    reduction_trace::run_example().expect("reduction_trace");
    exposed_structure::run_example().expect("exposed_structure");
    minor_model::run_example().expect("minor_model");
    drawing::run_example().expect("drawing");
    property_suites::run_example().expect("property_suites");
}
