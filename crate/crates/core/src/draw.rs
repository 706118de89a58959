//! DOT and SVG output for embedded graphs.
//!
//! Vertices are colored by layer. Each component's exterior walk is pinned
//! to a circle and the remaining vertices are placed by barycentric
//! relaxation, which keeps the drawing close to the embedding and fully
//! deterministic. Overlays restyle selected edges on top.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::exposed::{NPath, WitnessTree, WitnessTreePair};
use crate::planar::Embedding;
use crate::poset::Poset;

const PALETTE: [&str; 8] = ["#9ecae1", "#fdd0a2", "#a1d99b", "#dadaeb", "#fcbba1", "#c7e9c0", "#fdae6b", "#bcbddc"];
const RADIUS: f64 = 200.0;
const RELAX_ROUNDS: usize = 500;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Dot,
    Svg,
}

/// Edges drawn in one color on top of the base drawing.
#[derive(Clone, Debug)]
pub struct Overlay {
    pub name: String,
    pub color: String,
    pub edges: Vec<(String, String)>,
}

impl Overlay {
    fn tree(name: &str, color: &str, p: &Poset, t: &WitnessTree) -> Overlay {
        let edges = t.vertices().filter_map(|v| t.parent(v).map(|u| (p.id(u).to_string(), p.id(v).to_string()))).collect();
        Overlay { name: name.into(), color: color.into(), edges }
    }

    pub fn trees(p: &Poset, t: &WitnessTreePair) -> Vec<Overlay> {
        vec![Overlay::tree("blue-tree", "blue", p, &t.blue), Overlay::tree("red-tree", "red", p, &t.red)]
    }

    /// The three portions of an N path.
    pub fn n_path(p: &Poset, n: &NPath) -> Vec<Overlay> {
        let part = |name: &str, color: &str, vs: &[usize]| Overlay {
            name: name.into(),
            color: color.into(),
            edges: vs.windows(2).map(|w| (p.id(w[0]).to_string(), p.id(w[1]).to_string())).collect(),
        };
        vec![part("n-blue", "blue", n.blue()), part("n-black", "black", n.black()), part("n-red", "red", n.red())]
    }
}

#[derive(Clone, Debug)]
pub struct DrawOptions {
    pub format: Format,
    pub title: String,
    pub overlays: Vec<Overlay>,
}

impl Default for DrawOptions {
    fn default() -> Self {
        DrawOptions { format: Format::Dot, title: "G".into(), overlays: Vec::new() }
    }
}

/// Planar-ish coordinates, one circle per component, left to right.
pub fn layout(e: &Embedding) -> Vec<(f64, f64)> {
    let g = e.graph();
    let mut xy = vec![(0.0, 0.0); g.len()];
    let mut x_off = 0.0;
    for (c, comp) in e.components().iter().enumerate() {
        let mut ring = Vec::new();
        let mut seen = BTreeSet::new();
        for v in e.exterior_walk(c) {
            if seen.insert(v) {
                ring.push(v);
            }
        }
        let r = if comp.len() == 1 { 0.0 } else { RADIUS * (comp.len() as f64 / 12.0).sqrt().clamp(0.4, 2.0) };
        let cx = x_off + r;
        let k = ring.len() as f64;
        for (i, &v) in ring.iter().enumerate() {
            // Walks are traced counterclockwise; y grows downward in SVG.
            let t = std::f64::consts::TAU * i as f64 / k;
            xy[v] = (cx + r * t.cos(), -r * t.sin());
        }
        let free: Vec<usize> = comp.iter().copied().filter(|v| !seen.contains(v)).collect();
        for &v in &free {
            xy[v] = (cx, 0.0);
        }
        for _ in 0..RELAX_ROUNDS {
            for &v in &free {
                let d = g.degree(v) as f64;
                let (sx, sy) = g.neighbors(v).fold((0.0, 0.0), |(a, b), u| (a + xy[u].0, b + xy[u].1));
                xy[v] = (sx / d, sy / d);
            }
        }
        x_off = cx + r + 80.0;
    }
    xy
}

fn overlay_edges(e: &Embedding, overlays: &[Overlay]) -> Result<BTreeMap<(usize, usize), Vec<usize>>> {
    let g = e.graph();
    let mut out: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (k, o) in overlays.iter().enumerate() {
        for (u, v) in &o.edges {
            let (ui, vi) = (g.require(u)?, g.require(v)?);
            if !g.has_edge(ui, vi) {
                return Err(Error::Input(format!("overlay `{}` names a non-edge ({u}, {v})", o.name)));
            }
            out.entry((ui.min(vi), ui.max(vi))).or_default().push(k);
        }
    }
    Ok(out)
}

/// DOT or SVG text; identical inputs give identical bytes.
pub fn emit_drawing(e: &Embedding, opts: &DrawOptions) -> Result<String> {
    e.validate()?;
    let g = e.graph();
    let level = e.layering().level(g.len());
    let xy = layout(e);
    let marked = overlay_edges(e, &opts.overlays)?;
    let mut s = String::new();
    match opts.format {
        Format::Dot => {
            let _ = writeln!(s, "graph \"{}\" {{", escape(&opts.title));
            let _ = writeln!(s, "  node [shape=circle, style=filled, fontsize=10];");
            for v in 0..g.len() {
                let _ = writeln!(
                    s,
                    "  \"{}\" [fillcolor=\"{}\", layer={}, pos=\"{:.1},{:.1}!\"];",
                    escape(g.id(v)),
                    PALETTE[level[v] % PALETTE.len()],
                    level[v] + 1,
                    xy[v].0,
                    -xy[v].1
                );
            }
            for (u, v) in g.edges() {
                let style = match marked.get(&(u, v)).and_then(|ks| ks.last()) {
                    Some(&k) => format!(" [color=\"{}\", penwidth=3, class=\"{}\"]", opts.overlays[k].color, opts.overlays[k].name),
                    None => String::new(),
                };
                let _ = writeln!(s, "  \"{}\" -- \"{}\"{};", escape(g.id(u)), escape(g.id(v)), style);
            }
            s.push_str("}\n");
        }
        Format::Svg => {
            let pad = 30.0;
            let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
            for &(x, y) in &xy {
                (x0, y0, x1, y1) = (x0.min(x), y0.min(y), x1.max(x), y1.max(y));
            }
            if xy.is_empty() {
                (x0, y0, x1, y1) = (0.0, 0.0, 0.0, 0.0);
            }
            let (w, h) = (x1 - x0 + 2.0 * pad, y1 - y0 + 2.0 * pad);
            let at = |v: usize| (xy[v].0 - x0 + pad, xy[v].1 - y0 + pad);
            let _ = writeln!(s, "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.0}\" height=\"{h:.0}\" viewBox=\"0 0 {w:.1} {h:.1}\">");
            let _ = writeln!(s, "<title>{}</title>", xml(&opts.title));
            for (u, v) in g.edges() {
                let ((ax, ay), (bx, by)) = (at(u), at(v));
                let (color, width, class) = match marked.get(&(u, v)).and_then(|ks| ks.last()) {
                    Some(&k) => (opts.overlays[k].color.as_str(), 3.0, opts.overlays[k].name.as_str()),
                    None => ("#888", 1.0, "edge"),
                };
                let _ = writeln!(
                    s,
                    "<line class=\"{class}\" x1=\"{ax:.1}\" y1=\"{ay:.1}\" x2=\"{bx:.1}\" y2=\"{by:.1}\" stroke=\"{color}\" stroke-width=\"{width}\"/>"
                );
            }
            for v in 0..g.len() {
                let (x, y) = at(v);
                let _ = writeln!(
                    s,
                    "<circle class=\"layer-{}\" cx=\"{x:.1}\" cy=\"{y:.1}\" r=\"9\" fill=\"{}\" stroke=\"#333\"/>",
                    level[v] + 1,
                    PALETTE[level[v] % PALETTE.len()]
                );
                let _ = writeln!(s, "<text x=\"{x:.1}\" y=\"{:.1}\" font-size=\"9\" text-anchor=\"middle\">{}</text>", y + 3.0, xml(g.id(v)));
            }
            s.push_str("</svg>\n");
        }
    }
    Ok(s)
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn xml(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exposed::ExposedInstance;
    use crate::generators::{doubly_exposed_family, kelly};
    use crate::graph::Graph;
    use crate::planar::rotations_from_coordinates;

    /// Node and edge statements of emitted DOT.
    fn parse_dot(text: &str) -> (Vec<(String, String)>, Vec<(String, String)>) {
        let mut nodes = Vec::new();
        let mut edges = Vec::new();
        for line in text.lines().map(str::trim) {
            let quoted: Vec<&str> = line.split('"').collect();
            if line.contains(" -- ") {
                edges.push((quoted[1].to_string(), quoted[3].to_string()));
            } else if line.starts_with('"') {
                nodes.push((quoted[1].to_string(), quoted[3].to_string()));
            }
        }
        (nodes, edges)
    }

    fn triangle() -> Embedding {
        let g = Graph::from_edges(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]).unwrap();
        let r = rotations_from_coordinates(&g, &[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]);
        Embedding::from_rotations(g, r).unwrap()
    }

    #[test]
    fn triangle_is_stable() {
        let e = triangle();
        let a = emit_drawing(&e, &DrawOptions::default()).unwrap();
        let b = emit_drawing(&e.clone(), &DrawOptions::default()).unwrap();
        assert_eq!(a, b);
        let (nodes, edges) = parse_dot(&a);
        assert_eq!(nodes.len(), 3);
        assert_eq!(edges.len(), 3);
    }

    #[test]
    fn kelly_parse_back_matches_cover_graph() {
        let (p, e) = kelly(5).unwrap();
        let dot = emit_drawing(&e, &DrawOptions::default()).unwrap();
        let (nodes, edges) = parse_dot(&dot);
        let ids: Vec<String> = nodes.iter().map(|n| n.0.clone()).collect();
        let back = Graph::from_edges(&ids, &edges).unwrap();
        assert_eq!(back, p.cover_graph());
    }

    #[test]
    fn one_color_per_layer() {
        let (_, e) = kelly(7).unwrap();
        let dot = emit_drawing(&e, &DrawOptions::default()).unwrap();
        let (nodes, _) = parse_dot(&dot);
        let colors: BTreeSet<&str> = nodes.iter().map(|n| n.1.as_str()).collect();
        assert_eq!(colors.len(), e.outerplanarity());
        let svg = emit_drawing(&e, &DrawOptions { format: Format::Svg, ..Default::default() }).unwrap();
        for l in 1..=e.outerplanarity() {
            assert!(svg.contains(&format!("class=\"layer-{l}\"")));
        }
        assert!(!svg.contains(&format!("class=\"layer-{}\"", e.outerplanarity() + 1)));
    }

    #[test]
    fn tree_and_n_path_overlays() {
        let d = doubly_exposed_family(3, 3).unwrap();
        let inst = ExposedInstance::new(&d.poset, &d.embedding, &d.x0, &d.y0).unwrap();
        let mut overlays = Overlay::trees(&inst.poset, &inst.trees);
        let (a, b) = (inst.poset.require("a2").unwrap(), inst.poset.require("b3").unwrap());
        overlays.extend(Overlay::n_path(&inst.poset, &inst.n_path(a, b).unwrap()));
        let opts = DrawOptions { format: Format::Svg, title: "exposed".into(), overlays };
        let svg = emit_drawing(&inst.embedding, &opts).unwrap();
        assert!(svg.contains("stroke=\"blue\""));
        assert!(svg.contains("stroke=\"red\""));
        assert_eq!(svg, emit_drawing(&inst.embedding, &opts).unwrap());
        let bad = DrawOptions { overlays: vec![Overlay { name: "x".into(), color: "red".into(), edges: vec![("x0".into(), "y0".into())] }], ..Default::default() };
        assert!(emit_drawing(&inst.embedding, &bad).is_err());
    }
}
