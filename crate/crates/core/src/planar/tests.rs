use super::*;
use crate::generators::kelly;

fn graph(vs: &[&str], es: &[(&str, &str)]) -> Graph {
    Graph::from_edges(vs, es).unwrap()
}

fn rots(g: &Graph, spec: &[(&str, &[&str])]) -> BTreeMap<String, Vec<String>> {
    let _ = g;
    spec.iter().map(|(v, l)| (v.to_string(), l.iter().map(|s| s.to_string()).collect())).collect()
}

#[test]
fn triangle_has_two_faces_and_one_layer() {
    let g = graph(&["x", "y", "z"], &[("x", "y"), ("y", "z"), ("x", "z")]);
    let r = rots(&g, &[("x", &["y", "z"]), ("y", &["z", "x"]), ("z", &["x", "y"])]);
    let rep = validate_embedding(&g, &r, None).unwrap();
    assert_eq!((rep.vertices, rep.edges, rep.faces, rep.components), (3, 3, 2, 1));
    let e = Embedding::from_id_rotations(g, &r).unwrap();
    assert_eq!(e.outerplanarity(), 1);
}

#[test]
fn k4_with_inner_vertex_has_two_layers() {
    // Outer triangle x, y, z counterclockwise and w at the centre.
    let g = graph(&["w", "x", "y", "z"], &[("w", "x"), ("w", "y"), ("w", "z"), ("x", "y"), ("y", "z"), ("x", "z")]);
    let r = rots(
        &g,
        &[("w", &["x", "y", "z"]), ("x", &["y", "w", "z"]), ("y", &["z", "w", "x"]), ("z", &["x", "w", "y"])],
    );
    let e = Embedding::from_id_rotations(g.clone(), &r).unwrap().with_outer_ids(&["x", "z", "y"]).unwrap();
    assert_eq!(e.faces().len(), 4);
    let l = e.layering();
    assert_eq!(l.ids(&g), vec![vec!["x", "y", "z"], vec!["w"]]);
    assert!(l.check(&g));
    assert!(e.is_outer(1) && !e.is_outer(0));
}

#[test]
fn rotation_errors_are_named() {
    let g = graph(&["x", "y", "z"], &[("x", "y"), ("y", "z")]);
    let r = rots(&g, &[("x", &["y"]), ("y", &["x"]), ("z", &["y"])]);
    let err = validate_embedding(&g, &r, None).unwrap_err();
    assert!(err.to_string().contains("EdgeMissingFromRotation"));
    let r = rots(&g, &[("x", &["z"]), ("y", &["x", "z"]), ("z", &["y"])]);
    assert!(matches!(validate_embedding(&g, &r, None), Err(Diagnostic::NonNeighborInRotation { .. })));
}

#[test]
fn k5_has_no_plane_rotation() {
    let vs = ["1", "2", "3", "4", "5"];
    let mut es = Vec::new();
    for i in 0..5 {
        for j in i + 1..5 {
            es.push((vs[i], vs[j]));
        }
    }
    let g = graph(&vs, &es);
    let rot: Vec<Vec<usize>> = (0..5).map(|v| g.neighbors(v).collect()).collect();
    assert!(matches!(Embedding::from_rotations(g.clone(), rot), Err(Diagnostic::EulerViolated { .. })));
    assert!(matches!(find_planar_embedding(&g, 1_000_000), Err(Error::NotPlanar)));
}

#[test]
fn disjoint_edges_are_two_components() {
    let g = graph(&["p", "q", "r", "s"], &[("p", "q"), ("r", "s")]);
    let rot: Vec<Vec<usize>> = (0..4).map(|v| g.neighbors(v).collect()).collect();
    let e = Embedding::from_rotations(g, rot).unwrap();
    assert_eq!(e.components().len(), 2);
    assert_eq!(e.report().faces, 2);
    assert_eq!(e.outerplanarity(), 1);
}

#[test]
fn kelly_rotation_at_interior_c() {
    let (p, e) = kelly(7).unwrap();
    let c3 = p.index_of("c3").unwrap();
    let got: Vec<&str> = e.rotation(c3).iter().map(|&v| p.id(v)).collect();
    let want = ["c4", "a3", "c2", "b4"];
    let s = got.iter().position(|&v| v == want[0]).unwrap();
    let cyc: Vec<&str> = (0..4).map(|i| got[(s + i) % 4]).collect();
    assert_eq!(cyc, want);
}

#[test]
fn kelly_layer_counts() {
    for (n, layers) in [(3, 1), (4, 2), (5, 2), (7, 3), (11, 5)] {
        let (p, e) = kelly(n).unwrap();
        let l = e.layering();
        assert_eq!(l.len(), layers, "K_{n}");
        assert!(l.check(&p.cover_graph()));
    }
}

#[test]
fn kelly_exterior_is_a_hexagon() {
    let (p, e) = kelly(6).unwrap();
    let Exterior::Face(f) = e.exterior(0) else { panic!("face expected") };
    let mut w = e.face_walk_ids(f);
    w.sort();
    assert_eq!(w.len(), 6);
    assert!(w.contains(&"a6".to_string()) && w.contains(&"b6".to_string()));
    let _ = p;
}

#[test]
fn nested_cycles_in_k11() {
    let (p, e) = kelly(11).unwrap();
    let nc = nested_kelly_cycles(&p, &e).unwrap();
    assert!(nc.cycles.len() >= 3);
    assert!(nc.depth >= 3);
    for i in 0..nc.cycles.len() {
        for j in 0..nc.cycles.len() {
            if i < j {
                assert!(nc.inside[j][i], "C_{} inside C_{}", i + 1, j + 1);
            }
        }
    }
    assert!(e.outerplanarity() >= nc.certified_layers);
}

#[test]
fn cycle_sides_of_triangle() {
    let g = graph(&["w", "x", "y", "z"], &[("w", "x"), ("w", "y"), ("w", "z"), ("x", "y"), ("y", "z"), ("x", "z")]);
    let r = rots(
        &g,
        &[("w", &["x", "y", "z"]), ("x", &["y", "w", "z"]), ("y", &["z", "w", "x"]), ("z", &["x", "w", "y"])],
    );
    let e = Embedding::from_id_rotations(g, &r).unwrap().with_outer_ids(&["x", "z", "y"]).unwrap();
    let cs = CycleSides::new(&e, &[1, 2, 3]).unwrap();
    assert_eq!(cs.side(&e, 0), Side::Inside);
    assert_eq!(cs.side(&e, 1), Side::On);
}

#[test]
fn min_outerplanarity_small() {
    let g = graph(&["x", "y", "z", "w"], &[("x", "y"), ("y", "z"), ("z", "w"), ("w", "x")]);
    assert_eq!(min_outerplanarity(&g, 1000).unwrap().k, 1);
    let k4 = graph(&["w", "x", "y", "z"], &[("w", "x"), ("w", "y"), ("w", "z"), ("x", "y"), ("y", "z"), ("x", "z")]);
    let r = min_outerplanarity(&k4, 1000).unwrap();
    assert_eq!(r.k, 2);
    assert_eq!(r.embedding.outerplanarity(), 2);
}

#[test]
fn induced_keeps_exterior_region() {
    let (p, e) = kelly(5).unwrap();
    let keep: BTreeSet<usize> = (0..p.len()).filter(|&v| !p.id(v).starts_with('d')).collect();
    let sub = e.induced(&keep);
    assert!(sub.validate().is_ok());
    let old: Vec<usize> = keep.iter().copied().collect();
    for v in e.outer_vertices() {
        if let Some(nv) = old.iter().position(|&x| x == v) {
            assert!(sub.is_outer(nv), "{} stays exterior", p.id(v));
        }
    }
}

#[test]
fn nesting_is_judged_against_the_original_drawing() {
    // The a1 component sits inside a cycle of the a4 component; once the
    // outer shell of that cycle is peeled, it is exterior again.
    let (p, e) = kelly(7).unwrap();
    let ids = ["a1", "a3", "a4", "a5", "a6", "a7", "b1", "b2", "b3", "b4", "b5", "b6", "b7", "c2", "c4", "c5", "d2", "d5"];
    let keep: BTreeSet<usize> = ids.iter().map(|s| p.require(s).unwrap()).collect();
    let sub = e.induced(&keep);
    let l = sub.layering();
    assert!(l.check(sub.graph()));
    assert_eq!(l.len(), 2);
    assert!(sub.outerplanarity() <= e.outerplanarity());
}
