use tsc::lattice::{load, load_lattice, save, save_lattice};
use tsc::{CodeInstance, Error, Family, Lattice, LatticeSpec, Role};

#[test]
fn honeycomb_counts_and_even_faces() {
    let l = Lattice::generate(LatticeSpec::Honeycomb { lx: 2, ly: 2 }).unwrap();
    let h = &l.hypergraph;
    assert_eq!((h.num_sites(), h.num_edges(), h.num_triangles()), (8, 12, 0));
    for (lx, ly) in [(2, 2), (3, 4), (5, 3)] {
        let l = Lattice::generate(LatticeSpec::Honeycomb { lx, ly }).unwrap();
        assert!(l.hypergraph.validate().is_empty());
        let faces: Vec<_> = l.cycles.as_ref().unwrap().iter().filter(|c| c.role == Role::Hexagon).collect();
        assert_eq!(faces.len(), lx * ly);
        assert!(faces.iter().all(|c| c.len() % 2 == 0));
    }
}

#[test]
fn square_octagon_faces() {
    let l = Lattice::generate(LatticeSpec::SquareOctagon { lx: 3, ly: 2 }).unwrap();
    assert!(l.hypergraph.validate().is_empty());
    let cycles = l.cycles.as_ref().unwrap();
    let a: Vec<_> = cycles.iter().filter(|c| c.role == Role::A).collect();
    let d: Vec<_> = cycles.iter().filter(|c| c.role == Role::D).collect();
    assert!(!a.is_empty() && !d.is_empty());
    assert!(a.iter().all(|c| c.len() == 8 && c.edge_ids().iter().all(|&e| !l.hypergraph.is_triangle(e))));
    assert!(d.iter().all(|c| c.len() == 4));
    assert_eq!(CodeInstance::build(&l).unwrap().k(), 2);
}

#[test]
fn five_squares_sizes() {
    for (n, q) in [(2, 160), (4, 640), (8, 2560)] {
        let l = Lattice::generate(LatticeSpec::FiveSquares { n }).unwrap();
        assert_eq!(l.hypergraph.num_sites(), q);
        assert!(l.hypergraph.validate().is_empty());
        assert_eq!(l.family, Some(Family::FiveSquares));
        assert_eq!(l.layout.as_ref().unwrap().num_cells(), 2 * n * n);
    }
}

#[test]
fn small_sizes_rejected() {
    for spec in [LatticeSpec::FiveSquares { n: 1 }, LatticeSpec::Honeycomb { lx: 1, ly: 3 }, LatticeSpec::SquareOctagon { lx: 2, ly: 0 }] {
        assert!(matches!(Lattice::generate(spec), Err(Error::Size(_))), "{spec:?}");
    }
}

#[test]
fn save_load_roundtrip() {
    let l = Lattice::generate(LatticeSpec::FiveSquares { n: 2 }).unwrap();
    let text = save_lattice(&l);
    let back = load_lattice(&text).unwrap();
    assert_eq!(back.hypergraph, l.hypergraph);
    assert_eq!(save_lattice(&back), text);
    assert_eq!(back.family, Some(Family::FiveSquares));
    let plain = load(&save(&l.hypergraph)).unwrap();
    assert_eq!(plain, l.hypergraph);
    let a = CodeInstance::build(&l).unwrap();
    let b = CodeInstance::build(&back).unwrap();
    assert_eq!(a.k(), b.k());
    assert_eq!(a.stabilizers().len(), b.stabilizers().len());
}

#[test]
fn parse_errors_name_the_line() {
    let text = "torus 4 4\nsite 0 0 0\nsite 1 oops 0\n";
    match load(text) {
        Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
        other => panic!("expected parse error, got {other:?}"),
    }
    assert!(load("torus 4 4\nsite 0 0 0\nlink 0 0 5\n").is_err());
    assert!(load("bogus 1 2\n").is_err());
}

#[test]
fn hand_edited_valence_violation_loads() {
    let text = "torus 10 10\nsite 0 0 0\nsite 1 1 0\nsite 2 2 0\nsite 3 3 0\nsite 4 4 0\n\
                link 0 0 1\nlink 1 0 2\nlink 2 0 3\nlink 3 0 4\n";
    let h = load(text).unwrap();
    let v = h.validate();
    assert!(v.iter().any(|x| x.to_string() == "site 0 has 4 incident edges"), "{v:?}");
}
