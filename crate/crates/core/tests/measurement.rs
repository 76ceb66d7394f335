use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tsc::decoder::sample_depolarizing;
use tsc::hypergraph::{Coord, Edge, Site};
use tsc::measurement::{
    check_decomposition, check_decomposition_op, decompose, measurement_counts, simulate_measurement_sequence, stabilizer_layers,
    synthesize_schedule, DecompositionFault, Tableau,
};
use tsc::{CodeInstance, CodeState, Hypergraph, Lattice, LatticeSpec, Pauli, PauliOp, Role, Schedule};

fn build(spec: LatticeSpec) -> CodeInstance {
    CodeInstance::build(&Lattice::generate(spec).unwrap()).unwrap()
}

/// Prism C_m × K2: outer ring edges 0..m, inner ring m..2m, spokes 2m..3m.
fn prism(m: usize) -> CodeInstance {
    let mut sites = Vec::new();
    for r in 0..2 {
        for i in 0..m {
            sites.push(Site::new(i as i64, r));
        }
    }
    let mut edges = Vec::new();
    for r in 0..2 {
        for i in 0..m {
            edges.push(Edge::link(r * m + i, r * m + (i + 1) % m));
        }
    }
    for i in 0..m {
        edges.push(Edge::link(i, m + i));
    }
    let c = Coord::from_integer(100);
    let h = Hypergraph::new(c, c, sites, edges).unwrap();
    assert!(h.validate().is_empty());
    CodeInstance::from_hypergraph(h, None).unwrap()
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

fn ring_target(code: &CodeInstance, m: usize) -> Vec<(usize, Pauli)> {
    let ids: Vec<usize> = (0..m).collect();
    let c = code.hypergraph().cycle_from_ids(&ids, Role::Other).unwrap();
    code.loop_operator(&c).unwrap().terms()
}

#[test]
fn odd_loops_reject_every_ordering() {
    for m in [3, 5, 7] {
        let code = prism(m);
        let target = ring_target(&code, m);
        assert_eq!(target.len(), m);
        for order in permutations(&(0..m).collect::<Vec<_>>()) {
            assert!(matches!(check_decomposition_op(&code, &target, &order), Err(DecompositionFault::Prefix(_))), "m={m} {order:?}");
        }
    }
}

#[test]
fn even_loops_admit_alternating_order() {
    for m in [4, 6] {
        let code = prism(m);
        let target = ring_target(&code, m);
        let order: Vec<usize> = (0..m).step_by(2).chain((1..m).step_by(2)).collect();
        assert_eq!(check_decomposition_op(&code, &target, &order), Ok(()));
        let ok = permutations(&(0..m).collect::<Vec<_>>()).iter().filter(|o| check_decomposition_op(&code, &target, o).is_ok()).count();
        assert!(ok > 0);
    }
}

/// Edge ids of a simple cycle in traversal order.
fn cyclic_order(code: &CodeInstance, s: usize) -> Vec<usize> {
    let h = code.hypergraph();
    let ids = code.stabilizers()[s].edge_ids();
    let mut order = vec![ids[0]];
    let mut at = h.edges()[ids[0]].sites[1];
    while order.len() < ids.len() {
        let next = *ids.iter().find(|&&e| !order.contains(&e) && h.edges()[e].contains(at)).unwrap();
        at = *h.edges()[next].sites.iter().find(|&&x| x != at).unwrap();
        order.push(next);
    }
    order
}

#[test]
fn honeycomb_hexagon_two_rounds() {
    let code = build(LatticeSpec::Honeycomb { lx: 3, ly: 3 });
    for s in code.stabilizer_ids(Role::Hexagon) {
        let k = cyclic_order(&code, s);
        let good = [k[0], k[2], k[4], k[1], k[3], k[5]];
        assert_eq!(check_decomposition(&code, s, &good), Ok(()));
        let bad = [k[0], k[1], k[2], k[3], k[4], k[5]];
        assert_eq!(check_decomposition(&code, s, &bad), Err(DecompositionFault::Prefix(1)));
        let sch = synthesize_schedule(&code, s).unwrap();
        assert_eq!(sch.levels.len(), 2);
        assert_eq!(sch.len(), 6);
    }
}

#[test]
fn product_mismatch_is_reported_separately() {
    let code = build(LatticeSpec::Honeycomb { lx: 2, ly: 2 });
    let s = code.stabilizer_ids(Role::Hexagon)[0];
    let k = cyclic_order(&code, s);
    assert!(matches!(check_decomposition(&code, s, &[k[0], k[2], k[4]]), Err(DecompositionFault::ProductMismatch(_))));
    assert!(matches!(check_decomposition(&code, s, &[9999]), Err(DecompositionFault::UnknownLink(9999))));
}

#[test]
fn five_squares_counts_and_levels() {
    let code = build(LatticeSpec::FiveSquares { n: 2 });
    let counts = measurement_counts(&code).unwrap();
    assert_eq!(counts[&Role::A], 8);
    assert_eq!(counts[&Role::B], 10);
    assert_eq!(counts[&Role::C], 40);
    assert_eq!(counts[&Role::D], 4);
    let c = synthesize_schedule(&code, code.stabilizer_ids(Role::C)[0]).unwrap();
    assert_eq!(c.levels.len(), 3);
}

#[test]
fn every_schedule_passes_the_checker() {
    for spec in [LatticeSpec::FiveSquares { n: 2 }, LatticeSpec::SquareOctagon { lx: 2, ly: 2 }, LatticeSpec::Honeycomb { lx: 3, ly: 2 }] {
        let code = build(spec);
        for s in 0..code.stabilizers().len() {
            if code.stabilizers()[s].role == Role::Other {
                continue;
            }
            let sch = synthesize_schedule(&code, s).unwrap();
            assert_eq!(check_decomposition(&code, s, &sch.order()), Ok(()), "{spec:?} stabilizer {s}");
            let mut d = decompose(&code, s).unwrap();
            let mut o = sch.order();
            d.sort_unstable();
            o.sort_unstable();
            assert_eq!(d, o);
            // within a level every factor commutes with the others
            for level in &sch.levels {
                for &a in level {
                    for &b in level {
                        assert!(!code.links()[a].anticommutes_terms(&code.links()[b].terms));
                    }
                }
            }
        }
    }
}

#[test]
fn layers_use_disjoint_links() {
    let code = build(LatticeSpec::FiveSquares { n: 2 });
    let scheds: Vec<Schedule> = (0..code.stabilizers().len()).map(|s| synthesize_schedule(&code, s).unwrap()).collect();
    let layers = stabilizer_layers(&scheds);
    assert_eq!(layers.iter().map(|l| l.len()).sum::<usize>(), scheds.len());
    for layer in layers {
        let mut seen = std::collections::HashSet::new();
        for s in layer {
            for l in scheds.iter().find(|x| x.stabilizer == s).unwrap().order() {
                assert!(seen.insert(l));
            }
        }
    }
}

#[test]
fn tableau_syndrome_agrees_with_symplectic() {
    let code = build(LatticeSpec::FiveSquares { n: 2 });
    let scheds: Vec<Schedule> = (0..code.stabilizers().len()).map(|s| synthesize_schedule(&code, s).unwrap()).collect();
    let base = CodeState::prepare(&code, scheds.clone(), 7).unwrap();
    for seed in 0..6 {
        let e = sample_depolarizing(code.num_qubits(), 0.04, seed).unwrap();
        let want = code.syndrome(&e).unwrap();
        let mut st = base.clone();
        st.apply_pauli(&e);
        for (i, sch) in scheds.iter().enumerate() {
            let r = simulate_measurement_sequence(&code, &mut st, i).unwrap();
            assert_eq!(r.outcomes.len(), sch.len());
            assert_eq!(r.syndrome, want.get(sch.stabilizer), "seed {seed} stabilizer {}", sch.stabilizer);
        }
        // a second pass reads the same syndrome
        for (i, sch) in scheds.iter().enumerate() {
            assert_eq!(st.measure(&code, i).syndrome, want.get(sch.stabilizer));
        }
    }
}

// Dense state-vector oracle for the tableau on a few qubits.
#[derive(Clone)]
struct Dense {
    n: usize,
    amp: Vec<(f64, f64)>,
}

impl Dense {
    fn zero(n: usize) -> Self {
        let mut amp = vec![(0.0, 0.0); 1 << n];
        amp[0] = (1.0, 0.0);
        Dense { n, amp }
    }

    fn apply(&self, p: &PauliOp) -> Vec<(f64, f64)> {
        let (mut x, mut z, mut ny) = (0usize, 0usize, 0);
        for q in 0..self.n {
            let (a, b) = p.get(q).bits();
            x |= (a as usize) << q;
            z |= (b as usize) << q;
            ny += (a && b) as usize;
        }
        let mut out = vec![(0.0, 0.0); self.amp.len()];
        for (b, &(re, im)) in self.amp.iter().enumerate() {
            let sgn = if (b & z).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
            let (mut r, mut i) = (re * sgn, im * sgn);
            for _ in 0..ny % 4 {
                (r, i) = (-i, r);
            }
            out[b ^ x] = (r, i);
        }
        out
    }

    fn project(&mut self, p: &PauliOp, outcome: bool) -> f64 {
        let pa = self.apply(p);
        let s = if outcome { -1.0 } else { 1.0 };
        let mut norm = 0.0;
        for (a, b) in self.amp.iter_mut().zip(pa) {
            *a = ((a.0 + s * b.0) / 2.0, (a.1 + s * b.1) / 2.0);
            norm += a.0 * a.0 + a.1 * a.1;
        }
        if norm > 1e-12 {
            let k = norm.sqrt();
            for a in self.amp.iter_mut() {
                *a = (a.0 / k, a.1 / k);
            }
        }
        norm
    }
}

fn small_op(n: usize) -> impl Strategy<Value = PauliOp> {
    proptest::collection::vec(0u8..4, n).prop_map(move |v| {
        let mut p = PauliOp::identity(n);
        for (q, c) in v.into_iter().enumerate() {
            p.set(q, [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z][c as usize]);
        }
        p
    })
}

proptest! {
    #[test]
    fn tableau_matches_state_vector(ops in proptest::collection::vec((small_op(4), any::<bool>()), 1..14), seed in any::<u64>()) {
        let n = 4;
        let mut tab = Tableau::zero_state(n);
        let mut psi = Dense::zero(n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for (p, is_error) in ops {
            if p.is_identity() {
                continue;
            }
            if is_error {
                tab.apply_pauli(&p);
                psi.amp = psi.apply(&p);
                continue;
            }
            let mut probe = psi.clone();
            let p0 = probe.project(&p, false);
            let out = tab.measure(&p, &mut rng);
            if p0 > 1.0 - 1e-9 {
                prop_assert!(!out);
            } else if p0 < 1e-9 {
                prop_assert!(out);
            } else {
                prop_assert!((p0 - 0.5).abs() < 1e-9);
            }
            let pr = psi.project(&p, out);
            prop_assert!(pr > 1e-9);
        }
    }
}
