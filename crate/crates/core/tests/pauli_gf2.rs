use proptest::prelude::*;
use tsc::gf2::{group_membership, BinMatrix, GroupSpan};
use tsc::{BitVec, Error, Pauli, PauliOp};

fn pauli_string(n: usize) -> impl Strategy<Value = String> {
    proptest::collection::vec(prop_oneof![Just('I'), Just('X'), Just('Y'), Just('Z')], n).prop_map(|v| v.into_iter().collect())
}

fn op(n: usize) -> impl Strategy<Value = PauliOp> {
    pauli_string(n).prop_map(|s| s.parse().unwrap())
}

// Commutation from the single-qubit table, qubit by qubit.
fn anticommutes_naive(a: &PauliOp, b: &PauliOp) -> bool {
    (0..a.n()).filter(|&q| {
        let (p, r) = (a.get(q), b.get(q));
        p != Pauli::I && r != Pauli::I && p != r
    }).count() % 2 == 1
}

fn bits(n: usize) -> impl Strategy<Value = BitVec> {
    proptest::collection::vec(any::<bool>(), n).prop_map(|v| BitVec::from_bools(&v))
}

proptest! {
    #[test]
    fn symplectic_form_matches_table(a in op(70), b in op(70)) {
        prop_assert_eq!(a.anticommutes(&b).unwrap(), anticommutes_naive(&a, &b));
        prop_assert_eq!(a.anticommutes(&b).unwrap(), b.anticommutes(&a).unwrap());
        prop_assert_eq!(a.symplectic_dual().dot(&b.symplectic()), a.anticommutes(&b).unwrap());
    }

    #[test]
    fn symplectic_form_is_bilinear(a in op(70), b in op(70), c in op(70)) {
        let ab = a.mul(&b).unwrap();
        let lhs = ab.anticommutes(&c).unwrap();
        prop_assert_eq!(lhs, a.anticommutes(&c).unwrap() ^ b.anticommutes(&c).unwrap());
        prop_assert!(!a.anticommutes(&a).unwrap());
    }

    #[test]
    fn product_is_qubitwise(a in op(40), b in op(40)) {
        let ab = a.mul(&b).unwrap();
        for q in 0..40 {
            prop_assert_eq!(ab.get(q), a.get(q).mul(b.get(q)));
        }
        prop_assert!(ab.mul(&b).unwrap() == a);
        prop_assert!(a.mul(&a).unwrap().is_identity());
    }

    #[test]
    fn string_and_symplectic_roundtrip(s in pauli_string(90)) {
        let p: PauliOp = s.parse().unwrap();
        prop_assert_eq!(p.to_string(), s.clone());
        prop_assert_eq!(PauliOp::from_symplectic(&p.symplectic()).unwrap(), p.clone());
        prop_assert_eq!(p.weight(), s.chars().filter(|&c| c != 'I').count());
        prop_assert_eq!(PauliOp::from_sparse(90, &p.terms()), p);
    }

    #[test]
    fn nullspace_vectors_are_killed(rows in proptest::collection::vec(bits(23), 1..15)) {
        let m = BinMatrix::from_rows(23, rows).unwrap();
        let null = m.nullspace();
        prop_assert_eq!(null.len() + m.rank(), 23);
        for v in &null {
            for r in m.rows() {
                prop_assert!(!r.dot(v));
            }
        }
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn span_solutions_resubstitute(rows in proptest::collection::vec(bits(17), 1..12), c in bits(12), noise in bits(17)) {
        let m = BinMatrix::from_rows(17, rows).unwrap();
        let c = c.slice(0, m.nrows());
        let v = m.combine(&c);
        let sol = m.in_span(&v).unwrap().expect("combination lies in the span");
        prop_assert_eq!(m.combine(&sol), v.clone());
        let w = v.xor(&noise);
        let mut bigger = m.clone();
        bigger.push_row(w.clone()).unwrap();
        let inside = m.in_span(&w).unwrap().is_some();
        prop_assert_eq!(inside, bigger.rank() == m.rank());
    }

    #[test]
    fn group_membership_finds_products(gens in proptest::collection::vec(op(12), 1..8), pick in bits(8)) {
        let mut target = PauliOp::identity(12);
        for i in pick.ones().filter(|&i| i < gens.len()) {
            target.mul_assign(&gens[i]).unwrap();
        }
        let idx = group_membership(&target, &gens).unwrap().expect("member");
        let mut back = PauliOp::identity(12);
        for i in idx {
            back.mul_assign(&gens[i]).unwrap();
        }
        prop_assert_eq!(back, target);
    }
}

#[test]
fn length_mismatch_is_an_error() {
    let a = PauliOp::identity(3);
    let b = PauliOp::identity(4);
    assert!(matches!(a.mul(&b), Err(Error::LengthMismatch(..))));
    assert!(a.anticommutes(&b).is_err());
    assert!("XQZ".parse::<PauliOp>().is_err());
    let span = GroupSpan::new(3, &[a]).unwrap();
    assert!(span.membership(&b).is_err());
}

#[test]
fn single_qubit_group() {
    let x: PauliOp = "X".parse().unwrap();
    let z: PauliOp = "Z".parse().unwrap();
    assert!(x.anticommutes(&z).unwrap());
    assert_eq!(x.mul(&z).unwrap().to_string(), "Y");
    let span = GroupSpan::new(1, &[x, z]).unwrap();
    assert_eq!(span.rank(), 2);
    assert!(span.contains(&"Y".parse().unwrap()));
}
