//! Five-squares decoders: Pauli-frame D/B steps followed by matching on two sublattices.

mod anneal;
mod matching;
mod noise;

pub use anneal::{anneal_decode, anneal_min, AnnealOutcome, AnnealParams, AnnealState};
pub use matching::{brute_force_pairing, components, mwpm, PairedDefects, PlaquetteGraph};
pub use noise::{beta_of_p, sample_depolarizing, sample_depolarizing_with};

use std::fmt;
use std::str::FromStr;

use crate::bits::BitVec;
use crate::code::CodeInstance;
use crate::error::{Error, Result};
use crate::hypergraph::Role;
use crate::lattice::{Layout, NW_CORNERS, SQUARES};
use crate::pauli::{Pauli, PauliOp};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DecoderKind {
    Simple,
    Improved,
    Anneal,
}

impl DecoderKind {
    pub fn name(self) -> &'static str {
        match self {
            DecoderKind::Simple => "simple",
            DecoderKind::Improved => "improved",
            DecoderKind::Anneal => "anneal",
        }
    }
}

impl fmt::Display for DecoderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DecoderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "simple" => Ok(DecoderKind::Simple),
            "improved" => Ok(DecoderKind::Improved),
            "anneal" => Ok(DecoderKind::Anneal),
            _ => Err(Error::Config(format!("unknown decoder {s:?}"))),
        }
    }
}

/// A/C stabilizers as vertices, qubits at locations 1, 2, 19, 20 as edges.
#[derive(Clone, Debug)]
pub struct DefectGraph {
    /// Stabilizer id of each vertex, increasing.
    pub vertices: Vec<usize>,
    pub graph: PlaquetteGraph,
    pub component: Vec<usize>,
    pub num_components: usize,
    vertex_of: Vec<Option<usize>>,
}

impl DefectGraph {
    pub fn build(code: &CodeInstance) -> Result<Self> {
        let layout = code.layout().ok_or_else(|| Error::Decoder("code has no five-squares layout".into()))?;
        let mut vertex_of = vec![None; code.stabilizers().len()];
        let mut vertices = Vec::new();
        for (s, c) in code.stabilizers().iter().enumerate() {
            if matches!(c.role, Role::A | Role::C) {
                vertex_of[s] = Some(vertices.len());
                vertices.push(s);
            }
        }
        let mut edges = Vec::new();
        for cell in 0..layout.num_cells() {
            for loc in [1, 2, 19, 20] {
                let q = layout.qubit(cell, loc);
                let ends: Vec<usize> = code
                    .stabilizers_at(q)
                    .iter()
                    .filter(|&&(_, p)| p.anticommutes(Pauli::Z))
                    .filter_map(|&(s, _)| vertex_of[s as usize])
                    .collect();
                if ends.len() != 2 {
                    return Err(Error::Decoder(format!("qubit {q} touches {} A/C stabilizers", ends.len())));
                }
                edges.push((ends[0], ends[1], q));
            }
        }
        let graph = PlaquetteGraph::new(vertices.len(), &edges);
        let component = components(&graph);
        let num_components = component.iter().max().map_or(0, |m| m + 1);
        Ok(DefectGraph { vertices, graph, component, num_components, vertex_of })
    }

    pub fn vertex(&self, stabilizer: usize) -> Option<usize> {
        self.vertex_of.get(stabilizer).copied().flatten()
    }
}

/// Precomputed per-cell data shared by the five-squares decoders.
#[derive(Clone, Debug)]
pub struct DecoderContext<'a> {
    pub code: &'a CodeInstance,
    pub defects: DefectGraph,
    layout: Layout,
    /// B stabilizer of each cell.
    b_stab: Vec<usize>,
    /// D stabilizers of each cell, in `SQUARES` order.
    d_stab: Vec<[usize; 5]>,
    is_b: Vec<bool>,
}

/// Correction produced by a decoder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decoded {
    pub correction: PauliOp,
    /// Squares where the improved corner rule had no admissible corner.
    pub fallbacks: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodeResult {
    pub correction: PauliOp,
    pub success: bool,
    /// Anticommutation of E·E_guessed with X̄1, Z̄1, X̄2, Z̄2.
    pub class_bits: Vec<bool>,
}

impl<'a> DecoderContext<'a> {
    pub fn new(code: &'a CodeInstance) -> Result<Self> {
        let layout = code.layout().cloned().ok_or_else(|| Error::Decoder("code has no five-squares layout".into()))?;
        let defects = DefectGraph::build(code)?;
        let mut b_stab = vec![usize::MAX; layout.num_cells()];
        let mut d_stab = vec![[usize::MAX; 5]; layout.num_cells()];
        for s in code.stabilizer_ids(Role::D) {
            let t = code.stabilizer_terms(s);
            let (cell, loc) = layout.locate(t[0].0);
            let sq = SQUARES.iter().position(|sq| sq.contains(&loc)).expect("square location");
            let mut want: Vec<usize> = SQUARES[sq].iter().map(|&l| layout.qubit(cell, l)).collect();
            want.sort_unstable();
            let got: Vec<usize> = t.iter().map(|x| x.0).collect();
            if got != want {
                return Err(Error::Decoder(format!("D stabilizer {s} is not a square")));
            }
            d_stab[cell][sq] = s;
        }
        for s in code.stabilizer_ids(Role::B) {
            let q4: Vec<usize> = code
                .stabilizer_terms(s)
                .iter()
                .filter(|&&(q, p)| layout.locate(q).1 == 4 && p == Pauli::Y)
                .map(|x| x.0)
                .collect();
            match q4.as_slice() {
                [q] => b_stab[layout.locate(*q).0] = s,
                _ => return Err(Error::Decoder(format!("B stabilizer {s} has no unique Y at location 4"))),
            }
        }
        if b_stab.contains(&usize::MAX) || d_stab.iter().flatten().any(|&s| s == usize::MAX) {
            return Err(Error::Decoder("missing B or D stabilizers".into()));
        }
        let mut is_b = vec![false; code.stabilizers().len()];
        for &s in &b_stab {
            is_b[s] = true;
        }
        Ok(DecoderContext { code, defects, layout, b_stab, d_stab, is_b })
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    fn apply(&self, corr: &mut PauliOp, s: &mut BitVec, q: usize, p: Pauli) {
        corr.mul_at(q, p);
        for &(st, sp) in self.code.stabilizers_at(q) {
            if p.anticommutes(sp) {
                s.flip(st as usize);
            }
        }
    }

    /// B stabilizers flipped by X on qubit q.
    fn b_flips(&self, q: usize) -> impl Iterator<Item = usize> + '_ {
        self.code
            .stabilizers_at(q)
            .iter()
            .filter(|&&(st, sp)| self.is_b[st as usize] && sp.anticommutes(Pauli::X))
            .map(|&(st, _)| st as usize)
    }

    fn finish(&self, s: &BitVec, mut corr: PauliOp, mut frame: BitVec, fallbacks: usize) -> Result<Decoded> {
        // Z on location 4 for every remaining B defect
        for cell in 0..self.layout.num_cells() {
            if frame.get(self.b_stab[cell]) {
                self.apply(&mut corr, &mut frame, self.layout.qubit(cell, 4), Pauli::Z);
            }
        }
        let dg = &self.defects;
        for comp in 0..dg.num_components {
            let defects: Vec<usize> =
                (0..dg.vertices.len()).filter(|&v| dg.component[v] == comp && frame.get(dg.vertices[v])).collect();
            let m = mwpm(&dg.graph, &defects)?;
            for path in &m.paths {
                for &q in path {
                    self.apply(&mut corr, &mut frame, q, Pauli::Z);
                }
            }
        }
        if let Some(bad) = frame.first_one() {
            return Err(Error::Decoder(format!("residual syndrome on stabilizer {bad}")));
        }
        debug_assert_eq!(&self.code.syndrome(&corr)?, s);
        Ok(Decoded { correction: corr, fallbacks })
    }

    fn check(&self, s: &BitVec) -> Result<()> {
        if s.len() != self.code.stabilizers().len() {
            return Err(Error::LengthMismatch(s.len(), self.code.stabilizers().len()));
        }
        Ok(())
    }

    /// X at the north-west corner of every square with a D defect, Z at
    /// location 4 for every remaining B defect, then matching.
    pub fn decode_simple(&self, s: &BitVec) -> Result<Decoded> {
        self.check(s)?;
        let mut frame = s.clone();
        let mut corr = PauliOp::identity(self.code.num_qubits());
        for cell in 0..self.layout.num_cells() {
            for sq in 0..5 {
                if frame.get(self.d_stab[cell][sq]) {
                    self.apply(&mut corr, &mut frame, self.layout.qubit(cell, NW_CORNERS[sq]), Pauli::X);
                }
            }
        }
        self.finish(s, corr, frame, 0)
    }

    /// As `decode_simple`, but the X corrections are placed to cancel B
    /// defects: one B-flipping corner when the cell's B is non-trivial,
    /// corners leaving every trivial B intact otherwise.
    pub fn decode_improved(&self, s: &BitVec) -> Result<Decoded> {
        self.check(s)?;
        let mut frame = s.clone();
        let mut corr = PauliOp::identity(self.code.num_qubits());
        let mut fallbacks = 0;
        for cell in 0..self.layout.num_cells() {
            let b = self.b_stab[cell];
            for sq in 0..5 {
                if !frame.get(self.d_stab[cell][sq]) {
                    continue;
                }
                let mut corners: Vec<usize> = SQUARES[sq].iter().map(|&l| self.layout.qubit(cell, l)).collect();
                corners.sort_unstable();
                let harmless = |q: usize| self.b_flips(q).all(|st| st == b || frame.get(st));
                let flips_b = |q: usize| self.b_flips(q).any(|st| st == b);
                let choice = if frame.get(b) {
                    corners
                        .iter()
                        .copied()
                        .find(|&q| flips_b(q) && harmless(q))
                        .or_else(|| corners.iter().copied().find(|&q| !flips_b(q) && harmless(q)))
                } else {
                    corners.iter().copied().find(|&q| self.b_flips(q).all(|st| frame.get(st)))
                };
                let q = match choice {
                    Some(q) => q,
                    None => {
                        fallbacks += 1;
                        self.layout.qubit(cell, NW_CORNERS[sq])
                    }
                };
                self.apply(&mut corr, &mut frame, q, Pauli::X);
            }
        }
        self.finish(s, corr, frame, fallbacks)
    }

    pub fn decode(&self, kind: DecoderKind, s: &BitVec, seed: u64, params: &AnnealParams) -> Result<Decoded> {
        match kind {
            DecoderKind::Simple => self.decode_simple(s),
            DecoderKind::Improved => self.decode_improved(s),
            DecoderKind::Anneal => Ok(Decoded { correction: anneal_decode(self, s, params, seed)?.correction, fallbacks: 0 }),
        }
    }
}

/// Success iff E·E_guessed commutes with every bare logical.
pub fn judge(code: &CodeInstance, e: &PauliOp, guess: &PauliOp) -> Result<DecodeResult> {
    let o = e.mul(guess)?;
    let syn = code.syndrome(&o)?;
    if let Some(bad) = syn.first_one() {
        return Err(Error::Decoder(format!("E·E_guessed violates stabilizer {bad}")));
    }
    let class_bits = code.logical_bits(&o)?;
    Ok(DecodeResult { correction: guess.clone(), success: class_bits.iter().all(|b| !b), class_bits })
}

/// Gauge-equivalent form with X only at north-west corners and Z only at
/// locations 1, 2, 4, 19, 20 of each cell.
pub fn reduce_error(code: &CodeInstance, e: &PauliOp) -> Result<PauliOp> {
    let layout = code.layout().ok_or_else(|| Error::Decoder("code has no five-squares layout".into()))?;
    if e.n() != code.num_qubits() {
        return Err(Error::LengthMismatch(e.n(), code.num_qubits()));
    }
    let links = code.links();
    let solid: std::collections::HashMap<(usize, usize), usize> = links
        .iter()
        .enumerate()
        .filter(|(_, l)| l.generator)
        .map(|(i, l)| {
            let (a, b) = (l.terms[0].0, l.terms[1].0);
            ((a.min(b), a.max(b)), i)
        })
        .collect();
    let mut out = e.clone();
    let mul_link = |out: &mut PauliOp, a: usize, b: usize| -> Result<()> {
        let &i = solid
            .get(&(a.min(b), a.max(b)))
            .ok_or_else(|| Error::Decoder(format!("no gauge link between qubits {a} and {b}")))?;
        for &(q, p) in &links[i].terms {
            out.mul_at(q, p);
        }
        Ok(())
    };
    for cell in 0..layout.num_cells() {
        let q = |l: usize| layout.qubit(cell, l);
        for sq in SQUARES {
            // corners NW, SW, SE, NE; walk each X back to NW along NE → NW
            for k in [1usize, 2, 3] {
                if out.get(q(sq[k])).bits().0 {
                    let path: &[(usize, usize)] = match k {
                        1 => &[(0, 1)],
                        2 => &[(2, 3), (3, 0)],
                        _ => &[(3, 0)],
                    };
                    for &(i, j) in path {
                        mul_link(&mut out, q(sq[i]), q(sq[j]))?;
                    }
                }
            }
        }
    }
    // internal Z: move to location 4 along a spanning tree of dashed pairs and
    // truncated D pairs (each D pair drags a Z pair onto external qubits)
    const TREE: [(usize, usize); 11] =
        [(6, 4), (9, 4), (3, 4), (10, 3), (13, 3), (7, 6), (12, 7), (17, 7), (18, 17), (16, 18), (11, 16)];
    const D_PAIRS: [((usize, usize), (usize, usize)); 4] = [((3, 4), (1, 2)), ((6, 7), (5, 8)), ((13, 16), (14, 15)), ((17, 18), (19, 20))];
    for cell in 0..layout.num_cells() {
        let q = |l: usize| layout.qubit(cell, l);
        for &(child, parent) in TREE.iter().rev() {
            if out.get(q(child)).bits().1 {
                let (a, b) = (child.min(parent), child.max(parent));
                out.mul_at(q(a), Pauli::Z);
                out.mul_at(q(b), Pauli::Z);
                if let Some(&(_, (x, y))) = D_PAIRS.iter().find(|(p, _)| *p == (a, b)) {
                    out.mul_at(q(x), Pauli::Z);
                    out.mul_at(q(y), Pauli::Z);
                }
            }
        }
    }
    for cell in 0..layout.num_cells() {
        for loc in [5, 8, 14, 15] {
            let a = layout.qubit(cell, loc);
            if out.get(a).bits().1 {
                let partner = links
                    .iter()
                    .filter(|l| l.generator && l.terms.iter().all(|t| t.1 == Pauli::Z) && l.terms.iter().any(|t| t.0 == a))
                    .flat_map(|l| l.terms.iter().map(|t| t.0))
                    .find(|&b| b != a && [1, 2, 19, 20].contains(&layout.locate(b).1))
                    .ok_or_else(|| Error::Decoder(format!("external qubit {a} has no ZZ partner")))?;
                out.mul_at(a, Pauli::Z);
                out.mul_at(partner, Pauli::Z);
            }
        }
    }
    for qb in out.support() {
        let (_, loc) = layout.locate(qb);
        let (x, z) = out.get(qb).bits();
        if (x && !NW_CORNERS.contains(&loc)) || (z && ![1, 2, 4, 19, 20].contains(&loc)) {
            return Err(Error::Decoder(format!("reduction left {} on qubit {qb}", out.get(qb).to_char())));
        }
    }
    Ok(out)
}
