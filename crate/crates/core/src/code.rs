//! Edge operators, gauge group, loop-operator classification and code verification.

use std::collections::HashMap;
use std::fmt;

use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::gf2::{BinMatrix, GroupSpan};
use crate::hypergraph::{Cycle, Hypergraph, Role};
use crate::lattice::{Family, Lattice, Layout};
use crate::pauli::{Pauli, PauliOp};

/// Pinned per-incidence Paulis, keyed by edge id, aligned with `Edge::sites`.
pub type Pins = HashMap<usize, Vec<Pauli>>;

/// Sparse operator: (qubit, Pauli) terms with distinct qubits.
pub type Terms = Vec<(usize, Pauli)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeOperatorSet {
    n: usize,
    ops: Vec<Terms>,
}

impl EdgeOperatorSet {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn terms(&self, e: usize) -> &Terms {
        &self.ops[e]
    }

    pub fn op(&self, e: usize) -> PauliOp {
        PauliOp::from_sparse(self.n, &self.ops[e])
    }

    /// Overrides the Pauli of edge `e` at one of its sites (for mutation tests).
    pub fn set_term(&mut self, e: usize, site: usize, p: Pauli) {
        for t in self.ops[e].iter_mut() {
            if t.0 == site {
                t.1 = p;
            }
        }
    }
}

/// Chooses, site by site, a permutation of {X, Y, Z} over the incident edges.
/// Triangles always act by Z; pinned values are honored; the remaining edges
/// take the unused Paulis in increasing edge-id order.
pub fn assign_edge_operators(h: &Hypergraph, pins: Option<&Pins>) -> Result<EdgeOperatorSet> {
    let empty = Pins::new();
    let pins = pins.unwrap_or(&empty);
    for (&e, ps) in pins {
        let edge = h.edge(e)?;
        if ps.len() != edge.sites.len() {
            return Err(Error::Unsatisfiable {
                site: edge.sites[0],
                msg: format!("pin for edge {e} has {} entries", ps.len()),
            });
        }
    }
    let mut ops: Vec<Terms> = h.edges().iter().map(|e| e.sites.iter().map(|&s| (s, Pauli::I)).collect()).collect();
    for s in 0..h.num_sites() {
        let inc = h.edges_at(s);
        if inc.len() > 3 {
            return Err(Error::Unsatisfiable { site: s, msg: format!("{} incident edges", inc.len()) });
        }
        let mut used: Vec<Pauli> = Vec::new();
        let mut free = Vec::new();
        for &e in inc {
            let edge = &h.edges()[e];
            let slot = edge.sites.iter().position(|&x| x == s).expect("incidence");
            let pinned = pins.get(&e).map(|ps| ps[slot]);
            let fixed = if edge.is_triangle() {
                if let Some(p) = pinned {
                    if p != Pauli::Z {
                        return Err(Error::Unsatisfiable {
                            site: s,
                            msg: format!("triangle {e} pinned to {p:?}, must be Z"),
                        });
                    }
                }
                Some(Pauli::Z)
            } else {
                pinned
            };
            match fixed {
                Some(Pauli::I) => {
                    return Err(Error::Unsatisfiable { site: s, msg: format!("edge {e} pinned to identity") })
                }
                Some(p) => {
                    if used.contains(&p) {
                        return Err(Error::Unsatisfiable {
                            site: s,
                            msg: format!("two incident edges act by {p:?}"),
                        });
                    }
                    used.push(p);
                    ops[e][slot].1 = p;
                }
                None => free.push((e, slot)),
            }
        }
        let mut avail = Pauli::NONTRIVIAL.iter().filter(|p| !used.contains(p));
        for (e, slot) in free {
            ops[e][slot].1 = *avail.next().expect("at most three incident edges");
        }
    }
    Ok(EdgeOperatorSet { n: h.num_sites(), ops })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LinkKind {
    Solid { edge: usize },
    /// Dashed link of a triangle: pair 0 = (s0,s1), 1 = (s1,s2), 2 = (s0,s2).
    Dashed { triangle: usize, pair: u8 },
}

/// Two-qubit link operator of the graph obtained by breaking up triangles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkOp {
    pub kind: LinkKind,
    pub terms: [(usize, Pauli); 2],
    /// Member of the independent generating set K′ (solid links, dashed pairs 0 and 1).
    pub generator: bool,
}

impl LinkOp {
    pub fn op(&self, n: usize) -> PauliOp {
        PauliOp::from_sparse(n, &self.terms)
    }

    #[inline]
    pub fn anticommutes_terms(&self, other: &[(usize, Pauli)]) -> bool {
        let mut par = false;
        for &(q, p) in &self.terms {
            for &(r, s) in other {
                if q == r && p.anticommutes(s) {
                    par ^= true;
                }
            }
        }
        par
    }
}

/// All solid and dashed link operators, solid links first in edge order.
pub fn link_operators(h: &Hypergraph, ops: &EdgeOperatorSet) -> Vec<LinkOp> {
    let mut out = Vec::new();
    for (e, edge) in h.edges().iter().enumerate() {
        if !edge.is_triangle() {
            let t = ops.terms(e);
            out.push(LinkOp { kind: LinkKind::Solid { edge: e }, terms: [t[0], t[1]], generator: true });
        }
    }
    for (e, edge) in h.edges().iter().enumerate() {
        if edge.is_triangle() {
            let s = &edge.sites;
            for (pair, (a, b)) in [(s[0], s[1]), (s[1], s[2]), (s[0], s[2])].into_iter().enumerate() {
                out.push(LinkOp {
                    kind: LinkKind::Dashed { triangle: e, pair: pair as u8 },
                    terms: [(a, Pauli::Z), (b, Pauli::Z)],
                    generator: pair < 2,
                });
            }
        }
    }
    out
}

/// Gauge generators K′: every solid link operator and two dashed ZZ per triangle.
pub fn gauge_generators(h: &Hypergraph, ops: &EdgeOperatorSet) -> Vec<PauliOp> {
    link_operators(h, ops).iter().filter(|l| l.generator).map(|l| l.op(h.num_sites())).collect()
}

fn loop_terms(h: &Hypergraph, ops: &EdgeOperatorSet, edges: &BitVec) -> Terms {
    let mut acc: HashMap<usize, Pauli> = HashMap::new();
    for e in edges.ones() {
        for &(q, p) in ops.terms(e) {
            let v = acc.entry(q).or_insert(Pauli::I);
            *v = v.mul(p);
        }
    }
    let _ = h;
    let mut t: Terms = acc.into_iter().filter(|&(_, p)| p != Pauli::I).collect();
    t.sort_unstable();
    t
}

/// W(M) = product of K_e over the cycle, up to phase.
pub fn loop_operator(h: &Hypergraph, ops: &EdgeOperatorSet, m: &Cycle) -> Result<PauliOp> {
    if let Some(site) = h.odd_site(&m.edges) {
        return Err(Error::NotCycle { site });
    }
    Ok(PauliOp::from_sparse(h.num_sites(), &loop_terms(h, ops, &m.edges)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogicalPair {
    pub x: Cycle,
    pub z: Cycle,
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub stabilizers: Vec<Cycle>,
    pub logicals: Vec<LogicalPair>,
    pub k: usize,
}

/// Sparse triangle-overlap form on a cycle list: for each cycle, the list of
/// cycles it pairs with oddly.
fn overlap_rows(h: &Hypergraph, cycles: &[Cycle]) -> Vec<Vec<usize>> {
    let mut by_tri: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, c) in cycles.iter().enumerate() {
        for e in c.edges.and(h.triangle_mask()).ones() {
            by_tri.entry(e).or_default().push(i);
        }
    }
    let mut pairs: HashMap<(usize, usize), u32> = HashMap::new();
    for list in by_tri.values() {
        for (a, &i) in list.iter().enumerate() {
            for &j in &list[a + 1..] {
                *pairs.entry((i, j)).or_default() += 1;
            }
        }
    }
    let mut rows = vec![Vec::new(); cycles.len()];
    for ((i, j), c) in pairs {
        if c % 2 == 1 {
            rows[i].push(j);
            rows[j].push(i);
        }
    }
    for r in rows.iter_mut() {
        r.sort_unstable();
    }
    rows
}

fn combine(h: &Hypergraph, a: &Cycle, b: &Cycle) -> Cycle {
    let edges = a.edges.xor(&b.edges);
    let w = (a.winding.0 ^ b.winding.0, a.winding.1 ^ b.winding.1);
    debug_assert_eq!(h.winding(&Cycle { edges: edges.clone(), winding: w, role: Role::Other }).unwrap(), w);
    Cycle { edges, winding: w, role: Role::Other }
}

fn support_weight(h: &Hypergraph, edges: &BitVec) -> usize {
    h.cycle_support(edges).len()
}

/// Splits a spanning cycle list into stabilizers (radical of Δ) and a
/// symplectic basis of logical pairs. Cycles with an all-zero Δ row are kept
/// verbatim, so their role tags survive.
pub fn classify_cycles(h: &Hypergraph, cycles: &[Cycle]) -> Result<Classification> {
    for c in cycles {
        if h.triangle_overlap(c, c) {
            return Err(Error::OddQuotient(1));
        }
    }
    let rows = overlap_rows(h, cycles);
    let mut stabilizers: Vec<Cycle> = Vec::new();
    let mut pool: Vec<Cycle> = Vec::new();
    for (c, r) in cycles.iter().zip(&rows) {
        if r.is_empty() {
            stabilizers.push(c.clone());
        } else {
            pool.push(c.clone());
        }
    }
    let radical_tagged = stabilizers.len();
    let mut pairs: Vec<(Cycle, Cycle)> = Vec::new();
    loop {
        let delta = |a: &Cycle, b: &Cycle| h.triangle_overlap(a, b);
        let rank_key = |c: &Cycle| (c.winding == (false, false), support_weight(h, &c.edges));
        let mut order: Vec<usize> = (0..pool.len()).collect();
        order.sort_by_key(|&i| (rank_key(&pool[i]), i));
        let mut chosen = None;
        'outer: for &i in &order {
            for &j in &order {
                if i != j && delta(&pool[i], &pool[j]) {
                    chosen = Some((i, j));
                    break 'outer;
                }
            }
        }
        let Some((i, j)) = chosen else { break };
        let (a, b) = (pool[i].clone(), pool[j].clone());
        let mut next = Vec::new();
        for (t, v) in pool.iter().enumerate() {
            if t == i || t == j {
                continue;
            }
            let mut v = v.clone();
            if delta(&v, &b) {
                v = combine(h, &v, &a);
            }
            if delta(&v, &a) {
                v = combine(h, &v, &b);
            }
            next.push(v);
        }
        pool = next;
        pairs.push((a, b));
    }
    for v in pool {
        if !v.edges.is_zero() {
            stabilizers.push(Cycle { role: if v.role.is_logical() { Role::Other } else { v.role }, ..v });
        }
    }
    let k = pairs.len();
    let local: Vec<&Cycle> = stabilizers[..radical_tagged].iter().collect();
    let mut logicals = Vec::new();
    for (idx, (a, b)) in pairs.into_iter().enumerate() {
        let a = descend(h, a, &local);
        let b = descend(h, b, &local);
        let (x, z) = if a.winding == (false, true) && b.winding != (false, true) { (b, a) } else { (a, b) };
        let (rx, rz) = match idx {
            0 => (Role::X1, Role::Z1),
            1 => (Role::X2, Role::Z2),
            _ => (Role::Other, Role::Other),
        };
        logicals.push(LogicalPair { x: Cycle { role: rx, ..x }, z: Cycle { role: rz, ..z } });
    }
    Ok(Classification { stabilizers, logicals, k })
}

/// Greedy weight descent of a logical representative by adding radical cycles.
fn descend(h: &Hypergraph, start: Cycle, stabs: &[&Cycle]) -> Cycle {
    let mut deg: HashMap<usize, u8> = HashMap::new();
    for e in start.edges.ones() {
        for &s in &h.edges()[e].sites {
            *deg.entry(s).or_default() += 1;
        }
    }
    let mut cur = start;
    loop {
        let mut improved = false;
        for s in stabs {
            if s.winding != (false, false) {
                continue;
            }
            let mut change: HashMap<usize, i32> = HashMap::new();
            for e in s.edges.ones() {
                let sign = if cur.edges.get(e) { -1 } else { 1 };
                for &site in &h.edges()[e].sites {
                    *change.entry(site).or_default() += sign;
                }
            }
            let mut delta = 0i64;
            for (&site, &c) in &change {
                let old = *deg.get(&site).unwrap_or(&0) as i32;
                let new = old + c;
                delta += (new == 2) as i64 - (old == 2) as i64;
            }
            let dl = s.edges.ones().map(|e| if cur.edges.get(e) { -1i64 } else { 1 }).sum::<i64>();
            if delta < 0 || (delta == 0 && dl < 0) {
                for (&site, &c) in &change {
                    let d = deg.entry(site).or_default();
                    *d = (*d as i32 + c) as u8;
                }
                cur.edges.xor_assign(&s.edges);
                improved = true;
            }
        }
        if !improved {
            return cur;
        }
    }
}

/// A subsystem code built from a hypergraph.
#[derive(Clone, Debug)]
pub struct CodeInstance {
    family: Option<Family>,
    h: Hypergraph,
    ops: EdgeOperatorSet,
    links: Vec<LinkOp>,
    stabilizers: Vec<Cycle>,
    stab_terms: Vec<Terms>,
    logicals: Vec<LogicalPair>,
    logical_terms: Vec<Terms>,
    k: usize,
    layout: Option<Layout>,
    qubit_stabs: Vec<Vec<(u32, Pauli)>>,
}

impl CodeInstance {
    pub fn build(lattice: &Lattice) -> Result<Self> {
        let ops = assign_edge_operators(&lattice.hypergraph, lattice.pins.as_ref())?;
        let cycles = match &lattice.cycles {
            Some(c) => c.clone(),
            None => lattice.hypergraph.cycle_space_basis(),
        };
        let cls = classify_cycles(&lattice.hypergraph, &cycles)?;
        Ok(Self::assemble(lattice.family, lattice.hypergraph.clone(), ops, cls, lattice.layout.clone()))
    }

    pub fn from_hypergraph(h: Hypergraph, pins: Option<&Pins>) -> Result<Self> {
        let ops = assign_edge_operators(&h, pins)?;
        let cls = classify_cycles(&h, &h.cycle_space_basis())?;
        Ok(Self::assemble(None, h, ops, cls, None))
    }

    /// Rebuilds with a different edge-operator assignment, keeping the cycles.
    pub fn with_edge_operators(&self, ops: EdgeOperatorSet) -> Self {
        let cls = Classification { stabilizers: self.stabilizers.clone(), logicals: self.logicals.clone(), k: self.k };
        Self::assemble(self.family, self.h.clone(), ops, cls, self.layout.clone())
    }

    fn assemble(
        family: Option<Family>,
        h: Hypergraph,
        ops: EdgeOperatorSet,
        cls: Classification,
        layout: Option<Layout>,
    ) -> Self {
        let links = link_operators(&h, &ops);
        let stab_terms: Vec<Terms> = cls.stabilizers.iter().map(|c| loop_terms(&h, &ops, &c.edges)).collect();
        let mut logical_terms = Vec::new();
        for pair in &cls.logicals {
            logical_terms.push(loop_terms(&h, &ops, &pair.x.edges));
            logical_terms.push(loop_terms(&h, &ops, &pair.z.edges));
        }
        let mut qubit_stabs = vec![Vec::new(); h.num_sites()];
        for (s, t) in stab_terms.iter().enumerate() {
            for &(q, p) in t {
                qubit_stabs[q].push((s as u32, p));
            }
        }
        CodeInstance {
            family,
            h,
            ops,
            links,
            stabilizers: cls.stabilizers,
            stab_terms,
            logicals: cls.logicals,
            logical_terms,
            k: cls.k,
            layout,
            qubit_stabs,
        }
    }

    pub fn family(&self) -> Option<Family> {
        self.family
    }

    pub fn hypergraph(&self) -> &Hypergraph {
        &self.h
    }

    pub fn edge_operators(&self) -> &EdgeOperatorSet {
        &self.ops
    }

    pub fn num_qubits(&self) -> usize {
        self.h.num_sites()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn layout(&self) -> Option<&Layout> {
        self.layout.as_ref()
    }

    /// Solid and dashed link operators (the measurable two-qubit operators).
    pub fn links(&self) -> &[LinkOp] {
        &self.links
    }

    /// Indices into [`CodeInstance::links`] of the gauge generators K′.
    pub fn generator_ids(&self) -> Vec<usize> {
        (0..self.links.len()).filter(|&i| self.links[i].generator).collect()
    }

    pub fn gauge_generators(&self) -> Vec<PauliOp> {
        self.links.iter().filter(|l| l.generator).map(|l| l.op(self.num_qubits())).collect()
    }

    pub fn stabilizers(&self) -> &[Cycle] {
        &self.stabilizers
    }

    pub fn stabilizer_terms(&self, s: usize) -> &Terms {
        &self.stab_terms[s]
    }

    pub fn stabilizer_op(&self, s: usize) -> PauliOp {
        PauliOp::from_sparse(self.num_qubits(), &self.stab_terms[s])
    }

    /// Stabilizers acting on qubit `q`, with the Pauli they apply there.
    pub fn stabilizers_at(&self, q: usize) -> &[(u32, Pauli)] {
        &self.qubit_stabs[q]
    }

    pub fn logicals(&self) -> &[LogicalPair] {
        &self.logicals
    }

    /// Bare logical operators in the order X̄1, Z̄1, X̄2, Z̄2, ...
    pub fn logical_ops(&self) -> Vec<PauliOp> {
        self.logical_terms.iter().map(|t| PauliOp::from_sparse(self.num_qubits(), t)).collect()
    }

    pub fn logical_terms(&self) -> &[Terms] {
        &self.logical_terms
    }

    pub fn stabilizer_ids(&self, role: Role) -> Vec<usize> {
        (0..self.stabilizers.len()).filter(|&s| self.stabilizers[s].role == role).collect()
    }

    pub fn loop_operator(&self, m: &Cycle) -> Result<PauliOp> {
        loop_operator(&self.h, &self.ops, m)
    }

    fn check_len(&self, e: &PauliOp) -> Result<()> {
        if e.n() != self.num_qubits() {
            return Err(Error::LengthMismatch(e.n(), self.num_qubits()));
        }
        Ok(())
    }

    /// Bit s is 1 iff the error anticommutes with stabilizer s.
    pub fn syndrome(&self, e: &PauliOp) -> Result<BitVec> {
        self.check_len(e)?;
        let mut s = BitVec::zeros(self.stabilizers.len());
        for q in e.support() {
            let p = e.get(q);
            for &(st, sp) in &self.qubit_stabs[q] {
                if p.anticommutes(sp) {
                    s.flip(st as usize);
                }
            }
        }
        Ok(s)
    }

    /// Anticommutation bits of an operator with X̄1, Z̄1, X̄2, Z̄2, ...
    pub fn logical_bits(&self, e: &PauliOp) -> Result<Vec<bool>> {
        self.check_len(e)?;
        Ok(self
            .logical_terms
            .iter()
            .map(|t| t.iter().fold(false, |acc, &(q, p)| acc ^ e.get(q).anticommutes(p)))
            .collect())
    }

    /// Plain-text listing of stabilizers and logicals as Pauli strings.
    pub fn export(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# qubits {} k {}\n", self.num_qubits(), self.k));
        for (i, c) in self.stabilizers.iter().enumerate() {
            out.push_str(&format!("stabilizer {i} {} {}\n", c.role, self.stabilizer_op(i)));
        }
        let ops = self.logical_ops();
        for (i, c) in self.logicals.iter().flat_map(|p| [&p.x, &p.z]).enumerate() {
            out.push_str(&format!("logical {} {}\n", c.role, ops[i]));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "[{}] {}: {}", if c.passed { "ok" } else { "FAIL" }, c.name, c.detail)?;
            if let Some(w) = &c.witness {
                writeln!(f, "    witness {w}")?;
            }
        }
        Ok(())
    }
}

/// Options for [`verify_code`]; the rank check is cubic in the qubit count.
#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub rank_check: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { rank_check: true }
    }
}

pub fn verify_code(code: &CodeInstance) -> VerifyReport {
    verify_code_with(code, VerifyOptions::default())
}

pub fn verify_code_with(code: &CodeInstance, opts: VerifyOptions) -> VerifyReport {
    let h = code.hypergraph();
    let n = code.num_qubits();
    let mut report = VerifyReport::default();

    // (a) loop operators commute with every gauge generator
    let mut loops: Vec<(String, Terms)> = Vec::new();
    for (i, c) in code.stabilizers.iter().enumerate() {
        loops.push((format!("stabilizer {i} ({})", c.role), loop_terms(h, &code.ops, &c.edges)));
    }
    for p in &code.logicals {
        for c in [&p.x, &p.z] {
            loops.push((format!("logical {}", c.role), loop_terms(h, &code.ops, &c.edges)));
        }
    }
    let mut at: Vec<Vec<(usize, Pauli)>> = vec![Vec::new(); n];
    for (i, (_, t)) in loops.iter().enumerate() {
        for &(q, p) in t {
            at[q].push((i, p));
        }
    }
    let mut witness = None;
    'gens: for l in code.links.iter().filter(|l| l.generator) {
        let mut par: HashMap<usize, bool> = HashMap::new();
        for &(q, p) in &l.terms {
            for &(i, sp) in &at[q] {
                if p.anticommutes(sp) {
                    *par.entry(i).or_default() ^= true;
                }
            }
        }
        if let Some((&i, _)) = par.iter().filter(|(_, &v)| v).min() {
            witness = Some(format!("{} vs generator {}", loops[i].0, l.op(n)));
            break 'gens;
        }
    }
    report.checks.push(Check {
        name: "loops_commute_with_gauge",
        passed: witness.is_none(),
        detail: format!("{} loop operators against {} generators", loops.len(), code.generator_ids().len()),
        witness,
    });

    // (b) dimension of C(G) equals dim Z(L)
    if opts.rank_check {
        let gens = code.gauge_generators();
        let rank = GroupSpan::new(n, &gens).map(|s| s.rank()).unwrap_or(0);
        let dim_z = h.cycle_space_dim();
        let c_dim = 2 * n - rank;
        report.checks.push(Check {
            name: "centralizer_dimension",
            passed: c_dim == dim_z,
            detail: format!("2n - rank(G) = {c_dim}, dim Z(L) = {dim_z}"),
            witness: None,
        });
        let tags: Vec<BitVec> = code.stabilizers.iter().chain(code.logicals.iter().flat_map(|p| [&p.x, &p.z])).map(|c| c.edges.clone()).collect();
        let span_rank = BinMatrix::from_rows(h.num_edges(), tags).map(|m| m.rank()).unwrap_or(0);
        report.checks.push(Check {
            name: "cycles_span",
            passed: span_rank == dim_z,
            detail: format!("rank of stabilizer and logical cycles {span_rank}, dim Z(L) = {dim_z}"),
            witness: None,
        });
    }

    // (c) triangle-free hypergraphs have no logical qubits
    if h.num_triangles() == 0 {
        report.checks.push(Check {
            name: "triangle_free_k0",
            passed: code.k == 0,
            detail: format!("k = {}", code.k),
            witness: None,
        });
    }

    // (d) product of all edge operators
    let full = (0..h.num_sites()).all(|s| {
        let inc = h.edges_at(s);
        let mut ps: Vec<Pauli> = inc
            .iter()
            .map(|&e| code.ops.terms(e).iter().find(|t| t.0 == s).map(|t| t.1).unwrap_or(Pauli::I))
            .collect();
        ps.sort();
        ps.dedup();
        inc.len() == 3 && ps.len() == 3 && !ps.contains(&Pauli::I)
    });
    if full {
        let mut prod = PauliOp::identity(n);
        for e in 0..h.num_edges() {
            for &(q, p) in code.ops.terms(e) {
                prod.mul_at(q, p);
            }
        }
        report.checks.push(Check {
            name: "edge_product_identity",
            passed: prod.is_identity(),
            detail: format!("weight of product {}", prod.weight()),
            witness: (!prod.is_identity()).then(|| prod.to_string()),
        });
    }

    // (e) logical pairing
    let lt = &code.logical_terms;
    let anti = |a: &Terms, b: &Terms| -> bool {
        let mut m: HashMap<usize, Pauli> = a.iter().copied().collect();
        let mut par = false;
        for &(q, p) in b {
            if let Some(x) = m.remove(&q) {
                par ^= x.anticommutes(p);
            }
        }
        par
    };
    let mut bad = None;
    for i in 0..lt.len() {
        for j in 0..lt.len() {
            let expect = i / 2 == j / 2 && i != j;
            if anti(&lt[i], &lt[j]) != expect {
                bad = Some(format!("logicals {i} and {j}"));
            }
        }
    }
    report.checks.push(Check {
        name: "logical_pairing",
        passed: bad.is_none() && lt.len() == 2 * code.k,
        detail: format!("{} logical pairs", code.logicals.len()),
        witness: bad,
    });

    // homology of stabilizers and logicals
    if code.k > 0 {
        let stab_bad = code.stabilizers.iter().position(|c| c.winding != (false, false));
        let log_bad = code.logicals.iter().flat_map(|p| [&p.x, &p.z]).position(|c| c.winding == (false, false));
        report.checks.push(Check {
            name: "winding",
            passed: stab_bad.is_none() && log_bad.is_none(),
            detail: "stabilizers contractible, logicals non-contractible".into(),
            witness: stab_bad.map(|i| format!("stabilizer {i}")).or(log_bad.map(|i| format!("logical {i}"))),
        });
    }
    report
}
