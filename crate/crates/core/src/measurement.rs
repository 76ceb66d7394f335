//! Decomposition of stabilizers into two-qubit link measurements and level schedules.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::BitVec;
use crate::code::{CodeInstance, LinkKind, Terms};
use crate::error::{Error, Result};
use crate::gf2::{BinMatrix, Span};
use crate::hypergraph::Role;
use crate::pauli::{Pauli, PauliOp};

/// Ordered link measurements for one stabilizer, grouped into levels.
/// The deduced eigenvalue is the product of all outcomes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schedule {
    pub stabilizer: usize,
    pub levels: Vec<Vec<usize>>,
}

impl Schedule {
    /// Measurement order: level by level, increasing link id within a level.
    pub fn order(&self) -> Vec<usize> {
        self.levels.iter().flatten().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl fmt::Display for Schedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "stabilizer {}: {} measurements in {} levels", self.stabilizer, self.len(), self.levels.len())?;
        for (i, l) in self.levels.iter().enumerate() {
            let ids: Vec<String> = l.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  level {}: {}", i + 1, ids.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecompositionFault {
    /// The ordered product differs from the stabilizer; carries the residual.
    ProductMismatch(String),
    /// Factor at this index anticommutes with the product of the factors before it.
    Prefix(usize),
    UnknownLink(usize),
}

impl fmt::Display for DecompositionFault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecompositionFault::ProductMismatch(r) => write!(f, "product mismatch, residual {r}"),
            DecompositionFault::Prefix(i) => write!(f, "factor {i} anticommutes with its prefix"),
            DecompositionFault::UnknownLink(i) => write!(f, "unknown link {i}"),
        }
    }
}

fn anti_terms(a: &[(usize, Pauli)], b: &HashMap<usize, Pauli>) -> bool {
    a.iter().fold(false, |acc, &(q, p)| acc ^ b.get(&q).is_some_and(|&s| s.anticommutes(p)))
}

fn mul_into(acc: &mut HashMap<usize, Pauli>, t: &[(usize, Pauli)]) {
    for &(q, p) in t {
        let v = acc.entry(q).or_insert(Pauli::I);
        *v = v.mul(p);
        if *v == Pauli::I {
            acc.remove(&q);
        }
    }
}

/// Checks that the ordered links multiply to `target` and that every link
/// commutes with the product of the links before it.
pub fn check_decomposition_op(code: &CodeInstance, target: &Terms, order: &[usize]) -> std::result::Result<(), DecompositionFault> {
    let links = code.links();
    let mut acc: HashMap<usize, Pauli> = HashMap::new();
    let mut prefix_fault = None;
    for (j, &l) in order.iter().enumerate() {
        let link = links.get(l).ok_or(DecompositionFault::UnknownLink(l))?;
        if prefix_fault.is_none() && anti_terms(&link.terms, &acc) {
            prefix_fault = Some(j);
        }
        mul_into(&mut acc, &link.terms);
    }
    let mut want: HashMap<usize, Pauli> = target.iter().copied().collect();
    want.retain(|_, p| *p != Pauli::I);
    if acc != want {
        mul_into(&mut acc, target);
        let mut r: Vec<(usize, Pauli)> = acc.into_iter().collect();
        r.sort_unstable();
        let s: Vec<String> = r.iter().map(|(q, p)| format!("{}{q}", p.to_char())).collect();
        return Err(DecompositionFault::ProductMismatch(s.join(" ")));
    }
    match prefix_fault {
        Some(j) => Err(DecompositionFault::Prefix(j)),
        None => Ok(()),
    }
}

pub fn check_decomposition(code: &CodeInstance, stabilizer: usize, order: &[usize]) -> std::result::Result<(), DecompositionFault> {
    check_decomposition_op(code, code.stabilizer_terms(stabilizer), order)
}

/// Minimal set of link operators (solid and dashed) whose product is the stabilizer.
/// The search region starts at the cycle's sites and grows by neighbouring
/// sites until the stabilizer is generated.
pub fn decompose(code: &CodeInstance, stabilizer: usize) -> Result<Vec<usize>> {
    let h = code.hypergraph();
    let cyc = &code.stabilizers()[stabilizer];
    let mut region: Vec<usize> = Vec::new();
    let mut inside = vec![false; h.num_sites()];
    for e in cyc.edges.ones() {
        for &s in &h.edges()[e].sites {
            if !inside[s] {
                inside[s] = true;
                region.push(s);
            }
        }
    }
    loop {
        if let Some(f) = decompose_in(code, stabilizer, &region) {
            return Ok(f);
        }
        let before = region.len();
        for i in 0..before {
            for &e in h.edges_at(region[i]) {
                for &s in &h.edges()[e].sites {
                    if !inside[s] {
                        inside[s] = true;
                        region.push(s);
                    }
                }
            }
        }
        if region.len() == before {
            return Err(Error::Decomposition(format!("stabilizer {stabilizer} not generated by link operators")));
        }
    }
}

fn decompose_in(code: &CodeInstance, stabilizer: usize, region: &[usize]) -> Option<Vec<usize>> {
    let local: HashMap<usize, usize> = region.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let m = local.len();
    let vec_of = |t: &[(usize, Pauli)]| -> Option<BitVec> {
        let mut v = BitVec::zeros(2 * m);
        for &(q, p) in t {
            let &i = local.get(&q)?;
            let (x, z) = p.bits();
            if x {
                v.flip(i);
            }
            if z {
                v.flip(m + i);
            }
        }
        Some(v)
    };
    let cands: Vec<usize> = (0..code.links().len())
        .filter(|&i| code.links()[i].generator && code.links()[i].terms.iter().all(|t| local.contains_key(&t.0)))
        .collect();
    let rows: Vec<BitVec> = cands.iter().map(|&i| vec_of(&code.links()[i].terms).unwrap()).collect();
    let mat = BinMatrix::from_rows(2 * m, rows).ok()?;
    let target = vec_of(code.stabilizer_terms(stabilizer))?;
    let sol = Span::new(&mat).solve(&target)?;
    let deps = mat.transpose().nullspace();
    let finish = |c: &BitVec| -> Vec<usize> { merge_dashed(code, c.ones().map(|i| cands[i]).collect()) };
    let mut best = finish(&sol);
    if deps.len() <= 16 {
        for mask in 1u32..(1 << deps.len()) {
            let mut c = sol.clone();
            for (j, d) in deps.iter().enumerate() {
                if mask >> j & 1 == 1 {
                    c.xor_assign(d);
                }
            }
            let f = finish(&c);
            if f.len() < best.len() {
                best = f;
            }
        }
    }
    Some(best)
}

/// Replaces two dashed generators of one triangle by its third dashed link.
fn merge_dashed(code: &CodeInstance, ids: Vec<usize>) -> Vec<usize> {
    let links = code.links();
    let mut by_tri: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut out = Vec::new();
    for i in ids {
        match links[i].kind {
            LinkKind::Dashed { triangle, .. } => by_tri.entry(triangle).or_default().push(i),
            LinkKind::Solid { .. } => out.push(i),
        }
    }
    for (t, v) in by_tri {
        if v.len() == 2 {
            let third = links
                .iter()
                .position(|l| l.kind == LinkKind::Dashed { triangle: t, pair: 2 })
                .expect("third dashed link");
            out.push(third);
        } else {
            out.extend(v);
        }
    }
    out.sort_unstable();
    out
}

fn anticommute_links(code: &CodeInstance, a: usize, b: usize) -> bool {
    code.links()[a].anticommutes_terms(&code.links()[b].terms)
}

/// Maximum independent set in the anticommutation graph (exact for small inputs).
fn max_commuting_set(nodes: &[usize], adj: &HashMap<usize, Vec<usize>>) -> Vec<usize> {
    fn rec(cand: &[usize], cur: &mut Vec<usize>, best: &mut Vec<usize>, adj: &HashMap<usize, Vec<usize>>, budget: &mut u64) {
        if cur.len() + cand.len() <= best.len() || *budget == 0 {
            return;
        }
        *budget -= 1;
        let Some((&v, rest)) = cand.split_first() else {
            *best = cur.clone();
            return;
        };
        let nv = &adj[&v];
        let with: Vec<usize> = rest.iter().copied().filter(|u| !nv.contains(u)).collect();
        cur.push(v);
        rec(&with, cur, best, adj, budget);
        cur.pop();
        if !nv.is_empty() {
            rec(rest, cur, best, adj, budget);
        }
    }
    let mut best = Vec::new();
    let mut budget = 2_000_000u64;
    rec(nodes, &mut Vec::new(), &mut best, adj, &mut budget);
    if best.is_empty() {
        // greedy fallback
        for &v in nodes {
            if best.iter().all(|u| !adj[&v].contains(u)) {
                best.push(v);
            }
        }
    }
    best.sort_unstable();
    best
}

fn build_levels(code: &CodeInstance, factors: &[usize], rng: Option<&mut ChaCha8Rng>) -> std::result::Result<Vec<Vec<usize>>, Vec<usize>> {
    let mut rng = rng;
    let mut rest: Vec<usize> = factors.to_vec();
    let mut prefix: HashMap<usize, Pauli> = HashMap::new();
    let mut levels = Vec::new();
    let mut done = Vec::new();
    while !rest.is_empty() {
        let eligible: Vec<usize> = rest.iter().copied().filter(|&f| !anti_terms(&code.links()[f].terms, &prefix)).collect();
        if eligible.is_empty() {
            return Err(done);
        }
        let level = match rng.as_deref_mut() {
            None => {
                let adj: HashMap<usize, Vec<usize>> = eligible
                    .iter()
                    .map(|&a| (a, eligible.iter().copied().filter(|&b| b != a && anticommute_links(code, a, b)).collect()))
                    .collect();
                max_commuting_set(&eligible, &adj)
            }
            Some(r) => {
                let mut order = eligible.clone();
                for i in (1..order.len()).rev() {
                    order.swap(i, r.gen_range(0..=i));
                }
                let mut l: Vec<usize> = Vec::new();
                for f in order {
                    if l.iter().all(|&g| !anticommute_links(code, f, g)) {
                        l.push(f);
                    }
                }
                l.sort_unstable();
                l
            }
        };
        for &f in &level {
            mul_into(&mut prefix, &code.links()[f].terms);
            done.push(f);
        }
        rest.retain(|f| !level.contains(f));
        levels.push(level);
    }
    Ok(levels)
}

/// Level schedule: each level is a mutually commuting set of remaining
/// factors that commute with the product of all earlier levels.
pub fn synthesize_schedule(code: &CodeInstance, stabilizer: usize) -> Result<Schedule> {
    let factors = decompose(code, stabilizer)?;
    let levels = match build_levels(code, &factors, None) {
        Ok(l) => l,
        Err(mut stuck) => {
            let mut rng = ChaCha8Rng::seed_from_u64(stabilizer as u64);
            let mut found = None;
            for _ in 0..200 {
                match build_levels(code, &factors, Some(&mut rng)) {
                    Ok(l) => {
                        found = Some(l);
                        break;
                    }
                    Err(s) => stuck = s,
                }
            }
            found.ok_or_else(|| Error::Decomposition(format!("stabilizer {stabilizer} stuck after prefix {stuck:?}")))?
        }
    };
    let s = Schedule { stabilizer, levels };
    check_decomposition(code, stabilizer, &s.order()).map_err(|f| Error::Decomposition(f.to_string()))?;
    Ok(s)
}

/// Number of link measurements for the first stabilizer of a class.
pub fn measurement_count(code: &CodeInstance, role: Role) -> Result<usize> {
    let s = *code
        .stabilizer_ids(role)
        .first()
        .ok_or_else(|| Error::Decomposition(format!("no stabilizer tagged {role}")))?;
    Ok(synthesize_schedule(code, s)?.len())
}

/// Per-class measurement counts for every tagged stabilizer class present.
pub fn measurement_counts(code: &CodeInstance) -> Result<BTreeMap<Role, usize>> {
    let mut out = BTreeMap::new();
    for role in [Role::A, Role::B, Role::C, Role::D, Role::Hexagon] {
        if !code.stabilizer_ids(role).is_empty() {
            out.insert(role, measurement_count(code, role)?);
        }
    }
    if out.is_empty() {
        return Err(Error::Decomposition("code has no tagged stabilizer classes".into()));
    }
    Ok(out)
}

/// Greedy colouring of stabilizers so that stabilizers in one layer share no link.
pub fn stabilizer_layers(schedules: &[Schedule]) -> Vec<Vec<usize>> {
    let mut layers: Vec<(Vec<usize>, std::collections::HashSet<usize>)> = Vec::new();
    for s in schedules {
        let links: Vec<usize> = s.order();
        match layers.iter_mut().find(|(_, used)| links.iter().all(|l| !used.contains(l))) {
            Some((members, used)) => {
                members.push(s.stabilizer);
                used.extend(links);
            }
            None => layers.push((vec![s.stabilizer], links.into_iter().collect())),
        }
    }
    layers.into_iter().map(|(m, _)| m).collect()
}

/// Signed Pauli row: (-1)^sign · ⊗ P_q with Y stored as x = z = 1.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Row {
    x: BitVec,
    z: BitVec,
    sign: bool,
}

impl Row {
    fn from_op(p: &PauliOp) -> Row {
        Row { x: p.x().clone(), z: p.z().clone(), sign: false }
    }

    fn anticommutes(&self, o: &Row) -> bool {
        self.x.dot(&o.z) ^ self.z.dot(&o.x)
    }

    /// self ← other · self, tracking the sign. Requires the two to commute.
    fn left_mul(&mut self, o: &Row) {
        let mut plus = 0i64;
        let mut minus = 0i64;
        let (x1, z1, x2, z2) = (o.x.words(), o.z.words(), self.x.words(), self.z.words());
        for k in 0..x1.len() {
            let (a, b, c, d) = (x1[k], z1[k], x2[k], z2[k]);
            let y1 = a & b;
            let xo = a & !b;
            let zo = !a & b;
            plus += ((y1 & d & !c) | (xo & d & c) | (zo & c & !d)).count_ones() as i64;
            minus += ((y1 & c & !d) | (xo & d & !c) | (zo & c & d)).count_ones() as i64;
        }
        let total = (2 * self.sign as i64 + 2 * o.sign as i64 + plus - minus).rem_euclid(4);
        debug_assert!(total % 2 == 0, "product of anticommuting rows");
        self.sign = total == 2;
        self.x.xor_assign(&o.x);
        self.z.xor_assign(&o.z);
    }
}

/// Stabilizer tableau with destabilizers.
#[derive(Clone, Debug)]
pub struct Tableau {
    n: usize,
    rows: Vec<Row>,
}

impl Tableau {
    /// |0…0⟩.
    pub fn zero_state(n: usize) -> Self {
        let mut rows = Vec::with_capacity(2 * n);
        for q in 0..n {
            rows.push(Row::from_op(&PauliOp::single(n, q, Pauli::X)));
        }
        for q in 0..n {
            rows.push(Row::from_op(&PauliOp::single(n, q, Pauli::Z)));
        }
        Tableau { n, rows }
    }

    pub fn apply_pauli(&mut self, e: &PauliOp) {
        let er = Row::from_op(e);
        for r in self.rows.iter_mut() {
            if r.anticommutes(&er) {
                r.sign ^= true;
            }
        }
    }

    /// Measures +P; returns the outcome bit (true = -1). `forced` fixes a random outcome.
    fn measure_row(&mut self, p: &Row, rng: &mut ChaCha8Rng, forced: Option<bool>) -> bool {
        let n = self.n;
        if let Some(piv) = (n..2 * n).find(|&i| self.rows[i].anticommutes(p)) {
            let pr = self.rows[piv].clone();
            for i in 0..2 * n {
                if i != piv && i != piv - n && self.rows[i].anticommutes(p) {
                    self.rows[i].left_mul(&pr);
                }
            }
            let outcome = forced.unwrap_or_else(|| rng.gen());
            self.rows[piv - n] = pr;
            self.rows[piv] = Row { x: p.x.clone(), z: p.z.clone(), sign: p.sign ^ outcome };
            outcome
        } else {
            self.expectation(p)
        }
    }

    /// Eigenvalue bit of a row that commutes with the whole stabilizer group.
    fn expectation(&self, p: &Row) -> bool {
        let n = self.n;
        let mut acc = Row { x: BitVec::zeros(n), z: BitVec::zeros(n), sign: false };
        for i in 0..n {
            if self.rows[i].anticommutes(p) {
                acc.left_mul(&self.rows[i + n]);
            }
        }
        debug_assert_eq!(acc.x, p.x);
        debug_assert_eq!(acc.z, p.z);
        acc.sign ^ p.sign
    }

    pub fn measure(&mut self, p: &PauliOp, rng: &mut ChaCha8Rng) -> bool {
        self.measure_row(&Row::from_op(p), rng, None)
    }
}

/// Outcome of one scheduled stabilizer measurement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasurementRecord {
    pub outcomes: Vec<bool>,
    /// Syndrome bit relative to the reference code state.
    pub syndrome: bool,
}

/// A simulated code state: a tableau plus the reference eigenvalue of every
/// scheduled stabilizer product.
#[derive(Clone, Debug)]
pub struct CodeState {
    tableau: Tableau,
    products: Vec<Row>,
    reference: Vec<bool>,
    schedules: Vec<Schedule>,
    rng: ChaCha8Rng,
}

fn signed_product(code: &CodeInstance, order: &[usize]) -> Row {
    let n = code.num_qubits();
    let mut acc = Row { x: BitVec::zeros(n), z: BitVec::zeros(n), sign: false };
    for &l in order {
        acc.left_mul(&Row::from_op(&code.links()[l].op(n)));
    }
    acc
}

impl CodeState {
    /// Prepares a code state by measuring every stabilizer product, keeping
    /// +1 whenever the outcome is random.
    pub fn prepare(code: &CodeInstance, schedules: Vec<Schedule>, seed: u64) -> Result<Self> {
        for s in &schedules {
            check_decomposition(code, s.stabilizer, &s.order()).map_err(|f| Error::Decomposition(f.to_string()))?;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut tableau = Tableau::zero_state(code.num_qubits());
        let products: Vec<Row> = schedules.iter().map(|s| signed_product(code, &s.order())).collect();
        for p in &products {
            tableau.measure_row(p, &mut rng, Some(false));
        }
        let reference = products.iter().map(|p| tableau.expectation(p)).collect();
        Ok(CodeState { tableau, products, reference, schedules, rng })
    }

    pub fn apply_pauli(&mut self, e: &PauliOp) {
        self.tableau.apply_pauli(e);
    }

    pub fn schedules(&self) -> &[Schedule] {
        &self.schedules
    }

    /// Runs the i-th schedule's link measurements in order.
    pub fn measure(&mut self, code: &CodeInstance, i: usize) -> MeasurementRecord {
        let n = code.num_qubits();
        let order = self.schedules[i].order();
        let mut outcomes = Vec::with_capacity(order.len());
        for l in order {
            let p = Row::from_op(&code.links()[l].op(n));
            outcomes.push(self.tableau.measure_row(&p, &mut self.rng, None));
        }
        let sigma = outcomes.iter().fold(false, |a, &b| a ^ b);
        debug_assert_eq!(sigma, self.tableau.expectation(&self.products[i]));
        MeasurementRecord { outcomes, syndrome: sigma ^ self.reference[i] }
    }
}

/// Measures one schedule on a state; rejects schedules that fail the decomposition check.
pub fn simulate_measurement_sequence(code: &CodeInstance, state: &mut CodeState, index: usize) -> Result<MeasurementRecord> {
    let s = state.schedules.get(index).ok_or_else(|| Error::Decomposition(format!("no schedule {index}")))?;
    check_decomposition(code, s.stabilizer, &s.order()).map_err(|f| Error::Decomposition(f.to_string()))?;
    Ok(state.measure(code, index))
}
