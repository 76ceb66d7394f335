//! 3-valent hypergraphs on the torus and their cycle spaces.

use std::collections::HashMap;
use std::fmt;

use num_rational::Ratio;

use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::gf2::BinMatrix;

pub type Coord = Ratio<i64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Site {
    pub x: Coord,
    pub y: Coord,
}

impl Site {
    pub fn new(x: i64, y: i64) -> Self {
        Site { x: Coord::from_integer(x), y: Coord::from_integer(y) }
    }
}

/// A link (two sites) or a triangle (three sites), with one torus shift per incidence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub sites: Vec<usize>,
    pub shifts: Vec<[i8; 2]>,
}

impl Edge {
    pub fn link(u: usize, v: usize) -> Self {
        Edge { sites: vec![u, v], shifts: vec![[0, 0]; 2] }
    }

    pub fn triangle(u: usize, v: usize, w: usize) -> Self {
        Edge { sites: vec![u, v, w], shifts: vec![[0, 0]; 3] }
    }

    pub fn with_shifts(mut self, shifts: Vec<[i8; 2]>) -> Self {
        self.shifts = shifts;
        self
    }

    #[inline]
    pub fn is_triangle(&self) -> bool {
        self.sites.len() == 3
    }

    pub fn contains(&self, s: usize) -> bool {
        self.sites.contains(&s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    A,
    B,
    C,
    D,
    Z1,
    Z2,
    X1,
    X2,
    Hexagon,
    Other,
}

impl Role {
    pub fn is_logical(self) -> bool {
        matches!(self, Role::Z1 | Role::Z2 | Role::X1 | Role::X2)
    }

    pub fn name(self) -> &'static str {
        match self {
            Role::A => "A",
            Role::B => "B",
            Role::C => "C",
            Role::D => "D",
            Role::Z1 => "Z1",
            Role::Z2 => "Z2",
            Role::X1 => "X1",
            Role::X2 => "X2",
            Role::Hexagon => "hexagon",
            Role::Other => "other",
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    pub edges: BitVec,
    pub winding: (bool, bool),
    pub role: Role,
}

impl Cycle {
    pub fn edge_ids(&self) -> Vec<usize> {
        self.edges.ones().collect()
    }

    pub fn len(&self) -> usize {
        self.edges.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Valence { site: usize, degree: usize },
    SharedSites { edges: (usize, usize), shared: usize },
    TrianglesMeet { triangles: (usize, usize), site: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Valence { site, degree } => write!(f, "site {site} has {degree} incident edges"),
            Violation::SharedSites { edges, shared } => {
                write!(f, "edges {} and {} share {shared} sites", edges.0, edges.1)
            }
            Violation::TrianglesMeet { triangles, site } => {
                write!(f, "triangles {} and {} meet at site {site}", triangles.0, triangles.1)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    lx: Coord,
    ly: Coord,
    sites: Vec<Site>,
    edges: Vec<Edge>,
    at: Vec<Vec<usize>>,
    triangles: BitVec,
    edge_winding: Vec<(bool, bool)>,
}

impl Hypergraph {
    /// Builds the incidence structure. Structural sanity is enforced here;
    /// the three lattice restrictions are reported by [`Hypergraph::validate`].
    pub fn new(lx: Coord, ly: Coord, sites: Vec<Site>, edges: Vec<Edge>) -> Result<Self> {
        let mut at = vec![Vec::new(); sites.len()];
        let mut triangles = BitVec::zeros(edges.len());
        let mut edge_winding = Vec::with_capacity(edges.len());
        for (e, edge) in edges.iter().enumerate() {
            if !(2..=3).contains(&edge.sites.len()) {
                return Err(Error::Size(format!("edge {e} has arity {}", edge.sites.len())));
            }
            if edge.shifts.len() != edge.sites.len() {
                return Err(Error::Size(format!("edge {e} has {} shifts", edge.shifts.len())));
            }
            let mut w = (false, false);
            for (i, &s) in edge.sites.iter().enumerate() {
                if s >= sites.len() {
                    return Err(Error::UnknownSite(s));
                }
                if edge.sites[..i].contains(&s) {
                    return Err(Error::Size(format!("edge {e} repeats site {s}")));
                }
                let [dx, dy] = edge.shifts[i];
                if !(-1..=1).contains(&dx) || !(-1..=1).contains(&dy) {
                    return Err(Error::Size(format!("edge {e} shift out of range")));
                }
                w.0 ^= dx & 1 != 0;
                w.1 ^= dy & 1 != 0;
                at[s].push(e);
            }
            if edge.is_triangle() {
                triangles.set(e, true);
            }
            edge_winding.push(w);
        }
        Ok(Hypergraph { lx, ly, sites, edges, at, triangles, edge_winding })
    }

    pub fn periods(&self) -> (Coord, Coord) {
        (self.lx, self.ly)
    }

    pub fn num_sites(&self) -> usize {
        self.sites.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn sites(&self) -> &[Site] {
        &self.sites
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> Result<&Edge> {
        self.edges.get(e).ok_or(Error::UnknownEdge(e))
    }

    /// Edges incident to a site, in increasing id order.
    pub fn edges_at(&self, s: usize) -> &[usize] {
        &self.at[s]
    }

    pub fn triangle_mask(&self) -> &BitVec {
        &self.triangles
    }

    pub fn is_triangle(&self, e: usize) -> bool {
        self.triangles.get(e)
    }

    pub fn num_triangles(&self) -> usize {
        self.triangles.count_ones()
    }

    /// Per-edge parity of the summed incidence shifts.
    pub fn edge_winding(&self, e: usize) -> (bool, bool) {
        self.edge_winding[e]
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (s, es) in self.at.iter().enumerate() {
            if es.len() != 3 {
                out.push(Violation::Valence { site: s, degree: es.len() });
            }
        }
        let mut seen = std::collections::HashSet::new();
        for (s, es) in self.at.iter().enumerate() {
            for (i, &a) in es.iter().enumerate() {
                for &b in &es[i + 1..] {
                    if self.is_triangle(a) && self.is_triangle(b) {
                        out.push(Violation::TrianglesMeet { triangles: (a, b), site: s });
                    }
                    let shared = self.shared_sites(a, b);
                    if shared > 1 && seen.insert((a, b)) {
                        out.push(Violation::SharedSites { edges: (a, b), shared });
                    }
                }
            }
        }
        out
    }

    fn shared_sites(&self, a: usize, b: usize) -> usize {
        let eb = &self.edges[b];
        self.edges[a].sites.iter().filter(|s| eb.contains(**s)).count()
    }

    /// η(e, e′) = 1 iff e ≠ e′ share exactly one site; η(e, e) = 0.
    pub fn eta(&self, a: usize, b: usize) -> Result<bool> {
        self.edge(a)?;
        self.edge(b)?;
        Ok(a != b && self.shared_sites(a, b) == 1)
    }

    /// Site × edge incidence matrix.
    pub fn incidence(&self) -> BinMatrix {
        let rows = self
            .at
            .iter()
            .map(|es| BitVec::from_indices(self.edges.len(), es.iter().copied()))
            .collect();
        BinMatrix::from_rows(self.edges.len(), rows).expect("consistent lengths")
    }

    pub fn cycle_space_dim(&self) -> usize {
        self.edges.len() - self.incidence().rank()
    }

    /// First site with odd incidence, if any.
    pub fn odd_site(&self, edges: &BitVec) -> Option<usize> {
        let mut deg: HashMap<usize, u8> = HashMap::new();
        for e in edges.ones() {
            for &s in &self.edges[e].sites {
                *deg.entry(s).or_default() ^= 1;
            }
        }
        deg.into_iter().filter(|&(_, d)| d == 1).map(|(s, _)| s).min()
    }

    pub fn cycle(&self, edges: BitVec, role: Role) -> Result<Cycle> {
        if edges.len() != self.edges.len() {
            return Err(Error::LengthMismatch(edges.len(), self.edges.len()));
        }
        if let Some(site) = self.odd_site(&edges) {
            return Err(Error::NotCycle { site });
        }
        let winding = self.winding_of(&edges);
        Ok(Cycle { edges, winding, role })
    }

    pub fn cycle_from_ids(&self, ids: &[usize], role: Role) -> Result<Cycle> {
        for &e in ids {
            self.edge(e)?;
        }
        self.cycle(BitVec::from_indices(self.edges.len(), ids.iter().copied()), role)
    }

    fn winding_of(&self, edges: &BitVec) -> (bool, bool) {
        edges.ones().fold((false, false), |(a, b), e| {
            let (x, y) = self.edge_winding[e];
            (a ^ x, b ^ y)
        })
    }

    /// Summed incidence shifts along a cycle, mod 2 per axis.
    pub fn winding(&self, m: &Cycle) -> Result<(bool, bool)> {
        if let Some(site) = self.odd_site(&m.edges) {
            return Err(Error::NotCycle { site });
        }
        Ok(self.winding_of(&m.edges))
    }

    /// Parity of the number of shared triangles.
    pub fn triangle_overlap(&self, a: &Cycle, b: &Cycle) -> bool {
        a.edges.and(&b.edges).dot(&self.triangles)
    }

    /// Sites with two incident edges of the cycle, i.e. the support of its loop operator.
    pub fn cycle_support(&self, m: &BitVec) -> Vec<usize> {
        let mut deg: HashMap<usize, u8> = HashMap::new();
        for e in m.ones() {
            for &s in &self.edges[e].sites {
                *deg.entry(s).or_default() += 1;
            }
        }
        let mut v: Vec<usize> = deg.into_iter().filter(|&(_, d)| d == 2).map(|(s, _)| s).collect();
        v.sort_unstable();
        v
    }

    /// Kernel basis of the incidence matrix, rearranged so that at most two
    /// members carry nonzero winding and those windings are independent.
    pub fn cycle_space_basis(&self) -> Vec<Cycle> {
        let mut basis: Vec<Cycle> = self
            .incidence()
            .nullspace()
            .into_iter()
            .map(|v| {
                let w = self.winding_of(&v);
                Cycle { edges: v, winding: w, role: Role::Other }
            })
            .collect();
        let mut reps: Vec<usize> = Vec::new();
        for i in 0..basis.len() {
            let w = basis[i].winding;
            if w == (false, false) {
                continue;
            }
            let fix = (0u32..1 << reps.len()).find(|mask| {
                let mut acc = (false, false);
                for (j, &r) in reps.iter().enumerate() {
                    if mask >> j & 1 == 1 {
                        acc = (acc.0 ^ basis[r].winding.0, acc.1 ^ basis[r].winding.1);
                    }
                }
                acc == w
            });
            match fix {
                Some(mask) => {
                    for (j, &r) in reps.clone().iter().enumerate() {
                        if mask >> j & 1 == 1 {
                            let e = basis[r].edges.clone();
                            basis[i].edges.xor_assign(&e);
                        }
                    }
                    basis[i].winding = self.winding_of(&basis[i].edges);
                    debug_assert_eq!(basis[i].winding, (false, false));
                }
                None => reps.push(i),
            }
        }
        basis
    }
}
