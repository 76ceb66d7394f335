//! The five-squares lattice.
//!
//! Unit cells sit on the even sublattice `a + b ≡ 0 (mod 2)` of a 2n × 2n grid,
//! giving n × 2n cells of 20 qubits. Cell (a, b) is centred at (7a, 7b) on a
//! torus of period 14n. Local numbering (offsets from the cell centre):
//!
//! ```text
//!              1(-1,5)  2(1,5)
//!              4(-1,3)  3(1,3)                      top square T
//! 5(-5,1) 6(-3,1)  9(-1,1) 10(1,1)  13(3,1) 14(5,1)
//! 8(-5,-1)7(-3,-1)12(-1,-1)11(1,-1) 16(3,-1)15(5,-1) L, centre, R
//!             17(-1,-3) 18(1,-3)
//!             19(-1,-5) 20(1,-5)                    bottom square
//! ```
//!
//! Square links are oriented counter-clockwise (NW → SW → SE → NE) and carry
//! K = X_u Y_v. Triangles join the centre square to the other four:
//! (9,4,6), (10,3,13), (11,16,18), (12,7,17). External qubits 1, 2, 5, 8, 14,
//! 15, 19, 20 are joined to neighbouring cells by ZZ links:
//! 1 ↔ (a-1,b+1).15, 2 ↔ (a+1,b+1).8, 19 ↔ (a-1,b-1).14, 20 ↔ (a+1,b-1).5.

use std::collections::HashMap;

use crate::code::Pins;
use crate::error::Result;
use crate::hypergraph::{Coord, Cycle, Edge, Hypergraph, Role, Site};
use crate::pauli::Pauli;

use super::{check_size, EdgeIndex, Family, Lattice, LatticeSpec};

/// Squares as corner lists NW, SW, SE, NE: T, L, centre, R, bottom.
pub const SQUARES: [[usize; 4]; 5] = [[1, 4, 3, 2], [5, 8, 7, 6], [9, 12, 11, 10], [13, 16, 15, 14], [17, 19, 20, 18]];

/// North-west corner of each square, in `SQUARES` order.
pub const NW_CORNERS: [usize; 5] = [1, 5, 9, 13, 17];

/// Locations lying on a triangle.
pub const INTERNAL: [usize; 12] = [3, 4, 6, 7, 9, 10, 11, 12, 13, 16, 17, 18];

const TRIANGLES: [[usize; 3]; 4] = [[9, 4, 6], [10, 3, 13], [11, 16, 18], [12, 7, 17]];

const OFFSETS: [(i64, i64); 20] = [
    (-1, 5),
    (1, 5),
    (1, 3),
    (-1, 3),
    (-5, 1),
    (-3, 1),
    (-3, -1),
    (-5, -1),
    (-1, 1),
    (1, 1),
    (1, -1),
    (-1, -1),
    (3, 1),
    (5, 1),
    (5, -1),
    (3, -1),
    (-1, -3),
    (1, -3),
    (-1, -5),
    (1, -5),
];

/// Inter-cell links: (local, cell step, neighbour local).
const INTER: [(usize, (i64, i64), usize); 4] = [(1, (-1, 1), 15), (2, (1, 1), 8), (19, (-1, -1), 14), (20, (1, -1), 5)];

/// Map between (cell, location 1..20) and qubit ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    n: usize,
    cells: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
}

impl Layout {
    fn new(n: usize) -> Self {
        let w = 2 * n;
        let cells: Vec<(usize, usize)> =
            (0..w).flat_map(|b| (0..w).map(move |a| (a, b))).filter(|(a, b)| (a + b) % 2 == 0).collect();
        let index = cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        Layout { n, cells, index }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    /// Cell coordinates (a, b), raster order.
    pub fn cells(&self) -> &[(usize, usize)] {
        &self.cells
    }

    #[inline]
    pub fn qubit(&self, cell: usize, loc: usize) -> usize {
        debug_assert!((1..=20).contains(&loc));
        cell * 20 + loc - 1
    }

    /// (cell, location) of a qubit.
    #[inline]
    pub fn locate(&self, q: usize) -> (usize, usize) {
        (q / 20, q % 20 + 1)
    }

    /// Cell reached from `cell` by a grid step, wrapping around the torus.
    pub fn step(&self, cell: usize, da: i64, db: i64) -> usize {
        let w = 2 * self.n as i64;
        let (a, b) = self.cells[cell];
        let key = ((a as i64 + da).rem_euclid(w) as usize, (b as i64 + db).rem_euclid(w) as usize);
        self.index[&key]
    }

    pub fn cell_at(&self, a: usize, b: usize) -> Option<usize> {
        self.index.get(&(a, b)).copied()
    }
}

fn wrap_shift(v: i64, w: i64) -> i8 {
    if v < 0 {
        -1
    } else if v >= w {
        1
    } else {
        0
    }
}

/// Five-squares hypergraph with n × 2n unit cells (40 n² qubits).
pub fn five_squares(n: usize) -> Result<(Hypergraph, Layout)> {
    check_size("n", n)?;
    let layout = Layout::new(n);
    let w = 2 * n as i64;
    let mut sites = Vec::with_capacity(20 * layout.num_cells());
    for &(a, b) in layout.cells() {
        for &(dx, dy) in &OFFSETS {
            sites.push(Site::new(7 * a as i64 + dx, 7 * b as i64 + dy));
        }
    }
    let mut edges = Vec::new();
    for (c, &(a, b)) in layout.cells().iter().enumerate() {
        let q = |loc: usize| layout.qubit(c, loc);
        for sq in &SQUARES {
            for i in 0..4 {
                edges.push(Edge::link(q(sq[i]), q(sq[(i + 1) % 4])));
            }
        }
        for t in &TRIANGLES {
            edges.push(Edge::triangle(q(t[0]), q(t[1]), q(t[2])));
        }
        for &(loc, (da, db), nloc) in &INTER {
            let nb = layout.step(c, da, db);
            let shift = [wrap_shift(a as i64 + da, w), wrap_shift(b as i64 + db, w)];
            edges.push(Edge::link(q(loc), layout.qubit(nb, nloc)).with_shifts(vec![[0, 0], shift]));
        }
    }
    let period = Coord::from_integer(14 * n as i64);
    Ok((Hypergraph::new(period, period, sites, edges)?, layout))
}

/// Pins: square links X_u Y_v in counter-clockwise orientation, inter-cell links ZZ.
fn pins(h: &Hypergraph, layout: &Layout) -> Pins {
    let mut pins = Pins::new();
    for (e, edge) in h.edges().iter().enumerate() {
        if edge.is_triangle() {
            continue;
        }
        let (c0, _) = layout.locate(edge.sites[0]);
        let (c1, _) = layout.locate(edge.sites[1]);
        let p = if c0 == c1 { vec![Pauli::X, Pauli::Y] } else { vec![Pauli::Z, Pauli::Z] };
        pins.insert(e, p);
    }
    pins
}

struct Builder<'a> {
    h: &'a Hypergraph,
    layout: &'a Layout,
    idx: EdgeIndex,
}

impl Builder<'_> {
    fn q(&self, cell: usize, loc: usize) -> usize {
        self.layout.qubit(cell, loc)
    }

    fn link(&self, a: (usize, usize), b: (usize, usize)) -> usize {
        self.idx.get(&[self.q(a.0, a.1), self.q(b.0, b.1)])
    }

    fn tri(&self, cell: usize, t: usize) -> usize {
        let s = TRIANGLES[t].map(|l| self.q(cell, l));
        self.idx.get(&s)
    }

    fn cycle(&self, ids: Vec<usize>, role: Role) -> Cycle {
        self.h.cycle_from_ids(&ids, role).expect("catalog cycle")
    }

    fn a(&self, c: usize) -> Cycle {
        let l = self.layout;
        let (r, lf, u) = (l.step(c, 1, 1), l.step(c, -1, 1), l.step(c, 0, 2));
        let ids = vec![
            self.link((c, 1), (c, 2)),
            self.link((c, 2), (r, 8)),
            self.link((r, 8), (r, 5)),
            self.link((r, 5), (u, 20)),
            self.link((u, 20), (u, 19)),
            self.link((u, 19), (lf, 14)),
            self.link((lf, 14), (lf, 15)),
            self.link((lf, 15), (c, 1)),
        ];
        self.cycle(ids, Role::A)
    }

    fn b(&self, c: usize) -> Cycle {
        let mut ids: Vec<usize> = (0..4).map(|t| self.tri(c, t)).collect();
        for (x, y) in [(4, 3), (6, 7), (13, 16), (17, 18), (9, 10), (12, 11)] {
            ids.push(self.link((c, x), (c, y)));
        }
        self.cycle(ids, Role::B)
    }

    fn c(&self, c: usize) -> Cycle {
        let l = self.layout;
        let (r, lf, u) = (l.step(c, 1, 1), l.step(c, -1, 1), l.step(c, 0, 2));
        let mut ids = vec![
            self.tri(c, 0),
            self.tri(c, 1),
            self.tri(r, 0),
            self.tri(r, 3),
            self.tri(u, 3),
            self.tri(u, 2),
            self.tri(lf, 1),
            self.tri(lf, 2),
        ];
        let links = [
            ((c, 4), (c, 3)),
            ((c, 9), (c, 10)),
            ((r, 6), (r, 7)),
            ((r, 9), (r, 12)),
            ((u, 17), (u, 18)),
            ((u, 12), (u, 11)),
            ((lf, 13), (lf, 16)),
            ((lf, 10), (lf, 11)),
            ((c, 13), (c, 14)),
            ((c, 14), (r, 19)),
            ((r, 19), (r, 17)),
            ((r, 4), (r, 1)),
            ((r, 1), (u, 15)),
            ((u, 15), (u, 16)),
            ((u, 7), (u, 8)),
            ((u, 8), (lf, 2)),
            ((lf, 2), (lf, 3)),
            ((lf, 18), (lf, 20)),
            ((lf, 20), (c, 5)),
            ((c, 5), (c, 6)),
        ];
        ids.extend(links.iter().map(|&(x, y)| self.link(x, y)));
        self.cycle(ids, Role::C)
    }

    fn d(&self, c: usize, sq: usize) -> Cycle {
        let s = SQUARES[sq];
        let ids = (0..4).map(|i| self.link((c, s[i]), (c, s[(i + 1) % 4]))).collect();
        self.cycle(ids, Role::D)
    }

    /// Horizontal loop through rows b and b+1.
    fn horizontal(&self, b: usize) -> Cycle {
        let l = self.layout;
        let w = 2 * l.n();
        let mut ids = Vec::new();
        for a in 0..w {
            if let Some(c) = l.cell_at(a, b) {
                ids.push(self.link((c, 1), (c, 2)));
                ids.push(self.link((c, 1), (l.step(c, -1, 1), 15)));
                ids.push(self.link((c, 2), (l.step(c, 1, 1), 8)));
            }
            if let Some(c) = l.cell_at(a, (b + 1) % w) {
                for (x, y) in [(8, 7), (12, 11), (16, 15), (18, 17)] {
                    ids.push(self.link((c, x), (c, y)));
                }
                ids.push(self.tri(c, 3));
                ids.push(self.tri(c, 2));
            }
        }
        self.cycle(ids, Role::Other)
    }

    /// Vertical loop through columns a and a+1.
    fn vertical(&self, a: usize) -> Cycle {
        let l = self.layout;
        let w = 2 * l.n();
        let mut ids = Vec::new();
        for b in 0..w {
            if let Some(c) = l.cell_at(a, b) {
                ids.push(self.link((c, 14), (c, 15)));
                ids.push(self.link((c, 14), (l.step(c, 1, 1), 19)));
                ids.push(self.link((c, 15), (l.step(c, 1, -1), 1)));
            }
            if let Some(c) = l.cell_at((a + 1) % w, b) {
                for (x, y) in [(1, 4), (9, 12), (17, 19), (6, 7)] {
                    ids.push(self.link((c, x), (c, y)));
                }
                ids.push(self.tri(c, 0));
                ids.push(self.tri(c, 3));
            }
        }
        self.cycle(ids, Role::Other)
    }
}

/// Five-squares lattice with pins, tagged A/B/C/D cycles per cell and four
/// non-contractible loops.
pub fn five_squares_lattice(n: usize) -> Result<Lattice> {
    let (h, layout) = five_squares(n)?;
    let pins = pins(&h, &layout);
    let bld = Builder { h: &h, layout: &layout, idx: EdgeIndex::new(&h) };
    let mut cycles = Vec::new();
    for c in 0..layout.num_cells() {
        cycles.push(bld.a(c));
        cycles.push(bld.b(c));
        cycles.push(bld.c(c));
        for sq in 0..5 {
            cycles.push(bld.d(c, sq));
        }
    }
    cycles.push(bld.vertical(0));
    cycles.push(bld.horizontal(0));
    cycles.push(bld.vertical(1));
    cycles.push(bld.horizontal(1));
    Ok(Lattice {
        family: Some(Family::FiveSquares),
        spec: Some(LatticeSpec::FiveSquares { n }),
        hypergraph: h,
        pins: Some(pins),
        cycles: Some(cycles),
        layout: Some(layout),
    })
}
