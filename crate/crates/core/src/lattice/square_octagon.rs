//! The square-octagon hypergraph.
//!
//! Squares and octagons alternate on a 2Lx × 2Ly checkerboard: squares at
//! (i, j) with i + j even, octagons at i + j odd. Every square corner lies in
//! a triangle together with one vertex of each of the two octagons touching
//! that corner. Squares and octagons are bounded by links only, so each site
//! has two links and one triangle.
//!
//! Each square (i, j), centred at (4i, 4j), owns 12 sites: for each corner
//! NW, NE, SE, SW the corner itself, its vertex on the horizontally adjacent
//! octagon (h) and its vertex on the vertically adjacent octagon (v).
//! Triangles are stored as (h, corner, v).

use crate::error::Result;
use crate::hypergraph::{Coord, Edge, Hypergraph, Role, Site};

use super::{check_size, EdgeIndex, Family, Lattice, LatticeSpec};

const NW: usize = 0;
const NE: usize = 1;
const SE: usize = 2;
const SW: usize = 3;
const CORNER: usize = 0;
const H: usize = 1;
const V: usize = 2;

struct Grid {
    w: i64,
    hgt: i64,
}

impl Grid {
    fn square(&self, i: i64, j: i64) -> usize {
        let (i, j) = (i.rem_euclid(self.w), j.rem_euclid(self.hgt));
        debug_assert!((i + j) % 2 == 0);
        ((j * self.w + i) / 2) as usize
    }

    fn site(&self, i: i64, j: i64, corner: usize, kind: usize) -> usize {
        self.square(i, j) * 12 + corner * 3 + kind
    }

    fn shift(&self, i: i64, j: i64) -> [i8; 2] {
        let f = |v: i64, m: i64| if v < 0 { -1 } else if v >= m { 1 } else { 0 };
        [f(i, self.w), f(j, self.hgt)]
    }

    /// Octagon (i, j) vertices in counter-clockwise order, each with the
    /// grid position of its owning square.
    fn octagon(&self, i: i64, j: i64) -> [(usize, i64, i64); 8] {
        let v = |di: i64, dj: i64, c: usize, k: usize| (self.site(i + di, j + dj, c, k), i + di, j + dj);
        [
            v(0, -1, NW, V),
            v(0, -1, NE, V),
            v(1, 0, SW, H),
            v(1, 0, NW, H),
            v(0, 1, SE, V),
            v(0, 1, SW, V),
            v(-1, 0, NE, H),
            v(-1, 0, SE, H),
        ]
    }

    fn squares(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        (0..self.hgt).flat_map(move |j| (0..self.w).map(move |i| (i, j))).filter(|(i, j)| (i + j) % 2 == 0)
    }

    fn octagons(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        (0..self.hgt).flat_map(move |j| (0..self.w).map(move |i| (i, j))).filter(|(i, j)| (i + j) % 2 == 1)
    }
}

fn build(lx: usize, ly: usize) -> Result<(Hypergraph, Grid)> {
    check_size("Lx", lx)?;
    check_size("Ly", ly)?;
    let g = Grid { w: 2 * lx as i64, hgt: 2 * ly as i64 };
    let nsq = (g.w * g.hgt / 2) as usize;
    let mut sites = vec![Site::new(0, 0); nsq * 12];
    let corner_off = [(-1, 1), (1, 1), (1, -1), (-1, -1)];
    for (i, j) in g.squares() {
        for (c, &(dx, dy)) in corner_off.iter().enumerate() {
            let (cx, cy) = (4 * i, 4 * j);
            sites[g.site(i, j, c, CORNER)] = Site::new(cx + dx, cy + dy);
            sites[g.site(i, j, c, H)] = Site::new(cx + 2 * dx, cy + dy);
            sites[g.site(i, j, c, V)] = Site::new(cx + dx, cy + 2 * dy);
        }
    }
    let mut edges = Vec::new();
    for (i, j) in g.squares() {
        for c in [NW, SW, SE, NE].windows(2).map(|w| (w[0], w[1])).chain([(NE, NW)]) {
            edges.push(Edge::link(g.site(i, j, c.0, CORNER), g.site(i, j, c.1, CORNER)));
        }
        for c in [NW, NE, SE, SW] {
            edges.push(Edge::triangle(g.site(i, j, c, H), g.site(i, j, c, CORNER), g.site(i, j, c, V)));
        }
    }
    for (i, j) in g.octagons() {
        let o = g.octagon(i, j);
        for k in 0..8 {
            let (a, ai, aj) = o[k];
            let (b, bi, bj) = o[(k + 1) % 8];
            edges.push(Edge::link(a, b).with_shifts(vec![g.shift(ai, aj), g.shift(bi, bj)]));
        }
    }
    let h = Hypergraph::new(Coord::from_integer(8 * lx as i64), Coord::from_integer(8 * ly as i64), sites, edges)?;
    Ok((h, g))
}

/// Square-octagon hypergraph with 2·Lx·Ly squares and as many octagons.
pub fn square_octagon(lx: usize, ly: usize) -> Result<Hypergraph> {
    Ok(build(lx, ly)?.0)
}

/// Square-octagon lattice with tagged A/B/C/D cycles and four non-contractible loops.
pub fn square_octagon_lattice(lx: usize, ly: usize) -> Result<Lattice> {
    let (h, g) = build(lx, ly)?;
    let idx = EdgeIndex::new(&h);
    let link = |a: usize, b: usize| idx.get(&[a, b]);
    let tri = |i: i64, j: i64, c: usize| idx.get(&[g.site(i, j, c, H), g.site(i, j, c, CORNER), g.site(i, j, c, V)]);
    let corner = |i: i64, j: i64, c: usize| g.site(i, j, c, CORNER);
    let cyc = |ids: Vec<usize>, role: Role| h.cycle_from_ids(&ids, role).expect("catalog cycle");
    let mut cycles = Vec::new();
    for (i, j) in g.octagons() {
        let o = g.octagon(i, j);
        cycles.push(cyc((0..8).map(|k| link(o[k].0, o[(k + 1) % 8].0)).collect(), Role::A));
        let mut ids = vec![
            tri(i, j - 1, NW),
            tri(i, j - 1, NE),
            tri(i + 1, j, SW),
            tri(i + 1, j, NW),
            tri(i, j + 1, SE),
            tri(i, j + 1, SW),
            tri(i - 1, j, NE),
            tri(i - 1, j, SE),
        ];
        for k in [1, 3, 5, 7] {
            ids.push(link(o[k].0, o[(k + 1) % 8].0));
        }
        ids.push(link(corner(i, j - 1, NW), corner(i, j - 1, NE)));
        ids.push(link(corner(i + 1, j, SW), corner(i + 1, j, NW)));
        ids.push(link(corner(i, j + 1, SE), corner(i, j + 1, SW)));
        ids.push(link(corner(i - 1, j, NE), corner(i - 1, j, SE)));
        ids.push(link(g.site(i, j - 1, NW, H), g.site(i - 1, j, SE, V)));
        ids.push(link(g.site(i, j - 1, NE, H), g.site(i + 1, j, SW, V)));
        ids.push(link(g.site(i + 1, j, NW, V), g.site(i, j + 1, SE, H)));
        ids.push(link(g.site(i - 1, j, NE, V), g.site(i, j + 1, SW, H)));
        cycles.push(cyc(ids, Role::C));
    }
    for (i, j) in g.squares() {
        let mut ids: Vec<usize> = [NW, NE, SE, SW].iter().map(|&c| tri(i, j, c)).collect();
        ids.push(link(g.site(i, j, NE, V), g.site(i, j, NW, V)));
        ids.push(link(g.site(i, j, NW, H), g.site(i, j, SW, H)));
        ids.push(link(g.site(i, j, SW, V), g.site(i, j, SE, V)));
        ids.push(link(g.site(i, j, SE, H), g.site(i, j, NE, H)));
        ids.push(link(corner(i, j, NW), corner(i, j, NE)));
        ids.push(link(corner(i, j, SW), corner(i, j, SE)));
        cycles.push(cyc(ids, Role::B));
        let d = [NW, SW, SE, NE];
        cycles.push(cyc((0..4).map(|k| link(corner(i, j, d[k]), corner(i, j, d[(k + 1) % 4]))).collect(), Role::D));
    }
    // vertical loop through column i, horizontal loop through row j
    let vertical = |i: i64| {
        let mut ids = Vec::new();
        for j in (0..g.hgt).filter(|j| (i + j) % 2 == 0) {
            ids.push(tri(i, j, SE));
            ids.push(tri(i, j, NE));
            ids.push(link(corner(i, j, SE), corner(i, j, NE)));
            ids.push(link(g.site(i, j, SE, H), g.site(i, j, NE, H)));
            let o = g.octagon(i, j + 1);
            for k in 1..4 {
                ids.push(link(o[k].0, o[k + 1].0));
            }
        }
        cyc(ids, Role::Other)
    };
    let horizontal = |j: i64| {
        let mut ids = Vec::new();
        for i in (0..g.w).filter(|i| (i + j) % 2 == 0) {
            ids.push(tri(i, j, NW));
            ids.push(tri(i, j, NE));
            ids.push(link(corner(i, j, NW), corner(i, j, NE)));
            ids.push(link(g.site(i, j, NW, V), g.site(i, j, NE, V)));
            let o = g.octagon(i + 1, j);
            for k in [3, 4, 5] {
                ids.push(link(o[k].0, o[(k + 1) % 8].0));
            }
        }
        cyc(ids, Role::Other)
    };
    cycles.push(vertical(0));
    cycles.push(horizontal(0));
    cycles.push(vertical(1));
    cycles.push(horizontal(1));
    Ok(Lattice {
        family: Some(Family::SquareOctagon),
        spec: Some(LatticeSpec::SquareOctagon { lx, ly }),
        hypergraph: h,
        pins: None,
        cycles: Some(cycles),
        layout: None,
    })
}
