//! Brick-wall honeycomb with x/y/z edge colouring.

use crate::code::Pins;
use crate::error::Result;
use crate::hypergraph::{Coord, Cycle, Edge, Hypergraph, Role, Site};
use crate::pauli::Pauli;

use super::{check_size, EdgeIndex, Family, Lattice, LatticeSpec};

fn a_site(lx: usize, i: usize, j: usize) -> usize {
    2 * (j * lx + i)
}

fn b_site(lx: usize, i: usize, j: usize) -> usize {
    2 * (j * lx + i) + 1
}

fn build(lx: usize, ly: usize) -> Result<(Hypergraph, Pins)> {
    check_size("Lx", lx)?;
    check_size("Ly", ly)?;
    let mut sites = Vec::with_capacity(2 * lx * ly);
    for j in 0..ly {
        for i in 0..lx {
            sites.push(Site::new(2 * i as i64, 2 * j as i64));
            sites.push(Site::new(2 * i as i64 + 1, 2 * j as i64));
        }
    }
    let mut edges = Vec::new();
    let mut pins = Pins::new();
    for j in 0..ly {
        for i in 0..lx {
            let a = a_site(lx, i, j);
            pins.insert(edges.len(), vec![Pauli::Z, Pauli::Z]);
            edges.push(Edge::link(a, b_site(lx, i, j)));
            let (xi, sx) = if i == 0 { (lx - 1, -1) } else { (i - 1, 0) };
            pins.insert(edges.len(), vec![Pauli::X, Pauli::X]);
            edges.push(Edge::link(a, b_site(lx, xi, j)).with_shifts(vec![[0, 0], [sx, 0]]));
            let (yj, sy) = if j == 0 { (ly - 1, -1) } else { (j - 1, 0) };
            pins.insert(edges.len(), vec![Pauli::Y, Pauli::Y]);
            edges.push(Edge::link(a, b_site(lx, i, yj)).with_shifts(vec![[0, 0], [0, sy]]));
        }
    }
    let h = Hypergraph::new(Coord::from_integer(2 * lx as i64), Coord::from_integer(2 * ly as i64), sites, edges)?;
    Ok((h, pins))
}

/// Honeycomb with 2·Lx·Ly sites and 3·Lx·Ly links.
pub fn honeycomb(lx: usize, ly: usize) -> Result<Hypergraph> {
    Ok(build(lx, ly)?.0)
}

/// Honeycomb with colour pins, hexagon cycles and two non-contractible loops.
pub fn honeycomb_lattice(lx: usize, ly: usize) -> Result<Lattice> {
    let (h, pins) = build(lx, ly)?;
    let idx = EdgeIndex::new(&h);
    let link = |a: usize, b: usize| idx.get(&[a, b]);
    let (pa, pb) = (|i: usize, j: usize| a_site(lx, i % lx, j % ly), |i: usize, j: usize| b_site(lx, i % lx, j % ly));
    let mut cycles: Vec<Cycle> = Vec::new();
    for j in 0..ly {
        for i in 0..lx {
            let im = i + lx - 1;
            let ids = vec![
                link(pa(i, j), pb(i, j)),
                link(pb(i, j), pa(i, j + 1)),
                link(pa(i, j + 1), pb(im, j + 1)),
                link(pb(im, j + 1), pa(im, j + 1)),
                link(pa(im, j + 1), pb(im, j)),
                link(pb(im, j), pa(i, j)),
            ];
            cycles.push(h.cycle_from_ids(&ids, Role::Hexagon).expect("hexagon"));
        }
    }
    let row: Vec<usize> = (0..lx).flat_map(|i| [link(pa(i, 0), pb(i, 0)), link(pb(i, 0), pa(i + 1, 0))]).collect();
    let col: Vec<usize> = (0..ly).flat_map(|j| [link(pa(0, j), pb(0, j)), link(pb(0, j), pa(0, j + 1))]).collect();
    cycles.push(h.cycle_from_ids(&row, Role::Other)?);
    cycles.push(h.cycle_from_ids(&col, Role::Other)?);
    Ok(Lattice {
        family: Some(Family::Honeycomb),
        spec: Some(LatticeSpec::Honeycomb { lx, ly }),
        hypergraph: h,
        pins: Some(pins),
        cycles: Some(cycles),
        layout: None,
    })
}
