//! Line-oriented lattice definition files.
//!
//! ```text
//! torus <Lx> <Ly>
//! site <id> <x> <y>
//! link <id> <s> <s> [dx dy dx dy]
//! tri <id> <s> <s> <s> [dx dy dx dy dx dy]
//! ```
//!
//! Coordinates are integers or `p/q` rationals. Site ids and edge ids (links
//! and triangles share one id space) must each cover 0..count exactly.
//! Lines starting with `#` are comments.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::hypergraph::{Coord, Edge, Hypergraph, Site};

use super::{Lattice, LatticeSpec};

fn fmt_coord(c: &Coord) -> String {
    if *c.denom() == 1 {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub fn save(h: &Hypergraph) -> String {
    let mut out = String::new();
    let (lx, ly) = h.periods();
    writeln!(out, "torus {} {}", fmt_coord(&lx), fmt_coord(&ly)).unwrap();
    for (i, s) in h.sites().iter().enumerate() {
        writeln!(out, "site {i} {} {}", fmt_coord(&s.x), fmt_coord(&s.y)).unwrap();
    }
    for (i, e) in h.edges().iter().enumerate() {
        out.push_str(if e.is_triangle() { "tri" } else { "link" });
        write!(out, " {i}").unwrap();
        for s in &e.sites {
            write!(out, " {s}").unwrap();
        }
        if e.shifts.iter().any(|d| *d != [0, 0]) {
            for d in &e.shifts {
                write!(out, " {} {}", d[0], d[1]).unwrap();
            }
        }
        out.push('\n');
    }
    out
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_coord(tok: &str, line: usize) -> Result<Coord> {
    let bad = || perr(line, format!("bad coordinate {tok:?}"));
    match tok.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.parse().map_err(|_| bad())?;
            let q: i64 = q.parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Coord::new(p, q))
        }
        None => Ok(Coord::from_integer(tok.parse().map_err(|_| bad())?)),
    }
}

fn parse_num<T: std::str::FromStr>(tok: &str, line: usize, what: &str) -> Result<T> {
    tok.parse().map_err(|_| perr(line, format!("bad {what} {tok:?}")))
}

fn place<T>(slots: &mut Vec<Option<T>>, id: usize, v: T, line: usize, what: &str) -> Result<()> {
    if slots.len() <= id {
        slots.resize_with(id + 1, || None);
    }
    if slots[id].is_some() {
        return Err(perr(line, format!("duplicate {what} id {id}")));
    }
    slots[id] = Some(v);
    Ok(())
}

pub fn load(text: &str) -> Result<Hypergraph> {
    let mut periods = None;
    let mut sites: Vec<Option<Site>> = Vec::new();
    let mut edges: Vec<Option<(Edge, usize)>> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let t: Vec<&str> = l.split_whitespace().collect();
        match t[0] {
            "torus" => {
                if t.len() != 3 {
                    return Err(perr(line, "torus needs two periods"));
                }
                if periods.is_some() {
                    return Err(perr(line, "repeated torus header"));
                }
                periods = Some((parse_coord(t[1], line)?, parse_coord(t[2], line)?));
            }
            "site" => {
                if t.len() != 4 {
                    return Err(perr(line, "site needs id, x, y"));
                }
                let id: usize = parse_num(t[1], line, "site id")?;
                let s = Site { x: parse_coord(t[2], line)?, y: parse_coord(t[3], line)? };
                place(&mut sites, id, s, line, "site")?;
            }
            "link" | "tri" => {
                let arity = if t[0] == "link" { 2 } else { 3 };
                if t.len() != 2 + arity && t.len() != 2 + 3 * arity {
                    return Err(perr(line, format!("{} needs id, {arity} sites and optional shifts", t[0])));
                }
                let id: usize = parse_num(t[1], line, "edge id")?;
                let s: Vec<usize> =
                    t[2..2 + arity].iter().map(|x| parse_num(x, line, "site id")).collect::<Result<_>>()?;
                let mut shifts = vec![[0i8, 0i8]; arity];
                if t.len() > 2 + arity {
                    for (i, d) in shifts.iter_mut().enumerate() {
                        let dx: i8 = parse_num(t[2 + arity + 2 * i], line, "shift")?;
                        let dy: i8 = parse_num(t[3 + arity + 2 * i], line, "shift")?;
                        if !(-1..=1).contains(&dx) || !(-1..=1).contains(&dy) {
                            return Err(perr(line, "shift outside {-1,0,1}"));
                        }
                        *d = [dx, dy];
                    }
                }
                place(&mut edges, id, (Edge { sites: s, shifts }, line), line, "edge")?;
            }
            other => return Err(perr(line, format!("unknown record {other:?}"))),
        }
    }
    let (lx, ly) = periods.ok_or_else(|| perr(0, "missing torus header"))?;
    let nsites = sites.len();
    let sites: Vec<Site> = sites
        .into_iter()
        .enumerate()
        .map(|(i, s)| s.ok_or_else(|| perr(0, format!("missing site id {i}"))))
        .collect::<Result<_>>()?;
    let edges: Vec<Edge> = edges
        .into_iter()
        .enumerate()
        .map(|(i, e)| {
            let (e, line) = e.ok_or_else(|| perr(0, format!("missing edge id {i}")))?;
            if let Some(&s) = e.sites.iter().find(|&&s| s >= nsites) {
                return Err(perr(line, format!("unknown site {s}")));
            }
            Ok(e)
        })
        .collect::<Result<_>>()?;
    Hypergraph::new(lx, ly, sites, edges)
}

/// Loads a lattice file. A `#! family` header written by `build` regenerates
/// the catalog lattice (with cycle tags and layout) after checking that the
/// file matches it.
pub fn load_lattice(text: &str) -> Result<Lattice> {
    let h = load(text)?;
    match LatticeSpec::from_header(text) {
        Some(spec) => {
            let l = Lattice::generate(spec)?;
            if l.hypergraph.num_sites() != h.num_sites() || l.hypergraph.edges() != h.edges() {
                return Err(perr(0, format!("file does not match its header {spec:?}")));
            }
            Ok(l)
        }
        None => Ok(Lattice::plain(h)),
    }
}

/// Catalog lattice as file text, headed by its `#! family` line.
pub fn save_lattice(l: &Lattice) -> String {
    let mut out = String::new();
    if let Some(spec) = l.spec {
        out.push_str(&spec.header());
        out.push('\n');
    }
    out.push_str(&save(&l.hypergraph));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn malformed_site_names_line() {
        let text = "torus 4 4\nsite 0 0 0\nsite 1 x 0\n";
        match load(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rational_coordinates_roundtrip() {
        let text = "torus 7/2 3\nsite 0 1/3 -2\nsite 1 0 0\nlink 0 0 1 0 0 1 0\n";
        let h = load(text).unwrap();
        assert_eq!(save(&h), text);
    }
}
