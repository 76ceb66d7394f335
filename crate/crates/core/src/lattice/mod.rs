//! Lattice generators and the lattice definition file format.

mod five_squares;
mod honeycomb;
mod io;
mod square_octagon;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

pub use five_squares::{five_squares, five_squares_lattice, Layout, INTERNAL, NW_CORNERS, SQUARES};
pub use honeycomb::{honeycomb, honeycomb_lattice};
pub use io::{load, load_lattice, save, save_lattice};
pub use square_octagon::{square_octagon, square_octagon_lattice};

use crate::code::Pins;
use crate::error::{Error, Result};
use crate::hypergraph::{Cycle, Hypergraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Honeycomb,
    SquareOctagon,
    FiveSquares,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Honeycomb => "honeycomb",
            Family::SquareOctagon => "square_octagon",
            Family::FiveSquares => "five_squares",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "honeycomb" => Ok(Family::Honeycomb),
            "square_octagon" => Ok(Family::SquareOctagon),
            "five_squares" => Ok(Family::FiveSquares),
            _ => Err(Error::Config(format!("unknown family {s:?}"))),
        }
    }
}

/// Family plus size: `n` for five-squares (n × 2n unit cells), `lx`, `ly` otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LatticeSpec {
    Honeycomb { lx: usize, ly: usize },
    SquareOctagon { lx: usize, ly: usize },
    FiveSquares { n: usize },
}

impl LatticeSpec {
    pub fn family(&self) -> Family {
        match self {
            LatticeSpec::Honeycomb { .. } => Family::Honeycomb,
            LatticeSpec::SquareOctagon { .. } => Family::SquareOctagon,
            LatticeSpec::FiveSquares { .. } => Family::FiveSquares,
        }
    }

    /// Header comment written by `build` so that a saved file can be regenerated with tags.
    pub fn header(&self) -> String {
        match self {
            LatticeSpec::Honeycomb { lx, ly } => format!("#! family honeycomb {lx} {ly}"),
            LatticeSpec::SquareOctagon { lx, ly } => format!("#! family square_octagon {lx} {ly}"),
            LatticeSpec::FiveSquares { n } => format!("#! family five_squares {n}"),
        }
    }

    pub fn from_header(text: &str) -> Option<LatticeSpec> {
        let line = text.lines().find(|l| l.starts_with("#! family"))?;
        let f: Vec<&str> = line.split_whitespace().skip(2).collect();
        let num = |i: usize| f.get(i).and_then(|s| s.parse::<usize>().ok());
        match *f.first()? {
            "honeycomb" => Some(LatticeSpec::Honeycomb { lx: num(1)?, ly: num(2)? }),
            "square_octagon" => Some(LatticeSpec::SquareOctagon { lx: num(1)?, ly: num(2)? }),
            "five_squares" => Some(LatticeSpec::FiveSquares { n: num(1)? }),
            _ => None,
        }
    }
}

/// A generated hypergraph together with edge-operator pins, tagged cycles
/// spanning the cycle space, and (for five-squares) the unit-cell layout.
#[derive(Clone, Debug)]
pub struct Lattice {
    pub family: Option<Family>,
    pub spec: Option<LatticeSpec>,
    pub hypergraph: Hypergraph,
    pub pins: Option<Pins>,
    pub cycles: Option<Vec<Cycle>>,
    pub layout: Option<Layout>,
}

impl Lattice {
    pub fn generate(spec: LatticeSpec) -> Result<Lattice> {
        match spec {
            LatticeSpec::Honeycomb { lx, ly } => honeycomb_lattice(lx, ly),
            LatticeSpec::SquareOctagon { lx, ly } => square_octagon_lattice(lx, ly),
            LatticeSpec::FiveSquares { n } => five_squares_lattice(n),
        }
    }

    /// Plain hypergraph with no catalog metadata.
    pub fn plain(h: Hypergraph) -> Lattice {
        Lattice { family: None, spec: None, hypergraph: h, pins: None, cycles: None, layout: None }
    }
}

fn check_size(name: &str, v: usize) -> Result<()> {
    if v < 2 {
        return Err(Error::Size(format!("{name} = {v}, must be at least 2")));
    }
    Ok(())
}

/// Lookup of edges by their site sets.
pub(crate) struct EdgeIndex {
    map: HashMap<Vec<usize>, usize>,
}

impl EdgeIndex {
    pub(crate) fn new(h: &Hypergraph) -> Self {
        let mut map = HashMap::new();
        for (e, edge) in h.edges().iter().enumerate() {
            let mut k = edge.sites.clone();
            k.sort_unstable();
            map.insert(k, e);
        }
        EdgeIndex { map }
    }

    pub(crate) fn get(&self, sites: &[usize]) -> usize {
        let mut k = sites.to_vec();
        k.sort_unstable();
        *self.map.get(&k).unwrap_or_else(|| panic!("no edge on sites {sites:?}"))
    }
}
