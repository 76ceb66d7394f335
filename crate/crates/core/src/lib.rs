//! Topological subsystem codes built from 3-valent hypergraphs on the torus.

pub mod bits;
pub mod code;
pub mod decoder;
pub mod error;
pub mod experiment;
pub mod gf2;
pub mod hypergraph;
pub mod lattice;
pub mod measurement;
pub mod pauli;

pub use bits::BitVec;
pub use code::{CodeInstance, EdgeOperatorSet};
pub use error::{Error, Result};
pub use hypergraph::{Cycle, Hypergraph, Role};
pub use lattice::{Family, Lattice, LatticeSpec};
pub use measurement::{CodeState, Schedule};
pub use pauli::{Pauli, PauliOp};
