use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("invalid Pauli character {ch:?} at position {pos}")]
    PauliParse { pos: usize, ch: char },
    #[error("unknown edge id {0}")]
    UnknownEdge(usize),
    #[error("unknown site id {0}")]
    UnknownSite(usize),
    #[error("edge set is not a cycle: site {site} has odd incidence")]
    NotCycle { site: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid size: {0}")]
    Size(String),
    #[error("unsatisfiable edge operator assignment at site {site}: {msg}")]
    Unsatisfiable { site: usize, msg: String },
    #[error("cycle list does not span the cycle space (rank {rank}, dimension {dim})")]
    NotSpanning { rank: usize, dim: usize },
    #[error("triangle-overlap form is not symplectic on the quotient (dimension {0})")]
    OddQuotient(usize),
    #[error("probability {0} out of range")]
    Probability(f64),
    #[error("decomposition: {0}")]
    Decomposition(String),
    #[error("decoder: {0}")]
    Decoder(String),
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
