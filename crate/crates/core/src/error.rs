use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree sequence is empty")]
    EmptySequence,
    #[error("NegativeDegree: vertex {vertex} has degree {degree}")]
    NegativeDegree { vertex: usize, degree: i64 },
    #[error("OddStubTotal: degree sum {total} is odd, no stub matching exists")]
    OddStubTotal { total: u64 },
    #[error("LengthMismatch: {in_len} in-degrees but {out_len} out-degrees")]
    LengthMismatch { in_len: usize, out_len: usize },
    #[error("UnbalancedStubs: in-degree sum {in_total} differs from out-degree sum {out_total}")]
    UnbalancedStubs { in_total: u64, out_total: u64 },
    #[error("InvalidSpec: {0}")]
    InvalidSpec(String),
    #[error("SameVertex: m = n = {vertex}; use the self-loop probability instead")]
    SameVertex { vertex: usize },
    #[error("VertexOutOfRange: vertex {vertex} not in 0..{n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("TooLarge: instance size {size} exceeds enumeration cap {cap}")]
    TooLarge { size: u64, cap: u64 },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("trial count must be positive")]
    NoTrials,
}

pub(crate) fn check_vertex(vertex: usize, n: usize) -> Result<()> {
    if vertex < n {
        Ok(())
    } else {
        Err(Error::VertexOutOfRange { vertex, n })
    }
}
