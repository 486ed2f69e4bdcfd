//! Configuration-model random graph ensembles.
//!
//! A degree sequence `{k_i}` fixes the number of stubs (half-edges) at every
//! vertex. The ensemble is the set of all ways of pairing those stubs, so it
//! contains self-loops and parallel edges. This crate provides
//!
//! * validated degree sequences and seeded degree-distribution sampling
//!   ([`degree`]),
//! * exact connection and self-loop probabilities from the alternating
//!   inclusion-exclusion series, plus ensemble sizes ([`analytic`]),
//! * uniform stub-matching samplers for undirected and directed sequences
//!   ([`sampler`]),
//! * a brute-force enumeration oracle for tiny instances ([`oracle`]),
//! * seeded, parallel Monte Carlo estimators ([`montecarlo`]),
//! * the plain-text degree-file and edge-list formats ([`format`]).
//!
//! Vertices are labelled `0..N` everywhere.

pub mod analytic;
pub mod degree;
mod error;
pub mod format;
pub mod montecarlo;
pub mod oracle;
pub mod rng;
pub mod sampler;

pub use analytic::{
    connection_probability, connection_probability_sparse, directed_connection_probability,
    directed_ensemble_log_size, ensemble_log_size, expected_degree_identity, self_loop_probability,
    Arithmetic, EnsembleSize, ProbabilityResult, SeriesMode, SeriesTerms,
};
pub use degree::{DegreeDistribution, DegreeSequence, DirectedDegreeSequence};
pub use error::{Error, Result};
pub use montecarlo::{Event, MonteCarloEstimate};
pub use oracle::{OracleCaps, OracleReport};
pub use sampler::{sample_configuration, sample_directed_configuration, MultiGraph};

/// Exact rational type used for every probability and series term.
pub type Rational = num_rational::BigRational;
