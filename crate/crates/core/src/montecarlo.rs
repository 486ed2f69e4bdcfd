//! Monte Carlo estimates of edge events.
//!
//! Trial `t` samples a configuration with seed `child_seed(master, t)`, so a
//! run over trials `0..T` gives the same success count whether it is done in
//! one pass, in batches, or on any number of threads.

use std::fmt;
use std::ops::Range;

use rayon::prelude::*;

use crate::degree::{DegreeSequence, DirectedDegreeSequence};
use crate::error::{check_vertex, Error, Result};
use crate::rng::child_seed;
use crate::sampler::{sample_configuration, sample_directed_configuration};

/// Two-sided level used for the zero-width fallback interval.
const FALLBACK_ALPHA: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Event {
    Pair(usize, usize),
    SelfLoop(usize),
    Arc(usize, usize),
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Event::Pair(m, n) => write!(f, "pair {m}-{n}"),
            Event::SelfLoop(s) => write!(f, "self-loop {s}"),
            Event::Arc(m, n) => write!(f, "arc {m}->{n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonteCarloEstimate {
    pub event: Event,
    pub trials: u64,
    pub successes: u64,
    pub p_hat: f64,
    /// `sqrt(p(1-p)/T)`; when every trial agrees this is replaced by the
    /// width of the exact Clopper-Pearson 95% bound, `1 - (α/2)^(1/T)`.
    pub std_error: f64,
}

impl MonteCarloEstimate {
    pub fn from_counts(event: Event, trials: u64, successes: u64) -> Self {
        let t = trials as f64;
        let p_hat = successes as f64 / t;
        let std_error = if successes == 0 || successes == trials {
            1.0 - (FALLBACK_ALPHA / 2.0).powf(1.0 / t)
        } else {
            (p_hat * (1.0 - p_hat) / t).sqrt()
        };
        Self {
            event,
            trials,
            successes,
            p_hat,
            std_error,
        }
    }

    /// `|p_hat - p| <= k · std_error`.
    pub fn within(&self, p: f64, k: f64) -> bool {
        (self.p_hat - p).abs() <= k * self.std_error
    }
}

/// Undirected or directed source of samples.
#[derive(Debug, Clone, Copy)]
pub enum Ensemble<'a> {
    Undirected(&'a DegreeSequence),
    Directed(&'a DirectedDegreeSequence),
}

impl Ensemble<'_> {
    fn check(&self, event: Event) -> Result<()> {
        match (self, event) {
            (Ensemble::Undirected(s), Event::Pair(m, n)) => {
                check_vertex(m, s.len())?;
                check_vertex(n, s.len())?;
                if m == n {
                    return Err(Error::SameVertex { vertex: m });
                }
                Ok(())
            }
            (Ensemble::Undirected(s), Event::SelfLoop(v)) => check_vertex(v, s.len()),
            (Ensemble::Directed(d), Event::Arc(m, n)) => {
                check_vertex(m, d.len())?;
                check_vertex(n, d.len())
            }
            _ => Err(Error::InvalidSpec(format!(
                "event {event} does not fit this ensemble"
            ))),
        }
    }

    fn trial_hits(&self, event: Event, seed: u64) -> bool {
        let (g, u, v) = match (self, event) {
            (Ensemble::Undirected(s), Event::Pair(m, n)) => (sample_configuration(s, seed), m, n),
            (Ensemble::Undirected(s), Event::SelfLoop(x)) => (sample_configuration(s, seed), x, x),
            (Ensemble::Directed(d), Event::Arc(m, n)) => {
                (sample_directed_configuration(d, seed), m, n)
            }
            _ => unreachable!("checked by Ensemble::check"),
        };
        g.has_edge(u, v).expect("vertices checked")
    }
}

/// Successes over the trial indices in `trials`.
pub fn count_successes(
    ensemble: Ensemble<'_>,
    event: Event,
    trials: Range<u64>,
    seed: u64,
) -> Result<u64> {
    ensemble.check(event)?;
    Ok(trials
        .into_par_iter()
        .filter(|&t| ensemble.trial_hits(event, child_seed(seed, t)))
        .count() as u64)
}

pub fn estimate(
    ensemble: Ensemble<'_>,
    event: Event,
    trials: u64,
    seed: u64,
) -> Result<MonteCarloEstimate> {
    if trials == 0 {
        return Err(Error::NoTrials);
    }
    let successes = count_successes(ensemble, event, 0..trials, seed)?;
    Ok(MonteCarloEstimate::from_counts(event, trials, successes))
}

pub fn estimate_connection_probability(
    seq: &DegreeSequence,
    m: usize,
    n: usize,
    trials: u64,
    seed: u64,
) -> Result<MonteCarloEstimate> {
    estimate(Ensemble::Undirected(seq), Event::Pair(m, n), trials, seed)
}

pub fn estimate_self_loop_probability(
    seq: &DegreeSequence,
    s: usize,
    trials: u64,
    seed: u64,
) -> Result<MonteCarloEstimate> {
    estimate(Ensemble::Undirected(seq), Event::SelfLoop(s), trials, seed)
}

pub fn estimate_directed_connection_probability(
    dseq: &DirectedDegreeSequence,
    m: usize,
    n: usize,
    trials: u64,
    seed: u64,
) -> Result<MonteCarloEstimate> {
    estimate(Ensemble::Directed(dseq), Event::Arc(m, n), trials, seed)
}
