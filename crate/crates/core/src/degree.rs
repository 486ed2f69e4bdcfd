//! Degree sequences and degree-distribution sampling.

use rand::Rng;
use rand_distr::{Distribution, Poisson};

use crate::error::{Error, Result};
use crate::rng::rng_from_seed;

/// Validated undirected degree sequence. The stub total is even, so at least
/// one perfect matching of the stubs exists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DegreeSequence {
    degrees: Vec<u64>,
    edges: u64,
}

impl DegreeSequence {
    /// Validates raw (possibly negative) integers.
    pub fn from_raw(raw: &[i64]) -> Result<Self> {
        let degrees = to_unsigned(raw)?;
        Self::new(degrees)
    }

    pub fn new(degrees: Vec<u64>) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::EmptySequence);
        }
        let total = stub_total(&degrees)?;
        if total % 2 == 1 {
            return Err(Error::OddStubTotal { total });
        }
        Ok(Self {
            degrees,
            edges: total / 2,
        })
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn degree(&self, v: usize) -> u64 {
        self.degrees[v]
    }

    /// Number of vertices `N`.
    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    /// Number of edges `L`, half the stub total.
    pub fn edge_count(&self) -> u64 {
        self.edges
    }

    pub fn stub_count(&self) -> u64 {
        2 * self.edges
    }
}

/// Validated directed degree sequence with `Σ k_in = Σ k_out = L`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DirectedDegreeSequence {
    in_degrees: Vec<u64>,
    out_degrees: Vec<u64>,
    edges: u64,
}

impl DirectedDegreeSequence {
    pub fn from_raw(in_raw: &[i64], out_raw: &[i64]) -> Result<Self> {
        if in_raw.len() != out_raw.len() {
            return Err(Error::LengthMismatch {
                in_len: in_raw.len(),
                out_len: out_raw.len(),
            });
        }
        Self::new(to_unsigned(in_raw)?, to_unsigned(out_raw)?)
    }

    pub fn new(in_degrees: Vec<u64>, out_degrees: Vec<u64>) -> Result<Self> {
        if in_degrees.len() != out_degrees.len() {
            return Err(Error::LengthMismatch {
                in_len: in_degrees.len(),
                out_len: out_degrees.len(),
            });
        }
        if in_degrees.is_empty() {
            return Err(Error::EmptySequence);
        }
        let in_total = stub_total(&in_degrees)?;
        let out_total = stub_total(&out_degrees)?;
        if in_total != out_total {
            return Err(Error::UnbalancedStubs {
                in_total,
                out_total,
            });
        }
        Ok(Self {
            in_degrees,
            out_degrees,
            edges: in_total,
        })
    }

    pub fn in_degrees(&self) -> &[u64] {
        &self.in_degrees
    }

    pub fn out_degrees(&self) -> &[u64] {
        &self.out_degrees
    }

    pub fn in_degree(&self, v: usize) -> u64 {
        self.in_degrees[v]
    }

    pub fn out_degree(&self, v: usize) -> u64 {
        self.out_degrees[v]
    }

    pub fn len(&self) -> usize {
        self.in_degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.in_degrees.is_empty()
    }

    /// Number of directed edges `L`.
    pub fn edge_count(&self) -> u64 {
        self.edges
    }
}

fn to_unsigned(raw: &[i64]) -> Result<Vec<u64>> {
    raw.iter()
        .enumerate()
        .map(|(vertex, &degree)| {
            u64::try_from(degree).map_err(|_| Error::NegativeDegree { vertex, degree })
        })
        .collect()
}

fn stub_total(degrees: &[u64]) -> Result<u64> {
    degrees
        .iter()
        .try_fold(0u64, |acc, &k| acc.checked_add(k))
        .ok_or_else(|| Error::InvalidSpec("stub total overflows u64".into()))
}

/// Per-vertex degree law used by [`sample_degree_sequence`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DegreeDistribution {
    Constant(u64),
    Poisson {
        mean: f64,
    },
    /// Discrete `P(k) ∝ k^(-exponent)` on `k_min..=k_max`.
    PowerLaw {
        exponent: f64,
        k_min: u64,
        k_max: u64,
    },
}

/// Largest power-law support for which the inverse-transform table is built.
const MAX_POWER_LAW_SUPPORT: u64 = 50_000_000;

impl DegreeDistribution {
    pub fn validate(&self) -> Result<()> {
        match *self {
            DegreeDistribution::Constant(_) => Ok(()),
            DegreeDistribution::Poisson { mean } => {
                if mean.is_finite() && mean > 0.0 {
                    Ok(())
                } else {
                    Err(Error::InvalidSpec(format!(
                        "poisson mean must be > 0, got {mean}"
                    )))
                }
            }
            DegreeDistribution::PowerLaw {
                exponent,
                k_min,
                k_max,
            } => {
                if !(exponent.is_finite() && exponent > 1.0) {
                    return Err(Error::InvalidSpec(format!(
                        "power-law exponent must be > 1, got {exponent}"
                    )));
                }
                if k_min < 1 || k_min > k_max {
                    return Err(Error::InvalidSpec(format!(
                        "power law needs 1 <= k_min <= k_max, got k_min={k_min}, k_max={k_max}"
                    )));
                }
                if k_max - k_min >= MAX_POWER_LAW_SUPPORT {
                    return Err(Error::InvalidSpec(format!(
                        "power-law support wider than {MAX_POWER_LAW_SUPPORT}"
                    )));
                }
                Ok(())
            }
        }
    }

    fn cap(&self) -> Option<u64> {
        match *self {
            DegreeDistribution::PowerLaw { k_max, .. } => Some(k_max),
            _ => None,
        }
    }
}

/// Parses `constant:K`, `poisson:MEAN` or `power-law:EXPONENT:K_MIN:K_MAX`.
impl std::str::FromStr for DegreeDistribution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = |what: &str| Error::InvalidSpec(format!("{what} in distribution {s:?}"));
        let int = |t: &str| t.parse::<u64>().map_err(|_| bad("bad integer"));
        let float = |t: &str| t.parse::<f64>().map_err(|_| bad("bad number"));
        let dist = match parts.as_slice() {
            ["constant", k] => DegreeDistribution::Constant(int(k)?),
            ["poisson", mean] => DegreeDistribution::Poisson { mean: float(mean)? },
            ["power-law", exponent, k_min, k_max] => DegreeDistribution::PowerLaw {
                exponent: float(exponent)?,
                k_min: int(k_min)?,
                k_max: int(k_max)?,
            },
            _ => return Err(bad("unknown form")),
        };
        dist.validate()?;
        Ok(dist)
    }
}

/// Inverse-transform sampler over a finite support.
struct PowerLawTable {
    k_min: u64,
    cdf: Vec<f64>,
}

impl PowerLawTable {
    fn new(exponent: f64, k_min: u64, k_max: u64) -> Self {
        let mut acc = 0.0;
        let cdf = (k_min..=k_max)
            .map(|k| {
                acc += (k as f64).powf(-exponent);
                acc
            })
            .collect();
        Self { k_min, cdf }
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        let total = *self.cdf.last().expect("nonempty support");
        let u = rng.random::<f64>() * total;
        let idx = self
            .cdf
            .partition_point(|&c| c <= u)
            .min(self.cdf.len() - 1);
        self.k_min + idx as u64
    }
}

/// Draws `n` i.i.d. degrees from `dist`, then repairs an odd stub total by
/// incrementing one uniformly chosen vertex. For a power law, vertices already
/// at `k_max` are skipped by redrawing the choice; if every vertex sits at
/// `k_max`, one uniformly chosen vertex is decremented instead.
pub fn sample_degree_sequence(
    dist: &DegreeDistribution,
    n: usize,
    seed: u64,
) -> Result<DegreeSequence> {
    dist.validate()?;
    if n == 0 {
        return Err(Error::EmptySequence);
    }
    let mut rng = rng_from_seed(seed);
    let mut degrees: Vec<u64> = match *dist {
        DegreeDistribution::Constant(k) => vec![k; n],
        DegreeDistribution::Poisson { mean } => {
            let poisson = Poisson::new(mean).map_err(|e| Error::InvalidSpec(e.to_string()))?;
            (0..n).map(|_| poisson.sample(&mut rng) as u64).collect()
        }
        DegreeDistribution::PowerLaw {
            exponent,
            k_min,
            k_max,
        } => {
            let table = PowerLawTable::new(exponent, k_min, k_max);
            (0..n).map(|_| table.sample(&mut rng)).collect()
        }
    };
    let total = stub_total(&degrees)?;
    if total % 2 == 1 {
        repair_parity(&mut degrees, dist.cap(), &mut rng);
    }
    DegreeSequence::new(degrees)
}

fn repair_parity<R: Rng + ?Sized>(degrees: &mut [u64], cap: Option<u64>, rng: &mut R) {
    let n = degrees.len();
    match cap {
        Some(k_max) if degrees.iter().all(|&k| k >= k_max) => {
            let v = rng.random_range(0..n);
            degrees[v] -= 1;
        }
        Some(k_max) => loop {
            let v = rng.random_range(0..n);
            if degrees[v] < k_max {
                degrees[v] += 1;
                break;
            }
        },
        None => {
            let v = rng.random_range(0..n);
            degrees[v] += 1;
        }
    }
}
