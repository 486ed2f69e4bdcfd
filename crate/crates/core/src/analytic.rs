//! Closed-form ensemble quantities.
//!
//! Connection probabilities come from expanding the "forbidden pair"
//! generating polynomial binomially and reading off the coefficient of
//! `∏ x_i^{k_i}`. The result is a finite alternating inclusion-exclusion
//! series; term `i` counts configurations containing `i` designated
//! forbidden stub pairs:
//!
//! | event | term `i` (magnitude) | `i_max` |
//! |---|---|---|
//! | edge `m`–`n` | `(k_m)_i (k_n)_i / (i! ∏_{j≤i} (2L−2j+1))` | `min(k_m, k_n, L)` |
//! | self-loop at `s` | `(k_s)_{2i} / (i! 2^i ∏_{j≤i} (2L−2j+1))` | `min(⌊k_s/2⌋, L)` |
//! | arc `m→n` | `(k_m^out)_i (k_n^in)_i / (i! (L)_i)` | `min(k_m^out, k_n^in, L)` |
//!
//! where `(k)_i` is the falling factorial. Term `i` carries sign `(−1)^(i+1)`.
//!
//! Everything is evaluated in exact rationals unless the series is long
//! (`i_max > 64`) or the graph is large (`2L > 10^6`), in which case the
//! terms are built as log-space products in `f64` and summed with
//! compensated summation. Each float term is accurate to roughly 1e−12
//! relative; the sum of a strongly cancelling series is not guaranteed to be.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use statrs::function::gamma::ln_gamma;

use crate::degree::{DegreeSequence, DirectedDegreeSequence};
use crate::error::{check_vertex, Error, Result};
use crate::Rational;

/// How many series terms to keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesMode {
    /// All terms up to `i_max`; the exact probability.
    Full,
    /// Terms `1..=min(r, i_max)`.
    Truncated(usize),
    /// The two-term truncation in its historically printed form. For the
    /// undirected pair this omits the `1/2!` on the second term and so
    /// differs from `Truncated(2)`; for self-loops and arcs the printed
    /// form coincides with `Truncated(2)`.
    PaperLiteral,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Arithmetic {
    /// Exact unless the series is longer than [`FLOAT_ORDER_THRESHOLD`]
    /// or the stub total exceeds [`FLOAT_STUB_THRESHOLD`].
    #[default]
    Auto,
    Exact,
    Float,
}

pub const FLOAT_ORDER_THRESHOLD: usize = 64;
pub const FLOAT_STUB_THRESHOLD: u64 = 1_000_000;

/// Stub totals up to this value get an exact ensemble size by default.
pub const DEFAULT_EXACT_STUB_CAP: u64 = 64;

#[derive(Debug, Clone, PartialEq)]
pub enum SeriesTerms {
    Exact(Vec<Rational>),
    Float(Vec<f64>),
}

impl SeriesTerms {
    pub fn len(&self) -> usize {
        match self {
            SeriesTerms::Exact(t) => t.len(),
            SeriesTerms::Float(t) => t.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_f64(&self) -> Vec<f64> {
        match self {
            SeriesTerms::Exact(t) => t.iter().map(rational_to_f64).collect(),
            SeriesTerms::Float(t) => t.clone(),
        }
    }
}

/// A probability together with the signed series terms that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityResult {
    mode: SeriesMode,
    truncation_order: usize,
    terms: SeriesTerms,
    exact: Option<Rational>,
    value: f64,
}

impl ProbabilityResult {
    fn from_exact(mode: SeriesMode, terms: Vec<Rational>) -> Self {
        let exact = terms.iter().fold(Rational::zero(), |acc, t| acc + t);
        Self {
            mode,
            truncation_order: terms.len(),
            value: rational_to_f64(&exact),
            exact: Some(exact),
            terms: SeriesTerms::Exact(terms),
        }
    }

    fn from_float(mode: SeriesMode, terms: Vec<f64>) -> Self {
        Self {
            mode,
            truncation_order: terms.len(),
            value: neumaier_sum(&terms),
            exact: None,
            terms: SeriesTerms::Float(terms),
        }
    }

    pub fn mode(&self) -> SeriesMode {
        self.mode
    }

    /// Number of terms actually summed.
    pub fn truncation_order(&self) -> usize {
        self.truncation_order
    }

    pub fn terms(&self) -> &SeriesTerms {
        &self.terms
    }

    /// Exact value, absent when the float path was taken.
    pub fn exact(&self) -> Option<&Rational> {
        self.exact.as_ref()
    }

    pub fn value(&self) -> f64 {
        self.value
    }
}

/// Ensemble size: the number of ordered stub arrangements `(2L)!/∏ k_i!`
/// (undirected) or `(L!/∏ k_in!)(L!/∏ k_out!)` (directed).
///
/// This is not the number of perfect matchings; the normalization cancels in
/// every probability.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleSize {
    pub ln_value: f64,
    pub exact_value: Option<BigUint>,
}

impl EnsembleSize {
    /// Relative discrepancy between `ln_value` and `ln(exact_value)`.
    pub fn log_discrepancy(&self) -> Option<f64> {
        let exact = self.exact_value.as_ref()?;
        let ln_exact = ln_biguint(exact);
        Some((ln_exact - self.ln_value).abs() / ln_exact.abs().max(1.0))
    }
}

fn ln_factorial(k: u64) -> f64 {
    if k < 2 {
        0.0
    } else {
        ln_gamma(k as f64 + 1.0)
    }
}

fn factorial(k: u64) -> BigUint {
    (2..=k).fold(BigUint::one(), |acc, j| acc * j)
}

fn ln_biguint(x: &BigUint) -> f64 {
    match x.to_f64() {
        Some(v) if v.is_finite() => v.ln(),
        _ => {
            let shift = x.bits().saturating_sub(64);
            let top = (x >> shift).to_f64().unwrap_or(f64::MAX);
            top.ln() + shift as f64 * std::f64::consts::LN_2
        }
    }
}

pub fn ensemble_log_size(seq: &DegreeSequence) -> EnsembleSize {
    ensemble_log_size_with_cap(seq, DEFAULT_EXACT_STUB_CAP)
}

pub fn ensemble_log_size_with_cap(seq: &DegreeSequence, exact_stub_cap: u64) -> EnsembleSize {
    let stubs = seq.stub_count();
    let ln_value =
        ln_factorial(stubs) - seq.degrees().iter().map(|&k| ln_factorial(k)).sum::<f64>();
    let exact_value = (stubs <= exact_stub_cap).then(|| {
        let denom = seq
            .degrees()
            .iter()
            .fold(BigUint::one(), |acc, &k| acc * factorial(k));
        factorial(stubs) / denom
    });
    EnsembleSize {
        ln_value,
        exact_value,
    }
}

pub fn directed_ensemble_log_size(dseq: &DirectedDegreeSequence) -> EnsembleSize {
    directed_ensemble_log_size_with_cap(dseq, DEFAULT_EXACT_STUB_CAP)
}

pub fn directed_ensemble_log_size_with_cap(
    dseq: &DirectedDegreeSequence,
    exact_stub_cap: u64,
) -> EnsembleSize {
    let l = dseq.edge_count();
    let degree_logs: f64 = dseq
        .in_degrees()
        .iter()
        .chain(dseq.out_degrees())
        .map(|&k| ln_factorial(k))
        .sum();
    let ln_value = 2.0 * ln_factorial(l) - degree_logs;
    let exact_value = (2 * l <= exact_stub_cap).then(|| {
        let denom = dseq
            .in_degrees()
            .iter()
            .chain(dseq.out_degrees())
            .fold(BigUint::one(), |acc, &k| acc * factorial(k));
        let l_fact = factorial(l);
        &l_fact * &l_fact / denom
    });
    EnsembleSize {
        ln_value,
        exact_value,
    }
}

/// Ratio between consecutive term magnitudes, `|t_i| = |t_{i-1}| · num/den`.
struct StepFactor {
    num: [u64; 2],
    den: [u64; 3],
}

fn use_float(arith: Arithmetic, order: usize, stubs: u64) -> bool {
    match arith {
        Arithmetic::Exact => false,
        Arithmetic::Float => true,
        Arithmetic::Auto => order > FLOAT_ORDER_THRESHOLD || stubs > FLOAT_STUB_THRESHOLD,
    }
}

fn sum_series(
    mode: SeriesMode,
    order: usize,
    float: bool,
    step: impl Fn(u64) -> StepFactor,
) -> ProbabilityResult {
    if float {
        let mut log_mag = 0.0;
        let terms = (1..=order as u64)
            .map(|i| {
                let f = step(i);
                log_mag += f.num.iter().map(|&x| (x as f64).ln()).sum::<f64>()
                    - f.den.iter().map(|&x| (x as f64).ln()).sum::<f64>();
                let sign = if i % 2 == 1 { 1.0 } else { -1.0 };
                sign * log_mag.exp()
            })
            .collect();
        ProbabilityResult::from_float(mode, terms)
    } else {
        let mut magnitude = Rational::one();
        let terms = (1..=order as u64)
            .map(|i| {
                let f = step(i);
                let num: BigInt = f.num.iter().map(|&x| BigInt::from(x)).product();
                let den: BigInt = f.den.iter().map(|&x| BigInt::from(x)).product();
                magnitude = &magnitude * Rational::new(num, den);
                if i % 2 == 1 {
                    magnitude.clone()
                } else {
                    -magnitude.clone()
                }
            })
            .collect();
        ProbabilityResult::from_exact(mode, terms)
    }
}

fn literal_result(mode: SeriesMode, float: bool, terms: Vec<Rational>) -> ProbabilityResult {
    if float {
        ProbabilityResult::from_float(mode, terms.iter().map(rational_to_f64).collect())
    } else {
        ProbabilityResult::from_exact(mode, terms)
    }
}

fn order_for(mode: SeriesMode, i_max: u64) -> usize {
    let i_max = usize::try_from(i_max).unwrap_or(usize::MAX);
    match mode {
        SeriesMode::Full => i_max,
        SeriesMode::Truncated(r) => r.min(i_max),
        SeriesMode::PaperLiteral => 2.min(i_max),
    }
}

fn ratio(num: u64, den: u64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Probability that vertices `m != n` share at least one edge.
pub fn connection_probability(
    seq: &DegreeSequence,
    m: usize,
    n: usize,
    mode: SeriesMode,
) -> Result<ProbabilityResult> {
    connection_probability_with(seq, m, n, mode, Arithmetic::Auto)
}

pub fn connection_probability_with(
    seq: &DegreeSequence,
    m: usize,
    n: usize,
    mode: SeriesMode,
    arith: Arithmetic,
) -> Result<ProbabilityResult> {
    check_vertex(m, seq.len())?;
    check_vertex(n, seq.len())?;
    if m == n {
        return Err(Error::SameVertex { vertex: m });
    }
    let (km, kn, l) = (seq.degree(m), seq.degree(n), seq.edge_count());
    let order = order_for(mode, km.min(kn).min(l));
    let float = use_float(arith, order, seq.stub_count());
    if mode == SeriesMode::PaperLiteral {
        // k_m k_n/(2L-1) - k_m k_n (k_m-1)(k_n-1)/((2L-1)(2L-3))
        let mut terms = Vec::with_capacity(order);
        if order >= 1 {
            terms.push(ratio(km * kn, 2 * l - 1));
        }
        if order >= 2 {
            terms.push(-(ratio(km * kn, 2 * l - 1) * ratio((km - 1) * (kn - 1), 2 * l - 3)));
        }
        return Ok(literal_result(mode, float, terms));
    }
    Ok(sum_series(mode, order, float, |i| StepFactor {
        num: [km - i + 1, kn - i + 1],
        den: [i, 2 * l - 2 * i + 1, 1],
    }))
}

/// First-order (sparse-limit) probability `k_m k_n / (2L − 1)`.
///
/// Not clamped: for dense pairs the value exceeds 1.
pub fn connection_probability_sparse(
    seq: &DegreeSequence,
    m: usize,
    n: usize,
) -> Result<ProbabilityResult> {
    connection_probability(seq, m, n, SeriesMode::Truncated(1))
}

/// Probability that `s` carries at least one self-loop.
pub fn self_loop_probability(
    seq: &DegreeSequence,
    s: usize,
    mode: SeriesMode,
) -> Result<ProbabilityResult> {
    self_loop_probability_with(seq, s, mode, Arithmetic::Auto)
}

pub fn self_loop_probability_with(
    seq: &DegreeSequence,
    s: usize,
    mode: SeriesMode,
    arith: Arithmetic,
) -> Result<ProbabilityResult> {
    check_vertex(s, seq.len())?;
    let (ks, l) = (seq.degree(s), seq.edge_count());
    let order = order_for(mode, (ks / 2).min(l));
    let float = use_float(arith, order, seq.stub_count());
    if mode == SeriesMode::PaperLiteral {
        // k(k-1)/(2(2L-1)) - L(L-1)/2! * k(k-1)(k-2)(k-3)/(2L(2L-1)(2L-2)(2L-3))
        let mut terms = Vec::with_capacity(order);
        if order >= 1 {
            terms.push(ratio(ks * (ks - 1), 2 * (2 * l - 1)));
        }
        if order >= 2 {
            let pairs = ratio(l * (l - 1), 2);
            let stubs = ratio(ks * (ks - 1), 2 * l * (2 * l - 1))
                * ratio((ks - 2) * (ks - 3), (2 * l - 2) * (2 * l - 3));
            terms.push(-(pairs * stubs));
        }
        return Ok(literal_result(mode, float, terms));
    }
    Ok(sum_series(mode, order, float, |i| StepFactor {
        num: [ks - 2 * i + 2, ks - 2 * i + 1],
        den: [i, 2, 2 * l - 2 * i + 1],
    }))
}

/// Probability of at least one arc `m → n`; `m == n` is a directed self-loop.
pub fn directed_connection_probability(
    dseq: &DirectedDegreeSequence,
    m: usize,
    n: usize,
    mode: SeriesMode,
) -> Result<ProbabilityResult> {
    directed_connection_probability_with(dseq, m, n, mode, Arithmetic::Auto)
}

pub fn directed_connection_probability_with(
    dseq: &DirectedDegreeSequence,
    m: usize,
    n: usize,
    mode: SeriesMode,
    arith: Arithmetic,
) -> Result<ProbabilityResult> {
    check_vertex(m, dseq.len())?;
    check_vertex(n, dseq.len())?;
    let (out_m, in_n, l) = (dseq.out_degree(m), dseq.in_degree(n), dseq.edge_count());
    let order = order_for(mode, out_m.min(in_n).min(l));
    let float = use_float(arith, order, 2 * l);
    if mode == SeriesMode::PaperLiteral {
        // k_n^in k_m^out / L - 1/2! * k_m^out k_n^in / L * (k_m^out-1)(k_n^in-1)/(L-1)
        let mut terms = Vec::with_capacity(order);
        if order >= 1 {
            terms.push(ratio(in_n * out_m, l));
        }
        if order >= 2 {
            terms.push(
                -(ratio(1, 2) * ratio(out_m * in_n, l) * ratio((out_m - 1) * (in_n - 1), l - 1)),
            );
        }
        return Ok(literal_result(mode, float, terms));
    }
    Ok(sum_series(mode, order, float, |i| StepFactor {
        num: [out_m - i + 1, in_n - i + 1],
        den: [i, l - i + 1, 1],
    }))
}

/// `Σ_n k_m^out k_n^in / L` over every target `n` (including `m`), using the
/// first-order arc probability. Equals `k_m^out` exactly.
pub fn expected_degree_identity(dseq: &DirectedDegreeSequence, m: usize) -> Result<Rational> {
    check_vertex(m, dseq.len())?;
    let l = dseq.edge_count();
    if l == 0 {
        return Ok(Rational::zero());
    }
    let out_m = dseq.out_degree(m);
    Ok(dseq
        .in_degrees()
        .iter()
        .map(|&in_n| ratio(out_m * in_n, l))
        .fold(Rational::zero(), |acc, p| acc + p))
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn neumaier_sum(xs: &[f64]) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for &x in xs {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn seq(raw: &[i64]) -> DegreeSequence {
        DegreeSequence::from_raw(raw).unwrap()
    }

    fn dseq(in_raw: &[i64], out_raw: &[i64]) -> DirectedDegreeSequence {
        DirectedDegreeSequence::from_raw(in_raw, out_raw).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn exact(r: &ProbabilityResult) -> Rational {
        r.exact().cloned().unwrap()
    }

    #[test]
    fn ensemble_sizes() {
        assert_eq!(
            ensemble_log_size(&seq(&[1, 1])).exact_value,
            Some(2u32.into())
        );
        assert_eq!(
            ensemble_log_size(&seq(&[2, 2, 1, 1])).exact_value,
            Some(180u32.into())
        );
        let empty = ensemble_log_size(&seq(&[0, 0]));
        assert_eq!(empty.exact_value, Some(1u32.into()));
        assert_eq!(empty.ln_value, 0.0);

        let d = directed_ensemble_log_size(&dseq(&[1, 1], &[1, 1]));
        assert_eq!(d.exact_value, Some(4u32.into()));
        let d = directed_ensemble_log_size(&dseq(&[0, 1, 1], &[2, 0, 0]));
        assert_eq!(d.exact_value, Some(2u32.into()));
        let d = directed_ensemble_log_size(&dseq(&[0], &[0]));
        assert_eq!(d.exact_value, Some(1u32.into()));
    }

    #[test]
    fn ensemble_size_cap_and_log_agreement() {
        let big = seq(&[40, 30, 2]);
        assert!(ensemble_log_size(&big).exact_value.is_none());
        let s = ensemble_log_size_with_cap(&big, 1000);
        assert!(s.log_discrepancy().unwrap() <= 1e-9);
        let s = ensemble_log_size(&seq(&[5, 7, 9, 3, 8]));
        assert!(s.log_discrepancy().unwrap() <= 1e-9);
    }

    #[test]
    fn connection_examples() {
        let p = connection_probability(&seq(&[1, 1]), 0, 1, SeriesMode::Full).unwrap();
        assert_eq!(exact(&p), q(1, 1));

        let p = connection_probability(&seq(&[2, 2, 1, 1]), 0, 1, SeriesMode::Full).unwrap();
        assert_eq!(exact(&p), q(2, 3));
        assert_eq!(p.terms(), &SeriesTerms::Exact(vec![q(4, 5), q(-2, 15)]));

        let p = connection_probability(&seq(&[3, 3]), 0, 1, SeriesMode::Full).unwrap();
        assert_eq!(
            p.terms(),
            &SeriesTerms::Exact(vec![q(9, 5), q(-6, 5), q(2, 5)])
        );
        assert_eq!(exact(&p), q(1, 1));

        let p = connection_probability(&seq(&[0, 2, 2]), 0, 1, SeriesMode::Full).unwrap();
        assert_eq!(exact(&p), q(0, 1));
        assert_eq!(p.truncation_order(), 0);
    }

    #[test]
    fn paper_literal_drops_the_half() {
        let s = seq(&[2, 2, 1, 1]);
        let lit = connection_probability(&s, 0, 1, SeriesMode::PaperLiteral).unwrap();
        assert_eq!(exact(&lit), q(8, 15));
        let two = connection_probability(&s, 0, 1, SeriesMode::Truncated(2)).unwrap();
        assert_eq!(exact(&two), q(2, 3));
    }

    #[test]
    fn sparse_examples() {
        let mut raw = vec![2, 3];
        raw.extend(std::iter::repeat_n(1, 95));
        let s = seq(&raw);
        assert_eq!(s.edge_count(), 50);
        let p = connection_probability_sparse(&s, 0, 1).unwrap();
        assert_eq!(exact(&p), q(6, 99));
        assert_eq!(p.mode(), SeriesMode::Truncated(1));

        let p = connection_probability_sparse(&seq(&[1, 1]), 0, 1).unwrap();
        assert_eq!(exact(&p), q(1, 1));
        let p = connection_probability_sparse(&seq(&[0, 1, 1]), 0, 1).unwrap();
        assert_eq!(exact(&p), q(0, 1));
    }

    #[test]
    fn self_loop_examples() {
        let p = self_loop_probability(&seq(&[2]), 0, SeriesMode::Full).unwrap();
        assert_eq!(exact(&p), q(1, 1));
        let p = self_loop_probability(&seq(&[2, 1, 1]), 0, SeriesMode::Full).unwrap();
        assert_eq!(exact(&p), q(1, 3));
        let p = self_loop_probability(&seq(&[1, 1]), 0, SeriesMode::Full).unwrap();
        assert_eq!(exact(&p), q(0, 1));
    }

    #[test]
    fn self_loop_literal_matches_two_terms() {
        for raw in [&[4, 2][..], &[6, 1, 1], &[5, 3, 2, 2], &[8, 0]] {
            let s = seq(raw);
            let lit = self_loop_probability(&s, 0, SeriesMode::PaperLiteral).unwrap();
            let two = self_loop_probability(&s, 0, SeriesMode::Truncated(2)).unwrap();
            assert_eq!(lit.terms(), two.terms(), "{raw:?}");
        }
    }

    #[test]
    fn directed_examples() {
        let d = dseq(&[0, 1], &[1, 0]);
        let p = directed_connection_probability(&d, 0, 1, SeriesMode::Full).unwrap();
        assert_eq!(exact(&p), q(1, 1));

        let d = dseq(&[1, 1], &[1, 1]);
        let p = directed_connection_probability(&d, 0, 1, SeriesMode::Full).unwrap();
        assert_eq!(exact(&p), q(1, 2));

        let d = dseq(&[0, 1, 1], &[2, 0, 0]);
        let p = directed_connection_probability(&d, 0, 1, SeriesMode::Full).unwrap();
        assert_eq!(p.terms(), &SeriesTerms::Exact(vec![q(1, 1)]));

        let p = directed_connection_probability(&d, 1, 2, SeriesMode::Full).unwrap();
        assert_eq!(exact(&p), q(0, 1));
    }

    #[test]
    fn directed_literal_matches_two_terms() {
        let d = dseq(&[3, 2, 1], &[2, 3, 1]);
        for m in 0..3 {
            for n in 0..3 {
                let lit =
                    directed_connection_probability(&d, m, n, SeriesMode::PaperLiteral).unwrap();
                let two =
                    directed_connection_probability(&d, m, n, SeriesMode::Truncated(2)).unwrap();
                assert_eq!(lit.terms(), two.terms());
            }
        }
    }

    #[test]
    fn expected_degree_examples() {
        assert_eq!(
            expected_degree_identity(&dseq(&[1, 1], &[1, 1]), 0).unwrap(),
            q(1, 1)
        );
        assert_eq!(
            expected_degree_identity(&dseq(&[0, 1, 1], &[2, 0, 0]), 0).unwrap(),
            q(2, 1)
        );
        assert_eq!(
            expected_degree_identity(&dseq(&[0, 1, 1], &[2, 0, 0]), 1).unwrap(),
            q(0, 1)
        );
        assert_eq!(
            expected_degree_identity(&dseq(&[0], &[0]), 0).unwrap(),
            q(0, 1)
        );
    }

    #[test]
    fn errors() {
        let s = seq(&[2, 2, 1, 1]);
        assert_eq!(
            connection_probability(&s, 1, 1, SeriesMode::Full),
            Err(Error::SameVertex { vertex: 1 })
        );
        assert_eq!(
            connection_probability(&s, 0, 4, SeriesMode::Full),
            Err(Error::VertexOutOfRange { vertex: 4, n: 4 })
        );
        assert!(self_loop_probability(&s, 9, SeriesMode::Full).is_err());
        let d = dseq(&[1], &[1]);
        assert!(directed_connection_probability(&d, 0, 1, SeriesMode::Full).is_err());
        assert!(expected_degree_identity(&d, 3).is_err());
    }

    #[test]
    fn float_path_tracks_exact_path() {
        let s = seq(&[30, 25, 12, 9, 8, 6, 4, 2]);
        for (m, n) in [(0, 1), (2, 3), (1, 7)] {
            let e =
                connection_probability_with(&s, m, n, SeriesMode::Full, Arithmetic::Exact).unwrap();
            let f =
                connection_probability_with(&s, m, n, SeriesMode::Full, Arithmetic::Float).unwrap();
            assert!(f.exact().is_none());
            assert!(
                (e.value() - f.value()).abs() <= 1e-10,
                "{} vs {}",
                e.value(),
                f.value()
            );
            for (te, tf) in e.terms().to_f64().iter().zip(f.terms().to_f64()) {
                assert!(((te - tf) / te).abs() <= 1e-12);
            }
        }
        let e = self_loop_probability_with(&s, 0, SeriesMode::Full, Arithmetic::Exact).unwrap();
        let f = self_loop_probability_with(&s, 0, SeriesMode::Full, Arithmetic::Float).unwrap();
        assert!((e.value() - f.value()).abs() <= 1e-10);
    }

    #[test]
    fn auto_switches_to_float_on_long_series() {
        let s = seq(&[100, 100, 200]);
        let p = connection_probability(&s, 0, 1, SeriesMode::Full).unwrap();
        assert!(p.exact().is_none());
        assert_eq!(p.truncation_order(), 100);
        let p = connection_probability(&s, 0, 1, SeriesMode::Truncated(10)).unwrap();
        assert!(p.exact().is_some());
    }

    #[test]
    fn terms_alternate_and_value_in_range() {
        let s = seq(&[5, 4, 3, 3, 1]);
        for m in 0..5 {
            for n in 0..5 {
                if m == n {
                    continue;
                }
                let p = connection_probability(&s, m, n, SeriesMode::Full).unwrap();
                let SeriesTerms::Exact(terms) = p.terms() else {
                    panic!()
                };
                for (i, t) in terms.iter().enumerate() {
                    assert_eq!(t.is_positive(), i % 2 == 0);
                }
                let v = exact(&p);
                assert!(v >= Rational::zero() && v <= Rational::one());
            }
        }
    }
}
