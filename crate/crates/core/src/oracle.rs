//! Exhaustive enumeration over stub matchings.
//!
//! Undirected: the lowest-indexed unmatched stub is paired with every other
//! unmatched stub in turn, which visits each of the `(2L−1)!!` perfect
//! matchings exactly once. Directed: out-stubs are taken in a fixed order and
//! every permutation of the in-stubs is tried (`L!` bijections). Once the
//! queried event has occurred the remaining completions are counted in closed
//! form; once it can no longer occur the branch is dropped.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::degree::{DegreeSequence, DirectedDegreeSequence};
use crate::error::{check_vertex, Error, Result};
use crate::Rational;

/// Enumeration limits: maximum stub total `2L` (undirected) and maximum edge
/// count `L` (directed).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleCaps {
    pub undirected_stubs: u64,
    pub directed_edges: u64,
}

impl Default for OracleCaps {
    fn default() -> Self {
        Self {
            undirected_stubs: 14,
            directed_edges: 8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub total_configurations: u64,
    pub favorable: u64,
    pub probability: Rational,
}

impl OracleReport {
    fn new(total: u64, favorable: u64) -> Self {
        Self {
            total_configurations: total,
            favorable,
            probability: Rational::new(BigInt::from(favorable), BigInt::from(total)),
        }
    }
}

/// `(2p − 1)!!`, the number of perfect matchings of `2p` stubs.
pub fn matching_count(stubs: u64) -> u64 {
    (1..=stubs / 2).map(|j| 2 * j - 1).product()
}

pub fn factorial_u64(k: u64) -> u64 {
    (1..=k).product()
}

fn stub_labels(degrees: &[u64]) -> Vec<usize> {
    degrees
        .iter()
        .enumerate()
        .flat_map(|(v, &k)| std::iter::repeat_n(v, k as usize))
        .collect()
}

fn check_undirected_cap(seq: &DegreeSequence, caps: &OracleCaps) -> Result<()> {
    if seq.stub_count() > caps.undirected_stubs {
        return Err(Error::TooLarge {
            size: seq.stub_count(),
            cap: caps.undirected_stubs,
        });
    }
    Ok(())
}

/// Counts matchings containing at least one pair joining a stub of `a` to a
/// stub of `b` (`a == b` asks for a self-pair).
struct PairCounter<'a> {
    labels: &'a [usize],
    a: usize,
    b: usize,
}

impl PairCounter<'_> {
    fn hit(&self, x: usize, y: usize) -> bool {
        (x == self.a && y == self.b) || (x == self.b && y == self.a)
    }

    fn possible(&self, rem_a: u64, rem_b: u64) -> bool {
        if self.a == self.b {
            rem_a >= 2
        } else {
            rem_a > 0 && rem_b > 0
        }
    }

    fn take(&self, label: usize, rem_a: &mut u64, rem_b: &mut u64) {
        if label == self.a {
            *rem_a -= 1;
        } else if label == self.b {
            *rem_b -= 1;
        }
    }

    /// `used` marks matched stubs; `left` unmatched stubs remain.
    fn count(&self, used: &mut [bool], left: u64, rem_a: u64, rem_b: u64) -> u64 {
        if left == 0 || !self.possible(rem_a, rem_b) {
            return 0;
        }
        let i = used.iter().position(|u| !u).expect("unmatched stub exists");
        used[i] = true;
        let mut favorable = 0;
        for j in i + 1..used.len() {
            if used[j] {
                continue;
            }
            favorable += self.branch(used, left, rem_a, rem_b, i, j);
        }
        used[i] = false;
        favorable
    }

    fn branch(
        &self,
        used: &mut [bool],
        left: u64,
        rem_a: u64,
        rem_b: u64,
        i: usize,
        j: usize,
    ) -> u64 {
        let (x, y) = (self.labels[i], self.labels[j]);
        if self.hit(x, y) {
            return matching_count(left - 2);
        }
        let (mut ra, mut rb) = (rem_a, rem_b);
        self.take(x, &mut ra, &mut rb);
        self.take(y, &mut ra, &mut rb);
        used[j] = true;
        let c = self.count(used, left - 2, ra, rb);
        used[j] = false;
        c
    }

    fn run(&self) -> u64 {
        let n = self.labels.len();
        if n == 0 {
            return 0;
        }
        let rem_of = |v: usize| self.labels.iter().filter(|&&l| l == v).count() as u64;
        let (rem_a, rem_b) = if self.a == self.b {
            (rem_of(self.a), 0)
        } else {
            (rem_of(self.a), rem_of(self.b))
        };
        if !self.possible(rem_a, rem_b) {
            return 0;
        }
        // Top-level branches are independent: split them across threads.
        (1..n)
            .into_par_iter()
            .map(|j| {
                let mut used = vec![false; n];
                used[0] = true;
                self.branch(&mut used, n as u64, rem_a, rem_b, 0, j)
            })
            .sum()
    }
}

pub fn exact_connection_probability(
    seq: &DegreeSequence,
    m: usize,
    n: usize,
) -> Result<OracleReport> {
    exact_connection_probability_with(seq, m, n, &OracleCaps::default())
}

pub fn exact_connection_probability_with(
    seq: &DegreeSequence,
    m: usize,
    n: usize,
    caps: &OracleCaps,
) -> Result<OracleReport> {
    check_vertex(m, seq.len())?;
    check_vertex(n, seq.len())?;
    if m == n {
        return Err(Error::SameVertex { vertex: m });
    }
    check_undirected_cap(seq, caps)?;
    let labels = stub_labels(seq.degrees());
    let favorable = PairCounter {
        labels: &labels,
        a: m,
        b: n,
    }
    .run();
    Ok(OracleReport::new(
        matching_count(seq.stub_count()),
        favorable,
    ))
}

pub fn exact_self_loop_probability(seq: &DegreeSequence, s: usize) -> Result<OracleReport> {
    exact_self_loop_probability_with(seq, s, &OracleCaps::default())
}

pub fn exact_self_loop_probability_with(
    seq: &DegreeSequence,
    s: usize,
    caps: &OracleCaps,
) -> Result<OracleReport> {
    check_vertex(s, seq.len())?;
    check_undirected_cap(seq, caps)?;
    let labels = stub_labels(seq.degrees());
    let favorable = PairCounter {
        labels: &labels,
        a: s,
        b: s,
    }
    .run();
    Ok(OracleReport::new(
        matching_count(seq.stub_count()),
        favorable,
    ))
}

struct ArcCounter<'a> {
    out_labels: &'a [usize],
    in_labels: &'a [usize],
    m: usize,
    n: usize,
}

impl ArcCounter<'_> {
    fn count(&self, pos: usize, used: &mut [bool], rem_out: u64, rem_in: u64) -> u64 {
        let left = self.out_labels.len() - pos;
        if left == 0 || rem_out == 0 || rem_in == 0 {
            return 0;
        }
        let src = self.out_labels[pos];
        let mut favorable = 0;
        for j in 0..used.len() {
            if used[j] {
                continue;
            }
            let dst = self.in_labels[j];
            if src == self.m && dst == self.n {
                favorable += factorial_u64(left as u64 - 1);
                continue;
            }
            used[j] = true;
            favorable += self.count(
                pos + 1,
                used,
                rem_out - u64::from(src == self.m),
                rem_in - u64::from(dst == self.n),
            );
            used[j] = false;
        }
        favorable
    }
}

pub fn exact_directed_connection_probability(
    dseq: &DirectedDegreeSequence,
    m: usize,
    n: usize,
) -> Result<OracleReport> {
    exact_directed_connection_probability_with(dseq, m, n, &OracleCaps::default())
}

pub fn exact_directed_connection_probability_with(
    dseq: &DirectedDegreeSequence,
    m: usize,
    n: usize,
    caps: &OracleCaps,
) -> Result<OracleReport> {
    check_vertex(m, dseq.len())?;
    check_vertex(n, dseq.len())?;
    let l = dseq.edge_count();
    if l > caps.directed_edges {
        return Err(Error::TooLarge {
            size: l,
            cap: caps.directed_edges,
        });
    }
    let out_labels = stub_labels(dseq.out_degrees());
    let in_labels = stub_labels(dseq.in_degrees());
    let counter = ArcCounter {
        out_labels: &out_labels,
        in_labels: &in_labels,
        m,
        n,
    };
    let mut used = vec![false; in_labels.len()];
    let favorable = counter.count(0, &mut used, dseq.out_degree(m), dseq.in_degree(n));
    Ok(OracleReport::new(factorial_u64(l), favorable))
}

/// Visits every perfect matching of the stubs once, as a list of label pairs
/// in enumeration order.
pub fn for_each_matching(
    seq: &DegreeSequence,
    caps: &OracleCaps,
    mut visit: impl FnMut(&[(usize, usize)]),
) -> Result<()> {
    check_undirected_cap(seq, caps)?;
    type Visit<'v> = dyn FnMut(&[(usize, usize)]) + 'v;
    fn rec(
        labels: &[usize],
        used: &mut [bool],
        pairs: &mut Vec<(usize, usize)>,
        visit: &mut Visit<'_>,
    ) {
        let Some(i) = used.iter().position(|u| !u) else {
            visit(pairs);
            return;
        };
        used[i] = true;
        for j in i + 1..used.len() {
            if used[j] {
                continue;
            }
            used[j] = true;
            pairs.push((labels[i], labels[j]));
            rec(labels, used, pairs, visit);
            pairs.pop();
            used[j] = false;
        }
        used[i] = false;
    }
    let labels = stub_labels(seq.degrees());
    let mut used = vec![false; labels.len()];
    rec(&labels, &mut used, &mut Vec::new(), &mut visit);
    Ok(())
}

/// Number of stub matchings inducing each distinct multigraph, keyed by the
/// canonical (sorted, `u <= v`) edge list.
pub fn multigraph_distribution(
    seq: &DegreeSequence,
    caps: &OracleCaps,
) -> Result<BTreeMap<Vec<(usize, usize)>, u64>> {
    let mut counts = BTreeMap::new();
    for_each_matching(seq, caps, |pairs| {
        let mut edges: Vec<(usize, usize)> =
            pairs.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        edges.sort_unstable();
        *counts.entry(edges).or_insert(0) += 1;
    })?;
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(raw: &[i64]) -> DegreeSequence {
        DegreeSequence::from_raw(raw).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn connection_examples() {
        let r = exact_connection_probability(&seq(&[1, 1]), 0, 1).unwrap();
        assert_eq!((r.favorable, r.total_configurations), (1, 1));

        let r = exact_connection_probability(&seq(&[2, 2, 1, 1]), 0, 1).unwrap();
        assert_eq!((r.favorable, r.total_configurations), (10, 15));
        assert_eq!(r.probability, q(2, 3));

        let r = exact_connection_probability(&seq(&[2, 2, 1, 1]), 2, 3).unwrap();
        assert_eq!(r.probability, q(1, 5));
        assert_eq!(r.favorable, 3);
    }

    #[test]
    fn self_loop_examples() {
        assert_eq!(
            exact_self_loop_probability(&seq(&[2]), 0)
                .unwrap()
                .probability,
            q(1, 1)
        );
        let r = exact_self_loop_probability(&seq(&[2, 1, 1]), 0).unwrap();
        assert_eq!((r.favorable, r.total_configurations), (1, 3));
        assert_eq!(
            exact_self_loop_probability(&seq(&[1, 1]), 0)
                .unwrap()
                .probability,
            q(0, 1)
        );
    }

    #[test]
    fn directed_examples() {
        let d = DirectedDegreeSequence::from_raw(&[0, 1], &[1, 0]).unwrap();
        assert_eq!(
            exact_directed_connection_probability(&d, 0, 1)
                .unwrap()
                .probability,
            q(1, 1)
        );
        let d = DirectedDegreeSequence::from_raw(&[1, 1], &[1, 1]).unwrap();
        let r = exact_directed_connection_probability(&d, 0, 1).unwrap();
        assert_eq!((r.favorable, r.total_configurations), (1, 2));
        let d = DirectedDegreeSequence::from_raw(&[0, 1, 1], &[2, 0, 0]).unwrap();
        let r = exact_directed_connection_probability(&d, 0, 1).unwrap();
        assert_eq!((r.favorable, r.total_configurations), (2, 2));
    }

    #[test]
    fn caps_and_errors() {
        let big = seq(&[8, 8]);
        assert_eq!(
            exact_connection_probability(&big, 0, 1),
            Err(Error::TooLarge { size: 16, cap: 14 })
        );
        let caps = OracleCaps {
            undirected_stubs: 16,
            directed_edges: 8,
        };
        assert!(exact_connection_probability_with(&big, 0, 1, &caps).is_ok());
        assert_eq!(
            exact_connection_probability(&seq(&[1, 1]), 0, 0),
            Err(Error::SameVertex { vertex: 0 })
        );
        let d = DirectedDegreeSequence::from_raw(&[9], &[9]).unwrap();
        assert!(matches!(
            exact_directed_connection_probability(&d, 0, 0),
            Err(Error::TooLarge { size: 9, cap: 8 })
        ));
    }

    #[test]
    fn totals_match_closed_forms() {
        for raw in [
            &[1, 1][..],
            &[2, 2, 1, 1],
            &[3, 3, 2, 2, 1, 1],
            &[0, 4, 4, 2],
        ] {
            let s = seq(raw);
            let mut visited = 0u64;
            for_each_matching(&s, &OracleCaps::default(), |_| visited += 1).unwrap();
            let odd_product: u64 = (1..=s.edge_count()).map(|j| 2 * j - 1).product();
            assert_eq!(visited, odd_product);
            assert_eq!(
                exact_connection_probability(&s, 0, 1)
                    .unwrap()
                    .total_configurations,
                odd_product
            );
        }
        let d = DirectedDegreeSequence::from_raw(&[2, 1, 2], &[1, 3, 1]).unwrap();
        assert_eq!(
            exact_directed_connection_probability(&d, 0, 1)
                .unwrap()
                .total_configurations,
            120
        );
    }

    #[test]
    fn complement_sums_to_one() {
        let s = seq(&[3, 2, 2, 1, 2]);
        let caps = OracleCaps::default();
        for m in 0..5 {
            for n in 0..5 {
                if m == n {
                    continue;
                }
                let mut avoiding = 0u64;
                for_each_matching(&s, &caps, |pairs| {
                    if !pairs
                        .iter()
                        .any(|&(u, v)| (u, v) == (m, n) || (u, v) == (n, m))
                    {
                        avoiding += 1;
                    }
                })
                .unwrap();
                let r = exact_connection_probability(&s, m, n).unwrap();
                assert_eq!(r.favorable + avoiding, r.total_configurations);
            }
        }
    }

    #[test]
    fn relabelling_permutes_probabilities() {
        let a = seq(&[2, 2, 1, 1]);
        let b = seq(&[2, 2, 1, 1]); // swapping vertices 0 and 1 leaves it unchanged
        for (m, n) in [(0, 2), (0, 3), (1, 2)] {
            let swap = |v: usize| match v {
                0 => 1,
                1 => 0,
                x => x,
            };
            assert_eq!(
                exact_connection_probability(&a, m, n).unwrap().probability,
                exact_connection_probability(&b, swap(m), swap(n))
                    .unwrap()
                    .probability
            );
        }
        let c = seq(&[3, 1, 2]);
        let c_swapped = seq(&[1, 3, 2]);
        assert_eq!(
            exact_connection_probability(&c, 0, 2).unwrap().probability,
            exact_connection_probability(&c_swapped, 1, 2)
                .unwrap()
                .probability
        );
        assert_eq!(
            exact_self_loop_probability(&c, 0).unwrap().probability,
            exact_self_loop_probability(&c_swapped, 1)
                .unwrap()
                .probability
        );
    }

    #[test]
    fn distribution_of_small_instance() {
        let dist = multigraph_distribution(&seq(&[2, 2, 1, 1]), &OracleCaps::default()).unwrap();
        assert_eq!(dist.values().sum::<u64>(), 15);
        // Two self-loops plus edge 2-3: one matching of each self-pair.
        assert_eq!(dist[&vec![(0, 0), (1, 1), (2, 3)]], 1);
        // Double edge 0-1 plus edge 2-3: two ways to pair node 0's stubs with node 1's.
        assert_eq!(dist[&vec![(0, 1), (0, 1), (2, 3)]], 2);
    }
}
