//! Uniform stub matching.
//!
//! Undirected: the stub array (vertex `v` repeated `k_v` times) is shuffled
//! with a seeded Fisher-Yates pass and consecutive entries `(2i, 2i+1)` are
//! paired. Directed: the in-stub array is shuffled and paired positionally with
//! the fixed out-stub array. Both are exactly uniform over perfect matchings
//! (resp. bijections). Self-loops and parallel edges are kept.

use rand::seq::SliceRandom;

use crate::degree::{DegreeSequence, DirectedDegreeSequence};
use crate::error::{check_vertex, Result};
use crate::rng::rng_from_seed;

/// Labelled multigraph with a canonical, sorted edge list.
///
/// Undirected edges are stored as `(u, v)` with `u <= v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiGraph {
    n: usize,
    directed: bool,
    edges: Vec<(usize, usize)>,
}

impl MultiGraph {
    /// Builds a graph from an arbitrary edge list, normalizing and sorting it.
    pub fn from_edges(n: usize, directed: bool, mut edges: Vec<(usize, usize)>) -> Result<Self> {
        for &(u, v) in &edges {
            check_vertex(u, n)?;
            check_vertex(v, n)?;
        }
        if !directed {
            for e in edges.iter_mut() {
                if e.0 > e.1 {
                    *e = (e.1, e.0);
                }
            }
        }
        edges.sort_unstable();
        Ok(Self { n, directed, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Parallel-edge count between `u` and `v` (ordered when directed).
    pub fn multiplicity(&self, u: usize, v: usize) -> Result<usize> {
        check_vertex(u, self.n)?;
        check_vertex(v, self.n)?;
        let key = if !self.directed && u > v {
            (v, u)
        } else {
            (u, v)
        };
        let lo = self.edges.partition_point(|e| *e < key);
        let hi = self.edges.partition_point(|e| *e <= key);
        Ok(hi - lo)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> Result<bool> {
        self.multiplicity(u, v).map(|c| c > 0)
    }

    /// Undirected degree, counting a self-loop twice. For directed graphs
    /// this is in-degree plus out-degree.
    pub fn degrees(&self) -> Vec<u64> {
        let mut deg = vec![0u64; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn out_degrees(&self) -> Vec<u64> {
        let mut deg = vec![0u64; self.n];
        for &(u, _) in &self.edges {
            deg[u] += 1;
        }
        deg
    }

    pub fn in_degrees(&self) -> Vec<u64> {
        let mut deg = vec![0u64; self.n];
        for &(_, v) in &self.edges {
            deg[v] += 1;
        }
        deg
    }

    pub fn self_loop_count(&self) -> usize {
        self.edges.iter().filter(|(u, v)| u == v).count()
    }

    /// Number of edges beyond the first between each joined pair.
    pub fn multi_edge_count(&self) -> usize {
        self.edges.windows(2).filter(|w| w[0] == w[1]).count()
    }

    /// True when there are no self-loops and no parallel edges.
    pub fn is_simple(&self) -> bool {
        self.self_loop_count() == 0 && self.multi_edge_count() == 0
    }
}

fn stub_array(degrees: &[u64]) -> Vec<usize> {
    degrees
        .iter()
        .enumerate()
        .flat_map(|(v, &k)| std::iter::repeat_n(v, k as usize))
        .collect()
}

pub fn sample_configuration(seq: &DegreeSequence, seed: u64) -> MultiGraph {
    let mut stubs = stub_array(seq.degrees());
    stubs.shuffle(&mut rng_from_seed(seed));
    let edges = stubs.chunks_exact(2).map(|p| (p[0], p[1])).collect();
    MultiGraph::from_edges(seq.len(), false, edges).expect("stub labels are in range")
}

pub fn sample_directed_configuration(dseq: &DirectedDegreeSequence, seed: u64) -> MultiGraph {
    let out_stubs = stub_array(dseq.out_degrees());
    let mut in_stubs = stub_array(dseq.in_degrees());
    in_stubs.shuffle(&mut rng_from_seed(seed));
    let edges = out_stubs.into_iter().zip(in_stubs).collect();
    MultiGraph::from_edges(dseq.len(), true, edges).expect("stub labels are in range")
}
