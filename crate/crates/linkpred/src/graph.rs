//! Undirected, unweighted, unipartite graphs over dense vertex ids,
//! with the random-edge-removal noise model used for evaluation.

use std::collections::BTreeSet;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result};

/// Immutable simple graph. Vertices are ids `0..n`; adjacency is kept as a
/// sorted neighbor list per vertex, so membership tests are `O(log d)` and
/// set intersections are linear merges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph from unordered vertex pairs. Duplicate pairs collapse
    /// (set semantics); self-loops are rejected. When `n` is `None` the
    /// vertex count defaults to the largest endpoint plus one.
    pub fn from_edges(edges: &[(usize, usize)], n: Option<usize>) -> Result<Graph> {
        let n = match n {
            Some(n) => n,
            None => edges
                .iter()
                .map(|&(u, v)| u.max(v) + 1)
                .max()
                .unwrap_or(0),
        };
        let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for &(u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            for endpoint in [u, v] {
                if endpoint >= n {
                    return Err(Error::VertexOutOfRange {
                        vertex: endpoint,
                        count: n,
                    });
                }
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        let adj: Vec<Vec<usize>> = adj.into_iter().map(|s| s.into_iter().collect()).collect();
        let edge_count = adj.iter().map(Vec::len).sum::<usize>() / 2;
        Ok(Graph { adj, edge_count })
    }

    /// Number of vertices.
    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    /// Number of edges.
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Neighbor set of `u` as a sorted slice.
    ///
    /// Panics if `u` is out of range; use [`Graph::check_vertex`] first when
    /// the id comes from untrusted input.
    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    /// Degree of `u`.
    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Validates a vertex id coming from external input.
    pub fn check_vertex(&self, u: usize) -> Result<()> {
        if u < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: u,
                count: self.vertex_count(),
            })
        }
    }

    /// All edges in canonical orientation `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// All unconnected vertex pairs in canonical orientation, each exactly
    /// once. Yields `n(n-1)/2 - m` pairs; degree-0 vertices participate.
    pub fn non_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.vertex_count();
        (0..n).flat_map(move |u| {
            let nbrs = &self.adj[u];
            (u + 1..n)
                .filter(move |v| nbrs.binary_search(v).is_err())
                .map(move |v| (u, v))
        })
    }

    /// Removes `round(fraction * m)` edges chosen uniformly without
    /// replacement (round half up). Returns the observed graph, which keeps
    /// the full vertex set, and the removed edges. Deterministic for a fixed
    /// seed; for the same seed, the removed set at a smaller fraction is a
    /// prefix of the removed set at a larger one.
    pub fn remove_random_edges(&self, fraction: f64, seed: u64) -> Result<(Graph, EdgeSet)> {
        if !(0.0..=1.0).contains(&fraction) || fraction.is_nan() {
            return Err(Error::InvalidFraction(fraction));
        }
        let mut edges: Vec<(usize, usize)> = self.edges().collect();
        let k = round_half_up(fraction * self.edge_count as f64).min(self.edge_count);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // Partial Fisher-Yates from the front: slot i draws from i..len, so
        // the first min(k1, k2) draws coincide across fractions.
        for i in 0..k {
            let j = rng.random_range(i..edges.len());
            edges.swap(i, j);
        }
        let removed: EdgeSet = edges[..k].iter().copied().collect();
        let observed = Graph::from_edges(&edges[k..], Some(self.vertex_count()))?;
        Ok((observed, removed))
    }

    /// Mean of the local clustering coefficients over vertices of degree at
    /// least 2 (vertices of smaller degree are excluded from the mean).
    /// Returns 0 when no vertex qualifies.
    pub fn clustering_coefficient(&self) -> f64 {
        let mut sum = 0.0;
        let mut counted = 0usize;
        for v in 0..self.vertex_count() {
            let d = self.degree(v);
            if d < 2 {
                continue;
            }
            // Each triangle through v is seen twice in this sum.
            let closed: usize = self.adj[v]
                .iter()
                .map(|&u| intersection_size(&self.adj[v], &self.adj[u]))
                .sum();
            sum += closed as f64 / (d * (d - 1)) as f64;
            counted += 1;
        }
        if counted == 0 { 0.0 } else { sum / counted as f64 }
    }

    /// `2m / n`.
    pub fn average_degree(&self) -> Result<f64> {
        if self.vertex_count() == 0 {
            return Err(Error::EmptyGraph);
        }
        Ok(2.0 * self.edge_count as f64 / self.vertex_count() as f64)
    }
}

/// Size of the intersection of two sorted slices.
pub(crate) fn intersection_size(a: &[usize], b: &[usize]) -> usize {
    let mut count = 0;
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

pub(crate) fn round_half_up(x: f64) -> usize {
    (x + 0.5).floor() as usize
}

/// Set of unordered vertex pairs in canonical orientation `u < v`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EdgeSet {
    pairs: BTreeSet<(usize, usize)>,
}

impl EdgeSet {
    pub fn new() -> EdgeSet {
        EdgeSet::default()
    }

    /// Inserts a pair, canonicalizing the orientation. Returns whether the
    /// pair was new. Panics on a self-loop.
    pub fn insert(&mut self, u: usize, v: usize) -> bool {
        assert_ne!(u, v, "EdgeSet holds vertex pairs, not self-loops");
        self.pairs.insert((u.min(v), u.max(v)))
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.pairs.contains(&(u.min(v), u.max(v)))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Pairs in canonical sorted order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied()
    }
}

impl FromIterator<(usize, usize)> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = (usize, usize)>>(iter: I) -> EdgeSet {
        let mut set = EdgeSet::new();
        for (u, v) in iter {
            set.insert(u, v);
        }
        set
    }
}
