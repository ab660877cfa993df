//! Directed sensor communication graphs and their structural matrices.
//!
//! Edge `(i, j)` means information flows from sensor `i` to sensor `j`. The
//! adjacency convention follows the receiving side: `A[i][j] = w(j, i)` when
//! `(j, i)` is an edge, so row `i` of `A` lists what flows *into* vertex `i`,
//! and the neighborhood of `i` is its set of in-neighbors.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::rng::SeededRng;
use crate::scalar::Real;

/// Pivot magnitudes below `RANK_TOL_PER_DIM · n` count as zero when deciding
/// Laplacian rank; Laplacian entries are small integers and the spectral gap
/// of interest is O(1).
pub const RANK_TOL_PER_DIM: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct SensorGraph {
    n: usize,
    edges: BTreeMap<(usize, usize), f64>,
}

impl SensorGraph {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            edges: BTreeMap::new(),
        }
    }

    /// Complete digraph: every ordered pair.
    pub fn complete(n: usize) -> Self {
        let mut g = Self::new(n);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    g.edges.insert((i, j), 1.0);
                }
            }
        }
        g
    }

    pub fn add_edge(&mut self, i: usize, j: usize) -> Result<()> {
        self.add_weighted_edge(i, j, 1.0)
    }

    pub fn add_weighted_edge(&mut self, i: usize, j: usize, w: f64) -> Result<()> {
        if i >= self.n {
            return Err(Error::VertexOutOfRange { vertex: i, n: self.n });
        }
        if j >= self.n {
            return Err(Error::VertexOutOfRange { vertex: j, n: self.n });
        }
        if i == j {
            return Err(Error::SelfLoop(i));
        }
        if !(w.is_finite() && w > 0.0) {
            return Err(Error::Config(format!("edge weight must be positive, got {}", w)));
        }
        self.edges.insert((i, j), w);
        Ok(())
    }

    /// Both directions of an undirected pair.
    pub fn add_undirected_edge(&mut self, i: usize, j: usize) -> Result<()> {
        self.add_edge(i, j)?;
        self.add_edge(j, i)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains_key(&(i, j))
    }

    pub fn weight(&self, i: usize, j: usize) -> Option<f64> {
        self.edges.get(&(i, j)).copied()
    }

    /// Directed edges in ascending `(i, j)` order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.edges.iter().map(|(&(i, j), &w)| (i, j, w))
    }

    /// In-neighbors of `i` (sources of information into `i`), ascending.
    pub fn neighborhood(&self, i: usize) -> Result<Vec<usize>> {
        if i >= self.n {
            return Err(Error::VertexOutOfRange { vertex: i, n: self.n });
        }
        Ok(self
            .edges
            .keys()
            .filter(|&&(j, k)| k == i && j != i)
            .map(|&(j, _)| j)
            .collect())
    }

    /// In-neighbor lists for all vertices at once (ascending per vertex).
    pub fn in_neighbor_lists(&self) -> Vec<Vec<usize>> {
        let mut lists = vec![Vec::new(); self.n];
        for &(i, j) in self.edges.keys() {
            lists[j].push(i);
        }
        for l in &mut lists {
            l.sort_unstable();
        }
        lists
    }

    pub fn out_neighbors(&self, i: usize) -> Vec<usize> {
        self.edges
            .keys()
            .filter(|&&(s, _)| s == i)
            .map(|&(_, t)| t)
            .collect()
    }

    /// Weighted in-degree equals weighted out-degree at every vertex.
    pub fn is_balanced(&self) -> bool {
        let mut din = vec![0.0f64; self.n];
        let mut dout = vec![0.0f64; self.n];
        for (&(i, j), &w) in &self.edges {
            dout[i] += w;
            din[j] += w;
        }
        din.iter()
            .zip(&dout)
            .all(|(a, b)| (a - b).abs() <= 1e-9)
    }

    /// Maximum weighted in-degree (the degree-matrix diagonal maximum).
    pub fn max_in_degree(&self) -> f64 {
        let mut din = vec![0.0f64; self.n];
        for (&(_, j), &w) in &self.edges {
            din[j] += w;
        }
        din.into_iter().fold(0.0, f64::max)
    }

    /// Vertices reachable from `v` along edge direction.
    pub fn reachable_from(&self, v: usize) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        if v >= self.n {
            return seen;
        }
        let mut stack = vec![v];
        seen[v] = true;
        let mut out_lists = vec![Vec::new(); self.n];
        for &(i, j) in self.edges.keys() {
            out_lists[i].push(j);
        }
        while let Some(u) = stack.pop() {
            for &w in &out_lists[u] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }

    pub fn all_reachable_from(&self, v: usize) -> bool {
        self.reachable_from(v).iter().all(|&b| b)
    }

    /// Copy of the graph with every in-edge of `v` removed, making `v` a
    /// source-only (distinguished) vertex.
    pub fn anchored(&self, v: usize) -> Self {
        let edges = self
            .edges
            .iter()
            .filter(|(&(_, j), _)| j != v)
            .map(|(&e, &w)| (e, w))
            .collect();
        Self { n: self.n, edges }
    }

    /// Adjacency, degree, Laplacian and the propagation matrix
    /// `F = (I+Δ)⁻¹(I+A)`.
    pub fn build_matrices<F: Real>(&self) -> GraphMatrices<F> {
        let n = self.n;
        let mut adjacency = SquareMatrix::zeros(n);
        for (&(j, i), &w) in &self.edges {
            // information flow j -> i lands in row i
            adjacency[(i, j)] = F::of(w);
        }
        let mut degree = SquareMatrix::zeros(n);
        for i in 0..n {
            degree[(i, i)] = adjacency.row(i).iter().copied().sum();
        }
        let mut laplacian = SquareMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                laplacian[(i, j)] = if i == j {
                    degree[(i, i)]
                } else {
                    -adjacency[(i, j)]
                };
            }
        }
        // (I+Δ) is diagonal, so F is a row rescaling of (I+A)
        let mut propagation = SquareMatrix::zeros(n);
        for i in 0..n {
            let inv = F::one() / (F::one() + degree[(i, i)]);
            for j in 0..n {
                let numer = if i == j {
                    F::one() + adjacency[(i, j)]
                } else {
                    adjacency[(i, j)]
                };
                propagation[(i, j)] = numer * inv;
            }
        }
        GraphMatrices {
            adjacency,
            degree,
            laplacian,
            propagation,
        }
    }

    /// A rooted out-branching exists iff the Laplacian has rank `n − 1`.
    pub fn has_rooted_out_branching(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        if self.n == 1 {
            return true;
        }
        let l: SquareMatrix<f64> = self.build_matrices::<f64>().laplacian;
        let tol = RANK_TOL_PER_DIM * self.n as f64;
        l.rank(tol) == self.n - 1
    }

    /// Experiment graph families.
    ///
    /// `Complete` is every ordered pair. `RandomSubset` keeps
    /// `⌈edge_fraction · n(n−1)/2⌉` undirected pairs uniformly at random (both
    /// directions), resampling until a rooted out-branching exists (at most
    /// 100 attempts).
    pub fn generate(
        kind: GraphKind,
        n: usize,
        edge_fraction: f64,
        rng: &mut SeededRng,
    ) -> Result<Self> {
        if n < 2 {
            return Err(Error::GraphGeneration(format!(
                "need at least 2 vertices, got {}",
                n
            )));
        }
        match kind {
            GraphKind::Complete => Ok(Self::complete(n)),
            GraphKind::RandomSubset => {
                if !(edge_fraction > 0.0 && edge_fraction <= 1.0) {
                    return Err(Error::GraphGeneration(format!(
                        "edge_fraction must be in (0, 1], got {}",
                        edge_fraction
                    )));
                }
                let total_pairs = n * (n - 1) / 2;
                let keep = (edge_fraction * total_pairs as f64).ceil() as usize;
                let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(total_pairs);
                for i in 0..n {
                    for j in (i + 1)..n {
                        pairs.push((i, j));
                    }
                }
                for _ in 0..100 {
                    let mut drawn = pairs.clone();
                    drawn.shuffle(rng);
                    drawn.truncate(keep);
                    let mut g = Self::new(n);
                    for (i, j) in drawn {
                        g.add_undirected_edge(i, j)?;
                    }
                    if g.has_rooted_out_branching() {
                        return Ok(g);
                    }
                }
                Err(Error::GraphGeneration(
                    "no rooted graph found within 100 resamples".into(),
                ))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphKind {
    Complete,
    RandomSubset,
}

/// The structural matrices of a sensor graph.
#[derive(Debug, Clone)]
pub struct GraphMatrices<F: Real> {
    pub adjacency: SquareMatrix<F>,
    pub degree: SquareMatrix<F>,
    pub laplacian: SquareMatrix<F>,
    pub propagation: SquareMatrix<F>,
}

/// Operation-style alias for [`SensorGraph::build_matrices`].
pub fn build_matrices<F: Real>(g: &SensorGraph) -> GraphMatrices<F> {
    g.build_matrices()
}
