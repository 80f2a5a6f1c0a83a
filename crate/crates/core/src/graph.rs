//! Weighted graphs on `2^n` vertices and their Laplacian density operators.
//!
//! Vertex `v` of an `n`-qubit graph is the computational basis state with
//! index `v`; qubit 0 is the most significant bit. Under a partition `(p, q)`
//! the vertex with 1-based labels `(i, j)` is `v = (i - 1) * 2^q + (j - 1)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, c, Complex64, ComplexMatrix, Subsystem, Tolerance, ZERO};
use crate::state::{DensityOperator, Partition};

/// How edge weights enter the Laplacian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LaplacianConvention {
    /// `L_ii = loop_i + sum_j |a_ij|`, `L_ij = a_ij`.
    Magnitude,
    /// `L_ii = loop_i + sum_j a_ij`, `L_ij = -a_ij`. Real weights only.
    Signed,
}

impl LaplacianConvention {
    pub fn as_str(&self) -> &'static str {
        match self {
            LaplacianConvention::Magnitude => "magnitude",
            LaplacianConvention::Signed => "signed",
        }
    }
}

impl fmt::Display for LaplacianConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Convention as written in a graph document; `Auto` defers to
/// [`default_convention`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ConventionChoice {
    #[default]
    Auto,
    Fixed(LaplacianConvention),
}

impl ConventionChoice {
    pub fn resolve(&self, g: &WeightedGraph) -> LaplacianConvention {
        match self {
            ConventionChoice::Auto => default_convention(g),
            ConventionChoice::Fixed(c) => *c,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            ConventionChoice::Auto => "auto",
            ConventionChoice::Fixed(c) => c.as_str(),
        }
    }
}

impl FromStr for ConventionChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(ConventionChoice::Auto),
            "magnitude" => Ok(ConventionChoice::Fixed(LaplacianConvention::Magnitude)),
            "signed" => Ok(ConventionChoice::Fixed(LaplacianConvention::Signed)),
            other => Err(Error::Graph(format!(
                "unknown convention {other:?}; expected auto, magnitude or signed"
            ))),
        }
    }
}

/// Undirected weighted graph with optional real self-loops.
///
/// Edges are stored once with `u < v`; the weight of the reverse direction is
/// the complex conjugate.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    partition: Partition,
    edges: BTreeMap<(usize, usize), Complex64>,
    loops: BTreeMap<usize, f64>,
}

impl WeightedGraph {
    pub fn new(partition: Partition) -> Self {
        WeightedGraph {
            partition,
            edges: BTreeMap::new(),
            loops: BTreeMap::new(),
        }
    }

    pub fn partition(&self) -> Partition {
        self.partition
    }

    pub fn n_qubits(&self) -> usize {
        self.partition.n_qubits()
    }

    pub fn n_vertices(&self) -> usize {
        self.partition.dim()
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n_vertices() {
            return Err(Error::Graph(format!(
                "vertex {v} out of range for {} vertices",
                self.n_vertices()
            )));
        }
        Ok(())
    }

    /// Inserts or replaces the edge `{u, v}` with weight `w` seen from `u`.
    pub fn add_edge(&mut self, u: usize, v: usize, w: Complex64) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::Graph(format!("edge ({u}, {v}) is a self-loop; use a loop entry")));
        }
        if !(w.re.is_finite() && w.im.is_finite()) || w == ZERO {
            return Err(Error::Graph(format!("edge ({u}, {v}) needs a finite nonzero weight")));
        }
        let (key, w) = if u < v { ((u, v), w) } else { ((v, u), w.conj()) };
        self.edges.insert(key, w);
        Ok(())
    }

    /// Sets the loop weight at `v`; zero removes it.
    pub fn set_loop(&mut self, v: usize, w: f64) -> Result<()> {
        self.check_vertex(v)?;
        if !w.is_finite() {
            return Err(Error::Graph(format!("loop at {v} has a non-finite weight")));
        }
        if w == 0.0 {
            self.loops.remove(&v);
        } else {
            self.loops.insert(v, w);
        }
        Ok(())
    }

    /// Weight of `u -> v`, zero when absent.
    pub fn weight(&self, u: usize, v: usize) -> Complex64 {
        if u < v {
            self.edges.get(&(u, v)).copied().unwrap_or(ZERO)
        } else {
            self.edges.get(&(v, u)).map(|w| w.conj()).unwrap_or(ZERO)
        }
    }

    pub fn loop_weight(&self, v: usize) -> f64 {
        self.loops.get(&v).copied().unwrap_or(0.0)
    }

    /// Edges in canonical order, `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        self.edges.iter().map(|(&(u, v), &w)| (u, v, w))
    }

    pub fn loops(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.loops.iter().map(|(&v, &w)| (v, w))
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn has_complex_weights(&self) -> bool {
        self.edges.values().any(|w| w.im != 0.0)
    }

    /// Vertex index for 1-based labels `(i, j)`.
    pub fn vertex_index(&self, i: usize, j: usize) -> Result<usize> {
        let (da, db) = self.partition.dims();
        if i == 0 || j == 0 || i > da || j > db {
            return Err(Error::Graph(format!(
                "label ({i}, {j}) out of range for partition {}",
                self.partition
            )));
        }
        Ok((i - 1) * db + (j - 1))
    }

    /// 1-based labels `(i, j)` of vertex `v`.
    pub fn vertex_label(&self, v: usize) -> (usize, usize) {
        let db = 1 << self.partition.trailing;
        (v / db + 1, v % db + 1)
    }

    /// The same graph with vertices relabelled from `(i, j)` to `(j, i)`.
    pub fn swapped_factors(&self) -> WeightedGraph {
        let (da, db) = self.partition.dims();
        let perm = |v: usize| (v % db) * da + v / db;
        let mut out = WeightedGraph::new(self.partition.swapped());
        for (u, v, w) in self.edges() {
            out.add_edge(perm(u), perm(v), w).expect("relabelled edge is valid");
        }
        for (v, w) in self.loops() {
            out.loops.insert(perm(v), w);
        }
        out
    }

    /// Laplacian under the given convention.
    pub fn laplacian(&self, conv: LaplacianConvention) -> Result<ComplexMatrix> {
        let n = self.n_vertices();
        let mut l = ComplexMatrix::zeros(n, n);
        let mut diag: Vec<f64> = (0..n).map(|v| self.loop_weight(v)).collect();
        for (u, v, w) in self.edges() {
            match conv {
                LaplacianConvention::Magnitude => {
                    l[(u, v)] = w;
                    l[(v, u)] = w.conj();
                    diag[u] += w.norm();
                    diag[v] += w.norm();
                }
                LaplacianConvention::Signed => {
                    if w.im != 0.0 {
                        return Err(Error::Convention {
                            u,
                            v,
                            re: w.re,
                            im: w.im,
                        });
                    }
                    l[(u, v)] = c(-w.re, 0.0);
                    l[(v, u)] = c(-w.re, 0.0);
                    diag[u] += w.re;
                    diag[v] += w.re;
                }
            }
        }
        for (v, d) in diag.into_iter().enumerate() {
            l[(v, v)] = c(d, 0.0);
        }
        Ok(l)
    }

    /// `L / Tr(L)`, validated as a state.
    pub fn density_operator(&self, conv: LaplacianConvention, tol: Tolerance) -> Result<DensityOperator> {
        let l = self.laplacian(conv)?;
        let tr = l.trace().re;
        if !(tr > tol.abs_eps) {
            return Err(Error::Normalization(tr));
        }
        let rho = DensityOperator::new(l.scale(1.0 / tr), self.partition, tol)?;
        Ok(rho.with_convention(Some(conv)))
    }
}

/// Magnitude if any edge weight has a nonzero imaginary part, signed otherwise.
pub fn default_convention(g: &WeightedGraph) -> LaplacianConvention {
    if g.has_complex_weights() {
        LaplacianConvention::Magnitude
    } else {
        LaplacianConvention::Signed
    }
}

/// Builds the state of `g` under `conv`.
pub fn density_operator(g: &WeightedGraph, conv: LaplacianConvention, tol: Tolerance) -> Result<DensityOperator> {
    g.density_operator(conv, tol)
}

/// Connected components through edges, sorted by smallest vertex. Isolated
/// vertices form singleton components.
pub fn connected_components(g: &WeightedGraph) -> Vec<Vec<usize>> {
    let n = g.n_vertices();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (u, v, _) in g.edges() {
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru != rv {
            parent[ru.max(rv)] = ru.min(rv);
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        let r = find(&mut parent, v);
        groups.entry(r).or_default().push(v);
    }
    groups.into_values().collect()
}

/// Purity from the component structure of the graph.
///
/// True when exactly one component carries weight (an edge or a nonzero
/// Laplacian diagonal), that component is complete, all its edge weights
/// share one modulus `c > 0`, every diagonal entry of the Laplacian on it
/// equals `c`, and the Laplacian is positive semi-definite. A single weighted
/// vertex with a positive diagonal is also pure.
pub fn pure_by_component(g: &WeightedGraph, conv: LaplacianConvention, tol: Tolerance) -> Result<bool> {
    let l = g.laplacian(conv)?;
    let eps = tol.threshold(l.max_norm());
    let weighted: Vec<Vec<usize>> = connected_components(g)
        .into_iter()
        .filter(|comp| comp.len() > 1 || l[(comp[0], comp[0])].norm() > eps)
        .collect();
    let [comp] = weighted.as_slice() else {
        return Ok(false);
    };
    if comp.len() == 1 {
        return Ok(l[(comp[0], comp[0])].re > eps);
    }
    let level = l[(comp[0], comp[1])].norm();
    if level <= eps {
        return Ok(false);
    }
    for (a, &u) in comp.iter().enumerate() {
        if (l[(u, u)].re - level).abs() > eps {
            return Ok(false);
        }
        for &v in &comp[a + 1..] {
            if (l[(u, v)].norm() - level).abs() > eps {
                return Ok(false);
            }
        }
    }
    linalg::is_psd(&l, tol)
}

/// Every edge joins vertices whose trailing labels have the same parity.
pub fn edges_same_parity(g: &WeightedGraph) -> bool {
    let db = 1usize << g.partition().trailing;
    g.edges().all(|(u, v, _)| (u % db) % 2 == (v % db) % 2)
}

/// Every edge keeps the label of `side` fixed.
pub fn edges_fix_label(g: &WeightedGraph, side: Subsystem) -> bool {
    let db = 1usize << g.partition().trailing;
    g.edges().all(|(u, v, _)| match side {
        Subsystem::A => u / db == v / db,
        Subsystem::B => u % db == v % db,
    })
}

/// Every edge stays inside one leading-label block, so the Laplacian is
/// block diagonal over the leading factor.
pub fn edges_within_blocks(g: &WeightedGraph) -> bool {
    edges_fix_label(g, Subsystem::A)
}

/// Complete graph with one common positive real weight `b` and every
/// Laplacian diagonal entry equal to `b (N - 1)`, so the Laplacian is
/// `b N I - b J` in the signed convention (or `b J` plus a multiple of `I` in
/// the magnitude convention).
pub fn uniform_complete(g: &WeightedGraph, conv: LaplacianConvention, tol: Tolerance) -> Result<bool> {
    let n = g.n_vertices();
    if g.n_edges() != n * (n - 1) / 2 {
        return Ok(false);
    }
    let b = match g.edges().next() {
        Some((_, _, w)) => w,
        None => return Ok(false),
    };
    if b.im != 0.0 || b.re <= 0.0 {
        return Ok(false);
    }
    let eps = tol.threshold(b.re * n as f64);
    if g.edges().any(|(_, _, w)| (w - b).norm() > eps) {
        return Ok(false);
    }
    let l = g.laplacian(conv)?;
    let target = b.re * (n - 1) as f64;
    Ok((0..n).all(|v| (l[(v, v)].re - target).abs() <= eps))
}

/// Complete graph with weight `w` on every edge and no loops.
pub fn complete_graph(partition: Partition, w: f64) -> Result<WeightedGraph> {
    let mut g = WeightedGraph::new(partition);
    let n = g.n_vertices();
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v, c(w, 0.0))?;
        }
    }
    Ok(g)
}
