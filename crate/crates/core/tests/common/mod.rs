#![allow(dead_code)]

use std::path::PathBuf;

use qgraph::graph::{LaplacianConvention, WeightedGraph};
use qgraph::io::{read_graph, GraphDocument};
use qgraph::linalg::{Complex64, ComplexMatrix};
use qgraph::{DensityOperator, Tolerance};

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

pub fn load(name: &str) -> GraphDocument {
    let text = std::fs::read_to_string(data_path(name)).expect("fixture file");
    read_graph(&text).expect("fixture parses")
}

/// Graph and the convention its document asks for.
pub fn load_graph(name: &str) -> (WeightedGraph, LaplacianConvention) {
    let doc = load(name);
    let conv = doc.convention.resolve(&doc.graph);
    (doc.graph, conv)
}

pub fn build(name: &str) -> DensityOperator {
    let (g, conv) = load_graph(name);
    g.density_operator(conv, Tolerance::default()).expect("fixture builds")
}

/// Closed-form eigenvalues of a 2x2 Hermitian matrix, ascending.
pub fn eig2(m: &ComplexMatrix) -> [f64; 2] {
    let (a, d, b) = (m[(0, 0)].re, m[(1, 1)].re, m[(0, 1)]);
    let mid = 0.5 * (a + d);
    let r = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    [mid - r, mid + r]
}

/// Closed-form eigenvalues of a 3x3 Hermitian matrix from its characteristic
/// polynomial (trigonometric root formula), ascending.
pub fn eig3(m: &ComplexMatrix) -> [f64; 3] {
    let a = |i: usize, j: usize| m[(i, j)];
    let p1 = a(0, 1).norm_sqr() + a(0, 2).norm_sqr() + a(1, 2).norm_sqr();
    let q = (a(0, 0).re + a(1, 1).re + a(2, 2).re) / 3.0;
    let p2 = (0..3).map(|i| (a(i, i).re - q).powi(2)).sum::<f64>() + 2.0 * p1;
    if p2 == 0.0 {
        return [q; 3];
    }
    let p = (p2 / 6.0).sqrt();
    let b = |i: usize, j: usize| -> Complex64 {
        let shift = if i == j { q } else { 0.0 };
        (a(i, j) - shift) / p
    };
    let det = b(0, 0) * (b(1, 1) * b(2, 2) - b(1, 2) * b(2, 1))
        - b(0, 1) * (b(1, 0) * b(2, 2) - b(1, 2) * b(2, 0))
        + b(0, 2) * (b(1, 0) * b(2, 1) - b(1, 1) * b(2, 0));
    let r = (det.re / 2.0).clamp(-1.0, 1.0);
    let phi = r.acos() / 3.0;
    let hi = q + 2.0 * p * phi.cos();
    let lo = q + 2.0 * p * (phi + 2.0 * std::f64::consts::PI / 3.0).cos();
    [lo, 3.0 * q - hi - lo, hi]
}

/// Discord of `(1/4)(I + sum c_i s_i ⊗ s_i)` in closed form (Luo 2008).
pub fn bell_diagonal_discord(c1: f64, c2: f64, c3: f64) -> f64 {
    let lambdas = [
        (1.0 - c1 - c2 - c3) / 4.0,
        (1.0 - c1 + c2 + c3) / 4.0,
        (1.0 + c1 - c2 + c3) / 4.0,
        (1.0 + c1 + c2 - c3) / 4.0,
    ];
    let xlog = |x: f64| if x <= 0.0 { 0.0 } else { x * x.log2() };
    let mutual: f64 = lambdas.iter().map(|&l| xlog(l) + if l > 0.0 { 2.0 * l } else { 0.0 }).sum();
    let c = c1.abs().max(c2.abs()).max(c3.abs());
    let classical = 0.5 * (xlog(1.0 - c) + xlog(1.0 + c));
    mutual - classical
}
