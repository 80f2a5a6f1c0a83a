//! Reference density matrices with exact rational entries.
//!
//! Each function returns the normalised matrix as it should come out of the
//! corresponding graph; the graph documents live under `tests/data`.

use crate::linalg::{c, Complex64, ComplexMatrix};

fn scaled(rows: &[&[Complex64]], s: f64) -> ComplexMatrix {
    ComplexMatrix::from_rows(rows).expect("rectangular").scale(s)
}

fn real_scaled(rows: &[&[f64]], s: f64) -> ComplexMatrix {
    ComplexMatrix::from_real_rows(rows).expect("rectangular").scale(s)
}

const O: Complex64 = Complex64::new(1.0, 0.0);
const M: Complex64 = Complex64::new(-1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);
const J: Complex64 = Complex64::new(0.0, -1.0);
const Z: Complex64 = Complex64::new(0.0, 0.0);

/// Pure two-qubit state `s ⊗ s` with `s = (1/2)[[1, i], [-i, 1]]`; complete
/// graph with phases, loops -2, magnitude convention.
pub fn pure_phase_product() -> ComplexMatrix {
    scaled(&[&[O, I, I, M], &[J, O, O, I], &[J, O, O, I], &[M, J, J, O]], 0.25)
}

/// Pure three-qubit state uniform on basis states 1, 2 and 4.
pub fn three_vertex_pure() -> ComplexMatrix {
    ComplexMatrix::from_fn(8, 8, |i, j| {
        if [1, 2, 4].contains(&i) && [1, 2, 4].contains(&j) {
            c(1.0 / 3.0, 0.0)
        } else {
            Z
        }
    })
}

/// Pure state from one edge of weight `i` between vertices 0 and 3.
pub fn single_edge_pure() -> ComplexMatrix {
    scaled(&[&[O, Z, Z, I], &[Z, Z, Z, Z], &[Z, Z, Z, Z], &[J, Z, Z, O]], 0.5)
}

/// `J2 ⊗ (1/12)[[3, 2+i], [2-i, 3]]` from a complete complex-weighted graph.
pub fn complex_complete() -> ComplexMatrix {
    let a = c(2.0, 1.0);
    let b = c(2.0, -1.0);
    let t = c(3.0, 0.0);
    scaled(&[&[t, a, t, a], &[b, t, b, t], &[t, a, t, a], &[b, t, b, t]], 1.0 / 12.0)
}

/// Two-qubit state with scalar diagonal blocks and Hermitian off-diagonal
/// blocks.
pub fn bipartite_four_edge() -> ComplexMatrix {
    let two = c(2.0, 0.0);
    scaled(
        &[&[two, Z, O, J], &[Z, two, I, O], &[O, J, two, Z], &[I, O, Z, two]],
        0.125,
    )
}

/// Three-qubit state from a 3-regular bipartite graph with unit weights.
pub fn bipartite_cube() -> ComplexMatrix {
    real_scaled(
        &[
            &[3., 0., 0., 0., -1., 0., -1., -1.],
            &[0., 3., 0., 0., 0., -1., -1., -1.],
            &[0., 0., 3., 0., -1., -1., -1., 0.],
            &[0., 0., 0., 3., -1., -1., 0., -1.],
            &[-1., 0., -1., -1., 3., 0., 0., 0.],
            &[0., -1., -1., -1., 0., 3., 0., 0.],
            &[-1., -1., -1., 0., 0., 0., 3., 0.],
            &[-1., -1., 0., -1., 0., 0., 0., 3.],
        ],
        1.0 / 24.0,
    )
}

/// `|->< -| ⊗ |-><-|`, the signed Laplacian of a 4-vertex graph.
pub fn signed_product() -> ComplexMatrix {
    real_scaled(
        &[
            &[1., -1., -1., 1.],
            &[-1., 1., 1., -1.],
            &[-1., 1., 1., -1.],
            &[1., -1., -1., 1.],
        ],
        0.25,
    )
}

/// Three-qubit state whose edges all preserve the parity of the last qubit.
pub fn parity_graph_state() -> ComplexMatrix {
    real_scaled(
        &[
            &[2., 0., -1., 0., -1., 0., 0., 0.],
            &[0., 3., 0., -1., 0., -1., 0., -1.],
            &[-1., 0., 2., 0., 0., 0., -1., 0.],
            &[0., -1., 0., 1., 0., 0., 0., 0.],
            &[-1., 0., 0., 0., 1., 0., 0., 0.],
            &[0., -1., 0., 0., 0., 1., 0., 0.],
            &[0., 0., -1., 0., 0., 0., 1., 0.],
            &[0., -1., 0., 0., 0., 0., 0., 1.],
        ],
        1.0 / 12.0,
    )
}

/// `(1/8) diag(P, P)` with `P` four times [`signed_product`].
pub fn block_diagonal_state() -> ComplexMatrix {
    let p = signed_product();
    ComplexMatrix::from_fn(8, 8, |i, j| {
        if i / 4 == j / 4 {
            p[(i % 4, j % 4)] * 0.5
        } else {
            Z
        }
    })
}

/// `(1/4)(I + t11 X⊗X + t22 Y⊗Y + t33 Z⊗Z)`.
pub fn bell_diagonal(t11: f64, t22: f64, t33: f64) -> ComplexMatrix {
    let d = |x: f64| c(x, 0.0);
    scaled(
        &[
            &[d(1.0 + t33), Z, Z, d(t11 - t22)],
            &[Z, d(1.0 - t33), d(t11 + t22), Z],
            &[Z, d(t11 + t22), d(1.0 - t33), Z],
            &[d(t11 - t22), Z, Z, d(1.0 + t33)],
        ],
        0.25,
    )
}
