//! Bipartitions and validated density operators.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::LaplacianConvention;
use crate::linalg::{self, ComplexMatrix, Subsystem, Tolerance};

/// Split of `n` qubits into a leading factor A (first `leading` qubits, most
/// significant bits of the basis index) and a trailing factor B.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Partition {
    pub leading: usize,
    pub trailing: usize,
}

impl Partition {
    pub fn new(leading: usize, trailing: usize) -> Result<Self> {
        if leading + trailing == 0 {
            return Err(Error::Partition("at least one qubit is required".into()));
        }
        if leading + trailing > 12 {
            return Err(Error::Partition(format!(
                "{} qubits exceeds the supported maximum of 12",
                leading + trailing
            )));
        }
        Ok(Partition { leading, trailing })
    }

    /// Leading factor gets `n / 2` qubits.
    pub fn balanced(n_qubits: usize) -> Result<Self> {
        Self::new(n_qubits / 2, n_qubits - n_qubits / 2)
    }

    pub fn n_qubits(&self) -> usize {
        self.leading + self.trailing
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits()
    }

    /// `(2^leading, 2^trailing)`.
    pub fn dims(&self) -> (usize, usize) {
        (1 << self.leading, 1 << self.trailing)
    }

    pub fn qubits_of(&self, side: Subsystem) -> usize {
        match side {
            Subsystem::A => self.leading,
            Subsystem::B => self.trailing,
        }
    }

    pub fn swapped(&self) -> Self {
        Partition {
            leading: self.trailing,
            trailing: self.leading,
        }
    }

    pub(crate) fn require_bipartite(&self) -> Result<()> {
        if self.leading == 0 || self.trailing == 0 {
            return Err(Error::Partition(format!(
                "bipartite analysis needs qubits on both sides, got ({}, {})",
                self.leading, self.trailing
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.leading, self.trailing)
    }
}

/// Number of qubits for a power-of-two dimension.
pub fn qubits_for_dim(dim: usize) -> Result<usize> {
    if dim < 2 || !dim.is_power_of_two() {
        return Err(Error::Dimension(format!(
            "dimension {dim} is not a power of two >= 2"
        )));
    }
    Ok(dim.trailing_zeros() as usize)
}

/// Hermitian, unit-trace, positive semi-definite operator on `n` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    matrix: ComplexMatrix,
    partition: Partition,
    convention: Option<LaplacianConvention>,
}

impl DensityOperator {
    /// Validates Hermiticity, unit trace and positivity within `tol`.
    pub fn new(matrix: ComplexMatrix, partition: Partition, tol: Tolerance) -> Result<Self> {
        let dim = matrix.square_dim()?;
        if dim != partition.dim() {
            return Err(Error::Dimension(format!(
                "partition {partition} needs dimension {}, matrix has {dim}",
                partition.dim()
            )));
        }
        let scale = matrix.max_norm();
        let dev = linalg::hermitian_deviation(&matrix)?;
        if dev > tol.threshold(scale) {
            return Err(Error::NotHermitian(dev));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > tol.threshold(1.0) || tr.im.abs() > tol.threshold(1.0) {
            return Err(Error::Trace(tr.re));
        }
        let min = linalg::min_eigenvalue(&matrix)?;
        if min < -tol.threshold(scale) {
            return Err(Error::NotPsd(min));
        }
        Ok(DensityOperator {
            matrix,
            partition,
            convention: None,
        })
    }

    pub(crate) fn from_parts_unchecked(
        matrix: ComplexMatrix,
        partition: Partition,
        convention: Option<LaplacianConvention>,
    ) -> Self {
        DensityOperator {
            matrix,
            partition,
            convention,
        }
    }

    pub fn with_convention(mut self, convention: Option<LaplacianConvention>) -> Self {
        self.convention = convention;
        self
    }

    /// Same operator, different bipartition of the same qubits.
    pub fn with_partition(mut self, partition: Partition) -> Result<Self> {
        if partition.dim() != self.dim() {
            return Err(Error::Dimension(format!(
                "partition {partition} does not fit dimension {}",
                self.dim()
            )));
        }
        self.partition = partition;
        Ok(self)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn partition(&self) -> Partition {
        self.partition
    }

    pub fn convention(&self) -> Option<LaplacianConvention> {
        self.convention
    }

    pub fn n_qubits(&self) -> usize {
        self.partition.n_qubits()
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn purity(&self) -> f64 {
        linalg::purity(&self.matrix)
    }

    /// Marginal on one side of the partition.
    pub fn reduced(&self, keep: Subsystem) -> ComplexMatrix {
        linalg::partial_trace(&self.matrix, self.partition.dims(), keep)
            .expect("partition matches dimension")
    }

    /// The same state with the two tensor factors exchanged (B ⊗ A).
    pub fn swapped(&self) -> Self {
        DensityOperator {
            matrix: swap_factors(&self.matrix, self.partition.dims()),
            partition: self.partition.swapped(),
            convention: self.convention,
        }
    }
}

/// Reorders `A ⊗ B` to `B ⊗ A`.
pub fn swap_factors(m: &ComplexMatrix, (da, db): (usize, usize)) -> ComplexMatrix {
    let perm = |r: usize| (r % db) * da + r / db;
    let n = da * db;
    let mut out = ComplexMatrix::zeros(n, n);
    for r in 0..n {
        for s in 0..n {
            out[(perm(r), perm(s))] = m[(r, s)];
        }
    }
    out
}

/// Entry-pattern purity test.
///
/// Fires when there is a support set `S` such that every diagonal entry in `S`
/// equals a common `c > 0`, every entry `(i, j)` with `i, j` in `S` has modulus
/// `c`, and every row outside `S` vanishes. For a unit-trace Hermitian operator
/// this gives `Tr(rho^2) = |S|^2 c^2 = 1`.
pub fn pure_by_entries(rho: &DensityOperator, tol: Tolerance) -> bool {
    let m = rho.matrix();
    let n = rho.dim();
    let eps = tol.threshold(m.max_norm());
    let support: Vec<usize> = (0..n).filter(|&i| m[(i, i)].re > eps).collect();
    let Some(&first) = support.first() else {
        return false;
    };
    let level = m[(first, first)].re;
    let outside_zero = (0..n)
        .filter(|i| !support.contains(i))
        .all(|i| (0..n).all(|j| m[(i, j)].norm() <= eps));
    outside_zero
        && support
            .iter()
            .all(|&i| support.iter().all(|&j| (m[(i, j)].norm() - level).abs() <= eps))
}
