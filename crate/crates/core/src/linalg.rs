//! Dense complex matrices and the spectral and structural predicates used by
//! the rest of the crate.
//!
//! Everything here is a pure function of its inputs. Matrices are small
//! (at most a few thousand rows), row-major, and stored as `Complex64`.
//!
//! Every approximate predicate takes an explicit [`Tolerance`]. The effective
//! threshold is `abs_eps + rel_eps * scale`, where the scale is the max-norm of
//! the operand (or the product of max-norms for bilinear quantities).

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use nalgebra::DMatrix;
pub use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Shorthand constructor for a complex number.
#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const IMAG: Complex64 = Complex64::new(0.0, 1.0);

/// Composite absolute/relative tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerance {
    pub abs_eps: f64,
    pub rel_eps: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            abs_eps: 1e-9,
            rel_eps: 1e-9,
        }
    }
}

impl Tolerance {
    pub fn new(abs_eps: f64, rel_eps: f64) -> Result<Self> {
        if !(abs_eps >= 0.0 && rel_eps >= 0.0 && abs_eps.is_finite() && rel_eps.is_finite()) {
            return Err(Error::Tolerance(format!(
                "abs_eps={abs_eps} rel_eps={rel_eps}; both must be finite and non-negative"
            )));
        }
        Ok(Tolerance { abs_eps, rel_eps })
    }

    /// Same value for the absolute and relative parts.
    pub fn uniform(eps: f64) -> Result<Self> {
        Self::new(eps, eps)
    }

    #[inline]
    pub fn threshold(&self, scale: f64) -> f64 {
        self.abs_eps + self.rel_eps * scale
    }
}

/// Dense row-major complex matrix with finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension(format!("empty matrix {rows}x{cols}")));
        }
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(k) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite(k / cols, k % cols));
        }
        Ok(ComplexMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "empty matrix");
        ComplexMatrix {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { ONE } else { ZERO })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        assert!(rows > 0 && cols > 0, "empty matrix");
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ComplexMatrix { rows, cols, data }
    }

    /// Builds a matrix from equally sized rows.
    pub fn from_rows<R: AsRef<[Complex64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        if let Some(bad) = rows.iter().position(|r| r.as_ref().len() != cols) {
            return Err(Error::Dimension(format!(
                "row {bad} has {} entries, expected {cols}",
                rows[bad].as_ref().len()
            )));
        }
        let data = rows.iter().flat_map(|r| r.as_ref().iter().copied()).collect();
        Self::new(rows.len(), cols, data)
    }

    /// Builds a real matrix from row slices.
    pub fn from_real_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let complex: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| c(x, 0.0)).collect())
            .collect();
        Self::from_rows(&complex)
    }

    /// Column vector.
    pub fn column(v: &[Complex64]) -> Self {
        Self::from_fn(v.len(), 1, |i, _| v[i])
    }

    /// Real diagonal matrix.
    pub fn diagonal(d: &[f64]) -> Self {
        Self::from_fn(d.len(), d.len(), |i, j| if i == j { c(d[i], 0.0) } else { ZERO })
    }

    /// Rank-one projector `|v><v|` (not normalised).
    pub fn outer(v: &[Complex64]) -> Self {
        Self::from_fn(v.len(), v.len(), |i, j| v[i] * v[j].conj())
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    /// Side length of a square matrix; dimension error otherwise.
    pub fn square_dim(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::Dimension(format!(
                "expected a square matrix, got {}x{}",
                self.rows, self.cols
            )))
        }
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|z| z * s)
    }

    pub fn scale_complex(&self, s: Complex64) -> Self {
        self.map(|z| z * s)
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Largest entry modulus.
    pub fn max_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - other`.
    ///
    /// # Panics
    /// If the shapes differ.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch in max_abs_diff"
        );
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &ComplexMatrix, tol: Tolerance) -> bool {
        (self.rows, self.cols) == (other.rows, other.cols)
            && self.max_abs_diff(other) <= tol.threshold(self.max_norm().max(other.max_norm()))
    }

    /// Copy of the `nr x nc` window starting at `(r0, c0)`.
    pub fn submatrix(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Self {
        assert!(r0 + nr <= self.rows && c0 + nc <= self.cols, "window out of range");
        Self::from_fn(nr, nc, |i, j| self[(r0 + i, c0 + j)])
    }

    pub fn try_mul(&self, other: &ComplexMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = vec![ZERO; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == ZERO {
                    continue;
                }
                let row = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out[i * other.cols..(i + 1) * other.cols];
                for (d, b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        Ok(ComplexMatrix {
            rows: self.rows,
            cols: other.cols,
            data: out,
        })
    }

    fn zip_with(&self, other: &ComplexMatrix, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch"
        );
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    /// Determinant by LU factorisation with partial pivoting.
    pub fn determinant(&self) -> Result<Complex64> {
        let n = self.square_dim()?;
        let mut a = self.data.clone();
        let mut det = ONE;
        for k in 0..n {
            let pivot = (k..n)
                .max_by(|&x, &y| a[x * n + k].norm().total_cmp(&a[y * n + k].norm()))
                .unwrap_or(k);
            if a[pivot * n + k] == ZERO {
                return Ok(ZERO);
            }
            if pivot != k {
                for j in 0..n {
                    a.swap(k * n + j, pivot * n + j);
                }
                det = -det;
            }
            let p = a[k * n + k];
            det *= p;
            for i in k + 1..n {
                let factor = a[i * n + k] / p;
                if factor == ZERO {
                    continue;
                }
                for j in k..n {
                    let v = a[k * n + j];
                    a[i * n + j] -= factor * v;
                }
            }
        }
        Ok(det)
    }

    pub(crate) fn to_nalgebra(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)])
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.try_mul(rhs).expect("shape mismatch in matrix product")
    }
}

impl fmt::Display for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                let z = self[(i, j)];
                if j > 0 {
                    f.write_str("  ")?;
                }
                write!(f, "{:>10.6}{:>+10.6}i", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Kronecker product; entry `(i*rb + k, j*cb + l)` is `a[i,j] * b[k,l]`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (rb, cb) = (b.rows, b.cols);
    ComplexMatrix::from_fn(a.rows * rb, a.cols * cb, |r, s| {
        a[(r / rb, s / cb)] * b[(r % rb, s % cb)]
    })
}

/// Largest `|a_ij - conj(a_ji)|`.
pub fn hermitian_deviation(a: &ComplexMatrix) -> Result<f64> {
    let n = a.square_dim()?;
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((a[(i, j)] - a[(j, i)].conj()).norm());
        }
    }
    Ok(worst)
}

pub fn is_hermitian(a: &ComplexMatrix, tol: Tolerance) -> Result<bool> {
    Ok(hermitian_deviation(a)? <= tol.threshold(a.max_norm()))
}

fn require_hermitian(a: &ComplexMatrix) -> Result<()> {
    let dev = hermitian_deviation(a)?;
    if dev > Tolerance::default().threshold(a.max_norm()) {
        return Err(Error::NotHermitian(dev));
    }
    Ok(())
}

/// `maxnorm(A A^† - A^† A)`.
pub fn normality_residual(a: &ComplexMatrix) -> Result<f64> {
    a.square_dim()?;
    let adj = a.adjoint();
    Ok((&(a * &adj) - &(&adj * a)).max_norm())
}

pub fn is_normal(a: &ComplexMatrix, tol: Tolerance) -> Result<bool> {
    let scale = a.max_norm();
    Ok(normality_residual(a)? <= tol.threshold(scale * scale))
}

pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = a.square_dim()?;
    if b.rows != n || b.cols != n {
        return Err(Error::Dimension(format!(
            "commutator of {n}x{n} with {}x{}",
            b.rows, b.cols
        )));
    }
    Ok(&(a * b) - &(b * a))
}

/// `maxnorm(AB - BA)`.
pub fn commutator_norm(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    Ok(commutator(a, b)?.max_norm())
}

/// Eigenvalues of a Hermitian matrix in ascending order.
pub fn hermitian_eigenvalues(a: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(hermitian_eigh(a)?.0)
}

/// Eigenvalues (ascending) and the matching orthonormal eigenvectors stored
/// as columns.
pub fn hermitian_eigh(a: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    let n = a.square_dim()?;
    require_hermitian(a)?;
    let sym = (&a.to_nalgebra() + &a.to_nalgebra().adjoint()) * c(0.5, 0.0);
    let eig = sym.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| eig.eigenvalues[x].total_cmp(&eig.eigenvalues[y]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    Ok((values, vectors))
}

pub fn min_eigenvalue(a: &ComplexMatrix) -> Result<f64> {
    Ok(hermitian_eigenvalues(a)?[0])
}

pub fn is_psd(a: &ComplexMatrix, tol: Tolerance) -> Result<bool> {
    Ok(min_eigenvalue(a)? >= -tol.threshold(a.max_norm()))
}

/// Outcome of the two entrywise necessary conditions for positive
/// semi-definiteness.
///
/// `diag_dominance` is informational only: it is not implied by PSD (the
/// all-ones matrix is PSD and not diagonally dominant).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinorsReport {
    pub diag_dominance: bool,
    pub all_minors_nonneg: bool,
    /// Smallest `a_pp a_qq - |a_pq|^2` over `p < q` (`+inf` for 1x1 input).
    pub worst_minor: f64,
}

pub fn psd_necessary_minors(a: &ComplexMatrix, tol: Tolerance) -> Result<MinorsReport> {
    let n = a.square_dim()?;
    require_hermitian(a)?;
    let scale = a.max_norm();
    let diag_dominance = (0..n).all(|i| {
        let off: f64 = (0..n).filter(|&j| j != i).map(|j| a[(i, j)].norm()).sum();
        a[(i, i)].norm() >= off - tol.threshold(scale)
    });
    let mut worst_minor = f64::INFINITY;
    for p in 0..n {
        for q in p + 1..n {
            let minor = a[(p, p)].re * a[(q, q)].re - a[(p, q)].norm_sqr();
            worst_minor = worst_minor.min(minor);
        }
    }
    let all_minors_nonneg = worst_minor >= -tol.threshold(scale * scale);
    Ok(MinorsReport {
        diag_dominance,
        all_minors_nonneg,
        worst_minor,
    })
}

/// Certificate from splitting the quadratic form into a sum of squares.
///
/// Every off-diagonal pair `(p, q)` contributes
/// `|Re a_pq| |x_p ± x_q|^2 + |Im a_pq| |x_p ± i x_q|^2`, which consumes
/// `|Re a_pq| + |Im a_pq|` from both diagonal entries. When every diagonal
/// entry covers its budget the remainder is a non-negative diagonal form and
/// the matrix is PSD.
#[derive(Debug, Clone, PartialEq)]
pub struct PsdSplitReport {
    pub satisfied: bool,
    /// `a_pp - sum_{q != p} (|Re a_pq| + |Im a_pq|)` per row.
    pub per_row_slack: Vec<f64>,
    /// Whether one global sign pattern explains the signs of all real parts.
    pub sign_gauge_consistent: bool,
    /// `gauge[p]` is the parity bit of index `p` when consistent.
    pub gauge: Option<Vec<bool>>,
}

pub fn psd_sufficient_split(a: &ComplexMatrix, tol: Tolerance) -> Result<PsdSplitReport> {
    let n = a.square_dim()?;
    require_hermitian(a)?;
    let scale = a.max_norm();
    let eps = tol.threshold(scale);

    let per_row_slack: Vec<f64> = (0..n)
        .map(|p| {
            let budget: f64 = (0..n)
                .filter(|&q| q != p)
                .map(|q| a[(p, q)].re.abs() + a[(p, q)].im.abs())
                .sum();
            a[(p, p)].re - budget
        })
        .collect();
    let satisfied = per_row_slack.iter().all(|&s| s >= -eps);

    // 2-colour the graph of non-negligible real parts: a negative real part
    // requires the endpoints to carry different parity bits.
    let mut colour: Vec<Option<bool>> = vec![None; n];
    let mut consistent = true;
    'outer: for start in 0..n {
        if colour[start].is_some() {
            continue;
        }
        colour[start] = Some(false);
        let mut stack = vec![start];
        while let Some(p) = stack.pop() {
            let cp = colour[p].expect("coloured");
            for q in 0..n {
                let re = a[(p, q)].re;
                if q == p || re.abs() <= eps {
                    continue;
                }
                let want = cp ^ (re < 0.0);
                match colour[q] {
                    None => {
                        colour[q] = Some(want);
                        stack.push(q);
                    }
                    Some(cq) if cq != want => {
                        consistent = false;
                        break 'outer;
                    }
                    Some(_) => {}
                }
            }
        }
    }
    let gauge = consistent.then(|| colour.iter().map(|c| c.unwrap_or(false)).collect());

    Ok(PsdSplitReport {
        satisfied,
        per_row_slack,
        sign_gauge_consistent: consistent,
        gauge,
    })
}

/// One side of a bipartition `A ⊗ B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Subsystem {
    A,
    B,
}

impl Subsystem {
    pub fn other(self) -> Self {
        match self {
            Subsystem::A => Subsystem::B,
            Subsystem::B => Subsystem::A,
        }
    }
}

impl fmt::Display for Subsystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Subsystem::A => "A",
            Subsystem::B => "B",
        })
    }
}

/// Reduced operator on subsystem `keep` of a `d_a * d_b` square matrix.
pub fn partial_trace(rho: &ComplexMatrix, dims: (usize, usize), keep: Subsystem) -> Result<ComplexMatrix> {
    let (da, db) = dims;
    let n = rho.square_dim()?;
    if da == 0 || db == 0 || da * db != n {
        return Err(Error::Dimension(format!(
            "cannot split dimension {n} as {da} x {db}"
        )));
    }
    Ok(match keep {
        Subsystem::A => ComplexMatrix::from_fn(da, da, |a, b| {
            (0..db).map(|k| rho[(a * db + k, b * db + k)]).sum()
        }),
        Subsystem::B => ComplexMatrix::from_fn(db, db, |a, b| {
            (0..da).map(|k| rho[(k * db + a, k * db + b)]).sum()
        }),
    })
}

/// `Tr(rho^2)`, computed as the sum of squared moduli (exact for Hermitian
/// input).
pub fn purity(rho: &ComplexMatrix) -> f64 {
    rho.entries().iter().map(|z| z.norm_sqr()).sum()
}

/// Pauli and Hadamard matrices.
pub mod pauli {
    use super::{c, ComplexMatrix, ONE, ZERO};

    pub fn identity() -> ComplexMatrix {
        ComplexMatrix::identity(2)
    }

    pub fn x() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[[ZERO, ONE], [ONE, ZERO]]).expect("2x2")
    }

    pub fn y() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[[ZERO, c(0.0, -1.0)], [c(0.0, 1.0), ZERO]]).expect("2x2")
    }

    pub fn z() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[[ONE, ZERO], [ZERO, c(-1.0, 0.0)]]).expect("2x2")
    }

    pub fn hadamard() -> ComplexMatrix {
        (&x() + &z()).scale(std::f64::consts::FRAC_1_SQRT_2)
    }
}
