//! Numerical discord for two-qubit states and seeded random states.
//!
//! Discord with a projective measurement on one qubit is
//! `D = I(rho) - max_n [S(rho_other) - sum_k p_k S(rho_k)]`, maximised over
//! Bloch directions `n` by a grid search with shrinking local refinements.
//! Logarithms are base 2.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, c, Complex64, ComplexMatrix, Subsystem, Tolerance, ZERO};
use crate::state::{qubits_for_dim, DensityOperator, Partition};

const EIGEN_FLOOR: f64 = 1e-14;
const BRANCH_FLOOR: f64 = 1e-12;

fn plogp(l: f64) -> f64 {
    if l < EIGEN_FLOOR {
        0.0
    } else {
        -l * l.log2()
    }
}

/// Von Neumann entropy in bits.
pub fn entropy(rho: &ComplexMatrix) -> Result<f64> {
    let vals = linalg::hermitian_eigenvalues(rho)?;
    let min = vals.first().copied().unwrap_or(0.0);
    if min < -Tolerance::default().threshold(rho.max_norm()) {
        return Err(Error::NotPsd(min));
    }
    Ok(vals.into_iter().map(plogp).sum())
}

fn require_two_qubits(rho: &ComplexMatrix) -> Result<()> {
    if rho.square_dim()? != 4 {
        return Err(Error::Dimension(format!(
            "two-qubit state required, got dimension {}",
            rho.rows()
        )));
    }
    Ok(())
}

/// `S(rho_A) + S(rho_B) - S(rho)` for a two-qubit state.
pub fn mutual_information(rho: &ComplexMatrix) -> Result<f64> {
    require_two_qubits(rho)?;
    let a = linalg::partial_trace(rho, (2, 2), Subsystem::A)?;
    let b = linalg::partial_trace(rho, (2, 2), Subsystem::B)?;
    Ok(entropy(&a)? + entropy(&b)? - entropy(rho)?)
}

/// Projective measurement along the Bloch direction `(theta, phi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasurementSpec {
    pub theta: f64,
    pub phi: f64,
}

impl MeasurementSpec {
    pub fn bloch_vector(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    /// `(I + n.sigma) / 2` and `(I - n.sigma) / 2`.
    pub fn projectors(&self) -> [ComplexMatrix; 2] {
        let [x, y, z] = self.bloch_vector();
        let proj = |s: f64| {
            ComplexMatrix::from_rows(&[
                [c(0.5 * (1.0 + s * z), 0.0), c(0.5 * s * x, -0.5 * s * y)],
                [c(0.5 * s * x, 0.5 * s * y), c(0.5 * (1.0 - s * z), 0.0)],
            ])
            .expect("2x2")
        };
        [proj(1.0), proj(-1.0)]
    }

    /// Same direction with `theta` in `[0, pi]` and `phi` in `[0, 2 pi)`.
    pub fn normalized(&self) -> Self {
        let [x, y, z] = self.bloch_vector();
        let theta = z.clamp(-1.0, 1.0).acos();
        let mut phi = y.atan2(x);
        if phi < 0.0 {
            phi += 2.0 * PI;
        }
        if phi >= 2.0 * PI {
            phi = 0.0;
        }
        MeasurementSpec { theta, phi }
    }
}

/// Grid resolution and number of refinement passes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GridConfig {
    pub n_theta: usize,
    pub n_phi: usize,
    pub passes: usize,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            n_theta: 64,
            n_phi: 128,
            passes: 3,
        }
    }
}

impl GridConfig {
    pub fn new(n_theta: usize, n_phi: usize, passes: usize) -> Result<Self> {
        if n_theta < 2 || n_phi < 1 {
            return Err(Error::Dimension(format!(
                "grid needs n_theta >= 2 and n_phi >= 1, got {n_theta} x {n_phi}"
            )));
        }
        Ok(GridConfig {
            n_theta,
            n_phi,
            passes,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiscordEstimate {
    /// `raw_value` clamped at zero.
    pub value: f64,
    pub raw_value: f64,
    pub argmin: MeasurementSpec,
    pub grid: (usize, usize),
    pub refinement_passes: usize,
    pub measured: Subsystem,
    pub mutual_information: f64,
    pub classical_correlation: f64,
}

/// The four 2x2 blocks on the unmeasured qubit, indexed by measured labels.
struct Conditional {
    blocks: [[[Complex64; 4]; 2]; 2],
}

impl Conditional {
    fn new(rho: &ComplexMatrix, measured: Subsystem) -> Self {
        let mut blocks = [[[ZERO; 4]; 2]; 2];
        for (a, row) in blocks.iter_mut().enumerate() {
            for (b, blk) in row.iter_mut().enumerate() {
                for i in 0..2 {
                    for j in 0..2 {
                        blk[i * 2 + j] = match measured {
                            Subsystem::A => rho[(a * 2 + i, b * 2 + j)],
                            Subsystem::B => rho[(i * 2 + a, j * 2 + b)],
                        };
                    }
                }
            }
        }
        Conditional { blocks }
    }

    /// `sum_k p_k S(rho_k)` for the measurement along `spec`.
    fn conditional_entropy(&self, spec: MeasurementSpec) -> f64 {
        let [x, y, z] = spec.bloch_vector();
        let mut total = 0.0;
        for s in [1.0, -1.0] {
            // Projector entries P[a][b]; the conditional state is
            // sum_{a,b} P[b][a] * block(a, b).
            let p = [
                [c(0.5 * (1.0 + s * z), 0.0), c(0.5 * s * x, -0.5 * s * y)],
                [c(0.5 * s * x, 0.5 * s * y), c(0.5 * (1.0 - s * z), 0.0)],
            ];
            let mut sigma = [ZERO; 4];
            for a in 0..2 {
                for b in 0..2 {
                    let w = p[b][a];
                    for (e, v) in sigma.iter_mut().zip(&self.blocks[a][b]) {
                        *e += w * v;
                    }
                }
            }
            let prob = sigma[0].re + sigma[3].re;
            if prob < BRANCH_FLOOR {
                continue;
            }
            let half_gap = 0.5 * (sigma[0].re - sigma[3].re);
            let radius = (half_gap * half_gap + sigma[1].norm_sqr()).sqrt() / prob;
            total += prob * (plogp(0.5 + radius) + plogp(0.5 - radius));
        }
        total
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![0.5 * (lo + hi)];
    }
    (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect()
}

/// Minimum over the product grid; ties keep the first point in row-major
/// order.
fn grid_min(cond: &Conditional, thetas: &[f64], phis: &[f64]) -> (f64, MeasurementSpec) {
    let rows: Vec<(f64, usize)> = thetas
        .par_iter()
        .map(|&theta| {
            let mut best = (f64::INFINITY, 0);
            for (j, &phi) in phis.iter().enumerate() {
                let v = cond.conditional_entropy(MeasurementSpec { theta, phi });
                if v < best.0 {
                    best = (v, j);
                }
            }
            best
        })
        .collect();
    let mut best = (f64::INFINITY, MeasurementSpec { theta: 0.0, phi: 0.0 });
    for (i, &(v, j)) in rows.iter().enumerate() {
        if v < best.0 {
            best = (
                v,
                MeasurementSpec {
                    theta: thetas[i],
                    phi: phis[j],
                },
            );
        }
    }
    best
}

/// Brute-force discord of a two-qubit state for a projective measurement on
/// `measured`.
pub fn discord_estimate(rho: &DensityOperator, measured: Subsystem, grid: GridConfig) -> Result<DiscordEstimate> {
    let m = rho.matrix();
    require_two_qubits(m)?;
    let cond = Conditional::new(m, measured);
    let unmeasured = linalg::partial_trace(m, (2, 2), measured.other())?;
    let mi = mutual_information(m)?;
    let s_other = entropy(&unmeasured)?;

    let thetas = linspace(0.0, PI, grid.n_theta);
    let phis: Vec<f64> = (0..grid.n_phi).map(|j| 2.0 * PI * j as f64 / grid.n_phi as f64).collect();
    let (mut best, mut arg) = grid_min(&cond, &thetas, &phis);
    let mut width = (PI, 2.0 * PI);
    for _ in 0..grid.passes {
        width = (width.0 / 4.0, width.1 / 4.0);
        let thetas = linspace(arg.theta - width.0 / 2.0, arg.theta + width.0 / 2.0, grid.n_theta);
        let phis = linspace(arg.phi - width.1 / 2.0, arg.phi + width.1 / 2.0, grid.n_phi);
        let (v, a) = grid_min(&cond, &thetas, &phis);
        if v < best {
            best = v;
            arg = a;
        }
    }
    let classical = s_other - best;
    let raw = mi - classical;
    Ok(DiscordEstimate {
        value: raw.max(0.0),
        raw_value: raw,
        argmin: arg.normalized(),
        grid: (grid.n_theta, grid.n_phi),
        refinement_passes: grid.passes,
        measured,
        mutual_information: mi,
        classical_correlation: classical,
    })
}

/// Deterministic generator used by every seeded constructor here.
pub fn seeded_rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// Matrix with independent standard complex Gaussian entries.
pub fn gaussian_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        c(re * scale, im * scale)
    })
}

/// `G G^dagger / Tr(G G^dagger)`.
pub fn random_density_matrix<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let g = gaussian_matrix(rng, dim, dim);
    let w = &g * &g.adjoint();
    let tr = w.trace().re;
    w.scale(1.0 / tr)
}

/// Haar-distributed unitary via Gram-Schmidt on Gaussian columns.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let g = gaussian_matrix(rng, dim, dim);
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    for j in 0..dim {
        let mut v: Vec<Complex64> = (0..dim).map(|i| g[(i, j)]).collect();
        for u in &cols {
            let dot: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (x, a) in v.iter_mut().zip(u) {
                *x -= dot * a;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        cols.push(v.into_iter().map(|z| z / norm).collect());
    }
    ComplexMatrix::from_fn(dim, dim, |i, j| cols[j][i])
}

/// Generic full-rank state of dimension `dim` (a power of two up to 256),
/// with a balanced partition.
pub fn random_state(seed: u64, dim: usize) -> Result<DensityOperator> {
    let n = qubits_for_dim(dim)?;
    if n > 8 {
        return Err(Error::Dimension(format!("random states are limited to dimension 256, got {dim}")));
    }
    let m = random_density_matrix(&mut seeded_rng(seed), dim);
    DensityOperator::new(m, Partition::balanced(n)?, Tolerance::default())
}

/// Two-qubit state `sum_k p_k |k><k| ⊗ rho_k` (or the mirror image when
/// `classical` is B) with `branches` terms.
pub fn random_cq_state(seed: u64, branches: usize, classical: Subsystem) -> Result<DensityOperator> {
    if !(1..=2).contains(&branches) {
        return Err(Error::Dimension(format!("branch count must be 1 or 2, got {branches}")));
    }
    let mut rng = seeded_rng(seed);
    let raw: Vec<f64> = (0..branches).map(|_| 1.0 - rng.random::<f64>()).collect();
    let total: f64 = raw.iter().sum();
    let mut m = ComplexMatrix::zeros(4, 4);
    for (k, w) in raw.iter().enumerate() {
        let branch = random_density_matrix(&mut rng, 2).scale(w / total);
        let mut label = ComplexMatrix::zeros(2, 2);
        label[(k, k)] = c(1.0, 0.0);
        let term = match classical {
            Subsystem::A => linalg::kron(&label, &branch),
            Subsystem::B => linalg::kron(&branch, &label),
        };
        m = &m + &term;
    }
    DensityOperator::new(m, Partition::new(1, 1)?, Tolerance::default())
}
