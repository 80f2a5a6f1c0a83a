//! Block-structure certificates for zero quantum discord.
//!
//! A bipartite state has zero discord with respect to a measurement on one
//! factor exactly when that factor is classical: `rho = sum_k p_k |k><k| ⊗ rho_k`
//! in some basis. Cutting `rho` into blocks indexed by the *unmeasured*
//! factor, this holds iff the blocks are normal and pairwise commute
//! ([`blocks_normal_commuting`]). The other checks here are cheaper
//! structural conditions; each is reported next to the block criterion and a
//! certificate is only credited when the block criterion agrees.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gates::conj_partial_fixed;
use crate::graph::{edges_fix_label, edges_same_parity, uniform_complete, LaplacianConvention, WeightedGraph};
use crate::linalg::{self, pauli, ComplexMatrix, Subsystem, Tolerance, IMAG};
use crate::state::{qubits_for_dim, DensityOperator, Partition};

/// Which tensor factor indexes the block grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GridFactor {
    /// Contiguous blocks: block `(x, y)` is rows `x*d_B..`, cols `y*d_B..`.
    Leading,
    /// Strided blocks: block `(x, y)` collects entries `(i*d_B + x, j*d_B + y)`.
    Trailing,
}

/// A square matrix cut into an `outer x outer` grid of `inner x inner` blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockView {
    grid: GridFactor,
    outer: usize,
    inner: usize,
    blocks: Vec<ComplexMatrix>,
}

impl BlockView {
    /// Blocks in row-major grid order.
    pub fn from_blocks(grid: GridFactor, outer: usize, blocks: Vec<ComplexMatrix>) -> Result<Self> {
        if outer == 0 || blocks.len() != outer * outer {
            return Err(Error::Dimension(format!(
                "{} blocks do not form a {outer}x{outer} grid",
                blocks.len()
            )));
        }
        let inner = blocks[0].rows();
        if blocks.iter().any(|b| b.rows() != inner || b.cols() != inner) {
            return Err(Error::Dimension("blocks must be square and equally sized".into()));
        }
        Ok(BlockView {
            grid,
            outer,
            inner,
            blocks,
        })
    }

    pub fn grid(&self) -> GridFactor {
        self.grid
    }

    pub fn outer_dim(&self) -> usize {
        self.outer
    }

    pub fn inner_dim(&self) -> usize {
        self.inner
    }

    pub fn block(&self, x: usize, y: usize) -> &ComplexMatrix {
        &self.blocks[x * self.outer + y]
    }

    pub fn blocks(&self) -> &[ComplexMatrix] {
        &self.blocks
    }

    /// Inverse of [`block_partition`].
    pub fn reassemble(&self) -> ComplexMatrix {
        let (outer, inner) = (self.outer, self.inner);
        let n = outer * inner;
        match self.grid {
            GridFactor::Leading => ComplexMatrix::from_fn(n, n, |r, s| {
                self.block(r / inner, s / inner)[(r % inner, s % inner)]
            }),
            GridFactor::Trailing => ComplexMatrix::from_fn(n, n, |r, s| {
                self.block(r % outer, s % outer)[(r / outer, s / outer)]
            }),
        }
    }
}

/// Cuts `m` (of dimension `d_lead * d_trail`) into blocks indexed by `grid`.
pub fn block_partition(m: &ComplexMatrix, (d_lead, d_trail): (usize, usize), grid: GridFactor) -> Result<BlockView> {
    let n = m.square_dim()?;
    if d_lead == 0 || d_trail == 0 || d_lead * d_trail != n {
        return Err(Error::Dimension(format!(
            "cannot split dimension {n} as {d_lead} x {d_trail}"
        )));
    }
    let (outer, inner) = match grid {
        GridFactor::Leading => (d_lead, d_trail),
        GridFactor::Trailing => (d_trail, d_lead),
    };
    let mut blocks = Vec::with_capacity(outer * outer);
    for x in 0..outer {
        for y in 0..outer {
            blocks.push(match grid {
                GridFactor::Leading => m.submatrix(x * inner, y * inner, inner, inner),
                GridFactor::Trailing => {
                    ComplexMatrix::from_fn(inner, inner, |i, j| m[(i * d_trail + x, j * d_trail + y)])
                }
            });
        }
    }
    BlockView::from_blocks(grid, outer, blocks)
}

/// Blocks acting on the `measured` factor, indexed by the other factor.
pub fn measured_view(rho: &DensityOperator, measured: Subsystem) -> BlockView {
    let grid = match measured {
        Subsystem::B => GridFactor::Leading,
        Subsystem::A => GridFactor::Trailing,
    };
    block_partition(rho.matrix(), rho.partition().dims(), grid).expect("partition matches dimension")
}

/// The state with its factors ordered so that `measured` is trailing.
pub fn oriented(rho: &DensityOperator, measured: Subsystem) -> DensityOperator {
    match measured {
        Subsystem::B => rho.clone(),
        Subsystem::A => rho.swapped(),
    }
}

/// Outcome of a single check with its worst raw residual.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Check {
    pub passed: bool,
    pub residual: f64,
}

impl Check {
    fn pass() -> Self {
        Check {
            passed: true,
            residual: 0.0,
        }
    }

    /// Folds in one residual with its own threshold.
    fn absorb(&mut self, residual: f64, threshold: f64) {
        self.residual = self.residual.max(residual);
        self.passed &= residual <= threshold;
    }

    fn and(mut self, other: Check) -> Check {
        self.passed &= other.passed;
        self.residual = self.residual.max(other.residual);
        self
    }
}

fn commuting_family(mats: &[ComplexMatrix], tol: Tolerance) -> Result<Check> {
    let norms: Vec<f64> = mats.iter().map(ComplexMatrix::max_norm).collect();
    let mut check = Check::pass();
    for a in 0..mats.len() {
        for b in a + 1..mats.len() {
            if norms[a] == 0.0 || norms[b] == 0.0 {
                continue;
            }
            let r = linalg::commutator_norm(&mats[a], &mats[b])?;
            check.absorb(r, tol.threshold(norms[a] * norms[b]));
        }
    }
    Ok(check)
}

/// Every block normal and every pair of blocks commuting.
pub fn blocks_normal_commuting(view: &BlockView, tol: Tolerance) -> Result<Check> {
    let mut check = Check::pass();
    for b in view.blocks() {
        let s = b.max_norm();
        check.absorb(linalg::normality_residual(b)?, tol.threshold(s * s));
    }
    Ok(check.and(commuting_family(view.blocks(), tol)?))
}

/// Spectral split `A = (B - C) + i (D - E)` with `B, C, D, E` positive
/// semi-definite and `B C = D E = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct BncParts {
    pub positive_real: ComplexMatrix,
    pub negative_real: ComplexMatrix,
    pub positive_imag: ComplexMatrix,
    pub negative_imag: ComplexMatrix,
}

impl BncParts {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let re = &self.positive_real - &self.negative_real;
        let im = &self.positive_imag - &self.negative_imag;
        &re + &im.scale_complex(IMAG)
    }

    pub fn parts(&self) -> [&ComplexMatrix; 4] {
        [
            &self.positive_real,
            &self.negative_real,
            &self.positive_imag,
            &self.negative_imag,
        ]
    }
}

fn spectral_halves(h: &ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let n = h.rows();
    let (vals, vecs) = linalg::hermitian_eigh(h)?;
    let build = |keep: &dyn Fn(f64) -> f64| {
        ComplexMatrix::from_fn(n, n, |i, j| {
            vals.iter()
                .enumerate()
                .map(|(k, &l)| vecs[(i, k)] * vecs[(j, k)].conj() * keep(l))
                .sum()
        })
    };
    Ok((build(&|l| l.max(0.0)), build(&|l| (-l).max(0.0))))
}

pub fn bnc_decompose(block: &ComplexMatrix) -> Result<BncParts> {
    block.square_dim()?;
    let adj = block.adjoint();
    let h = (block + &adj).scale(0.5);
    let k = (block - &adj).scale_complex(IMAG * -0.5);
    let (positive_real, negative_real) = spectral_halves(&h)?;
    let (positive_imag, negative_imag) = spectral_halves(&k)?;
    Ok(BncParts {
        positive_real,
        negative_real,
        positive_imag,
        negative_imag,
    })
}

/// The Hermitian and anti-Hermitian spectral parts of all blocks pairwise
/// commute.
pub fn check_hermitian_parts_commute(view: &BlockView, tol: Tolerance) -> Result<Check> {
    let mut parts = Vec::with_capacity(4 * view.blocks().len());
    for b in view.blocks() {
        let split = bnc_decompose(b)?;
        parts.extend(split.parts().into_iter().cloned());
    }
    commuting_family(&parts, tol)
}

/// Every block is Hermitian and every product of two blocks is Hermitian.
pub fn check_block_products_hermitian(view: &BlockView, tol: Tolerance) -> Result<Check> {
    let mut check = Check::pass();
    let norms: Vec<f64> = view.blocks().iter().map(ComplexMatrix::max_norm).collect();
    for (b, &s) in view.blocks().iter().zip(&norms) {
        check.absorb(linalg::hermitian_deviation(b)?, tol.threshold(s));
    }
    for (a, x) in view.blocks().iter().enumerate() {
        for (b, y) in view.blocks().iter().enumerate() {
            let p = x.try_mul(y)?;
            let dev = linalg::hermitian_deviation(&p)?;
            check.absorb(dev, tol.threshold(norms[a] * norms[b]));
        }
    }
    Ok(check)
}

fn require_dim(m: &ComplexMatrix, dim: usize, what: &str) -> Result<()> {
    let n = m.square_dim()?;
    if n != dim {
        return Err(Error::Dimension(format!("{what} needs a {dim}x{dim} matrix, got {n}x{n}")));
    }
    Ok(())
}

fn partial_fixed(m: &ComplexMatrix, leading: usize, tol: Tolerance) -> Result<Check> {
    let (passed, residual) = conj_partial_fixed(m, leading, tol)?;
    Ok(Check { passed, residual })
}

/// Two-qubit test: Hermitian blocks and
/// `(r11 - r22) r14 = r12 (r13 - r24)` (1-based entries).
pub fn check_two_qubit_block_identity(m: &ComplexMatrix, tol: Tolerance) -> Result<Check> {
    require_dim(m, 4, "two-qubit block identity")?;
    let r = |i: usize, j: usize| m[(i - 1, j - 1)];
    let lhs = (r(1, 1) - r(2, 2)) * r(1, 4);
    let rhs = r(1, 2) * (r(1, 3) - r(2, 4));
    let s = m.max_norm();
    let mut check = partial_fixed(m, 1, tol)?;
    check.absorb((lhs - rhs).norm(), tol.threshold(s * s));
    Ok(check)
}

/// Two-qubit test: `conj((I ⊗ X) m (I ⊗ X)) = m` and `(X ⊗ I) m = m`.
pub fn check_two_qubit_flip_symmetry(m: &ComplexMatrix, tol: Tolerance) -> Result<Check> {
    require_dim(m, 4, "two-qubit flip symmetry")?;
    let ix = linalg::kron(&pauli::identity(), &pauli::x());
    let xi = linalg::kron(&pauli::x(), &pauli::identity());
    let flipped = ix.try_mul(m)?.try_mul(&ix)?.conj();
    let threshold = tol.threshold(m.max_norm());
    let mut check = Check::pass();
    check.absorb(flipped.max_abs_diff(m), threshold);
    check.absorb(xi.try_mul(m)?.max_abs_diff(m), threshold);
    Ok(check)
}

/// Hermitian 2x2 blocks over all but the last qubit, each with four entries
/// of equal modulus.
pub fn check_uniform_magnitude_blocks(m: &ComplexMatrix, tol: Tolerance) -> Result<Check> {
    let n = qubits_for_dim(m.square_dim()?)?;
    let mut check = partial_fixed(m, n - 1, tol)?;
    let eps = tol.threshold(m.max_norm());
    let view = block_partition(m, (m.rows() / 2, 2), GridFactor::Leading)?;
    for b in view.blocks() {
        let mags: Vec<f64> = b.entries().iter().map(|z| z.norm()).collect();
        let spread = mags.iter().cloned().fold(f64::MIN, f64::max) - mags.iter().cloned().fold(f64::MAX, f64::min);
        check.absorb(spread, eps);
    }
    Ok(check)
}

/// Outer 2x2 grid over the first qubit: Hermitian outer blocks whose products
/// agree in both orders, compared sub-block by sub-block.
pub fn check_nested_block_commutation(m: &ComplexMatrix, tol: Tolerance) -> Result<Check> {
    let n = qubits_for_dim(m.square_dim()?)?;
    let check = partial_fixed(m, 1, tol)?;
    let view = block_partition(m, (2, 1 << (n - 1)), GridFactor::Leading)?;
    Ok(check.and(commuting_family(view.blocks(), tol)?))
}

/// Outer 4x4 grid over the first two qubits:
/// `(A11 - A22) A14 = A12 (A13 - A24)` (1-based block labels).
pub fn check_four_block_identity(m: &ComplexMatrix, tol: Tolerance) -> Result<Check> {
    let n = qubits_for_dim(m.square_dim()?)?;
    if n < 2 {
        return Err(Error::Dimension("four-block identity needs at least two qubits".into()));
    }
    let view = block_partition(m, (4, 1 << (n - 2)), GridFactor::Leading)?;
    let a = |x: usize, y: usize| view.block(x - 1, y - 1);
    let lhs = (a(1, 1) - a(2, 2)).try_mul(a(1, 4))?;
    let rhs = a(1, 2).try_mul(&(a(1, 3) - a(2, 4)))?;
    let s = m.max_norm();
    let mut check = Check::pass();
    check.absorb(lhs.max_abs_diff(&rhs), tol.threshold(s * s));
    Ok(check)
}

/// One term `weight * first ⊗ second` of a separable decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductTerm {
    pub weight: f64,
    pub first: ComplexMatrix,
    pub second: ComplexMatrix,
}

fn validate_factor(m: &ComplexMatrix, k: usize, which: &str, tol: Tolerance) -> Result<()> {
    let bad = |why: &str| Error::Decomposition(format!("term {k}: {which} factor {why}"));
    m.square_dim().map_err(|_| bad("is not square"))?;
    if !linalg::is_hermitian(m, tol)? {
        return Err(bad("is not Hermitian"));
    }
    if (m.trace().re - 1.0).abs() > tol.threshold(1.0) {
        return Err(bad("does not have unit trace"));
    }
    if !linalg::is_psd(m, tol)? {
        return Err(bad("is not positive semi-definite"));
    }
    Ok(())
}

/// `m = sum_i p_i first_i ⊗ second_i` with the first factors pairwise
/// commuting.
pub fn check_commuting_product_decomposition(m: &ComplexMatrix, terms: &[ProductTerm], tol: Tolerance) -> Result<Check> {
    let n = m.square_dim()?;
    if terms.is_empty() {
        return Err(Error::Decomposition("no terms".into()));
    }
    let mut total = 0.0;
    let mut sum = ComplexMatrix::zeros(n, n);
    for (k, t) in terms.iter().enumerate() {
        if !(t.weight >= -tol.abs_eps) {
            return Err(Error::Decomposition(format!("term {k}: negative weight {}", t.weight)));
        }
        validate_factor(&t.first, k, "first", tol)?;
        validate_factor(&t.second, k, "second", tol)?;
        if t.first.rows() != terms[0].first.rows() || t.first.rows() * t.second.rows() != n {
            return Err(Error::Decomposition(format!(
                "term {k}: factor dimensions {} x {} do not match {n}",
                t.first.rows(),
                t.second.rows()
            )));
        }
        total += t.weight;
        sum = &sum + &linalg::kron(&t.first, &t.second).scale(t.weight);
    }
    if (total - 1.0).abs() > tol.threshold(1.0) {
        return Err(Error::Decomposition(format!("weights sum to {total}")));
    }
    let mut check = Check::pass();
    check.absorb(sum.max_abs_diff(m), tol.threshold(m.max_norm()));
    let firsts: Vec<ComplexMatrix> = terms.iter().map(|t| t.first.clone()).collect();
    Ok(check.and(commuting_family(&firsts, tol)?))
}

/// Determinant of the leading marginal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingularMarginal {
    pub determinant: f64,
    pub singular: bool,
    /// Singular and the leading factor is a single qubit, which forces a
    /// product state.
    pub certifies: bool,
}

pub fn check_singular_marginal(rho: &DensityOperator, tol: Tolerance) -> Result<SingularMarginal> {
    rho.partition().require_bipartite()?;
    let det = rho.reduced(Subsystem::A).determinant()?.re;
    let singular = det.abs() <= tol.abs_eps;
    Ok(SingularMarginal {
        determinant: det,
        singular,
        certifies: singular && rho.partition().leading == 1,
    })
}

/// Certificate names used in reports.
pub mod names {
    pub const NORMAL_COMMUTING_BLOCKS: &str = "normal_commuting_blocks";
    pub const TWO_QUBIT_BLOCK_IDENTITY: &str = "two_qubit_block_identity";
    pub const TWO_QUBIT_FLIP_SYMMETRY: &str = "two_qubit_flip_symmetry";
    pub const HERMITIAN_PART_COMMUTATION: &str = "hermitian_part_commutation";
    pub const BLOCK_PRODUCTS_HERMITIAN: &str = "block_products_hermitian";
    pub const UNIFORM_MAGNITUDE_BLOCKS: &str = "uniform_magnitude_blocks";
    pub const NESTED_BLOCK_COMMUTATION: &str = "nested_block_commutation";
    pub const FOUR_BLOCK_IDENTITY: &str = "four_block_identity";
    pub const SINGULAR_MARGINAL: &str = "singular_marginal";
    pub const PARITY_PRESERVING_EDGES: &str = "parity_preserving_edges";
    pub const BLOCK_DIAGONAL_EDGES: &str = "block_diagonal_edges";
    pub const UNIFORM_COMPLETE_GRAPH: &str = "uniform_complete_graph";
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    CertifiedZero,
    NotCertified,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::CertifiedZero => "certified_zero",
            Verdict::NotCertified => "not_certified",
        }
    }
}

/// Side(s) for which a certificate implies zero discord.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CertSide {
    A,
    B,
    #[serde(rename = "both")]
    Both,
}

impl From<Subsystem> for CertSide {
    fn from(s: Subsystem) -> Self {
        match s {
            Subsystem::A => CertSide::A,
            Subsystem::B => CertSide::B,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertificateEntry {
    pub name: &'static str,
    pub passed: bool,
    pub residual: f64,
    pub side: CertSide,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertificateReport {
    pub verdict: Verdict,
    pub certificates: Vec<CertificateEntry>,
    pub convention: Option<LaplacianConvention>,
    pub measured_side: Subsystem,
    pub tolerances: Tolerance,
    pub notes: Vec<String>,
}

impl CertificateReport {
    pub fn entry(&self, name: &str) -> Option<&CertificateEntry> {
        self.certificates.iter().find(|e| e.name == name)
    }

    pub fn passed(&self, name: &str) -> bool {
        self.entry(name).is_some_and(|e| e.passed)
    }

    pub fn fired(&self) -> Vec<&'static str> {
        self.certificates.iter().filter(|e| e.passed).map(|e| e.name).collect()
    }
}

/// What the battery runs on.
#[derive(Debug, Clone, Copy)]
pub enum VerdictInput<'a> {
    Graph {
        graph: &'a WeightedGraph,
        convention: LaplacianConvention,
    },
    Operator(&'a DensityOperator),
}

/// Runs every applicable certificate for a measurement on `measured`.
///
/// The verdict is `certified_zero` iff some entry passed. An entry that fires
/// while the block criterion fails is withheld and noted.
pub fn zero_discord_verdict(input: VerdictInput<'_>, measured: Subsystem, tol: Tolerance) -> Result<CertificateReport> {
    let built;
    let (rho, graph) = match input {
        VerdictInput::Graph { graph, convention } => {
            built = graph.density_operator(convention, tol)?;
            (&built, Some(graph))
        }
        VerdictInput::Operator(rho) => (rho, None),
    };
    let partition = rho.partition();
    partition.require_bipartite()?;

    let side = CertSide::from(measured);
    let mut entries = Vec::new();
    let mut notes = Vec::new();
    let mut push = |name, check: Check, side| {
        entries.push(CertificateEntry {
            name,
            passed: check.passed,
            residual: check.residual,
            side,
        })
    };

    let view = measured_view(rho, measured);
    let master = blocks_normal_commuting(&view, tol)?;
    push(names::NORMAL_COMMUTING_BLOCKS, master, side);

    let orient = oriented(rho, measured);
    let om = orient.matrix();
    let Partition {
        leading: unmeasured_qubits,
        trailing: measured_qubits,
    } = orient.partition();

    if rho.dim() == 4 {
        push(names::TWO_QUBIT_BLOCK_IDENTITY, check_two_qubit_block_identity(om, tol)?, side);
        push(names::TWO_QUBIT_FLIP_SYMMETRY, check_two_qubit_flip_symmetry(om, tol)?, side);
    } else {
        notes.push(format!(
            "{} and {} apply to two-qubit states only",
            names::TWO_QUBIT_BLOCK_IDENTITY,
            names::TWO_QUBIT_FLIP_SYMMETRY
        ));
    }
    push(names::HERMITIAN_PART_COMMUTATION, check_hermitian_parts_commute(&view, tol)?, side);
    push(names::BLOCK_PRODUCTS_HERMITIAN, check_block_products_hermitian(&view, tol)?, side);
    if measured_qubits == 1 {
        push(names::UNIFORM_MAGNITUDE_BLOCKS, check_uniform_magnitude_blocks(om, tol)?, side);
    } else {
        notes.push(format!(
            "{} needs a single measured qubit",
            names::UNIFORM_MAGNITUDE_BLOCKS
        ));
    }
    if unmeasured_qubits == 1 {
        push(names::NESTED_BLOCK_COMMUTATION, check_nested_block_commutation(om, tol)?, side);
    } else {
        notes.push(format!(
            "{} needs a single unmeasured qubit",
            names::NESTED_BLOCK_COMMUTATION
        ));
    }
    if unmeasured_qubits == 2 {
        push(names::FOUR_BLOCK_IDENTITY, check_four_block_identity(om, tol)?, side);
    } else {
        notes.push(format!(
            "{} needs exactly two unmeasured qubits",
            names::FOUR_BLOCK_IDENTITY
        ));
    }
    let marginal = check_singular_marginal(rho, tol)?;
    push(
        names::SINGULAR_MARGINAL,
        Check {
            passed: marginal.certifies,
            residual: marginal.determinant.abs(),
        },
        CertSide::Both,
    );
    if marginal.singular && !marginal.certifies {
        notes.push(format!(
            "{}: leading marginal is singular but has {} qubits; not credited",
            names::SINGULAR_MARGINAL,
            partition.leading
        ));
    }

    if let Some(g) = graph {
        let conv = rho.convention().expect("built from a graph");
        let og = match measured {
            Subsystem::B => g.clone(),
            Subsystem::A => g.swapped_factors(),
        };
        if measured_qubits == 1 {
            push(names::PARITY_PRESERVING_EDGES, flag(edges_same_parity(&og)), side);
        } else {
            notes.push(format!(
                "{} needs a single measured qubit",
                names::PARITY_PRESERVING_EDGES
            ));
        }
        push(names::BLOCK_DIAGONAL_EDGES, flag(edges_fix_label(g, measured)), side);
        push(names::UNIFORM_COMPLETE_GRAPH, flag(uniform_complete(g, conv, tol)?), CertSide::Both);
    }

    if !master.passed {
        for e in entries.iter_mut().skip(1) {
            if e.passed {
                e.passed = false;
                notes.push(format!(
                    "{} holds but the blocks are not normal and commuting; not credited",
                    e.name
                ));
            }
        }
    }

    let verdict = if entries.iter().any(|e| e.passed) {
        Verdict::CertifiedZero
    } else {
        Verdict::NotCertified
    };
    Ok(CertificateReport {
        verdict,
        certificates: entries,
        convention: rho.convention(),
        measured_side: measured,
        tolerances: tol,
        notes,
    })
}

fn flag(passed: bool) -> Check {
    Check {
        passed,
        residual: 0.0,
    }
}
