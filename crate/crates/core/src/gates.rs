//! Unitary gates on qubit registers and the entry-wise partial gate.
//!
//! Qubit 0 is the leftmost tensor factor, i.e. the most significant bit of a
//! basis index.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{LaplacianConvention, WeightedGraph};
use crate::linalg::{pauli, ComplexMatrix, Tolerance, ONE, ZERO};
use crate::state::{qubits_for_dim, DensityOperator};

#[derive(Debug, Clone, PartialEq)]
pub enum GateKind {
    I,
    X,
    Y,
    Z,
    H,
    CX,
    CZ,
    Swap,
    /// Any `2^k x 2^k` unitary acting on `k` targets.
    Explicit(ComplexMatrix),
}

impl GateKind {
    fn arity(&self) -> Option<usize> {
        match self {
            GateKind::I | GateKind::X | GateKind::Y | GateKind::Z | GateKind::H => Some(1),
            GateKind::CX | GateKind::CZ | GateKind::Swap => Some(2),
            GateKind::Explicit(_) => None,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            GateKind::I => "I",
            GateKind::X => "X",
            GateKind::Y => "Y",
            GateKind::Z => "Z",
            GateKind::H => "H",
            GateKind::CX => "CX",
            GateKind::CZ => "CZ",
            GateKind::Swap => "SWAP",
            GateKind::Explicit(_) => "U",
        }
    }

    /// The gate on its own targets, first target most significant.
    pub fn local_matrix(&self) -> ComplexMatrix {
        match self {
            GateKind::I => pauli::identity(),
            GateKind::X => pauli::x(),
            GateKind::Y => pauli::y(),
            GateKind::Z => pauli::z(),
            GateKind::H => pauli::hadamard(),
            GateKind::CX => permutation(&[0, 1, 3, 2]),
            GateKind::Swap => permutation(&[0, 2, 1, 3]),
            GateKind::CZ => {
                let mut m = ComplexMatrix::identity(4);
                m[(3, 3)] = -ONE;
                m
            }
            GateKind::Explicit(m) => m.clone(),
        }
    }
}

fn permutation(images: &[usize]) -> ComplexMatrix {
    let n = images.len();
    ComplexMatrix::from_fn(n, n, |r, s| if images[s] == r { ONE } else { ZERO })
}

/// A gate placed on specific qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct GateSpec {
    kind: GateKind,
    targets: Vec<usize>,
}

impl GateSpec {
    pub fn new(kind: GateKind, targets: Vec<usize>) -> Result<Self> {
        let k = targets.len();
        if k == 0 {
            return Err(Error::Gate("at least one target is required".into()));
        }
        for (a, t) in targets.iter().enumerate() {
            if targets[..a].contains(t) {
                return Err(Error::Gate(format!("repeated target {t}")));
            }
        }
        match kind.arity() {
            Some(arity) if arity != k => {
                return Err(Error::Gate(format!(
                    "{} takes {arity} target(s), got {k}",
                    kind.name()
                )));
            }
            Some(_) => {}
            None => {
                let GateKind::Explicit(m) = &kind else { unreachable!() };
                if k > 12 || m.rows() != 1 << k || m.cols() != 1 << k {
                    return Err(Error::Gate(format!(
                        "explicit {}x{} matrix does not act on {k} qubit(s)",
                        m.rows(),
                        m.cols()
                    )));
                }
                let dev = (&(m * &m.adjoint()) - &ComplexMatrix::identity(m.rows())).max_norm();
                if dev > Tolerance::default().threshold(1.0) {
                    return Err(Error::Gate(format!("explicit matrix is not unitary (deviation {dev:e})")));
                }
            }
        }
        Ok(GateSpec { kind, targets })
    }

    pub fn kind(&self) -> &GateKind {
        &self.kind
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }
}

impl fmt::Display for GateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t: Vec<String> = self.targets.iter().map(|t| t.to_string()).collect();
        write!(f, "{}({})", self.kind.name(), t.join(","))
    }
}

/// Full `2^n x 2^n` unitary of `spec` on an `n`-qubit register.
pub fn gate_matrix(spec: &GateSpec, n_qubits: usize) -> Result<ComplexMatrix> {
    if n_qubits == 0 || n_qubits > 12 {
        return Err(Error::Gate(format!("unsupported register size {n_qubits}")));
    }
    if let Some(&t) = spec.targets.iter().find(|&&t| t >= n_qubits) {
        return Err(Error::Gate(format!("target {t} out of range for {n_qubits} qubit(s)")));
    }
    let local = spec.kind.local_matrix();
    let bit = |r: usize, t: usize| (r >> (n_qubits - 1 - t)) & 1;
    let sub = |r: usize| spec.targets.iter().fold(0, |acc, &t| (acc << 1) | bit(r, t));
    let target_mask = spec
        .targets
        .iter()
        .fold(0usize, |acc, &t| acc | 1 << (n_qubits - 1 - t));
    let dim = 1 << n_qubits;
    Ok(ComplexMatrix::from_fn(dim, dim, |r, s| {
        if r & !target_mask == s & !target_mask {
            local[(sub(r), sub(s))]
        } else {
            ZERO
        }
    }))
}

/// `U m U^dagger`.
pub fn conjugate(m: &ComplexMatrix, u: &ComplexMatrix) -> Result<ComplexMatrix> {
    u.try_mul(m)?.try_mul(&u.adjoint())
}

pub fn apply_gate(rho: &DensityOperator, spec: &GateSpec) -> Result<DensityOperator> {
    let u = gate_matrix(spec, rho.n_qubits())?;
    let out = conjugate(rho.matrix(), &u)?;
    Ok(DensityOperator::from_parts_unchecked(out, rho.partition(), rho.convention()))
}

/// Bits of `i XOR j` on the last `trailing` qubits: the qubits where the
/// per-entry unitary is `sigma_x`.
pub fn partial_mask(i: usize, j: usize, trailing: usize) -> usize {
    (i ^ j) & ((1usize << trailing) - 1)
}

fn partial_trailing(dim: usize, leading: usize) -> Result<usize> {
    let n = qubits_for_dim(dim)?;
    if leading >= n {
        return Err(Error::Gate(format!(
            "partial gate needs fewer than {n} untouched qubits, got {leading}"
        )));
    }
    Ok(n - leading)
}

/// Moves entry `(i, j)` to `(i ^ m, j ^ m)` with `m = partial_mask(i, j, ..)`.
///
/// This transposes every block of the grid over the `leading` untouched
/// qubits. It is an involution, fixes the diagonal and preserves Hermiticity,
/// but the result need not be positive semi-definite, so it acts on plain
/// matrices.
pub fn apply_partial_gate(m: &ComplexMatrix, leading: usize) -> Result<ComplexMatrix> {
    let dim = m.square_dim()?;
    let trailing = partial_trailing(dim, leading)?;
    let mut out = ComplexMatrix::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            let mask = partial_mask(i, j, trailing);
            out[(i ^ mask, j ^ mask)] = m[(i, j)];
        }
    }
    Ok(out)
}

/// Image of a graph under the partial gate.
///
/// Each edge `(u, v, w)` moves to `(u ^ m, v ^ m, w)`. The image of an edge is
/// never a self-loop and distinct edges have distinct images. Loop weights are
/// adjusted so every vertex keeps its Laplacian diagonal under `conv`, which
/// makes the Laplacian of the image equal the partial gate applied to the
/// original Laplacian.
pub fn apply_partial_gate_graph(
    g: &WeightedGraph,
    leading: usize,
    conv: LaplacianConvention,
) -> Result<WeightedGraph> {
    let trailing = partial_trailing(g.n_vertices(), leading)?;
    let diag = g.laplacian(conv)?;
    let mut out = WeightedGraph::new(g.partition());
    let mut degree = vec![0.0; g.n_vertices()];
    for (u, v, w) in g.edges() {
        let mask = partial_mask(u, v, trailing);
        let (a, b) = (u ^ mask, v ^ mask);
        out.add_edge(a, b, w)?;
        let contribution = match conv {
            LaplacianConvention::Magnitude => w.norm(),
            LaplacianConvention::Signed => w.re,
        };
        degree[a] += contribution;
        degree[b] += contribution;
    }
    for (x, d) in degree.into_iter().enumerate() {
        let target = diag[(x, x)].re;
        let mut lp = target - d;
        // Summation order differs from the original degree; drop rounding noise.
        if lp.abs() <= 1e-14 * target.abs().max(d.abs()) {
            lp = 0.0;
        }
        out.set_loop(x, lp)?;
    }
    Ok(out)
}

/// Whether `conj(partial(m)) = m` entrywise; returns the residual as well.
///
/// Equivalent to every block of the grid over the `leading` qubits being
/// Hermitian.
pub fn conj_partial_fixed(m: &ComplexMatrix, leading: usize, tol: Tolerance) -> Result<(bool, f64)> {
    let residual = apply_partial_gate(m, leading)?.conj().max_abs_diff(m);
    Ok((residual <= tol.threshold(m.max_norm()), residual))
}

/// One term of a gate word.
#[derive(Debug, Clone, PartialEq)]
pub enum GateStep {
    Gate(GateSpec),
    Partial { leading: usize },
}

/// Parses words such as `H(0),CX(0,1),partial(q=1)`.
pub fn parse_gate_word(word: &str) -> Result<Vec<GateStep>> {
    let mut steps = Vec::new();
    let mut rest = word.trim();
    while !rest.is_empty() {
        let open = rest
            .find('(')
            .ok_or_else(|| Error::Gate(format!("expected NAME(args) at {rest:?}")))?;
        let close = rest[open..]
            .find(')')
            .map(|k| open + k)
            .ok_or_else(|| Error::Gate(format!("unclosed parenthesis in {rest:?}")))?;
        let name = rest[..open].trim();
        let args: Vec<&str> = rest[open + 1..close].split(',').map(str::trim).collect();
        steps.push(parse_term(name, &args)?);
        rest = rest[close + 1..].trim_start();
        if let Some(r) = rest.strip_prefix(',') {
            rest = r.trim_start();
            if rest.is_empty() {
                return Err(Error::Gate("trailing comma in gate word".into()));
            }
        } else if !rest.is_empty() {
            return Err(Error::Gate(format!("expected ',' before {rest:?}")));
        }
    }
    if steps.is_empty() {
        return Err(Error::Gate("empty gate word".into()));
    }
    Ok(steps)
}

fn parse_index(s: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::Gate(format!("expected a qubit index, got {s:?}")))
}

fn parse_term(name: &str, args: &[&str]) -> Result<GateStep> {
    if name.eq_ignore_ascii_case("partial") {
        let [arg] = args else {
            return Err(Error::Gate("partial takes one argument, q=<leading qubits>".into()));
        };
        let value = arg.strip_prefix("q").map(str::trim_start).and_then(|s| s.strip_prefix('='));
        let value = value.unwrap_or(arg).trim();
        return Ok(GateStep::Partial {
            leading: parse_index(value)?,
        });
    }
    let kind = match name.to_ascii_uppercase().as_str() {
        "I" => GateKind::I,
        "X" => GateKind::X,
        "Y" => GateKind::Y,
        "Z" => GateKind::Z,
        "H" => GateKind::H,
        "CX" | "CNOT" => GateKind::CX,
        "CZ" => GateKind::CZ,
        "SWAP" => GateKind::Swap,
        _ => return Err(Error::Gate(format!("unknown gate {name:?}"))),
    };
    let targets = args.iter().map(|a| parse_index(a)).collect::<Result<Vec<_>>>()?;
    Ok(GateStep::Gate(GateSpec::new(kind, targets)?))
}

/// Applies a parsed word left to right to a square matrix.
pub fn apply_word(m: &ComplexMatrix, steps: &[GateStep]) -> Result<ComplexMatrix> {
    let n = qubits_for_dim(m.square_dim()?)?;
    let mut cur = m.clone();
    for step in steps {
        cur = match step {
            GateStep::Gate(spec) => conjugate(&cur, &gate_matrix(spec, n)?)?,
            GateStep::Partial { leading } => apply_partial_gate(&cur, *leading)?,
        };
    }
    Ok(cur)
}
