mod common;

use proptest::prelude::*;
use rand::Rng;

use qgraph::discord::{
    block_partition, blocks_normal_commuting, check_block_products_hermitian, check_four_block_identity,
    check_hermitian_parts_commute, check_nested_block_commutation, check_two_qubit_block_identity,
    check_two_qubit_flip_symmetry, check_uniform_magnitude_blocks, measured_view, GridFactor,
};
use qgraph::fixtures;
use qgraph::gates::{
    apply_gate, apply_partial_gate, apply_partial_gate_graph, conj_partial_fixed, GateKind, GateSpec,
};
use qgraph::graph::{pure_by_component, ConventionChoice, LaplacianConvention, WeightedGraph};
use qgraph::io::{read_graph, write_graph};
use qgraph::linalg::{
    self, c, commutator_norm, hermitian_eigenvalues, kron, partial_trace, psd_necessary_minors,
    psd_sufficient_split, Complex64, ComplexMatrix, Subsystem,
};
use qgraph::oracle::{gaussian_matrix, random_cq_state, random_density_matrix, random_state, seeded_rng};
use qgraph::state::pure_by_entries;
use qgraph::{DensityOperator, Partition, Tolerance};

fn tol() -> Tolerance {
    Tolerance::default()
}

fn random_hermitian<R: Rng>(rng: &mut R, n: usize) -> ComplexMatrix {
    let g = gaussian_matrix(rng, n, n);
    (&g + &g.adjoint()).scale(0.5)
}

fn random_graph<R: Rng>(rng: &mut R, partition: Partition, complex: bool) -> WeightedGraph {
    let mut g = WeightedGraph::new(partition);
    let n = g.n_vertices();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(0.4) {
                let re = rng.random_range(-2.0..2.0);
                let im = if complex { rng.random_range(-2.0..2.0) } else { 0.0 };
                if re != 0.0 || im != 0.0 {
                    g.add_edge(u, v, c(re, im)).unwrap();
                }
            }
        }
        if rng.random_bool(0.3) {
            g.set_loop(u, rng.random_range(0.0..3.0)).unwrap();
        }
    }
    g
}

fn random_partition<R: Rng>(rng: &mut R, max_qubits: usize) -> Partition {
    let n = rng.random_range(2..=max_qubits);
    let p = rng.random_range(1..n);
    Partition::new(p, n - p).unwrap()
}

proptest! {
    #[test]
    fn kron_entry_formula(seed in any::<u64>(), ra in 1usize..=4, ca in 1usize..=4, rb in 1usize..=4, cb in 1usize..=4) {
        let mut rng = seeded_rng(seed);
        let a = gaussian_matrix(&mut rng, ra, ca);
        let b = gaussian_matrix(&mut rng, rb, cb);
        let k = kron(&a, &b);
        for i in 0..ra { for j in 0..ca { for p in 0..rb { for q in 0..cb {
            prop_assert_eq!(k[(i * rb + p, j * cb + q)], a[(i, j)] * b[(p, q)]);
        }}}}
    }

    #[test]
    fn partial_trace_of_products(seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let s = gaussian_matrix(&mut rng, 2, 2);
        let t = gaussian_matrix(&mut rng, 2, 2);
        let k = kron(&s, &t);
        let a = partial_trace(&k, (2, 2), Subsystem::A).unwrap();
        prop_assert!(a.max_abs_diff(&s.scale_complex(t.trace())) < 1e-12);
        let b = partial_trace(&k, (2, 2), Subsystem::B).unwrap();
        prop_assert!(b.max_abs_diff(&t.scale_complex(s.trace())) < 1e-12);
    }

    #[test]
    fn commutator_symmetry(seed in any::<u64>(), n in 1usize..=5) {
        let mut rng = seeded_rng(seed);
        let a = gaussian_matrix(&mut rng, n, n);
        let b = gaussian_matrix(&mut rng, n, n);
        prop_assert_eq!(commutator_norm(&a, &b).unwrap(), commutator_norm(&b, &a).unwrap());
        prop_assert_eq!(commutator_norm(&a, &a).unwrap(), 0.0);
    }

    #[test]
    fn eigenvalues_sum_to_trace(seed in any::<u64>(), n in 1usize..=8) {
        let h = random_hermitian(&mut seeded_rng(seed), n);
        let vals = hermitian_eigenvalues(&h).unwrap();
        prop_assert!(vals.windows(2).all(|w| w[0] <= w[1]));
        prop_assert!((vals.iter().sum::<f64>() - h.trace().re).abs() < 1e-9);
    }

    #[test]
    fn eigenvalues_match_characteristic_roots(seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let h2 = random_hermitian(&mut rng, 2);
        let got = hermitian_eigenvalues(&h2).unwrap();
        let want = common::eig2(&h2);
        for (g, w) in got.iter().zip(want) {
            prop_assert!((g - w).abs() <= 1e-10 * h2.max_norm().max(1.0));
        }
        let h3 = random_hermitian(&mut rng, 3);
        let got = hermitian_eigenvalues(&h3).unwrap();
        let want = common::eig3(&h3);
        for (g, w) in got.iter().zip(want) {
            prop_assert!((g - w).abs() <= 1e-10 * h3.max_norm().max(1.0), "{got:?} vs {want:?}");
        }
    }

    #[test]
    fn graph_documents_round_trip(seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let part = random_partition(&mut rng, 4);
        let complex = rng.random_bool(0.5);
        let g = random_graph(&mut rng, part, complex);
        let choice = [ConventionChoice::Auto, ConventionChoice::Fixed(LaplacianConvention::Magnitude)][rng.random_range(0..2)];
        let text = write_graph(&g, choice);
        let back = read_graph(&text).unwrap();
        prop_assert_eq!(&back.graph, &g);
        prop_assert_eq!(write_graph(&back.graph, back.convention), text);
    }

    #[test]
    fn block_reassembly(seed in any::<u64>(), p in 0usize..=3, q in 0usize..=3) {
        let (da, db) = (1 << p, 1 << q);
        let m = gaussian_matrix(&mut seeded_rng(seed), da * db, da * db);
        for grid in [GridFactor::Leading, GridFactor::Trailing] {
            prop_assert_eq!(block_partition(&m, (da, db), grid).unwrap().reassemble(), m.clone());
        }
    }
}

#[test]
fn minors_hold_on_random_psd() {
    let mut rng = seeded_rng(101);
    for _ in 0..1000 {
        let n = rng.random_range(2..=8);
        let g = gaussian_matrix(&mut rng, n, n);
        let psd = &g * &g.adjoint();
        assert!(psd_necessary_minors(&psd, tol()).unwrap().all_minors_nonneg);
    }
}

#[test]
fn split_implies_psd() {
    let mut rng = seeded_rng(202);
    let mut satisfied = 0;
    for _ in 0..1000 {
        let n = rng.random_range(2..=8);
        let shift = rng.random_range(0.0..3.0 * n as f64);
        let h = &random_hermitian(&mut rng, n) + &ComplexMatrix::identity(n).scale(shift);
        let report = psd_sufficient_split(&h, tol()).unwrap();
        if report.satisfied {
            satisfied += 1;
            assert!(linalg::min_eigenvalue(&h).unwrap() >= -1e-9);
            assert!(report.per_row_slack.iter().all(|&s| s >= -1e-9));
        }
    }
    assert!(satisfied > 100, "only {satisfied} satisfied cases");
}

#[test]
fn laplacians_hermitian_and_magnitude_minors() {
    let mut rng = seeded_rng(303);
    for _ in 0..200 {
        let part = random_partition(&mut rng, 4);
        let mut g = random_graph(&mut rng, part, true);
        for v in 0..g.n_vertices() {
            g.set_loop(v, 0.0).unwrap();
        }
        let l = g.laplacian(LaplacianConvention::Magnitude).unwrap();
        assert_eq!(l.adjoint(), l);
        if g.n_edges() > 0 {
            let rho = g.density_operator(LaplacianConvention::Magnitude, tol()).unwrap();
            assert!(psd_necessary_minors(rho.matrix(), tol()).unwrap().all_minors_nonneg);
        }
        let real = random_graph(&mut rng, part, false);
        let l = real.laplacian(LaplacianConvention::Signed).unwrap();
        assert_eq!(l.adjoint(), l);
    }
}

/// `v v^dagger` with `|v_i| = 1/sqrt(k)` on a random support of size `k`.
fn uniform_pure<R: Rng>(rng: &mut R, n_qubits: usize) -> ComplexMatrix {
    let dim = 1 << n_qubits;
    let support: Vec<usize> = (0..dim).filter(|_| rng.random_bool(0.5)).collect();
    let support = if support.is_empty() { vec![0] } else { support };
    let k = support.len() as f64;
    let mut v = vec![Complex64::new(0.0, 0.0); dim];
    for &i in &support {
        v[i] = Complex64::from_polar(1.0 / k.sqrt(), rng.random_range(0.0..std::f64::consts::TAU));
    }
    ComplexMatrix::outer(&v)
}

#[test]
fn entry_pattern_purity_implies_unit_purity() {
    let mut rng = seeded_rng(404);
    let mut fired = 0;
    for round in 0..200 {
        let n = rng.random_range(1..=4);
        let part = Partition::balanced(n).unwrap();
        let m = if round % 2 == 0 {
            uniform_pure(&mut rng, n)
        } else {
            random_density_matrix(&mut rng, 1 << n)
        };
        let rho = DensityOperator::new(m, part, tol()).unwrap();
        if pure_by_entries(&rho, tol()) {
            fired += 1;
            assert!((rho.purity() - 1.0).abs() <= 1e-9);
        }
    }
    assert!(fired >= 100);
    for m in [
        fixtures::pure_phase_product(),
        fixtures::three_vertex_pure(),
        fixtures::single_edge_pure(),
        fixtures::complex_complete(),
        fixtures::bipartite_four_edge(),
        fixtures::bipartite_cube(),
        fixtures::signed_product(),
        fixtures::parity_graph_state(),
        fixtures::block_diagonal_state(),
    ] {
        let n = m.rows().trailing_zeros() as usize;
        let rho = DensityOperator::new(m, Partition::balanced(n).unwrap(), tol()).unwrap();
        if pure_by_entries(&rho, tol()) {
            assert!((rho.purity() - 1.0).abs() <= 1e-9);
        }
    }
}

#[test]
fn component_purity_implies_unit_purity() {
    let mut rng = seeded_rng(505);
    let mut fired = 0;
    for round in 0..200 {
        let part = random_partition(&mut rng, 4);
        let mut g = WeightedGraph::new(part);
        let dim = g.n_vertices();
        let support: Vec<usize> = (0..dim).filter(|_| rng.random_bool(0.4)).collect();
        if support.len() < 2 {
            continue;
        }
        let weight = rng.random_range(0.5..3.0);
        let phases: Vec<f64> = support.iter().map(|_| rng.random_range(0.0..std::f64::consts::TAU)).collect();
        for a in 0..support.len() {
            for b in a + 1..support.len() {
                // Rank-one phase pattern on even rounds, arbitrary phases otherwise.
                let phase = if round % 2 == 0 { phases[a] - phases[b] } else { rng.random_range(0.0..6.0) };
                g.add_edge(support[a], support[b], Complex64::from_polar(weight, phase)).unwrap();
            }
        }
        let k = support.len() as f64;
        for &v in &support {
            g.set_loop(v, weight - (k - 1.0) * weight).unwrap();
        }
        let conv = LaplacianConvention::Magnitude;
        if pure_by_component(&g, conv, tol()).unwrap() {
            fired += 1;
            let rho = g.density_operator(conv, tol()).unwrap();
            assert!((rho.purity() - 1.0).abs() <= 1e-9);
        }
    }
    assert!(fired >= 50, "{fired}");
}

#[test]
fn partial_gate_involution_on_random_states() {
    for seed in 0..200u64 {
        let mut rng = seeded_rng(seed);
        let n = rng.random_range(1..=4);
        let m = random_density_matrix(&mut rng, 1 << n);
        for leading in 0..n {
            let once = apply_partial_gate(&m, leading).unwrap();
            assert_eq!(apply_partial_gate(&once, leading).unwrap(), m);
            for i in 0..m.rows() {
                assert_eq!(once[(i, i)], m[(i, i)]);
            }
            assert!((once.trace() - m.trace()).norm() <= 1e-12);
            assert_eq!(once.adjoint(), once);
        }
    }
}

#[test]
fn partial_gate_commutes_with_graph_construction() {
    let conv = LaplacianConvention::Magnitude;
    for seed in 0..100u64 {
        let mut rng = seeded_rng(seed);
        let part = random_partition(&mut rng, 4);
        let g = random_graph(&mut rng, part, true);
        if g.n_edges() == 0 {
            continue;
        }
        for leading in 0..part.n_qubits() {
            let image = apply_partial_gate_graph(&g, leading, conv).unwrap();
            let lhs = image.laplacian(conv).unwrap();
            let rhs = apply_partial_gate(&g.laplacian(conv).unwrap(), leading).unwrap();
            assert!(lhs.max_abs_diff(&rhs) <= 1e-12);
            let back = apply_partial_gate_graph(&image, leading, conv).unwrap();
            assert!(back.laplacian(conv).unwrap().max_abs_diff(&g.laplacian(conv).unwrap()) <= 1e-12);
        }
    }
}

#[test]
fn conj_fixed_point_iff_hermitian_blocks() {
    let mut rng = seeded_rng(606);
    for round in 0..200 {
        let n = rng.random_range(2..=4);
        let leading = rng.random_range(0..n);
        let (outer, inner) = (1 << leading, 1 << (n - leading));
        let blocks: Vec<ComplexMatrix> = (0..outer * outer)
            .map(|_| {
                if round % 2 == 0 {
                    random_hermitian(&mut rng, inner)
                } else {
                    gaussian_matrix(&mut rng, inner, inner)
                }
            })
            .collect();
        let view = qgraph::discord::BlockView::from_blocks(GridFactor::Leading, outer, blocks).unwrap();
        let m = view.reassemble();
        let fixed = conj_partial_fixed(&m, leading, tol()).unwrap().0;
        let hermitian = view.blocks().iter().all(|b| linalg::is_hermitian(b, tol()).unwrap());
        assert_eq!(fixed, hermitian);
        assert_eq!(fixed, round % 2 == 0);
    }
}

fn random_gate<R: Rng>(rng: &mut R, n: usize) -> GateSpec {
    let single = [GateKind::I, GateKind::X, GateKind::Y, GateKind::Z, GateKind::H];
    let double = [GateKind::CX, GateKind::CZ, GateKind::Swap];
    if n >= 2 && rng.random_bool(0.4) {
        let a = rng.random_range(0..n);
        let b = (a + rng.random_range(1..n)) % n;
        GateSpec::new(double[rng.random_range(0..3)].clone(), vec![a, b]).unwrap()
    } else {
        GateSpec::new(single[rng.random_range(0..5)].clone(), vec![rng.random_range(0..n)]).unwrap()
    }
}

#[test]
fn gates_preserve_spectrum() {
    for seed in 0..200u64 {
        let mut rng = seeded_rng(seed);
        let n = rng.random_range(1..=4);
        let rho = random_state(seed, 1 << n).unwrap();
        let before = hermitian_eigenvalues(rho.matrix()).unwrap();
        let mut cur = rho.clone();
        for _ in 0..rng.random_range(1..=5) {
            cur = apply_gate(&cur, &random_gate(&mut rng, n)).unwrap();
        }
        assert!((cur.matrix().trace() - rho.matrix().trace()).norm() <= 1e-12);
        assert!(linalg::hermitian_deviation(cur.matrix()).unwrap() <= 1e-12);
        let after = hermitian_eigenvalues(cur.matrix()).unwrap();
        for (a, b) in before.iter().zip(&after) {
            assert!((a - b).abs() <= 1e-9);
        }
    }
}

fn structural_checks(m: &ComplexMatrix, part: Partition) -> Vec<(&'static str, bool)> {
    let mut out = Vec::new();
    let view = block_partition(m, part.dims(), GridFactor::Leading).unwrap();
    if m.rows() == 4 {
        out.push(("two_qubit_block_identity", check_two_qubit_block_identity(m, tol()).unwrap().passed));
        out.push(("two_qubit_flip_symmetry", check_two_qubit_flip_symmetry(m, tol()).unwrap().passed));
    }
    out.push(("hermitian_part_commutation", check_hermitian_parts_commute(&view, tol()).unwrap().passed));
    out.push(("block_products_hermitian", check_block_products_hermitian(&view, tol()).unwrap().passed));
    if part.trailing == 1 {
        out.push(("uniform_magnitude_blocks", check_uniform_magnitude_blocks(m, tol()).unwrap().passed));
    }
    if part.leading == 1 {
        out.push(("nested_block_commutation", check_nested_block_commutation(m, tol()).unwrap().passed));
    }
    if part.leading == 2 {
        out.push(("four_block_identity", check_four_block_identity(m, tol()).unwrap().passed));
    }
    out
}

/// Structural certificates imply the block criterion on fixtures, on states
/// classical on the measured side, and on generic states.
#[test]
fn structural_certificates_imply_block_criterion() {
    let mut cases: Vec<(ComplexMatrix, Partition)> = vec![
        (fixtures::pure_phase_product(), Partition::new(1, 1).unwrap()),
        (fixtures::single_edge_pure(), Partition::new(1, 1).unwrap()),
        (fixtures::complex_complete(), Partition::new(1, 1).unwrap()),
        (fixtures::bipartite_four_edge(), Partition::new(1, 1).unwrap()),
        (fixtures::signed_product(), Partition::new(1, 1).unwrap()),
        (fixtures::three_vertex_pure(), Partition::new(1, 2).unwrap()),
        (fixtures::bipartite_cube(), Partition::new(1, 2).unwrap()),
        (fixtures::parity_graph_state(), Partition::new(1, 2).unwrap()),
        (fixtures::block_diagonal_state(), Partition::new(1, 2).unwrap()),
        (fixtures::parity_graph_state(), Partition::new(2, 1).unwrap()),
        (fixtures::bell_diagonal(0.7, 0.0, 0.0), Partition::new(1, 1).unwrap()),
    ];
    for seed in 0..200u64 {
        cases.push((random_cq_state(seed, 2, Subsystem::B).unwrap().into_matrix(), Partition::new(1, 1).unwrap()));
        let dim = [4, 8, 16][seed as usize % 3];
        let rho = random_state(seed, dim).unwrap();
        let p = rho.partition();
        cases.push((rho.into_matrix(), p));
    }
    let mut fired_total = 0;
    for (m, part) in cases {
        let rho = DensityOperator::new(m.clone(), part, tol()).unwrap();
        let master = blocks_normal_commuting(&measured_view(&rho, Subsystem::B), tol()).unwrap().passed;
        for (name, fired) in structural_checks(&m, part) {
            if fired {
                fired_total += 1;
                assert!(master, "{name} fired without the block criterion on {part}");
            }
        }
    }
    assert!(fired_total > 200);
}

#[test]
fn uniform_magnitude_blocks_have_unit_phase_form() {
    let mut candidates = vec![fixtures::signed_product(), fixtures::bell_diagonal(0.0, 0.0, 0.0)];
    let minus = ComplexMatrix::from_real_rows(&[[0.5, -0.5], [-0.5, 0.5]]).unwrap();
    let plus = ComplexMatrix::from_real_rows(&[[0.5, 0.5], [0.5, 0.5]]).unwrap();
    candidates.push(kron(&ComplexMatrix::diagonal(&[0.4, 0.6]), &minus));
    candidates.push(kron(&ComplexMatrix::diagonal(&[0.1, 0.2, 0.3, 0.4]), &plus));
    candidates.push(kron(&plus, &minus));
    let mut fired = 0;
    for m in candidates {
        if !check_uniform_magnitude_blocks(&m, tol()).unwrap().passed {
            continue;
        }
        fired += 1;
        let view = block_partition(&m, (m.rows() / 2, 2), GridFactor::Leading).unwrap();
        for b in view.blocks() {
            let a = b[(0, 0)].re;
            if a.abs() < 1e-15 {
                assert!(b.max_norm() < 1e-12);
                continue;
            }
            let u = b[(0, 1)] / a;
            assert!((u.norm() - 1.0).abs() < 1e-12);
            assert!((b[(1, 0)] - u.conj() * a).norm() < 1e-12);
            assert!((b[(1, 1)].re.abs() - a.abs()).abs() < 1e-12);
            assert!(b[(0, 0)].im.abs() < 1e-12 && b[(1, 1)].im.abs() < 1e-12);
        }
    }
    assert!(fired >= 4);
}
