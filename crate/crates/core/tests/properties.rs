use std::f64::consts::PI;

use deficitlab_core::deficit::{bell_diagonal_deficit, one_way_deficit_projective};
use deficitlab_core::matcore::{hermitian_eigensystem, partial_trace, tensor_product};
use deficitlab_core::random::{
    random_bell_diagonal, random_classical_product, random_density, random_pure_state, seeded,
};
use deficitlab_core::states::{binary_entropy, von_neumann_entropy};
use deficitlab_core::{
    basis_to_povm, lueders_dephase, ComplexMatrix, DensityOperator, OptimizerSettings,
    ProjectiveQubitBasis, Subsystem, C64,
};
use proptest::prelude::*;

fn hermitian(n: usize, entries: &[(f64, f64)]) -> ComplexMatrix {
    let raw = ComplexMatrix::from_fn(n, n, |i, j| {
        let (re, im) = entries[i * n + j];
        C64::new(re, im)
    });
    raw.hermitian_part()
}

fn sized_hermitian() -> impl Strategy<Value = ComplexMatrix> {
    (1usize..=9).prop_flat_map(|n| {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n)
            .prop_map(move |e| hermitian(n, &e))
    })
}

fn general(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n).prop_map(move |e| {
        ComplexMatrix::from_fn(n, n, |i, j| C64::new(e[i * n + j].0, e[i * n + j].1))
    })
}

proptest! {
    #[test]
    fn eigensystem_reconstructs(m in sized_hermitian()) {
        let spec = hermitian_eigensystem(&m).unwrap();
        let scale = m.frobenius_norm().max(1.0);
        prop_assert!(spec.reconstruct().max_abs_diff(&m) <= 1e-10 * scale);
        let v = &spec.eigenvectors;
        let gram = &v.adjoint() * v;
        prop_assert!(gram.max_abs_diff(&ComplexMatrix::identity(m.rows())) <= 1e-10);
        prop_assert!(spec.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn tensor_trace_is_product(a in general(2), b in general(3)) {
        let t = tensor_product(&a, &b).unwrap();
        prop_assert!((t.trace() - a.trace() * b.trace()).norm() <= 1e-12);
    }

    #[test]
    fn partial_trace_of_product(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let a = random_density(&mut rng, (2, 1));
        let b = random_density(&mut rng, (3, 1));
        let joint = tensor_product(a.matrix(), b.matrix()).unwrap();
        let back_a = partial_trace(&joint, (2, 3), Subsystem::A).unwrap();
        let back_b = partial_trace(&joint, (2, 3), Subsystem::B).unwrap();
        prop_assert!(back_a.max_abs_diff(a.matrix()) <= 1e-12);
        prop_assert!(back_b.max_abs_diff(b.matrix()) <= 1e-12);
    }

    #[test]
    fn dephasing_never_lowers_entropy(seed in any::<u64>(), theta in 0.0..PI, phi in 0.0..(2.0 * PI)) {
        let rho = random_density(&mut seeded(seed), (2, 2));
        let basis = ProjectiveQubitBasis::new(theta, phi).unwrap();
        let after = lueders_dephase(&rho, &basis_to_povm(&basis)).unwrap();
        prop_assert!(von_neumann_entropy(&after) >= von_neumann_entropy(&rho) - 1e-10);
        let again = lueders_dephase(&after, &basis_to_povm(&basis)).unwrap();
        prop_assert!(again.matrix().max_abs_diff(after.matrix()) <= 1e-12);
    }

    #[test]
    fn antipodal_angles_give_same_dephasing(seed in any::<u64>(), theta in 0.0..PI, phi in 0.0..(2.0 * PI)) {
        let rho = random_density(&mut seeded(seed), (2, 2));
        let here = ProjectiveQubitBasis::new(theta, phi).unwrap();
        let there = ProjectiveQubitBasis::from_any_angles(PI - theta, phi + PI);
        let a = lueders_dephase(&rho, &basis_to_povm(&here)).unwrap();
        let b = lueders_dephase(&rho, &basis_to_povm(&there)).unwrap();
        prop_assert!(a.matrix().max_abs_diff(b.matrix()) <= 1e-12);
    }
}

#[test]
fn pure_state_law_on_random_states() {
    let mut rng = seeded(101);
    let settings = OptimizerSettings::default();
    for _ in 0..50 {
        let psi = random_pure_state(&mut rng, (2, 2));
        let e = von_neumann_entropy(&psi.marginal(Subsystem::A));
        let d = one_way_deficit_projective(&psi, &settings).unwrap().delta_bits;
        assert!((d - e).abs() <= 1e-6, "delta {d}, entanglement entropy {e}");
    }
}

#[test]
fn bell_diagonal_closed_form_agrees() {
    let mut rng = seeded(202);
    let settings = OptimizerSettings::default();
    for _ in 0..50 {
        let rho = random_bell_diagonal(&mut rng);
        let closed = bell_diagonal_deficit(&rho).unwrap();
        let d = one_way_deficit_projective(&rho, &settings).unwrap().delta_bits;
        assert!((d - closed).abs() <= 1e-6, "optimizer {d}, closed form {closed}");
    }
}

#[test]
fn classical_states_have_no_deficit() {
    let mut rng = seeded(303);
    let settings = OptimizerSettings::default();
    for dims in [(2, 2), (2, 3), (2, 4)] {
        for _ in 0..7 {
            let rho = random_classical_product(&mut rng, dims);
            let d = one_way_deficit_projective(&rho, &settings).unwrap().delta_bits;
            assert!(d <= 1e-8, "classical delta {d} for dims {dims:?}");
        }
    }
}

#[test]
fn deficit_bounds() {
    let mut rng = seeded(404);
    let settings = OptimizerSettings::default();
    for _ in 0..20 {
        let rho = random_density(&mut rng, (2, 2));
        let r = one_way_deficit_projective(&rho, &settings).unwrap();
        assert!(r.delta_bits >= -1e-9, "negative deficit {}", r.delta_bits);
        assert!(r.local_work_bits <= r.total_work_bits + 1e-9);
        assert!(r.delta_bits <= 1.0 + 1e-9);
    }
}

#[test]
fn product_state_entropy_adds() {
    let mut rng = seeded(505);
    for _ in 0..20 {
        let a = random_density(&mut rng, (2, 1));
        let b = random_density(&mut rng, (3, 1));
        let joint = DensityOperator::new(tensor_product(a.matrix(), b.matrix()).unwrap(), (2, 3)).unwrap();
        let sum = von_neumann_entropy(&a) + von_neumann_entropy(&b);
        assert!((von_neumann_entropy(&joint) - sum).abs() <= 1e-10);
    }
}

#[test]
fn binary_entropy_is_symmetric() {
    for k in 0..=100 {
        let p = k as f64 / 100.0;
        let gap = binary_entropy(p).unwrap() - binary_entropy(1.0 - p).unwrap();
        assert!(gap.abs() <= 1e-15);
    }
}
