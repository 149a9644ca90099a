mod common;

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64 as C64;
use proptest::prelude::*;

use qorw::algebra::{pauli, ComplexMatrix, DensityMatrix, KrausChannel};
use qorw::distribution::{
    moment, probabilities, probabilities_on_grid, spectral_grid_size, WalkerInit,
};
use qorw::oracle::oracle_run;
use qorw::walk::{acf_h, acf_h_unitary, classicality_test, kernel_at, WalkModel};

use common::{convolve, max_dev};

fn coin() -> impl Strategy<Value = DensityMatrix> {
    (0.0..1.0f64, 0.0..1.0f64, 0.0..TAU).prop_map(|(r, mix, phase)| {
        // Bloch vector of length r·mix ≤ 1
        let len = r * mix;
        let (x, y, z) = (len * phase.cos() * 0.6, len * phase.sin() * 0.6, len * 0.8);
        let m = ComplexMatrix::from_rows(&[
            [C64::new(0.5 + 0.5 * z, 0.0), C64::new(0.5 * x, -0.5 * y)],
            [C64::new(0.5 * x, 0.5 * y), C64::new(0.5 - 0.5 * z, 0.0)],
        ]);
        DensityMatrix::new(m).unwrap()
    })
}

fn channel() -> impl Strategy<Value = KrausChannel> {
    prop_oneof![
        (0.0..TAU).prop_map(KrausChannel::rotation),
        (0.0..=1.0f64).prop_map(|g| KrausChannel::amplitude_damping(g).unwrap()),
        (0.0..TAU, 0.0..=1.0f64)
            .prop_map(|(t, p)| KrausChannel::mixing(&qorw::algebra::rotation_unitary(t), p).unwrap()),
        (0.0..=1.0f64, 0.0..TAU).prop_map(|(g, t)| KrausChannel::amplitude_damping(g)
            .unwrap()
            .compose(&KrausChannel::rotation(t))
            .unwrap()),
    ]
}

/// Channels whose Kraus matrices are all diagonal or all anti-diagonal.
fn sparse_channel() -> impl Strategy<Value = KrausChannel> {
    let weighted = |p: f64, m: ComplexMatrix| {
        KrausChannel::new(
            vec![ComplexMatrix::identity(2).scale_real(p.sqrt()), m.scale_real((1.0 - p).sqrt())],
            "pauli-mix",
        )
        .unwrap()
    };
    prop_oneof![
        (0.0..=1.0f64).prop_map(move |p| weighted(p, pauli::sigma_1())),
        (0.0..=1.0f64).prop_map(move |p| weighted(p, pauli::sigma_2())),
        (0.0..=1.0f64).prop_map(move |p| weighted(p, pauli::sigma_3())),
        (0.0..=1.0f64).prop_map(|g| KrausChannel::amplitude_damping(g).unwrap()),
    ]
}

fn model() -> impl Strategy<Value = WalkModel> {
    (
        prop::collection::vec(channel(), 1..=3),
        prop::option::of(channel()),
        coin(),
    )
        .prop_map(|(qs, entry, c)| WalkModel::new("random", qs, entry, c).unwrap())
}

fn init() -> impl Strategy<Value = WalkerInit> {
    prop_oneof![
        (-3i64..=3).prop_map(WalkerInit::site),
        (-2i64..=2, 0.05..0.95f64, 0.0..TAU).prop_map(|(m, w, ph)| {
            WalkerInit::pure(vec![(m, C64::new(w.sqrt(), 0.0)), (m + 1, C64::from_polar((1.0 - w).sqrt(), ph))])
                .unwrap()
        }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn channels_preserve_density_matrices(ch in channel(), rho in coin()) {
        let out = ch.apply(&rho).unwrap();
        prop_assert!((out.matrix().trace() - 1.0).norm() < 1e-12);
        prop_assert!(out.matrix().hermiticity_deviation() < 1e-12);
        prop_assert!(ch.validate().pass);
    }

    #[test]
    fn kernel_is_bounded_hermitian_and_normalized(m in model(), phi in 0.0..TAU, phip in 0.0..TAU) {
        let a = kernel_at(&m, phi, phip);
        prop_assert!(a.norm() <= 1.0 + 1e-12);
        prop_assert!((a - kernel_at(&m, phip, phi).conj()).norm() < 1e-12);
        prop_assert!((kernel_at(&m, phi, phi) - 1.0).norm() < 1e-12);
    }

    #[test]
    fn kernel_has_degree_at_most_k(m in model()) {
        let k = m.k() as i64;
        let grid = (4 * m.k() + 4) as i64;
        let node = |a: i64| TAU * a as f64 / grid as f64;
        let values: Vec<C64> = (0..grid * grid).map(|i| kernel_at(&m, node(i / grid), node(i % grid))).collect();
        for p in -(grid / 2)..(grid / 2) {
            for q in -(grid / 2)..(grid / 2) {
                if p.abs() <= k && q.abs() <= k {
                    continue;
                }
                let mut c = C64::new(0.0, 0.0);
                for a in 0..grid {
                    for b in 0..grid {
                        c += values[(a * grid + b) as usize]
                            * C64::from_polar(1.0, -(p as f64) * node(a) + q as f64 * node(b));
                    }
                }
                let scaled = c.norm() / (grid * grid) as f64;
                prop_assert!(scaled < 1e-12, "coefficient ({}, {})", p, q);
            }
        }
    }

    #[test]
    fn probabilities_are_a_law_on_the_reachable_window(m in model(), st in init(), n in 0usize..8) {
        let p = probabilities(&m, &st, n).unwrap();
        prop_assert!((p.total() - 1.0).abs() < 1e-10);
        prop_assert!(p.probs().iter().all(|&x| x >= -1e-12));
        let reach = (m.k() * n) as i64;
        prop_assert_eq!(p.first_site(), st.min_site() - reach);
        prop_assert_eq!(p.last_site(), st.max_site() + reach);
    }

    #[test]
    fn finer_grids_change_nothing(m in model(), st in init(), n in 0usize..6) {
        let base = spectral_grid_size(&m, &st, n);
        let a = probabilities_on_grid(&m, &st, n, base).unwrap();
        let b = probabilities_on_grid(&m, &st, n, 2 * base).unwrap();
        prop_assert!(a.max_abs_diff(&b) < 1e-12);
    }

    #[test]
    fn moment_routes_agree(m in model(), st in init(), n in 0usize..=10, s in 1u32..=4) {
        prop_assert!(moment(&m, &st, n, s).is_ok());
    }

    #[test]
    fn diagonal_or_antidiagonal_kraus_sets_are_classical(
        qs in prop::collection::vec(sparse_channel(), 1..=3),
        c in coin(),
    ) {
        let m = WalkModel::new("sparse", qs, None, c).unwrap();
        let report = classicality_test(&m, 64, 1e-10).unwrap();
        prop_assert!(report.classical, "variation {}", report.max_variation);
    }

    #[test]
    fn classical_walks_convolve(
        qs in prop::collection::vec(sparse_channel(), 1..=2),
        q in 0.0..=1.0f64,
        n in 1usize..=6,
    ) {
        let m = WalkModel::new("sparse", qs, None, DensityMatrix::coin_diagonal(q).unwrap()).unwrap();
        let step: BTreeMap<i64, f64> = oracle_run(&m, &WalkerInit::origin(), 1).unwrap().sites().collect();
        let law = convolve(&BTreeMap::from([(0, 1.0)]), &step, n);
        prop_assert!(max_dev(&oracle_run(&m, &WalkerInit::origin(), n).unwrap(), &law) < 1e-10);
        prop_assert!(max_dev(&probabilities(&m, &WalkerInit::origin(), n).unwrap(), &law) < 1e-10);
    }

    #[test]
    fn acf_routes_agree_on_unitary_walks(theta in 0.0..TAU, k in 1usize..=4, c in coin(), phi in 0.0..TAU) {
        let m = WalkModel::u_quantized("u", k, KrausChannel::rotation(theta), c).unwrap();
        prop_assert!((acf_h(&m, phi).unwrap() - acf_h_unitary(&m, phi).unwrap()).abs() < 1e-12);
    }
}

#[test]
fn two_round_walks_from_the_origin_skip_odd_sites() {
    for b in common::dual_engine_models() {
        let m = b.build().unwrap();
        for n in 1..=8 {
            let p = probabilities(&m, &WalkerInit::origin(), n).unwrap();
            for (site, prob) in p.sites() {
                if site % 2 != 0 {
                    assert!(prob.abs() < 1e-14, "{b} n={n} m={site}");
                }
            }
        }
    }
}
