//! Randomized invariants of the averaging pipeline.

use proptest::prelude::*;
use qavg::algebra::check_algebra_axioms;
use qavg::calculus::{lift_coaction, universal_calculus};
use qavg::coaction::slice;
use qavg::gallery::{
    build_classical_coaction, build_function_algebra_of_group, complete_edges, edge_metric, gallery_case,
};
use qavg::group::{FiniteGroup, GroupAction};
use qavg::hopf::hopf_suite;
use qavg::metric::{
    average_inner_product, check_definiteness, check_equivariance, check_hermitian_module, check_idempotence,
    psi_cp_check, Verdict,
};
use qavg::{GaussRat, InnerProduct, Scalar, C64};

fn q(n: i64) -> GaussRat {
    GaussRat::from_i64(n)
}

/// Relabels `S3` by a permutation of its elements.
fn relabeled_s3(perm: &[usize]) -> FiniteGroup {
    let s3 = FiniteGroup::symmetric(3);
    let mut inv = [0; 6];
    for (new, &old) in perm.iter().enumerate() {
        inv[old] = new;
    }
    let labels = perm.iter().map(|&old| s3.labels()[old].clone()).collect();
    let table = perm
        .iter()
        .map(|&a| perm.iter().map(|&b| inv[s3.mul(a, b)]).collect())
        .collect();
    FiniteGroup::from_table(labels, table).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn relabeled_groups_give_kac_algebras(perm in Just((0..6).collect::<Vec<usize>>()).prop_shuffle()) {
        let h = build_function_algebra_of_group::<GaussRat>(&relabeled_s3(&perm), 0.0).unwrap();
        prop_assert!(check_algebra_axioms(h.algebra(), 0.0).iter().all(|r| r.pass));
        prop_assert!(hopf_suite(&h, 0.0).unwrap().iter().all(|r| r.residual == 0.0));
        prop_assert_eq!(h.haar().unwrap().coeffs.clone(), vec![GaussRat::ratio(1, 6); 6]);
    }

    #[test]
    fn counit_slice_is_the_identity(coeffs in prop::collection::vec(-5i64..=5, 3)) {
        let c = build_classical_coaction::<GaussRat>(&GroupAction::natural_symmetric(3), 0.0).unwrap();
        let a: Vec<_> = coeffs.into_iter().map(q).collect();
        prop_assert_eq!(slice(&c, c.cqg().counit(), &a), a);
    }

    #[test]
    fn s3_edge_averages_are_invariant(ws in prop::collection::vec(0i64..=9, 6)) {
        let c = build_classical_coaction::<GaussRat>(&GroupAction::natural_symmetric(3), 0.0).unwrap();
        let calc = universal_calculus(c.base(), 0.0);
        let lifted = lift_coaction(&c, &calc, 0.0).unwrap();
        let edges = complete_edges(3);
        let weights: Vec<_> = ws.iter().map(|&w| q(w)).collect();
        let g = edge_metric(calc, &edges, &weights).unwrap();
        let avg = average_inner_product(&lifted, &g, 0.0).unwrap();
        let mean = GaussRat::ratio(ws.iter().sum::<i64>(), 6);
        for (j, &(_, y)) in edges.iter().enumerate() {
            prop_assert_eq!(&avg.entry(j, j)[y], &mean);
        }
        prop_assert!(check_hermitian_module(&avg, 0.0).iter().all(|r| r.pass));
        prop_assert_eq!(check_equivariance(&lifted, &avg, 0.0).residual, 0.0);
        prop_assert_eq!(check_idempotence(&lifted, &avg, 0.0).unwrap().residual, 0.0);
        let expected = if ws.iter().all(|&w| w == 0) { Verdict::Semidefinite } else { Verdict::Definite };
        prop_assert_eq!(check_definiteness(&avg, 1e-9).unwrap().verdict, expected);
    }

    #[test]
    fn generic_metrics_on_group_algebras_stay_positive(seed in any::<u64>()) {
        let case = gallery_case::<GaussRat>("z3_group_algebra", 0.0).unwrap();
        let g = InnerProduct::random_positive(case.calculus().clone(), seed).unwrap();
        prop_assert!(check_hermitian_module(&g, 0.0).iter().all(|r| r.pass));
        let avg = average_inner_product(&case.lifted, &g, 0.0).unwrap();
        prop_assert!(check_equivariance(&case.lifted, &avg, 0.0).pass);
        prop_assert!(check_idempotence(&case.lifted, &avg, 0.0).unwrap().pass);
        prop_assert_eq!(check_definiteness(&avg, 1e-9).unwrap().verdict, Verdict::Definite);
    }

    #[test]
    fn psi_is_positive_for_any_seed(seed in any::<u64>()) {
        let case = gallery_case::<C64>("s3_group_algebra", 1e-9).unwrap();
        let reports = psi_cp_check(case.coaction(), 5, 1e-9, seed).unwrap();
        prop_assert!(reports.iter().all(|r| r.pass), "{:?}", reports);
    }

    #[test]
    fn float_and_exact_averages_agree(ws in prop::collection::vec(1i64..=20, 2)) {
        let exact = gallery_case::<GaussRat>("z2_swap", 0.0).unwrap();
        let float = gallery_case::<C64>("z2_swap", 1e-9).unwrap();
        let edges = complete_edges(2);
        let ge = edge_metric(exact.calculus().clone(), &edges, &[q(ws[0]), q(ws[1])]).unwrap();
        let gf = edge_metric(float.calculus().clone(), &edges, &[C64::from_i64(ws[0]), C64::from_i64(ws[1])]).unwrap();
        let ae = average_inner_product(&exact.lifted, &ge, 0.0).unwrap();
        let af = average_inner_product(&float.lifted, &gf, 1e-9).unwrap();
        for (x, y) in ae.gram().iter().zip(af.gram()) {
            for (a, b) in x.iter().zip(y) {
                prop_assert!((a.to_c64() - b).norm() <= 1e-9);
            }
        }
    }
}
