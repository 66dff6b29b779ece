//! End-to-end runs over every gallery case in both backends.

use qavg::calculus::calculus_suite;
use qavg::coaction::coaction_suite;
use qavg::gallery::{gallery, GalleryCase, GALLERY_NAMES};
use qavg::hopf::hopf_suite;
use qavg::metric::{
    average_inner_product, check_definiteness, check_equivariance, check_hermitian_module, check_idempotence,
    classical_average_oracle, psi_cp_check, Verdict,
};
use qavg::scalar::max_diff;
use qavg::{Error, GaussRat, Scalar, C64};

fn run<S: Scalar>(cases: Vec<GalleryCase<S>>, tol: f64) {
    for case in cases {
        let c = case.coaction();
        let name = case.name;
        assert!(hopf_suite(c.cqg(), tol).unwrap().iter().all(|r| r.pass), "{name}");
        assert!(coaction_suite(c, tol).unwrap().iter().all(|r| r.pass), "{name}");
        assert!(calculus_suite(&case.lifted, tol).iter().all(|r| r.pass), "{name}");
        assert!(psi_cp_check(c, 10, 1e-9, 1).unwrap().iter().all(|r| r.pass), "{name}");
        let avg = average_inner_product(&case.lifted, &case.metric, tol).unwrap();
        assert!(check_hermitian_module(&avg, tol).iter().all(|r| r.pass), "{name}");
        assert!(check_equivariance(&case.lifted, &avg, tol).pass, "{name}");
        assert!(check_idempotence(&case.lifted, &avg, tol).unwrap().pass, "{name}");
        assert_eq!(
            check_definiteness(&avg, 1e-9).unwrap().verdict,
            Verdict::Definite,
            "{name}"
        );
        match classical_average_oracle(c, &case.metric) {
            Ok(oracle) => {
                let worst = oracle
                    .gram()
                    .iter()
                    .zip(avg.gram())
                    .map(|(x, y)| max_diff(x, y))
                    .fold(0.0, f64::max);
                assert!(worst <= tol, "{name}: {worst}");
            }
            Err(Error::NotClassical) => assert!(name.ends_with("group_algebra"), "{name}"),
            Err(e) => panic!("{name}: {e}"),
        }
    }
}

#[test]
fn exact_gallery() {
    let cases = gallery::<GaussRat>(0.0).unwrap();
    assert_eq!(cases.len(), GALLERY_NAMES.len());
    run(cases, 0.0);
}

#[test]
fn float_gallery() {
    run(gallery::<C64>(1e-9).unwrap(), 1e-9);
}
