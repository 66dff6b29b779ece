//! Coactions `α: A → A ⊗ Q` of a Hopf *-algebra on a *-algebra.

use crate::algebra::{tensor_algebra, tensor_vec, Element, Functional, StarAlgebra};
use crate::error::{Error, Result};
use crate::group::GroupAction;
use crate::hopf::HopfData;
use crate::linalg::{self, Matrix};
use crate::report::{Report, Witness};
use crate::scalar::{max_diff, Scalar};

/// `alpha` is a `(dim A · dim Q) × dim A` matrix; column `i` is `α(e_i)` in
/// the basis `e_j ⊗ f_q` with index `j * dim Q + q`.
#[derive(Clone, Debug)]
pub struct Coaction<S> {
    base: StarAlgebra<S>,
    cqg: HopfData<S>,
    alpha: Matrix<S>,
    provenance: Option<GroupAction>,
}

impl<S: Scalar> Coaction<S> {
    pub fn new(base: StarAlgebra<S>, cqg: HopfData<S>, alpha: Matrix<S>) -> Result<Self> {
        let (n, m) = (base.dim(), cqg.dim());
        if alpha.rows() != n * m || alpha.cols() != n {
            return Err(Error::Inconsistent(format!(
                "coaction matrix is {}x{}, expected {}x{n}",
                alpha.rows(),
                alpha.cols(),
                n * m
            )));
        }
        Ok(Coaction {
            base,
            cqg,
            alpha,
            provenance: None,
        })
    }

    /// `α(a) = a ⊗ 1`.
    pub fn trivial(base: StarAlgebra<S>, cqg: HopfData<S>) -> Self {
        let (n, m) = (base.dim(), cqg.dim());
        let unit = cqg.algebra().unit().clone();
        let alpha = Matrix::from_fn(
            n * m,
            n,
            |jq, i| if jq / m == i { unit[jq % m].clone() } else { S::zero() },
        );
        Self::new(base, cqg, alpha).expect("shapes agree by construction")
    }

    /// Records the classical group action this coaction was built from.
    pub fn with_provenance(mut self, action: GroupAction) -> Self {
        self.provenance = Some(action);
        self
    }

    pub fn base(&self) -> &StarAlgebra<S> {
        &self.base
    }

    pub fn cqg(&self) -> &HopfData<S> {
        &self.cqg
    }

    pub fn alpha(&self) -> &Matrix<S> {
        &self.alpha
    }

    pub fn provenance(&self) -> Option<&GroupAction> {
        self.provenance.as_ref()
    }

    pub fn apply(&self, a: &[S]) -> Vec<S> {
        self.alpha.apply(a)
    }

    /// Nonzero terms `(j, q, c)` of `α(e_i) = Σ c e_j ⊗ f_q`.
    pub fn terms(&self, i: usize) -> Vec<(usize, usize, S)> {
        let m = self.cqg.dim();
        (0..self.alpha.rows())
            .filter_map(|jq| {
                let c = self.alpha.get(jq, i);
                (!c.is_zero()).then(|| (jq / m, jq % m, c.clone()))
            })
            .collect()
    }

    /// Matrix of `α_φ = (id⊗φ)∘α`.
    pub fn slice_map(&self, phi: &Functional<S>) -> Matrix<S> {
        let (n, m) = (self.base.dim(), self.cqg.dim());
        Matrix::from_fn(n, n, |j, i| {
            let mut acc = S::zero();
            for q in 0..m {
                acc.mul_acc(self.alpha.get(j * m + q, i), &phi.coeffs[q]);
            }
            acc
        })
    }

    pub fn with_alpha(&self, alpha: Matrix<S>) -> Self {
        Coaction { alpha, ..self.clone() }
    }

    pub fn with_cqg(&self, cqg: HopfData<S>) -> Self {
        Coaction { cqg, ..self.clone() }
    }

    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> T + Copy) -> Coaction<T> {
        Coaction {
            base: self.base.map_scalars(f),
            cqg: self.cqg.map_scalars(f),
            alpha: self.alpha.map(f),
            provenance: self.provenance.clone(),
        }
    }
}

/// `(id⊗φ)α(a)`.
pub fn slice<S: Scalar>(c: &Coaction<S>, phi: &Functional<S>, a: &[S]) -> Element<S> {
    c.slice_map(phi).apply(a)
}

/// `*`-homomorphism, unitality, coassociativity, counit property, and Podleś
/// density as the rank of `span{α(e_i)(1⊗f_j)}`.
pub fn check_coaction_axioms<S: Scalar>(c: &Coaction<S>, tol: f64) -> Vec<Report> {
    let a = c.base();
    let q = c.cqg();
    let (n, m) = (a.dim(), q.dim());
    let aq = tensor_algebra(a, q.algebra());
    let basis: Vec<_> = (0..n).map(|i| a.basis(i)).collect();
    let images: Vec<_> = basis.iter().map(|e| c.apply(e)).collect();

    let mut mult = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let lhs = c.apply(&a.mul(&basis[i], &basis[j]));
            mult = mult.max(max_diff(&lhs, &aq.mul(&images[i], &images[j])));
        }
    }
    let unital = max_diff(&c.apply(a.unit()), aq.unit());

    let mut star = 0.0f64;
    let mut coassoc = 0.0f64;
    let mut counit = 0.0f64;
    for i in 0..n {
        star = star.max(max_diff(&c.apply(&a.star(&basis[i])), &aq.star(&images[i])));

        let mut left = vec![S::zero(); n * m * m];
        let mut right = vec![S::zero(); n * m * m];
        let mut eps = a.zero();
        for (j, r, coef) in c.terms(i) {
            for (k, s, d) in c.terms(j) {
                left[(k * m + s) * m + r].mul_acc(&coef, &d);
            }
            for (s, t, d) in q.delta_terms(r) {
                right[(j * m + s) * m + t].mul_acc(&coef, &d);
            }
            eps[j].mul_acc(&coef, &q.counit().coeffs[r]);
        }
        coassoc = coassoc.max(max_diff(&left, &right));
        counit = counit.max(max_diff(&eps, &basis[i]));
    }

    let spanning: Vec<Vec<S>> = (0..n)
        .flat_map(|i| (0..m).map(move |j| (i, j)))
        .map(|(i, j)| aq.mul(&images[i], &tensor_vec(a.unit(), &q.algebra().basis(j))))
        .collect();
    let rank = linalg::rank(&Matrix::from_columns(n * m, &spanning), tol);

    vec![
        Report::residual("coaction.multiplicative", mult, tol),
        Report::residual("coaction.unital", unital, tol),
        Report::residual("coaction.star", star, tol),
        Report::residual("coaction.coassociativity", coassoc, tol),
        Report::residual("coaction.counit", counit, tol),
        Report::condition("coaction.podles_density", (n * m - rank) as f64, rank == n * m)
            .with_witness(Witness::Value(rank as f64))
            .with_notes(format!("rank {rank} of {}", n * m)),
    ]
}

/// Dimension of the *-subalgebra of `Q` generated by all slices
/// `(ω_i⊗id)α(e_j)`; faithful iff it is all of `Q`.
pub fn check_faithfulness<S: Scalar>(c: &Coaction<S>, tol: f64) -> Report {
    let q = c.cqg().algebra();
    let (n, m) = (c.base().dim(), q.dim());
    let slices: Vec<Vec<S>> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| (0..m).map(|r| c.alpha().get(i * m + r, j).clone()).collect())
        .collect();
    let dim = generated_star_subalgebra(q, &slices, tol).len();
    Report::condition("coaction.faithful", (m - dim) as f64, dim == m)
        .with_witness(Witness::Value(dim as f64))
        .with_notes(format!("generated *-subalgebra has dimension {dim} of {m}"))
}

/// Basis of the *-subalgebra generated by `generators`, by closing the span
/// under products and stars until the dimension stabilizes (at most `dim²`
/// rounds).
pub fn generated_star_subalgebra<S: Scalar>(alg: &StarAlgebra<S>, generators: &[Vec<S>], tol: f64) -> Vec<Vec<S>> {
    let n = alg.dim();
    let mut basis = linalg::span_basis(generators, n, tol);
    for _ in 0..n * n {
        let mut candidates = basis.clone();
        for x in &basis {
            candidates.push(alg.star(x));
            for y in &basis {
                candidates.push(alg.mul(x, y));
            }
        }
        let next = linalg::span_basis(&candidates, n, tol);
        let stable = next.len() == basis.len();
        basis = next;
        if stable || basis.len() == n {
            break;
        }
    }
    basis
}

/// Rank of the coaction matrix, with the smallest singular value as witness.
pub fn check_injectivity<S: Scalar>(c: &Coaction<S>, tol: f64) -> Report {
    let n = c.base().dim();
    let rank = linalg::rank(c.alpha(), tol);
    let smallest = linalg::min_singular_value(&c.alpha().to_c64());
    Report::condition("coaction.injective", (n - rank) as f64, rank == n)
        .with_witness(Witness::Value(smallest))
        .with_notes("witness = smallest singular value")
}

/// `α_h∘α_h = α_h` for the Haar slice.
pub fn check_haar_slice_idempotent<S: Scalar>(c: &Coaction<S>, tol: f64) -> Result<Report> {
    let e = c.slice_map(c.cqg().require_haar()?);
    Ok(Report::residual(
        "coaction.haar_slice_idempotent",
        e.compose(&e).max_diff(&e),
        tol,
    ))
}

/// Axioms, faithfulness, injectivity and the Haar-slice idempotence.
pub fn coaction_suite<S: Scalar>(c: &Coaction<S>, tol: f64) -> Result<Vec<Report>> {
    let mut reports = check_coaction_axioms(c, tol);
    reports.push(check_faithfulness(c, tol));
    reports.push(check_injectivity(c, tol));
    reports.push(check_haar_slice_idempotent(c, tol)?);
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::{
        build_classical_coaction, build_function_algebra_of_group, build_group_algebra, build_regular_coaction,
    };
    use crate::group::{FiniteGroup, GroupAction};
    use crate::scalar::GaussRat;

    fn q(n: i64, d: i64) -> GaussRat {
        GaussRat::ratio(n, d)
    }

    fn find<'a>(reports: &'a [Report], name: &str) -> &'a Report {
        reports.iter().find(|r| r.check_name == name).unwrap()
    }

    #[test]
    fn swap_coaction_matches_the_hand_formula() {
        let c = build_classical_coaction::<GaussRat>(&GroupAction::rotation(2), 0.0).unwrap();
        // α(δ₁) = δ₁⊗δ_e + δ₂⊗δ_s, α(δ₂) = δ₂⊗δ_e + δ₁⊗δ_s; index j·2 + q
        let one = q(1, 1);
        let zero = q(0, 1);
        assert_eq!(
            c.apply(&[one.clone(), zero.clone()]),
            vec![one.clone(), zero.clone(), zero.clone(), one.clone()]
        );
        assert_eq!(
            c.apply(&[zero.clone(), one.clone()]),
            vec![zero.clone(), one.clone(), one, zero]
        );
        assert!(coaction_suite(&c, 0.0).unwrap().iter().all(|r| r.pass));
    }

    #[test]
    fn slices_at_counit_haar_and_points() {
        let action = GroupAction::natural_symmetric(3);
        let c = build_classical_coaction::<GaussRat>(&action, 0.0).unwrap();
        let delta1 = vec![q(1, 1), q(0, 1), q(0, 1)];
        assert_eq!(slice(&c, c.cqg().counit(), &delta1), delta1);
        assert_eq!(slice(&c, c.cqg().haar().unwrap(), &delta1), vec![q(1, 3); 3]);
        for g in 0..6 {
            let ev = Functional::new((0..6).map(|k| q((k == g) as i64, 1)).collect());
            let image = slice(&c, &ev, &delta1);
            let expected: Vec<_> = (0..3).map(|x| q((x == action.act(g, 0)) as i64, 1)).collect();
            assert_eq!(image, expected);
        }
    }

    #[test]
    fn swap_haar_slice_averages_the_orbit() {
        let c = build_classical_coaction::<GaussRat>(&GroupAction::rotation(2), 0.0).unwrap();
        let avg = slice(&c, c.cqg().haar().unwrap(), &[q(1, 1), q(0, 1)]);
        assert_eq!(avg, vec![q(1, 2), q(1, 2)]);
    }

    #[test]
    fn podles_ranks() {
        let s3 = build_classical_coaction::<GaussRat>(&GroupAction::natural_symmetric(3), 0.0).unwrap();
        let r = check_coaction_axioms(&s3, 0.0);
        assert_eq!(find(&r, "coaction.podles_density").witness, Some(Witness::Value(18.0)));
        let reg = build_regular_coaction(&build_group_algebra::<GaussRat>(&FiniteGroup::symmetric(3), 0.0).unwrap());
        let r = coaction_suite(&reg, 0.0).unwrap();
        assert_eq!(find(&r, "coaction.podles_density").witness, Some(Witness::Value(36.0)));
        assert!(r.iter().all(|r| r.pass));
    }

    #[test]
    fn trivial_coaction_of_c_z2_is_not_faithful() {
        let q2 = build_function_algebra_of_group::<GaussRat>(&FiniteGroup::cyclic(2), 0.0).unwrap();
        let base = StarAlgebra::functions_on_points(vec!["a".into(), "b".into()]);
        let c = Coaction::trivial(base, q2);
        let f = check_faithfulness(&c, 0.0);
        assert!(!f.pass);
        assert_eq!(f.witness, Some(Witness::Value(1.0)));
        assert!(check_coaction_axioms(&c, 0.0)
            .iter()
            .all(|r| r.pass || r.check_name == "coaction.podles_density"));
    }

    #[test]
    fn zeroed_image_is_not_injective() {
        let c = build_classical_coaction::<GaussRat>(&GroupAction::rotation(2), 0.0).unwrap();
        assert!(check_injectivity(&c, 0.0).pass);
        let mut alpha = c.alpha().clone();
        for r in 0..alpha.rows() {
            alpha.set(r, 0, q(0, 1));
        }
        let bad = c.with_alpha(alpha);
        assert!(!check_injectivity(&bad, 0.0).pass);
        assert!(!find(&check_coaction_axioms(&bad, 0.0), "coaction.counit").pass);
    }

    #[test]
    fn perturbed_entry_breaks_multiplicativity() {
        let c = build_classical_coaction::<crate::scalar::C64>(&GroupAction::natural_symmetric(3), 1e-9).unwrap();
        let mut alpha = c.alpha().clone();
        *alpha.get_mut(0, 0) += crate::scalar::C64::new(1e-3, 0.0);
        let r = check_coaction_axioms(&c.with_alpha(alpha), 1e-9);
        assert!(!find(&r, "coaction.multiplicative").pass);
    }
}
