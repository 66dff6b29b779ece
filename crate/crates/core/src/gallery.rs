//! Builders for function algebras and group algebras of finite groups, classical
//! and regular coactions, graph calculi and edge metrics, plus a fixed list of
//! small worked cases.
//!
//! All cases are synthetic finite examples chosen to exercise the averaging
//! pipeline; none comes from measured data.

use crate::algebra::{Functional, StarAlgebra};
use crate::calculus::{lift_coaction, universal_calculus, Calculus, LiftedCoaction};
use crate::coaction::Coaction;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupAction};
use crate::hopf::HopfData;
use crate::linalg::Matrix;
use crate::metric::InnerProduct;
use crate::scalar::Scalar;

/// `C(G)`: pointwise product, `Δδ_g = Σ_{ab=g} δ_a⊗δ_b`, `ε = ev_e`,
/// `κ(δ_g) = δ_{g⁻¹}`, with the Haar functional computed.
pub fn build_function_algebra_of_group<S: Scalar>(group: &FiniteGroup, tol: f64) -> Result<HopfData<S>> {
    let n = group.order();
    let algebra = StarAlgebra::functions_on_points(group.labels().to_vec());
    let mut coproduct = Matrix::zeros(n * n, n);
    for a in 0..n {
        for b in 0..n {
            coproduct.set(a * n + b, group.mul(a, b), S::one());
        }
    }
    let counit = Functional::new((0..n).map(|g| indicator(g == group.identity())).collect());
    let antipode = Matrix::from_fn(n, n, |r, c| indicator(r == group.inverse(c)));
    HopfData::new(algebra, coproduct, counit, antipode)?.with_haar(tol)
}

/// Same as [`build_function_algebra_of_group`] from a raw multiplication table.
pub fn function_algebra_from_table<S: Scalar>(
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    tol: f64,
) -> Result<HopfData<S>> {
    build_function_algebra_of_group(&FiniteGroup::from_table(labels, table)?, tol)
}

/// `C[G]`: `λ_g λ_h = λ_{gh}`, `λ_g* = λ_{g⁻¹}`, `Δλ_g = λ_g⊗λ_g`,
/// `ε(λ_g) = 1`, `κ(λ_g) = λ_{g⁻¹}`, with the Haar functional computed.
pub fn build_group_algebra<S: Scalar>(group: &FiniteGroup, tol: f64) -> Result<HopfData<S>> {
    let n = group.order();
    let labels = group.labels().iter().map(|l| format!("λ{l}")).collect();
    let algebra = StarAlgebra::from_rules(
        labels,
        (0..n).map(|g| indicator(g == group.identity())).collect(),
        |g, h| vec![(group.mul(g, h), S::one())],
        |g| vec![(group.inverse(g), S::one())],
    )?;
    let coproduct = Matrix::from_fn(n * n, n, |pq, g| indicator(pq == g * n + g));
    let counit = Functional::new(vec![S::one(); n]);
    let antipode = Matrix::from_fn(n, n, |r, c| indicator(r == group.inverse(c)));
    HopfData::new(algebra, coproduct, counit, antipode)?.with_haar(tol)
}

/// Coaction of `C(G)` on `C(X)` with `α(δ_x) = Σ_g δ_{g·x} ⊗ δ_g`, so that
/// `(id⊗ev_g)∘α` sends `δ_x` to `δ_{g·x}`. The action is kept as provenance.
pub fn build_classical_coaction<S: Scalar>(action: &GroupAction, tol: f64) -> Result<Coaction<S>> {
    let cqg = build_function_algebra_of_group(action.group(), tol)?;
    let base = StarAlgebra::functions_on_points(action.point_labels().to_vec());
    let (n, m) = (action.points(), action.group().order());
    let mut alpha = Matrix::zeros(n * m, n);
    for x in 0..n {
        for g in 0..m {
            alpha.set(action.act(g, x) * m + g, x, S::one());
        }
    }
    Ok(Coaction::new(base, cqg, alpha)?.with_provenance(action.clone()))
}

/// `Δ` viewed as a coaction of `H` on its own algebra.
pub fn build_regular_coaction<S: Scalar>(h: &HopfData<S>) -> Coaction<S> {
    Coaction::new(h.algebra().clone(), h.clone(), h.coproduct().clone()).expect("coproduct has coaction shape")
}

/// Regular coaction of `C(G)`, carrying the classical action it encodes
/// (`g·x = x g⁻¹`) as provenance.
pub fn build_function_regular_coaction<S: Scalar>(group: &FiniteGroup, tol: f64) -> Result<Coaction<S>> {
    let h = build_function_algebra_of_group(group, tol)?;
    let n = group.order();
    let table = (0..n)
        .map(|g| (0..n).map(|x| group.mul(x, group.inverse(g))).collect())
        .collect();
    let action = GroupAction::new(group.clone(), group.labels().to_vec(), table)?;
    Ok(build_regular_coaction(&h).with_provenance(action))
}

/// Ordered pairs of distinct points, the basis `e_xy = δ_x⊗δ_y` of the
/// universal calculus on `C(X_n)`.
pub fn complete_edges(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|x| (0..n).filter(move |&y| y != x).map(move |y| (x, y)))
        .collect()
}

/// Calculus on `C(X_n)` spanned by `e_xy` for the given directed edges:
/// `δ_z·e_xy = δ_zx e_xy`, `e_xy·δ_z = δ_yz e_xy`, `dδ_z = Σ (δ_yz − δ_xz) e_xy`.
pub fn graph_calculus<S: Scalar>(base: &StarAlgebra<S>, edges: &[(usize, usize)]) -> Result<Calculus<S>> {
    let n = base.dim();
    if edges.iter().any(|&(x, y)| x >= n || y >= n || x == y) {
        return Err(Error::Inconsistent(
            "edges must join distinct points of the base".into(),
        ));
    }
    let k = edges.len();
    let mut left = vec![S::zero(); n * k * k];
    let mut right = vec![S::zero(); n * k * k];
    for (j, &(x, y)) in edges.iter().enumerate() {
        left[(x * k + j) * k + j] = S::one();
        right[(j * n + y) * k + j] = S::one();
    }
    let diff = Matrix::from_fn(k, n, |j, z| {
        let (x, y) = edges[j];
        indicator::<S>(y == z).sub_ref(&indicator(x == z))
    });
    Calculus::new(base.clone(), k, left, right, diff, None)
}

/// `⟨⟨e_xy, e_x'y'⟩⟩ = δ_{xx'} δ_{yy'} w_xy δ_y` on a calculus whose basis is
/// indexed by `edges`.
pub fn edge_metric<S: Scalar>(
    calculus: Calculus<S>,
    edges: &[(usize, usize)],
    weights: &[S],
) -> Result<InnerProduct<S>> {
    let (n, k) = (calculus.base().dim(), calculus.dim());
    if edges.len() != k || weights.len() != k {
        return Err(Error::Inconsistent(format!(
            "need {k} edges and weights, got {} and {}",
            edges.len(),
            weights.len()
        )));
    }
    let mut gram = vec![vec![S::zero(); n]; k * k];
    for (j, (&(_, y), w)) in edges.iter().zip(weights).enumerate() {
        gram[j * k + j][y] = w.clone();
    }
    InnerProduct::new(calculus, gram)
}

fn indicator<S: Scalar>(b: bool) -> S {
    if b {
        S::one()
    } else {
        S::zero()
    }
}

/// A coaction, a covariant calculus with its lift, and a metric to average.
#[derive(Clone, Debug)]
pub struct GalleryCase<S> {
    pub name: &'static str,
    pub description: &'static str,
    pub lifted: LiftedCoaction<S>,
    pub metric: InnerProduct<S>,
}

impl<S: Scalar> GalleryCase<S> {
    pub fn coaction(&self) -> &Coaction<S> {
        self.lifted.coaction()
    }

    pub fn calculus(&self) -> &Calculus<S> {
        self.lifted.calculus()
    }
}

pub const GALLERY_NAMES: [&str; 7] = [
    "trivial",
    "z2_swap",
    "z2_regular",
    "s3_points",
    "z3_cycle",
    "z3_group_algebra",
    "s3_group_algebra",
];

/// Seed used for the generic metrics on group algebras.
pub const METRIC_SEED: u64 = 7;

pub fn gallery<S: Scalar>(tol: f64) -> Result<Vec<GalleryCase<S>>> {
    GALLERY_NAMES.iter().map(|name| gallery_case(name, tol)).collect()
}

pub fn gallery_case<S: Scalar>(name: &str, tol: f64) -> Result<GalleryCase<S>> {
    let w = |ws: &[i64]| ws.iter().map(|&x| S::from_i64(x)).collect::<Vec<S>>();
    let (name, description, coaction, metric): (&'static str, &'static str, Coaction<S>, Metric<S>) = match name {
        "trivial" => {
            let base = StarAlgebra::functions_on_points(vec!["x1".into(), "x2".into()]);
            let c = Coaction::trivial(base, HopfData::trivial())
                .with_provenance(GroupAction::trivial_on(FiniteGroup::trivial(), 2));
            (
                "trivial",
                "trivial quantum group C acting on two points",
                c,
                Metric::Edges(w(&[1, 2])),
            )
        }
        "z2_swap" => (
            "z2_swap",
            "C(Z2) swapping two points",
            build_classical_coaction(&GroupAction::rotation(2), tol)?,
            Metric::Edges(w(&[3, 1])),
        ),
        "z2_regular" => (
            "z2_regular",
            "C(Z2) coacting on itself by its coproduct",
            build_function_regular_coaction(&FiniteGroup::cyclic(2), tol)?,
            Metric::Edges(w(&[5, 1])),
        ),
        "s3_points" => (
            "s3_points",
            "C(S3) permuting three points",
            build_classical_coaction(&GroupAction::natural_symmetric(3), tol)?,
            Metric::Edges(w(&[1, 2, 3, 4, 5, 6])),
        ),
        "z3_cycle" => (
            "z3_cycle",
            "C(Z3) rotating a directed 3-cycle",
            build_classical_coaction(&GroupAction::rotation(3), tol)?,
            Metric::Cycle(w(&[1, 2, 4])),
        ),
        "z3_group_algebra" => (
            "z3_group_algebra",
            "C[Z3] coacting on itself by its coproduct",
            build_regular_coaction(&build_group_algebra(&FiniteGroup::cyclic(3), tol)?),
            Metric::Random,
        ),
        "s3_group_algebra" => (
            "s3_group_algebra",
            "C[S3] coacting on itself by its coproduct",
            build_regular_coaction(&build_group_algebra(&FiniteGroup::symmetric(3), tol)?),
            Metric::Random,
        ),
        other => return Err(Error::Inconsistent(format!("unknown gallery case {other:?}"))),
    };
    let base = coaction.base();
    let (calculus, metric) = match metric {
        Metric::Edges(weights) => {
            let calc = universal_calculus(base, tol);
            let edges = complete_edges(base.dim());
            let g = edge_metric(calc.clone(), &edges, &weights)?;
            (calc, g)
        }
        Metric::Cycle(weights) => {
            let edges = [(0, 1), (1, 2), (2, 0)];
            let calc = graph_calculus(base, &edges)?;
            let g = edge_metric(calc.clone(), &edges, &weights)?;
            (calc, g)
        }
        Metric::Random => {
            let calc = universal_calculus(base, tol);
            let g = InnerProduct::random_positive(calc.clone(), METRIC_SEED)?;
            (calc, g)
        }
    };
    let lifted = lift_coaction(&coaction, &calculus, tol)?;
    Ok(GalleryCase {
        name,
        description,
        lifted,
        metric,
    })
}

enum Metric<S> {
    Edges(Vec<S>),
    Cycle(Vec<S>),
    Random,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::check_algebra_axioms;
    use crate::calculus::calculus_suite;
    use crate::coaction::coaction_suite;
    use crate::hopf::hopf_suite;
    use crate::scalar::GaussRat;

    fn q(n: i64, d: i64) -> GaussRat {
        GaussRat::ratio(n, d)
    }

    /// `F(δ_e) = (λ_e + λ_s)/2`, `F(δ_s) = (λ_e − λ_s)/2` is a Hopf *-isomorphism
    /// `C(Z2) → C[Z2]`.
    #[test]
    fn fourier_transform_identifies_the_two_z2_algebras() {
        let z2 = FiniteGroup::cyclic(2);
        let fun = build_function_algebra_of_group::<GaussRat>(&z2, 0.0).unwrap();
        let grp = build_group_algebra::<GaussRat>(&z2, 0.0).unwrap();
        let f = Matrix::from_columns(2, &[vec![q(1, 2), q(1, 2)], vec![q(1, 2), q(-1, 2)]]);
        let ff = Matrix::from_fn(4, 4, |r, c| f.get(r / 2, c / 2).mul_ref(f.get(r % 2, c % 2)));
        let (a, b) = (fun.algebra(), grp.algebra());
        for i in 0..2 {
            let fi = f.column(i);
            assert_eq!(f.apply(&a.star(&a.basis(i))), b.star(&fi));
            assert_eq!(grp.counit().eval(&fi), fun.counit().eval(&a.basis(i)));
            assert_eq!(grp.coproduct().apply(&fi), ff.apply(&fun.coproduct().column(i)));
            assert_eq!(grp.antipode().apply(&fi), f.apply(&fun.antipode().column(i)));
            for j in 0..2 {
                assert_eq!(f.apply(&a.mul(&a.basis(i), &a.basis(j))), b.mul(&fi, &f.column(j)));
            }
        }
    }

    #[test]
    fn bad_tables_are_rejected() {
        let labels = vec!["a".to_string(), "b".to_string()];
        let not_latin = vec![vec![0, 1], vec![1, 1]];
        assert!(matches!(
            function_algebra_from_table::<GaussRat>(labels, not_latin, 0.0),
            Err(Error::NotAGroup(_))
        ));
        let base = StarAlgebra::<GaussRat>::functions_on_points(vec!["x".into(), "y".into()]);
        assert!(graph_calculus(&base, &[(0, 0)]).is_err());
        assert!(graph_calculus(&base, &[(0, 2)]).is_err());
    }

    #[test]
    fn regular_coaction_of_functions_is_the_recorded_action() {
        let c = build_function_regular_coaction::<GaussRat>(&FiniteGroup::symmetric(3), 0.0).unwrap();
        let classical = build_classical_coaction::<GaussRat>(c.provenance().unwrap(), 0.0).unwrap();
        assert_eq!(classical.alpha(), c.alpha());
    }

    #[test]
    fn every_case_builds_and_passes_its_structural_checks() {
        let cases = gallery::<GaussRat>(0.0).unwrap();
        assert_eq!(cases.iter().map(|c| c.name).collect::<Vec<_>>(), GALLERY_NAMES);
        for case in &cases {
            let c = case.coaction();
            assert!(
                check_algebra_axioms(c.base(), 0.0).iter().all(|r| r.pass),
                "{}",
                case.name
            );
            assert!(
                hopf_suite(c.cqg(), 0.0).unwrap().iter().all(|r| r.pass),
                "{}",
                case.name
            );
            assert!(coaction_suite(c, 0.0).unwrap().iter().all(|r| r.pass), "{}", case.name);
            assert!(
                calculus_suite(&case.lifted, 0.0).iter().all(|r| r.pass),
                "{}",
                case.name
            );
        }
        assert!(gallery_case::<GaussRat>("kac_paljutkin", 0.0).is_err());
    }
}
