//! Hopf *-algebra structure on a finite-dimensional *-algebra: axiom checks,
//! Haar functional, Kac conditions, and the Sweedler-calculus identities used
//! by the averaging argument, each realized as an explicit tensor contraction.

use crate::algebra::{gram_check, tensor_algebra, Element, Functional, StarAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{nullspace, Matrix};
use crate::report::Report;
use crate::scalar::{max_diff, Scalar};

/// Coproduct `Δ`, counit `ε`, antipode `κ` and (once computed) Haar
/// functional `h` on an algebra `Q`.
///
/// `coproduct` is a `dim² × dim` matrix: column `i` is `Δ(e_i)` in the basis
/// `e_p ⊗ e_q` with index `p * dim + q`.
#[derive(Clone, Debug)]
pub struct HopfData<S> {
    algebra: StarAlgebra<S>,
    coproduct: Matrix<S>,
    counit: Functional<S>,
    antipode: Matrix<S>,
    haar: Option<Functional<S>>,
}

impl<S: Scalar> HopfData<S> {
    pub fn new(
        algebra: StarAlgebra<S>,
        coproduct: Matrix<S>,
        counit: Functional<S>,
        antipode: Matrix<S>,
    ) -> Result<Self> {
        let n = algebra.dim();
        if coproduct.rows() != n * n || coproduct.cols() != n {
            return Err(Error::Inconsistent(format!(
                "coproduct is {}x{}, expected {}x{n}",
                coproduct.rows(),
                coproduct.cols(),
                n * n
            )));
        }
        if counit.dim() != n {
            return Err(Error::Inconsistent(format!(
                "counit has length {}, expected {n}",
                counit.dim()
            )));
        }
        if antipode.rows() != n || antipode.cols() != n {
            return Err(Error::Inconsistent(format!(
                "antipode is {}x{}, expected {n}x{n}",
                antipode.rows(),
                antipode.cols()
            )));
        }
        Ok(HopfData {
            algebra,
            coproduct,
            counit,
            antipode,
            haar: None,
        })
    }

    /// The one-dimensional Hopf algebra `ℂ`.
    pub fn trivial() -> Self {
        let q = StarAlgebra::scalars();
        let mut h = HopfData::new(
            q,
            Matrix::identity(1),
            Functional::new(vec![S::one()]),
            Matrix::identity(1),
        )
        .expect("trivial Hopf algebra is well-formed");
        h.haar = Some(Functional::new(vec![S::one()]));
        h
    }

    /// Computes and attaches the Haar functional.
    pub fn with_haar(mut self, tol: f64) -> Result<Self> {
        self.haar = Some(compute_haar(&self, tol)?);
        Ok(self)
    }

    /// Attaches a supplied Haar functional after cross-checking it against
    /// the computed one.
    pub fn with_supplied_haar(mut self, supplied: Functional<S>, tol: f64) -> Result<Self> {
        let computed = compute_haar(&self, tol)?;
        if supplied.dim() != computed.dim() {
            return Err(Error::Inconsistent(format!(
                "supplied Haar has length {}, expected {}",
                supplied.dim(),
                computed.dim()
            )));
        }
        let residual = max_diff(&supplied.coeffs, &computed.coeffs);
        if residual > tol {
            return Err(Error::HaarMismatch { residual });
        }
        self.haar = Some(computed);
        Ok(self)
    }

    pub fn algebra(&self) -> &StarAlgebra<S> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn coproduct(&self) -> &Matrix<S> {
        &self.coproduct
    }

    pub fn counit(&self) -> &Functional<S> {
        &self.counit
    }

    pub fn antipode(&self) -> &Matrix<S> {
        &self.antipode
    }

    pub fn haar(&self) -> Option<&Functional<S>> {
        self.haar.as_ref()
    }

    pub fn require_haar(&self) -> Result<&Functional<S>> {
        self.haar
            .as_ref()
            .ok_or_else(|| Error::Inconsistent("Haar functional has not been computed".into()))
    }

    pub fn delta(&self, a: &[S]) -> Vec<S> {
        self.coproduct.apply(a)
    }

    pub fn kappa(&self, a: &[S]) -> Element<S> {
        self.antipode.apply(a)
    }

    /// Nonzero terms `(p, q, c)` of `Δ(e_i) = Σ c e_p ⊗ e_q`.
    pub fn delta_terms(&self, i: usize) -> Vec<(usize, usize, S)> {
        let n = self.dim();
        (0..n * n)
            .filter_map(|pq| {
                let c = self.coproduct.get(pq, i);
                (!c.is_zero()).then(|| (pq / n, pq % n, c.clone()))
            })
            .collect()
    }

    /// Fails unless `κ² = id`, `κ∘* = *∘κ`, and the Haar functional is
    /// tracial and faithful. The averaging map refuses anything else.
    pub fn ensure_kac(&self, tol: f64) -> Result<()> {
        let haar = self
            .haar
            .as_ref()
            .ok_or_else(|| Error::NotKac("Haar functional has not been computed".into()))?;
        let n = self.dim();
        let mut involutive = 0.0f64;
        let mut star = 0.0f64;
        for i in 0..n {
            let e = self.algebra.basis(i);
            let k = self.kappa(&e);
            involutive = involutive.max(max_diff(&self.kappa(&k), &e));
            star = star.max(max_diff(&self.kappa(&self.algebra.star(&e)), &self.algebra.star(&k)));
        }
        if involutive > tol {
            return Err(Error::NotKac(format!(
                "antipode is not involutive (residual {involutive:.3e})"
            )));
        }
        if star > tol {
            return Err(Error::NotKac(format!(
                "antipode does not commute with * (residual {star:.3e})"
            )));
        }
        let trace = check_traciality(self, tol)?;
        if !trace.pass {
            return Err(Error::NotKac(format!(
                "Haar functional is not tracial (residual {:.3e})",
                trace.residual
            )));
        }
        let gram = gram_check(haar, &self.algebra, tol);
        if !gram.faithful {
            return Err(Error::NotKac(format!(
                "Haar functional is not faithful (min Gram eigenvalue {:.3e})",
                gram.min_eigenvalue
            )));
        }
        Ok(())
    }

    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> T + Copy) -> HopfData<T> {
        HopfData {
            algebra: self.algebra.map_scalars(f),
            coproduct: self.coproduct.map(f),
            counit: Functional::new(self.counit.coeffs.iter().map(f).collect()),
            antipode: self.antipode.map(f),
            haar: self
                .haar
                .as_ref()
                .map(|h| Functional::new(h.coeffs.iter().map(f).collect())),
        }
    }

    /// Copy with a different coproduct; used for defect injection.
    pub fn with_coproduct(&self, coproduct: Matrix<S>) -> Self {
        HopfData {
            coproduct,
            ..self.clone()
        }
    }

    pub fn with_antipode(&self, antipode: Matrix<S>) -> Self {
        HopfData {
            antipode,
            ..self.clone()
        }
    }

    /// Copy with an unchecked Haar functional; used for defect injection.
    pub fn with_haar_unchecked(&self, haar: Functional<S>) -> Self {
        HopfData {
            haar: Some(haar),
            ..self.clone()
        }
    }
}

/// `x (1 ⊗ e_p)` for `x ∈ Q ⊗ Q`.
fn times_second_leg<S: Scalar>(q: &StarAlgebra<S>, x: &[S], p: usize) -> Vec<S> {
    let n = q.dim();
    let mut out = vec![S::zero(); n * n];
    for (rs, c) in x.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (r, s) = (rs / n, rs % n);
        for (t, d) in q.basis_product(s, p) {
            out[r * n + t].mul_acc(c, d);
        }
    }
    out
}

/// Coassociativity, counit law, *-homomorphism properties of `Δ` and `ε`,
/// antipode law, and the Kac conditions `κ² = id`, `κ∘* = *∘κ`.
pub fn check_hopf_axioms<S: Scalar>(h: &HopfData<S>, tol: f64) -> Vec<Report> {
    let q = h.algebra();
    let n = q.dim();
    let qq = tensor_algebra(q, q);
    let basis: Vec<_> = (0..n).map(|i| q.basis(i)).collect();
    let deltas: Vec<_> = basis.iter().map(|e| h.delta(e)).collect();

    let mut coassoc = 0.0f64;
    let mut counit = 0.0f64;
    let mut antipode = 0.0f64;
    let mut kac_inv = 0.0f64;
    let mut kac_star = 0.0f64;
    let mut delta_star = 0.0f64;
    let mut eps_star = 0.0f64;
    for i in 0..n {
        let mut left = vec![S::zero(); n * n * n];
        let mut right = vec![S::zero(); n * n * n];
        let mut eps_left = q.zero();
        let mut eps_right = q.zero();
        let mut anti_left = q.zero();
        let mut anti_right = q.zero();
        for (p, r, c) in h.delta_terms(i) {
            for (a, b, d) in h.delta_terms(p) {
                left[(a * n + b) * n + r].mul_acc(&c, &d);
            }
            for (a, b, d) in h.delta_terms(r) {
                right[(p * n + a) * n + b].mul_acc(&c, &d);
            }
            eps_left[r].mul_acc(&c, &h.counit().coeffs[p]);
            eps_right[p].mul_acc(&c, &h.counit().coeffs[r]);
            let kp = h.kappa(&basis[p]);
            let kr = h.kappa(&basis[r]);
            for (k, v) in q.mul(&kp, &basis[r]).iter().enumerate() {
                anti_left[k].mul_acc(&c, v);
            }
            for (k, v) in q.mul(&basis[p], &kr).iter().enumerate() {
                anti_right[k].mul_acc(&c, v);
            }
        }
        coassoc = coassoc.max(max_diff(&left, &right));
        counit = counit
            .max(max_diff(&eps_left, &basis[i]))
            .max(max_diff(&eps_right, &basis[i]));
        let eps_unit = q.scale(&h.counit().coeffs[i], q.unit());
        antipode = antipode
            .max(max_diff(&anti_left, &eps_unit))
            .max(max_diff(&anti_right, &eps_unit));

        let k = h.kappa(&basis[i]);
        kac_inv = kac_inv.max(max_diff(&h.kappa(&k), &basis[i]));
        kac_star = kac_star.max(max_diff(&h.kappa(&q.star(&basis[i])), &q.star(&k)));

        let star_i = q.star(&basis[i]);
        delta_star = delta_star.max(max_diff(&h.delta(&star_i), &qq.star(&deltas[i])));
        let eps_of_star = h.counit().eval(&star_i);
        eps_star = eps_star.max(eps_of_star.sub_ref(&h.counit().coeffs[i].conj()).modulus());
    }

    let mut delta_mult = 0.0f64;
    let mut eps_mult = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let prod = q.mul(&basis[i], &basis[j]);
            delta_mult = delta_mult.max(max_diff(&h.delta(&prod), &qq.mul(&deltas[i], &deltas[j])));
            let lhs = h.counit().eval(&prod);
            let rhs = h.counit().coeffs[i].mul_ref(&h.counit().coeffs[j]);
            eps_mult = eps_mult.max(lhs.sub_ref(&rhs).modulus());
        }
    }
    let delta_unit = max_diff(&h.delta(q.unit()), qq.unit());
    let eps_unit = h.counit().eval(q.unit()).sub_ref(&S::one()).modulus();

    vec![
        Report::residual("hopf.coassociativity", coassoc, tol),
        Report::residual("hopf.counit_law", counit, tol),
        Report::residual("hopf.coproduct_multiplicative", delta_mult, tol),
        Report::residual("hopf.coproduct_unital", delta_unit, tol),
        Report::residual("hopf.coproduct_star", delta_star, tol),
        Report::residual("hopf.counit_multiplicative", eps_mult, tol),
        Report::residual("hopf.counit_unital", eps_unit, tol),
        Report::residual("hopf.counit_star", eps_star, tol),
        Report::residual("hopf.antipode_law", antipode, tol),
        Report::residual("hopf.kac_antipode_involutive", kac_inv, tol),
        Report::residual("hopf.kac_antipode_star", kac_star, tol),
    ]
}

/// Unique bi-invariant functional with `h(1) = 1`, solved from the joint
/// linear system `(h⊗id)Δ(e_i) = h(e_i)1 = (id⊗h)Δ(e_i)`.
pub fn compute_haar<S: Scalar>(h: &HopfData<S>, tol: f64) -> Result<Functional<S>> {
    let n = h.dim();
    let unit = h.algebra().unit();
    let mut rows: Vec<Vec<S>> = Vec::with_capacity(2 * n * n);
    for i in 0..n {
        for q in 0..n {
            let mut left = vec![S::zero(); n];
            let mut right = vec![S::zero(); n];
            for p in 0..n {
                left[p] = h.coproduct().get(p * n + q, i).clone();
                right[p] = h.coproduct().get(q * n + p, i).clone();
            }
            left[i] = left[i].sub_ref(&unit[q]);
            right[i] = right[i].sub_ref(&unit[q]);
            rows.push(left);
            rows.push(right);
        }
    }
    let (kernel, _) = nullspace(&Matrix::from_rows(n, &rows), tol);
    match kernel.len() {
        0 => return Err(Error::NoSolution),
        1 => {}
        dim => return Err(Error::NonUnique { dim }),
    }
    let v = &kernel[0];
    let norm = Functional::new(v.clone()).eval(unit);
    if norm.is_negligible(tol) {
        return Err(Error::NoSolution);
    }
    let haar = Functional::new(v.iter().map(|x| x.clone() / norm.clone()).collect());
    let gram = gram_check(&haar, h.algebra(), tol);
    if !gram.positive {
        return Err(Error::NotPositive {
            min_eigenvalue: gram.min_eigenvalue,
        });
    }
    Ok(haar)
}

/// Largest residual of `(h⊗id)Δ(e_i) − h(e_i)1` and `(id⊗h)Δ(e_i) − h(e_i)1`.
pub fn haar_invariance_residual<S: Scalar>(h: &HopfData<S>, haar: &Functional<S>) -> f64 {
    let q = h.algebra();
    let n = q.dim();
    let mut worst = 0.0f64;
    for i in 0..n {
        let mut left = q.zero();
        let mut right = q.zero();
        for (p, r, c) in h.delta_terms(i) {
            left[r].mul_acc(&c, &haar.coeffs[p]);
            right[p].mul_acc(&c, &haar.coeffs[r]);
        }
        let target = q.scale(&haar.coeffs[i], q.unit());
        worst = worst.max(max_diff(&left, &target)).max(max_diff(&right, &target));
    }
    worst
}

/// Invariance, normalization, positivity and faithfulness of the attached
/// Haar functional.
pub fn check_haar<S: Scalar>(h: &HopfData<S>, tol: f64) -> Result<Vec<Report>> {
    let haar = h.require_haar()?;
    let norm = haar.eval(h.algebra().unit()).sub_ref(&S::one()).modulus();
    let mut reports = vec![
        Report::residual("haar.invariance", haar_invariance_residual(h, haar), tol),
        Report::residual("haar.normalized", norm, tol),
    ];
    reports.extend(gram_check(haar, h.algebra(), tol).reports("haar.gram"));
    Ok(reports)
}

/// `max |h(e_i e_j) − h(e_j e_i)|` over basis pairs.
pub fn check_traciality<S: Scalar>(h: &HopfData<S>, tol: f64) -> Result<Report> {
    let haar = h.require_haar()?;
    Ok(Report::residual(
        "hopf.haar_tracial",
        traciality_residual(h.algebra(), haar),
        tol,
    ))
}

pub fn traciality_residual<S: Scalar>(q: &StarAlgebra<S>, phi: &Functional<S>) -> f64 {
    let n = q.dim();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let ij = phi.eval(&q.mul(&q.basis(i), &q.basis(j)));
            let ji = phi.eval(&q.mul(&q.basis(j), &q.basis(i)));
            worst = worst.max(ij.sub_ref(&ji).modulus());
        }
    }
    worst
}

/// `z₍₂₎κ(z₍₁₎) = ε(z)1` on every basis element.
pub fn check_sweedler_inverse_identity<S: Scalar>(h: &HopfData<S>, tol: f64) -> Report {
    let q = h.algebra();
    let mut worst = 0.0f64;
    for i in 0..q.dim() {
        let mut acc = q.zero();
        for (p, r, c) in h.delta_terms(i) {
            let term = q.mul(&q.basis(r), &h.kappa(&q.basis(p)));
            for (k, v) in term.iter().enumerate() {
                acc[k].mul_acc(&c, v);
            }
        }
        let target = q.scale(&h.counit().coeffs[i], q.unit());
        worst = worst.max(max_diff(&acc, &target));
    }
    Report::residual("hopf.sweedler_inverse", worst, tol)
}

/// The transform `T(a⊗b) = Δ(κ(a))(1⊗b)` on a basis tensor.
fn t_transform<S: Scalar>(h: &HopfData<S>, a: &[S], b_index: usize) -> Vec<S> {
    times_second_leg(h.algebra(), &h.delta(&h.kappa(a)), b_index)
}

/// Identities behind the equivariance of the averaged inner product, over all
/// basis pairs `(b, c)`:
/// `(h⊗id)T = h⊗id`,
/// `T(b₍₂₎κ(c) ⊗ b₍₁₎) = c₍₁₎κ(b) ⊗ c₍₂₎`, and
/// `h(κ(c)b₍₂₎) b₍₁₎ = h(κ(b)c₍₁₎) c₍₂₎`.
pub fn check_t_transform_identity<S: Scalar>(h: &HopfData<S>, tol: f64) -> Result<Vec<Report>> {
    let haar = h.require_haar()?;
    let q = h.algebra();
    let n = q.dim();
    let basis: Vec<_> = (0..n).map(|i| q.basis(i)).collect();
    let kappas: Vec<_> = basis.iter().map(|e| h.kappa(e)).collect();

    let mut invariance = 0.0f64;
    for a in 0..n {
        for b in 0..n {
            let t = t_transform(h, &basis[a], b);
            let mut sliced = q.zero();
            for (rs, c) in t.iter().enumerate() {
                sliced[rs % n].mul_acc(c, &haar.coeffs[rs / n]);
            }
            let target = q.scale(&haar.coeffs[a], &basis[b]);
            invariance = invariance.max(max_diff(&sliced, &target));
        }
    }

    let mut tensor_level = 0.0f64;
    let mut contracted = 0.0f64;
    for b in 0..n {
        for c in 0..n {
            let mut lhs = vec![S::zero(); n * n];
            let mut lhs_h = q.zero();
            for (p, r, coef) in h.delta_terms(b) {
                let arg = q.mul(&basis[r], &kappas[c]);
                for (k, v) in t_transform(h, &arg, p).iter().enumerate() {
                    lhs[k].mul_acc(&coef, v);
                }
                let w = haar.eval(&q.mul(&kappas[c], &basis[r]));
                lhs_h[p].mul_acc(&coef, &w);
            }
            let mut rhs = vec![S::zero(); n * n];
            let mut rhs_h = q.zero();
            for (p, r, coef) in h.delta_terms(c) {
                let first = q.mul(&basis[p], &kappas[b]);
                for (k, v) in first.iter().enumerate() {
                    rhs[k * n + r].mul_acc(&coef, v);
                }
                let w = haar.eval(&q.mul(&kappas[b], &basis[p]));
                rhs_h[r].mul_acc(&coef, &w);
            }
            tensor_level = tensor_level.max(max_diff(&lhs, &rhs));
            contracted = contracted.max(max_diff(&lhs_h, &rhs_h));
        }
    }
    Ok(vec![
        Report::residual("hopf.t_haar_invariance", invariance, tol),
        Report::residual("hopf.t_transform", tensor_level, tol),
        Report::residual("hopf.t_contracted", contracted, tol),
    ])
}

/// `max |h(κ(e_i)) − h(e_i)|`.
pub fn check_haar_antipode_invariance<S: Scalar>(h: &HopfData<S>, tol: f64) -> Result<Report> {
    let haar = h.require_haar()?;
    let q = h.algebra();
    let worst = (0..q.dim())
        .map(|i| haar.eval(&h.kappa(&q.basis(i))).sub_ref(&haar.coeffs[i]).modulus())
        .fold(0.0, f64::max);
    Ok(Report::residual("hopf.haar_antipode_invariance", worst, tol))
}

/// `max |ε(κ(e_i)) − ε(e_i)|`.
pub fn check_counit_antipode<S: Scalar>(h: &HopfData<S>, tol: f64) -> Report {
    let q = h.algebra();
    let worst = (0..q.dim())
        .map(|i| {
            h.counit()
                .eval(&h.kappa(&q.basis(i)))
                .sub_ref(&h.counit().coeffs[i])
                .modulus()
        })
        .fold(0.0, f64::max);
    Report::residual("hopf.counit_antipode", worst, tol)
}

/// Every Hopf-level check: axioms, Haar properties, traciality, Sweedler
/// inverse identity, T-transform identities, `h∘κ = h`, `ε∘κ = ε`.
pub fn hopf_suite<S: Scalar>(h: &HopfData<S>, tol: f64) -> Result<Vec<Report>> {
    let mut reports = check_hopf_axioms(h, tol);
    reports.extend(check_haar(h, tol)?);
    reports.push(check_traciality(h, tol)?);
    reports.push(check_sweedler_inverse_identity(h, tol));
    reports.extend(check_t_transform_identity(h, tol)?);
    reports.push(check_haar_antipode_invariance(h, tol)?);
    reports.push(check_counit_antipode(h, tol));
    Ok(reports)
}
