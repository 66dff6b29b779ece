//! Algebra-valued inner products on one-forms and their average under a Kac
//! coaction.
//!
//! The averaging map is
//!
//! ```text
//! Ψ(F) = (id⊗h)(id⊗m)(id⊗κ⊗id)(α⊗id)(F),    F ∈ A ⊗ Q,
//! ```
//!
//! and the averaged product is `⟨⟨ω,η⟩⟩' = Ψ(⟨⟨Γω, Γη⟩⟩)`, where the inner
//! product is extended to `Ω ⊗ Q` by `⟨⟨ω⊗q, η⊗r⟩⟩ = ⟨⟨ω,η⟩⟩ ⊗ q*r`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{tensor_algebra, Element, GnsRepresentation, StarAlgebra};
use crate::calculus::{Calculus, LiftedCoaction};
use crate::coaction::Coaction;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::report::{Report, Witness};
use crate::scalar::{max_diff, Scalar};

/// `⟨⟨ω_i, ω_j⟩⟩ = gram[i·k + j] ∈ A`, conjugate-linear in the first slot.
#[derive(Clone, Debug)]
pub struct InnerProduct<S> {
    calculus: Calculus<S>,
    gram: Vec<Element<S>>,
}

impl<S: Scalar> InnerProduct<S> {
    pub fn new(calculus: Calculus<S>, gram: Vec<Element<S>>) -> Result<Self> {
        let (n, k) = (calculus.base().dim(), calculus.dim());
        if gram.len() != k * k || gram.iter().any(|g| g.len() != n) {
            return Err(Error::Inconsistent(format!(
                "Gram tensor must be {k}x{k} entries of length {n}"
            )));
        }
        Ok(InnerProduct { calculus, gram })
    }

    /// Restriction to `Ω ⊆ A⊗A` of the product on the free right module
    /// `A⊗A ≅ A^n` (basis `e_a⊗1`) given by `⟨⟨X, Y⟩⟩ = Σ_ab X_a* P_ab Y_b`.
    pub fn from_free_gram(calculus: Calculus<S>, p: &[Vec<Element<S>>]) -> Result<Self> {
        let a = calculus.base().clone();
        let n = a.dim();
        if p.len() != n || p.iter().any(|row| row.len() != n || row.iter().any(|x| x.len() != n)) {
            return Err(Error::Inconsistent(format!(
                "free Gram must be {n}x{n} over the base algebra"
            )));
        }
        let emb = calculus
            .embedding()
            .ok_or_else(|| Error::Inconsistent("free Gram needs a calculus embedded in A⊗A".into()))?;
        let k = calculus.dim();
        // legs[i][a] = Σ_c E[(a,c), i] e_c
        let legs: Vec<Vec<Element<S>>> = (0..k)
            .map(|i| {
                (0..n)
                    .map(|row| (0..n).map(|c| emb.matrix.get(row * n + c, i).clone()).collect())
                    .collect()
            })
            .collect();
        let starred: Vec<Vec<Element<S>>> = legs.iter().map(|l| l.iter().map(|x| a.star(x)).collect()).collect();
        let mut gram = Vec::with_capacity(k * k);
        for i in 0..k {
            for j in 0..k {
                let mut acc = a.zero();
                for (ra, xs) in starred[i].iter().enumerate() {
                    if xs.iter().all(Scalar::is_zero) {
                        continue;
                    }
                    for (rb, y) in legs[j].iter().enumerate() {
                        if y.iter().all(Scalar::is_zero) {
                            continue;
                        }
                        let left = a.mul(xs, &p[ra][rb]);
                        a.mul_into(&mut acc, &left, y);
                    }
                }
                gram.push(acc);
            }
        }
        Self::new(calculus, gram)
    }

    /// Seeded generic positive-definite product: the free Gram is
    /// `P = B*B + 1` for a random `B ∈ M_n(A)` with small integer entries.
    pub fn random_positive(calculus: Calculus<S>, seed: u64) -> Result<Self> {
        let a = calculus.base().clone();
        let n = a.dim();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b: Vec<Vec<Element<S>>> = (0..n)
            .map(|_| (0..n).map(|_| random_element(&mut rng, n)).collect())
            .collect();
        let mut p = vec![vec![a.zero(); n]; n];
        for (ra, row) in p.iter_mut().enumerate() {
            for (rb, slot) in row.iter_mut().enumerate() {
                for brow in &b {
                    let left = a.star(&brow[ra]);
                    a.mul_into(slot, &left, &brow[rb]);
                }
                if ra == rb {
                    for (x, u) in slot.iter_mut().zip(a.unit()) {
                        *x = x.add_ref(u);
                    }
                }
            }
        }
        Self::from_free_gram(calculus, &p)
    }

    pub fn calculus(&self) -> &Calculus<S> {
        &self.calculus
    }

    pub fn base(&self) -> &StarAlgebra<S> {
        self.calculus.base()
    }

    pub fn dim(&self) -> usize {
        self.calculus.dim()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Element<S> {
        &self.gram[i * self.dim() + j]
    }

    pub fn gram(&self) -> &[Element<S>] {
        &self.gram
    }

    pub fn with_gram(&self, gram: Vec<Element<S>>) -> Result<Self> {
        Self::new(self.calculus.clone(), gram)
    }

    /// `⟨⟨ω, η⟩⟩` for arbitrary forms in coordinates.
    pub fn inner(&self, w: &[S], v: &[S]) -> Element<S> {
        let k = self.dim();
        let mut acc = self.base().zero();
        for (i, x) in w.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let xc = x.conj();
            for (j, y) in v.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let c = xc.mul_ref(y);
                for (o, g) in acc.iter_mut().zip(&self.gram[i * k + j]) {
                    o.mul_acc(&c, g);
                }
            }
        }
        acc
    }
}

fn random_element<S: Scalar>(rng: &mut impl Rng, dim: usize) -> Element<S> {
    (0..dim)
        .map(|_| S::gaussian((rng.random_range(-3..=3), 1), (rng.random_range(-3..=3), 1)))
        .collect()
}

/// Precomputed matrix of `Ψ: A⊗Q → A` for a Kac coaction.
#[derive(Clone, Debug)]
pub struct Averager<S> {
    coaction: Coaction<S>,
    psi: Matrix<S>,
}

impl<S: Scalar> Averager<S> {
    /// Refuses non-Kac input: `κ² = id`, `κ∘* = *∘κ`, `h` tracial and faithful.
    pub fn new(c: &Coaction<S>, tol: f64) -> Result<Self> {
        let h = c.cqg();
        h.ensure_kac(tol)?;
        let haar = h.require_haar()?;
        let q = h.algebra();
        let (n, m) = (c.base().dim(), q.dim());
        // weights[r][s] = h(κ(f_r) f_s)
        let weights: Vec<Vec<S>> = (0..m)
            .map(|r| {
                let kr = h.kappa(&q.basis(r));
                (0..m).map(|s| haar.eval(&q.mul(&kr, &q.basis(s)))).collect()
            })
            .collect();
        let mut psi = Matrix::<S>::zeros(n, n * m);
        for i in 0..n {
            for (p, r, coef) in c.terms(i) {
                for (s, w) in weights[r].iter().enumerate() {
                    if !w.is_zero() {
                        psi.get_mut(p, i * m + s).mul_acc(&coef, w);
                    }
                }
            }
        }
        Ok(Averager {
            coaction: c.clone(),
            psi,
        })
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.psi
    }

    pub fn coaction(&self) -> &Coaction<S> {
        &self.coaction
    }

    pub fn apply(&self, f: &[S]) -> Element<S> {
        self.psi.apply(f)
    }
}

/// `Ψ(F)` for `F ∈ A⊗Q`.
pub fn psi<S: Scalar>(c: &Coaction<S>, f: &[S], tol: f64) -> Result<Element<S>> {
    Ok(Averager::new(c, tol)?.apply(f))
}

/// `⟨⟨Γω_i, Γω_j⟩⟩ ∈ A⊗Q` for every basis pair, indexed `i·k + j`.
pub fn twisted_gram<S: Scalar>(lifted: &LiftedCoaction<S>, g: &InnerProduct<S>) -> Vec<Vec<S>> {
    let q = lifted.coaction().cqg().algebra();
    let (n, k, m) = (g.base().dim(), g.dim(), q.dim());
    // pairs[r][s] = f_r* f_s
    let stars: Vec<_> = (0..m).map(|r| q.star(&q.basis(r))).collect();
    let pairs: Vec<Vec<Element<S>>> = stars
        .iter()
        .map(|sr| (0..m).map(|s| q.mul(sr, &q.basis(s))).collect())
        .collect();
    let terms: Vec<_> = (0..k).map(|j| lifted.terms(j)).collect();
    let mut out = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            let mut acc = vec![S::zero(); n * m];
            for (l1, r, c1) in &terms[i] {
                let c1 = c1.conj();
                for (l2, s, c2) in &terms[j] {
                    let c = c1.mul_ref(c2);
                    let entry = g.entry(*l1, *l2);
                    for (t, qv) in pairs[*r][*s].iter().enumerate() {
                        if qv.is_zero() {
                            continue;
                        }
                        let cq = c.mul_ref(qv);
                        for (p, gv) in entry.iter().enumerate() {
                            if !gv.is_zero() {
                                acc[p * m + t].mul_acc(&cq, gv);
                            }
                        }
                    }
                }
            }
            out.push(acc);
        }
    }
    out
}

/// `⟨⟨ω,η⟩⟩' = Ψ(⟨⟨Γω, Γη⟩⟩)`, re-verified for hermitian symmetry and right
/// linearity.
pub fn average_inner_product<S: Scalar>(
    lifted: &LiftedCoaction<S>,
    g: &InnerProduct<S>,
    tol: f64,
) -> Result<InnerProduct<S>> {
    if g.dim() != lifted.calculus().dim() {
        return Err(Error::Inconsistent(
            "inner product and lift use different calculi".into(),
        ));
    }
    let averager = Averager::new(lifted.coaction(), tol)?;
    let gram = twisted_gram(lifted, g).iter().map(|t| averager.apply(t)).collect();
    let averaged = g.with_gram(gram)?;
    if let Some(bad) = check_hermitian_module(&averaged, tol).into_iter().find(|r| !r.pass) {
        return Err(Error::InvariantViolation {
            check: bad.check_name,
            residual: bad.residual,
        });
    }
    Ok(averaged)
}

/// Hermitian symmetry `⟨⟨ω,η⟩⟩* = ⟨⟨η,ω⟩⟩`, right linearity
/// `⟨⟨ω,ηf⟩⟩ = ⟨⟨ω,η⟩⟩f`, and the first-slot rule `⟨⟨ωf,η⟩⟩ = f*⟨⟨ω,η⟩⟩`,
/// over all basis pairs and triples.
pub fn check_hermitian_module<S: Scalar>(g: &InnerProduct<S>, tol: f64) -> Vec<Report> {
    let a = g.base();
    let calc = g.calculus();
    let (n, k) = (a.dim(), g.dim());
    let mut hermitian = 0.0f64;
    let mut right = 0.0f64;
    let mut first = 0.0f64;
    for i in 0..k {
        let wi = calc.basis(i);
        for j in 0..k {
            let wj = calc.basis(j);
            hermitian = hermitian.max(max_diff(&a.star(g.entry(i, j)), g.entry(j, i)));
            for f in 0..n {
                let ef = a.basis(f);
                let lhs = g.inner(&wi, &calc.right_act(&wj, &ef));
                right = right.max(max_diff(&lhs, &a.mul(g.entry(i, j), &ef)));
                let lhs = g.inner(&calc.right_act(&wi, &ef), &wj);
                first = first.max(max_diff(&lhs, &a.mul(&a.star(&ef), g.entry(i, j))));
            }
        }
    }
    vec![
        Report::residual("metric.hermitian", hermitian, tol),
        Report::residual("metric.right_linear", right, tol),
        Report::residual("metric.first_slot_conjugate_linear", first, tol),
    ]
}

/// `α(⟨⟨ω_i,ω_j⟩⟩') = ⟨⟨Γω_i, Γω_j⟩⟩'` over all basis pairs.
pub fn check_equivariance<S: Scalar>(lifted: &LiftedCoaction<S>, g: &InnerProduct<S>, tol: f64) -> Report {
    let c = lifted.coaction();
    let twisted = twisted_gram(lifted, g);
    let worst = g
        .gram()
        .iter()
        .zip(&twisted)
        .map(|(entry, t)| max_diff(&c.apply(entry), t))
        .fold(0.0, f64::max);
    Report::residual("metric.equivariant", worst, tol)
}

/// Averaging an averaged product changes nothing.
pub fn check_idempotence<S: Scalar>(lifted: &LiftedCoaction<S>, g_avg: &InnerProduct<S>, tol: f64) -> Result<Report> {
    let again = average_inner_product(lifted, g_avg, tol)?;
    let worst = again
        .gram()
        .iter()
        .zip(g_avg.gram())
        .map(|(x, y)| max_diff(x, y))
        .fold(0.0, f64::max);
    Ok(Report::residual("metric.idempotent", worst, tol))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Definite,
    Semidefinite,
    Indefinite,
}

/// Positivity of an inner product, measured through the base algebra's
/// canonical faithful functional `φ`.
///
/// `module_min_eigenvalue` is the least eigenvalue of the block operator
/// `[π(⟨⟨ω_i,ω_j⟩⟩)]` (positivity in `M_k(A)`); `form_min_eigenvalue` is the
/// least eigenvalue of `[φ(⟨⟨ω_i,ω_j⟩⟩)]`, which is positive exactly when
/// `⟨⟨ω,ω⟩⟩ = 0` forces `ω = 0`.
#[derive(Clone, Debug)]
pub struct Definiteness {
    pub module_min_eigenvalue: f64,
    pub form_min_eigenvalue: f64,
    pub asymmetry: f64,
    pub verdict: Verdict,
}

impl Definiteness {
    pub fn reports(&self) -> Vec<Report> {
        let semidefinite = self.verdict != Verdict::Indefinite;
        vec![
            Report::condition("metric.positive", self.asymmetry, semidefinite)
                .with_witness(Witness::Value(self.module_min_eigenvalue))
                .with_notes("witness = min eigenvalue of the module Gram operator"),
            Report::condition("metric.definite", self.asymmetry, self.verdict == Verdict::Definite)
                .with_witness(Witness::Value(self.form_min_eigenvalue))
                .with_notes(format!(
                    "{:?}; witness = min eigenvalue of the scalar form",
                    self.verdict
                )),
        ]
    }
}

pub fn check_definiteness<S: Scalar>(g: &InnerProduct<S>, tol: f64) -> Result<Definiteness> {
    let a = g.base();
    let k = g.dim();
    let phi = a.canonical_functional();
    let gns = GnsRepresentation::new(a, &phi, tol)?;
    let blocks: Vec<Vec<Element<S>>> = (0..k)
        .map(|i| (0..k).map(|j| g.entry(i, j).clone()).collect())
        .collect();
    let module = linalg::hermitian_spectrum(&gns.block_operator(&blocks));
    let form = Matrix::from_fn(k, k, |i, j| phi.eval(g.entry(i, j)));
    let form = linalg::hermitian_spectrum(&form.to_c64());
    let asymmetry = module.asymmetry.max(form.asymmetry);
    let semidefinite = asymmetry <= tol && module.min() >= -tol && form.min() >= -tol;
    let verdict = if !semidefinite {
        Verdict::Indefinite
    } else if form.min() > tol {
        Verdict::Definite
    } else {
        Verdict::Semidefinite
    };
    Ok(Definiteness {
        module_min_eigenvalue: if k == 0 { 0.0 } else { module.min() },
        form_min_eigenvalue: if k == 0 { 0.0 } else { form.min() },
        asymmetry,
        verdict,
    })
}

/// Randomized complete-positivity test of `Ψ`: `Ψ(G*G) ≥ 0` for `trials`
/// seeded `G ∈ A⊗Q`, then `[Ψ((X*X)_ij)] ≥ 0` in `M_k(A)` for `k = 2..dim A`.
/// Also checks `Ψ(f⊗1) = (id⊗h)α(f)`.
///
/// Sampling runs in double precision whatever the backend, since the
/// positivity verdicts come from floating-point eigenvalues anyway; the
/// consistency identity is checked in the input backend.
pub fn psi_cp_check<S: Scalar>(c: &Coaction<S>, trials: usize, tol: f64, seed: u64) -> Result<Vec<Report>> {
    let averager = Averager::new(c, tol)?;
    let mut reports = if S::EXACT {
        let float = c.map_scalars(|x| x.to_c64());
        sample_positivity(&Averager::new(&float, tol)?, trials, tol, seed)?
    } else {
        sample_positivity(&averager, trials, tol, seed)?
    };

    let a = c.base();
    let q = c.cqg().algebra();
    let slice = c.slice_map(c.cqg().require_haar()?);
    let mut consistency = 0.0f64;
    for i in 0..a.dim() {
        let f1 = crate::algebra::tensor_vec(&a.basis(i), q.unit());
        consistency = consistency.max(max_diff(&averager.apply(&f1), &slice.apply(&a.basis(i))));
    }
    reports.push(Report::residual("psi.haar_slice_consistency", consistency, tol));
    Ok(reports)
}

fn sample_positivity<S: Scalar>(averager: &Averager<S>, trials: usize, tol: f64, seed: u64) -> Result<Vec<Report>> {
    let c = averager.coaction();
    let a = c.base();
    let q = c.cqg().algebra();
    let (n, m) = (a.dim(), q.dim());
    let aq = tensor_algebra(a, q);
    let gns = GnsRepresentation::new(a, &a.canonical_functional(), tol)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut reports = Vec::new();
    if trials == 0 {
        return Ok(reports);
    }

    let mut worst = f64::INFINITY;
    let mut asym = 0.0f64;
    for _ in 0..trials {
        let g = random_element::<S>(&mut rng, n * m);
        let gg = aq.mul(&aq.star(&g), &g);
        let p = gns.positivity(&averager.apply(&gg), tol);
        worst = worst.min(p.min_eigenvalue);
        asym = asym.max(p.asymmetry);
    }
    reports.push(
        Report::condition("psi.positive", asym, asym <= tol && worst >= -tol)
            .with_witness(Witness::Value(worst))
            .with_notes(format!("{trials} trials; witness = min eigenvalue of Ψ(G*G)")),
    );

    for k in 2..=n {
        let mut worst = f64::INFINITY;
        let mut asym = 0.0f64;
        for _ in 0..trials {
            let x: Vec<Vec<Vec<S>>> = (0..k)
                .map(|_| (0..k).map(|_| random_element(&mut rng, n * m)).collect())
                .collect();
            let stars: Vec<Vec<Vec<S>>> = x.iter().map(|row| row.iter().map(|e| aq.star(e)).collect()).collect();
            let blocks: Vec<Vec<Element<S>>> = (0..k)
                .map(|i| {
                    (0..k)
                        .map(|j| {
                            let mut acc = vec![S::zero(); n * m];
                            for l in 0..k {
                                aq.mul_into(&mut acc, &stars[l][i], &x[l][j]);
                            }
                            averager.apply(&acc)
                        })
                        .collect()
                })
                .collect();
            let p = gns.block_positivity(&blocks, tol);
            worst = worst.min(p.min_eigenvalue);
            asym = asym.max(p.asymmetry);
        }
        reports.push(
            Report::condition(format!("psi.positive_k{k}"), asym, asym <= tol && worst >= -tol)
                .with_witness(Witness::Value(worst))
                .with_notes(format!("{trials} trials of {k}x{k} matrices")),
        );
    }
    Ok(reports)
}

/// Group average of the pullbacks of `g`, computed directly from the
/// provenance action table: with `P_g(δ_x) = δ_{g·x}` acting on `A` and on
/// `A⊗A`, `⟨⟨ω,η⟩⟩' = |G|⁻¹ Σ_g P_g⁻¹(⟨⟨P_g ω, P_g η⟩⟩)`. Calculi without an
/// embedding must be spanned by edge forms `e_xy`, which `P_g` permutes.
pub fn classical_average_oracle<S: Scalar>(c: &Coaction<S>, g: &InnerProduct<S>) -> Result<InnerProduct<S>> {
    let action = c.provenance().ok_or(Error::NotClassical)?;
    let calc = g.calculus();
    let n = g.base().dim();
    if action.points() != n {
        return Err(Error::Inconsistent(format!(
            "action moves {} points but the base algebra has dimension {n}",
            action.points()
        )));
    }
    let group = action.group();
    let k = calc.dim();
    let order = group.order();
    let scale = S::ratio(1, order as i64);
    let edges = match calc.embedding() {
        Some(_) => None,
        None => Some(edge_labels(calc)?),
    };

    let mut gram = vec![g.base().zero(); k * k];
    for el in 0..order {
        let moved: Vec<Vec<S>> = match (&edges, calc.embedding()) {
            (Some(edges), _) => edges
                .iter()
                .map(|&(x, y)| {
                    let target = (action.act(el, x), action.act(el, y));
                    let j = edges
                        .iter()
                        .position(|&e| e == target)
                        .ok_or_else(|| Error::Inconsistent("edge set is not invariant under the action".into()))?;
                    Ok(calc.basis(j))
                })
                .collect::<Result<_>>()?,
            (None, Some(emb)) => (0..k)
                .map(|j| {
                    let x = emb.matrix.column(j);
                    let mut y = vec![S::zero(); n * n];
                    for (ab, v) in x.into_iter().enumerate() {
                        let (a, b) = (ab / n, ab % n);
                        y[action.act(el, a) * n + action.act(el, b)] = v;
                    }
                    emb.coords.iter().map(|&i| y[i].clone()).collect()
                })
                .collect(),
            (None, None) => unreachable!("edge labels are computed when there is no embedding"),
        };
        let back = group.inverse(el);
        for i in 0..k {
            for j in 0..k {
                let value = g.inner(&moved[i], &moved[j]);
                let slot = &mut gram[i * k + j];
                for (x, v) in value.iter().enumerate() {
                    let target = action.act(back, x);
                    slot[target] = slot[target].add_ref(&v.mul_ref(&scale));
                }
            }
        }
    }
    g.with_gram(gram)
}

/// For a calculus on `C(X)` without an embedding, the edge `(x, y)` of each
/// basis form, i.e. the unique pair with `δ_x·ω_j·δ_y = ω_j`.
fn edge_labels<S: Scalar>(calc: &Calculus<S>) -> Result<Vec<(usize, usize)>> {
    let a = calc.base();
    let n = a.dim();
    (0..calc.dim())
        .map(|j| {
            let w = calc.basis(j);
            let fixes = |x: usize, y: usize| calc.right_act(&calc.left_act(&a.basis(x), &w), &a.basis(y)) == w;
            let mut found = (0..n)
                .flat_map(|x| (0..n).map(move |y| (x, y)))
                .filter(|&(x, y)| fixes(x, y));
            match (found.next(), found.next()) {
                (Some(e), None) => Ok(e),
                _ => Err(Error::Inconsistent(
                    "oracle needs a calculus embedded in A⊗A or spanned by edges".into(),
                )),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Functional;
    use crate::calculus::{lift_coaction, universal_calculus};
    use crate::gallery::{
        build_classical_coaction, build_group_algebra, build_regular_coaction, complete_edges, edge_metric,
        gallery_case,
    };
    use crate::group::{FiniteGroup, GroupAction};
    use crate::scalar::GaussRat;

    fn q(n: i64, d: i64) -> GaussRat {
        GaussRat::ratio(n, d)
    }

    /// Diagonal weights of an edge metric, read back from the Gram entries.
    fn weights(g: &InnerProduct<GaussRat>, edges: &[(usize, usize)]) -> Vec<GaussRat> {
        edges
            .iter()
            .enumerate()
            .map(|(j, &(_, y))| g.entry(j, j)[y].clone())
            .collect()
    }

    fn averaged(case: &str) -> (crate::gallery::GalleryCase<GaussRat>, InnerProduct<GaussRat>) {
        let case = gallery_case::<GaussRat>(case, 0.0).unwrap();
        let avg = average_inner_product(&case.lifted, &case.metric, 0.0).unwrap();
        (case, avg)
    }

    #[test]
    fn free_gram_requires_embedding_shape() {
        let a: StarAlgebra<GaussRat> = StarAlgebra::functions_on_points(vec!["a".into(), "b".into()]);
        let calc = crate::calculus::universal_calculus(&a, 0.0);
        let bad = vec![vec![a.zero()]];
        assert!(matches!(
            InnerProduct::from_free_gram(calc, &bad),
            Err(Error::Inconsistent(_))
        ));
    }

    #[test]
    fn psi_on_point_functions_matches_translation() {
        // Ψ(δ_x⊗δ_q) = δ_{q⁻¹·x} / |G| for a classical coaction
        let action = GroupAction::natural_symmetric(3);
        let c = build_classical_coaction::<GaussRat>(&action, 0.0).unwrap();
        let averager = Averager::new(&c, 0.0).unwrap();
        let g = action.group();
        for x in 0..3 {
            for k in 0..6 {
                let mut f = vec![q(0, 1); 18];
                f[x * 6 + k] = q(1, 1);
                let expected: Vec<_> = (0..3)
                    .map(|p| {
                        if p == action.act(g.inverse(k), x) {
                            q(1, 6)
                        } else {
                            q(0, 1)
                        }
                    })
                    .collect();
                assert_eq!(averager.apply(&f), expected);
            }
        }
    }

    #[test]
    fn psi_of_f_tensor_one_is_the_haar_slice() {
        let c = build_classical_coaction::<GaussRat>(&GroupAction::rotation(2), 0.0).unwrap();
        // δ1⊗1 = δ1⊗δ_e + δ1⊗δ_s
        let f = vec![q(1, 1), q(1, 1), q(0, 1), q(0, 1)];
        assert_eq!(psi(&c, &f, 0.0).unwrap(), vec![q(1, 2), q(1, 2)]);
    }

    #[test]
    fn non_kac_data_is_refused() {
        let h = build_group_algebra::<GaussRat>(&FiniteGroup::symmetric(3), 0.0).unwrap();
        let t = (0..6).find(|&g| h.algebra().labels()[g] == "λ102").unwrap();
        let bad = h.with_haar_unchecked(Functional::new((0..6).map(|g| q((g == t) as i64, 1)).collect()));
        let c = build_regular_coaction(&bad);
        assert!(matches!(Averager::new(&c, 0.0), Err(Error::NotKac(_))));
    }

    #[test]
    fn trivial_quantum_group_leaves_metrics_alone() {
        let (case, avg) = averaged("trivial");
        assert_eq!(avg.gram(), case.metric.gram());
    }

    #[test]
    fn swap_averages_weights() {
        let (_, avg) = averaged("z2_swap");
        assert_eq!(weights(&avg, &complete_edges(2)), vec![q(2, 1), q(2, 1)]);
    }

    #[test]
    fn s3_averages_every_edge_to_the_mean() {
        let (case, avg) = averaged("s3_points");
        assert_eq!(weights(&avg, &complete_edges(3)), vec![q(7, 2); 6]);
        assert!(check_hermitian_module(&avg, 0.0).iter().all(|r| r.pass));
        assert_eq!(check_equivariance(&case.lifted, &avg, 0.0).residual, 0.0);
        assert_eq!(check_idempotence(&case.lifted, &avg, 0.0).unwrap().residual, 0.0);
    }

    #[test]
    fn input_metric_is_not_equivariant_but_average_is() {
        let (case, avg) = averaged("z2_swap");
        assert!(!check_equivariance(&case.lifted, &case.metric, 0.0).pass);
        assert!(check_equivariance(&case.lifted, &avg, 0.0).pass);
    }

    #[test]
    fn generic_metric_on_group_algebra() {
        let (case, avg) = averaged("z3_group_algebra");
        assert!(check_hermitian_module(&case.metric, 0.0).iter().all(|r| r.pass));
        assert!(check_equivariance(&case.lifted, &avg, 0.0).pass);
        assert!(check_idempotence(&case.lifted, &avg, 0.0).unwrap().pass);
        assert_eq!(check_definiteness(&avg, 1e-9).unwrap().verdict, Verdict::Definite);
    }

    #[test]
    fn definiteness_verdicts() {
        let base = StarAlgebra::functions_on_points(vec!["a".into(), "b".into()]);
        let calc = universal_calculus(&base, 0.0);
        let edges = complete_edges(2);
        let verdict = |w: [i64; 2]| {
            let g = edge_metric(calc.clone(), &edges, &[q(w[0], 1), q(w[1], 1)]).unwrap();
            check_definiteness(&g, 1e-9).unwrap().verdict
        };
        assert_eq!(verdict([1, 1]), Verdict::Definite);
        assert_eq!(verdict([1, 0]), Verdict::Semidefinite);
        assert_eq!(verdict([1, -1]), Verdict::Indefinite);
    }

    #[test]
    fn zero_weight_is_filled_by_a_transitive_average() {
        let c = build_classical_coaction::<GaussRat>(&GroupAction::rotation(2), 0.0).unwrap();
        let calc = universal_calculus(c.base(), 0.0);
        let lifted = lift_coaction(&c, &calc, 0.0).unwrap();
        let g = edge_metric(calc, &complete_edges(2), &[q(1, 1), q(0, 1)]).unwrap();
        let avg = average_inner_product(&lifted, &g, 0.0).unwrap();
        assert_eq!(weights(&avg, &complete_edges(2)), vec![q(1, 2), q(1, 2)]);
        assert_eq!(check_definiteness(&avg, 1e-9).unwrap().verdict, Verdict::Definite);
    }

    #[test]
    fn non_hermitian_gram_is_reported() {
        let case = gallery_case::<GaussRat>("z2_swap", 0.0).unwrap();
        let mut gram = case.metric.gram().to_vec();
        gram[1][0] = q(1, 1000);
        let bad = case.metric.with_gram(gram).unwrap();
        let reports = check_hermitian_module(&bad, 0.0);
        assert!(
            !reports
                .iter()
                .find(|r| r.check_name == "metric.hermitian")
                .unwrap()
                .pass
        );
        assert!(matches!(
            average_inner_product(&case.lifted, &bad, 0.0),
            Err(Error::InvariantViolation { .. })
        ));
    }

    #[test]
    fn averaging_map_is_completely_positive() {
        let case = gallery_case::<GaussRat>("s3_points", 0.0).unwrap();
        let reports = psi_cp_check(case.coaction(), 20, 1e-9, 3).unwrap();
        assert!(reports.iter().any(|r| r.check_name == "psi.positive_k3"));
        assert!(reports.iter().all(|r| r.pass), "{reports:?}");
    }

    #[test]
    fn oracle_agrees_on_classical_cases_and_refuses_group_algebras() {
        for name in ["z2_swap", "s3_points", "z3_cycle", "z2_regular"] {
            let (case, avg) = averaged(name);
            assert_eq!(
                classical_average_oracle(case.coaction(), &case.metric).unwrap().gram(),
                avg.gram(),
                "{name}"
            );
        }
        let case = gallery_case::<GaussRat>("s3_group_algebra", 0.0).unwrap();
        assert!(matches!(
            classical_average_oracle(case.coaction(), &case.metric),
            Err(Error::NotClassical)
        ));
    }
}
