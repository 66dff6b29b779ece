//! First-order differential calculi over a finite-dimensional algebra and the
//! lift `Γ = dα` of a coaction to one-forms.

use nalgebra::DMatrix;

use crate::algebra::StarAlgebra;
use crate::coaction::Coaction;
use crate::error::{Error, Result};
use crate::linalg::{self, nullspace, Matrix};
use crate::report::{Report, Witness};
use crate::scalar::{max_diff, Scalar, C64};

/// Realization of `Ω` inside `A ⊗ A`: column `j` of `matrix` is `ω_j`, and
/// the coordinate of any `x ∈ Ω` along `ω_j` is `x[coords[j]]`.
#[derive(Clone, Debug)]
pub struct Embedding<S> {
    pub matrix: Matrix<S>,
    pub coords: Vec<usize>,
}

/// Bimodule `Ω` with derivation `d: A → Ω`, in a fixed basis `ω_0..ω_{k-1}`.
///
/// `f·ω_j = Σ_l left[(f·k + j)·k + l] ω_l`,
/// `ω_j·f = Σ_l right[(j·n + f)·k + l] ω_l`,
/// column `i` of `diff` is `d(e_i)`.
#[derive(Clone, Debug)]
pub struct Calculus<S> {
    base: StarAlgebra<S>,
    dim: usize,
    left: Vec<S>,
    right: Vec<S>,
    diff: Matrix<S>,
    embedding: Option<Embedding<S>>,
}

impl<S: Scalar> Calculus<S> {
    pub fn new(
        base: StarAlgebra<S>,
        dim: usize,
        left: Vec<S>,
        right: Vec<S>,
        diff: Matrix<S>,
        embedding: Option<Embedding<S>>,
    ) -> Result<Self> {
        let n = base.dim();
        if left.len() != n * dim * dim || right.len() != n * dim * dim {
            return Err(Error::Inconsistent(format!(
                "bimodule action tensors must have {} entries",
                n * dim * dim
            )));
        }
        if diff.rows() != dim || diff.cols() != n {
            return Err(Error::Inconsistent(format!(
                "differential is {}x{}, expected {dim}x{n}",
                diff.rows(),
                diff.cols()
            )));
        }
        if let Some(e) = &embedding {
            if e.matrix.rows() != n * n || e.matrix.cols() != dim || e.coords.len() != dim {
                return Err(Error::Inconsistent("embedding shape does not match the module".into()));
            }
        }
        Ok(Calculus {
            base,
            dim,
            left,
            right,
            diff,
            embedding,
        })
    }

    pub fn base(&self) -> &StarAlgebra<S> {
        &self.base
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn diff(&self) -> &Matrix<S> {
        &self.diff
    }

    pub fn embedding(&self) -> Option<&Embedding<S>> {
        self.embedding.as_ref()
    }

    pub fn left_tensor(&self) -> &[S] {
        &self.left
    }

    pub fn right_tensor(&self) -> &[S] {
        &self.right
    }

    #[inline]
    pub fn left_coeff(&self, f: usize, j: usize, l: usize) -> &S {
        &self.left[(f * self.dim + j) * self.dim + l]
    }

    #[inline]
    pub fn right_coeff(&self, j: usize, f: usize, l: usize) -> &S {
        &self.right[(j * self.base.dim() + f) * self.dim + l]
    }

    pub fn d(&self, a: &[S]) -> Vec<S> {
        self.diff.apply(a)
    }

    pub fn basis(&self, j: usize) -> Vec<S> {
        let mut v = vec![S::zero(); self.dim];
        v[j] = S::one();
        v
    }

    /// `a·ω`
    pub fn left_act(&self, a: &[S], w: &[S]) -> Vec<S> {
        let k = self.dim;
        let mut out = vec![S::zero(); k];
        for (f, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in w.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x.mul_ref(y);
                for (l, o) in out.iter_mut().enumerate() {
                    let c = self.left_coeff(f, j, l);
                    if !c.is_zero() {
                        o.mul_acc(c, &xy);
                    }
                }
            }
        }
        out
    }

    /// `ω·a`
    pub fn right_act(&self, w: &[S], a: &[S]) -> Vec<S> {
        let k = self.dim;
        let mut out = vec![S::zero(); k];
        for (j, y) in w.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            for (f, x) in a.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let xy = y.mul_ref(x);
                for (l, o) in out.iter_mut().enumerate() {
                    let c = self.right_coeff(j, f, l);
                    if !c.is_zero() {
                        o.mul_acc(c, &xy);
                    }
                }
            }
        }
        out
    }

    /// `ω ∈ Ω` as an element of `A ⊗ A`, when an embedding is present.
    pub fn embed(&self, w: &[S]) -> Option<Vec<S>> {
        self.embedding.as_ref().map(|e| e.matrix.apply(w))
    }
}

/// Universal calculus `Ω = ker(m: A⊗A → A)` with `f·(a⊗b) = fa⊗b`,
/// `(a⊗b)·f = a⊗bf` and `d f = 1⊗f − f⊗1`.
pub fn universal_calculus<S: Scalar>(base: &StarAlgebra<S>, tol: f64) -> Calculus<S> {
    let n = base.dim();
    let mult = Matrix::from_fn(n, n * n, |k, ab| base.mult_coeff(ab / n, ab % n, k).clone());
    let (kernel, coords) = nullspace(&mult, tol);
    let k = kernel.len();
    let embedding = Embedding {
        matrix: Matrix::from_columns(n * n, &kernel),
        coords,
    };
    let read = |x: &[S]| -> Vec<S> { embedding.coords.iter().map(|&c| x[c].clone()).collect() };

    let mut left = vec![S::zero(); n * k * k];
    let mut right = vec![S::zero(); n * k * k];
    for (j, w) in kernel.iter().enumerate() {
        for f in 0..n {
            let mut fl = vec![S::zero(); n * n];
            let mut fr = vec![S::zero(); n * n];
            for (ab, c) in w.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (a, b) = (ab / n, ab % n);
                for (p, d) in base.basis_product(f, a) {
                    fl[p * n + b].mul_acc(c, d);
                }
                for (p, d) in base.basis_product(b, f) {
                    fr[a * n + p].mul_acc(c, d);
                }
            }
            for (l, v) in read(&fl).into_iter().enumerate() {
                left[(f * k + j) * k + l] = v;
            }
            for (l, v) in read(&fr).into_iter().enumerate() {
                right[(j * n + f) * k + l] = v;
            }
        }
    }

    let unit = base.unit();
    let diff_cols: Vec<Vec<S>> = (0..n)
        .map(|i| {
            let mut x = vec![S::zero(); n * n];
            for a in 0..n {
                x[a * n + i] = x[a * n + i].add_ref(&unit[a]);
                x[i * n + a] = x[i * n + a].sub_ref(&unit[a]);
            }
            read(&x)
        })
        .collect();
    let diff = Matrix::from_columns(k, &diff_cols);
    Calculus::new(base.clone(), k, left, right, diff, Some(embedding)).expect("shapes agree by construction")
}

/// Bimodule laws, Leibniz rule and generation by `{f·dg}`.
pub fn check_calculus<S: Scalar>(calc: &Calculus<S>, tol: f64) -> Vec<Report> {
    let a = calc.base();
    let (n, k) = (a.dim(), calc.dim());
    let basis: Vec<_> = (0..n).map(|i| a.basis(i)).collect();
    let forms: Vec<_> = (0..k).map(|j| calc.basis(j)).collect();

    let mut bimodule = 0.0f64;
    let mut left_mod = 0.0f64;
    let mut right_mod = 0.0f64;
    let mut unit = 0.0f64;
    for w in &forms {
        unit = unit
            .max(max_diff(&calc.left_act(a.unit(), w), w))
            .max(max_diff(&calc.right_act(w, a.unit()), w));
        for f in &basis {
            let fw = calc.left_act(f, w);
            let wf = calc.right_act(w, f);
            for g in &basis {
                bimodule = bimodule.max(max_diff(
                    &calc.right_act(&fw, g),
                    &calc.left_act(f, &calc.right_act(w, g)),
                ));
                left_mod = left_mod.max(max_diff(
                    &calc.left_act(&a.mul(f, g), w),
                    &calc.left_act(f, &calc.left_act(g, w)),
                ));
                right_mod = right_mod.max(max_diff(&calc.right_act(w, &a.mul(f, g)), &calc.right_act(&wf, g)));
            }
        }
    }

    let mut leibniz = 0.0f64;
    let mut spanning = Vec::with_capacity(n * n);
    for f in &basis {
        for g in &basis {
            let lhs = calc.d(&a.mul(f, g));
            let dfg = calc.right_act(&calc.d(f), g);
            let fdg = calc.left_act(f, &calc.d(g));
            let rhs: Vec<S> = dfg.iter().zip(&fdg).map(|(x, y)| x.add_ref(y)).collect();
            leibniz = leibniz.max(max_diff(&lhs, &rhs));
            spanning.push(fdg);
        }
    }
    let rank = if k == 0 {
        0
    } else {
        linalg::rank(&Matrix::from_columns(k, &spanning), tol)
    };

    vec![
        Report::residual("calculus.bimodule", bimodule, tol),
        Report::residual("calculus.left_module", left_mod, tol),
        Report::residual("calculus.right_module", right_mod, tol),
        Report::residual("calculus.unit_action", unit, tol),
        Report::residual("calculus.leibniz", leibniz, tol),
        Report::condition("calculus.generation", (k - rank) as f64, rank == k)
            .with_witness(Witness::Value(rank as f64))
            .with_notes(format!("span of f·dg has rank {rank} of {k}")),
    ]
}

/// Coaction together with its lift to one-forms. `gamma` is a
/// `(k · dim Q) × k` matrix; column `j` is `Γ(ω_j)` in the basis `ω_l ⊗ f_q`
/// with index `l * dim Q + q`.
#[derive(Clone, Debug)]
pub struct LiftedCoaction<S> {
    calculus: Calculus<S>,
    coaction: Coaction<S>,
    gamma: Matrix<S>,
}

impl<S: Scalar> LiftedCoaction<S> {
    /// Accepts a supplied `Γ` after verifying every covariance invariant.
    pub fn with_gamma(calculus: Calculus<S>, coaction: Coaction<S>, gamma: Matrix<S>, tol: f64) -> Result<Self> {
        let (k, m) = (calculus.dim(), coaction.cqg().dim());
        if gamma.rows() != k * m || gamma.cols() != k {
            return Err(Error::Inconsistent(format!(
                "lifted coaction is {}x{}, expected {}x{k}",
                gamma.rows(),
                gamma.cols(),
                k * m
            )));
        }
        let lifted = LiftedCoaction {
            calculus,
            coaction,
            gamma,
        };
        lifted.ensure_covariant(tol)?;
        Ok(lifted)
    }

    /// Wraps without verification; used for defect injection and tests.
    pub fn unchecked(calculus: Calculus<S>, coaction: Coaction<S>, gamma: Matrix<S>) -> Self {
        LiftedCoaction {
            calculus,
            coaction,
            gamma,
        }
    }

    fn ensure_covariant(&self, tol: f64) -> Result<()> {
        if let Some(bad) = check_lift(self, tol).into_iter().find(|r| !r.pass) {
            return Err(Error::NotCovariant {
                reason: format!("{} fails", bad.check_name),
                residual: bad.residual,
            });
        }
        Ok(())
    }

    pub fn calculus(&self) -> &Calculus<S> {
        &self.calculus
    }

    pub fn coaction(&self) -> &Coaction<S> {
        &self.coaction
    }

    pub fn gamma(&self) -> &Matrix<S> {
        &self.gamma
    }

    pub fn apply(&self, w: &[S]) -> Vec<S> {
        self.gamma.apply(w)
    }

    /// Nonzero terms `(l, q, c)` of `Γ(ω_j) = Σ c ω_l ⊗ f_q`.
    pub fn terms(&self, j: usize) -> Vec<(usize, usize, S)> {
        let m = self.coaction.cqg().dim();
        (0..self.gamma.rows())
            .filter_map(|lq| {
                let c = self.gamma.get(lq, j);
                (!c.is_zero()).then(|| (lq / m, lq % m, c.clone()))
            })
            .collect()
    }
}

/// `X·Y` for `X ∈ Ω⊗Q`, `Y ∈ A⊗Q`.
fn form_times_function<S: Scalar>(calc: &Calculus<S>, q: &StarAlgebra<S>, x: &[S], y: &[S]) -> Vec<S> {
    let (n, k, m) = (calc.base().dim(), calc.dim(), q.dim());
    let mut out = vec![S::zero(); k * m];
    for (lq, c) in x.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (l, qi) = (lq / m, lq % m);
        for (ps, d) in y.iter().enumerate() {
            if d.is_zero() {
                continue;
            }
            let (p, s) = (ps / m, ps % m);
            let cd = c.mul_ref(d);
            for l2 in 0..k {
                let r = calc.right_coeff(l, p, l2);
                if r.is_zero() {
                    continue;
                }
                let rcd = r.mul_ref(&cd);
                for (t, e) in q.basis_product(qi, s) {
                    out[l2 * m + t].mul_acc(e, &rcd);
                }
            }
        }
    }
    debug_assert_eq!(n * m, y.len());
    out
}

/// `Y·X` for `Y ∈ A⊗Q`, `X ∈ Ω⊗Q`.
fn function_times_form<S: Scalar>(calc: &Calculus<S>, q: &StarAlgebra<S>, y: &[S], x: &[S]) -> Vec<S> {
    let (k, m) = (calc.dim(), q.dim());
    let mut out = vec![S::zero(); k * m];
    for (ps, d) in y.iter().enumerate() {
        if d.is_zero() {
            continue;
        }
        let (p, s) = (ps / m, ps % m);
        for (lq, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (l, qi) = (lq / m, lq % m);
            let cd = d.mul_ref(c);
            for l2 in 0..k {
                let r = calc.left_coeff(p, l, l2);
                if r.is_zero() {
                    continue;
                }
                let rcd = r.mul_ref(&cd);
                for (t, e) in q.basis_product(s, qi) {
                    out[l2 * m + t].mul_acc(e, &rcd);
                }
            }
        }
    }
    out
}

/// Lifts `α` to one-forms. With an embedding `Ω ⊆ A⊗A`, `Γ` is the
/// restriction of `(id⊗id⊗m_Q)(id⊗σ⊗id)(α⊗α)`; otherwise it is solved from the
/// linear compatibility and covariance constraints. The result is verified
/// against every covariance invariant.
pub fn lift_coaction<S: Scalar>(c: &Coaction<S>, calc: &Calculus<S>, tol: f64) -> Result<LiftedCoaction<S>> {
    if c.base().dim() != calc.base().dim() {
        return Err(Error::Inconsistent(
            "coaction and calculus live on different algebras".into(),
        ));
    }
    let gamma = match calc.embedding() {
        Some(e) => restrict_tensor_square(c, calc, e, tol)?,
        None => solve_for_gamma(c, calc, tol)?,
    };
    LiftedCoaction::with_gamma(calc.clone(), c.clone(), gamma, tol)
}

fn restrict_tensor_square<S: Scalar>(
    c: &Coaction<S>,
    calc: &Calculus<S>,
    emb: &Embedding<S>,
    tol: f64,
) -> Result<Matrix<S>> {
    let q = c.cqg().algebra();
    let (n, k, m) = (c.base().dim(), calc.dim(), q.dim());
    let alpha_terms: Vec<_> = (0..n).map(|i| c.terms(i)).collect();
    let mut columns = Vec::with_capacity(k);
    let mut leak = 0.0f64;
    for j in 0..k {
        // x[(p·n + r)·m + t] = coefficient of e_p ⊗ e_r ⊗ f_t
        let mut x = vec![S::zero(); n * n * m];
        for ab in 0..n * n {
            let w = emb.matrix.get(ab, j);
            if w.is_zero() {
                continue;
            }
            let (a, b) = (ab / n, ab % n);
            for (p, qa, ca) in &alpha_terms[a] {
                let wc = w.mul_ref(ca);
                for (r, qb, cb) in &alpha_terms[b] {
                    let wcc = wc.mul_ref(cb);
                    for (t, e) in q.basis_product(*qa, *qb) {
                        x[(p * n + r) * m + t].mul_acc(e, &wcc);
                    }
                }
            }
        }
        let mut col = vec![S::zero(); k * m];
        for t in 0..m {
            let slice: Vec<S> = (0..n * n).map(|pr| x[pr * m + t].clone()).collect();
            let coords: Vec<S> = emb.coords.iter().map(|&i| slice[i].clone()).collect();
            leak = leak.max(max_diff(&emb.matrix.apply(&coords), &slice));
            for (l, v) in coords.into_iter().enumerate() {
                col[l * m + t] = v;
            }
        }
        columns.push(col);
    }
    if leak > tol {
        return Err(Error::NotCovariant {
            reason: "tensor-square lift leaves the module".into(),
            residual: leak,
        });
    }
    Ok(Matrix::from_columns(k * m, &columns))
}

/// Solves the linear constraints `Γ(de_i) = (d⊗id)α(e_i)`,
/// `Γ(ω_j·e_f) = Γ(ω_j)α(e_f)` and `Γ(e_f·ω_j) = α(e_f)Γ(ω_j)` for `Γ`.
fn solve_for_gamma<S: Scalar>(c: &Coaction<S>, calc: &Calculus<S>, tol: f64) -> Result<Matrix<S>> {
    let q = c.cqg().algebra();
    let (n, k, m) = (c.base().dim(), calc.dim(), q.dim());
    let unknowns = k * k * m;
    // Γ[(l, q), j] is unknown number (j·k + l)·m + q.
    let var = |j: usize, l: usize, t: usize| (j * k + l) * m + t;
    let mut rows: Vec<Vec<S>> = Vec::new();
    let mut rhs: Vec<S> = Vec::new();

    for i in 0..n {
        let mut target = vec![S::zero(); k * m];
        for (p, t, coef) in c.terms(i) {
            for l in 0..k {
                target[l * m + t].mul_acc(&coef, calc.diff().get(l, p));
            }
        }
        for l in 0..k {
            for t in 0..m {
                let mut row = vec![S::zero(); unknowns];
                for j in 0..k {
                    row[var(j, l, t)] = calc.diff().get(j, i).clone();
                }
                rows.push(row);
                rhs.push(target[l * m + t].clone());
            }
        }
    }

    let alphas: Vec<Vec<S>> = (0..n).map(|f| c.apply(&c.base().basis(f))).collect();
    for j in 0..k {
        for (f, alpha_f) in alphas.iter().enumerate() {
            let mut right_rows = vec![vec![S::zero(); unknowns]; k * m];
            let mut left_rows = vec![vec![S::zero(); unknowns]; k * m];
            for j2 in 0..k {
                let r = calc.right_coeff(j, f, j2);
                let lft = calc.left_coeff(f, j, j2);
                for l2 in 0..k {
                    for t in 0..m {
                        if !r.is_zero() {
                            let slot = &mut right_rows[l2 * m + t][var(j2, l2, t)];
                            *slot = slot.add_ref(r);
                        }
                        if !lft.is_zero() {
                            let slot = &mut left_rows[l2 * m + t][var(j2, l2, t)];
                            *slot = slot.add_ref(lft);
                        }
                    }
                }
            }
            for l in 0..k {
                for qi in 0..m {
                    let mut unit_form = vec![S::zero(); k * m];
                    unit_form[l * m + qi] = S::one();
                    let rt = form_times_function(calc, q, &unit_form, alpha_f);
                    let lt = function_times_form(calc, q, alpha_f, &unit_form);
                    for (idx, v) in rt.iter().enumerate() {
                        if !v.is_zero() {
                            let slot = &mut right_rows[idx][var(j, l, qi)];
                            *slot = slot.sub_ref(v);
                        }
                    }
                    for (idx, v) in lt.iter().enumerate() {
                        if !v.is_zero() {
                            let slot = &mut left_rows[idx][var(j, l, qi)];
                            *slot = slot.sub_ref(v);
                        }
                    }
                }
            }
            for row in right_rows.into_iter().chain(left_rows) {
                rows.push(row);
                rhs.push(S::zero());
            }
        }
    }

    let system = Matrix::from_rows(unknowns, &rows);
    let Some(x) = linalg::solve(&system, &rhs, tol) else {
        return Err(Error::NotCovariant {
            reason: "linear covariance constraints are inconsistent".into(),
            residual: least_squares_residual(&system, &rhs),
        });
    };
    Ok(Matrix::from_fn(k * m, k, |lq, j| x[var(j, lq / m, lq % m)].clone()))
}

fn least_squares_residual<S: Scalar>(system: &Matrix<S>, rhs: &[S]) -> f64 {
    let a = system.to_c64();
    let b = DMatrix::from_iterator(rhs.len(), 1, rhs.iter().map(Scalar::to_c64));
    let svd = a.clone().svd(true, true);
    match svd.solve(&b, 1e-12) {
        Ok(x) => (a * x - b).iter().map(|z: &C64| z.norm()).fold(0.0, f64::max),
        Err(_) => f64::INFINITY,
    }
}

/// Compatibility with `d`, bimodule covariance and coassociativity of `Γ`.
pub fn check_lift<S: Scalar>(lifted: &LiftedCoaction<S>, tol: f64) -> Vec<Report> {
    let calc = lifted.calculus();
    let c = lifted.coaction();
    let h = c.cqg();
    let q = h.algebra();
    let (n, k, m) = (calc.base().dim(), calc.dim(), q.dim());
    let basis: Vec<_> = (0..n).map(|i| calc.base().basis(i)).collect();
    let alphas: Vec<_> = basis.iter().map(|e| c.apply(e)).collect();
    let gammas: Vec<_> = (0..k).map(|j| lifted.apply(&calc.basis(j))).collect();

    let mut compat = 0.0f64;
    for (i, e) in basis.iter().enumerate() {
        let lhs = lifted.apply(&calc.d(e));
        let mut rhs = vec![S::zero(); k * m];
        for (p, t, coef) in c.terms(i) {
            for l in 0..k {
                rhs[l * m + t].mul_acc(&coef, calc.diff().get(l, p));
            }
        }
        compat = compat.max(max_diff(&lhs, &rhs));
    }

    let mut right_cov = 0.0f64;
    let mut left_cov = 0.0f64;
    for j in 0..k {
        let w = calc.basis(j);
        for (f, e) in basis.iter().enumerate() {
            let lhs = lifted.apply(&calc.right_act(&w, e));
            right_cov = right_cov.max(max_diff(&lhs, &form_times_function(calc, q, &gammas[j], &alphas[f])));
            let lhs = lifted.apply(&calc.left_act(e, &w));
            left_cov = left_cov.max(max_diff(&lhs, &function_times_form(calc, q, &alphas[f], &gammas[j])));
        }
    }

    let mut coassoc = 0.0f64;
    for j in 0..k {
        let mut left = vec![S::zero(); k * m * m];
        let mut right = vec![S::zero(); k * m * m];
        for (l, r, coef) in lifted.terms(j) {
            for (l2, s, d) in lifted.terms(l) {
                left[(l2 * m + s) * m + r].mul_acc(&coef, &d);
            }
            for (s, t, d) in h.delta_terms(r) {
                right[(l * m + s) * m + t].mul_acc(&coef, &d);
            }
        }
        coassoc = coassoc.max(max_diff(&left, &right));
    }

    vec![
        Report::residual("lift.compatibility", compat, tol),
        Report::residual("lift.right_covariance", right_cov, tol),
        Report::residual("lift.left_covariance", left_cov, tol),
        Report::residual("lift.coassociativity", coassoc, tol),
    ]
}

/// `(id⊗ε)∘Γ = id_Ω` on a basis of `Ω`.
pub fn check_counit_section<S: Scalar>(lifted: &LiftedCoaction<S>, tol: f64) -> Report {
    let calc = lifted.calculus();
    let eps = lifted.coaction().cqg().counit();
    let m = eps.dim();
    let mut worst = 0.0f64;
    for j in 0..calc.dim() {
        let g = lifted.apply(&calc.basis(j));
        let mut sliced = vec![S::zero(); calc.dim()];
        for (lq, v) in g.iter().enumerate() {
            sliced[lq / m].mul_acc(v, &eps.coeffs[lq % m]);
        }
        worst = worst.max(max_diff(&sliced, &calc.basis(j)));
    }
    Report::residual("lift.counit_section", worst, tol)
}

/// Calculus laws, lift invariants and the counit section.
pub fn calculus_suite<S: Scalar>(lifted: &LiftedCoaction<S>, tol: f64) -> Vec<Report> {
    let mut reports = check_calculus(lifted.calculus(), tol);
    reports.extend(check_lift(lifted, tol));
    reports.push(check_counit_section(lifted, tol));
    reports
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::{build_classical_coaction, build_group_algebra, graph_calculus};
    use crate::group::{FiniteGroup, GroupAction};
    use crate::scalar::GaussRat;

    fn q(n: i64) -> GaussRat {
        GaussRat::from_i64(n)
    }

    fn points(n: usize) -> StarAlgebra<GaussRat> {
        StarAlgebra::functions_on_points((1..=n).map(|i| format!("x{i}")).collect())
    }

    #[test]
    fn two_points_give_two_edges() {
        let calc = universal_calculus(&points(2), 0.0);
        assert_eq!(calc.dim(), 2);
        // basis e12, e21; dδ1 = e21 − e12
        assert_eq!(calc.d(&[q(1), q(0)]), vec![q(-1), q(1)]);
        assert_eq!(calc.embed(&calc.basis(0)).unwrap(), vec![q(0), q(1), q(0), q(0)]);
        assert!(check_calculus(&calc, 0.0).iter().all(|r| r.pass));
    }

    #[test]
    fn dimensions_of_universal_calculi() {
        assert_eq!(universal_calculus(&StarAlgebra::<GaussRat>::scalars(), 0.0).dim(), 0);
        let c3 = universal_calculus(&points(3), 0.0);
        assert_eq!(c3.dim(), 6);
        assert!(check_calculus(&c3, 0.0).iter().all(|r| r.pass));
        let s3 = build_group_algebra::<GaussRat>(&FiniteGroup::symmetric(3), 0.0).unwrap();
        assert_eq!(universal_calculus(s3.algebra(), 0.0).dim(), 30);
    }

    #[test]
    fn bimodule_actions_on_edges() {
        let calc = universal_calculus(&points(3), 0.0);
        // e_xy in lexicographic order: 12 13 21 23 31 32
        let e23 = calc.basis(3);
        let delta = |i: usize| (0..3).map(|k| q((k == i) as i64)).collect::<Vec<_>>();
        assert_eq!(calc.left_act(&delta(1), &e23), e23);
        assert_eq!(calc.left_act(&delta(2), &e23), vec![q(0); 6]);
        assert_eq!(calc.right_act(&e23, &delta(2)), e23);
        assert_eq!(calc.right_act(&e23, &delta(1)), vec![q(0); 6]);
    }

    #[test]
    fn perturbed_differential_breaks_leibniz() {
        let calc = universal_calculus(&points(2), 0.0);
        let mut diff = calc.diff().clone();
        diff.set(0, 0, q(2));
        let bad = Calculus::new(
            calc.base().clone(),
            2,
            calc.left_tensor().to_vec(),
            calc.right_tensor().to_vec(),
            diff,
            None,
        )
        .unwrap();
        assert!(check_calculus(&bad, 0.0).iter().any(|r| !r.pass));
    }

    #[test]
    fn swap_lifts_edges_to_their_images() {
        let c = build_classical_coaction::<GaussRat>(&GroupAction::rotation(2), 0.0).unwrap();
        let calc = universal_calculus(c.base(), 0.0);
        let lifted = lift_coaction(&c, &calc, 0.0).unwrap();
        // Γ(e12) = e12⊗δ_e + e21⊗δ_s, index l·2 + q
        assert_eq!(lifted.apply(&calc.basis(0)), vec![q(1), q(0), q(0), q(1)]);
        assert_eq!(lifted.apply(&calc.basis(1)), vec![q(0), q(1), q(1), q(0)]);
        assert!(calculus_suite(&lifted, 0.0).iter().all(|r| r.pass));
        assert_eq!(check_counit_section(&lifted, 0.0).residual, 0.0);
    }

    #[test]
    fn one_directed_edge_is_not_swap_covariant() {
        let c = build_classical_coaction::<GaussRat>(&GroupAction::rotation(2), 0.0).unwrap();
        let calc = graph_calculus(c.base(), &[(0, 1)]).unwrap();
        assert!(matches!(lift_coaction(&c, &calc, 0.0), Err(Error::NotCovariant { .. })));
    }

    #[test]
    fn directed_cycle_is_rotation_covariant() {
        let c = build_classical_coaction::<GaussRat>(&GroupAction::rotation(3), 0.0).unwrap();
        let calc = graph_calculus(c.base(), &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(check_calculus(&calc, 0.0).iter().all(|r| r.pass));
        let lifted = lift_coaction(&c, &calc, 0.0).unwrap();
        assert!(calculus_suite(&lifted, 0.0).iter().all(|r| r.pass));
    }

    #[test]
    fn supplied_gamma_is_verified() {
        let c = build_classical_coaction::<GaussRat>(&GroupAction::rotation(2), 0.0).unwrap();
        let calc = universal_calculus(c.base(), 0.0);
        let good = lift_coaction(&c, &calc, 0.0).unwrap();
        assert!(LiftedCoaction::with_gamma(calc.clone(), c.clone(), good.gamma().clone(), 0.0).is_ok());
        let mut gamma = good.gamma().clone();
        gamma.set(0, 0, q(0));
        assert!(matches!(
            LiftedCoaction::with_gamma(calc, c, gamma, 0.0),
            Err(Error::NotCovariant { .. })
        ));
    }
}
