//! Finite-dimensional *-algebras given by structure tensors, linear
//! functionals on them, and positivity through the GNS representation of a
//! faithful functional.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::report::{Report, Witness};
use crate::scalar::{max_diff, Scalar, C64};

/// Coordinate vector of an algebra element.
pub type Element<S> = Vec<S>;

/// Associative unital algebra with an antilinear involution.
///
/// `e_i e_j = Σ_k mult[i][j][k] e_k`; `e_i* = Σ_j star[i][j] e_j`, and a
/// general element is starred by conjugating its coefficients first.
#[derive(Clone, Debug)]
pub struct StarAlgebra<S> {
    labels: Vec<String>,
    mult: Vec<S>,
    unit: Element<S>,
    star: Matrix<S>,
    /// Nonzero terms of each basis product, indexed by `i * dim + j`.
    products: Vec<Vec<(usize, S)>>,
}

impl<S: Scalar> StarAlgebra<S> {
    /// `mult` is the flattened tensor with index `(i * dim + j) * dim + k`.
    pub fn new(labels: Vec<String>, mult: Vec<S>, unit: Element<S>, star: Matrix<S>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Inconsistent("algebra must have positive dimension".into()));
        }
        if mult.len() != n * n * n {
            return Err(Error::Inconsistent(format!(
                "multiplication tensor has {} entries, expected {}",
                mult.len(),
                n * n * n
            )));
        }
        if unit.len() != n {
            return Err(Error::Inconsistent(format!(
                "unit has length {}, expected {n}",
                unit.len()
            )));
        }
        if star.rows() != n || star.cols() != n {
            return Err(Error::Inconsistent(format!(
                "star matrix is {}x{}, expected {n}x{n}",
                star.rows(),
                star.cols()
            )));
        }
        let products = (0..n * n)
            .map(|ij| {
                (0..n)
                    .filter_map(|k| {
                        let c = &mult[ij * n + k];
                        (!c.is_zero()).then(|| (k, c.clone()))
                    })
                    .collect()
            })
            .collect();
        Ok(StarAlgebra {
            labels,
            mult,
            unit,
            star,
            products,
        })
    }

    /// Builds an algebra from a rule giving the nonzero terms of each basis
    /// product and of each basis star.
    pub fn from_rules(
        labels: Vec<String>,
        unit: Element<S>,
        product: impl Fn(usize, usize) -> Vec<(usize, S)>,
        star: impl Fn(usize) -> Vec<(usize, S)>,
    ) -> Result<Self> {
        let n = labels.len();
        let mut mult = vec![S::zero(); n * n * n];
        for i in 0..n {
            for j in 0..n {
                for (k, c) in product(i, j) {
                    let slot = &mut mult[(i * n + j) * n + k];
                    *slot = slot.add_ref(&c);
                }
            }
        }
        let mut star_m = Matrix::<S>::zeros(n, n);
        for i in 0..n {
            for (j, c) in star(i) {
                let v = star_m.get(i, j).add_ref(&c);
                star_m.set(i, j, v);
            }
        }
        Self::new(labels, mult, unit, star_m)
    }

    /// `C(X_n)`: functions on `n` points with pointwise product.
    pub fn functions_on_points(labels: Vec<String>) -> Self {
        let n = labels.len();
        Self::from_rules(
            labels,
            vec![S::one(); n],
            |i, j| if i == j { vec![(i, S::one())] } else { vec![] },
            |i| vec![(i, S::one())],
        )
        .expect("pointwise algebra is well-formed")
    }

    /// One-dimensional algebra of scalars.
    pub fn scalars() -> Self {
        Self::functions_on_points(vec!["1".into()])
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn mult_tensor(&self) -> &[S] {
        &self.mult
    }

    pub fn mult_coeff(&self, i: usize, j: usize, k: usize) -> &S {
        let n = self.dim();
        &self.mult[(i * n + j) * n + k]
    }

    pub fn star_matrix(&self) -> &Matrix<S> {
        &self.star
    }

    pub fn unit(&self) -> &Element<S> {
        &self.unit
    }

    pub fn basis(&self, i: usize) -> Element<S> {
        let mut v = self.zero();
        v[i] = S::one();
        v
    }

    pub fn zero(&self) -> Element<S> {
        vec![S::zero(); self.dim()]
    }

    /// Nonzero terms of `e_i e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, S)] {
        &self.products[i * self.dim() + j]
    }

    pub fn mul(&self, a: &[S], b: &[S]) -> Element<S> {
        let mut out = self.zero();
        self.mul_into(&mut out, a, b);
        out
    }

    /// `out += a b`
    pub fn mul_into(&self, out: &mut [S], a: &[S], b: &[S]) {
        let n = self.dim();
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x.mul_ref(y);
                for (k, c) in &self.products[i * n + j] {
                    out[*k].mul_acc(c, &xy);
                }
            }
        }
    }

    pub fn star(&self, a: &[S]) -> Element<S> {
        let n = self.dim();
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let xc = x.conj();
            for (j, o) in out.iter_mut().enumerate().take(n) {
                let s = self.star.get(i, j);
                if !s.is_zero() {
                    o.mul_acc(s, &xc);
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &S, a: &[S]) -> Element<S> {
        a.iter().map(|x| c.mul_ref(x)).collect()
    }

    /// Matrix of `x ↦ a x`.
    pub fn left_mult_matrix(&self, a: &[S]) -> Matrix<S> {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for j in 0..n {
            let col = self.mul(a, &self.basis(j));
            for (k, v) in col.into_iter().enumerate() {
                m.set(k, j, v);
            }
        }
        m
    }

    /// Normalized trace of the left regular representation,
    /// `φ(a) = Tr(L_a) / dim`. Faithful, positive and tracial on every
    /// finite-dimensional C*-algebra; uniform on `C(X_n)`, `δ_{g,e}` on `C[G]`.
    pub fn canonical_functional(&self) -> Functional<S> {
        let n = self.dim();
        let inv_n = S::ratio(1, n as i64);
        let coeffs = (0..n)
            .map(|i| {
                let mut tr = S::zero();
                for j in 0..n {
                    tr = tr.add_ref(self.mult_coeff(i, j, j));
                }
                tr.mul_ref(&inv_n)
            })
            .collect();
        Functional::new(coeffs)
    }

    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> T) -> StarAlgebra<T> {
        StarAlgebra::new(
            self.labels.clone(),
            self.mult.iter().map(&f).collect(),
            self.unit.iter().map(&f).collect(),
            self.star.map(&f),
        )
        .expect("scalar map preserves shapes")
    }
}

/// `A ⊗ B` with componentwise product and star; basis `(i, j)` has index
/// `i * dim B + j`.
pub fn tensor_algebra<S: Scalar>(a: &StarAlgebra<S>, b: &StarAlgebra<S>) -> StarAlgebra<S> {
    let (na, nb) = (a.dim(), b.dim());
    let labels = a
        .labels()
        .iter()
        .flat_map(|la| b.labels().iter().map(move |lb| format!("({la},{lb})")))
        .collect();
    let unit = tensor_vec(a.unit(), b.unit());
    StarAlgebra::from_rules(
        labels,
        unit,
        |x, y| {
            let (i, j) = (x / nb, x % nb);
            let (k, l) = (y / nb, y % nb);
            let mut terms = Vec::new();
            for (p, c) in a.basis_product(i, k) {
                for (q, d) in b.basis_product(j, l) {
                    terms.push((p * nb + q, c.mul_ref(d)));
                }
            }
            terms
        },
        |x| {
            let (i, j) = (x / nb, x % nb);
            let mut terms = Vec::new();
            for p in 0..na {
                let c = a.star_matrix().get(i, p);
                if c.is_zero() {
                    continue;
                }
                for q in 0..nb {
                    let d = b.star_matrix().get(j, q);
                    if !d.is_zero() {
                        terms.push((p * nb + q, c.mul_ref(d)));
                    }
                }
            }
            terms
        },
    )
    .expect("tensor product of well-formed algebras is well-formed")
}

/// Kronecker product of coordinate vectors.
pub fn tensor_vec<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x.mul_ref(y));
        }
    }
    out
}

/// Associativity, unit and involution laws, checked on basis elements.
pub fn check_algebra_axioms<S: Scalar>(alg: &StarAlgebra<S>, tol: f64) -> Vec<Report> {
    let n = alg.dim();
    let basis: Vec<_> = (0..n).map(|i| alg.basis(i)).collect();

    let mut assoc = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let ij = alg.mul(&basis[i], &basis[j]);
            for k in 0..n {
                let left = alg.mul(&ij, &basis[k]);
                let right = alg.mul(&basis[i], &alg.mul(&basis[j], &basis[k]));
                assoc = assoc.max(max_diff(&left, &right));
            }
        }
    }

    let mut unit = 0.0f64;
    for e in &basis {
        unit = unit.max(max_diff(&alg.mul(alg.unit(), e), e));
        unit = unit.max(max_diff(&alg.mul(e, alg.unit()), e));
    }

    let mut involution = 0.0f64;
    let mut anti = 0.0f64;
    for i in 0..n {
        involution = involution.max(max_diff(&alg.star(&alg.star(&basis[i])), &basis[i]));
        for j in 0..n {
            let lhs = alg.star(&alg.mul(&basis[i], &basis[j]));
            let rhs = alg.mul(&alg.star(&basis[j]), &alg.star(&basis[i]));
            anti = anti.max(max_diff(&lhs, &rhs));
        }
    }

    vec![
        Report::residual("algebra.associativity", assoc, tol),
        Report::residual("algebra.unit", unit, tol),
        Report::residual("algebra.star_involutive", involution, tol),
        Report::residual("algebra.star_antimultiplicative", anti, tol),
    ]
}

/// Linear functional `φ(e_i) = coeffs[i]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Functional<S> {
    pub coeffs: Vec<S>,
}

impl<S: Scalar> Functional<S> {
    pub fn new(coeffs: Vec<S>) -> Self {
        Functional { coeffs }
    }

    pub fn eval(&self, a: &[S]) -> S {
        let mut acc = S::zero();
        for (c, x) in self.coeffs.iter().zip(a) {
            acc.mul_acc(c, x);
        }
        acc
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }
}

/// Outcome of inspecting `H[i][j] = φ(e_i* e_j)`.
#[derive(Clone, Debug)]
pub struct GramCheck {
    pub hermitian_residual: f64,
    pub min_eigenvalue: f64,
    pub positive: bool,
    pub faithful: bool,
}

impl GramCheck {
    pub fn reports(&self, prefix: &str) -> Vec<Report> {
        vec![
            Report::condition(format!("{prefix}.positive"), self.hermitian_residual, self.positive)
                .with_witness(Witness::Value(self.min_eigenvalue))
                .with_notes("witness = min Gram eigenvalue"),
            Report::condition(format!("{prefix}.faithful"), self.hermitian_residual, self.faithful)
                .with_witness(Witness::Value(self.min_eigenvalue))
                .with_notes("witness = min Gram eigenvalue"),
        ]
    }
}

pub fn gram_matrix<S: Scalar>(phi: &Functional<S>, alg: &StarAlgebra<S>) -> Matrix<S> {
    let n = alg.dim();
    let stars: Vec<_> = (0..n).map(|i| alg.star(&alg.basis(i))).collect();
    Matrix::from_fn(n, n, |i, j| phi.eval(&alg.mul(&stars[i], &alg.basis(j))))
}

/// Positivity (hermitian PSD Gram) and faithfulness (nonsingular Gram) of `φ`.
pub fn gram_check<S: Scalar>(phi: &Functional<S>, alg: &StarAlgebra<S>, tol: f64) -> GramCheck {
    let spectrum = linalg::hermitian_spectrum(&gram_matrix(phi, alg).to_c64());
    let positive = spectrum.asymmetry <= tol && spectrum.min() >= -tol;
    GramCheck {
        hermitian_residual: spectrum.asymmetry,
        min_eigenvalue: spectrum.min(),
        positive,
        faithful: positive && spectrum.min() > tol,
    }
}

/// Result of a positivity test on an element or a matrix over the algebra.
#[derive(Clone, Debug)]
pub struct Positivity {
    pub positive: bool,
    pub min_eigenvalue: f64,
    pub asymmetry: f64,
}

/// GNS representation of an algebra on `L²(A, φ)` in an orthonormal frame,
/// so that `π(a*) = π(a)†`.
#[derive(Clone, Debug)]
pub struct GnsRepresentation {
    basis_ops: Vec<DMatrix<C64>>,
    dim: usize,
}

impl GnsRepresentation {
    pub fn new<S: Scalar>(alg: &StarAlgebra<S>, phi: &Functional<S>, tol: f64) -> Result<Self> {
        let h = gram_matrix(phi, alg).to_c64();
        let spectrum = linalg::hermitian_spectrum(&h);
        if spectrum.min() <= tol || spectrum.asymmetry > tol {
            return Err(Error::SingularGram {
                min_eigenvalue: spectrum.min(),
            });
        }
        let h_inv_sqrt = linalg::inverse_sqrt(&h);
        // H^{1/2} L H^{-1/2} = H^{-1/2} (H L) H^{-1/2}
        let basis_ops = (0..alg.dim())
            .map(|i| {
                let l = alg.left_mult_matrix(&alg.basis(i)).to_c64();
                &h_inv_sqrt * (&h * l) * &h_inv_sqrt
            })
            .collect();
        Ok(GnsRepresentation {
            basis_ops,
            dim: alg.dim(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn represent<S: Scalar>(&self, a: &[S]) -> DMatrix<C64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for (x, op) in a.iter().zip(&self.basis_ops) {
            if !x.is_zero() {
                m += op * x.to_c64();
            }
        }
        m
    }

    pub fn positivity<S: Scalar>(&self, a: &[S], tol: f64) -> Positivity {
        positivity_of(&self.represent(a), tol)
    }

    /// Positivity of a `k×k` matrix over the algebra, via the block operator
    /// `[π(a_ij)]`.
    pub fn block_positivity<S: Scalar>(&self, entries: &[Vec<Vec<S>>], tol: f64) -> Positivity {
        positivity_of(&self.block_operator(entries), tol)
    }

    pub fn block_operator<S: Scalar>(&self, entries: &[Vec<Vec<S>>]) -> DMatrix<C64> {
        let k = entries.len();
        let n = self.dim;
        let mut big = DMatrix::zeros(k * n, k * n);
        for (i, row) in entries.iter().enumerate() {
            for (j, a) in row.iter().enumerate() {
                big.view_mut((i * n, j * n), (n, n)).copy_from(&self.represent(a));
            }
        }
        big
    }
}

fn positivity_of(m: &DMatrix<C64>, tol: f64) -> Positivity {
    let spectrum = linalg::hermitian_spectrum(m);
    Positivity {
        positive: spectrum.asymmetry <= tol && spectrum.min() >= -tol,
        min_eigenvalue: spectrum.min(),
        asymmetry: spectrum.asymmetry,
    }
}

/// Whether left multiplication by `a` is a positive operator on `L²(A, φ)`.
pub fn positivity_check<S: Scalar>(a: &[S], alg: &StarAlgebra<S>, phi: &Functional<S>, tol: f64) -> Result<Positivity> {
    Ok(GnsRepresentation::new(alg, phi, tol)?.positivity(a, tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussRat;

    fn points(n: usize) -> StarAlgebra<GaussRat> {
        StarAlgebra::functions_on_points((0..n).map(|i| format!("x{i}")).collect())
    }

    #[test]
    fn pointwise_algebra_passes_axioms_exactly() {
        let reports = check_algebra_axioms(&points(3), 0.0);
        assert!(reports.iter().all(|r| r.pass && r.residual == 0.0), "{reports:?}");
    }

    #[test]
    fn perturbed_mult_entry_fails() {
        let a = points(3);
        let mut mult = a.mult_tensor().to_vec();
        let (i, j, k) = (0, 1, 2);
        mult[(i * 3 + j) * 3 + k] = GaussRat::ratio(1, 1000);
        let bad = StarAlgebra::new(a.labels().to_vec(), mult, a.unit().clone(), a.star_matrix().clone()).unwrap();
        let reports = check_algebra_axioms(&bad, 1e-9);
        let worst = reports.iter().map(|r| r.residual).fold(0.0, f64::max);
        assert!(worst >= 1e-3);
        assert!(reports.iter().any(|r| !r.pass));
    }

    #[test]
    fn tensor_with_scalars_is_isomorphic() {
        let a = points(2);
        let t = tensor_algebra(&StarAlgebra::scalars(), &a);
        assert_eq!(t.dim(), 2);
        assert_eq!(t.mult_tensor(), a.mult_tensor());
        assert_eq!(t.labels(), &["(1,x0)".to_string(), "(1,x1)".to_string()]);
    }

    #[test]
    fn tensor_of_pointwise_is_pointwise() {
        let t = tensor_algebra(&points(2), &points(2));
        assert_eq!(t.mult_tensor(), points(4).mult_tensor());
        assert_eq!(t.unit(), points(4).unit());
    }

    #[test]
    fn unit_is_positive_with_eigenvalue_one() {
        let a = points(2);
        let phi = a.canonical_functional();
        let p = positivity_check(a.unit(), &a, &phi, 1e-9).unwrap();
        assert!(p.positive);
        assert!((p.min_eigenvalue - 1.0).abs() < 1e-12);
    }

    #[test]
    fn signed_difference_is_not_positive() {
        let a = points(2);
        let phi = a.canonical_functional();
        let x = vec![GaussRat::one(), -GaussRat::one()];
        let p = positivity_check(&x, &a, &phi, 1e-9).unwrap();
        assert!(!p.positive);
        assert!((p.min_eigenvalue + 1.0).abs() < 1e-12);
    }

    #[test]
    fn singular_functional_is_rejected() {
        let a = points(2);
        let eval = Functional::new(vec![GaussRat::one(), GaussRat::zero()]);
        let err = positivity_check(a.unit(), &a, &eval, 1e-9).unwrap_err();
        assert!(matches!(err, Error::SingularGram { .. }));
        let g = gram_check(&eval, &a, 1e-9);
        assert!(g.positive && !g.faithful);
    }

    #[test]
    fn uniform_functional_gram() {
        for n in 1..5 {
            let a = points(n);
            let g = gram_check(&a.canonical_functional(), &a, 1e-9);
            assert!(g.positive && g.faithful);
            assert!((g.min_eigenvalue - 1.0 / n as f64).abs() < 1e-12);
        }
    }
}
