//! Complex scalars over two backends.
//!
//! [`C64`] is IEEE double complex; equality is judged against a tolerance.
//! [`GaussRat`] is an exact Gaussian rational, for which every identity check
//! produces a residual of exactly zero when the identity holds.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Default comparison tolerance.
pub const DEFAULT_TOL: f64 = 1e-9;

pub type C64 = Complex<f64>;
pub type GaussRat = Complex<BigRational>;

/// Field of complex scalars used for every structure tensor in the crate.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// True when arithmetic is exact (residuals are exactly zero on identities).
    const EXACT: bool;
    /// Name used in documents and reports.
    const BACKEND: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    /// Real rational `num/den`.
    fn ratio(num: i64, den: i64) -> Self;
    /// Complex number with rational parts.
    fn gaussian(re: (i64, i64), im: (i64, i64)) -> Self;
    /// Nearest representable value to a double complex. Exact backends convert
    /// the binary expansion of the double exactly.
    fn from_c64(z: C64) -> Self;
    fn to_c64(&self) -> C64;
    /// Value of an exact Gaussian rational; float backends round.
    fn from_gauss_rat(z: &GaussRat) -> Self;
    /// Exact value, on exact backends only.
    fn as_gauss_rat(&self) -> Option<GaussRat>;
    fn conj(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// Modulus as a double.
    fn modulus(&self) -> f64;

    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;

    /// `self += a * b`
    fn mul_acc(&mut self, a: &Self, b: &Self);

    fn from_i64(n: i64) -> Self {
        Self::ratio(n, 1)
    }

    /// Treats values within `tol` of zero as zero on the float backend; exact
    /// backends ignore `tol`.
    fn is_negligible(&self, tol: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.modulus() <= tol
        }
    }
}

impl Scalar for C64 {
    const EXACT: bool = false;
    const BACKEND: &'static str = "float";

    fn zero() -> Self {
        C64::new(0.0, 0.0)
    }
    fn one() -> Self {
        C64::new(1.0, 0.0)
    }
    fn ratio(num: i64, den: i64) -> Self {
        C64::new(num as f64 / den as f64, 0.0)
    }
    fn gaussian(re: (i64, i64), im: (i64, i64)) -> Self {
        C64::new(re.0 as f64 / re.1 as f64, im.0 as f64 / im.1 as f64)
    }
    fn from_c64(z: C64) -> Self {
        z
    }
    fn to_c64(&self) -> C64 {
        *self
    }
    fn from_gauss_rat(z: &GaussRat) -> Self {
        z.to_c64()
    }
    fn as_gauss_rat(&self) -> Option<GaussRat> {
        None
    }
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn modulus(&self) -> f64 {
        self.norm()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    #[inline]
    fn mul_acc(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
}

fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn rat_from_f64(x: f64) -> BigRational {
    BigRational::from_float(x).unwrap_or_else(BigRational::zero)
}

fn rat_to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        let n = x.numer().to_f64().unwrap_or(f64::NAN);
        let d = x.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

impl Scalar for GaussRat {
    const EXACT: bool = true;
    const BACKEND: &'static str = "rational";

    fn zero() -> Self {
        Complex::new(BigRational::zero(), BigRational::zero())
    }
    fn one() -> Self {
        Complex::new(BigRational::one(), BigRational::zero())
    }
    fn ratio(num: i64, den: i64) -> Self {
        Complex::new(rat(num, den), BigRational::zero())
    }
    fn gaussian(re: (i64, i64), im: (i64, i64)) -> Self {
        Complex::new(rat(re.0, re.1), rat(im.0, im.1))
    }
    fn from_c64(z: C64) -> Self {
        Complex::new(rat_from_f64(z.re), rat_from_f64(z.im))
    }
    fn to_c64(&self) -> C64 {
        C64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }
    fn from_gauss_rat(z: &GaussRat) -> Self {
        z.clone()
    }
    fn as_gauss_rat(&self) -> Option<GaussRat> {
        Some(self.clone())
    }
    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn modulus(&self) -> f64 {
        if self.im.is_zero() {
            return rat_to_f64(&self.re.abs());
        }
        self.to_c64().norm()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        if self.im.is_zero() && other.im.is_zero() {
            return Complex::new(&self.re * &other.re, BigRational::zero());
        }
        self * other
    }
    fn mul_acc(&mut self, a: &Self, b: &Self) {
        if Scalar::is_zero(a) || Scalar::is_zero(b) {
            return;
        }
        if a.im.is_zero() && b.im.is_zero() {
            self.re += &a.re * &b.re;
        } else {
            *self = &*self + &(a * b);
        }
    }
}

/// Largest modulus of the entrywise difference; zero for empty inputs.
pub fn max_diff<S: Scalar>(a: &[S], b: &[S]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x.sub_ref(y).modulus()).fold(0.0, f64::max)
}

/// Largest modulus over a slice.
pub fn max_abs<S: Scalar>(a: &[S]) -> f64 {
    a.iter().map(Scalar::modulus).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_backend_is_exact() {
        let third = GaussRat::ratio(1, 3);
        let sum = third.add_ref(&third).add_ref(&third);
        assert_eq!(sum, <GaussRat as Scalar>::one());
        assert_eq!(sum.sub_ref(&<GaussRat as Scalar>::one()).modulus(), 0.0);
    }

    #[test]
    fn conj_and_mul_acc() {
        let i = GaussRat::gaussian((0, 1), (1, 1));
        let mut acc = <GaussRat as Scalar>::zero();
        acc.mul_acc(&i, &i.conj());
        assert_eq!(acc, <GaussRat as Scalar>::one());

        let mut f = <C64 as Scalar>::zero();
        f.mul_acc(&C64::new(0.0, 1.0), &C64::new(0.0, 1.0));
        assert_eq!(f, C64::new(-1.0, 0.0));
    }

    #[test]
    fn from_c64_round_trips_dyadics() {
        let z = C64::new(0.375, -2.5);
        assert_eq!(GaussRat::from_c64(z).to_c64(), z);
    }

    #[test]
    fn negligible_respects_backend() {
        assert!(C64::new(1e-12, 0.0).is_negligible(1e-9));
        assert!(!GaussRat::ratio(1, 1_000_000_000_000).is_negligible(1e-9));
    }
}
