//! Finite-dimensional toolkit for averaging algebra-valued inner products on
//! one-forms under coactions of Kac-type compact quantum groups.
//!
//! Every object is a dense tensor of structure constants over a [`Scalar`]
//! backend: exact Gaussian rationals ([`GaussRat`]) or double complex
//! ([`C64`]). Checks return [`Report`]s carrying a residual and a verdict.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod calculus;
pub mod coaction;
pub mod error;
pub mod gallery;
pub mod group;
pub mod hopf;
pub mod linalg;
pub mod metric;
pub mod report;
pub mod scalar;

pub use algebra::{Element, Functional, StarAlgebra};
pub use calculus::{Calculus, LiftedCoaction};
pub use coaction::Coaction;
pub use error::{Error, Result};
pub use group::{FiniteGroup, GroupAction};
pub use hopf::HopfData;
pub use linalg::Matrix;
pub use metric::InnerProduct;
pub use report::{Report, Witness};
pub use scalar::{GaussRat, Scalar, C64, DEFAULT_TOL};
