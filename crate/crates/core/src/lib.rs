//! Exact symbolic calculus for multivector fields and differential forms on a
//! single coordinate chart, together with the graded Courant machinery built
//! on top of it.
//!
//! All arithmetic is exact: coefficients are polynomials with rational
//! coefficients, so every identity can be checked by testing for a
//! structurally zero result.
//!
//! Layout:
//!
//! * [`coeff_ring`]: rationals, sparse multivariate polynomials and an exact
//!   linear solver.
//! * [`exterior`]: charts, multivector fields, forms, wedge, contraction,
//!   exterior derivative, generalized Lie derivative and the
//!   Schouten–Nijenhuis bracket.
//! * [`courant`]: the graded bundle `L = ⊕ L_r`, its pairings, section wedge,
//!   multi-Courant bracket and gauge transformations.
//! * [`multidirac`]: graph and spanned multi-Dirac structures, the
//!   integrability tensor, the Jacobiator and the induced `Ω_D`.
//! * [`multipoisson`]: admissible forms and the multi-Poisson bracket.

pub mod coeff_ring;
pub mod courant;
mod error;
pub mod exterior;
pub mod multidirac;
pub mod multipoisson;

pub use coeff_ring::{rat, Monomial, Polynomial, Rational};

pub use courant::{GradedContext, GradedPair, MixedSection};
pub use error::{Error, Result};
pub use exterior::{Blade, Chart, Form, Multivector};
pub use multidirac::{DSection, GraphMultiDirac, SpannedStructure};
pub use multipoisson::{AdmissibleForm, PoissonBracket};

/// `(-1)^k` as an `i32`, for any integer `k`.
#[inline]
pub fn parity_sign(k: i64) -> i32 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}
