//! Multivector fields and differential forms with polynomial coefficients on
//! a single coordinate chart.
//!
//! Both kinds share one representation, [`Graded`], parameterized by a
//! [`Variance`] marker. A homogeneous element of degree `r` is a sparse map
//! from `r`-element basis index sets ([`Blade`]s, stored as bitmasks with
//! ascending index order) to polynomial coefficients. Reordering signs are
//! absorbed into the coefficient when an element is built, so equality is
//! structural.
//!
//! Degrees are *formal*: an operation whose natural result degree is negative
//! or exceeds the chart dimension returns the zero element carrying that
//! degree. This keeps every operation total and keeps degree bookkeeping exact
//! when such a zero is fed into later operations (for example `d` of a
//! degree `-1` zero is a degree `0` zero).

mod blade;
mod calculus;
mod chart;
mod graded;
pub mod mutation;
mod schouten;

pub use blade::Blade;
pub use calculus::{contract, ext_deriv, lie_derivative, poincare_homotopy, vector_field_action};
pub use chart::Chart;
pub use graded::{Contravariant, Covariant, Graded, Variance};
pub use schouten::{lie_bracket, schouten};

/// Section of `Λ^r(TZ)`.
pub type Multivector = Graded<Contravariant>;
/// Section of `Λ^k(T*Z)`.
pub type Form = Graded<Covariant>;
