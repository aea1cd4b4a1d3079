//! Exact polynomial algebra for questions of the form "does `g` factor
//! through the polynomial map `f`?".
//!
//! The crate is layered bottom-up: [`field`] scalars, [`poly`] sparse
//! polynomials, [`ideal`] Gröbner-basis machinery, and [`detcore`] with the
//! decision procedures. [`expr`] provides the textual front end.

pub mod detcore;
pub mod expr;
pub mod field;
pub mod ideal;
pub mod poly;

pub use field::{FieldElement, FieldSpec};
pub use poly::{Ctx, Monomial, MonomialOrder, Polynomial, VarContext};
