//! Exact calculus of parametric scrolls in projective space.
//!
//! A parametric scroll is a family of linear subspaces of `P^N`, encoded by a
//! classifying matrix with polynomial entries over the base coordinates: the
//! row span at a base point is the fibre. Everything here is computed over
//! the rationals with fraction-free linear algebra, so every answer is exact.
//!
//! The crate is organised in layers:
//!
//! * [`poly`], [`parse`] — sparse multivariate polynomials over `Q` and the
//!   expression grammar used by text inputs;
//! * [`matrix`], [`ratmat`], [`linalg`] — polynomial matrices, constant
//!   rational matrices, and fraction-free elimination (rank, kernel, row
//!   span tests) over the rational function field;
//! * [`scroll`], [`flag`], [`classify`] — the scroll calculus proper:
//!   stationarity, derived/antiderived scrolls, linear duality, Gaussian
//!   flags, Gauss dimension and the small-Gauss-dimension classifications;
//! * [`focal`] — focal matrices, focal polynomials, split-focus detection
//!   and the `Z(f, c)` normal-form constructor;
//! * [`construct`] — joins, cones, osculating scrolls, inflation, base
//!   change and the eigenscroll diagram;
//! * [`catalog`] — built-in example scrolls with independently recomputed
//!   invariants.

pub mod catalog;
pub mod classify;
pub mod construct;
mod ctx;
mod error;
pub mod flag;
pub mod focal;
pub mod linalg;
pub mod matrix;
pub mod parse;
pub mod poly;
pub mod ratmat;
pub mod scroll;

pub use ctx::Ctx;
pub use error::{Error, Result};
pub use matrix::PolyMatrix;
pub use poly::{MultiPoly, Rat};
pub use scroll::ParametricScroll;
