//! Exact expression kernel: scalars, sparse polynomials, gcd, rational
//! expressions over a tower of atoms, calculus, parsing and rendering.

pub mod calculus;
pub mod expr;
pub mod gcd;
pub mod parse;
pub mod poly;
pub mod render;
pub mod scalar;

pub use calculus::eval_constant;
pub use expr::{conjugate_var, Atom, AtomKind, Expr};
pub use gcd::{gcd, gcd_cofactors, Poly};
pub use parse::{parse_expr, parse_expr_with, DEFAULT_VARIABLES};
pub use poly::{MPoly, Mono};
pub use render::Format;
pub use scalar::{Coeff, Fp, GaussRat, Rat};
