//! Symbolic workbench for Levi-nondegenerate real hypersurfaces in C^2.

pub mod cartan;
pub mod error;
pub mod geometry;
pub mod linalg;
pub mod matrix;
pub mod segre;
pub mod series;
pub mod symkernel;
pub mod transcend;

pub use error::{Error, ParseError, Result};
pub use symkernel::{parse_expr, Expr, Format, GaussRat, Poly, Rat};
pub use series::{Series, TruncSeries};
