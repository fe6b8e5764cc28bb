//! Exact arithmetic: integer-coefficient polynomials in the `V_i`/`x_k`
//! families, truncated `x`-series, and division-free determinants.

mod matrix;
mod monomial;
mod poly;
mod ring;
mod series;

pub use matrix::{det_berkowitz, det_cofactor, det_division_free, Matrix, PolyMatrix, COFACTOR_LIMIT};
pub use monomial::{Monomial, Var};
pub use poly::{JsonTerm, MultiPoly};
pub use ring::Ring;
pub use series::{poly_substitute, Substitution, XSeries};
