//! Exact enumeration toolkit for planar constellations through their
//! lattice-path encoding.
//!
//! The pieces, bottom up:
//! - [`algebra`]: exact polynomials, truncated series and determinants;
//! - [`paths`]: p-paths with fall-height weights and the `F_n^{(r)}`
//!   polynomials they generate;
//! - [`contfrac`]: the t-expansion of the multicontinued fraction;
//! - [`hankel`]: generalized Hankel determinants, their monomial
//!   evaluation, inversion back to `V_i`, and a brute-force
//!   non-intersecting-paths check;
//! - [`solver`]: fixed-point solutions for `V` and `V_i` as series in the
//!   face weights;
//! - [`eulerian`]: the Eulerian-triangulation specialization;
//! - [`verify`]: the batch driver behind `constel verify-all`.

pub mod algebra;
pub mod contfrac;
pub mod error;
pub mod eulerian;
pub mod hankel;
pub mod paths;
pub mod solver;
pub mod verify;

pub use algebra::{Monomial, MultiPoly, PolyMatrix, Var, XSeries};
pub use error::{Error, Result};
