//! Exact arithmetic: rationals, matrices and subspaces, commutative and
//! noncommutative polynomials, feasibility for linear systems, and truncated
//! graded modules.

pub mod linalg;
pub mod lp;
pub mod module;
pub mod ncpoly;
pub mod poly;
pub mod rational;

pub use linalg::{Mat, Quotient, Subspace};
pub use ncpoly::{Alphabet, NcPoly, Tensor};
pub use poly::{Poly, Vars};
pub use rational::Rat;
