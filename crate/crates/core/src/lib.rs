//! Enumerative invariants of rational polyhedral fans and their subdivisions,
//! computed by face-poset recursions and lattice-point counts on one side and
//! by pure sheaves, weight filtrations and Hodge-Deligne polynomials on the
//! other.

pub mod algebra;
pub mod error;
pub mod fan;
pub mod invariants;
pub mod sheaf;
pub mod verify;

pub use error::{Error, Result};
