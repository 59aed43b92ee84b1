//! Exact computer algebra for rational quantum tori and the full toroidal
//! Lie algebras built from them.

pub mod cyclo;
pub mod error;
pub mod hc1;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod oracle;
pub mod qtorus;
pub mod realization;
pub mod repmod;
pub mod sampling;
pub mod scalar;
pub mod toroidal;
pub mod verify;

use num_rational::BigRational;

pub use cyclo::{Cyclotomic, CyclotomicField};
pub use error::{Error, Result};

/// Cyclotomic scalars with arbitrary-precision rational coordinates.
pub type Cyc = Cyclotomic<BigRational>;
