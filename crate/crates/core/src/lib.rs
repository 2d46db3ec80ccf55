//! Moore-spectra functors over hereditary path algebras.

pub mod backend;
pub mod cluster;
pub mod complex;
pub mod decomp;
pub mod error;
pub mod linalg;
pub mod moore;
pub mod pathalg;
pub mod quiver;
pub mod rep;
pub mod resolve;
pub mod triangles;
pub mod verify;

pub use error::{Error, Result};
pub use linalg::{Field, Matrix, Scalar};
pub use quiver::Quiver;
pub use rep::{RepMorphism, Representation};
