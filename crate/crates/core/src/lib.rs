//! Exact construction, verification and classification of quadratic Lie
//! algebras over the Gaussian rationals.

pub mod dblext;
pub mod error;
pub mod exterior;
pub mod iso;
pub mod json;
pub mod linalg;
pub mod orbits;
pub mod qla;
pub mod scalar;

pub use dblext::{Builtin, DoubleExtensionData, JordanKind, NonsolvableSplit};
pub use error::{Error, Result};
pub use exterior::AltForm;
pub use iso::{CentroBasis, IsoVerdict};
pub use linalg::{Mat, QuadSpace, SkewMap, Subspace, Vector};
pub use orbits::{InvertibleTriple, OrbitInvariant, Partition};
pub use qla::{DupClass, DupKind, Qla};
pub use scalar::{GaussInt, GaussScalar, Poly};
