//! Computing with simple GF(q)-representable matroids as point subsets of
//! projective geometries: generalized parallel connections, two independent
//! GF(q)-chordality deciders, connectivity structure, exhaustive orbit
//! enumeration, and machine-checked verification suites.

pub mod error;
pub mod field;
pub mod linalg;
pub mod matroid;
pub mod geometry;
pub mod iso;
pub mod gpc;
pub mod codec;
pub mod structure;
pub mod chordal;
pub mod enumerate;
pub mod verify;

pub use error::{Error, Result};
pub use field::{make_field, FieldSpec};
pub use matroid::{LabelSet, Mask, Matroid};
