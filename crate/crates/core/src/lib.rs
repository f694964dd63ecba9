//! Saturating sets in finite projective planes.
//!
//! A point set `S` of a projective plane is *saturating* when every point outside `S`
//! is collinear with two points of `S`. This crate builds the Desarguesian planes
//! PG(2, q) over GF(q), constructs saturating sets greedily, by random sampling and
//! from Baer subplanes, completes partial sets, and checks everything against
//! exhaustive oracles on small planes.
//!
//! ```
//! use pgsat::{ProjectivePlane, saturation::{greedy_construct, is_saturating, StopRule, Variant}};
//!
//! let plane = ProjectivePlane::pg2_of_order(9).unwrap();
//! let out = greedy_construct(&plane, Variant::Skew, StopRule::default()).unwrap();
//! assert!(is_saturating(&plane, &out.set));
//! ```

pub mod error;
pub mod field;
pub mod hypergraph;
pub mod plane;
pub mod pointset;
pub mod precise;
pub mod report;
pub mod saturation;
pub mod subgeometry;

pub use error::{FieldError, HypergraphError, PlaneError, SaturationError, SubgeometryError};
pub use field::{FieldElement, GaloisField};
pub use plane::{HomogeneousTriple, Origin, ProjectivePlane};
pub use pointset::PointSet;
