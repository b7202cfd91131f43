//! Surface models and derived invariants of graded gentle algebras.
//!
//! A homologically smooth and proper graded gentle algebra determines a
//! marked surface with a dissection into polygons and a line field. This
//! crate builds that model combinatorially, evaluates winding numbers of
//! curves on it, and computes the invariants (genus, boundary data, `sigma`,
//! `atilde`, Arf) that decide derived equivalence and the existence of
//! silting objects.

pub mod algebra;
pub mod curves;
pub mod error;
pub mod intmat;
pub mod invariants;
pub mod presentation;
pub mod random;
pub mod surface;

pub use algebra::{AnForm, GentleAlgebra, Presentation, VertexSet};
pub use error::{Error, Result};
pub use invariants::{compute_invariants, derived_equivalent, has_silting, InvariantRecord};
pub use surface::{build_surface, SurfaceModel};
