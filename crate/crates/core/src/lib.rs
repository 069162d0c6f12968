//! Finite racks, N-degenerate rack homology, reduced 2-cocycles and the
//! cocycle-enhanced link invariants they define.
//!
//! Rack elements are 0-based indices in the API; every text format and
//! message uses 1-based labels.

pub mod bundled;
pub mod cocycle;
pub mod diagram;
pub mod homology;
pub mod invariant;
pub mod linalg;
pub mod par;
pub mod rack;
pub mod table;
pub mod zmod;

pub use cocycle::{coboundary, is_cocycle, is_nd_vanishing, is_reduced, Cochain2, CochainError, CocycleBasis};
pub use diagram::{parse_link_file, DiagramError, FramingVector, LinkDiagram, NamedDiagram, Sign};
pub use homology::{Coefficients, Complex, Degeneracy, HomologyError, HomologyGroup, HomologyReport, RackComplex};
pub use invariant::{
    boltzmann_weight, cocycle_invariant, count_colorings, counting_invariant, enumerate_colorings, framing_counts,
    InvariantError, InvariantPolynomial,
};
pub use linalg::{smith_normal_form, IntegerMatrix, SnfResult};
pub use par::Execution;
pub use rack::{Rack, RackError};
