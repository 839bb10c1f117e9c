//! Defective and clustered list-colouring of sparse graphs.
//!
//! The solvers take a graph and a list assignment and return a colouring
//! whose defect (largest monochromatic degree) or clustering (largest
//! monochromatic component) is bounded in terms of the list size and the
//! maximum average degree, or maximum degree, of the graph. Every returned
//! colouring is re-verified before it leaves the crate.

pub mod clustered;
pub mod defective;
pub mod error;
pub mod flow;
pub mod generators;
pub mod graph;
pub mod io;
pub mod local;
pub mod oracle;
pub mod presets;
pub mod sparsity;
pub mod transversal;

pub use error::{Error, Result};
pub use graph::{
    clustering_of, defect_of, mono_view, verify, BoundKind, Certificate, Colour, Colouring, Graph,
    ListAssignment, MonoView, Report, Solution,
};
pub use sparsity::{mad, mad_at_least, mad_bruteforce, Density, DensityCertificate};
