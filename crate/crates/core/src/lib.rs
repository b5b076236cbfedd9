//! Analysis toolkit for bipartite distance-regular graphs.
//!
//! Given a bipartite distance-regular graph with diameter `D >= 4` and
//! valency `k >= 3`, this crate computes the intersection array, the
//! Bose-Mesner spectral data (eigenvalues, multiplicities, primitive
//! idempotents, dual eigenvalue sequences), three families of orthogonal
//! polynomials attached to the graph, and the structure of the
//! subconstituent (Terwilliger) algebra at a base vertex: the endpoint-0
//! and endpoint-1 modules, the local eigenvalues, and the thin irreducible
//! endpoint-2 modules.  On top of that data it decides whether the graph
//! is 2-homogeneous, taut, or neither, and cross-validates the decision
//! through three independent characterizations.
//!
//! Every algebraic identity the pipeline relies on is re-verified
//! numerically; [`pipeline::analyze`] returns the residuals alongside the
//! results so a report can show its work.

pub mod bosemesner;
pub mod check;
pub mod error;
pub mod graph;
pub mod linalg;
pub mod tol;

pub use error::Error;
pub use graph::{DistanceData, Graph, IntersectionArray};
pub use linalg::{EigenDecomposition, Subspace, SymMatrix};
pub use tol::Tolerances;
