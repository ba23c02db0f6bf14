//! Exact computations with normal j-algebras of bounded homogeneous domains.
//!
//! The crate is organised bottom-up:
//!
//! * [`linalg`]: exact scalars, matrices, subspaces, polynomial maps;
//! * [`lie`]: Lie algebras given by structure constants;
//! * [`jalgebra`]: normal j-algebras and the catalog of domains;
//! * [`totally_real`]: totally real subalgebras, completion and Stein criteria;
//! * [`siegel`]: unipotent actions on Siegel-domain coordinates;
//! * [`format`] and [`suite`]: text formats and the verification report.

pub mod format;
pub mod jalgebra;
pub mod lie;
pub mod linalg;
pub mod random;
pub mod report;
pub mod siegel;
pub mod suite;
pub mod totally_real;
