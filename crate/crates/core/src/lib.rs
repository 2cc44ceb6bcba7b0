//! Enumeration and classification of Hopf Galois structures on separable field
//! extensions of small degree, through regular subgroups normalized by the
//! Galois group and embeddings into holomorphs.

pub mod algos;
pub mod catalog;
pub mod error;
pub mod group;
pub mod hgs;
pub mod holomorph;
pub mod perm;
pub mod props;
pub mod report;
pub mod table;
pub mod twop;
pub mod zoo;

pub use error::{Error, Result};
pub use group::PermGroup;
pub use perm::Perm;
