//! Group algorithms on top of stabilizer chains and element tables.

pub mod conjugacy;
pub mod iso;
pub mod lattice;
pub mod stats;

pub use conjugacy::are_conjugate;
pub use iso::{
    aut_stabilizing, automorphism_group, find_isomorphism, find_isomorphism_mapping, AutGroup,
    GroupIso,
};
pub use lattice::{all_subgroups, subgroup_class_reps, LatticeOptions, SubgroupLattice};
