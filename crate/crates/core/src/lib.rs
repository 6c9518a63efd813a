//! Exact capacity and depth computations.
//!
//! * [`abelian`]: finitely generated abelian groups and their closed forms.
//! * [`free`]: free groups of finite rank.
//! * [`finite`]: brute-force oracle over Cayley tables of small groups.
//! * [`poset`]: domination DAGs and longest chains.
//! * [`polyhedron`]: depth bounds for finite polyhedra and known values.

pub mod abelian;
pub mod finite;
pub mod free;
pub mod polyhedron;
pub mod poset;

pub use abelian::{AbelianError, AbelianGroup, Factor, SummandSelection};
pub use finite::{
    BruteForce, BruteForceError, CayleyTable, Endomorphism, IsoProfile, RetractClass, TableError,
};
pub use free::FreeGroup;
pub use polyhedron::{BoundError, CatalogEntry, Corollary, GroupSpec, PolyhedronDescriptor, Slot};
pub use poset::{ClassNode, DominationDag, PosetError};
