//! Dependence calculus on finite posets.
//!
//! Finite posets act as operations that combine processes with prescribed
//! dependencies. The crate covers:
//!
//! - [`poset`]: finite posets, disjoint union, join and lexicographic
//!   substitution;
//! - [`expressible`] and [`expr`]: posets built from `⊗` and `◁`,
//!   recognised by the absence of the zig-zag;
//! - [`proof`]: structure maps between expressions for inclusions of
//!   expressible posets;
//! - [`operad`]: the operad of posets and expressible covers;
//! - [`tropical`]: runtimes, critical paths and Gantt charts;
//! - [`poly`]: finite polynomial functors and `⊠^P` on them;
//! - [`diagram`] and [`decoration`]: string diagrams, their edge posets and
//!   decorations in any [`decoration::DependenceAlgebra`].

pub mod cli;
pub mod decoration;
pub mod diagram;
pub mod error;
pub mod expr;
pub mod expressible;
pub mod operad;
pub mod poly;
pub mod poset;
pub mod proof;
pub mod tropical;

pub use error::{Error, Result};
pub use expr::{evaluate, Expression};
pub use expressible::{decompose, find_z, is_expressible, Obstruction};
pub use poset::FinitePoset;
pub use proof::{derive_structure_map, verify_proof, StructureMapProof};
