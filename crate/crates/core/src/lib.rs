//! Polyhedral realizations of the crystal `B(infinity)` for the affine types
//! `A1 = A^(1)_{n-1}`, `C1 = C^(1)_{n-1}`, `A2 = A^(2)_{2n-2}` and `D2 = D^(2)_n`.
//!
//! The crate provides the crystal structure on finitely supported integer vectors, the
//! `S'` closure of linear forms, and three combinatorial families (extended Young
//! diagrams, revised extended Young diagrams, Young walls) whose linear forms cut out the
//! image of the crystal embedding.

pub mod error;
pub mod eyd;
pub mod forms;
pub mod generators;
pub mod lattice;
pub mod reyd;
pub mod root_data;
pub mod verify;
pub mod wall;

pub use error::{Error, Result};
pub use forms::LinearForm;
pub use generators::{Generator, GeneratorKind};
pub use lattice::LatticeElement;
pub use root_data::{AdaptedSequence, AlgebraType, DoubleIndex, Family, FoldMap, RootSystem};
