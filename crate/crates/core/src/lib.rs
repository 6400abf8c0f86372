//! Exact computations with shuffle algebras of simply-laced type: root
//! systems, Auslander-Reiten orders, shuffle products, specialization maps
//! and the residue checks for fused currents.

// Index loops read closest to the matrix and root formulas they implement.
#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod fusion;
pub mod paths;
pub mod quiver;
pub mod roots;
pub mod shuffle;
pub mod specialization;

pub use algebra::AlgebraError;
pub use paths::PathError;
pub use quiver::{QuiverError, RepError};
pub use roots::RootError;
pub use shuffle::{PairingError, ShuffleError};
pub use specialization::SpecError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Shuffle(#[from] ShuffleError),
    #[error(transparent)]
    Pairing(#[from] PairingError),
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Path(#[from] PathError),
    #[error("the total order does not refine the AR order")]
    NotARefinement,
}
