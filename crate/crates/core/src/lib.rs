//! Backward jeu de taquin on semistandard reverse composition tableaux, the
//! jdt operators and poset they induce on compositions, and the right Pieri
//! rule for noncommutative Schur functions.
//!
//! Reverse tableaux ([`Ssrt`]) use French rows (row 1 at the bottom); reverse
//! composition tableaux ([`Ssrct`]) use English rows (row 1 at the top).

pub mod comp_ops;
pub mod jdt_srct;
pub mod jdt_srt;
pub mod nsym;
pub mod poset;
pub mod random;
pub mod rho;
pub mod rs;
mod error;
pub mod shapes;
pub mod tableau;
pub mod verify;

pub use error::{Error, Result};
pub use shapes::{CellCoord, Composition, Convention, Partition, SkewCompositionShape, SkewPartitionShape};
pub use tableau::{Ssrct, Ssrt};
