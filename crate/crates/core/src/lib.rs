//! Tilting criteria for tensor products `∇(r) ⊗ Δ(s)` of `SL2` modules in
//! characteristic `p`.
//!
//! The crate is organised bottom-up:
//!
//! - [`padic`]: base-`p` digits, `p`-length and primitive pairs.
//! - [`charring`]: exact Laurent-polynomial characters, Weyl characters
//!   `χ(r)`, Frobenius twists and exact division.
//! - [`tiltchar`]: characters of the indecomposable tilting modules `T(m)`
//!   and greedy decomposition into them.
//! - [`decide`]: the explicit digit criterion and the recursive decision
//!   procedure, both producing replayable traces.
//! - [`grid`] and [`selftest`]: the tilting grids and the invariant sweeps
//!   surfaced by the command-line tool.

pub mod charring;
pub mod decide;
mod error;
pub mod grid;
pub mod padic;
pub mod selftest;
pub mod tiltchar;

pub use charring::{LaurentChar, WeylExpansion};
pub use decide::{is_tilting_explicit, is_tilting_recursive, Verdict};
pub use error::{Error, Result};
pub use padic::{Digits, Prime, PrimitivePair};
pub use tiltchar::{TiltingCharacters, TiltingDecomposition};
