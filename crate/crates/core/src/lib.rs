//! Latin squares measured by inner distance: the smallest cyclic difference
//! between edge-adjacent symbols.
//!
//! The crate builds squares that maximize inner distance (plain,
//! pandiagonal and `(a, b)`-Sudoku), validates and measures arbitrary
//! squares, reduces cyclic squares to circulant form, and searches
//! exhaustively for small orders.

pub mod cli;
pub mod construct;
pub mod error;
pub mod grid;
pub mod metrics;
pub mod modmath;
pub mod search;
pub mod transform;
pub mod validate;

pub use error::{Error, Result};
pub use grid::{block_of, BlockAddress, SquareGrid, SudokuShape};
pub use metrics::{adjacent_distance, inner_distance, DistanceReport};
pub use validate::{validate_latin, validate_pandiagonal, validate_sudoku, ValidationReport};
