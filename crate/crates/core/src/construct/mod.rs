//! Constructions of Latin squares with large inner distance, and the table
//! of known bounds on the maximum inner distance.

mod bounds;
mod shift;
mod sudoku;

pub use bounds::{known_bounds, BoundKind, BoundsEntry};
pub use shift::{
    algorithm1, max_distance_square, pandiagonal_exists, pandiagonal_max, predicted_inner_distance,
    shift_by_k, ShiftParams,
};
pub use sudoku::{
    algorithm2, sudoku_2b, sudoku_a_odd_b, sudoku_best, sudoku_odd_a_even_b, RowOffsetRule, RowType,
};

use crate::error::{Error, Result};
use crate::grid::SquareGrid;
use crate::validate::ValidationReport;

/// Re-checks a constructed square before handing it out.
pub(crate) fn verified(
    g: SquareGrid,
    what: &str,
    report: impl FnOnce(&SquareGrid) -> ValidationReport,
) -> Result<SquareGrid> {
    let report = report(&g);
    if report.verdict {
        Ok(g)
    } else {
        Err(Error::Construction(format!(
            "{what}: {} violations, first {:?}",
            report.violations.len(),
            report.violations[0]
        )))
    }
}
