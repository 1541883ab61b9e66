//! Latin, pandiagonal and Sudoku validators.

use serde::Serialize;

use crate::error::Result;
use crate::grid::{SquareGrid, SudokuShape};

/// The kind of cell set in which a duplicate was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LineKind {
    Row,
    Column,
    /// Cells with `i - j` constant mod `n`; index `0` is the main diagonal.
    ForwardDiagonal,
    /// Cells with `i + j` constant mod `n`.
    BackDiagonal,
    Block,
}

/// A duplicated symbol in one row, column, diagonal or block.
///
/// Rows and columns use 1-based indices. Diagonal indices are the residue of
/// `i - j` (forward) or `i + j` (back) in `0..n`. Blocks use `band * a + stack`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: LineKind,
    pub index: usize,
    pub symbol: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub verdict: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    fn from_violations(violations: Vec<Violation>) -> Self {
        Self {
            verdict: violations.is_empty(),
            violations,
        }
    }
}

/// Scans cell sets: `line_of` maps a 0-based cell to its set index.
fn scan(
    g: &SquareGrid,
    kind: LineKind,
    line_of: impl Fn(usize, usize) -> usize,
    out: &mut Vec<Violation>,
) {
    let n = g.order();
    // counts[line][symbol]
    let mut counts = vec![0u32; n * (n + 1)];
    for r in 0..n {
        for c in 0..n {
            counts[line_of(r, c) * (n + 1) + g.get(r, c) as usize] += 1;
        }
    }
    for line in 0..n {
        for sym in 1..=n {
            if counts[line * (n + 1) + sym] > 1 {
                out.push(Violation {
                    kind,
                    index: line,
                    symbol: sym as u32,
                });
            }
        }
    }
}

fn latin_violations(g: &SquareGrid) -> Vec<Violation> {
    let mut out = Vec::new();
    scan(g, LineKind::Row, |r, _| r, &mut out);
    scan(g, LineKind::Column, |_, c| c, &mut out);
    for v in &mut out {
        v.index += 1;
    }
    out
}

/// Every row and column is a permutation of `1..=n`.
pub fn validate_latin(g: &SquareGrid) -> ValidationReport {
    ValidationReport::from_violations(latin_violations(g))
}

/// Latin, and every wrapped forward and back diagonal is Latin too.
pub fn validate_pandiagonal(g: &SquareGrid) -> ValidationReport {
    let n = g.order();
    let mut out = latin_violations(g);
    // with 1-based (i, j): i - j = r - c and i + j = r + c + 2
    scan(
        g,
        LineKind::ForwardDiagonal,
        |r, c| (r + n - c) % n,
        &mut out,
    );
    scan(g, LineKind::BackDiagonal, |r, c| (r + c + 2) % n, &mut out);
    ValidationReport::from_violations(out)
}

/// Latin, and every `a x b` block contains all `n` symbols.
pub fn validate_sudoku(g: &SquareGrid, shape: SudokuShape) -> Result<ValidationReport> {
    shape.check_order(g.order())?;
    let mut out = latin_violations(g);
    scan(g, LineKind::Block, |r, c| shape.block_index(r, c), &mut out);
    Ok(ValidationReport::from_violations(out))
}
