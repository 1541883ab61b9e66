//! Square grids, Sudoku block shapes and the shared text/JSON formats.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// An `n x n` array over the symbols `1..=n`.
///
/// Rows and columns are addressed 0-based through the API; reports and file
/// formats use the 1-based `(i, j)` convention with row 1 at the top.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquareGrid {
    n: usize,
    cells: Vec<u32>,
}

impl SquareGrid {
    /// Builds a grid from row-major rows, rejecting ragged input and symbols
    /// outside `1..=n`.
    pub fn from_rows<R: AsRef<[u32]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Parse("grid has no rows".into()));
        }
        let mut cells = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::Parse(format!(
                    "row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            cells.extend_from_slice(row);
        }
        Self::from_cells(n, cells)
    }

    /// Builds a grid from a flat row-major cell vector.
    pub fn from_cells(n: usize, cells: Vec<u32>) -> Result<Self> {
        if n == 0 {
            return Err(domain("order must be at least 1"));
        }
        if cells.len() != n * n {
            return Err(Error::Parse(format!(
                "expected {} cells for order {n}, found {}",
                n * n,
                cells.len()
            )));
        }
        if let Some(pos) = cells.iter().position(|&v| v == 0 || v as usize > n) {
            return Err(Error::Parse(format!(
                "symbol {} at ({}, {}) outside 1..={n}",
                cells[pos],
                pos / n + 1,
                pos % n + 1
            )));
        }
        Ok(Self { n, cells })
    }

    /// Fills each cell from `f(row, col)` (0-based), reducing into `1..=n`.
    pub(crate) fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> u32) -> Self {
        let mut cells = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                let v = f(r, c);
                debug_assert!(v >= 1 && v as usize <= n);
                cells.push(v);
            }
        }
        Self { n, cells }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Symbol at 0-based `(row, col)`.
    #[inline]
    pub fn get(&self, row: usize, col: usize) -> u32 {
        self.cells[row * self.n + col]
    }

    pub fn cells(&self) -> &[u32] {
        &self.cells
    }

    pub fn row(&self, row: usize) -> &[u32] {
        &self.cells[row * self.n..(row + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> {
        self.cells.chunks(self.n)
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        self.rows().map(<[u32]>::to_vec).collect()
    }

    /// Parses the text format: `n` lines of `n` whitespace-separated
    /// integers. Blank lines and lines starting with `#` are ignored.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let row = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad symbol {tok:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        Self::from_rows(&rows)
    }

    /// Renders the text format: one line per row, single spaces, trailing
    /// newline.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.n * self.n * 3);
        for row in self.rows() {
            let line: Vec<String> = row.iter().map(u32::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn to_doc(&self, shape: Option<SudokuShape>) -> GridDoc {
        GridDoc {
            order: self.n,
            cells: self.to_rows(),
            shape,
        }
    }

    pub fn to_json(&self, shape: Option<SudokuShape>) -> String {
        serde_json::to_string(&self.to_doc(shape)).expect("grid serializes")
    }

    /// Parses the JSON format, returning the grid and its optional shape.
    pub fn parse_json(text: &str) -> Result<(Self, Option<SudokuShape>)> {
        let doc: GridDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        doc.into_grid()
    }

    /// Parses either format, choosing JSON when the input starts with `{`.
    pub fn parse_any(text: &str) -> Result<(Self, Option<SudokuShape>)> {
        if text.trim_start().starts_with('{') {
            Self::parse_json(text)
        } else {
            Ok((Self::parse_text(text)?, None))
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |r, c| self.get(c, r))
    }
}

impl fmt::Display for SquareGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Serialize for SquareGrid {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.n))?;
        for row in self.rows() {
            seq.serialize_element(row)?;
        }
        seq.end()
    }
}

/// JSON document form of a grid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridDoc {
    pub order: usize,
    pub cells: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shape: Option<SudokuShape>,
}

impl GridDoc {
    pub fn into_grid(self) -> Result<(SquareGrid, Option<SudokuShape>)> {
        let grid = SquareGrid::from_rows(&self.cells)?;
        if grid.order() != self.order {
            return Err(Error::Parse(format!(
                "order field {} disagrees with {} rows",
                self.order,
                grid.order()
            )));
        }
        if let Some(shape) = self.shape {
            shape.check_order(grid.order())?;
        }
        Ok((grid, self.shape))
    }
}

/// Renders several grids as text blocks separated by blank lines.
pub fn grids_to_text(grids: &[SquareGrid]) -> String {
    grids
        .iter()
        .map(SquareGrid::to_text)
        .collect::<Vec<_>>()
        .join("\n")
}

/// The `a x b` block shape of an `(a, b)`-Sudoku square of order `a * b`.
///
/// Blocks are `a` rows tall and `b` columns wide, so there are `b` bands and
/// `a` stacks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SudokuShape {
    pub a: usize,
    pub b: usize,
}

impl SudokuShape {
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(domain(format!("block shape ({a}, {b}) must be positive")));
        }
        Ok(Self { a, b })
    }

    pub fn order(self) -> usize {
        self.a * self.b
    }

    pub fn transposed(self) -> Self {
        Self {
            a: self.b,
            b: self.a,
        }
    }

    pub(crate) fn check_order(self, n: usize) -> Result<()> {
        if self.a == 0 || self.b == 0 || self.order() != n {
            return Err(domain(format!(
                "shape ({}, {}) does not tile an order-{n} grid",
                self.a, self.b
            )));
        }
        Ok(())
    }

    /// Index of the block containing 0-based `(row, col)`, numbered
    /// row-major over the `b x a` arrangement of blocks.
    #[inline]
    pub(crate) fn block_index(self, row: usize, col: usize) -> usize {
        (row / self.a) * self.a + col / self.b
    }
}

/// Band and stack of a cell: `band = (i - 1) / a`, `stack = (j - 1) / b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct BlockAddress {
    pub band: usize,
    pub stack: usize,
}

/// Locates the block of the 1-based cell `(i, j)`.
pub fn block_of(i: usize, j: usize, shape: SudokuShape) -> Result<BlockAddress> {
    let n = shape.order();
    if shape.a == 0 || shape.b == 0 || !(1..=n).contains(&i) || !(1..=n).contains(&j) {
        return Err(domain(format!("cell ({i}, {j}) outside an order-{n} grid")));
    }
    Ok(BlockAddress {
        band: (i - 1) / shape.a,
        stack: (j - 1) / shape.b,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_addresses() {
        let s33 = SudokuShape::new(3, 3).unwrap();
        assert_eq!(
            block_of(1, 1, s33).unwrap(),
            BlockAddress { band: 0, stack: 0 }
        );
        assert_eq!(
            block_of(4, 1, s33).unwrap(),
            BlockAddress { band: 1, stack: 0 }
        );
        let s23 = SudokuShape::new(2, 3).unwrap();
        assert_eq!(
            block_of(2, 5, s23).unwrap(),
            BlockAddress { band: 0, stack: 1 }
        );
        assert!(block_of(0, 1, s33).is_err());
        assert!(block_of(1, 10, s33).is_err());
    }

    #[test]
    fn blocks_cover_every_band_and_stack() {
        for (a, b) in [(1, 4), (2, 3), (3, 2), (3, 3), (2, 5)] {
            let shape = SudokuShape::new(a, b).unwrap();
            let n = shape.order();
            let mut seen = std::collections::BTreeSet::new();
            for i in 1..=n {
                for j in 1..=n {
                    let addr = block_of(i, j, shape).unwrap();
                    assert!(addr.band < b && addr.stack < a);
                    seen.insert((addr.band, addr.stack));
                }
            }
            assert_eq!(seen.len(), a * b);
        }
    }

    #[test]
    fn text_round_trip_and_comments() {
        let text = "# order 3\n1 2 3\n2 3 1\n\n3 1 2\n";
        let g = SquareGrid::parse_text(text).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.to_text(), "1 2 3\n2 3 1\n3 1 2\n");
        assert_eq!(SquareGrid::parse_text(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn malformed_text_is_rejected() {
        assert!(matches!(
            SquareGrid::parse_text("1 2 3 4\n1 2 3 4\n1 2 3 4\n"),
            Err(Error::Parse(_))
        ));
        assert!(SquareGrid::parse_text("1 2\n2 3\n").is_err());
        assert!(SquareGrid::parse_text("1 x\n2 1\n").is_err());
        assert!(SquareGrid::parse_text("").is_err());
        assert!(SquareGrid::parse_text("0 1\n1 2\n").is_err());
    }

    #[test]
    fn json_round_trip_with_shape() {
        let g = SquareGrid::from_rows(&[[1, 2, 3, 4], [3, 4, 1, 2], [2, 1, 4, 3], [4, 3, 2, 1]])
            .unwrap();
        let shape = SudokuShape::new(2, 2).unwrap();
        let json = g.to_json(Some(shape));
        assert_eq!(
            json,
            r#"{"order":4,"cells":[[1,2,3,4],[3,4,1,2],[2,1,4,3],[4,3,2,1]],"shape":{"a":2,"b":2}}"#
        );
        assert_eq!(SquareGrid::parse_any(&json).unwrap(), (g, Some(shape)));
        let bad = r#"{"order":4,"cells":[[1,2],[2,1]]}"#;
        assert!(SquareGrid::parse_json(bad).is_err());
        let bad_shape = r#"{"order":2,"cells":[[1,2],[2,1]],"shape":{"a":2,"b":2}}"#;
        assert!(SquareGrid::parse_json(bad_shape).is_err());
    }
}
