//! `(a, b)`-Sudoku constructions.

use super::shift::{algorithm1, max_distance_square, ShiftParams};
use super::verified;
use crate::error::{domain, parameter, Result};
use crate::grid::{SquareGrid, SudokuShape};
use crate::validate::validate_sudoku;

fn checked_sudoku(g: SquareGrid, shape: SudokuShape, what: &str) -> Result<SquareGrid> {
    verified(g, what, |g| {
        validate_sudoku(g, shape).expect("constructor shape matches order")
    })
}

fn shifted_sudoku(
    shape: SudokuShape,
    r: i64,
    c: i64,
    alpha: i64,
    beta: i64,
    what: &str,
) -> Result<SquareGrid> {
    let n = shape.order() as u64;
    let g = algorithm1(&ShiftParams::new(n, r, c, alpha, beta)?)?;
    checked_sudoku(g, shape, what)
}

/// A `(2, b)`-Sudoku square with inner distance `b - 1`.
pub fn sudoku_2b(b: usize) -> Result<SquareGrid> {
    if b < 2 {
        return Err(domain(format!("(2, b) construction needs b >= 2, got {b}")));
    }
    let n = 2 * b as i64;
    let beta = if b % 2 == 1 { 1 } else { n };
    shifted_sudoku(
        SudokuShape::new(2, b)?,
        n / 2,
        (n - 2) / 2,
        1,
        beta,
        "(2, b) construction",
    )
}

/// An `(a, b)`-Sudoku square with `b` odd, `a <= b` and inner distance
/// `(n - a)/2`.
///
/// The horizontal step `(n - a)/2` shares exactly the factor `a` with `n`,
/// so stacks are `b` wide. The vertical step is a unit close to `n/2`:
/// `(n-1)/2` for odd `a`, `(n-2)/2` for `a = 0 mod 4`, `(n-4)/2` for
/// `a = 2 mod 4`.
pub fn sudoku_a_odd_b(a: usize, b: usize) -> Result<SquareGrid> {
    if b.is_multiple_of(2) {
        return Err(parameter(format!("b = {b} must be odd")));
    }
    if a == 0 || a > b {
        return Err(parameter(format!("need 1 <= a <= b, got a = {a}, b = {b}")));
    }
    match a {
        1 => max_distance_square(b as u64),
        2 => sudoku_2b(b),
        _ => {
            let n = (a * b) as i64;
            let r = match a % 4 {
                0 => (n - 2) / 2,
                2 => (n - 4) / 2,
                _ => (n - 1) / 2,
            };
            let a_i = a as i64;
            shifted_sudoku(
                SudokuShape::new(a, b)?,
                r,
                (n - a_i) / 2,
                n,
                1,
                "(a, odd b) construction",
            )
        }
    }
}

/// An `(a, b)`-Sudoku square for odd `a >= 3` and even `b >= a`.
///
/// For `b = 0 mod 4` the inner distance is `(n - min(2a, b))/2`, for
/// `b = 2 mod 4` it is `(n - min(4a, b))/2`. When `b` is the smaller term
/// the roles of rows and columns swap: the vertical step carries the shared
/// factor `b` and bands are `a` tall.
pub fn sudoku_odd_a_even_b(a: usize, b: usize) -> Result<SquareGrid> {
    if a < 3 || a.is_multiple_of(2) || b % 2 == 1 || b < a {
        return Err(parameter(format!(
            "need odd a >= 3 and even b >= a, got a = {a}, b = {b}"
        )));
    }
    let shape = SudokuShape::new(a, b)?;
    let n = (a * b) as i64;
    let (a_i, b_i) = (a as i64, b as i64);
    let k = if b.is_multiple_of(4) { 2 } else { 4 };
    let what = "(odd a, even b) construction";
    if b_i < k * a_i {
        shifted_sudoku(shape, (n - b_i) / 2, (n - k) / 2, 1, n, what)
    } else {
        shifted_sudoku(shape, (n - k) / 2, (n - k * a_i) / 2, n, 1, what)
    }
}

/// Classification of a row by its vertical offset in the even-by-even
/// construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowType {
    /// Row 1 and every even row: offset 0.
    Plain,
    /// First row of every band but the first: offset `-a/2`.
    BandStart,
    /// Other odd rows of even-numbered bands: offset `+1`.
    EvenBandOdd,
    /// Other odd rows of odd-numbered bands: offset `-1`.
    OddBandOdd,
}

/// Vertical offsets `R(k)` for block height `a = 2x`, period `2a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RowOffsetRule {
    a: usize,
}

impl RowOffsetRule {
    pub fn new(a: usize) -> Result<Self> {
        if a < 2 || a % 2 == 1 {
            return Err(parameter(format!("block height {a} must be even and >= 2")));
        }
        Ok(Self { a })
    }

    pub fn a(&self) -> usize {
        self.a
    }

    /// Type of the 1-based row `k`.
    pub fn row_type(&self, k: usize) -> RowType {
        let a = self.a;
        if k == 1 || k.is_multiple_of(2) {
            RowType::Plain
        } else if k % a == 1 {
            RowType::BandStart
        } else if k % (2 * a) < a {
            RowType::EvenBandOdd
        } else {
            RowType::OddBandOdd
        }
    }

    pub fn offset(&self, k: usize) -> i64 {
        match self.row_type(k) {
            RowType::Plain => 0,
            RowType::BandStart => -((self.a / 2) as i64),
            RowType::EvenBandOdd => 1,
            RowType::OddBandOdd => -1,
        }
    }
}

/// The `(2x, 2y)`-Sudoku construction with inner distance `2xy - x`.
///
/// Horizontally each step adds `2xy - x`, plus one more every `4y` columns.
/// Vertically each step adds `2xy` plus the row offset of [`RowOffsetRule`].
pub fn algorithm2(x: usize, y: usize) -> Result<SquareGrid> {
    if x < 2 || y < x {
        return Err(parameter(format!("need 2 <= x <= y, got x = {x}, y = {y}")));
    }
    let shape = SudokuShape::new(2 * x, 2 * y)?;
    let n = shape.order();
    let rule = RowOffsetRule::new(2 * x)?;
    let (n_i, xy) = (n as i64, (x * y) as i64);
    let h_step = 2 * xy - x as i64;
    let period = 4 * y;

    let mut row_base = Vec::with_capacity(n);
    let mut offset_sum = 0i64;
    for i in 1..=n {
        offset_sum += rule.offset(i);
        row_base.push((i as i64 - 1) * 2 * xy + offset_sum);
    }
    let g = SquareGrid::from_fn(n, |r, c| {
        let v = row_base[r] + c as i64 * h_step + (c / period) as i64;
        (v.rem_euclid(n_i) + 1) as u32
    });
    checked_sudoku(g, shape, "even-by-even construction")
}

/// The best known construction for any shape, transposing when `a > b`.
pub fn sudoku_best(a: usize, b: usize) -> Result<SquareGrid> {
    if a > b {
        return sudoku_best(b, a).map(|g| g.transpose());
    }
    match (a, b) {
        (0, _) => Err(domain("block sides must be positive")),
        (1, 1) => SquareGrid::from_rows(&[[1]]),
        (1, _) => max_distance_square(b as u64),
        (2, _) => sudoku_2b(b),
        _ if b % 2 == 1 => sudoku_a_odd_b(a, b),
        _ if a.is_multiple_of(2) => algorithm2(a / 2, b / 2),
        _ => sudoku_odd_a_even_b(a, b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::metrics::inner_distance_value;

    fn dist(g: &SquareGrid) -> u32 {
        inner_distance_value(g).unwrap()
    }

    #[test]
    fn two_by_b() {
        for (b, d) in [(2, 1), (3, 2), (4, 3)] {
            assert_eq!(dist(&sudoku_2b(b).unwrap()), d);
        }
        assert!(matches!(sudoku_2b(1), Err(Error::Domain(_))));
    }

    #[test]
    fn odd_b_cases() {
        assert_eq!(dist(&sudoku_a_odd_b(5, 5).unwrap()), 10);
        assert_eq!(dist(&sudoku_a_odd_b(4, 5).unwrap()), 8);
        assert!(matches!(sudoku_a_odd_b(3, 4), Err(Error::Parameter(_))));
        assert!(matches!(sudoku_a_odd_b(7, 5), Err(Error::Parameter(_))));
    }

    #[test]
    fn odd_a_even_b_cases() {
        for ((a, b), d) in [
            ((3, 4), 4),
            ((3, 8), 9),
            ((3, 10), 10),
            ((5, 8), 16),
            ((3, 6), 6),
        ] {
            assert_eq!(dist(&sudoku_odd_a_even_b(a, b).unwrap()), d, "({a}, {b})");
        }
        assert!(sudoku_odd_a_even_b(4, 8).is_err());
        assert!(sudoku_odd_a_even_b(3, 5).is_err());
        assert!(sudoku_odd_a_even_b(1, 4).is_err());
    }

    #[test]
    fn row_offsets_for_height_four() {
        let rule = RowOffsetRule::new(4).unwrap();
        let offsets: Vec<i64> = (1..=16).map(|k| rule.offset(k)).collect();
        assert_eq!(
            offsets,
            [0, 0, 1, 0, -2, 0, -1, 0, -2, 0, 1, 0, -2, 0, -1, 0]
        );
        // a row k = 1 mod 4 steps by 2xy + R(k) = 8 - 2 = 6
        assert_eq!(8 + rule.offset(5), 6);
        assert!(RowOffsetRule::new(3).is_err());
    }

    #[test]
    fn row_offset_cases_partition_rows() {
        for a in (2..=20).step_by(2) {
            let rule = RowOffsetRule::new(a).unwrap();
            for k in 1..=(6 * a) {
                let m = k % (2 * a);
                let odd = k % 2 == 1;
                let cases = [
                    k % 2 == 0 || k == 1,
                    k % a == 1 && k != 1,
                    odd && 1 < m && m < a,
                    odd && a + 1 < m && m < 2 * a,
                ];
                assert_eq!(cases.iter().filter(|&&c| c).count(), 1, "a={a} k={k}");
                let expected = match cases.iter().position(|&c| c).unwrap() {
                    0 => RowType::Plain,
                    1 => RowType::BandStart,
                    2 => RowType::EvenBandOdd,
                    _ => RowType::OddBandOdd,
                };
                assert_eq!(rule.row_type(k), expected);
            }
        }
    }

    #[test]
    fn even_even() {
        assert_eq!(dist(&algorithm2(2, 2).unwrap()), 6);
        assert_eq!(dist(&algorithm2(2, 3).unwrap()), 10);
        assert!(algorithm2(1, 2).is_err());
        assert!(algorithm2(3, 2).is_err());
    }

    #[test]
    fn best_transposes_tall_shapes() {
        let g = sudoku_best(5, 3).unwrap();
        let shape = SudokuShape::new(5, 3).unwrap();
        assert!(validate_sudoku(&g, shape).unwrap().verdict);
        assert_eq!(dist(&g), 6);
    }
}
