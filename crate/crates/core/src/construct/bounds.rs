//! Known lower and upper bounds on the maximum inner distance.

use serde::Serialize;

use super::shift::pandiagonal_exists;
use crate::error::{domain, Result};

/// The class of squares a bound refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundKind {
    Plain(usize),
    Pandiagonal(usize),
    Sudoku { a: usize, b: usize },
}

impl BoundKind {
    pub fn order(self) -> usize {
        match self {
            Self::Plain(n) | Self::Pandiagonal(n) => n,
            Self::Sudoku { a, b } => a * b,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Plain(_) => "plain",
            Self::Pandiagonal(_) => "pandiagonal",
            Self::Sudoku { .. } => "sudoku",
        }
    }
}

/// One row of the bounds table.
///
/// `exact` holds when a construction meets a proven upper bound. When no
/// square of the kind exists, `existence` is false and both bounds are 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsEntry {
    pub kind: &'static str,
    pub a: Option<usize>,
    pub b: Option<usize>,
    pub n: usize,
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
    pub existence: bool,
    pub provenance: Vec<&'static str>,
}

impl BoundsEntry {
    fn new(kind: BoundKind, lower: usize, upper: usize, provenance: Vec<&'static str>) -> Self {
        debug_assert!(lower <= upper);
        let (a, b) = match kind {
            BoundKind::Sudoku { a, b } => (Some(a), Some(b)),
            _ => (None, None),
        };
        Self {
            kind: kind.name(),
            a,
            b,
            n: kind.order(),
            lower,
            upper,
            exact: lower == upper,
            existence: true,
            provenance,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("bounds serialize")
    }
}

const PLAIN_UPPER: &str =
    "upper floor((n-1)/2): at most two symbols sit at the largest distance from any symbol";
const PLAIN_LOWER: &str = "lower floor((n-1)/2): shift construction with r = c = floor((n-1)/2)";
const ORDER_TWO: &str = "order 2: both Latin squares have inner distance 1";
const PANDIAGONAL_NONE: &str = "existence: pandiagonal squares exist iff n = 1 or 5 mod 6";
const PANDIAGONAL_UPPER: &str =
    "upper (n-3)/2: squares at distance (n-1)/2 are circulant with a constant diagonal";
const PANDIAGONAL_LOWER: &str = "lower (n-3)/2: shift construction with steps -(n-3)/2 and (n-1)/2";
const TWO_BY_B: &str = "exact b-1: (2, b) shift construction meets the plain bound";
const WINDOW3_UPPER: &str =
    "upper floor((n-3)/2): every 3x3 window inside a block has distinct symbols";
const WINDOW5_UPPER: &str = "upper (n-5)/2: 5x5 window argument for odd a, b >= 5";
const ODD_B_LOWER: &str = "lower (n-a)/2: shift construction for odd b";
const EVEN_EVEN_LOWER: &str = "lower (n-a)/2: row-offset construction for even a, b";
const ZERO_MOD4_LOWER: &str = "lower (n-min(2a,b))/2: shift construction for odd a, b = 0 mod 4";
const TWO_MOD4_LOWER: &str = "lower (n-min(4a,b))/2: shift construction for odd a, b = 2 mod 4";

fn plain(kind: BoundKind, n: usize) -> BoundsEntry {
    if n == 2 {
        return BoundsEntry::new(kind, 1, 1, vec![ORDER_TWO]);
    }
    let d = (n - 1) / 2;
    BoundsEntry::new(kind, d, d, vec![PLAIN_UPPER, PLAIN_LOWER])
}

/// Best known bounds on the maximum inner distance for a class of squares.
/// Sudoku shapes are symmetric: `(a, b)` and `(b, a)` share bounds.
pub fn known_bounds(kind: BoundKind) -> Result<BoundsEntry> {
    let n = kind.order();
    if n < 2 {
        return Err(domain(format!(
            "inner distance is undefined below order 2 (got {n})"
        )));
    }
    Ok(match kind {
        BoundKind::Plain(n) => plain(kind, n),
        BoundKind::Pandiagonal(n) => {
            if !pandiagonal_exists(n as u64) {
                let mut e = BoundsEntry::new(kind, 0, 0, vec![PANDIAGONAL_NONE]);
                e.exact = false;
                e.existence = false;
                e
            } else {
                let d = (n - 3) / 2;
                BoundsEntry::new(
                    kind,
                    d,
                    d,
                    vec![PANDIAGONAL_NONE, PANDIAGONAL_UPPER, PANDIAGONAL_LOWER],
                )
            }
        }
        BoundKind::Sudoku { a, b } => {
            let (a, b) = (a.min(b), a.max(b));
            match a {
                1 => plain(kind, n),
                2 => BoundsEntry::new(kind, b - 1, b - 1, vec![TWO_BY_B]),
                _ => {
                    let mut provenance = vec![WINDOW3_UPPER];
                    let mut upper = (n - 3) / 2;
                    if a % 2 == 1 && b % 2 == 1 && a >= 5 {
                        upper = (n - 5) / 2;
                        provenance.push(WINDOW5_UPPER);
                    }
                    let lower = if b % 2 == 1 {
                        provenance.push(ODD_B_LOWER);
                        (n - a) / 2
                    } else if a % 2 == 0 {
                        provenance.push(EVEN_EVEN_LOWER);
                        (n - a) / 2
                    } else if b % 4 == 0 {
                        provenance.push(ZERO_MOD4_LOWER);
                        (n - (2 * a).min(b)) / 2
                    } else {
                        provenance.push(TWO_MOD4_LOWER);
                        (n - (4 * a).min(b)) / 2
                    };
                    BoundsEntry::new(kind, lower, upper, provenance)
                }
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sudoku(a: usize, b: usize) -> BoundsEntry {
        known_bounds(BoundKind::Sudoku { a, b }).unwrap()
    }

    #[test]
    fn plain_entries() {
        let e = known_bounds(BoundKind::Plain(9)).unwrap();
        assert_eq!((e.lower, e.upper, e.exact), (4, 4, true));
        let e = known_bounds(BoundKind::Plain(10)).unwrap();
        assert_eq!((e.lower, e.upper, e.exact), (4, 4, true));
        let e = known_bounds(BoundKind::Plain(2)).unwrap();
        assert_eq!((e.lower, e.upper), (1, 1));
        assert!(known_bounds(BoundKind::Plain(1)).is_err());
    }

    #[test]
    fn pandiagonal_entries() {
        let e = known_bounds(BoundKind::Pandiagonal(11)).unwrap();
        assert_eq!((e.lower, e.upper, e.exact, e.existence), (4, 4, true, true));
        let e = known_bounds(BoundKind::Pandiagonal(6)).unwrap();
        assert!(!e.existence && !e.exact);
    }

    #[test]
    fn sudoku_entries() {
        let e = sudoku(7, 8);
        assert_eq!((e.lower, e.upper, e.exact), (24, 26, false));
        let e = sudoku(5, 7);
        assert_eq!((e.lower, e.upper, e.exact), (15, 15, true));
        let e = sudoku(2, 9);
        assert_eq!((e.lower, e.upper, e.exact), (8, 8, true));
        let e = sudoku(3, 3);
        assert_eq!((e.lower, e.upper, e.exact), (3, 3, true));
        let e = sudoku(3, 4);
        assert_eq!((e.lower, e.upper, e.exact), (4, 4, true));
        let e = sudoku(3, 6);
        assert_eq!((e.lower, e.upper, e.exact), (6, 7, false));
        let e = sudoku(7, 7);
        assert_eq!((e.lower, e.upper, e.exact), (21, 22, false));
    }

    #[test]
    fn sudoku_entries_are_symmetric() {
        for a in 1..=12 {
            for b in 1..=12 {
                if a * b < 2 {
                    continue;
                }
                let (x, y) = (sudoku(a, b), sudoku(b, a));
                assert_eq!((x.lower, x.upper, x.exact), (y.lower, y.upper, y.exact));
                assert!(x.lower <= x.upper);
            }
        }
    }

    #[test]
    fn json_row() {
        let e = sudoku(2, 9);
        let v: serde_json::Value = serde_json::from_str(&e.to_json()).unwrap();
        assert_eq!(v["kind"], "sudoku");
        assert_eq!(v["n"], 18);
        assert_eq!(v["lower"], 8);
        assert_eq!(v["exact"], true);
    }
}
