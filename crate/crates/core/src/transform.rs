//! Isotopies, transposition and reduction of cyclic squares to the
//! circulant canonical form.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::grid::SquareGrid;

/// Row, column and symbol permutations, each stored as the 1-based image of
/// `1..=n`. Applying it moves the symbol `v` at `(i, j)` to
/// `(rows[i], cols[j])` and relabels it `symbols[v]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridPermutation {
    pub rows: Vec<u32>,
    pub cols: Vec<u32>,
    pub symbols: Vec<u32>,
}

fn is_permutation(p: &[u32]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&v| {
        let i = v as usize;
        i >= 1 && i <= seen.len() && !std::mem::replace(&mut seen[i - 1], true)
    })
}

impl GridPermutation {
    pub fn identity(n: usize) -> Self {
        let id: Vec<u32> = (1..=n as u32).collect();
        Self {
            rows: id.clone(),
            cols: id.clone(),
            symbols: id,
        }
    }

    pub fn new(rows: Vec<u32>, cols: Vec<u32>, symbols: Vec<u32>) -> Result<Self> {
        let n = rows.len();
        if cols.len() != n || symbols.len() != n {
            return Err(domain("permutation components differ in length"));
        }
        for (name, p) in [("row", &rows), ("column", &cols), ("symbol", &symbols)] {
            if !is_permutation(p) {
                return Err(domain(format!(
                    "{name} component is not a permutation of 1..={n}"
                )));
            }
        }
        Ok(Self {
            rows,
            cols,
            symbols,
        })
    }

    pub fn order(&self) -> usize {
        self.rows.len()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("permutation serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let p: Self = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::new(p.rows, p.cols, p.symbols)
    }

    /// `other` after `self`.
    pub fn then(&self, other: &Self) -> Self {
        let compose =
            |first: &[u32], second: &[u32]| first.iter().map(|&v| second[v as usize - 1]).collect();
        Self {
            rows: compose(&self.rows, &other.rows),
            cols: compose(&self.cols, &other.cols),
            symbols: compose(&self.symbols, &other.symbols),
        }
    }
}

/// Applies `p`: `out[rows[i]][cols[j]] = symbols[g[i][j]]`.
pub fn apply(g: &SquareGrid, p: &GridPermutation) -> Result<SquareGrid> {
    let n = g.order();
    if p.order() != n {
        return Err(domain(format!(
            "permutation of size {} applied to order-{n} grid",
            p.order()
        )));
    }
    let mut cells = vec![0u32; n * n];
    for r in 0..n {
        let target_row = p.rows[r] as usize - 1;
        for c in 0..n {
            let target_col = p.cols[c] as usize - 1;
            cells[target_row * n + target_col] = p.symbols[g.get(r, c) as usize - 1];
        }
    }
    SquareGrid::from_cells(n, cells)
}

pub fn transpose(g: &SquareGrid) -> SquareGrid {
    g.transpose()
}

/// `m[i][j] = m[i-1][j-1]` for all cells, indices wrapping.
pub fn is_circulant(g: &SquareGrid) -> bool {
    let n = g.order();
    (0..n).all(|r| (0..n).all(|c| g.get(r, c) == g.get((r + n - 1) % n, (c + n - 1) % n)))
}

/// `m[i][j] = m[i-1][j+1]` for all cells, indices wrapping.
pub fn is_back_circulant(g: &SquareGrid) -> bool {
    let n = g.order();
    (0..n).all(|r| (0..n).all(|c| g.get(r, c) == g.get((r + n - 1) % n, (c + 1) % n)))
}

/// The circulant with first row `1..=n`: `m[i][j] = j - i + 1 (mod n)`.
pub fn canonical_circulant(n: usize) -> SquareGrid {
    SquareGrid::from_fn(n, |r, c| ((c + n - r) % n + 1) as u32)
}

fn not_reducible(msg: impl Into<String>) -> Error {
    Error::NotReducible(msg.into())
}

/// Maps `g` onto the circulant with first row `1..=n`, returning it along
/// with the isotopy that does so.
///
/// The symbols are first relabelled so the top row reads `1..=n` and the
/// rows are reordered so the left column does too. The result is the
/// multiplication table of a loop with identity `1`. If that loop is cyclic,
/// a generator `g` gives labels `g^k -> k`; applying this relabelling to rows,
/// columns and symbols yields the addition table of `Z_n`, and reversing the
/// rows turns that into the circulant. Squares produced by the shift
/// constructions all have this structure. Failure means the square is not
/// isotopic to a cyclic group table.
pub fn to_circulant_canonical(g: &SquareGrid) -> Result<(SquareGrid, GridPermutation)> {
    let n = g.order();
    let canonical = canonical_circulant(n);
    if *g == canonical {
        return Ok((canonical, GridPermutation::identity(n)));
    }
    if !crate::validate::validate_latin(g).verdict {
        return Err(not_reducible("input is not a Latin square"));
    }

    // 1. symbols so the first row reads 1..=n
    let mut relabel = vec![0u32; n];
    for c in 0..n {
        relabel[g.get(0, c) as usize - 1] = c as u32 + 1;
    }
    let step1 = GridPermutation {
        rows: (1..=n as u32).collect(),
        cols: (1..=n as u32).collect(),
        symbols: relabel.clone(),
    };
    // 2. rows so the first column reads 1..=n
    let step2 = GridPermutation {
        rows: (0..n).map(|r| relabel[g.get(r, 0) as usize - 1]).collect(),
        cols: (1..=n as u32).collect(),
        symbols: (1..=n as u32).collect(),
    };
    let first = step1.then(&step2);
    let loop_table = apply(g, &first)?;
    let mul = |x: u32, y: u32| loop_table.get(x as usize - 1, y as usize - 1);

    // 3. find a generator; element 2 is tried first so cyclic inputs that are
    // already in additive form keep their natural labelling
    let mut labels = None;
    for generator in (2..=n as u32).chain(std::iter::once(1)).take(n) {
        let mut label = vec![0u32; n];
        let mut x = 1u32;
        let mut ok = true;
        for k in 0..n as u32 {
            if label[x as usize - 1] != 0 {
                ok = false;
                break;
            }
            label[x as usize - 1] = k;
            x = mul(x, generator);
        }
        if ok && x == 1 {
            labels = Some(label);
            break;
        }
    }
    let labels = labels.ok_or_else(|| not_reducible("no element generates the whole square"))?;

    // g^k -> k + 1 on rows, cols and symbols gives m = i + j - 1; row i -> 2 - i
    // then gives m = j - i + 1
    let by_power: Vec<u32> = labels.iter().map(|&k| k + 1).collect();
    let step3 = GridPermutation {
        rows: labels
            .iter()
            .map(|&k| ((n as u32 - k) % n as u32) + 1)
            .collect(),
        cols: by_power.clone(),
        symbols: by_power,
    };
    let total = first.then(&step3);
    let result = apply(g, &total)?;
    if result != canonical {
        return Err(not_reducible(
            "square is not isotopic to a cyclic group table",
        ));
    }
    Ok((result, total))
}
