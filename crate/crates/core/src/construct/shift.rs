use serde::Serialize;

use super::verified;
use crate::error::{domain, parameter, Error, Result};
use crate::grid::SquareGrid;
use crate::modmath::{gcd, reduce};
use crate::validate::{validate_latin, validate_pandiagonal};

/// Parameters of the band/stack shift construction.
///
/// Cell `(i, j)` (1-based) receives
/// `1 + (i-1)r + (j-1)c + alpha*floor((i-1)/R) + beta*floor((j-1)/C)  (mod n)`
/// with `R = n / gcd(n, r)` rows per band and `C = n / gcd(n, c)` columns
/// per stack.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ShiftParams {
    n: u64,
    r: u64,
    c: u64,
    alpha: i64,
    beta: i64,
    band: u64,
    stack: u64,
}

impl ShiftParams {
    /// Validates and normalizes parameters. `r` and `c` are reduced into
    /// `[1, n]` and must not be `0 mod n`; `alpha` must be coprime to `r`
    /// and `beta` coprime to `c`.
    pub fn new(n: u64, r: i64, c: i64, alpha: i64, beta: i64) -> Result<Self> {
        if n < 2 {
            return Err(parameter(format!("order {n} too small for a shift square")));
        }
        if n > u32::MAX as u64 {
            return Err(parameter(format!("order {n} too large")));
        }
        let (r, c) = (reduce(r, n), reduce(c, n));
        if r == n || c == n {
            return Err(parameter("r and c must not be multiples of n"));
        }
        if gcd(alpha, r as i64) != 1 {
            return Err(parameter(format!("gcd(alpha={alpha}, r={r}) must be 1")));
        }
        if gcd(beta, c as i64) != 1 {
            return Err(parameter(format!("gcd(beta={beta}, c={c}) must be 1")));
        }
        let band = n / gcd(n as i64, r as i64);
        let stack = n / gcd(n as i64, c as i64);
        Ok(Self {
            n,
            r,
            c,
            alpha,
            beta,
            band,
            stack,
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn c(&self) -> u64 {
        self.c
    }

    pub fn alpha(&self) -> i64 {
        self.alpha
    }

    pub fn beta(&self) -> i64 {
        self.beta
    }

    /// Rows per band.
    pub fn band_height(&self) -> u64 {
        self.band
    }

    /// Columns per stack.
    pub fn stack_width(&self) -> u64 {
        self.stack
    }

    #[inline]
    fn cell(&self, row: u64, col: u64) -> u32 {
        let n = self.n as i128;
        let v = row as i128 * self.r as i128
            + col as i128 * self.c as i128
            + self.alpha as i128 * (row / self.band) as i128
            + self.beta as i128 * (col / self.stack) as i128;
        (v.rem_euclid(n) + 1) as u32
    }
}

/// Fills the grid of the shift construction. Always Latin.
pub fn algorithm1(p: &ShiftParams) -> Result<SquareGrid> {
    let n = p.n as usize;
    let g = SquareGrid::from_fn(n, |r, c| p.cell(r as u64, c as u64));
    verified(g, "shift construction", validate_latin)
}

fn class_distance(x: i128, n: u64) -> u64 {
    let m = x.rem_euclid(n as i128) as u64;
    m.min(n - m)
}

/// Inner distance of [`algorithm1`]'s output, computed from the parameters.
///
/// Vertical neighbours differ by `r` inside a band and by `r + alpha` across
/// a band boundary; horizontal neighbours by `c` or `c + beta`. A boundary
/// class only counts when the grid actually has more than one band (stack).
pub fn predicted_inner_distance(p: &ShiftParams) -> u64 {
    let n = p.n;
    let mut d = class_distance(p.r as i128, n).min(class_distance(p.c as i128, n));
    if p.band_height() < n {
        d = d.min(class_distance(p.r as i128 + p.alpha as i128, n));
    }
    if p.stack_width() < n {
        d = d.min(class_distance(p.c as i128 + p.beta as i128, n));
    }
    d
}

/// Square whose first row is `1..=n` and where each row is the previous one
/// shifted right by `k`. `k = 1` gives the circulant, `k = -1` the back
/// circulant.
pub fn shift_by_k(n: u64, k: i64) -> Result<SquareGrid> {
    if n == 0 || n > u32::MAX as u64 {
        return Err(domain(format!("order {n} out of range")));
    }
    if gcd(k, n as i64) != 1 {
        return Err(parameter(format!("gcd(k={k}, n={n}) must be 1")));
    }
    let k = k.rem_euclid(n as i64) as u64;
    let g = SquareGrid::from_fn(n as usize, |r, c| {
        // m[r][c] = m[0][c - r*k]
        let shift = (r as u64 * k) % n;
        ((c as u64 + n - shift) % n + 1) as u32
    });
    verified(g, "shift-by-k", validate_latin)
}

/// A Latin square of order `n` attaining inner distance `floor((n-1)/2)`
/// (distance 1 for `n = 2`).
pub fn max_distance_square(n: u64) -> Result<SquareGrid> {
    let params = match n {
        0 | 1 => return Err(domain("maximum inner distance needs order at least 2")),
        2 => ShiftParams::new(2, 1, 1, 2, 2)?,
        _ if n % 2 == 1 => {
            let step = ((n - 1) / 2) as i64;
            ShiftParams::new(n, step, step, n as i64, n as i64)?
        }
        _ => {
            let step = ((n - 2) / 2) as i64;
            ShiftParams::new(n, step, step, 1, 1)?
        }
    };
    algorithm1(&params)
}

/// Pandiagonal Latin squares of order `n` exist iff `gcd(n, 6) = 1`.
pub fn pandiagonal_exists(n: u64) -> bool {
    n > 0 && !n.is_multiple_of(2) && !n.is_multiple_of(3)
}

/// A pandiagonal Latin square of inner distance `(n-3)/2`.
///
/// Built with vertical step `-(n-3)/2` and horizontal step `(n-1)/2`, both
/// coprime to `n`. Forward diagonals then advance by `1`, back diagonals
/// by `2`.
pub fn pandiagonal_max(n: u64) -> Result<SquareGrid> {
    if !pandiagonal_exists(n) {
        return Err(Error::Nonexistence(format!(
            "no pandiagonal Latin square of order {n} (n must be 1 or 5 mod 6)"
        )));
    }
    if n == 1 {
        return SquareGrid::from_rows(&[[1]]);
    }
    let n_i = n as i64;
    let params = ShiftParams::new(n, -(n_i - 3) / 2, (n_i - 1) / 2, n_i, n_i)?;
    let g = SquareGrid::from_fn(n as usize, |r, c| params.cell(r as u64, c as u64));
    verified(g, "pandiagonal construction", validate_pandiagonal)
}
