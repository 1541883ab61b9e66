//! Adjacent distance and inner distance.
//!
//! Adjacency is edge-sharing without wraparound: boundary cells have two or
//! three neighbours.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::grid::SquareGrid;

/// `min(u - v mod n, v - u mod n)` with residues in `0..n`; lies in `0..=n/2`.
pub fn adjacent_distance(u: u32, v: u32, n: u32) -> Result<u32> {
    if n == 0 || u == 0 || v == 0 || u > n || v > n {
        return Err(domain(format!("symbols {u}, {v} outside 1..={n}")));
    }
    Ok(symbol_distance(u, v, n))
}

#[inline]
pub(crate) fn symbol_distance(u: u32, v: u32, n: u32) -> u32 {
    let d = u.abs_diff(v);
    d.min(n - d)
}

/// A pair of edge-adjacent cells, 1-based `(row, col)`.
pub type CellPair = ((usize, usize), (usize, usize));

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistanceReport {
    pub inner_distance: u32,
    /// Number of adjacent pairs realizing each distance value.
    pub classes: BTreeMap<u32, usize>,
    /// Pairs achieving the minimum, in row-major order of their first cell,
    /// horizontal neighbour before vertical.
    pub argmin_pairs: Vec<CellPair>,
}

impl DistanceReport {
    pub fn pair_count(&self) -> usize {
        self.classes.values().sum()
    }
}

fn for_each_adjacent(g: &SquareGrid, mut f: impl FnMut(CellPair, u32)) {
    let n = g.order();
    let order = n as u32;
    for r in 0..n {
        for c in 0..n {
            let u = g.get(r, c);
            if c + 1 < n {
                f(
                    ((r + 1, c + 1), (r + 1, c + 2)),
                    symbol_distance(u, g.get(r, c + 1), order),
                );
            }
            if r + 1 < n {
                f(
                    ((r + 1, c + 1), (r + 2, c + 1)),
                    symbol_distance(u, g.get(r + 1, c), order),
                );
            }
        }
    }
}

/// Minimum adjacent distance over the grid; `n = 1` is undefined.
pub fn inner_distance(g: &SquareGrid) -> Result<DistanceReport> {
    if g.order() < 2 {
        return Err(Error::UndefinedDistance);
    }
    let mut classes = BTreeMap::new();
    let mut best = u32::MAX;
    let mut argmin = Vec::new();
    for_each_adjacent(g, |pair, d| {
        *classes.entry(d).or_insert(0) += 1;
        if d < best {
            best = d;
            argmin.clear();
        }
        if d == best {
            argmin.push(pair);
        }
    });
    Ok(DistanceReport {
        inner_distance: best,
        classes,
        argmin_pairs: argmin,
    })
}

/// The inner distance alone, without building a report.
pub fn inner_distance_value(g: &SquareGrid) -> Result<u32> {
    if g.order() < 2 {
        return Err(Error::UndefinedDistance);
    }
    let mut best = u32::MAX;
    for_each_adjacent(g, |_, d| best = best.min(d));
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::validate::validate_latin;
    use proptest::prelude::*;

    #[test]
    fn distance_values() {
        assert_eq!(adjacent_distance(1, 5, 9).unwrap(), 4);
        assert_eq!(adjacent_distance(3, 3, 7).unwrap(), 0);
        assert_eq!(adjacent_distance(2, 10, 10).unwrap(), 2);
        assert!(adjacent_distance(0, 1, 4).is_err());
        assert!(adjacent_distance(1, 5, 4).is_err());
    }

    #[test]
    fn order_one_is_undefined() {
        let g = SquareGrid::from_rows(&[[1]]).unwrap();
        assert_eq!(inner_distance(&g), Err(Error::UndefinedDistance));
    }

    #[test]
    fn census_counts_every_adjacency() {
        let g = SquareGrid::from_fn(5, |r, c| ((r + c) % 5 + 1) as u32);
        let report = inner_distance(&g).unwrap();
        assert_eq!(report.inner_distance, 1);
        assert_eq!(report.pair_count(), 2 * 5 * 4);
        assert_eq!(report.classes.len(), 1);
        assert_eq!(report.argmin_pairs.len(), 40);
        assert_eq!(report.argmin_pairs[0], ((1, 1), (1, 2)));
        assert_eq!(report.argmin_pairs[1], ((1, 1), (2, 1)));
    }

    // arbitrary Latin squares: rows/columns/symbols of a cyclic square permuted
    fn latin_square() -> impl Strategy<Value = SquareGrid> {
        (2usize..10).prop_flat_map(|n| {
            let perm = || Just((0..n).collect::<Vec<_>>()).prop_shuffle();
            (perm(), perm(), perm()).prop_map(move |(pr, pc, ps)| {
                SquareGrid::from_fn(n, |r, c| ps[(pr[r] + pc[c]) % n] as u32 + 1)
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn distance_properties(g in latin_square(), shift in 0u32..20) {
            let n = g.order() as u32;
            prop_assert!(validate_latin(&g).verdict);
            let report = inner_distance(&g).unwrap();
            let d = report.inner_distance;
            prop_assert!(d >= 1);
            if n >= 3 {
                prop_assert!(d <= (n - 1) / 2);
            }
            prop_assert_eq!(report.pair_count(), 2 * (n * (n - 1)) as usize);
            prop_assert_eq!(inner_distance_value(&g.transpose()).unwrap(), d);
            let shifted = SquareGrid::from_fn(g.order(), |r, c| (g.get(r, c) + shift - 1) % n + 1);
            prop_assert_eq!(inner_distance_value(&shifted).unwrap(), d);
        }

        #[test]
        fn adjacent_distance_is_symmetric_and_bounded(
            (n, u, v) in (1u32..60).prop_flat_map(|n| (Just(n), 1..=n, 1..=n)),
            s in 0u32..60,
        ) {
            let d = adjacent_distance(u, v, n).unwrap();
            prop_assert!(d <= n / 2);
            prop_assert_eq!(d, adjacent_distance(v, u, n).unwrap());
            let (us, vs) = ((u + s - 1) % n + 1, (v + s - 1) % n + 1);
            prop_assert_eq!(d, adjacent_distance(us, vs, n).unwrap());
        }
    }
}
