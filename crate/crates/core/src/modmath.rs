//! Modular arithmetic with residues in `[1, n]`.
//!
//! All public operations return representatives in `1..=n` rather than
//! `0..n`, so that `0 mod n` is `n`.

use std::fmt;

use serde::Serialize;

use crate::error::{domain, Result};

/// A residue class modulo `n`, represented by its unique member in `[1, n]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Residue1N {
    value: u64,
    modulus: u64,
}

impl Residue1N {
    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }
}

impl fmt::Display for Residue1N {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl From<Residue1N> for u64 {
    fn from(r: Residue1N) -> u64 {
        r.value
    }
}

/// Reduces `a` into `[1, n]`.
pub fn mod1n(a: i64, n: u64) -> Result<Residue1N> {
    if n == 0 {
        return Err(domain("modulus must be positive"));
    }
    Ok(Residue1N {
        value: reduce(a, n),
        modulus: n,
    })
}

/// Unchecked form of [`mod1n`] for hot paths; `n` must be positive.
#[inline]
pub(crate) fn reduce(a: i64, n: u64) -> u64 {
    let n = n as i128;
    let r = (a as i128 - 1).rem_euclid(n) + 1;
    r as u64
}

/// Greatest common divisor of `|a|` and `|b|`, with `gcd(0, 0) = 0`.
pub fn gcd(a: i64, b: i64) -> u64 {
    let (mut x, mut y) = (a.unsigned_abs(), b.unsigned_abs());
    while y != 0 {
        (x, y) = (y, x % y);
    }
    x
}

/// The sequence `start + m * step (mod n)` for `m = 0..n`.
pub fn residue_orbit(start: i64, step: i64, n: u64) -> Result<Vec<Residue1N>> {
    if n == 0 {
        return Err(domain("modulus must be positive"));
    }
    // work in i128 so large steps cannot overflow
    let (start, step, m) = (start as i128, step as i128, n as i128);
    Ok((0..m)
        .map(|k| Residue1N {
            value: ((start + k * step - 1).rem_euclid(m) + 1) as u64,
            modulus: n,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn values(v: Vec<Residue1N>) -> Vec<u64> {
        v.into_iter().map(u64::from).collect()
    }

    #[test]
    fn one_based_reduction() {
        assert_eq!(mod1n(0, 5).unwrap().value(), 5);
        assert_eq!(mod1n(13, 9).unwrap().value(), 4);
        assert_eq!(mod1n(-4, 11).unwrap().value(), 7);
        assert_eq!(mod1n(7, 1).unwrap().value(), 1);
        assert!(matches!(mod1n(3, 0), Err(crate::Error::Domain(_))));
    }

    #[test]
    fn gcd_values() {
        assert_eq!(gcd(9, 4), 1);
        assert_eq!(gcd(16, 6), 2);
        assert_eq!(gcd(15, 6), 3);
        assert_eq!(gcd(-12, 18), 6);
        assert_eq!(gcd(0, 7), 7);
        assert_eq!(gcd(0, 0), 0);
    }

    #[test]
    fn orbits() {
        assert_eq!(
            values(residue_orbit(1, 4, 9).unwrap()),
            vec![1, 5, 9, 4, 8, 3, 7, 2, 6]
        );
        assert_eq!(values(residue_orbit(1, 1, 4).unwrap()), vec![1, 2, 3, 4]);
        assert_eq!(
            values(residue_orbit(1, 3, 9).unwrap()),
            vec![1, 4, 7, 1, 4, 7, 1, 4, 7]
        );
        assert!(residue_orbit(1, 1, 0).is_err());
    }

    #[test]
    fn coprime_step_orbit_covers_all_residues() {
        for n in 1..=30u64 {
            for k in 1..=n as i64 {
                if gcd(k, n as i64) != 1 {
                    continue;
                }
                for a in 1..=n as i64 {
                    let mut seen = values(residue_orbit(a, k, n).unwrap());
                    seen.sort_unstable();
                    assert_eq!(seen, (1..=n).collect::<Vec<_>>(), "n={n} k={k} a={a}");
                }
            }
        }
    }

    #[test]
    fn gcd_with_half_gap_recovers_short_side() {
        for a in 1..=12i64 {
            for b in (1..=13i64).step_by(2) {
                let n = a * b;
                assert_eq!(gcd(n, (n - a) / 2), a as u64, "a={a} b={b}");
            }
        }
    }

    proptest! {
        #[test]
        fn mod1n_is_congruent_and_in_range(a in -1_000_000i64..1_000_000, n in 1u64..500) {
            let r = mod1n(a, n).unwrap().value();
            prop_assert!((1..=n).contains(&r));
            prop_assert_eq!((a - r as i64).rem_euclid(n as i64), 0);
        }

        #[test]
        fn orbit_period_divides_by_gcd(start in -50i64..50, step in -60i64..60, n in 1u64..40) {
            let orbit = values(residue_orbit(start, step, n).unwrap());
            let period = (n / gcd(step, n as i64)) as usize;
            for m in 0..orbit.len() {
                prop_assert_eq!(orbit[m], orbit[(m + period) % orbit.len()]);
            }
            // no shorter period
            for p in 1..period {
                prop_assert!((0..orbit.len()).any(|m| orbit[m] != orbit[(m + p) % orbit.len()]));
            }
        }
    }
}
