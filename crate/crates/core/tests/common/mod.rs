#![allow(dead_code)]

use std::path::{Path, PathBuf};

use innerdist::SquareGrid;
use proptest::prelude::*;

pub fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

/// A golden grid file: the `gen` arguments from its header and the grid text.
pub struct Golden {
    pub name: String,
    pub args: Vec<String>,
    pub grid_text: String,
    pub distance: u32,
}

pub fn goldens() -> Vec<Golden> {
    let mut out = Vec::new();
    let mut paths: Vec<_> = std::fs::read_dir(fixtures_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "txt"))
        .collect();
    paths.sort();
    for path in paths {
        let text = std::fs::read_to_string(&path).unwrap();
        let mut args = None;
        let mut distance = None;
        let mut grid_text = String::new();
        for line in text.lines() {
            if let Some(cmd) = line.strip_prefix("# innerdist ") {
                args = Some(cmd.split_whitespace().map(str::to_owned).collect());
            } else if let Some(d) = line.strip_prefix("# inner distance ") {
                distance = Some(d.trim().parse().unwrap());
            } else if !line.starts_with('#') {
                grid_text.push_str(line);
                grid_text.push('\n');
            }
        }
        out.push(Golden {
            name: path.file_stem().unwrap().to_string_lossy().into_owned(),
            args: args.expect("golden header names its command"),
            grid_text,
            distance: distance.expect("golden header names its distance"),
        });
    }
    out
}

fn permutations(n: u32) -> Vec<Vec<u32>> {
    fn rec(prefix: &mut Vec<u32>, used: &mut [bool], out: &mut Vec<Vec<u32>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for s in 0..used.len() {
            if !used[s] {
                used[s] = true;
                prefix.push(s as u32 + 1);
                rec(prefix, used, out);
                prefix.pop();
                used[s] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n as usize], &mut out);
    out
}

/// Every Latin square of order `n`, built by stacking row permutations that
/// clash in no column. Only practical for n ≤ 5.
pub fn all_latin_squares(n: u32) -> Vec<SquareGrid> {
    fn rec(perms: &[Vec<u32>], rows: &mut Vec<usize>, out: &mut Vec<SquareGrid>, n: usize) {
        if rows.len() == n {
            let rows: Vec<&[u32]> = rows.iter().map(|&i| perms[i].as_slice()).collect();
            out.push(SquareGrid::from_rows(&rows).unwrap());
            return;
        }
        for (i, p) in perms.iter().enumerate() {
            let clash = rows
                .iter()
                .any(|&r| perms[r].iter().zip(p).any(|(x, y)| x == y));
            if !clash {
                rows.push(i);
                rec(perms, rows, out, n);
                rows.pop();
            }
        }
    }
    let perms = permutations(n);
    let mut out = Vec::new();
    rec(&perms, &mut Vec::new(), &mut out, n as usize);
    out
}

/// Random isotopes of the cyclic group table, orders `lo..=hi`.
pub fn latin_isotope(lo: usize, hi: usize) -> impl Strategy<Value = SquareGrid> {
    (lo..=hi)
        .prop_flat_map(|n| {
            let ident: Vec<u32> = (0..n as u32).collect();
            (
                Just(n),
                Just(ident.clone()).prop_shuffle(),
                Just(ident.clone()).prop_shuffle(),
                Just(ident).prop_shuffle(),
            )
        })
        .prop_map(|(n, rows, cols, syms)| {
            let mut cells = vec![0u32; n * n];
            for i in 0..n {
                for j in 0..n {
                    let v = (i + j) % n;
                    cells[rows[i] as usize * n + cols[j] as usize] = syms[v] + 1;
                }
            }
            SquareGrid::from_cells(n, cells).unwrap()
        })
}

pub fn shift_symbols(g: &SquareGrid, s: u32) -> SquareGrid {
    let n = g.order() as u32;
    let cells = g.cells().iter().map(|&v| (v - 1 + s) % n + 1).collect();
    SquareGrid::from_cells(g.order(), cells).unwrap()
}

pub fn gcd(a: i64, b: i64) -> i64 {
    innerdist::modmath::gcd(a, b) as i64
}
