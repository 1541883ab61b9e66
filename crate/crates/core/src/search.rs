//! Exhaustive backtracking search over Latin squares with a minimum inner
//! distance, optionally pandiagonal or Sudoku.
//!
//! Cells are filled row-major. Candidate symbols for a cell are the
//! intersection of bitmasks: unused in the row, column (and block or
//! diagonals), and at distance at least `d` from the already placed left
//! and upper neighbours. Multi-worker runs split the tree on first-row
//! prefixes; counts and sorted witnesses do not depend on the worker count.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::construct::{known_bounds, BoundKind};
use crate::error::{domain, Error, Result};
use crate::grid::{SquareGrid, SudokuShape};
use crate::metrics::symbol_distance;

/// Largest order the bitmask engine supports.
pub const MAX_SEARCH_ORDER: usize = 64;

pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Constraint {
    Plain,
    Pandiagonal,
    Sudoku(SudokuShape),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    /// Count every solution.
    Count,
    /// Count and collect every solution.
    Enumerate,
    /// Stop at the first solution (in lexicographic row-major order).
    Exists,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Symmetry {
    None,
    /// Only squares with `m[1][1] = 1`. Cyclically shifting all symbols
    /// preserves every constraint, so the full count is `n` times this one.
    FixFirstCell,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchQuery {
    pub order: usize,
    pub constraint: Constraint,
    pub min_distance: u32,
    pub mode: SearchMode,
    pub symmetry: Symmetry,
    pub node_budget: Option<u64>,
    /// Worker threads; `1` runs on the calling thread.
    pub workers: usize,
}

impl SearchQuery {
    pub fn new(order: usize, constraint: Constraint, min_distance: u32, mode: SearchMode) -> Self {
        Self {
            order,
            constraint,
            min_distance,
            mode,
            symmetry: Symmetry::None,
            node_budget: Some(DEFAULT_NODE_BUDGET),
            workers: 1,
        }
    }

    pub fn plain(order: usize, min_distance: u32, mode: SearchMode) -> Self {
        Self::new(order, Constraint::Plain, min_distance, mode)
    }

    pub fn pandiagonal(order: usize, min_distance: u32, mode: SearchMode) -> Self {
        Self::new(order, Constraint::Pandiagonal, min_distance, mode)
    }

    pub fn sudoku(shape: SudokuShape, min_distance: u32, mode: SearchMode) -> Self {
        Self::new(shape.order(), Constraint::Sudoku(shape), min_distance, mode)
    }

    pub fn with_symmetry(mut self, symmetry: Symmetry) -> Self {
        self.symmetry = symmetry;
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn with_budget(mut self, budget: Option<u64>) -> Self {
        self.node_budget = budget;
        self
    }

    fn validate(&self) -> Result<()> {
        let n = self.order;
        if !(2..=MAX_SEARCH_ORDER).contains(&n) {
            return Err(domain(format!(
                "search order {n} outside 2..={MAX_SEARCH_ORDER}"
            )));
        }
        if self.min_distance == 0 {
            return Err(domain("minimum distance must be at least 1"));
        }
        if self.workers == 0 {
            return Err(domain("at least one worker is required"));
        }
        if let Constraint::Sudoku(shape) = self.constraint {
            shape.check_order(n)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    /// Solutions found. Exact when `complete`; in exists mode 0 or 1.
    pub count: u64,
    /// Collected solutions in lexicographic row-major order (enumerate and
    /// exists modes).
    pub witnesses: Vec<SquareGrid>,
    pub nodes_expanded: u64,
    /// False when the node budget ran out before the tree was exhausted.
    pub complete: bool,
}

impl SearchResult {
    /// Count over all symbol choices for the first cell.
    pub fn full_count(&self, query: &SearchQuery) -> u64 {
        match query.symmetry {
            Symmetry::None => self.count,
            Symmetry::FixFirstCell => self.count * query.order as u64,
        }
    }
}

/// Static tables shared by all workers.
struct Tables {
    n: usize,
    full: u64,
    /// `admissible[u - 1]`: symbols at distance `>= d` from `u`.
    admissible: Vec<u64>,
    block_of: Vec<usize>,
    fdiag_of: Vec<usize>,
    bdiag_of: Vec<usize>,
    use_blocks: bool,
    use_diagonals: bool,
    fix_first: bool,
}

impl Tables {
    fn new(q: &SearchQuery) -> Self {
        let n = q.order;
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let admissible = (1..=n as u32)
            .map(|u| {
                (1..=n as u32)
                    .filter(|&v| symbol_distance(u, v, n as u32) >= q.min_distance)
                    .fold(0u64, |m, v| m | 1 << (v - 1))
            })
            .collect();
        let cells = n * n;
        let (mut block_of, mut fdiag_of, mut bdiag_of) =
            (vec![0; cells], vec![0; cells], vec![0; cells]);
        for r in 0..n {
            for c in 0..n {
                let idx = r * n + c;
                if let Constraint::Sudoku(shape) = q.constraint {
                    block_of[idx] = shape.block_index(r, c);
                }
                fdiag_of[idx] = (r + n - c) % n;
                bdiag_of[idx] = (r + c) % n;
            }
        }
        Self {
            n,
            full,
            admissible,
            block_of,
            fdiag_of,
            bdiag_of,
            use_blocks: matches!(q.constraint, Constraint::Sudoku(_)),
            use_diagonals: q.constraint == Constraint::Pandiagonal,
            fix_first: q.symmetry == Symmetry::FixFirstCell,
        }
    }
}

/// Shared run control: node budget and early stop.
struct Control {
    budget: u64,
    batch: u64,
    nodes: AtomicU64,
    exhausted: AtomicBool,
    /// Exists mode: lowest prefix index that has produced a solution.
    best_prefix: AtomicUsize,
}

const NODE_BATCH: u64 = 4096;

struct Worker<'a> {
    t: &'a Tables,
    ctl: &'a Control,
    mode: SearchMode,
    prefix_index: usize,
    cells: Vec<u32>,
    rows: Vec<u64>,
    cols: Vec<u64>,
    blocks: Vec<u64>,
    fdiags: Vec<u64>,
    bdiags: Vec<u64>,
    count: u64,
    witnesses: Vec<SquareGrid>,
    local_nodes: u64,
    nodes_total: u64,
    stopped: bool,
}

impl<'a> Worker<'a> {
    fn new(t: &'a Tables, ctl: &'a Control, mode: SearchMode) -> Self {
        let n = t.n;
        Self {
            t,
            ctl,
            mode,
            prefix_index: 0,
            cells: vec![0; n * n],
            rows: vec![0; n],
            cols: vec![0; n],
            blocks: vec![0; n],
            fdiags: vec![0; n],
            bdiags: vec![0; n],
            count: 0,
            witnesses: Vec::new(),
            local_nodes: 0,
            nodes_total: 0,
            stopped: false,
        }
    }

    #[inline]
    fn candidates(&self, idx: usize) -> u64 {
        let t = self.t;
        let (r, c) = (idx / t.n, idx % t.n);
        let mut mask = t.full & !self.rows[r] & !self.cols[c];
        if t.use_blocks {
            mask &= !self.blocks[t.block_of[idx]];
        }
        if t.use_diagonals {
            mask &= !self.fdiags[t.fdiag_of[idx]] & !self.bdiags[t.bdiag_of[idx]];
        }
        if c > 0 {
            mask &= t.admissible[self.cells[idx - 1] as usize - 1];
        }
        if r > 0 {
            mask &= t.admissible[self.cells[idx - t.n] as usize - 1];
        }
        if idx == 0 && t.fix_first {
            mask &= 1;
        }
        mask
    }

    #[inline]
    fn place(&mut self, idx: usize, sym: u32) {
        let t = self.t;
        let bit = 1u64 << (sym - 1);
        let (r, c) = (idx / t.n, idx % t.n);
        self.cells[idx] = sym;
        self.rows[r] |= bit;
        self.cols[c] |= bit;
        self.blocks[t.block_of[idx]] |= bit;
        self.fdiags[t.fdiag_of[idx]] |= bit;
        self.bdiags[t.bdiag_of[idx]] |= bit;
    }

    #[inline]
    fn unplace(&mut self, idx: usize, sym: u32) {
        let t = self.t;
        let bit = !(1u64 << (sym - 1));
        let (r, c) = (idx / t.n, idx % t.n);
        self.cells[idx] = 0;
        self.rows[r] &= bit;
        self.cols[c] &= bit;
        self.blocks[t.block_of[idx]] &= bit;
        self.fdiags[t.fdiag_of[idx]] &= bit;
        self.bdiags[t.bdiag_of[idx]] &= bit;
    }

    /// Counts a node; returns false when the search must stop.
    #[inline]
    fn tick(&mut self) -> bool {
        self.local_nodes += 1;
        if self.local_nodes >= self.ctl.batch {
            self.flush_nodes();
            if self.ctl.nodes.load(Ordering::Relaxed) > self.ctl.budget {
                self.ctl.exhausted.store(true, Ordering::Relaxed);
            }
            if self.ctl.exhausted.load(Ordering::Relaxed)
                || self.ctl.best_prefix.load(Ordering::Relaxed) < self.prefix_index
            {
                self.stopped = true;
            }
        }
        !self.stopped
    }

    fn flush_nodes(&mut self) {
        self.ctl
            .nodes
            .fetch_add(self.local_nodes, Ordering::Relaxed);
        self.nodes_total += self.local_nodes;
        self.local_nodes = 0;
    }

    fn record_solution(&mut self) {
        self.count += 1;
        if self.mode != SearchMode::Count {
            let grid = SquareGrid::from_cells(self.t.n, self.cells.clone())
                .expect("search fills every cell with a valid symbol");
            self.witnesses.push(grid);
        }
        if self.mode == SearchMode::Exists {
            self.ctl
                .best_prefix
                .fetch_min(self.prefix_index, Ordering::Relaxed);
            self.stopped = true;
        }
    }

    fn dfs(&mut self, idx: usize) {
        if idx == self.cells.len() {
            self.record_solution();
            return;
        }
        let mut mask = self.candidates(idx);
        while mask != 0 {
            let sym = mask.trailing_zeros() + 1;
            mask &= mask - 1;
            if !self.tick() {
                return;
            }
            self.place(idx, sym);
            self.dfs(idx + 1);
            self.unplace(idx, sym);
            if self.stopped {
                return;
            }
        }
    }

    /// Collects every consistent assignment of the first `depth` cells, in
    /// lexicographic order.
    fn prefixes(&mut self, idx: usize, depth: usize, out: &mut Vec<Vec<u32>>) {
        if idx == depth {
            out.push(self.cells[..depth].to_vec());
            return;
        }
        let mut mask = self.candidates(idx);
        while mask != 0 {
            let sym = mask.trailing_zeros() + 1;
            mask &= mask - 1;
            if !self.tick() {
                return;
            }
            self.place(idx, sym);
            self.prefixes(idx + 1, depth, out);
            self.unplace(idx, sym);
            if self.stopped {
                return;
            }
        }
    }
}

/// Runs a search to completion or until the node budget is spent.
pub fn run_search(q: &SearchQuery) -> Result<SearchResult> {
    q.validate()?;
    let tables = Tables::new(q);
    let budget = q.node_budget.unwrap_or(u64::MAX);
    let ctl = Control {
        budget,
        batch: NODE_BATCH.min(budget.saturating_add(1)),
        nodes: AtomicU64::new(0),
        exhausted: AtomicBool::new(false),
        best_prefix: AtomicUsize::new(usize::MAX),
    };

    if q.workers == 1 {
        let mut w = Worker::new(&tables, &ctl, q.mode);
        w.dfs(0);
        w.flush_nodes();
        return Ok(finish(&ctl, w.count, w.witnesses));
    }

    // split on first-row prefixes, deep enough to keep every worker busy
    let n = q.order;
    let mut prefixes = Vec::new();
    let mut seed = Worker::new(&tables, &ctl, q.mode);
    for depth in 1..=n {
        prefixes.clear();
        seed.prefixes(0, depth, &mut prefixes);
        if prefixes.len() >= 8 * q.workers || ctl.exhausted.load(Ordering::Relaxed) {
            break;
        }
    }
    seed.flush_nodes();
    if ctl.exhausted.load(Ordering::Relaxed) {
        return Ok(finish(&ctl, 0, Vec::new()));
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(q.workers)
        .build()
        .map_err(|e| Error::Domain(format!("cannot start workers: {e}")))?;
    let parts: Vec<(usize, u64, Vec<SquareGrid>)> = pool.install(|| {
        prefixes
            .par_iter()
            .enumerate()
            .map(|(i, prefix)| {
                let mut w = Worker::new(&tables, &ctl, q.mode);
                w.prefix_index = i;
                if ctl.best_prefix.load(Ordering::Relaxed) < i
                    || ctl.exhausted.load(Ordering::Relaxed)
                {
                    return (i, 0, Vec::new());
                }
                for (idx, &sym) in prefix.iter().enumerate() {
                    w.place(idx, sym);
                }
                w.dfs(prefix.len());
                w.flush_nodes();
                (i, w.count, w.witnesses)
            })
            .collect()
    });

    let (count, witnesses) = if q.mode == SearchMode::Exists {
        let best = ctl.best_prefix.load(Ordering::Relaxed);
        match parts.into_iter().find(|(i, c, _)| *i == best && *c > 0) {
            Some((_, _, w)) => (1, w),
            None => (0, Vec::new()),
        }
    } else {
        let count = parts.iter().map(|p| p.1).sum();
        let mut witnesses: Vec<SquareGrid> = parts.into_iter().flat_map(|p| p.2).collect();
        witnesses.sort_unstable_by(|x, y| x.cells().cmp(y.cells()));
        (count, witnesses)
    };
    Ok(finish(&ctl, count, witnesses))
}

fn finish(ctl: &Control, count: u64, witnesses: Vec<SquareGrid>) -> SearchResult {
    let nodes = ctl.nodes.load(Ordering::Relaxed);
    let complete = !ctl.exhausted.load(Ordering::Relaxed) && nodes <= ctl.budget;
    SearchResult {
        count,
        witnesses,
        nodes_expanded: nodes,
        complete,
    }
}

/// Outcome of a maximum-distance search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum MaxDistance {
    /// The largest `d` with a solution, every larger `d` refuted.
    Exact { value: u32 },
    /// The budget ran out; the maximum lies in `lower..=upper`.
    Unknown { lower: u32, upper: u32 },
}

/// Finds the maximum inner distance for a class by descending from just
/// above its known upper bound until a square exists.
pub fn max_distance_via_search(
    kind: BoundKind,
    node_budget: Option<u64>,
    workers: usize,
) -> Result<MaxDistance> {
    let bounds = known_bounds(kind)?;
    let n = kind.order();
    let top = (bounds.upper as u32 + 1).min(n as u32 / 2 + 1).max(1);
    let mut unknown_above: Option<u32> = None;
    for d in (1..=top).rev() {
        let q = match kind {
            BoundKind::Plain(n) => SearchQuery::plain(n, d, SearchMode::Exists),
            BoundKind::Pandiagonal(n) => SearchQuery::pandiagonal(n, d, SearchMode::Exists),
            BoundKind::Sudoku { a, b } => {
                SearchQuery::sudoku(SudokuShape::new(a, b)?, d, SearchMode::Exists)
            }
        }
        .with_budget(node_budget)
        .with_workers(workers);
        let res = run_search(&q)?;
        if res.count > 0 {
            return Ok(match unknown_above {
                None => MaxDistance::Exact { value: d },
                Some(upper) => MaxDistance::Unknown { lower: d, upper },
            });
        }
        if !res.complete && unknown_above.is_none() {
            unknown_above = Some(d);
        }
    }
    match unknown_above {
        Some(upper) => Ok(MaxDistance::Unknown { lower: 0, upper }),
        None => Err(Error::Nonexistence(format!(
            "no {} square of order {n} exists",
            kind.name()
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::inner_distance_value;
    use crate::validate::{validate_latin, validate_pandiagonal, validate_sudoku};

    fn count(q: SearchQuery) -> u64 {
        let res = run_search(&q).unwrap();
        assert!(res.complete);
        res.count
    }

    #[test]
    fn small_plain_counts() {
        assert_eq!(count(SearchQuery::plain(3, 1, SearchMode::Count)), 12);
        assert_eq!(count(SearchQuery::plain(4, 1, SearchMode::Count)), 576);
        assert_eq!(count(SearchQuery::plain(4, 2, SearchMode::Count)), 0);
        assert_eq!(count(SearchQuery::plain(5, 2, SearchMode::Count)), 20);
        assert_eq!(count(SearchQuery::plain(2, 1, SearchMode::Count)), 2);
    }

    #[test]
    fn query_validation() {
        assert!(run_search(&SearchQuery::plain(1, 1, SearchMode::Count)).is_err());
        assert!(run_search(&SearchQuery::plain(4, 0, SearchMode::Count)).is_err());
        assert!(run_search(&SearchQuery::plain(65, 1, SearchMode::Count)).is_err());
        let bad = SearchQuery::new(
            6,
            Constraint::Sudoku(SudokuShape { a: 2, b: 2 }),
            1,
            SearchMode::Count,
        );
        assert!(run_search(&bad).is_err());
        assert!(run_search(&SearchQuery::plain(4, 1, SearchMode::Count).with_workers(0)).is_err());
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let q = SearchQuery::plain(5, 1, SearchMode::Count).with_budget(Some(100));
        let res = run_search(&q).unwrap();
        assert!(!res.complete);
        assert!(res.count < 161_280);
        let res = run_search(&q.clone().with_workers(3)).unwrap();
        assert!(!res.complete);
    }

    #[test]
    fn witnesses_satisfy_constraints() {
        let res = run_search(&SearchQuery::plain(7, 3, SearchMode::Enumerate)).unwrap();
        assert_eq!(res.count, 28);
        assert_eq!(res.witnesses.len(), 28);
        for w in &res.witnesses {
            assert!(validate_latin(w).verdict);
            assert!(inner_distance_value(w).unwrap() >= 3);
        }
        assert!(res
            .witnesses
            .windows(2)
            .all(|p| p[0].cells() < p[1].cells()));

        let res = run_search(&SearchQuery::pandiagonal(7, 2, SearchMode::Enumerate)).unwrap();
        assert!(res.count > 0);
        for w in &res.witnesses {
            assert!(validate_pandiagonal(w).verdict);
            assert!(inner_distance_value(w).unwrap() >= 2);
        }

        let shape = SudokuShape::new(2, 3).unwrap();
        let res = run_search(&SearchQuery::sudoku(shape, 2, SearchMode::Enumerate)).unwrap();
        assert!(res.count > 0);
        for w in &res.witnesses {
            assert!(validate_sudoku(w, shape).unwrap().verdict);
            assert!(inner_distance_value(w).unwrap() >= 2);
        }
    }

    #[test]
    fn worker_count_does_not_change_results() {
        for workers in [2, 3, 8] {
            let single = run_search(&SearchQuery::plain(5, 1, SearchMode::Count)).unwrap();
            let multi =
                run_search(&SearchQuery::plain(5, 1, SearchMode::Count).with_workers(workers))
                    .unwrap();
            assert_eq!(single.count, multi.count);
            assert_eq!(single.count, 161_280);

            let q = SearchQuery::plain(7, 3, SearchMode::Enumerate);
            let single = run_search(&q).unwrap();
            let multi = run_search(&q.clone().with_workers(workers)).unwrap();
            assert_eq!(single.witnesses, multi.witnesses);

            let q = SearchQuery::plain(6, 2, SearchMode::Exists);
            let single = run_search(&q).unwrap();
            let multi = run_search(&q.clone().with_workers(workers)).unwrap();
            assert_eq!(single.count, 1);
            assert_eq!(single.witnesses, multi.witnesses);
        }
    }

    #[test]
    fn fixing_first_cell_divides_by_order() {
        for (n, d) in [(5, 2), (7, 3), (5, 1), (4, 1)] {
            let q = SearchQuery::plain(n, d, SearchMode::Count);
            let full = run_search(&q).unwrap();
            let fixed_q = q.clone().with_symmetry(Symmetry::FixFirstCell);
            let fixed = run_search(&fixed_q).unwrap();
            assert_eq!(fixed.count * n as u64, full.count);
            assert_eq!(fixed.full_count(&fixed_q), full.count);
        }
    }

    #[test]
    fn monotone_in_distance() {
        let mut prev = u64::MAX;
        for d in 1..=3 {
            let c = count(SearchQuery::sudoku(
                SudokuShape::new(2, 3).unwrap(),
                d,
                SearchMode::Count,
            ));
            assert!(c <= prev);
            prev = c;
        }
    }

    #[test]
    fn max_distance_small_cases() {
        assert_eq!(
            max_distance_via_search(BoundKind::Plain(6), None, 1).unwrap(),
            MaxDistance::Exact { value: 2 }
        );
        assert_eq!(
            max_distance_via_search(BoundKind::Sudoku { a: 2, b: 2 }, None, 1).unwrap(),
            MaxDistance::Exact { value: 1 }
        );
        assert!(matches!(
            max_distance_via_search(BoundKind::Pandiagonal(4), None, 1),
            Err(Error::Nonexistence(_))
        ));
        assert!(matches!(
            max_distance_via_search(BoundKind::Plain(7), Some(10), 1).unwrap(),
            MaxDistance::Unknown { .. }
        ));
    }
}
