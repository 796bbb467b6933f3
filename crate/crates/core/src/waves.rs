//! Counting broken-geodesic lengths.
//!
//! A broken geodesic between vertices has length `Σ c_n √n` with `n` running
//! over the square-free representable norms. Square roots of distinct
//! square-free integers are linearly independent over ℚ, so two such sums
//! are equal exactly when their coefficient maps are, and the number of wave
//! fronts reaching the vertices by time `t` is the number of multisets of
//! generators `√n` whose total is at most `t`. The empty multiset (the
//! initial wave at the source, length 0) is counted, so `N(0) = 1`.
//!
//! Sums are accumulated in `f64`. A multiset made only of `√1 = 1` has an
//! integer total and is compared to `t` exactly; any other total is
//! irrational, so it never equals `t`, but when it lands within the guard
//! band `δ = scale·(1 + terms)` of `t` the result carries a boundary flag.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::LatticeKind;
use crate::spectra::sieve_for_length;

pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;
pub const DEFAULT_GUARD_SCALE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WaveOptions {
    pub node_budget: u64,
    pub guard_scale: f64,
}

impl Default for WaveOptions {
    fn default() -> Self {
        WaveOptions { node_budget: DEFAULT_NODE_BUDGET, guard_scale: DEFAULT_GUARD_SCALE }
    }
}

/// A generator `√norm` of the length semigroup.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Generator {
    pub norm: u64,
    pub length: f64,
}

impl Generator {
    pub fn new(norm: u64) -> Self {
        Generator { norm, length: (norm as f64).sqrt() }
    }
}

/// Generators `√n ≤ t`, longest first.
pub fn generators(kind: LatticeKind, t: f64) -> Result<Vec<Generator>> {
    if !(t >= 0.0) {
        return Err(Error::precondition(format!("time must be non-negative, got {t}")));
    }
    if t < 1.0 {
        return Ok(Vec::new());
    }
    let sieve = sieve_for_length(kind, t)?;
    Ok(sieve.b_values(t)?.into_iter().rev().map(Generator::new).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WaveCount {
    pub t: f64,
    pub count: u64,
    /// Some irrational total fell within the guard band of `t`.
    pub boundary_flag: bool,
}

/// Exact length `Σ c_n √n`, keyed by square-free `n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RadicalSum {
    terms: BTreeMap<u64, u32>,
}

impl RadicalSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, norm: u64, times: u32) {
        if times > 0 {
            *self.terms.entry(norm).or_insert(0) += times;
        }
    }

    pub fn terms(&self) -> &BTreeMap<u64, u32> {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of generators counted with multiplicity.
    pub fn len(&self) -> u64 {
        self.terms.values().map(|&c| c as u64).sum()
    }

    pub fn is_rational(&self) -> bool {
        self.terms.keys().all(|&n| n == 1)
    }

    pub fn value(&self) -> f64 {
        self.terms.iter().map(|(&n, &c)| c as f64 * (n as f64).sqrt()).sum()
    }
}

impl FromIterator<u64> for RadicalSum {
    fn from_iter<I: IntoIterator<Item = u64>>(iter: I) -> Self {
        let mut s = RadicalSum::new();
        for n in iter {
            s.add(n, 1);
        }
        s
    }
}

#[derive(Clone, Debug)]
struct Tally {
    bins: Vec<u64>,
    flags: Vec<bool>,
    visited: u64,
}

impl Tally {
    fn new(n: usize) -> Self {
        Tally { bins: vec![0; n], flags: vec![false; n], visited: 0 }
    }

    fn merge(mut self, other: Tally) -> Tally {
        for (a, b) in self.bins.iter_mut().zip(other.bins) {
            *a += b;
        }
        for (a, b) in self.flags.iter_mut().zip(other.flags) {
            *a |= b;
        }
        self.visited += other.visited;
        self
    }
}

struct Budget {
    limit: u64,
    spent: AtomicU64,
    exhausted: AtomicBool,
}

const FLUSH_EVERY: u64 = 1 << 14;

struct Walker<'a> {
    lengths: &'a [f64],
    unit: Option<usize>,
    sorted_desc: bool,
    grid: &'a [f64],
    limit: f64,
    guard_scale: f64,
    budget: &'a Budget,
    tally: Tally,
    unflushed: u64,
}

struct Abort;

impl Walker<'_> {
    fn record(&mut self, sum: f64, terms: u32, irrational: bool) -> std::result::Result<(), Abort> {
        let idx = self.grid.partition_point(|&g| g < sum);
        if idx < self.grid.len() {
            self.tally.bins[idx] += 1;
        }
        if irrational {
            let delta = self.guard_scale * (1.0 + terms as f64);
            for k in [idx.wrapping_sub(1), idx] {
                if let Some(&g) = self.grid.get(k) {
                    if (sum - g).abs() < delta {
                        self.tally.flags[k] = true;
                    }
                }
            }
        }
        self.tally.visited += 1;
        self.unflushed += 1;
        if self.unflushed >= FLUSH_EVERY {
            self.flush()?;
        }
        Ok(())
    }

    fn flush(&mut self) -> std::result::Result<(), Abort> {
        let spent = self.budget.spent.fetch_add(self.unflushed, Ordering::Relaxed) + self.unflushed;
        self.unflushed = 0;
        if spent > self.budget.limit || self.budget.exhausted.load(Ordering::Relaxed) {
            self.budget.exhausted.store(true, Ordering::Relaxed);
            return Err(Abort);
        }
        Ok(())
    }

    /// Whether a child with total `sum` should be visited.
    fn admits(&self, sum: f64, terms: u32, irrational: bool) -> bool {
        if irrational {
            sum <= self.limit + self.guard_scale * (1.0 + terms as f64)
        } else {
            sum <= self.limit
        }
    }

    /// Visits the multiset reached by appending generator `j` and then every
    /// extension using indices `≥ j`.
    fn descend(
        &mut self,
        j: usize,
        sum: f64,
        terms: u32,
        irrational: bool,
    ) -> std::result::Result<(), Abort> {
        let sum = sum + self.lengths[j];
        let terms = terms + 1;
        let irrational = irrational || Some(j) != self.unit;
        self.record(sum, terms, irrational)?;
        self.children(j, sum, terms, irrational)
    }

    fn children(
        &mut self,
        start: usize,
        sum: f64,
        terms: u32,
        irrational: bool,
    ) -> std::result::Result<(), Abort> {
        let first = if self.sorted_desc {
            // longest first: the admissible children form a suffix
            let room = self.limit - sum + self.guard_scale * (2.0 + terms as f64);
            start + self.lengths[start..].partition_point(|&g| g > room)
        } else {
            start
        };
        for j in first..self.lengths.len() {
            let child_irrational = irrational || Some(j) != self.unit;
            if !self.admits(sum + self.lengths[j], terms + 1, child_irrational) {
                continue;
            }
            self.descend(j, sum, terms, irrational)?;
        }
        Ok(())
    }
}

/// Counts multisets of `gens` (in the given order) with total at most each
/// grid value. `grid` must be ascending.
pub fn count_multisets(
    gens: &[Generator],
    grid: &[f64],
    opts: &WaveOptions,
) -> Result<Vec<WaveCount>> {
    if grid.is_empty() {
        return Ok(Vec::new());
    }
    if grid.iter().any(|t| !(*t >= 0.0)) || grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::precondition("time grid must be non-negative and strictly ascending"));
    }
    if !(opts.guard_scale >= 0.0) {
        return Err(Error::precondition("guard band scale must be non-negative"));
    }
    let limit = *grid.last().expect("non-empty grid");
    let lengths: Vec<f64> = gens.iter().map(|g| g.length).collect();
    let unit = gens.iter().position(|g| g.norm == 1);
    let sorted_desc = lengths.windows(2).all(|w| w[0] >= w[1]);
    let budget = Budget {
        limit: opts.node_budget,
        spent: AtomicU64::new(0),
        exhausted: AtomicBool::new(false),
    };
    let make = || Walker {
        lengths: &lengths,
        unit,
        sorted_desc,
        grid,
        limit,
        guard_scale: opts.guard_scale,
        budget: &budget,
        tally: Tally::new(grid.len()),
        unflushed: 0,
    };

    // the root is the empty multiset
    let mut root = make();
    let root_ok = root.record(0.0, 0, false).is_ok();
    let admitted: Vec<usize> = (0..lengths.len())
        .filter(|&j| root.admits(lengths[j], 1, Some(j) != unit))
        .collect();

    let subtrees: Vec<std::result::Result<Tally, u64>> = admitted
        .par_iter()
        .map(|&j| {
            let mut w = make();
            let outcome = w.descend(j, 0.0, 0, false).and_then(|_| w.flush());
            match outcome {
                Ok(()) => Ok(w.tally),
                Err(Abort) => Err(w.tally.visited),
            }
        })
        .collect();

    let mut total = root.tally;
    let mut failed = !root_ok;
    for st in subtrees {
        match st {
            Ok(t) => total = total.merge(t),
            Err(visited) => {
                failed = true;
                total.visited += visited;
            }
        }
    }
    if failed || total.visited > opts.node_budget {
        return Err(Error::BudgetExceeded { budget: opts.node_budget, visited: total.visited });
    }

    let mut running = 0u64;
    Ok(grid
        .iter()
        .zip(total.bins.iter().zip(&total.flags))
        .map(|(&t, (&b, &flag))| {
            running += b;
            WaveCount { t, count: running, boundary_flag: flag }
        })
        .collect())
}

/// Number of distinct broken-geodesic lengths `≤ t`, the empty one included.
pub fn count_waves(kind: LatticeKind, t: f64) -> Result<WaveCount> {
    count_waves_with(kind, t, &WaveOptions::default())
}

pub fn count_waves_with(kind: LatticeKind, t: f64, opts: &WaveOptions) -> Result<WaveCount> {
    let gens = generators(kind, t)?;
    Ok(count_multisets(&gens, &[t], opts)?[0])
}

/// [`count_waves`] at every point of an ascending grid, from one enumeration.
pub fn count_waves_grid(kind: LatticeKind, grid: &[f64], opts: &WaveOptions) -> Result<Vec<WaveCount>> {
    let Some(&t_max) = grid.last() else {
        return Ok(Vec::new());
    };
    let gens = generators(kind, t_max)?;
    count_multisets(&gens, grid, opts)
}

/// All distinct lengths `≤ t` with a witness each, strictly increasing.
pub fn enumerate_lengths(kind: LatticeKind, t: f64, cap: usize) -> Result<Vec<(f64, RadicalSum)>> {
    let gens = generators(kind, t)?;
    let mut out = vec![(0.0, RadicalSum::new())];
    let mut path = Vec::new();
    collect(&gens, 0, 0.0, t, cap, &mut path, &mut out)?;
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(out)
}

fn collect(
    gens: &[Generator],
    start: usize,
    sum: f64,
    t: f64,
    cap: usize,
    path: &mut Vec<u64>,
    out: &mut Vec<(f64, RadicalSum)>,
) -> Result<()> {
    for (j, g) in gens.iter().enumerate().skip(start) {
        let s = sum + g.length;
        if s > t {
            continue;
        }
        path.push(g.norm);
        if out.len() >= cap {
            return Err(Error::CapacityExceeded { cap });
        }
        out.push((s, path.iter().copied().collect()));
        collect(gens, j, s, t, cap, path, out)?;
        path.pop();
    }
    Ok(())
}

/// Independent count: generators shortest first, choosing a multiplicity for
/// each in turn, with the integer part of the total kept as an integer.
pub fn oracle_count(kind: LatticeKind, t: f64) -> Result<u64> {
    let mut gens = generators(kind, t)?;
    gens.reverse();
    fn fits(ones: u64, irr: f64, has_irr: bool, t: f64) -> bool {
        if has_irr {
            ones as f64 + irr <= t
        } else {
            ones as f64 <= t
        }
    }
    fn rec(gens: &[Generator], ones: u64, irr: f64, has_irr: bool, t: f64) -> u64 {
        let Some((g, rest)) = gens.split_first() else {
            return 1;
        };
        let mut count = 0;
        let mut m = 0u64;
        loop {
            let (o, i, h) = if g.norm == 1 {
                (ones + m, irr, has_irr)
            } else {
                (ones, irr + m as f64 * g.length, has_irr || m > 0)
            };
            if !fits(o, i, h, t) {
                break;
            }
            count += rec(rest, o, i, h, t);
            m += 1;
        }
        count
    }
    Ok(rec(&gens, 0, 0.0, false, t))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GrowthRow {
    pub t: f64,
    pub count: u64,
    pub ln_count: f64,
    /// `ln N(t) / (t^{2/3} (ln t)^{-1/6})`, to be compared with `c_G`.
    pub exponent_ratio: f64,
    pub boundary_flag: bool,
}

/// Measured growth exponent on an ascending grid of times `> 1`.
pub fn growth_table(kind: LatticeKind, grid: &[f64], opts: &WaveOptions) -> Result<Vec<GrowthRow>> {
    if grid.iter().any(|&t| !(t > 1.0)) {
        return Err(Error::precondition("growth table times must all exceed 1"));
    }
    Ok(count_waves_grid(kind, grid, opts)?
        .into_iter()
        .map(|w| {
            let ln_count = (w.count as f64).ln();
            let scale = w.t.powf(2.0 / 3.0) * w.t.ln().powf(-1.0 / 6.0);
            GrowthRow {
                t: w.t,
                count: w.count,
                ln_count,
                exponent_ratio: ln_count / scale,
                boundary_flag: w.boundary_flag,
            }
        })
        .collect())
}
