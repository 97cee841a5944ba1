//! Minimum rank over Hadamard square roots of small nonnegative matrices.
//!
//! A root replaces each entry `s` by `+sqrt(s)` or `-sqrt(s)`. Flipping the
//! sign of a whole row or column keeps the rank, so the signs along a
//! spanning forest of the bipartite nonzero pattern can be fixed to `+` and
//! only the remaining free signs are enumerated.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::qroot2::{rank, QRoot2};
use crate::error::{Error, Result};

pub const DEFAULT_BUDGET: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HrkOutcome {
    pub min_rank_found: usize,
    /// Every reduced sign pattern was examined without early exit.
    pub exhaustive: bool,
    pub patterns_checked: u64,
    pub free_signs: usize,
    /// Signs (`1`, `-1`, or `0` for zero entries) of a root of rank `min_rank_found`.
    pub witness: Option<Vec<Vec<i8>>>,
}

struct Forest {
    parent: Vec<usize>,
}

impl Forest {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// Nonzero positions whose signs are free after fixing a spanning forest.
fn free_positions(s: &[Vec<i64>]) -> Vec<(usize, usize)> {
    let rows = s.len();
    let cols = s.first().map_or(0, Vec::len);
    let mut forest = Forest { parent: (0..rows + cols).collect() };
    let mut free = Vec::new();
    for (i, row) in s.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            if x != 0 && !forest.union(i, rows + j) {
                free.push((i, j));
            }
        }
    }
    free
}

fn signs_for(s: &[Vec<i64>], free: &[(usize, usize)], pattern: u64) -> Vec<Vec<i8>> {
    let mut signs: Vec<Vec<i8>> = s.iter().map(|r| r.iter().map(|&x| i8::from(x != 0)).collect()).collect();
    for (bit, &(i, j)) in free.iter().enumerate() {
        if pattern >> bit & 1 == 1 {
            signs[i][j] = -1;
        }
    }
    signs
}

fn root_rank(roots: &[Vec<QRoot2>], signs: &[Vec<i8>]) -> usize {
    let m: Vec<Vec<QRoot2>> = roots
        .iter()
        .zip(signs)
        .map(|(r, sg)| r.iter().zip(sg).map(|(x, &s)| if s < 0 { -x } else { x.clone() }).collect())
        .collect();
    rank(m)
}

/// Smallest rank of a Hadamard square root of `s`, whose entries must lie in
/// `{0, 1, 2, 4}`. Stops early once a root of rank `<= target` is found.
/// Explores at most `budget` sign patterns; `exhaustive` reports whether the
/// whole reduced pattern set was covered.
pub fn hadamard_min_rank(s: &[Vec<i64>], target: Option<usize>, budget: u64) -> Result<HrkOutcome> {
    let roots: Vec<Vec<QRoot2>> = s
        .iter()
        .map(|r| r.iter().map(|&x| QRoot2::sqrt_of_small(x).ok_or(Error::UnsupportedEntry(x))).collect())
        .collect::<Result<_>>()?;
    let free = free_positions(s);
    let total: u64 = if free.len() >= 64 { u64::MAX } else { 1u64 << free.len() };
    let limit = total.min(budget.max(1));

    let best: Mutex<Option<(usize, u64)>> = Mutex::new(None);
    let stop = AtomicBool::new(false);
    let checked = AtomicU64::new(0);
    (0..limit).into_par_iter().for_each(|pattern| {
        if stop.load(Ordering::Relaxed) {
            return;
        }
        let r = root_rank(&roots, &signs_for(s, &free, pattern));
        checked.fetch_add(1, Ordering::Relaxed);
        {
            let mut b = best.lock().unwrap();
            // prefer lower rank, then the smaller pattern index for determinism
            if b.map_or(true, |(br, bp)| (r, pattern) < (br, bp)) {
                *b = Some((r, pattern));
            }
        }
        if target.is_some_and(|t| r <= t) {
            stop.store(true, Ordering::Relaxed);
        }
    });

    let (min_rank, pattern) = best.into_inner().unwrap().expect("at least one pattern");
    let checked = checked.into_inner();
    Ok(HrkOutcome {
        min_rank_found: min_rank,
        exhaustive: checked == total,
        patterns_checked: checked,
        free_signs: free.len(),
        witness: Some(signs_for(s, &free, pattern)),
    })
}
