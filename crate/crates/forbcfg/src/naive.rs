//! Independent reference implementations used as oracles by the test
//! suites, plus a tiny deterministic RNG for reproducible random inputs.
//!
//! Everything here is deliberately written the slow, obvious way and shares
//! no code with the optimized paths it is used to check.

use crate::matrix::{ColumnId, RMatrix};
use crate::patterns::ConfigFamily;

/// Decides containment by enumerating every row injection and every column
/// injection outright. Exponential; only for small inputs.
pub fn contains_bruteforce(a: &RMatrix, f: &RMatrix) -> bool {
    let m_a = a.row_count();
    let n_a = a.col_count();
    let m_f = f.row_count();
    let n_f = f.col_count();
    if m_f > m_a || n_f > n_a {
        return false;
    }
    let mut row_image = Vec::with_capacity(m_f);
    let mut row_used = vec![false; m_a];
    enumerate_injections(m_f, m_a, &mut row_image, &mut row_used, &mut |rows| {
        let mut col_image = Vec::with_capacity(n_f);
        let mut col_used = vec![false; n_a];
        enumerate_injections(n_f, n_a, &mut col_image, &mut col_used, &mut |cols| {
            for (fi, &ai) in rows.iter().enumerate() {
                for (fj, &aj) in cols.iter().enumerate() {
                    if a.entry(ai, aj) != f.entry(fi, fj) {
                        return false;
                    }
                }
            }
            true
        })
    })
}

fn enumerate_injections(
    k: usize,
    n: usize,
    image: &mut Vec<usize>,
    used: &mut [bool],
    found: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    if image.len() == k {
        return found(image);
    }
    for candidate in 0..n {
        if used[candidate] {
            continue;
        }
        used[candidate] = true;
        image.push(candidate);
        if enumerate_injections(k, n, image, used, found) {
            return true;
        }
        image.pop();
        used[candidate] = false;
    }
    false
}

fn avoids_bruteforce(m: usize, r: u8, cols: &[Vec<u8>], family: &ConfigFamily) -> bool {
    let a = RMatrix::from_cols(m, r, cols.to_vec()).expect("valid columns");
    family.members().iter().all(|f| !contains_bruteforce(&a, f))
}

/// The maximum number of columns in a simple `m`-rowed matrix over
/// `{0,..,r-1}` avoiding every family member, found by enumerating every
/// feasible column set outright (feasibility is closed under taking subsets,
/// so depth-first extension reaches them all). No bounding, no incremental
/// checks: each candidate set is re-tested from scratch with the
/// brute-force containment above.
pub fn max_feasible_columns(m: usize, r: u8, family: &ConfigFamily, k: Option<usize>) -> usize {
    let universe = crate::patterns::all_columns(m, r, k).expect("small universe");
    let pool: Vec<Vec<u8>> = universe.cols().map(|c| c.to_vec()).collect();
    let mut chosen: Vec<Vec<u8>> = Vec::new();
    let mut best = 0usize;
    extend_all(m, r, &pool, 0, &mut chosen, family, &mut best);
    best
}

fn extend_all(
    m: usize,
    r: u8,
    pool: &[Vec<u8>],
    from: usize,
    chosen: &mut Vec<Vec<u8>>,
    family: &ConfigFamily,
    best: &mut usize,
) {
    *best = (*best).max(chosen.len());
    for next in from..pool.len() {
        chosen.push(pool[next].clone());
        if avoids_bruteforce(m, r, chosen, family) {
            extend_all(m, r, pool, next + 1, chosen, family, best);
        }
        chosen.pop();
    }
}

/// The branching recurrence evaluated directly, with no memoization.
/// Overflow panics; callers keep the arguments tiny.
pub fn recurrence_direct(parts: &[u64]) -> u128 {
    assert!(!parts.is_empty() && parts.iter().all(|&p| p >= 1));
    if parts.contains(&1) {
        return 1;
    }
    let mut total: u128 = 0;
    let mut smaller = parts.to_vec();
    for i in 0..parts.len() {
        smaller[i] -= 1;
        total = total
            .checked_add(recurrence_direct(&smaller))
            .expect("oracle overflow");
        smaller[i] += 1;
    }
    total
}

/// SplitMix64: a tiny deterministic RNG, stable across platforms and
/// releases, for reproducible test inputs.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform value in `0..bound` (bound > 0).
    pub fn next_below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }
}

/// A uniformly random `m x n` matrix over `{0,..,r-1}`.
pub fn random_matrix(rng: &mut SplitMix64, m: usize, n: usize, r: u8) -> RMatrix {
    let cols = (0..n)
        .map(|_| (0..m).map(|_| rng.next_below(r as u64) as u8).collect())
        .collect();
    RMatrix::from_cols(m, r, cols).expect("random entries are in range")
}

/// A random simple matrix: `n` distinct random columns (requires
/// `n <= r^m`).
pub fn random_simple_matrix(rng: &mut SplitMix64, m: usize, n: usize, r: u8) -> RMatrix {
    let universe = (r as u128).pow(m as u32);
    assert!(n as u128 <= universe, "not enough distinct columns");
    let mut picked: Vec<u128> = Vec::with_capacity(n);
    while picked.len() < n {
        let id = rng.next_u64() as u128 % universe;
        if !picked.contains(&id) {
            picked.push(id);
        }
    }
    let cols = picked
        .into_iter()
        .map(|id| ColumnId(id).decode(m, r))
        .collect();
    RMatrix::from_cols(m, r, cols).expect("decoded columns are in range")
}

/// A random column with exactly `k` ones over a binary alphabet; remaining
/// entries are zero.
pub fn random_binary_column(rng: &mut SplitMix64, m: usize, k: usize) -> Vec<u8> {
    assert!(k <= m);
    let mut col = vec![0u8; m];
    let mut placed = 0;
    while placed < k {
        let i = rng.next_below(m as u64) as usize;
        if col[i] == 0 {
            col[i] = 1;
            placed += 1;
        }
    }
    col
}
