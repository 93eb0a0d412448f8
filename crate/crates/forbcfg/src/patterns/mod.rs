//! Configuration containment: the `F ≺ A` oracle, configuration equality up
//! to row/column permutation, and deduplicated configuration families.
//!
//! A matrix `F` is a *configuration* of `A` when some submatrix of `A` is a
//! row and column permutation of `F`. The oracle reports a [`Witness`]
//! (explicit row and column injections) whenever containment holds.

mod canonical;
mod family;
pub mod famspec;
mod generators;

pub use canonical::{canonical_config, config_equal};
pub use family::ConfigFamily;
pub use generators::{
    all_columns, gen_fabcd, gen_h, gen_i, gen_k2, gen_t, gen_t3, gen_tfam, half_triangular,
};

use crate::matrix::RMatrix;
use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

/// Row and column injections certifying `F ≺ A`: row `i` of `F` is hosted by
/// row `rows[i]` of `A` and column `j` by column `cols[j]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl Witness {
    /// Checks the certificate by direct entry comparison: both maps must be
    /// injective and `A[rows[i], cols[j]] == F[i, j]` everywhere.
    pub fn verify(&self, a: &RMatrix, f: &RMatrix) -> bool {
        if self.rows.len() != f.row_count() || self.cols.len() != f.col_count() {
            return false;
        }
        let mut seen_rows = vec![false; a.row_count()];
        for &i in &self.rows {
            if i >= a.row_count() || std::mem::replace(&mut seen_rows[i], true) {
                return false;
            }
        }
        let mut seen_cols = vec![false; a.col_count()];
        for &j in &self.cols {
            if j >= a.col_count() || std::mem::replace(&mut seen_cols[j], true) {
                return false;
            }
        }
        for (fi, &ai) in self.rows.iter().enumerate() {
            for (fj, &aj) in self.cols.iter().enumerate() {
                if a.entry(ai, aj) != f.entry(fi, fj) {
                    return false;
                }
            }
        }
        true
    }
}

/// Decides `F ≺ A` and returns a witness if so.
///
/// Rows of `F` are assigned to rows of `A` by backtracking, most
/// symbol-diverse `F`-row first, candidate `A`-rows in ascending order. Per
/// `F`-column bitsets of still-compatible `A`-columns are intersected on the
/// way down, and a full row assignment is accepted iff a perfect matching
/// exists from `F`-columns into compatible `A`-columns. Repeated `F`-columns
/// therefore require distinct `A`-columns.
///
/// Symbols of `F` that cannot occur in `A` simply yield no candidates, so a
/// pattern over a larger alphabet is reported absent, not an error.
pub fn contains(a: &RMatrix, f: &RMatrix) -> Option<Witness> {
    let cols: Vec<&[u8]> = a.cols().collect();
    contains_in_cols(a.row_count(), a.alphabet(), &cols, f, None)
}

/// `contains` restricted to embeddings whose column image includes
/// `forced`; used by the search engine for incremental feasibility checks.
pub(crate) fn contains_in_cols(
    m_a: usize,
    r_a: u8,
    a_cols: &[&[u8]],
    f: &RMatrix,
    forced: Option<usize>,
) -> Option<Witness> {
    let m_f = f.row_count();
    let n_f = f.col_count();
    let n_a = a_cols.len();
    if m_f > m_a || n_f > n_a {
        return None;
    }
    if n_f == 0 {
        // the empty configuration (any row choice hosts it)
        if forced.is_some() {
            return None;
        }
        return Some(Witness {
            rows: (0..m_f).collect(),
            cols: Vec::new(),
        });
    }
    if n_a <= 128 {
        return contains_small(m_a, r_a, a_cols, f, forced);
    }
    contains_wide(m_a, r_a, a_cols, f, forced)
}

/// Fast path for hosts of at most 128 columns: per-column candidate sets
/// are plain `u128` words and the whole search allocates only a handful of
/// flat buffers. This is the search engine's hot loop.
fn contains_small(
    m_a: usize,
    r_a: u8,
    a_cols: &[&[u8]],
    f: &RMatrix,
    forced: Option<usize>,
) -> Option<Witness> {
    let m_f = f.row_count();
    let n_f = f.col_count();
    let n_a = a_cols.len();
    let r = r_a as usize;

    let mut by_symbol = vec![0u128; m_a * r];
    for (c, col) in a_cols.iter().enumerate() {
        for (i, &s) in col.iter().enumerate() {
            by_symbol[i * r + s as usize] |= 1u128 << c;
        }
    }

    let mut f_row_order: Vec<usize> = (0..m_f).collect();
    f_row_order.sort_by_key(|&i| (std::cmp::Reverse(row_diversity(f, i)), i));
    let prev_same = previous_identical_rows(f, &f_row_order);

    let full: u128 = if n_a == 128 { !0 } else { (1u128 << n_a) - 1 };
    // mask stack: levels 0..=m_f, n_f words each
    let mut masks = vec![0u128; (m_f + 1) * n_f];
    masks[..n_f].iter_mut().for_each(|m| *m = full);
    let mut used = vec![false; m_a];
    let mut assignment = vec![usize::MAX; m_f];

    struct Descend<'b> {
        f_row_order: &'b [usize],
        prev_same: &'b [Option<usize>],
        f: &'b RMatrix,
        by_symbol: &'b [u128],
        r: usize,
        m_a: usize,
        forced: Option<usize>,
    }

    impl Descend<'_> {
        fn run(
            &self,
            depth: usize,
            masks: &mut [u128],
            used: &mut [bool],
            assignment: &mut [usize],
        ) -> Option<Vec<usize>> {
            let n_f = self.f.col_count();
            if depth == self.f_row_order.len() {
                let level = &masks[depth * n_f..(depth + 1) * n_f];
                return match_columns_small(level, self.forced);
            }
            let f_row = self.f_row_order[depth];
            // identical pattern rows are interchangeable: force their host
            // rows ascending
            let start = match self.prev_same[depth] {
                Some(earlier) => assignment[self.f_row_order[earlier]] + 1,
                None => 0,
            };
            for a_row in start..self.m_a {
                if used[a_row] {
                    continue;
                }
                let mut ok = true;
                let mut union: u128 = 0;
                for j in 0..n_f {
                    let sym = self.f.entry(f_row, j) as usize;
                    let allowed = if sym < self.r {
                        self.by_symbol[a_row * self.r + sym]
                    } else {
                        0
                    };
                    let next = masks[depth * n_f + j] & allowed;
                    masks[(depth + 1) * n_f + j] = next;
                    union |= next;
                    if next == 0 {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    if let Some(fc) = self.forced {
                        ok = union & (1u128 << fc) != 0;
                    }
                }
                if ok {
                    used[a_row] = true;
                    assignment[f_row] = a_row;
                    if let Some(matching) = self.run(depth + 1, masks, used, assignment) {
                        return Some(matching);
                    }
                    used[a_row] = false;
                    assignment[f_row] = usize::MAX;
                }
            }
            None
        }
    }

    let search = Descend {
        f_row_order: &f_row_order,
        prev_same: &prev_same,
        f,
        by_symbol: &by_symbol,
        r,
        m_a,
        forced,
    };
    let matching = search.run(0, &mut masks, &mut used, &mut assignment)?;
    Some(Witness {
        rows: assignment,
        cols: matching,
    })
}

fn row_diversity(f: &RMatrix, i: usize) -> usize {
    let mut seen = [false; 16];
    let mut count = 0usize;
    for j in 0..f.col_count() {
        let s = f.entry(i, j) as usize;
        if s < 16 && !std::mem::replace(&mut seen[s], true) {
            count += 1;
        }
    }
    count
}

/// Augmenting-path matching over `u128` adjacency; perfect matching of all
/// pattern columns, using the forced host column when required.
fn match_columns_small(masks: &[u128], forced: Option<usize>) -> Option<Vec<usize>> {
    let n_f = masks.len();

    fn augment(
        j: usize,
        masks: &[u128],
        owner: &mut [usize],
        visited: &mut u128,
        banned: u128,
    ) -> bool {
        let mut avail = masks[j] & !*visited & !banned;
        while avail != 0 {
            let c = avail.trailing_zeros() as usize;
            avail &= avail - 1;
            *visited |= 1u128 << c;
            if owner[c] == usize::MAX || augment(owner[c], masks, owner, visited, banned) {
                owner[c] = j;
                return true;
            }
        }
        false
    }

    let run = |pinned: Option<(usize, usize)>| -> Option<Vec<usize>> {
        let mut owner = [usize::MAX; 128];
        let banned = pinned.map_or(0u128, |(_, c)| 1u128 << c);
        if let Some((j, c)) = pinned {
            owner[c] = j;
        }
        for j in 0..n_f {
            if pinned.map(|(p, _)| p) == Some(j) {
                continue;
            }
            let mut visited = 0u128;
            if !augment(j, masks, &mut owner, &mut visited, banned) {
                return None;
            }
        }
        let mut cols = vec![usize::MAX; n_f];
        for (c, &o) in owner.iter().enumerate() {
            if o != usize::MAX {
                cols[o] = c;
            }
        }
        Some(cols)
    };

    match forced {
        None => run(None),
        Some(fc) => (0..n_f)
            .filter(|&j| masks[j] & (1u128 << fc) != 0)
            .find_map(|j| run(Some((j, fc)))),
    }
}

/// Feasibility checker for the search engine: keeps the per-(row, symbol)
/// column bitsets of the growing host matrix up to date across push/pop and
/// answers "does appending this column create a violation" with no
/// allocation. Hosts are capped at 128 columns, plenty for extremal sets at
/// desk scale.
pub(crate) struct IncrementalOracle<'f> {
    m: usize,
    r: usize,
    members: &'f [RMatrix],
    row_orders: Vec<Vec<usize>>,
    /// Per member and depth: the earlier depth carrying an identical pattern
    /// row, if any. Identical pattern rows are interchangeable, so their
    /// host rows may be forced ascending.
    prev_same: Vec<Vec<Option<usize>>>,
    by_symbol: Vec<u128>,
    n: usize,
    masks: Vec<u128>,
    used: Vec<bool>,
    row_stack: Vec<usize>,
}

/// For each depth in `order`, the earlier depth whose pattern row is
/// entry-identical.
fn previous_identical_rows(f: &RMatrix, order: &[usize]) -> Vec<Option<usize>> {
    order
        .iter()
        .enumerate()
        .map(|(depth, &row)| {
            (0..depth)
                .rev()
                .find(|&earlier| f.row(order[earlier]) == f.row(row))
        })
        .collect()
}

impl<'f> IncrementalOracle<'f> {
    pub(crate) fn new(m: usize, r: u8, family: &'f ConfigFamily) -> IncrementalOracle<'f> {
        let members = family.members();
        let row_orders: Vec<Vec<usize>> = members
            .iter()
            .map(|f| {
                let mut order: Vec<usize> = (0..f.row_count()).collect();
                order.sort_by_key(|&i| (std::cmp::Reverse(row_diversity(f, i)), i));
                order
            })
            .collect();
        let prev_same = members
            .iter()
            .zip(&row_orders)
            .map(|(f, order)| previous_identical_rows(f, order))
            .collect();
        let mask_len = members
            .iter()
            .map(|f| (f.row_count() + 1) * f.col_count())
            .max()
            .unwrap_or(0);
        let max_rows = members.iter().map(|f| f.row_count()).max().unwrap_or(0);
        IncrementalOracle {
            m,
            r: r as usize,
            members,
            row_orders,
            prev_same,
            by_symbol: vec![0u128; m * r as usize],
            n: 0,
            masks: vec![0u128; mask_len],
            used: vec![false; m],
            row_stack: vec![0; max_rows],
        }
    }

    pub(crate) fn push_col(&mut self, col: &[u8]) {
        debug_assert!(self.n < 128);
        let bit = 1u128 << self.n;
        for (i, &s) in col.iter().enumerate() {
            self.by_symbol[i * self.r + s as usize] |= bit;
        }
        self.n += 1;
    }

    pub(crate) fn pop_col(&mut self, col: &[u8]) {
        self.n -= 1;
        let bit = 1u128 << self.n;
        for (i, &s) in col.iter().enumerate() {
            self.by_symbol[i * self.r + s as usize] &= !bit;
        }
    }

    /// True iff the current columns plus `col` contain some family member
    /// through the new column.
    pub(crate) fn new_col_violates(&mut self, col: &[u8]) -> bool {
        self.push_col(col);
        let forced = self.n - 1;
        let mut violated = false;
        for idx in 0..self.members.len() {
            let f = &self.members[idx];
            if f.row_count() > self.m || f.col_count() > self.n {
                continue;
            }
            if f.col_count() == 0 {
                continue; // the empty pattern never embeds through a forced column
            }
            let n_f = f.col_count();
            let full: u128 = if self.n == 128 {
                !0
            } else {
                (1u128 << self.n) - 1
            };
            self.masks[..n_f].iter_mut().for_each(|m| *m = full);
            self.used.iter_mut().for_each(|u| *u = false);
            if self.embeds(idx, 0, forced) {
                violated = true;
                break;
            }
        }
        self.pop_col(col);
        violated
    }

    fn embeds(&mut self, member: usize, depth: usize, forced: usize) -> bool {
        let f = &self.members[member];
        let n_f = f.col_count();
        if depth == f.row_count() {
            let level = &self.masks[depth * n_f..(depth + 1) * n_f];
            return match_columns_small(level, Some(forced)).is_some();
        }
        let f_row = self.row_orders[member][depth];
        let start = match self.prev_same[member][depth] {
            Some(earlier) => self.row_stack[earlier] + 1,
            None => 0,
        };
        for a_row in start..self.m {
            if self.used[a_row] {
                continue;
            }
            let mut ok = true;
            let mut union: u128 = 0;
            for j in 0..n_f {
                let sym = f.entry(f_row, j) as usize;
                let allowed = if sym < self.r {
                    self.by_symbol[a_row * self.r + sym]
                } else {
                    0
                };
                let next = self.masks[depth * n_f + j] & allowed;
                self.masks[(depth + 1) * n_f + j] = next;
                union |= next;
                if next == 0 {
                    ok = false;
                    break;
                }
            }
            if ok && union & (1u128 << forced) != 0 {
                self.used[a_row] = true;
                self.row_stack[depth] = a_row;
                if self.embeds(member, depth + 1, forced) {
                    self.used[a_row] = false;
                    return true;
                }
                self.used[a_row] = false;
            }
        }
        false
    }
}

/// General path for hosts wider than 128 columns.
fn contains_wide(
    m_a: usize,
    r_a: u8,
    a_cols: &[&[u8]],
    f: &RMatrix,
    forced: Option<usize>,
) -> Option<Witness> {
    let m_f = f.row_count();
    let n_f = f.col_count();
    let n_a = a_cols.len();

    // per-(row, symbol) bitsets over A's columns
    let r = r_a as usize;
    let mut by_symbol = vec![FixedBitSet::with_capacity(n_a); m_a * r];
    for (c, col) in a_cols.iter().enumerate() {
        for (i, &s) in col.iter().enumerate() {
            by_symbol[i * r + s as usize].insert(c);
        }
    }
    let empty = FixedBitSet::with_capacity(n_a);

    // assign diverse F-rows first
    let mut f_row_order: Vec<usize> = (0..m_f).collect();
    f_row_order.sort_by_key(|&i| (std::cmp::Reverse(row_diversity(f, i)), i));

    let mut masks: Vec<FixedBitSet> = (0..n_f)
        .map(|_| {
            let mut all = FixedBitSet::with_capacity(n_a);
            all.insert_range(..);
            all
        })
        .collect();
    let mut used = vec![false; m_a];
    let mut assignment = vec![usize::MAX; m_f];

    struct Assign<'b> {
        f_row_order: &'b [usize],
        f: &'b RMatrix,
        by_symbol: &'b [FixedBitSet],
        empty: &'b FixedBitSet,
        r: usize,
        m_a: usize,
        forced: Option<usize>,
    }

    impl Assign<'_> {
        fn mask_for(&self, row: usize, sym: u8) -> &FixedBitSet {
            if (sym as usize) < self.r {
                &self.by_symbol[row * self.r + sym as usize]
            } else {
                self.empty
            }
        }

        fn run(
            &self,
            depth: usize,
            masks: &mut Vec<FixedBitSet>,
            used: &mut [bool],
            assignment: &mut [usize],
        ) -> Option<Vec<usize>> {
            if depth == self.f_row_order.len() {
                return match_columns(masks, self.forced);
            }
            let f_row = self.f_row_order[depth];
            for a_row in 0..self.m_a {
                if used[a_row] {
                    continue;
                }
                let saved = masks.clone();
                let mut ok = true;
                for (j, mask) in masks.iter_mut().enumerate() {
                    mask.intersect_with(self.mask_for(a_row, self.f.entry(f_row, j)));
                    if mask.is_clear() {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    if let Some(fc) = self.forced {
                        ok = masks.iter().any(|mask| mask.contains(fc));
                    }
                }
                if ok {
                    used[a_row] = true;
                    assignment[f_row] = a_row;
                    if let Some(matching) = self.run(depth + 1, masks, used, assignment) {
                        return Some(matching);
                    }
                    used[a_row] = false;
                    assignment[f_row] = usize::MAX;
                }
                *masks = saved;
            }
            None
        }
    }

    let search = Assign {
        f_row_order: &f_row_order,
        f,
        by_symbol: &by_symbol,
        empty: &empty,
        r,
        m_a,
        forced,
    };
    let matching = search.run(0, &mut masks, &mut used, &mut assignment)?;
    Some(Witness {
        rows: assignment,
        cols: matching,
    })
}

/// Maximum bipartite matching (augmenting paths) from F-columns into
/// compatible A-columns; returns the column map iff it is perfect and, when
/// required, uses the forced A-column.
fn match_columns(masks: &[FixedBitSet], forced: Option<usize>) -> Option<Vec<usize>> {
    let n_f = masks.len();
    let n_a = masks.first().map_or(0, |m| m.len());

    fn augment(
        j: usize,
        masks: &[FixedBitSet],
        owner: &mut [Option<usize>],
        visited: &mut [bool],
        banned: Option<usize>,
    ) -> bool {
        for c in masks[j].ones() {
            if Some(c) == banned || visited[c] {
                continue;
            }
            visited[c] = true;
            if owner[c].is_none() || augment(owner[c].unwrap(), masks, owner, visited, banned) {
                owner[c] = Some(j);
                return true;
            }
        }
        false
    }

    let run = |pinned: Option<(usize, usize)>| -> Option<Vec<usize>> {
        let mut owner: Vec<Option<usize>> = vec![None; n_a];
        let banned = pinned.map(|(_, c)| c);
        if let Some((j, c)) = pinned {
            owner[c] = Some(j);
        }
        for j in 0..n_f {
            if pinned.map(|(p, _)| p) == Some(j) {
                continue;
            }
            let mut visited = vec![false; n_a];
            if !augment(j, masks, &mut owner, &mut visited, banned) {
                return None;
            }
        }
        let mut cols = vec![usize::MAX; n_f];
        for (c, o) in owner.iter().enumerate() {
            if let Some(j) = o {
                cols[*j] = c;
            }
        }
        if let Some((j, c)) = pinned {
            cols[j] = c;
        }
        Some(cols)
    };

    match forced {
        None => run(None),
        Some(fc) => (0..n_f)
            .filter(|&j| masks[j].contains(fc))
            .find_map(|j| run(Some((j, fc)))),
    }
}

/// First family member contained in a matrix, with its witness.
#[derive(Clone, Debug)]
pub struct Violation {
    pub member: usize,
    pub witness: Witness,
}

/// Finds the first family member (in member order) contained in `a`.
pub fn find_violation(a: &RMatrix, family: &ConfigFamily) -> Option<Violation> {
    let cols: Vec<&[u8]> = a.cols().collect();
    find_violation_in_cols(a.row_count(), a.alphabet(), &cols, family, None)
}

pub(crate) fn find_violation_in_cols(
    m: usize,
    r: u8,
    cols: &[&[u8]],
    family: &ConfigFamily,
    forced: Option<usize>,
) -> Option<Violation> {
    family.members().iter().enumerate().find_map(|(i, f)| {
        contains_in_cols(m, r, cols, f, forced).map(|witness| Violation { member: i, witness })
    })
}

/// True iff no family member appears in `a` as a configuration.
pub fn avoids(a: &RMatrix, family: &ConfigFamily) -> bool {
    find_violation(a, family).is_none()
}
