//! Equality of matrices up to row and column permutation, and an exact
//! canonical form for small configurations.

use crate::error::{Error, Result};
use crate::matrix::RMatrix;

const PERM_LIMIT: usize = 8;

/// Exact lexicographically least matrix (by row-major reading) over all row
/// and column permutations. Only computed for matrices up to 8x8; larger
/// inputs are refused since every configuration family in scope stays small.
///
/// For a fixed row order the best column order is simply the sorted column
/// order, so the search is over row permutations only.
pub fn canonical_config(f: &RMatrix) -> Result<RMatrix> {
    let m = f.row_count();
    let n = f.col_count();
    if m > PERM_LIMIT || n > PERM_LIMIT {
        return Err(Error::ConfigTooLarge { m, n });
    }
    let cols: Vec<&[u8]> = f.cols().collect();
    let mut best: Option<Vec<Vec<u8>>> = None;
    let mut perm: Vec<usize> = (0..m).collect();
    permute(&mut perm, 0, &mut |order: &[usize]| {
        let mut permuted: Vec<Vec<u8>> = cols
            .iter()
            .map(|col| order.iter().map(|&i| col[i]).collect())
            .collect();
        permuted.sort_unstable();
        let better = match &best {
            None => true,
            Some(current) => row_major_less(&permuted, current, m, n),
        };
        if better {
            best = Some(permuted);
        }
    });
    let cols = best.unwrap_or_default();
    RMatrix::from_cols(m, f.alphabet(), cols)
}

/// True iff `a` reads lexicographically smaller than `b` row by row.
fn row_major_less(a: &[Vec<u8>], b: &[Vec<u8>], m: usize, n: usize) -> bool {
    for i in 0..m {
        for j in 0..n {
            match a[j][i].cmp(&b[j][i]) {
                std::cmp::Ordering::Less => return true,
                std::cmp::Ordering::Greater => return false,
                std::cmp::Ordering::Equal => {}
            }
        }
    }
    false
}

fn permute(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}

/// True iff each matrix is a row and column permutation of the other.
///
/// Once a column order is fixed, the row permutation freedom collapses to
/// row-multiset equality, so it suffices to sweep the permutations of the
/// smaller side. Works for any dimensions as long as one side has at most
/// 8 rows or 8 columns.
///
/// # Panics
/// Panics if both dimensions exceed 8; no family in scope comes close.
pub fn config_equal(f: &RMatrix, g: &RMatrix) -> bool {
    if f.row_count() != g.row_count() || f.col_count() != g.col_count() {
        return false;
    }
    let m = f.row_count();
    let n = f.col_count();
    if n == 0 || m == 0 {
        return true;
    }
    if n <= PERM_LIMIT {
        equal_sweeping_cols(f, g)
    } else if m <= PERM_LIMIT {
        equal_sweeping_rows(f, g)
    } else {
        panic!("config_equal requires at most 8 rows or 8 columns, found {m}x{n}");
    }
}

fn equal_sweeping_cols(f: &RMatrix, g: &RMatrix) -> bool {
    let m = f.row_count();
    let n = f.col_count();
    let mut f_rows: Vec<Vec<u8>> = (0..m).map(|i| f.row(i)).collect();
    f_rows.sort_unstable();
    let g_cols: Vec<&[u8]> = g.cols().collect();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut found = false;
    permute(&mut perm, 0, &mut |order: &[usize]| {
        if found {
            return;
        }
        let mut rows: Vec<Vec<u8>> = (0..m)
            .map(|i| order.iter().map(|&j| g_cols[j][i]).collect())
            .collect();
        rows.sort_unstable();
        if rows == f_rows {
            found = true;
        }
    });
    found
}

fn equal_sweeping_rows(f: &RMatrix, g: &RMatrix) -> bool {
    let m = f.row_count();
    let mut f_cols: Vec<Vec<u8>> = f.cols().map(|c| c.to_vec()).collect();
    f_cols.sort_unstable();
    let g_cols: Vec<&[u8]> = g.cols().collect();
    let mut perm: Vec<usize> = (0..m).collect();
    let mut found = false;
    permute(&mut perm, 0, &mut |order: &[usize]| {
        if found {
            return;
        }
        let mut cols: Vec<Vec<u8>> = g_cols
            .iter()
            .map(|col| order.iter().map(|&i| col[i]).collect())
            .collect();
        cols.sort_unstable();
        if cols == f_cols {
            found = true;
        }
    });
    found
}
