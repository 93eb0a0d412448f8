//! Generators for the named matrices and families: generalized identities
//! and triangulars, two-column block matrices, and full column universes.

use super::family::ConfigFamily;
use crate::error::{Error, Result};
use crate::matrix::{ones_count, ColumnId, RMatrix};

fn alphabet_for(symbols: &[u8]) -> u8 {
    symbols.iter().copied().max().unwrap_or(1).max(1) + 1
}

/// The `l x l` generalized identity: `a` on the diagonal, `b` elsewhere.
pub fn gen_i(l: usize, a: u8, b: u8) -> Result<RMatrix> {
    if l == 0 {
        return Err(Error::invalid("identity size must be >= 1"));
    }
    if a == b {
        return Err(Error::EqualSymbols { symbol: a });
    }
    let r = alphabet_for(&[a, b]);
    let cols = (0..l)
        .map(|j| (0..l).map(|i| if i == j { a } else { b }).collect())
        .collect();
    RMatrix::from_cols(l, r, cols)
}

/// The `l x l` generalized triangular: `a` below the diagonal, `b` on and
/// above it.
pub fn gen_t(l: usize, a: u8, b: u8) -> Result<RMatrix> {
    gen_t3(l, a, b, b)
}

/// The `l x l` matrix with `a` below the diagonal, `b` on it, and `c` above.
pub fn gen_t3(l: usize, a: u8, b: u8, c: u8) -> Result<RMatrix> {
    if l == 0 {
        return Err(Error::invalid("triangular size must be >= 1"));
    }
    let r = alphabet_for(&[a, b, c]);
    let cols = (0..l)
        .map(|j| {
            (0..l)
                .map(|i| {
                    if i > j {
                        a
                    } else if i == j {
                        b
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();
    RMatrix::from_cols(l, r, cols)
}

/// The family of all `l x l` generalized identities and triangulars over
/// ordered symbol pairs `a != b` below `r`, deduplicated as configurations.
pub fn gen_tfam(l: usize, r: u8) -> Result<ConfigFamily> {
    if l == 0 {
        return Err(Error::invalid("family size must be >= 1"));
    }
    if r < 2 {
        return Err(Error::BadAlphabet { r });
    }
    let mut family = ConfigFamily::new(r);
    for a in 0..r {
        for b in 0..r {
            if a != b {
                family.insert(gen_i(l, a, b)?.with_alphabet(r)?);
            }
        }
    }
    for a in 0..r {
        for b in 0..r {
            if a != b {
                family.insert(gen_t(l, a, b)?.with_alphabet(r)?);
            }
        }
    }
    Ok(family)
}

/// The `(a+b+c+d) x 2` block matrix: `a` rows `[1 1]`, `b` rows `[1 0]`,
/// `c` rows `[0 1]`, `d` rows `[0 0]`.
pub fn gen_fabcd(a: usize, b: usize, c: usize, d: usize) -> Result<RMatrix> {
    if a + b + c + d == 0 {
        return Err(Error::EmptyBlocks);
    }
    let mut rows = Vec::with_capacity(a + b + c + d);
    rows.extend(std::iter::repeat_n(vec![1u8, 1], a));
    rows.extend(std::iter::repeat_n(vec![1u8, 0], b));
    rows.extend(std::iter::repeat_n(vec![0u8, 1], c));
    rows.extend(std::iter::repeat_n(vec![0u8, 0], d));
    RMatrix::from_rows(2, rows)
}

/// The 2x3 pattern `[[0,1,0],[0,0,1]]`.
pub fn gen_h() -> Result<RMatrix> {
    RMatrix::from_rows(2, vec![vec![0, 1, 0], vec![0, 0, 1]])
}

/// The 2x4 pattern `[[0,0,1,1],[0,1,0,1]]`, i.e. `[0 1] x [0 1]`.
pub fn gen_k2() -> Result<RMatrix> {
    RMatrix::from_rows(2, vec![vec![0, 0, 1, 1], vec![0, 1, 0, 1]])
}

/// For a `2k x 2k` matrix, the `k x k` submatrix on the even-indexed columns
/// and the odd-indexed rows (1-based). Halving a three-symbol triangular
/// erases its diagonal: the result of halving `T_{2k}(a,b,c)` is `T_k(a,c)`.
pub fn half_triangular(t: &RMatrix) -> Result<RMatrix> {
    let m = t.row_count();
    let n = t.col_count();
    if m != n {
        return Err(Error::NotSquare { m, n });
    }
    if !m.is_multiple_of(2) {
        return Err(Error::OddDimension(m));
    }
    let rows: Vec<usize> = (0..m).step_by(2).collect();
    let cols: Vec<usize> = (1..n).step_by(2).collect();
    Ok(t.restrict_rows(&rows)?.select_cols(&cols))
}

/// The simple matrix of every column over `{0, .., r-1}` on `m` rows, sorted
/// ascending by [`ColumnId`]; optionally only the columns with exactly `k`
/// ones.
pub fn all_columns(m: usize, r: u8, k: Option<usize>) -> Result<RMatrix> {
    if !(2..=crate::matrix::MAX_ALPHABET).contains(&r) {
        return Err(Error::BadAlphabet { r });
    }
    if let Some(k) = k {
        if k > m {
            return Err(Error::invalid(format!("ones count {k} exceeds {m} rows")));
        }
    }
    let total = (r as u128)
        .checked_pow(m as u32)
        .ok_or(Error::Overflow("column universe"))?;
    if total > 1 << 22 {
        return Err(Error::invalid(format!(
            "column universe of size {total} is too large"
        )));
    }
    let mut cols = Vec::new();
    for id in 0..total {
        let col = ColumnId(id).decode(m, r);
        if k.is_none_or(|k| ones_count(&col) == k) {
            cols.push(col);
        }
    }
    RMatrix::from_cols(m, r, cols)
}
