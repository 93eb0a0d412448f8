//! Matrices over the alphabet `{0, .., r-1}`: representation, construction
//! operators, and the plain-text interchange format.
//!
//! An [`RMatrix`] is the universal object of the crate: it plays both the
//! role of the large searched matrix and of the small forbidden pattern.
//! Values are immutable after construction and every operation is pure.

use crate::error::{Error, Result};
use std::fmt;

/// Largest supported alphabet; keeps the text format single-digit.
pub const MAX_ALPHABET: u8 = 10;

/// A column encoded as a radix-`r` integer, least-significant digit = row 0.
///
/// Encoding then decoding is the identity, so `ColumnId` gives a total order
/// on the columns of a fixed `(m, r)` shape. It is the branching and
/// deduplication order used throughout the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColumnId(pub u128);

impl ColumnId {
    /// Encodes a column; fails if some entry is `>= r` or the value would
    /// not fit in 128 bits.
    pub fn encode(col: &[u8], r: u8) -> Result<ColumnId> {
        let mut value: u128 = 0;
        let mut base: u128 = 1;
        for (i, &s) in col.iter().enumerate() {
            if s >= r {
                return Err(Error::SymbolOutOfRange { symbol: s, r });
            }
            value = value
                .checked_add(
                    (s as u128)
                        .checked_mul(base)
                        .ok_or(Error::Overflow("column id"))?,
                )
                .ok_or(Error::Overflow("column id"))?;
            if i + 1 < col.len() {
                base = base
                    .checked_mul(r as u128)
                    .ok_or(Error::Overflow("column id"))?;
            }
        }
        Ok(ColumnId(value))
    }

    /// Decodes back into a column of `m` symbols.
    pub fn decode(self, m: usize, r: u8) -> Vec<u8> {
        let mut value = self.0;
        let mut col = Vec::with_capacity(m);
        for _ in 0..m {
            col.push((value % r as u128) as u8);
            value /= r as u128;
        }
        col
    }
}

/// An `m x n` matrix with entries in `{0, .., r-1}`, stored column-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RMatrix {
    m: usize,
    n: usize,
    r: u8,
    cols: Vec<Vec<u8>>,
    ids: Vec<ColumnId>,
}

impl RMatrix {
    /// Builds a matrix from columns. Every column must have length `m` and
    /// entries `< r`.
    pub fn from_cols(m: usize, r: u8, cols: Vec<Vec<u8>>) -> Result<RMatrix> {
        if !(2..=MAX_ALPHABET).contains(&r) {
            return Err(Error::BadAlphabet { r });
        }
        let mut ids = Vec::with_capacity(cols.len());
        for col in &cols {
            if col.len() != m {
                return Err(Error::DimensionMismatch(format!(
                    "column of length {} in a {}-rowed matrix",
                    col.len(),
                    m
                )));
            }
            ids.push(ColumnId::encode(col, r)?);
        }
        let n = cols.len();
        Ok(RMatrix { m, n, r, cols, ids })
    }

    /// Builds a matrix from rows.
    pub fn from_rows(r: u8, rows: Vec<Vec<u8>>) -> Result<RMatrix> {
        let m = rows.len();
        let n = rows.first().map_or(0, |row| row.len());
        for row in &rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "ragged rows: expected {} entries, found {}",
                    n,
                    row.len()
                )));
            }
        }
        let cols = (0..n)
            .map(|j| rows.iter().map(|row| row[j]).collect())
            .collect();
        RMatrix::from_cols(m, r, cols)
    }

    /// The `m x 0` matrix.
    pub fn empty(m: usize, r: u8) -> Result<RMatrix> {
        RMatrix::from_cols(m, r, Vec::new())
    }

    pub fn row_count(&self) -> usize {
        self.m
    }

    /// Number of columns of the matrix.
    pub fn col_count(&self) -> usize {
        self.n
    }

    pub fn alphabet(&self) -> u8 {
        self.r
    }

    pub fn entry(&self, i: usize, j: usize) -> u8 {
        self.cols[j][i]
    }

    pub fn col(&self, j: usize) -> &[u8] {
        &self.cols[j]
    }

    pub fn cols(&self) -> impl Iterator<Item = &[u8]> {
        self.cols.iter().map(|c| c.as_slice())
    }

    pub fn col_id(&self, j: usize) -> ColumnId {
        self.ids[j]
    }

    pub fn col_ids(&self) -> &[ColumnId] {
        &self.ids
    }

    pub fn row(&self, i: usize) -> Vec<u8> {
        self.cols.iter().map(|c| c[i]).collect()
    }

    /// Same entries under a (weakly) larger alphabet bound.
    pub fn with_alphabet(&self, r: u8) -> Result<RMatrix> {
        if r < self.r {
            for col in &self.cols {
                for &s in col {
                    if s >= r {
                        return Err(Error::SymbolOutOfRange { symbol: s, r });
                    }
                }
            }
        }
        RMatrix::from_cols(self.m, r, self.cols.clone())
    }

    /// True iff all columns are pairwise distinct symbol sequences.
    pub fn is_simple(&self) -> bool {
        let mut seen = self.ids.clone();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }

    /// One representative per distinct column, sorted ascending by
    /// [`ColumnId`]. Row count and alphabet are unchanged.
    pub fn dedup_columns(&self) -> RMatrix {
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_unstable_by_key(|&j| self.ids[j]);
        order.dedup_by_key(|j| self.ids[*j]);
        let cols = order.iter().map(|&j| self.cols[j].clone()).collect();
        RMatrix::from_cols(self.m, self.r, cols).expect("dedup preserves validity")
    }

    /// Swaps 0 and 1 in a (0,1)-matrix; rejects any other symbol.
    pub fn complement01(&self) -> Result<RMatrix> {
        let mut cols = Vec::with_capacity(self.n);
        for col in &self.cols {
            let mut flipped = Vec::with_capacity(self.m);
            for &s in col {
                match s {
                    0 => flipped.push(1),
                    1 => flipped.push(0),
                    other => return Err(Error::NotBinary { symbol: other }),
                }
            }
            cols.push(flipped);
        }
        RMatrix::from_cols(self.m, self.r, cols)
    }

    /// Stacks every column of `self` on top of every column of `other`:
    /// `(m1 + m2)` rows and `n1 * n2` columns, outer loop over `self`'s
    /// columns. The product of simple matrices is simple.
    pub fn product(&self, other: &RMatrix) -> Result<RMatrix> {
        if self.r != other.r {
            return Err(Error::AlphabetMismatch {
                left: self.r,
                right: other.r,
            });
        }
        let mut cols = Vec::with_capacity(self.n * other.n);
        for a in &self.cols {
            for b in &other.cols {
                let mut col = Vec::with_capacity(self.m + other.m);
                col.extend_from_slice(a);
                col.extend_from_slice(b);
                cols.push(col);
            }
        }
        RMatrix::from_cols(self.m + other.m, self.r, cols)
    }

    /// `t` copies of the matrix concatenated in column blocks.
    pub fn concat_copies(&self, t: usize) -> Result<RMatrix> {
        if t == 0 {
            return Err(Error::invalid("concat_copies requires t >= 1"));
        }
        let mut cols = Vec::with_capacity(self.n * t);
        for _ in 0..t {
            cols.extend(self.cols.iter().cloned());
        }
        RMatrix::from_cols(self.m, self.r, cols)
    }

    /// The submatrix on the given rows, in the given order; columns are kept
    /// in order and not deduplicated. Indices must be distinct and in range.
    pub fn restrict_rows(&self, rows: &[usize]) -> Result<RMatrix> {
        let mut seen = vec![false; self.m];
        for &i in rows {
            if i >= self.m {
                return Err(Error::RowIndexOutOfRange {
                    index: i,
                    m: self.m,
                });
            }
            if seen[i] {
                return Err(Error::DuplicateRowIndex { index: i });
            }
            seen[i] = true;
        }
        let cols = self
            .cols
            .iter()
            .map(|c| rows.iter().map(|&i| c[i]).collect())
            .collect();
        RMatrix::from_cols(rows.len(), self.r, cols)
    }

    /// The submatrix on the given columns, in the given order.
    pub fn select_cols(&self, cols: &[usize]) -> RMatrix {
        let picked = cols.iter().map(|&j| self.cols[j].clone()).collect();
        RMatrix::from_cols(self.m, self.r, picked).expect("column selection preserves validity")
    }

    /// Serializes to the plain-text format; `parse` is the inverse.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{} {} {}\n", self.m, self.n, self.r));
        for i in 0..self.m {
            for j in 0..self.n {
                out.push((b'0' + self.cols[j][i]) as char);
            }
            out.push('\n');
        }
        out
    }

    /// Parses one matrix from the text format:
    /// a header line `m n r`, then `m` lines of exactly `n` digit characters.
    /// Lines starting with `#` are comments. Trailing content other than
    /// comments or blank lines is rejected.
    pub fn parse(text: &str) -> Result<RMatrix> {
        let mut lines = text.lines();
        let matrix = parse_one(&mut lines)?
            .ok_or_else(|| Error::parse("missing header line".to_string()))?;
        for rest in lines {
            let rest = rest.trim();
            if !rest.is_empty() && !rest.starts_with('#') {
                return Err(Error::parse(format!(
                    "unexpected trailing content: {rest:?}"
                )));
            }
        }
        Ok(matrix)
    }

    /// Parses a stream of concatenated matrices (as emitted by family
    /// generators); comments and blank lines may separate them.
    pub fn parse_stream(text: &str) -> Result<Vec<RMatrix>> {
        let mut lines = text.lines();
        let mut out = Vec::new();
        while let Some(matrix) = parse_one(&mut lines)? {
            out.push(matrix);
        }
        Ok(out)
    }
}

fn parse_one<'a>(lines: &mut impl Iterator<Item = &'a str>) -> Result<Option<RMatrix>> {
    let header = loop {
        match lines.next() {
            None => return Ok(None),
            Some(line) => {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                break line;
            }
        }
    };
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.len() != 3 {
        return Err(Error::parse(format!(
            "header must be \"m n r\", found {header:?}"
        )));
    }
    let m: usize = parts[0]
        .parse()
        .map_err(|_| Error::parse(format!("bad row count {:?}", parts[0])))?;
    let n: usize = parts[1]
        .parse()
        .map_err(|_| Error::parse(format!("bad column count {:?}", parts[1])))?;
    let r: u8 = parts[2]
        .parse()
        .map_err(|_| Error::parse(format!("bad alphabet {:?}", parts[2])))?;
    if !(2..=MAX_ALPHABET).contains(&r) {
        return Err(Error::BadAlphabet { r });
    }
    let mut rows = Vec::with_capacity(m);
    while rows.len() < m {
        let line = lines
            .next()
            .ok_or_else(|| Error::parse(format!("expected {} rows, found {}", m, rows.len())))?;
        let line = line.trim();
        if line.starts_with('#') {
            continue;
        }
        if line.is_empty() && n > 0 {
            return Err(Error::parse(format!("row of length 0, expected {n}")));
        }
        let mut row = Vec::with_capacity(n);
        for ch in line.chars() {
            let digit = ch
                .to_digit(10)
                .ok_or_else(|| Error::parse(format!("non-digit character {ch:?} in row")))?
                as u8;
            if digit >= r {
                return Err(Error::SymbolOutOfRange { symbol: digit, r });
            }
            row.push(digit);
        }
        if row.len() != n {
            return Err(Error::parse(format!(
                "row of length {}, expected {}",
                row.len(),
                n
            )));
        }
        rows.push(row);
    }
    let mut matrix = RMatrix::from_rows(r, rows)?;
    if m == 0 {
        // from_rows cannot know n when there are no rows
        matrix = RMatrix::from_cols(0, r, vec![Vec::new(); n])?;
    }
    Ok(Some(matrix))
}

impl fmt::Debug for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RMatrix({}x{}, r={})", self.m, self.n, self.r)?;
        for i in 0..self.m {
            write!(f, "\n  ")?;
            for j in 0..self.n {
                write!(f, "{}", self.cols[j][i])?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Number of 1 entries in a column. Symbols other than 1 (in particular 2)
/// never count.
pub fn ones_count(col: &[u8]) -> usize {
    col.iter().filter(|&&s| s == 1).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(r: u8, rows: &[&[u8]]) -> RMatrix {
        RMatrix::from_rows(r, rows.iter().map(|row| row.to_vec()).collect()).unwrap()
    }

    #[test]
    fn simplicity() {
        // columns (0,0) and (1,1) are distinct
        assert!(mat(2, &[&[0, 1], &[0, 1]]).is_simple());
        // columns (1,0) and (1,0) repeat
        assert!(!mat(2, &[&[1, 1], &[0, 0]]).is_simple());
        assert!(RMatrix::empty(3, 2).unwrap().is_simple());
    }

    #[test]
    fn dedup_sorts_and_removes_repeats() {
        let a = mat(2, &[&[1, 1], &[0, 0]]);
        let d = a.dedup_columns();
        assert_eq!(d.col_count(), 1);
        assert_eq!(d.col(0), &[1, 0]);

        let simple = mat(2, &[&[1, 0], &[0, 1]]);
        let d = simple.dedup_columns();
        assert_eq!(d.col_count(), 2);
        // sorted ascending by column id: (0,1) has id 2, (1,0) has id 1
        assert_eq!(d.col(0), &[1, 0]);
        assert_eq!(d.col(1), &[0, 1]);

        let triple = RMatrix::from_cols(2, 3, vec![vec![2, 1]; 3]).unwrap();
        let d = triple.dedup_columns();
        assert_eq!(d.col_count(), 1);
        assert_eq!(d.col(0), &[2, 1]);
    }

    #[test]
    fn dedup_is_idempotent_and_preserves_column_set() {
        let a = mat(2, &[&[1, 1, 0], &[0, 0, 1]]);
        let d = a.dedup_columns();
        assert!(d.is_simple());
        let mut expected: Vec<ColumnId> = a.col_ids().to_vec();
        expected.sort_unstable();
        expected.dedup();
        assert_eq!(d.col_ids(), expected.as_slice());
        assert_eq!(d.dedup_columns(), d);
    }

    #[test]
    fn complement_swaps_zero_and_one() {
        let zeros = mat(2, &[&[0], &[0]]);
        assert_eq!(zeros.complement01().unwrap(), mat(2, &[&[1], &[1]]));
        let with_two = mat(3, &[&[0, 2], &[1, 0]]);
        assert!(matches!(
            with_two.complement01(),
            Err(Error::NotBinary { symbol: 2 })
        ));
        // involution
        let a = mat(2, &[&[0, 1, 1], &[1, 1, 0]]);
        assert_eq!(a.complement01().unwrap().complement01().unwrap(), a);
    }

    #[test]
    fn product_shapes_and_order() {
        let a = mat(2, &[&[0]]);
        let b = mat(2, &[&[1]]);
        let p = a.product(&b).unwrap();
        assert_eq!(p.row_count(), 2);
        assert_eq!(p.col(0), &[0, 1]);

        let x = mat(2, &[&[0, 1]]);
        let y = mat(2, &[&[0, 1, 1]]);
        assert_eq!(x.product(&y).unwrap().col_count(), 6);

        // stacking a 0-row, then a 1-row, then a single-column matrix
        let f = mat(2, &[&[1], &[0]]);
        let stacked = mat(2, &[&[0]])
            .product(&mat(2, &[&[1]]))
            .unwrap()
            .product(&f)
            .unwrap();
        assert_eq!(stacked.col(0), &[0, 1, 1, 0]);

        let c = RMatrix::from_cols(1, 3, vec![vec![2]]).unwrap();
        assert!(matches!(a.product(&c), Err(Error::AlphabetMismatch { .. })));
    }

    #[test]
    fn concat_copies_blocks() {
        let f = mat(2, &[&[0, 1]]);
        assert_eq!(f.concat_copies(1).unwrap(), f);
        let doubled = f.concat_copies(2).unwrap();
        assert_eq!(doubled.row(0), vec![0, 1, 0, 1]);
        assert!(!doubled.is_simple());
        assert!(f.concat_copies(0).is_err());
    }

    #[test]
    fn ones_count_ignores_twos() {
        assert_eq!(ones_count(&[1, 1, 0]), 2);
        assert_eq!(ones_count(&[2, 2, 2]), 0);
        assert_eq!(ones_count(&[0, 1, 2, 1]), 2);
    }

    #[test]
    fn restrict_rows_cases() {
        let i3 = crate::patterns::gen_i(3, 1, 0).unwrap();
        let top = i3.restrict_rows(&[0, 1]).unwrap();
        assert_eq!(top, mat(2, &[&[1, 0, 0], &[0, 1, 0]]));
        assert_eq!(i3.restrict_rows(&[0, 1, 2]).unwrap(), i3);
        let none = i3.restrict_rows(&[]).unwrap();
        assert_eq!(none.row_count(), 0);
        assert_eq!(none.col_count(), 3);
        assert!(matches!(
            i3.restrict_rows(&[3]),
            Err(Error::RowIndexOutOfRange { .. })
        ));
        assert!(matches!(
            i3.restrict_rows(&[1, 1]),
            Err(Error::DuplicateRowIndex { .. })
        ));
    }

    #[test]
    fn text_format_roundtrip() {
        let a = RMatrix::parse("2 3 3\n012\n210\n").unwrap();
        assert_eq!(a.row_count(), 2);
        assert_eq!(a.col_count(), 3);
        assert_eq!(a.alphabet(), 3);
        assert_eq!(a.row(0), vec![0, 1, 2]);
        assert_eq!(RMatrix::parse(&a.to_text()).unwrap(), a);

        assert!(matches!(
            RMatrix::parse("1 1 2\n5\n"),
            Err(Error::SymbolOutOfRange { .. })
        ));
        assert!(RMatrix::parse("2 3 3\n01\n210\n").is_err());
        assert!(RMatrix::parse("2 3\n012\n210\n").is_err());

        // comments are skipped
        let b = RMatrix::parse("# family member\n2 2 2\n# rows follow\n01\n10\n").unwrap();
        assert_eq!(b.col_count(), 2);

        // degenerate shapes round-trip too
        for degenerate in [
            RMatrix::empty(3, 2).unwrap(),
            RMatrix::from_cols(0, 2, vec![Vec::new()]).unwrap(),
            RMatrix::from_cols(0, 2, vec![]).unwrap(),
        ] {
            assert_eq!(RMatrix::parse(&degenerate.to_text()).unwrap(), degenerate);
        }
    }

    #[test]
    fn column_id_roundtrip() {
        let col = vec![2, 0, 1, 2];
        let id = ColumnId::encode(&col, 3).unwrap();
        assert_eq!(id.decode(4, 3), col);
        assert_eq!(id.0, 2 + 9 + 2 * 27);
    }

    #[test]
    fn parse_stream_reads_many() {
        let text = format!(
            "# two members\n{}\n{}",
            mat(2, &[&[0, 1], &[1, 0]]).to_text(),
            mat(2, &[&[1], &[1]]).to_text()
        );
        let all = RMatrix::parse_stream(&text).unwrap();
        assert_eq!(all.len(), 2);
        assert_eq!(all[1].col(0), &[1, 1]);
    }
}
