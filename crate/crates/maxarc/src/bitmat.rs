//! Exact linear algebra over GF(2) on word-packed matrices: reduced row
//! echelon form, rank, kernel bases, and row-space comparison.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BitMatrixError {
    #[error("column counts differ ({0} vs {1})")]
    ColumnCountMismatch(usize, usize),
    #[error("malformed matrix text: {0}")]
    Parse(String),
}

/// A rows x cols matrix over GF(2), rows packed into u64 words
/// (bit i of a row = column i). Padding bits beyond `cols` stay zero.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    wpr: usize,
    data: Vec<u64>,
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows.min(16) {
            for c in 0..self.cols.min(80) {
                write!(f, "{}", u8::from(self.get(r, c)))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let wpr = cols.div_ceil(64).max(1);
        BitMatrix {
            rows,
            cols,
            wpr,
            data: vec![0; rows * wpr],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        (self.data[r * self.wpr + c / 64] >> (c % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        debug_assert!(r < self.rows && c < self.cols);
        let w = &mut self.data[r * self.wpr + c / 64];
        if v {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    pub fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.wpr..(r + 1) * self.wpr]
    }

    pub fn row_weight(&self, r: usize) -> usize {
        self.row_words(r).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn row_is_zero(&self, r: usize) -> bool {
        self.row_words(r).iter().all(|&w| w == 0)
    }

    /// dst_row ^= src_row
    pub fn xor_row(&mut self, dst: usize, src: usize) {
        debug_assert!(dst != src);
        let (a, b) = (dst * self.wpr, src * self.wpr);
        for i in 0..self.wpr {
            let v = self.data[b + i];
            self.data[a + i] ^= v;
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.wpr {
            self.data.swap(a * self.wpr + i, b * self.wpr + i);
        }
    }

    /// Append one row (given as packed words of the right width).
    pub fn push_row(&mut self, words: &[u64]) {
        assert_eq!(words.len(), self.wpr);
        self.data.extend_from_slice(words);
        self.rows += 1;
    }

    /// Reduce in place; returns (rank, pivot columns, strictly increasing).
    pub fn rref_in_place(&mut self) -> (usize, Vec<usize>) {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c)) else {
                continue;
            };
            self.swap_rows(p, r);
            for i in 0..self.rows {
                if i != r && self.get(i, c) {
                    self.xor_row(i, r);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (r, pivots)
    }

    pub fn rref(&self) -> (BitMatrix, usize) {
        let mut m = self.clone();
        let (rank, _) = m.rref_in_place();
        (m, rank)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// A basis of {v : M v^T = 0}, one row per free column,
    /// cols - rank rows in total.
    pub fn kernel_basis(&self) -> BitMatrix {
        let mut m = self.clone();
        let (rank, pivots) = m.rref_in_place();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut ker = BitMatrix::zeros(self.cols - rank, self.cols);
        let mut kr = 0;
        for f in 0..self.cols {
            if is_pivot[f] {
                continue;
            }
            ker.set(kr, f, true);
            for (j, &pc) in pivots.iter().enumerate() {
                if m.get(j, f) {
                    ker.set(kr, pc, true);
                }
            }
            kr += 1;
        }
        ker
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    t.set(c, r, true);
                }
            }
        }
        t
    }

    /// Column c as a packed value; requires rows <= 64.
    pub fn column_value(&self, c: usize) -> u64 {
        assert!(self.rows <= 64);
        let mut v = 0u64;
        for r in 0..self.rows {
            if self.get(r, c) {
                v |= 1 << r;
            }
        }
        v
    }

    /// Row r of A dotted with row s of B over GF(2).
    pub fn rows_dot(&self, r: usize, other: &BitMatrix, s: usize) -> bool {
        debug_assert_eq!(self.cols, other.cols);
        let mut acc = 0u64;
        for (a, b) in self.row_words(r).iter().zip(other.row_words(s)) {
            acc ^= a & b;
        }
        acc.count_ones() % 2 == 1
    }

    /// Matrix text format: first line "rows cols", then one hex row per
    /// line, bytes little-endian (bit i of the row = column i).
    pub fn to_text(&self) -> String {
        let nbytes = self.cols.div_ceil(8);
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for r in 0..self.rows {
            let words = self.row_words(r);
            for b in 0..nbytes {
                let byte = (words[b / 8] >> (8 * (b % 8))) & 0xff;
                out.push_str(&format!("{byte:02x}"));
            }
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<BitMatrix, BitMatrixError> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| BitMatrixError::Parse("empty input".into()))?;
        let mut it = header.split_whitespace();
        let rows: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| BitMatrixError::Parse("bad header".into()))?;
        let cols: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| BitMatrixError::Parse("bad header".into()))?;
        let nbytes = cols.div_ceil(8);
        let mut m = BitMatrix::zeros(rows, cols);
        for r in 0..rows {
            let line = lines
                .next()
                .ok_or_else(|| BitMatrixError::Parse(format!("missing row {r}")))?
                .trim();
            if line.len() != 2 * nbytes {
                return Err(BitMatrixError::Parse(format!(
                    "row {r} has {} hex chars, expected {}",
                    line.len(),
                    2 * nbytes
                )));
            }
            for b in 0..nbytes {
                let byte = u8::from_str_radix(&line[2 * b..2 * b + 2], 16)
                    .map_err(|e| BitMatrixError::Parse(e.to_string()))?;
                m.data[r * m.wpr + b / 8] |= (byte as u64) << (8 * (b % 8));
            }
            // reject stray bits in the padding
            for c in cols..8 * nbytes {
                if (m.data[r * m.wpr + c / 64] >> (c % 64)) & 1 == 1 {
                    return Err(BitMatrixError::Parse(format!(
                        "row {r} sets bits past column {cols}"
                    )));
                }
            }
        }
        Ok(m)
    }
}

/// True iff A and B span the same row space (equal RREF after dropping
/// zero rows).
pub fn row_space_equal(a: &BitMatrix, b: &BitMatrix) -> Result<bool, BitMatrixError> {
    if a.cols != b.cols {
        return Err(BitMatrixError::ColumnCountMismatch(a.cols, b.cols));
    }
    let (ra, rka) = a.rref();
    let (rb, rkb) = b.rref();
    if rka != rkb {
        return Ok(false);
    }
    Ok(ra.data[..rka * ra.wpr] == rb.data[..rkb * rb.wpr])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xorshift(state: &mut u64) -> u64 {
        let mut x = *state;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        *state = x;
        x
    }

    fn random_matrix(rows: usize, cols: usize, seed: u64) -> BitMatrix {
        let mut m = BitMatrix::zeros(rows, cols);
        let mut s = seed | 1;
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, xorshift(&mut s) & 1 == 1);
            }
        }
        m
    }

    #[test]
    fn rank_basics() {
        assert_eq!(BitMatrix::identity(3).rank(), 3);
        let mut m = BitMatrix::zeros(2, 4);
        for c in [0, 2] {
            m.set(0, c, true);
            m.set(1, c, true);
        }
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_of_all_ones_row() {
        let mut m = BitMatrix::zeros(1, 3);
        for c in 0..3 {
            m.set(0, c, true);
        }
        let k = m.kernel_basis();
        assert_eq!(k.rows(), 2);
        for r in 0..k.rows() {
            assert!(m.rows_dot(0, &k, r) == false);
            assert_eq!(k.row_weight(r) % 2, 0);
        }
        assert_eq!(BitMatrix::identity(5).kernel_basis().rows(), 0);
    }

    #[test]
    fn kernel_dimension_and_orthogonality() {
        for seed in 1..20u64 {
            let m = random_matrix(7, 13, seed);
            let k = m.kernel_basis();
            assert_eq!(m.rank() + k.rows(), m.cols());
            for i in 0..m.rows() {
                for j in 0..k.rows() {
                    assert!(!m.rows_dot(i, &k, j));
                }
            }
            assert_eq!(k.rank(), k.rows());
        }
    }

    #[test]
    fn rref_idempotent_and_rank_transpose() {
        for seed in 1..20u64 {
            let m = random_matrix(9, 11, seed.wrapping_mul(0x9e3779b9));
            let (r1, rank) = m.rref();
            let (r2, rank2) = r1.rref();
            assert_eq!(r1, r2);
            assert_eq!(rank, rank2);
            assert_eq!(rank, m.transpose().rank());
        }
    }

    #[test]
    fn row_space_comparison() {
        let m = random_matrix(5, 9, 42);
        let mut permuted = BitMatrix::zeros(5, 9);
        for (dst, src) in [4usize, 2, 0, 3, 1].iter().enumerate() {
            for c in 0..9 {
                permuted.set(dst, c, m.get(*src, c));
            }
        }
        assert!(row_space_equal(&m, &permuted).unwrap());

        let mut bigger = m.clone();
        // find an independent extra row
        for seed in 100..200 {
            let extra = random_matrix(1, 9, seed);
            let mut cand = m.clone();
            cand.push_row(extra.row_words(0));
            if cand.rank() == m.rank() + 1 {
                bigger = cand;
                break;
            }
        }
        assert!(!row_space_equal(&m, &bigger).unwrap());

        let narrow = BitMatrix::zeros(2, 8);
        assert!(row_space_equal(&m, &narrow).is_err());
    }

    #[test]
    fn text_round_trip() {
        let m = random_matrix(4, 70, 7);
        let text = m.to_text();
        let back = BitMatrix::from_text(&text).unwrap();
        assert_eq!(m, back);
        assert!(BitMatrix::from_text("2 4\nff\nff\n").is_err()); // padding bits set
        assert!(BitMatrix::from_text("1 4\n").is_err());
    }

    #[test]
    fn column_values() {
        let mut m = BitMatrix::zeros(3, 2);
        m.set(0, 0, true);
        m.set(2, 0, true);
        m.set(1, 1, true);
        assert_eq!(m.column_value(0), 0b101);
        assert_eq!(m.column_value(1), 0b010);
    }
}
