//! Dense Gaussian elimination over GF(2^m) for the element grids held by
//! q-ary codes. Sizes here are desk-scale (hundreds of columns), so the
//! plain row-reduction is all that is needed.

use crate::gf2m::FieldCtx;

/// Row-major grid of raw element encodings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Grid {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u16>,
}

impl Grid {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Grid {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> u16 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u16) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u16] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
}

/// Reduce in place to reduced row echelon form; returns (rank, pivots).
pub(crate) fn rref_q(f: &FieldCtx, m: &mut Grid) -> (usize, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| m.at(i, c) != 0) else {
            continue;
        };
        if p != r {
            for j in 0..m.cols {
                let (a, b) = (m.at(p, j), m.at(r, j));
                m.set(p, j, b);
                m.set(r, j, a);
            }
        }
        let inv = f.inv_bits(m.at(r, c));
        for j in c..m.cols {
            m.set(r, j, f.mul_bits(inv, m.at(r, j)));
        }
        for i in 0..m.rows {
            if i == r {
                continue;
            }
            let factor = m.at(i, c);
            if factor == 0 {
                continue;
            }
            for j in c..m.cols {
                let v = m.at(i, j) ^ f.mul_bits(factor, m.at(r, j));
                m.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (r, pivots)
}

pub(crate) fn rank_q(f: &FieldCtx, m: &Grid) -> usize {
    let mut g = m.clone();
    rref_q(f, &mut g).0
}

/// Basis of {v : M v^T = 0}, one row per free column.
pub(crate) fn kernel_q(f: &FieldCtx, m: &Grid) -> Grid {
    let mut g = m.clone();
    let (rank, pivots) = rref_q(f, &mut g);
    let mut is_pivot = vec![false; m.cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut ker = Grid::zeros(m.cols - rank, m.cols);
    let mut kr = 0;
    for fc in 0..m.cols {
        if is_pivot[fc] {
            continue;
        }
        ker.set(kr, fc, 1);
        for (j, &pc) in pivots.iter().enumerate() {
            ker.set(kr, pc, g.at(j, fc));
        }
        kr += 1;
    }
    ker
}

/// Does `v` lie in the row space of the already-reduced grid `rref`?
pub(crate) fn in_row_space(f: &FieldCtx, rref: &Grid, pivots: &[usize], v: &[u16]) -> bool {
    let mut rem = v.to_vec();
    for (j, &pc) in pivots.iter().enumerate() {
        let factor = rem[pc];
        if factor == 0 {
            continue;
        }
        for c in 0..rref.cols {
            rem[c] ^= f.mul_bits(factor, rref.at(j, c));
        }
    }
    rem.iter().all(|&x| x == 0)
}

pub(crate) fn row_space_equal_q(f: &FieldCtx, a: &Grid, b: &Grid) -> bool {
    if a.cols != b.cols {
        return false;
    }
    let mut ra = a.clone();
    let mut rb = b.clone();
    let (ka, _) = rref_q(f, &mut ra);
    let (kb, _) = rref_q(f, &mut rb);
    ka == kb && ra.data[..ka * ra.cols] == rb.data[..kb * rb.cols]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2m::build_field;

    #[test]
    fn rank_and_kernel_over_gf8() {
        let f = build_field(3, None).unwrap();
        // rows: (1, w, w^2), (w, w^2, w^3) = w * row0  -> rank 1
        let w = 2u16;
        let mut g = Grid::zeros(2, 3);
        for c in 0..3 {
            g.set(0, c, f.pow(f.element(w as u32).unwrap(), c as u64).bits() as u16);
            g.set(1, c, f.pow(f.element(w as u32).unwrap(), c as u64 + 1).bits() as u16);
        }
        assert_eq!(rank_q(&f, &g), 1);
        let k = kernel_q(&f, &g);
        assert_eq!(k.rows, 2);
        for r in 0..k.rows {
            for i in 0..g.rows {
                let mut acc = 0u16;
                for c in 0..3 {
                    acc ^= f.mul_bits(g.at(i, c), k.at(r, c));
                }
                assert_eq!(acc, 0);
            }
        }
    }

    #[test]
    fn membership() {
        let f = build_field(2, None).unwrap();
        let mut g = Grid::zeros(1, 2);
        g.set(0, 0, 1);
        g.set(0, 1, 2); // (1, w)
        let mut r = g.clone();
        let (_, pivots) = rref_q(&f, &mut r);
        // w * (1, w) = (w, w^2) = (2, 3) under x^2+x+1
        assert!(in_row_space(&f, &r, &pivots, &[2, 3]));
        assert!(!in_row_space(&f, &r, &pivots, &[1, 1]));
    }
}
