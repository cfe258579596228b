//! Bit-packed matrices over GF(2).
//!
//! Rows are stored as contiguous 64-bit words. Row reduction XORs whole
//! words, and the per-pivot update loop runs in parallel over rows: every row
//! update is independent, so the parallel schedule produces the same bits as
//! the sequential one.

use crate::par;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    w: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        let w = cols.div_ceil(64).max(1);
        BitMatrix { rows, cols, w, data: vec![0; rows * w] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn words_per_row(&self) -> usize {
        self.w
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        (self.data[r * self.w + c / 64] >> (c % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, bit: bool) {
        debug_assert!(r < self.rows && c < self.cols);
        let word = &mut self.data[r * self.w + c / 64];
        if bit {
            *word |= 1 << (c % 64);
        } else {
            *word &= !(1 << (c % 64));
        }
    }

    #[inline]
    pub fn flip(&mut self, r: usize, c: usize) {
        self.data[r * self.w + c / 64] ^= 1 << (c % 64);
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.w..(r + 1) * self.w]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.w..(r + 1) * self.w]
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let (a, b) = (a.min(b), a.max(b));
        let (head, tail) = self.data.split_at_mut(b * self.w);
        head[a * self.w..(a + 1) * self.w].swap_with_slice(&mut tail[..self.w]);
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    /// Extracts column `c` as a packed bit vector of length `rows`.
    pub fn column_bits(&self, c: usize) -> Vec<u64> {
        let mut out = vec![0u64; self.rows.div_ceil(64).max(1)];
        let (word, shift) = (c / 64, c % 64);
        for r in 0..self.rows {
            if (self.data[r * self.w + word] >> shift) & 1 == 1 {
                out[r / 64] |= 1 << (r % 64);
            }
        }
        out
    }

    /// In-place reduced row echelon form. Returns the pivot columns in
    /// ascending order. Pivots are the leftmost nonzero entries scanning rows
    /// top-down, so the result is the canonical RREF.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut pr = 0usize;
        let w = self.w;
        let mut pivot_row_buf = vec![0u64; w];
        for c in 0..self.cols {
            if pr == self.rows {
                break;
            }
            let (word, shift) = (c / 64, c % 64);
            let mut found = None;
            for r in pr..self.rows {
                if (self.data[r * w + word] >> shift) & 1 == 1 {
                    found = Some(r);
                    break;
                }
            }
            let Some(r) = found else { continue };
            self.swap_rows(pr, r);
            pivot_row_buf.copy_from_slice(&self.data[pr * w..(pr + 1) * w]);
            let buf = &pivot_row_buf;
            par::for_each_chunk_mut(&mut self.data, w, |i, row| {
                if i != pr && (row[word] >> shift) & 1 == 1 {
                    for (a, b) in row.iter_mut().zip(buf.iter()) {
                        *a ^= *b;
                    }
                }
            });
            pivots.push(c);
            pr += 1;
        }
        pivots
    }

    /// Matrix product over GF(2).
    pub fn mul(&self, rhs: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = BitMatrix::new(self.rows, rhs.cols);
        let ow = out.w;
        let out_data = &mut out.data;
        par::for_each_chunk_mut(out_data, ow, |r, orow| {
            let arow = self.row(r);
            for k in 0..self.cols {
                if (arow[k / 64] >> (k % 64)) & 1 == 1 {
                    let brow = rhs.row(k);
                    for (a, b) in orow.iter_mut().zip(brow.iter()) {
                        *a ^= *b;
                    }
                }
            }
        });
        out
    }
}

/// XOR `src` into `dst`.
pub fn xor_into(dst: &mut [u64], src: &[u64]) {
    debug_assert_eq!(dst.len(), src.len());
    for (a, b) in dst.iter_mut().zip(src.iter()) {
        *a ^= *b;
    }
}

#[inline]
pub fn get_bit(v: &[u64], i: usize) -> bool {
    (v[i / 64] >> (i % 64)) & 1 == 1
}

#[inline]
pub fn set_bit(v: &mut [u64], i: usize) {
    v[i / 64] |= 1 << (i % 64);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_of_singular_matrix() {
        // [[1,1,0],[1,1,1],[0,0,1]] -> [[1,1,0],[0,0,1],[0,0,0]], pivots 0,2
        let mut m = BitMatrix::new(3, 3);
        m.set(0, 0, true);
        m.set(0, 1, true);
        m.set(1, 0, true);
        m.set(1, 1, true);
        m.set(1, 2, true);
        m.set(2, 2, true);
        let pivots = m.rref_in_place();
        assert_eq!(pivots, vec![0, 2]);
        assert!(m.get(0, 0) && m.get(0, 1) && !m.get(0, 2));
        assert!(!m.get(1, 0) && !m.get(1, 1) && m.get(1, 2));
        assert!(m.row(2).iter().all(|&w| w == 0));
    }

    #[test]
    fn parallel_and_sequential_rref_agree() {
        let mut a = BitMatrix::new(40, 170);
        // deterministic pseudo-random fill
        let mut state = 0x9e3779b97f4a7c15u64;
        for r in 0..40 {
            for c in 0..170 {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                if state >> 61 == 0 {
                    a.set(r, c, true);
                }
            }
        }
        let mut b = a.clone();
        crate::par::set_parallel_enabled(true);
        let pa = a.rref_in_place();
        crate::par::set_parallel_enabled(false);
        let pb = b.rref_in_place();
        crate::par::set_parallel_enabled(true);
        assert_eq!(pa, pb);
        assert_eq!(a, b);
    }
}
