//! Incremental echelon bases for rank accumulation and span complements.
//!
//! An `Echelon` holds a set of vectors with distinct leading positions.
//! Inserting a vector reduces its leading entry against the stored rows until
//! it either vanishes (dependent) or acquires a fresh leading position
//! (independent, and it is kept). Insertion order is the caller's order, so
//! greedy complement choices are deterministic.

use super::bitmat;
use super::{ExactMatrix, FieldSpec, Scalar};
use crate::par;

enum Kind {
    Bit { rows: Vec<Vec<u64>>, lookup: Vec<u32> },
    Gen { rows: Vec<Vec<Scalar>>, lookup: Vec<u32> },
}

pub struct Echelon {
    field: FieldSpec,
    dim: usize,
    kind: Kind,
}

const NONE: u32 = u32::MAX;

impl Echelon {
    pub fn new(field: FieldSpec, dim: usize) -> Self {
        let kind = if field.is_two() {
            Kind::Bit { rows: Vec::new(), lookup: vec![NONE; dim] }
        } else {
            Kind::Gen { rows: Vec::new(), lookup: vec![NONE; dim] }
        };
        Echelon { field, dim, kind }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        match &self.kind {
            Kind::Bit { rows, .. } => rows.len(),
            Kind::Gen { rows, .. } => rows.len(),
        }
    }

    /// The stored basis as packed bit rows (GF(2) only).
    pub fn bit_rows(&self) -> &[Vec<u64>] {
        match &self.kind {
            Kind::Bit { rows, .. } => rows,
            _ => panic!("bit rows requested from a non-GF(2) echelon"),
        }
    }

    pub fn scalar_rows(&self) -> &[Vec<Scalar>] {
        match &self.kind {
            Kind::Gen { rows, .. } => rows,
            _ => panic!("scalar rows requested from a GF(2) echelon"),
        }
    }

    /// Inserts a packed bit vector; returns true when it was independent.
    pub fn insert_bits(&mut self, mut v: Vec<u64>) -> bool {
        let Kind::Bit { rows, lookup } = &mut self.kind else {
            panic!("bit insert into a non-GF(2) echelon")
        };
        loop {
            let Some(lead) = first_set(&v) else { return false };
            let slot = lookup[lead];
            if slot == NONE {
                lookup[lead] = rows.len() as u32;
                rows.push(v);
                return true;
            }
            bitmat::xor_into(&mut v, &rows[slot as usize]);
        }
    }

    /// Inserts a dense scalar vector; returns true when it was independent.
    pub fn insert_dense(&mut self, mut v: Vec<Scalar>) -> bool {
        let field = self.field;
        let Kind::Gen { rows, lookup } = &mut self.kind else {
            panic!("dense insert into a GF(2) echelon")
        };
        loop {
            let Some(lead) = v.iter().position(|s| !s.is_zero()) else { return false };
            let slot = lookup[lead];
            if slot == NONE {
                // normalize to a unit leading entry
                let inv = field.inv(&v[lead]).expect("nonzero lead");
                for s in v.iter_mut().skip(lead) {
                    if !s.is_zero() {
                        *s = field.mul(s, &inv);
                    }
                }
                lookup[lead] = rows.len() as u32;
                rows.push(v);
                return true;
            }
            let row = &rows[slot as usize];
            let f = v[lead].clone();
            for (a, b) in v.iter_mut().zip(row.iter()).skip(lead) {
                if !b.is_zero() {
                    *a = field.sub(a, &field.mul(&f, b));
                }
            }
        }
    }

    /// Inserts column `c` of `m`; returns true when it was independent.
    pub fn insert_column(&mut self, m: &ExactMatrix, c: usize) -> bool {
        debug_assert_eq!(m.nrows(), self.dim);
        if self.field.is_two() {
            self.insert_bits(m.column_bits(c))
        } else {
            self.insert_dense(m.column(c))
        }
    }

    /// Inserts a batch of packed bit vectors, preserving their order, and
    /// returns the number of independent ones. Reduction of a batch against
    /// the already-stored rows runs in parallel; survivors are then inserted
    /// in order, so the resulting basis matches a purely sequential run.
    /// Stops early once `stop_at_rank` is reached.
    pub fn batch_insert_bits(&mut self, mut vecs: Vec<Vec<u64>>, stop_at_rank: Option<usize>) -> usize {
        let mut added = 0;
        let chunk = 512usize;
        let mut start = 0;
        while start < vecs.len() {
            if let Some(target) = stop_at_rank {
                if self.rank() >= target {
                    break;
                }
            }
            let end = (start + chunk).min(vecs.len());
            {
                let Kind::Bit { rows, lookup } = &self.kind else {
                    panic!("bit batch insert into a non-GF(2) echelon")
                };
                let batch = &mut vecs[start..end];
                par::for_each_chunk_mut(batch, 1, |_, slot| {
                    let v = &mut slot[0];
                    loop {
                        let Some(lead) = first_set(v) else { break };
                        let idx = lookup[lead];
                        if idx == NONE {
                            break;
                        }
                        bitmat::xor_into(v, &rows[idx as usize]);
                    }
                });
            }
            for i in start..end {
                let v = std::mem::take(&mut vecs[i]);
                if !v.is_empty() && self.insert_bits(v) {
                    added += 1;
                    if let Some(target) = stop_at_rank {
                        if self.rank() >= target {
                            return added;
                        }
                    }
                }
            }
            start = end;
        }
        added
    }
}

fn first_set(v: &[u64]) -> Option<usize> {
    for (i, w) in v.iter().enumerate() {
        if *w != 0 {
            return Some(i * 64 + w.trailing_zeros() as usize);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_over_gf2() {
        let f = FieldSpec::prime(2).unwrap();
        let mut e = Echelon::new(f, 3);
        assert!(e.insert_bits(vec![0b011]));
        assert!(e.insert_bits(vec![0b110]));
        assert!(!e.insert_bits(vec![0b101])); // sum of the first two
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn rank_over_q() {
        let f = FieldSpec::rationals();
        let mut e = Echelon::new(f, 2);
        let v = |a: i64, b: i64| vec![f.from_i64(a), f.from_i64(b)];
        assert!(e.insert_dense(v(2, 4)));
        assert!(!e.insert_dense(v(1, 2)));
        assert!(e.insert_dense(v(0, 1)));
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn batch_insert_matches_sequential() {
        let f = FieldSpec::prime(2).unwrap();
        let mut vecs = Vec::new();
        let mut state = 12345u64;
        for _ in 0..900 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            vecs.push(vec![state & 0xffff]);
        }
        let mut seq = Echelon::new(f, 16);
        let mut n_seq = 0;
        for v in vecs.clone() {
            if seq.insert_bits(v) {
                n_seq += 1;
            }
        }
        let mut batch = Echelon::new(f, 16);
        let n_batch = batch.batch_insert_bits(vecs, None);
        assert_eq!(n_seq, n_batch);
        assert_eq!(seq.rank(), batch.rank());
        assert_eq!(seq.bit_rows(), batch.bit_rows());
    }
}
