//! Exact matrices with a field-dispatched representation.

use super::bitmat::{self, BitMatrix};
use super::{Echelon, FieldSpec, Scalar};
use crate::par;

/// Density below which non-GF(2) matrices are stored column-sparse. Purely a
/// storage heuristic; every operation yields identical results either way.
const SPARSE_DENSITY: f64 = 0.25;

#[derive(Clone, Debug)]
enum Repr {
    /// GF(2), bit-packed dense rows.
    Bit(BitMatrix),
    /// Row-major dense scalars.
    Dense(Vec<Scalar>),
    /// Column-sparse: per column, (row, value) sorted by row.
    SparseCols(Vec<Vec<(u32, Scalar)>>),
}

#[derive(Clone, Debug)]
pub struct ExactMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    repr: Repr,
}

impl ExactMatrix {
    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Self {
        let repr = if field.is_two() {
            Repr::Bit(BitMatrix::new(rows, cols))
        } else {
            Repr::SparseCols(vec![Vec::new(); cols])
        };
        ExactMatrix { field, rows, cols, repr }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zero_dense(field, n, n);
        for i in 0..n {
            m.set_entry(i, i, field.one());
        }
        m
    }

    /// A zero matrix in a mutable (bit or dense) layout, for builders that
    /// fill entries one by one.
    pub fn zero_dense(field: FieldSpec, rows: usize, cols: usize) -> Self {
        let repr = if field.is_two() {
            Repr::Bit(BitMatrix::new(rows, cols))
        } else {
            Repr::Dense(vec![field.zero(); rows * cols])
        };
        ExactMatrix { field, rows, cols, repr }
    }

    /// Builds from nonzero entries. Duplicate positions are accumulated.
    pub fn from_entries<I>(field: FieldSpec, rows: usize, cols: usize, entries: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Scalar)>,
    {
        let entries: Vec<_> = entries.into_iter().filter(|(_, _, s)| !s.is_zero()).collect();
        if field.is_two() {
            let mut m = BitMatrix::new(rows, cols);
            for (r, c, s) in entries {
                if !s.is_zero() {
                    if m.get(r, c) {
                        m.flip(r, c);
                    } else {
                        m.set(r, c, true);
                    }
                }
            }
            return ExactMatrix { field, rows, cols, repr: Repr::Bit(m) };
        }
        let cells = (rows * cols).max(1);
        if (entries.len() as f64) < SPARSE_DENSITY * cells as f64 {
            let mut by_col: Vec<Vec<(u32, Scalar)>> = vec![Vec::new(); cols];
            for (r, c, s) in entries {
                by_col[c].push((r as u32, s));
            }
            for col in by_col.iter_mut() {
                col.sort_by_key(|(r, _)| *r);
                // accumulate duplicates
                let mut out: Vec<(u32, Scalar)> = Vec::with_capacity(col.len());
                for (r, s) in col.drain(..) {
                    if let Some(last) = out.last_mut() {
                        if last.0 == r {
                            last.1 = field.add(&last.1, &s);
                            continue;
                        }
                    }
                    out.push((r, s));
                }
                out.retain(|(_, s)| !s.is_zero());
                *col = out;
            }
            ExactMatrix { field, rows, cols, repr: Repr::SparseCols(by_col) }
        } else {
            let mut data = vec![field.zero(); rows * cols];
            for (r, c, s) in entries {
                data[r * cols + c] = field.add(&data[r * cols + c], &s);
            }
            ExactMatrix { field, rows, cols, repr: Repr::Dense(data) }
        }
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let entries = rows
            .into_iter()
            .enumerate()
            .flat_map(|(r, row)| row.into_iter().enumerate().map(move |(c, s)| (r, c, s)))
            .filter(|(_, _, s)| !s.is_zero())
            .collect::<Vec<_>>();
        Self::from_entries(field, nrows, ncols, entries)
    }

    pub fn from_columns(field: FieldSpec, nrows: usize, cols: Vec<Vec<Scalar>>) -> Self {
        let ncols = cols.len();
        let entries = cols
            .into_iter()
            .enumerate()
            .flat_map(|(c, col)| col.into_iter().enumerate().map(move |(r, s)| (r, c, s)))
            .filter(|(_, _, s)| !s.is_zero())
            .collect::<Vec<_>>();
        Self::from_entries(field, nrows, ncols, entries)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        debug_assert!(r < self.rows && c < self.cols);
        match &self.repr {
            Repr::Bit(m) => {
                if m.get(r, c) {
                    self.field.one()
                } else {
                    self.field.zero()
                }
            }
            Repr::Dense(d) => d[r * self.cols + c].clone(),
            Repr::SparseCols(cols) => cols[c]
                .binary_search_by_key(&(r as u32), |(rr, _)| *rr)
                .map(|i| cols[c][i].1.clone())
                .unwrap_or_else(|_| self.field.zero()),
        }
    }

    /// Overwrites one entry; densifies sparse storage first.
    pub fn set_entry(&mut self, r: usize, c: usize, s: Scalar) {
        if matches!(self.repr, Repr::SparseCols(_)) {
            self.repr = Repr::Dense(self.dense_data());
        }
        match &mut self.repr {
            Repr::Bit(m) => m.set(r, c, !s.is_zero()),
            Repr::Dense(d) => d[r * self.cols + c] = s,
            Repr::SparseCols(_) => unreachable!(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Bit(m) => m.is_zero(),
            Repr::Dense(d) => d.iter().all(|s| s.is_zero()),
            Repr::SparseCols(cols) => cols.iter().all(|c| c.is_empty()),
        }
    }

    /// Nonzero entries as (row, col, value).
    pub fn entries(&self) -> Vec<(usize, usize, Scalar)> {
        let mut out = Vec::new();
        match &self.repr {
            Repr::Bit(m) => {
                for r in 0..self.rows {
                    for c in 0..self.cols {
                        if m.get(r, c) {
                            out.push((r, c, self.field.one()));
                        }
                    }
                }
            }
            Repr::Dense(d) => {
                for r in 0..self.rows {
                    for c in 0..self.cols {
                        let s = &d[r * self.cols + c];
                        if !s.is_zero() {
                            out.push((r, c, s.clone()));
                        }
                    }
                }
            }
            Repr::SparseCols(cols) => {
                for (c, col) in cols.iter().enumerate() {
                    for (r, s) in col {
                        out.push((*r as usize, c, s.clone()));
                    }
                }
            }
        }
        out
    }

    fn dense_data(&self) -> Vec<Scalar> {
        match &self.repr {
            Repr::Dense(d) => d.clone(),
            Repr::Bit(m) => {
                let mut d = vec![self.field.zero(); self.rows * self.cols];
                for r in 0..self.rows {
                    for c in 0..self.cols {
                        if m.get(r, c) {
                            d[r * self.cols + c] = self.field.one();
                        }
                    }
                }
                d
            }
            Repr::SparseCols(cols) => {
                let mut d = vec![self.field.zero(); self.rows * self.cols];
                for (c, col) in cols.iter().enumerate() {
                    for (r, s) in col {
                        d[*r as usize * self.cols + c] = s.clone();
                    }
                }
                d
            }
        }
    }

    fn to_bit(&self) -> BitMatrix {
        match &self.repr {
            Repr::Bit(m) => m.clone(),
            _ => {
                let mut m = BitMatrix::new(self.rows, self.cols);
                for (r, c, s) in self.entries() {
                    m.set(r, c, !s.is_zero());
                }
                m
            }
        }
    }

    /// Column `c` as a dense scalar vector.
    pub fn column(&self, c: usize) -> Vec<Scalar> {
        match &self.repr {
            Repr::SparseCols(cols) => {
                let mut v = vec![self.field.zero(); self.rows];
                for (r, s) in &cols[c] {
                    v[*r as usize] = s.clone();
                }
                v
            }
            _ => (0..self.rows).map(|r| self.get(r, c)).collect(),
        }
    }

    /// Column `c` as a packed bit vector (GF(2) only).
    pub fn column_bits(&self, c: usize) -> Vec<u64> {
        debug_assert!(self.field.is_two());
        match &self.repr {
            Repr::Bit(m) => m.column_bits(c),
            _ => {
                let mut v = vec![0u64; self.rows.div_ceil(64).max(1)];
                for r in 0..self.rows {
                    if !self.get(r, c).is_zero() {
                        bitmat::set_bit(&mut v, r);
                    }
                }
                v
            }
        }
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        if self.field.is_two() {
            let mut m = self.to_bit();
            let pivots = m.rref_in_place();
            (ExactMatrix { field: self.field, rows: self.rows, cols: self.cols, repr: Repr::Bit(m) }, pivots)
        } else {
            let mut rows: Vec<Vec<Scalar>> = (0..self.rows)
                .map(|r| (0..self.cols).map(|c| self.get(r, c)).collect())
                .collect();
            let pivots = rref_dense(self.field, &mut rows, self.cols);
            (ExactMatrix::from_rows_keep_dims(self.field, rows, self.rows, self.cols), pivots)
        }
    }

    fn from_rows_keep_dims(field: FieldSpec, rows: Vec<Vec<Scalar>>, nrows: usize, ncols: usize) -> Self {
        let mut data = vec![field.zero(); nrows * ncols];
        for (r, row) in rows.into_iter().enumerate() {
            for (c, s) in row.into_iter().enumerate() {
                data[r * ncols + c] = s;
            }
        }
        ExactMatrix { field, rows: nrows, cols: ncols, repr: Repr::Dense(data) }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, as matrix columns, together with the free
    /// columns it is indexed by (ascending). The basis vector for free column
    /// f has a unit entry at f, so kernel coordinates of any kernel vector
    /// can be read off at the free columns.
    pub fn kernel_basis_profile(&self) -> (ExactMatrix, Vec<usize>) {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut basis = ExactMatrix::zero_dense(self.field, self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            basis.set_entry(f, k, self.field.one());
            for (t, &p) in pivots.iter().enumerate() {
                let v = r.get(t, f);
                if !v.is_zero() {
                    basis.set_entry(p, k, self.field.neg(&v));
                }
            }
        }
        (basis, free)
    }

    pub fn kernel_basis(&self) -> ExactMatrix {
        self.kernel_basis_profile().0
    }

    pub fn mul(&self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        assert_eq!(self.field, rhs.field);
        if self.field.is_two() {
            let m = self.to_bit().mul(&rhs.to_bit());
            return ExactMatrix { field: self.field, rows: self.rows, cols: rhs.cols, repr: Repr::Bit(m) };
        }
        // accumulate over self's nonzero entries
        let mut data = vec![self.field.zero(); self.rows * rhs.cols];
        for (r, k, s) in self.entries() {
            for c in 0..rhs.cols {
                let v = rhs.get(k, c);
                if !v.is_zero() {
                    let idx = r * rhs.cols + c;
                    data[idx] = self.field.add(&data[idx], &self.field.mul(&s, &v));
                }
            }
        }
        ExactMatrix { field: self.field, rows: self.rows, cols: rhs.cols, repr: Repr::Dense(data) }
    }

    pub fn add(&self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut entries = self.entries();
        entries.extend(rhs.entries());
        ExactMatrix::from_entries(self.field, self.rows, self.cols, entries)
    }

    pub fn neg(&self) -> ExactMatrix {
        let entries = self.entries().into_iter().map(|(r, c, s)| (r, c, self.field.neg(&s)));
        ExactMatrix::from_entries(self.field, self.rows, self.cols, entries.collect::<Vec<_>>())
    }

    pub fn scale(&self, s: &Scalar) -> ExactMatrix {
        let entries = self.entries().into_iter().map(|(r, c, v)| (r, c, self.field.mul(&v, s)));
        ExactMatrix::from_entries(self.field, self.rows, self.cols, entries.collect::<Vec<_>>())
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![self.field.zero(); self.rows];
        match &self.repr {
            Repr::SparseCols(cols) => {
                for (c, col) in cols.iter().enumerate() {
                    if v[c].is_zero() {
                        continue;
                    }
                    for (r, s) in col {
                        let idx = *r as usize;
                        out[idx] = self.field.add(&out[idx], &self.field.mul(s, &v[c]));
                    }
                }
            }
            _ => {
                for (r, c, s) in self.entries() {
                    if !v[c].is_zero() {
                        out[r] = self.field.add(&out[r], &self.field.mul(&s, &v[c]));
                    }
                }
            }
        }
        out
    }

    /// Applies the matrix to a packed bit vector (GF(2) only).
    pub fn apply_bits(&self, v: &[u64]) -> Vec<u64> {
        debug_assert!(self.field.is_two());
        let mut out = vec![0u64; self.rows.div_ceil(64).max(1)];
        match &self.repr {
            Repr::Bit(m) => {
                for c in 0..self.cols {
                    if bitmat::get_bit(v, c) {
                        for r in 0..self.rows {
                            if m.get(r, c) {
                                out[r / 64] ^= 1 << (r % 64);
                            }
                        }
                    }
                }
            }
            Repr::SparseCols(cols) => {
                for (c, col) in cols.iter().enumerate() {
                    if bitmat::get_bit(v, c) {
                        for (r, _) in col {
                            out[*r as usize / 64] ^= 1 << (*r as usize % 64);
                        }
                    }
                }
            }
            Repr::Dense(_) => {
                for c in 0..self.cols {
                    if bitmat::get_bit(v, c) {
                        for r in 0..self.rows {
                            if !self.get(r, c).is_zero() {
                                out[r / 64] ^= 1 << (r % 64);
                            }
                        }
                    }
                }
            }
        }
        out
    }

    pub fn hstack(field: FieldSpec, parts: &[&ExactMatrix]) -> ExactMatrix {
        let rows = parts.first().map_or(0, |m| m.rows);
        let mut entries = Vec::new();
        let mut off = 0;
        for m in parts {
            assert_eq!(m.rows, rows, "hstack row mismatch");
            for (r, c, s) in m.entries() {
                entries.push((r, c + off, s));
            }
            off += m.cols;
        }
        ExactMatrix::from_entries(field, rows, off, entries)
    }

    pub fn vstack(field: FieldSpec, parts: &[&ExactMatrix]) -> ExactMatrix {
        let cols = parts.first().map_or(0, |m| m.cols);
        let mut entries = Vec::new();
        let mut off = 0;
        for m in parts {
            assert_eq!(m.cols, cols, "vstack column mismatch");
            for (r, c, s) in m.entries() {
                entries.push((r + off, c, s));
            }
            off += m.rows;
        }
        ExactMatrix::from_entries(field, off, cols, entries)
    }

    /// Selects columns by index, in the given order.
    pub fn select_columns(&self, idx: &[usize]) -> ExactMatrix {
        let mut entries = Vec::new();
        for (k, &c) in idx.iter().enumerate() {
            match &self.repr {
                Repr::SparseCols(cols) => {
                    for (r, s) in &cols[c] {
                        entries.push((*r as usize, k, s.clone()));
                    }
                }
                _ => {
                    for r in 0..self.rows {
                        let s = self.get(r, c);
                        if !s.is_zero() {
                            entries.push((r, k, s));
                        }
                    }
                }
            }
        }
        ExactMatrix::from_entries(self.field, self.rows, idx.len(), entries)
    }
}

impl PartialEq for ExactMatrix {
    fn eq(&self, other: &Self) -> bool {
        if self.field != other.field || self.rows != other.rows || self.cols != other.cols {
            return false;
        }
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) != other.get(r, c) {
                    return false;
                }
            }
        }
        true
    }
}
impl Eq for ExactMatrix {}

fn rref_dense(field: FieldSpec, rows: &mut Vec<Vec<Scalar>>, cols: usize) -> Vec<usize> {
    let nrows = rows.len();
    let mut pivots = Vec::new();
    let mut pr = 0usize;
    for c in 0..cols {
        if pr == nrows {
            break;
        }
        let Some(r) = (pr..nrows).find(|&r| !rows[r][c].is_zero()) else { continue };
        rows.swap(pr, r);
        let inv = field.inv(&rows[pr][c]).expect("nonzero pivot");
        for s in rows[pr].iter_mut().skip(c) {
            if !s.is_zero() {
                *s = field.mul(s, &inv);
            }
        }
        let pivot_row = rows[pr].clone();
        par::for_each_chunk_mut(rows.as_mut_slice(), 1, |i, slot| {
            if i == pr {
                return;
            }
            let row = &mut slot[0];
            let f = row[c].clone();
            if f.is_zero() {
                return;
            }
            for (a, b) in row.iter_mut().zip(pivot_row.iter()).skip(c) {
                if !b.is_zero() {
                    *a = field.sub(a, &field.mul(&f, b));
                }
            }
        });
        pivots.push(c);
        pr += 1;
    }
    pivots
}

/// Indices of `ambient` columns whose classes form a basis of
/// span(ambient) modulo span(span), chosen by a greedy left-to-right rank
/// test.
pub fn column_span_complement(span: &ExactMatrix, ambient: &ExactMatrix) -> Vec<usize> {
    assert_eq!(span.nrows(), ambient.nrows(), "ambient space mismatch");
    let mut ech = Echelon::new(ambient.field(), ambient.nrows());
    for c in 0..span.ncols() {
        ech.insert_column(span, c);
    }
    let mut kept = Vec::new();
    for c in 0..ambient.ncols() {
        if ech.insert_column(ambient, c) {
            kept.push(c);
        }
    }
    kept
}

/// A solution X of A X = B, or None when some column of B is outside the
/// column span of A. Free coordinates are set to zero, so the solution is
/// deterministic.
pub fn solve_right(a: &ExactMatrix, b: &ExactMatrix) -> Option<ExactMatrix> {
    assert_eq!(a.nrows(), b.nrows());
    let field = a.field();
    let stacked = ExactMatrix::hstack(field, &[a, b]);
    let (r, pivots) = stacked.rref();
    if pivots.iter().any(|&p| p >= a.ncols()) {
        return None;
    }
    let mut out = ExactMatrix::zero_dense(field, a.ncols(), b.ncols());
    for (t, &p) in pivots.iter().enumerate() {
        for k in 0..b.ncols() {
            let v = r.get(t, a.ncols() + k);
            if !v.is_zero() {
                out.set_entry(p, k, v);
            }
        }
    }
    Some(out)
}

/// Coordinates of each column of `vectors` in the column basis `basis`.
/// Returns None when some column lies outside the span. The columns of
/// `basis` must be linearly independent.
pub fn coords_in_basis(basis: &ExactMatrix, vectors: &ExactMatrix) -> Option<ExactMatrix> {
    assert_eq!(basis.nrows(), vectors.nrows());
    let field = basis.field();
    let stacked = ExactMatrix::hstack(field, &[basis, vectors]);
    let (r, pivots) = stacked.rref();
    if pivots.len() != basis.ncols() || pivots.iter().any(|&p| p >= basis.ncols()) {
        return None;
    }
    let mut out = ExactMatrix::zero_dense(field, basis.ncols(), vectors.ncols());
    for (t, &p) in pivots.iter().enumerate() {
        for k in 0..vectors.ncols() {
            let v = r.get(t, basis.ncols() + k);
            if !v.is_zero() {
                out.set_entry(p, k, v);
            }
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn f2() -> FieldSpec {
        FieldSpec::prime(2).unwrap()
    }

    fn mat(field: FieldSpec, rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_rows(
            field,
            rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect(),
        )
    }

    #[test]
    fn rref_of_invertible_rational_matrix_is_identity() {
        let m = mat(q(), &[&[2, 4], &[1, 3]]);
        let (r, pivots) = m.rref();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(r, ExactMatrix::identity(q(), 2));
    }

    #[test]
    fn rref_is_idempotent() {
        let m = mat(q(), &[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        let (r1, p1) = m.rref();
        let (r2, p2) = r1.rref();
        assert_eq!(r1, r2);
        assert_eq!(p1, p2);
    }

    #[test]
    fn kernel_matches_exhaustive_enumeration_over_gf2() {
        // kernel of [1 1] over GF(2): enumerate all of GF(2)^2
        let m = mat(f2(), &[&[1, 1]]);
        let mut members = Vec::new();
        for a in 0..2i64 {
            for b in 0..2i64 {
                let v = vec![f2().from_i64(a), f2().from_i64(b)];
                if m.apply(&v).iter().all(|s| s.is_zero()) && (a, b) != (0, 0) {
                    members.push((a, b));
                }
            }
        }
        assert_eq!(members, vec![(1, 1)]);
        let (k, free) = m.kernel_basis_profile();
        assert_eq!(free, vec![1]);
        assert_eq!(k.ncols(), 1);
        assert_eq!(k.get(0, 0), Scalar::Fp(1));
        assert_eq!(k.get(1, 0), Scalar::Fp(1));
    }

    #[test]
    fn kernel_vectors_are_killed_by_the_matrix() {
        let m = mat(q(), &[&[1, 2, 3, 1], &[0, 1, 1, 4]]);
        let k = m.kernel_basis();
        assert_eq!(k.ncols(), 2);
        let prod = m.mul(&k);
        assert!(prod.is_zero());
    }

    #[test]
    fn rank_nullity_on_empty_shapes() {
        let m = ExactMatrix::zero(q(), 0, 3);
        assert_eq!(m.rank(), 0);
        assert_eq!(m.kernel_basis().ncols(), 3);
        let m = ExactMatrix::zero(q(), 3, 0);
        assert_eq!(m.rank(), 0);
        assert_eq!(m.kernel_basis().ncols(), 0);
    }

    #[test]
    fn complement_is_greedy_left_to_right() {
        // span = {(1,1)}, ambient = identity: the first ambient column is kept
        let span = mat(f2(), &[&[1], &[1]]);
        let ambient = ExactMatrix::identity(f2(), 2);
        assert_eq!(column_span_complement(&span, &ambient), vec![0]);
    }

    #[test]
    fn coords_recover_linear_combinations() {
        let basis = mat(q(), &[&[1, 0], &[1, 1], &[0, 2]]);
        let v = mat(q(), &[&[3], &[5], &[4]]); // 3*b0 + 2*b1
        let coords = coords_in_basis(&basis, &v).unwrap();
        assert_eq!(coords.get(0, 0), q().from_i64(3));
        assert_eq!(coords.get(1, 0), q().from_i64(2));
        let outside = mat(q(), &[&[1], &[0], &[0]]);
        assert!(coords_in_basis(&basis, &outside).is_none());
    }

    #[test]
    fn solve_right_inverts_surjections() {
        // [1 1 0; 0 1 1] is onto; its section composes back to the identity
        let a = mat(q(), &[&[1, 1, 0], &[0, 1, 1]]);
        let id = ExactMatrix::identity(q(), 2);
        let x = solve_right(&a, &id).unwrap();
        assert_eq!(a.mul(&x), id);
        let unsolvable = mat(q(), &[&[1, 1], &[1, 1]]);
        let target = mat(q(), &[&[1], &[0]]);
        assert!(solve_right(&unsolvable, &target).is_none());
    }

    #[test]
    fn sparse_and_dense_storage_agree() {
        // same logical matrix built sparse and dense
        let field = FieldSpec::prime(5).unwrap();
        let entries = vec![(0, 3, field.from_i64(2)), (2, 1, field.from_i64(4))];
        let sparse = ExactMatrix::from_entries(field, 3, 12, entries.clone());
        let mut dense = ExactMatrix::zero_dense(field, 3, 12);
        for (r, c, s) in entries {
            dense.set_entry(r, c, s);
        }
        assert_eq!(sparse, dense);
        assert_eq!(sparse.rref().0, dense.rref().0);
        assert_eq!(sparse.kernel_basis(), dense.kernel_basis());
        assert_eq!(sparse.rank(), dense.rank());
    }

    #[test]
    fn mul_matches_apply() {
        let a = mat(q(), &[&[1, 2], &[3, 4], &[0, 1]]);
        let b = mat(q(), &[&[5, 6], &[7, 8]]);
        let prod = a.mul(&b);
        for c in 0..2 {
            assert_eq!(prod.column(c), a.apply(&b.column(c)));
        }
    }
}
