//! Resolution data and the invariants read off it: Betti tables, windowed
//! regularity, Poincare series windows.

use crate::error::{Error, Result};
use crate::gradedcat::{ComplexTable, GradedMap, ModuleTable};
use crate::linalg::ExactMatrix;
use crate::polyring::AlgebraTable;
use num_bigint::BigInt;
use num_rational::BigRational;
use std::collections::BTreeMap;
use std::sync::Arc;

/// A window of a minimal (semi-)free resolution: generator degrees per
/// homological index, plus the images of the new generators, from which the
/// differentials can be rebuilt on demand.
#[derive(Clone, Debug)]
pub struct ResolutionWindow {
    pub(crate) algebra: Arc<AlgebraTable>,
    pub(crate) i_min: i64,
    pub(crate) i_max: i64,
    pub(crate) j_max: i64,
    /// gens[t]: ascending generator degrees of the term at index i_min + t.
    pub(crate) gens: Vec<Vec<i64>>,
    /// rep_cols[t][j]: columns are the differential images of the new
    /// generators of degree j, written in the degree-j piece of the previous
    /// term (for t = 0 this is the augmentation into the resolved object).
    pub(crate) rep_cols: Vec<BTreeMap<i64, ExactMatrix>>,
    /// For resolutions of complexes: augmentation components per index.
    pub(crate) eps_cols: Vec<BTreeMap<i64, ExactMatrix>>,
    /// First index whose term came out empty with a fully swept kernel.
    pub(crate) exhausted_at: Option<i64>,
    pub(crate) certified: bool,
}

impl ResolutionWindow {
    pub fn algebra(&self) -> &Arc<AlgebraTable> {
        &self.algebra
    }

    pub fn i_min(&self) -> i64 {
        self.i_min
    }

    pub fn i_max(&self) -> i64 {
        self.i_max
    }

    pub fn j_max(&self) -> i64 {
        self.j_max
    }

    pub fn generator_degrees(&self, i: i64) -> &[i64] {
        if i < self.i_min || i > self.i_max {
            return &[];
        }
        match self.gens.get((i - self.i_min) as usize) {
            Some(v) => v,
            None => &[],
        }
    }

    /// Images of the generators first appearing at (i, j), as columns in the
    /// degree-j piece of the term at i - 1 (the resolved object for the
    /// lowest index).
    pub fn new_generator_images(&self, i: i64, j: i64) -> Option<&ExactMatrix> {
        self.rep_cols.get((i - self.i_min) as usize)?.get(&j)
    }

    pub fn augmentation_images(&self, i: i64, j: i64) -> Option<&ExactMatrix> {
        self.eps_cols.get((i - self.i_min) as usize)?.get(&j)
    }

    pub fn exhausted_at(&self) -> Option<i64> {
        self.exhausted_at
    }

    pub fn termination_certified(&self) -> bool {
        self.certified
    }

    /// The largest homological index whose homological data is complete:
    /// everything through i_max when the resolution terminated inside the
    /// window, one step less otherwise.
    pub fn sound_i_max(&self) -> i64 {
        if self.exhausted_at.is_some() {
            self.i_max
        } else {
            self.i_max - 1
        }
    }

    /// The term at index i as a free module table over the window.
    pub fn free_module(&self, i: i64) -> Result<ModuleTable> {
        let twists = self.generator_degrees(i);
        ModuleTable::free(&self.algebra, twists, self.j_max)
    }

    /// Splits a vector in the degree-j piece of the term at i into one block
    /// of algebra coordinates per generator, level inferred from the twist.
    pub fn block_coords<'a>(
        &self,
        i: i64,
        j: i64,
        column: &'a [crate::linalg::Scalar],
    ) -> Result<Vec<(usize, &'a [crate::linalg::Scalar])>> {
        let g = self.algebra.gen_degree();
        let mut out = Vec::new();
        let mut offset = 0usize;
        for &t in self.generator_degrees(i) {
            let inner = j - t;
            let d = if inner < 0 { 0 } else { self.algebra.dim_degree(inner)? };
            let level = if d > 0 { (inner / g) as usize } else { 0 };
            out.push((level, &column[offset..offset + d]));
            offset += d;
        }
        if offset != column.len() {
            return Err(Error::DimensionMismatch(format!(
                "column of length {} does not fill the degree-{j} piece ({offset})",
                column.len()
            )));
        }
        Ok(out)
    }

    /// Materializes the differential leaving index i on the whole window.
    pub fn differential(&self, i: i64) -> Result<GradedMap> {
        let field = self.algebra.field();
        let target = self.free_module(i - 1)?;
        let mats = (target.j_min().min(self.lowest_gen_degree(i)))
            .min(0)
            .max(i64::MIN);
        let _ = mats;
        let j_min = self
            .generator_degrees(i)
            .first()
            .copied()
            .unwrap_or(0)
            .min(target.j_min());
        let mut out = Vec::new();
        for j in j_min..=self.j_max {
            out.push(self.differential_matrix_inner(i, j, &target, field)?);
        }
        Ok(GradedMap::new(0, j_min, out))
    }

    fn lowest_gen_degree(&self, i: i64) -> i64 {
        self.generator_degrees(i).first().copied().unwrap_or(0)
    }

    /// The matrix of the differential at (i, j): one block column per
    /// generator of the term at i, assembled from the stored images by
    /// multiplying with the algebra basis of the complementary level.
    pub fn differential_matrix(&self, i: i64, j: i64) -> Result<ExactMatrix> {
        let target = self.free_module(i - 1)?;
        self.differential_matrix_inner(i, j, &target, self.algebra.field())
    }

    fn differential_matrix_inner(
        &self,
        i: i64,
        j: i64,
        target: &ModuleTable,
        field: crate::linalg::FieldSpec,
    ) -> Result<ExactMatrix> {
        let g = self.algebra.gen_degree();
        let rows = target.dim(j)?;
        let mut blocks: Vec<ExactMatrix> = Vec::new();
        let degrees = self.generator_degrees(i);
        let mut s = 0usize;
        while s < degrees.len() {
            let t = degrees[s];
            let run = degrees[s..].iter().take_while(|&&d| d == t).count();
            let inner = j - t;
            let level = if inner < 0 || inner % g != 0 { None } else { Some((inner / g) as usize) };
            match level {
                Some(l) if inner >= 0 && self.algebra.dim_degree(inner)? > 0 => {
                    let reps = self
                        .rep_cols
                        .get((i - self.i_min) as usize)
                        .and_then(|m| m.get(&t))
                        .ok_or_else(|| {
                            Error::Invalid(format!("missing generator images at ({i}, {t})"))
                        })?;
                    for k in 0..run {
                        let v = reps.column(s_offset(degrees, s) + k);
                        let cols = mult_columns(target, &v, t, l)?;
                        blocks.push(cols);
                    }
                }
                _ => {
                    blocks.push(ExactMatrix::zero(field, rows, 0));
                }
            }
            s += run;
        }
        if blocks.is_empty() {
            return Ok(ExactMatrix::zero(field, rows, 0));
        }
        let refs: Vec<&ExactMatrix> = blocks.iter().collect();
        Ok(ExactMatrix::hstack(field, &refs))
    }

    /// The resolution as a complex of free modules on indices
    /// i_min ..= last computed index. Homological data above `sound_i_max`
    /// is not exact unless the resolution terminated.
    pub fn as_complex(&self) -> Result<ComplexTable> {
        let top = self.i_min + self.gens.len() as i64 - 1;
        let mut modules = Vec::new();
        for i in self.i_min..=top {
            modules.push(self.free_module(i)?);
        }
        let mut diffs = Vec::new();
        for i in (self.i_min + 1)..=top {
            let target = &modules[(i - 1 - self.i_min) as usize];
            let src = &modules[(i - self.i_min) as usize];
            let j_min = src.j_min().max(target.j_min());
            let mut mats = Vec::new();
            for j in j_min..=self.j_max {
                mats.push(self.differential_matrix_inner(i, j, target, self.algebra.field())?);
            }
            diffs.push(GradedMap::new(0, j_min, mats));
        }
        ComplexTable::new(self.i_min, modules, diffs)
    }
}

fn s_offset(degrees: &[i64], s: usize) -> usize {
    // position of generator s among those with the same degree
    let t = degrees[s];
    s - degrees[..s].iter().filter(|&&d| d == t).count() - degrees[..s].iter().filter(|&&d| d != t).count()
        + degrees[..s].iter().filter(|&&d| d == t).count()
}

/// Columns b -> b*v over the level-l basis of the algebra: the target piece
/// at degree t + l*g, assembled by the section recursion.
pub(crate) fn mult_columns(
    target: &ModuleTable,
    v: &[crate::linalg::Scalar],
    t: i64,
    l: usize,
) -> Result<ExactMatrix> {
    let algebra = target.algebra();
    let field = algebra.field();
    if l == 0 {
        return Ok(ExactMatrix::from_columns(field, target.dim(t)?, vec![v.to_vec()]));
    }
    let g = algebra.gen_degree();
    let prev = mult_columns(target, v, t, l - 1)?;
    let section = algebra.section(l);
    let inner = algebra.dim_level(l - 1);
    let mut total = ExactMatrix::zero(field, target.dim(t + l as i64 * g)?, algebra.dim_level(l));
    for gen in 0..algebra.gens() {
        let mut slice = ExactMatrix::zero_dense(field, inner, section.ncols());
        let mut nonzero = false;
        for r in 0..inner {
            for c in 0..section.ncols() {
                let s = section.get(gen * inner + r, c);
                if !s.is_zero() {
                    slice.set_entry(r, c, s);
                    nonzero = true;
                }
            }
        }
        if !nonzero {
            continue;
        }
        let act = target.action_at(gen, t + (l as i64 - 1) * g)?;
        total = total.add(&act.mul(&prev).mul(&slice));
    }
    Ok(total)
}

/// Exact graded Betti numbers on a window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub i_min: i64,
    pub i_max: i64,
    pub j_max: i64,
    entries: BTreeMap<(i64, i64), u64>,
}

impl BettiTable {
    pub fn new(i_min: i64, i_max: i64, j_max: i64) -> Self {
        BettiTable { i_min, i_max, j_max, entries: BTreeMap::new() }
    }

    pub fn set(&mut self, i: i64, j: i64, v: u64) {
        if v > 0 {
            self.entries.insert((i, j), v);
        } else {
            self.entries.remove(&(i, j));
        }
    }

    pub fn entry(&self, i: i64, j: i64) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = ((i64, i64), u64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// t_i: the largest degree with a nonzero entry in column i.
    pub fn top_degree(&self, i: i64) -> Option<i64> {
        self.entries
            .iter()
            .filter(|((a, _), _)| *a == i)
            .map(|((_, j), _)| *j)
            .max()
    }

    /// The restriction to smaller caps.
    pub fn truncated(&self, i_max: i64, j_max: i64) -> BettiTable {
        let mut out = BettiTable::new(self.i_min, i_max.min(self.i_max), j_max.min(self.j_max));
        for ((i, j), v) in self.entries() {
            if i <= out.i_max && j <= out.j_max {
                out.set(i, j, v);
            }
        }
        out
    }
}

/// Reads the Betti table off a resolution window.
pub fn betti_table(r: &ResolutionWindow) -> BettiTable {
    let mut b = BettiTable::new(r.i_min, r.i_max, r.j_max);
    for (t, degs) in r.gens.iter().enumerate() {
        let i = r.i_min + t as i64;
        for &j in degs {
            let cur = b.entry(i, j);
            b.set(i, j, cur + 1);
        }
    }
    b
}

/// Windowed regularity verdict. `value` is None for an empty table (the
/// zero module), read as minus infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityVerdict {
    pub value: Option<BigRational>,
    pub boundary_attained_i: bool,
    pub boundary_attained_j: bool,
    pub termination_certified: bool,
}

impl RegularityVerdict {
    pub fn boundary_attained(&self) -> bool {
        self.boundary_attained_i || self.boundary_attained_j
    }

    /// The value is trustworthy beyond the window: finite, certified, and
    /// not sitting on the window boundary.
    pub fn is_certified(&self) -> bool {
        self.termination_certified
    }
}

/// The regularity of a Betti table over a grading unit: the maximum of
/// (j - i*gd)/gd over nonzero entries, as an exact rational.
pub fn regularity(b: &BettiTable, gd: i64, termination_certified: bool) -> RegularityVerdict {
    assert!(gd >= 1, "grading unit must be positive");
    let mut best: Option<BigRational> = None;
    for ((i, j), v) in b.entries() {
        if v == 0 {
            continue;
        }
        let r = BigRational::new(BigInt::from(j - i * gd), BigInt::from(gd));
        if best.as_ref().map_or(true, |cur| r > *cur) {
            best = Some(r);
        }
    }
    let mut at_i = false;
    let mut at_j = false;
    if let Some(ref top) = best {
        for ((i, j), v) in b.entries() {
            if v == 0 {
                continue;
            }
            let r = BigRational::new(BigInt::from(j - i * gd), BigInt::from(gd));
            if r == *top {
                at_i |= i == b.i_max;
                at_j |= j == b.j_max;
            }
        }
    }
    RegularityVerdict {
        value: best,
        boundary_attained_i: at_i,
        boundary_attained_j: at_j,
        termination_certified,
    }
}

/// A truncated bivariate Poincare polynomial: coefficient of t^i y^j is
/// the Betti number at (i, j).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoincareWindow {
    pub i_cap: i64,
    pub j_cap: i64,
    coeffs: BTreeMap<(i64, i64), u64>,
}

impl PoincareWindow {
    pub fn new(i_cap: i64, j_cap: i64) -> Self {
        PoincareWindow { i_cap, j_cap, coeffs: BTreeMap::new() }
    }

    pub fn from_betti(b: &BettiTable) -> Self {
        let mut p = PoincareWindow::new(b.i_max, b.j_max);
        for ((i, j), v) in b.entries() {
            p.add_term(i, j, v);
        }
        p
    }

    pub fn add_term(&mut self, i: i64, j: i64, v: u64) {
        if i > self.i_cap || j > self.j_cap || v == 0 {
            return;
        }
        *self.coeffs.entry((i, j)).or_insert(0) += v;
    }

    pub fn coeff(&self, i: i64, j: i64) -> u64 {
        self.coeffs.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), u64)> + '_ {
        self.coeffs.iter().map(|(&k, &v)| (k, v))
    }

    /// Truncated product: coefficients beyond either cap are dropped.
    pub fn mul_truncated(&self, rhs: &PoincareWindow) -> PoincareWindow {
        let mut out = PoincareWindow::new(self.i_cap.min(rhs.i_cap), self.j_cap.min(rhs.j_cap));
        for ((i1, j1), v1) in self.terms() {
            for ((i2, j2), v2) in rhs.terms() {
                out.add_term(i1 + i2, j1 + j2, v1 * v2);
            }
        }
        out
    }

    /// 1 + t*y^w, the factor a single padding element contributes.
    pub fn pad_factor(w: i64, i_cap: i64, j_cap: i64) -> PoincareWindow {
        let mut p = PoincareWindow::new(i_cap, j_cap);
        p.add_term(0, 0, 1);
        p.add_term(1, w, 1);
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(entries: &[(i64, i64, u64)], i_max: i64, j_max: i64) -> BettiTable {
        let mut b = BettiTable::new(0, i_max, j_max);
        for &(i, j, v) in entries {
            b.set(i, j, v);
        }
        b
    }

    #[test]
    fn regularity_takes_the_max_strand() {
        let b = table(&[(0, 0, 1), (1, 1, 2), (2, 3, 1)], 4, 8);
        let v = regularity(&b, 1, false);
        assert_eq!(v.value, Some(BigRational::from(BigInt::from(1))));
        assert!(!v.boundary_attained());
    }

    #[test]
    fn regularity_of_empty_table_is_minus_infinity() {
        let b = table(&[], 4, 8);
        let v = regularity(&b, 1, true);
        assert_eq!(v.value, None);
        assert!(v.termination_certified);
    }

    #[test]
    fn boundary_flags_follow_the_attaining_entries() {
        // periodic diagonal: value 0, attained at i = i_max but not j = j_max
        let b = table(&[(0, 0, 1), (1, 1, 2), (2, 2, 2), (3, 3, 2), (4, 4, 2)], 4, 8);
        let v = regularity(&b, 1, false);
        assert_eq!(v.value, Some(BigRational::from(BigInt::from(0))));
        assert!(v.boundary_attained_i);
        assert!(!v.boundary_attained_j);
    }

    #[test]
    fn fractional_grading_units_divide() {
        let b = table(&[(0, 0, 1), (1, 3, 1)], 4, 8);
        let v = regularity(&b, 2, false);
        // (3 - 2)/2 = 1/2
        assert_eq!(v.value, Some(BigRational::new(BigInt::from(1), BigInt::from(2))));
    }

    #[test]
    fn poincare_convolution_matches_padding() {
        let b = table(&[(0, 0, 1), (1, 2, 1)], 4, 8);
        let p = PoincareWindow::from_betti(&b);
        let padded = p.mul_truncated(&PoincareWindow::pad_factor(2, 4, 8));
        assert_eq!(padded.coeff(0, 0), 1);
        assert_eq!(padded.coeff(1, 2), 2);
        assert_eq!(padded.coeff(2, 4), 1);
    }

    #[test]
    fn betti_truncation_drops_out_of_window_entries() {
        let b = table(&[(0, 0, 1), (3, 7, 2)], 4, 8);
        let t = b.truncated(2, 8);
        assert_eq!(t.entry(3, 7), 0);
        assert_eq!(t.entry(0, 0), 1);
        assert_eq!(b.top_degree(3), Some(7));
    }
}
