//! Finite multiplication tables for graded quotient algebras.
//!
//! An `AlgebraTable` stores, level by level (degree = level * g), an ordered
//! basis of each graded piece and one multiplication matrix per algebra
//! generator. The generators are exactly the basis elements of level 1, and
//! the algebra is required to be generated by them, which makes a right
//! inverse ("section") of the stacked multiplication map available at every
//! level. The section lets multiplication by an arbitrary element of any
//! level be rebuilt recursively from the generator matrices alone; derived
//! tables (Veronese subalgebras, regradings) therefore never need their own
//! presentation.

use super::groebner::{buchberger, GroebnerBasis, RingDesc};
use super::monomial::Monomial;
use super::polynomial::Polynomial;
use crate::error::{Error, Result};
use crate::linalg::{solve_right, ExactMatrix, FieldSpec, Scalar};
use std::collections::HashMap;
use std::sync::{Arc, RwLock};

/// The presented origin of a table, kept for element parsing and for
/// relation checks on modules.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub ring: RingDesc,
    pub gb: GroebnerBasis,
    /// Standard monomial basis per level, sorted descending.
    pub bases: Vec<Vec<Monomial>>,
}

#[derive(Debug)]
pub struct AlgebraTable {
    field: FieldSpec,
    /// Degree of every generator; pieces live at multiples of this.
    gen_degree: i64,
    level_cap: usize,
    dims: Vec<usize>,
    labels: Vec<Vec<String>>,
    /// action[gen][lvl]: piece lvl -> piece lvl+1, for lvl < level_cap.
    action: Vec<Vec<ExactMatrix>>,
    /// sections[lvl-1]: piece lvl -> sum of per-generator copies of piece
    /// lvl-1, a right inverse of the stacked multiplication map.
    sections: Vec<ExactMatrix>,
    presentation: Option<Presentation>,
    mult_cache: RwLock<HashMap<(usize, usize, usize), Arc<ExactMatrix>>>,
}

impl Clone for AlgebraTable {
    fn clone(&self) -> Self {
        AlgebraTable {
            field: self.field,
            gen_degree: self.gen_degree,
            level_cap: self.level_cap,
            dims: self.dims.clone(),
            labels: self.labels.clone(),
            action: self.action.clone(),
            sections: self.sections.clone(),
            presentation: self.presentation.clone(),
            mult_cache: RwLock::new(HashMap::new()),
        }
    }
}

impl AlgebraTable {
    /// Builds the table of k[x_1..x_n]/I up to ring degree `j_cap`.
    pub fn from_ring(ring: &RingDesc, j_cap: i64) -> Result<Self> {
        let g = ring.var_degree;
        let level_cap = (j_cap / g).max(0) as usize;
        let gb = buchberger(ring, level_cap as i64 * g)?;
        let mut bases: Vec<Vec<Monomial>> = Vec::with_capacity(level_cap + 1);
        for l in 0..=level_cap {
            bases.push(gb.standard_monomials(l as u32)?);
        }
        let dims: Vec<usize> = bases.iter().map(|b| b.len()).collect();
        let labels: Vec<Vec<String>> = bases
            .iter()
            .map(|b| b.iter().map(|m| m.format_with(&ring.var_names)).collect())
            .collect();
        let index: Vec<HashMap<&Monomial, usize>> = bases
            .iter()
            .map(|b| b.iter().enumerate().map(|(i, m)| (m, i)).collect())
            .collect();
        let gens = bases[1].clone();
        let mut action: Vec<Vec<ExactMatrix>> = Vec::with_capacity(gens.len());
        for gen in &gens {
            let mut per_level = Vec::with_capacity(level_cap);
            for l in 0..level_cap {
                let mut entries = Vec::new();
                for (col, m) in bases[l].iter().enumerate() {
                    let prod = Polynomial::term(ring.field, gen.mul(m), ring.field.one());
                    let nf = gb.normal_form(&prod)?;
                    for (tm, tc) in nf.terms() {
                        let row = *index[l + 1].get(tm).expect("normal form is standard");
                        entries.push((row, col, tc.clone()));
                    }
                }
                per_level.push(ExactMatrix::from_entries(
                    ring.field,
                    dims[l + 1],
                    dims[l],
                    entries,
                ));
            }
            action.push(per_level);
        }
        let presentation = Presentation { ring: ring.clone(), gb, bases };
        Self::assemble(ring.field, g, dims, labels, action, Some(presentation))
    }

    /// Builds a table from explicit parts; used by the Veronese and
    /// regrading constructions.
    pub fn from_parts(
        field: FieldSpec,
        gen_degree: i64,
        dims: Vec<usize>,
        labels: Vec<Vec<String>>,
        action: Vec<Vec<ExactMatrix>>,
    ) -> Result<Self> {
        Self::assemble(field, gen_degree, dims, labels, action, None)
    }

    fn assemble(
        field: FieldSpec,
        gen_degree: i64,
        dims: Vec<usize>,
        labels: Vec<Vec<String>>,
        action: Vec<Vec<ExactMatrix>>,
        presentation: Option<Presentation>,
    ) -> Result<Self> {
        if gen_degree < 1 {
            return Err(Error::Invalid("generator degree must be at least 1".into()));
        }
        if dims.is_empty() || dims[0] != 1 {
            return Err(Error::Invalid("degree-0 piece must be one-dimensional".into()));
        }
        let level_cap = dims.len() - 1;
        if labels.len() != dims.len() {
            return Err(Error::DimensionMismatch("one label list per level".into()));
        }
        let gens = if level_cap >= 1 { dims[1] } else { 0 };
        if action.len() != gens {
            return Err(Error::DimensionMismatch(format!(
                "expected {gens} generator action tables, found {}",
                action.len()
            )));
        }
        for (v, per_level) in action.iter().enumerate() {
            if per_level.len() != level_cap {
                return Err(Error::DimensionMismatch(format!(
                    "generator {v} must have one matrix per level below the cap"
                )));
            }
            for (l, m) in per_level.iter().enumerate() {
                if m.nrows() != dims[l + 1] || m.ncols() != dims[l] {
                    return Err(Error::DimensionMismatch(format!(
                        "generator {v} matrix at level {l} has shape {}x{}, expected {}x{}",
                        m.nrows(),
                        m.ncols(),
                        dims[l + 1],
                        dims[l]
                    )));
                }
            }
        }
        let mut sections = Vec::with_capacity(level_cap);
        for l in 1..=level_cap {
            let blocks: Vec<&ExactMatrix> = action.iter().map(|per| &per[l - 1]).collect();
            let stacked = if blocks.is_empty() {
                ExactMatrix::zero(field, dims[l], 0)
            } else {
                ExactMatrix::hstack(field, &blocks)
            };
            let section = solve_right(&stacked, &ExactMatrix::identity(field, dims[l]))
                .ok_or_else(|| {
                    Error::Invalid(format!(
                        "piece at level {l} is not spanned by generator multiples"
                    ))
                })?;
            sections.push(section);
        }
        Ok(AlgebraTable {
            field,
            gen_degree,
            level_cap,
            dims,
            labels,
            action,
            sections,
            presentation,
            mult_cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn gen_degree(&self) -> i64 {
        self.gen_degree
    }

    pub fn level_cap(&self) -> usize {
        self.level_cap
    }

    /// Largest ring degree with known data.
    pub fn degree_cap(&self) -> i64 {
        self.level_cap as i64 * self.gen_degree
    }

    pub fn gens(&self) -> usize {
        if self.level_cap >= 1 {
            self.dims[1]
        } else {
            0
        }
    }

    pub fn dim_level(&self, l: usize) -> usize {
        self.dims.get(l).copied().unwrap_or(0)
    }

    /// Dimension of the piece in ring degree j. Degrees off the lattice of
    /// multiples of g are zero; degrees beyond the cap are an error.
    pub fn dim_degree(&self, j: i64) -> Result<usize> {
        if j < 0 || j % self.gen_degree != 0 {
            return Ok(0);
        }
        let l = (j / self.gen_degree) as usize;
        if l > self.level_cap {
            return Err(Error::WindowExceeded(format!(
                "degree {j} beyond the algebra cap {}",
                self.degree_cap()
            )));
        }
        Ok(self.dims[l])
    }

    pub fn label(&self, level: usize, idx: usize) -> &str {
        &self.labels[level][idx]
    }

    pub fn labels_at(&self, level: usize) -> &[String] {
        &self.labels[level]
    }

    pub fn gen_action(&self, gen: usize, level: usize) -> &ExactMatrix {
        &self.action[gen][level]
    }

    pub fn presentation(&self) -> Option<&Presentation> {
        self.presentation.as_ref()
    }

    /// The section at `level` (see the type docs); blocks are ordered
    /// (generator index, inner index).
    pub fn section(&self, level: usize) -> &ExactMatrix {
        &self.sections[level - 1]
    }

    /// Multiplication by the basis element `idx` of level `m`, as a matrix
    /// from level `from` to level `from + m`. Cached.
    pub fn mult_basis(&self, m: usize, idx: usize, from: usize) -> Result<Arc<ExactMatrix>> {
        if from + m > self.level_cap {
            return Err(Error::WindowExceeded(format!(
                "product level {} beyond the algebra cap level {}",
                from + m,
                self.level_cap
            )));
        }
        if m == 0 {
            return Ok(Arc::new(ExactMatrix::identity(self.field, self.dims[from])));
        }
        if m == 1 {
            return Ok(Arc::new(self.action[idx][from].clone()));
        }
        if let Some(hit) = self.mult_cache.read().expect("cache lock").get(&(m, idx, from)) {
            return Ok(hit.clone());
        }
        let section_col = self.sections[m - 1].column(idx);
        let inner = self.dims[m - 1];
        let mut total = ExactMatrix::zero(self.field, self.dims[from + m], self.dims[from]);
        for gen in 0..self.gens() {
            let block = &section_col[gen * inner..(gen + 1) * inner];
            if block.iter().all(|s| s.is_zero()) {
                continue;
            }
            let partial = self.mult_element(block, m - 1, from)?;
            total = total.add(&self.action[gen][from + m - 1].mul(&partial));
        }
        let total = Arc::new(total);
        self.mult_cache
            .write()
            .expect("cache lock")
            .insert((m, idx, from), total.clone());
        Ok(total)
    }

    /// Multiplication by the level-`m` element with the given coordinates.
    pub fn mult_element(&self, coords: &[Scalar], m: usize, from: usize) -> Result<ExactMatrix> {
        if coords.len() != self.dim_level(m) {
            return Err(Error::DimensionMismatch(format!(
                "element of level {m} needs {} coordinates, got {}",
                self.dim_level(m),
                coords.len()
            )));
        }
        let mut total = ExactMatrix::zero(self.field, self.dim_level(from + m), self.dims[from]);
        for (idx, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let basis = self.mult_basis(m, idx, from)?;
            total = total.add(&basis.scale(c));
        }
        Ok(total)
    }

    /// Coordinates of a polynomial's class in the basis of the given level.
    /// The polynomial is reduced to normal form first; a nonzero class of the
    /// wrong level is an error.
    pub fn poly_to_vec(&self, f: &Polynomial, level: usize) -> Result<Vec<Scalar>> {
        let pres = self
            .presentation
            .as_ref()
            .ok_or_else(|| Error::Invalid("algebra has no presentation to parse against".into()))?;
        let nf = pres.gb.normal_form(f)?;
        let mut out = vec![self.field.zero(); self.dim_level(level)];
        for (m, c) in nf.terms() {
            if m.total_exponent() as usize != level {
                return Err(Error::MixedDegrees(format!(
                    "element {} is not concentrated in level {level}",
                    f.format_with(&pres.ring.var_names)
                )));
            }
            let idx = pres.bases[level]
                .iter()
                .position(|b| b == m)
                .expect("normal form is supported on standard monomials");
            out[idx] = c.clone();
        }
        Ok(out)
    }

    /// The same table with all degrees scaled by s (the regrading that sends
    /// the piece in degree j to degree s*j).
    pub fn rescaled(&self, s: i64) -> Result<Self> {
        if s < 1 {
            return Err(Error::Invalid("degree scale must be at least 1".into()));
        }
        let mut out = self.clone();
        out.gen_degree *= s;
        out.presentation = out.presentation.map(|p| Presentation {
            ring: p.ring.rescale(s),
            gb: GroebnerBasis { ring: p.gb.ring.rescale(s), ..p.gb },
            bases: p.bases,
        });
        Ok(out)
    }

    /// Structural identity of tables, used to confirm two modules live over
    /// the same algebra. Pointer-equal tables short-circuit.
    pub fn same_as(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        if Arc::ptr_eq(self, other) {
            return true;
        }
        self.field == other.field
            && self.gen_degree == other.gen_degree
            && self.dims == other.dims
            && self.action == other.action
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2() -> FieldSpec {
        FieldSpec::prime(2).unwrap()
    }

    fn quotient(names: &[&str], gens: &[&str]) -> RingDesc {
        let base = RingDesc::polynomial(gf2(), names);
        let ideal = gens.iter().map(|s| base.parse_element(s).unwrap()).collect();
        RingDesc::new(gf2(), base.var_names.clone(), 1, ideal).unwrap()
    }

    #[test]
    fn hilbert_function_of_coordinate_cross() {
        let a = AlgebraTable::from_ring(&quotient(&["x", "y"], &["x*y"]), 6).unwrap();
        let dims: Vec<usize> = (0..=6).map(|l| a.dim_level(l)).collect();
        assert_eq!(dims, vec![1, 2, 2, 2, 2, 2, 2]);
    }

    #[test]
    fn hilbert_function_of_truncated_line_and_plane() {
        let a = AlgebraTable::from_ring(&quotient(&["x"], &["x^3"]), 6).unwrap();
        assert_eq!((0..=4).map(|l| a.dim_level(l)).collect::<Vec<_>>(), vec![1, 1, 1, 0, 0]);
        let b = AlgebraTable::from_ring(&quotient(&["x", "y"], &[]), 5).unwrap();
        assert_eq!((0..=4).map(|l| b.dim_level(l)).collect::<Vec<_>>(), vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn generator_actions_commute_within_the_window() {
        let a = AlgebraTable::from_ring(&quotient(&["x", "y", "z"], &["x*y", "y*z"]), 5).unwrap();
        for l in 0..a.level_cap() - 1 {
            for u in 0..a.gens() {
                for v in 0..u {
                    let uv = a.gen_action(u, l + 1).mul(a.gen_action(v, l));
                    let vu = a.gen_action(v, l + 1).mul(a.gen_action(u, l));
                    assert_eq!(uv, vu);
                }
            }
        }
    }

    #[test]
    fn sections_are_right_inverses() {
        let a = AlgebraTable::from_ring(&quotient(&["x", "y"], &["x^2"]), 5).unwrap();
        for l in 1..=a.level_cap() {
            let blocks: Vec<&ExactMatrix> = (0..a.gens()).map(|g| a.gen_action(g, l - 1)).collect();
            let stacked = ExactMatrix::hstack(gf2(), &blocks);
            let prod = stacked.mul(a.section(l));
            assert_eq!(prod, ExactMatrix::identity(gf2(), a.dim_level(l)));
        }
    }

    #[test]
    fn element_multiplication_agrees_with_polynomial_arithmetic() {
        let ring = quotient(&["x", "y"], &["x*y"]);
        let a = AlgebraTable::from_ring(&ring, 8).unwrap();
        // (x^2 + y^2) * (x^3) = x^5 in the quotient
        let f = ring.parse_element("x^2 + y^2").unwrap();
        let coords = a.poly_to_vec(&f, 2).unwrap();
        let m = a.mult_element(&coords, 2, 3).unwrap();
        let x3 = a.poly_to_vec(&ring.parse_element("x^3").unwrap(), 3).unwrap();
        let got = m.apply(&x3);
        let want = a.poly_to_vec(&ring.parse_element("x^5").unwrap(), 5).unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn cached_multiplication_matches_direct_normal_forms() {
        let ring = quotient(&["x", "y", "z"], &["x*y", "y*z"]);
        let a = AlgebraTable::from_ring(&ring, 6).unwrap();
        let pres = a.presentation().unwrap();
        for m in 0..=3usize {
            for from in 0..=2usize {
                if m + from > a.level_cap() {
                    continue;
                }
                for idx in 0..a.dim_level(m) {
                    let mat = a.mult_basis(m, idx, from).unwrap();
                    for col in 0..a.dim_level(from) {
                        let prod = Polynomial::term(
                            gf2(),
                            pres.bases[m][idx].mul(&pres.bases[from][col]),
                            gf2().one(),
                        );
                        let want = a.poly_to_vec(&prod, m + from).unwrap();
                        assert_eq!(mat.column(col), want, "basis {idx} of level {m} on column {col}");
                    }
                }
            }
        }
    }

    #[test]
    fn rescaling_moves_the_grading_but_not_the_matrices() {
        let a = AlgebraTable::from_ring(&quotient(&["x", "y"], &["x*y"]), 4).unwrap();
        let b = a.rescaled(2).unwrap();
        assert_eq!(b.gen_degree(), 2);
        assert_eq!(b.degree_cap(), 8);
        assert_eq!(b.dim_degree(2).unwrap(), 2);
        assert_eq!(b.dim_degree(3).unwrap(), 0);
        assert_eq!(a.gen_action(0, 1), b.gen_action(0, 1));
    }
}
