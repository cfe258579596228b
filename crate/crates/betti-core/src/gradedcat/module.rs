//! Graded modules presented degreewise, and degree-homogeneous maps between
//! them.
//!
//! A `ModuleTable` knows its pieces on a window [j_min, j_cap]: degrees below
//! j_min are known to be zero, degrees above j_cap are unknown. The window
//! floats freely under twists, so re-indexing never fails; operations that
//! would need data past j_cap fail loudly instead.

use crate::error::{Error, Result};
use crate::linalg::{column_span_complement, coords_in_basis, ExactMatrix, Scalar};
use crate::polyring::AlgebraTable;
use std::collections::HashMap;
use std::sync::{Arc, RwLock};

#[derive(Debug)]
pub struct ModuleTable {
    algebra: Arc<AlgebraTable>,
    j_min: i64,
    dims: Vec<usize>,
    labels: Vec<Vec<String>>,
    /// action[gen][j - j_min]: M_j -> M_{j+g}; stored for j <= j_cap - g.
    action: Vec<Vec<ExactMatrix>>,
    basis_action_cache: RwLock<HashMap<(usize, usize, i64), Arc<ExactMatrix>>>,
}

impl Clone for ModuleTable {
    fn clone(&self) -> Self {
        ModuleTable {
            algebra: self.algebra.clone(),
            j_min: self.j_min,
            dims: self.dims.clone(),
            labels: self.labels.clone(),
            action: self.action.clone(),
            basis_action_cache: RwLock::new(HashMap::new()),
        }
    }
}

impl ModuleTable {
    pub fn new(
        algebra: Arc<AlgebraTable>,
        j_min: i64,
        dims: Vec<usize>,
        labels: Vec<Vec<String>>,
        action: Vec<Vec<ExactMatrix>>,
    ) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::Invalid("module window must contain at least one degree".into()));
        }
        if labels.len() != dims.len() {
            return Err(Error::DimensionMismatch("one label list per degree".into()));
        }
        for (d, l) in dims.iter().zip(&labels) {
            if l.len() != *d {
                return Err(Error::DimensionMismatch("label count must match dimension".into()));
            }
        }
        let g = algebra.gen_degree() as usize;
        let stored = dims.len().saturating_sub(g);
        if action.len() != algebra.gens() {
            return Err(Error::DimensionMismatch(format!(
                "expected {} generator action tables, found {}",
                algebra.gens(),
                action.len()
            )));
        }
        for per_gen in &action {
            if per_gen.len() != stored {
                return Err(Error::DimensionMismatch(
                    "each generator needs one matrix per in-window degree".into(),
                ));
            }
            for (t, m) in per_gen.iter().enumerate() {
                if m.nrows() != dims[t + g] || m.ncols() != dims[t] {
                    return Err(Error::DimensionMismatch(format!(
                        "action matrix at degree {} has shape {}x{}, expected {}x{}",
                        j_min + t as i64,
                        m.nrows(),
                        m.ncols(),
                        dims[t + g],
                        dims[t]
                    )));
                }
            }
        }
        Ok(ModuleTable {
            algebra,
            j_min,
            dims,
            labels,
            action,
            basis_action_cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn zero(algebra: Arc<AlgebraTable>, j_min: i64, j_cap: i64) -> Self {
        let len = (j_cap - j_min + 1).max(1) as usize;
        let gens = algebra.gens();
        let g = algebra.gen_degree() as usize;
        let field = algebra.field();
        let stored = len.saturating_sub(g);
        ModuleTable {
            algebra,
            j_min,
            dims: vec![0; len],
            labels: vec![Vec::new(); len],
            action: vec![vec![ExactMatrix::zero(field, 0, 0); stored]; gens],
            basis_action_cache: RwLock::new(HashMap::new()),
        }
    }

    /// The free module with one generator per twist: F = sum of A(-t).
    pub fn free(algebra: &Arc<AlgebraTable>, twists: &[i64], j_cap: i64) -> Result<Self> {
        let j_min = twists.iter().copied().min().unwrap_or(0);
        if let Some(&t) = twists.iter().min() {
            if j_cap - t > algebra.degree_cap() {
                return Err(Error::WindowExceeded(format!(
                    "free module needs algebra data to degree {}, cap is {}",
                    j_cap - t,
                    algebra.degree_cap()
                )));
            }
        }
        let field = algebra.field();
        let g = algebra.gen_degree();
        let len = (j_cap - j_min + 1).max(1) as usize;
        let mut dims = Vec::with_capacity(len);
        let mut labels = Vec::with_capacity(len);
        for idx in 0..len {
            let j = j_min + idx as i64;
            let mut dim = 0usize;
            let mut lab = Vec::new();
            for (e, &t) in twists.iter().enumerate() {
                let inner = j - t;
                let d = if inner < 0 { 0 } else { algebra.dim_degree(inner)? };
                if d > 0 {
                    let level = (inner / g) as usize;
                    for b in 0..d {
                        lab.push(format!("e{e}*{}", algebra.label(level, b)));
                    }
                }
                dim += d;
            }
            dims.push(dim);
            labels.push(lab);
        }
        let stored = len.saturating_sub(g as usize);
        let mut action = Vec::with_capacity(algebra.gens());
        for gen in 0..algebra.gens() {
            let mut per = Vec::with_capacity(stored);
            for idx in 0..stored {
                let j = j_min + idx as i64;
                let mut blocks: Vec<ExactMatrix> = Vec::new();
                for &t in twists {
                    let inner = j - t;
                    if inner < 0 || inner % g != 0 {
                        // zero piece maps to a possibly nonzero one: 0-column block
                        let rows = if (j + g - t) >= 0 && (j + g - t) % g == 0 {
                            algebra.dim_degree(j + g - t)?
                        } else {
                            0
                        };
                        blocks.push(ExactMatrix::zero(field, rows, 0));
                    } else {
                        let level = (inner / g) as usize;
                        blocks.push(algebra.gen_action(gen, level).clone());
                    }
                }
                let refs: Vec<&ExactMatrix> = blocks.iter().collect();
                per.push(block_diagonal(field, &refs));
            }
            action.push(per);
        }
        ModuleTable::new(algebra.clone(), j_min, dims, labels, action)
    }

    /// The residue field k, concentrated in degree 0.
    pub fn residue_field(algebra: &Arc<AlgebraTable>) -> Self {
        let j_cap = algebra.degree_cap();
        let field = algebra.field();
        let g = algebra.gen_degree() as usize;
        let len = (j_cap + 1).max(1) as usize;
        let mut dims = vec![0usize; len];
        dims[0] = 1;
        let mut labels = vec![Vec::new(); len];
        labels[0] = vec!["1".to_string()];
        let stored = len.saturating_sub(g);
        let mut action = Vec::new();
        for _ in 0..algebra.gens() {
            let mut per = Vec::with_capacity(stored);
            for t in 0..stored {
                let cols = dims[t];
                let rows = dims[t + g];
                per.push(ExactMatrix::zero(field, rows, cols));
            }
            action.push(per);
        }
        ModuleTable {
            algebra: algebra.clone(),
            j_min: 0,
            dims,
            labels,
            action,
            basis_action_cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn algebra(&self) -> &Arc<AlgebraTable> {
        &self.algebra
    }

    pub fn j_min(&self) -> i64 {
        self.j_min
    }

    pub fn j_cap(&self) -> i64 {
        self.j_min + self.dims.len() as i64 - 1
    }

    /// Dimension when known: degrees below the window are zero, degrees above
    /// it are unknown (None).
    pub fn dim_known(&self, j: i64) -> Option<usize> {
        if j < self.j_min {
            return Some(0);
        }
        if j > self.j_cap() {
            return None;
        }
        Some(self.dims[(j - self.j_min) as usize])
    }

    pub fn dim(&self, j: i64) -> Result<usize> {
        self.dim_known(j).ok_or_else(|| {
            Error::WindowExceeded(format!("degree {j} beyond the module window cap {}", self.j_cap()))
        })
    }

    pub fn labels_at(&self, j: i64) -> &[String] {
        if j < self.j_min || j > self.j_cap() {
            return &[];
        }
        &self.labels[(j - self.j_min) as usize]
    }

    pub fn is_zero_window(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// The generator action M_j -> M_{j+g}. Zero below the window, an error
    /// past the cap.
    pub fn action_at(&self, gen: usize, j: i64) -> Result<ExactMatrix> {
        let g = self.algebra.gen_degree();
        let rows = self.dim(j + g)?;
        let cols = self.dim(j)?;
        if j < self.j_min {
            return Ok(ExactMatrix::zero(self.algebra.field(), rows, cols));
        }
        Ok(self.action[gen][(j - self.j_min) as usize].clone())
    }

    /// Action of the level-m basis element `idx` of the algebra, as a matrix
    /// M_j -> M_{j + m*g}, rebuilt recursively through the algebra sections.
    /// Cached per (m, idx, j).
    pub fn basis_action(&self, m: usize, idx: usize, j: i64) -> Result<Arc<ExactMatrix>> {
        let g = self.algebra.gen_degree();
        let field = self.algebra.field();
        if m == 0 {
            return Ok(Arc::new(ExactMatrix::identity(field, self.dim(j)?)));
        }
        if m == 1 {
            return Ok(Arc::new(self.action_at(idx, j)?));
        }
        if m > self.algebra.level_cap() {
            return Err(Error::WindowExceeded(format!(
                "level-{m} action exceeds the algebra cap level {}",
                self.algebra.level_cap()
            )));
        }
        if let Some(hit) = self.basis_action_cache.read().expect("cache lock").get(&(m, idx, j)) {
            return Ok(hit.clone());
        }
        let section_col = self.algebra.section(m).column(idx);
        let inner = self.algebra.dim_level(m - 1);
        let mut total =
            ExactMatrix::zero(field, self.dim(j + m as i64 * g)?, self.dim(j)?);
        for gen in 0..self.algebra.gens() {
            let block = &section_col[gen * inner..(gen + 1) * inner];
            if block.iter().all(|s| s.is_zero()) {
                continue;
            }
            let partial = self.element_action(block, m - 1, j)?;
            let top = self.action_at(gen, j + (m as i64 - 1) * g)?;
            total = total.add(&top.mul(&partial));
        }
        let total = Arc::new(total);
        self.basis_action_cache
            .write()
            .expect("cache lock")
            .insert((m, idx, j), total.clone());
        Ok(total)
    }

    /// Action of an arbitrary level-m algebra element given by coordinates.
    pub fn element_action(&self, coords: &[Scalar], m: usize, j: i64) -> Result<ExactMatrix> {
        if coords.len() != self.algebra.dim_level(m) {
            return Err(Error::DimensionMismatch(format!(
                "level-{m} element needs {} coordinates, got {}",
                self.algebra.dim_level(m),
                coords.len()
            )));
        }
        let g = self.algebra.gen_degree();
        let field = self.algebra.field();
        let mut total = ExactMatrix::zero(field, self.dim(j + m as i64 * g)?, self.dim(j)?);
        for (idx, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let basis = self.basis_action(m, idx, j)?;
            total = total.add(&basis.scale(c));
        }
        Ok(total)
    }

    /// M(-t): the piece in degree j is the old piece in degree j - t.
    pub fn twist(&self, t: i64) -> ModuleTable {
        let mut out = self.clone();
        out.j_min += t;
        out
    }

    /// Drops knowledge above the new cap (no-op when already smaller).
    pub fn restrict_cap(&self, j_cap: i64) -> ModuleTable {
        if j_cap >= self.j_cap() {
            return self.clone();
        }
        let keep = ((j_cap - self.j_min + 1).max(1)) as usize;
        let g = self.algebra.gen_degree() as usize;
        let mut out = self.clone();
        out.dims.truncate(keep);
        out.labels.truncate(keep);
        for per in &mut out.action {
            per.truncate(keep.saturating_sub(g));
        }
        out
    }

    pub fn direct_sum(parts: &[&ModuleTable]) -> Result<ModuleTable> {
        let Some(first) = parts.first() else {
            return Err(Error::Invalid("direct sum needs at least one summand".into()));
        };
        let algebra = first.algebra.clone();
        for p in parts {
            if !algebra.same_as(&p.algebra) {
                return Err(Error::FieldMismatch);
            }
        }
        let j_min = parts.iter().map(|p| p.j_min).min().expect("nonempty");
        let j_cap = parts.iter().map(|p| p.j_cap()).min().expect("nonempty");
        if j_cap < j_min {
            return Err(Error::WindowExceeded("summand windows do not overlap".into()));
        }
        let field = algebra.field();
        let g = algebra.gen_degree();
        let len = (j_cap - j_min + 1) as usize;
        let mut dims = Vec::with_capacity(len);
        let mut labels = Vec::with_capacity(len);
        for idx in 0..len {
            let j = j_min + idx as i64;
            let mut dim = 0;
            let mut lab = Vec::new();
            for (s, p) in parts.iter().enumerate() {
                let d = p.dim(j)?;
                for b in 0..d {
                    lab.push(format!("{s}:{}", p.labels_at(j).get(b).cloned().unwrap_or_default()));
                }
                dim += d;
            }
            dims.push(dim);
            labels.push(lab);
        }
        let stored = len.saturating_sub(g as usize);
        let mut action = Vec::with_capacity(algebra.gens());
        for gen in 0..algebra.gens() {
            let mut per = Vec::with_capacity(stored);
            for idx in 0..stored {
                let j = j_min + idx as i64;
                let blocks: Vec<ExactMatrix> =
                    parts.iter().map(|p| p.action_at(gen, j)).collect::<Result<_>>()?;
                let refs: Vec<&ExactMatrix> = blocks.iter().collect();
                per.push(block_diagonal(field, &refs));
            }
            action.push(per);
        }
        ModuleTable::new(algebra, j_min, dims, labels, action)
    }

    /// Quotient of a free module by the submodule its `relations` generate.
    /// Each relation is (degree, coordinates in the free piece of that
    /// degree). The quotient basis in each degree is the deterministic
    /// complement of the relation span.
    pub fn quotient_of_free(
        free: &ModuleTable,
        relations: &[(i64, Vec<Scalar>)],
    ) -> Result<ModuleTable> {
        let algebra = free.algebra.clone();
        let field = algebra.field();
        let g = algebra.gen_degree();
        for (d, v) in relations {
            if v.len() != free.dim(*d)? {
                return Err(Error::DimensionMismatch(format!(
                    "relation in degree {d} has {} coordinates, piece has {}",
                    v.len(),
                    free.dim(*d)?
                )));
            }
        }
        let j_min = free.j_min;
        let j_cap = free.j_cap();
        let len = (j_cap - j_min + 1) as usize;
        // per degree: span columns of the relation submodule
        let mut span: Vec<ExactMatrix> = Vec::with_capacity(len);
        for idx in 0..len {
            let j = j_min + idx as i64;
            let mut cols: Vec<ExactMatrix> = Vec::new();
            for (d, v) in relations {
                let lvl = j - d;
                if lvl < 0 || lvl % g != 0 {
                    continue;
                }
                let m = (lvl / g) as usize;
                for b in 0..algebra.dim_level(m) {
                    let act = free.basis_action(m, b, *d)?;
                    let col = act.apply(v);
                    cols.push(ExactMatrix::from_columns(field, free.dim(j)?, vec![col]));
                }
            }
            let dim = free.dim(j)?;
            span.push(if cols.is_empty() {
                ExactMatrix::zero(field, dim, 0)
            } else {
                let refs: Vec<&ExactMatrix> = cols.iter().collect();
                ExactMatrix::hstack(field, &refs)
            });
        }
        // kept representative columns and the projection to them
        let mut kept: Vec<Vec<usize>> = Vec::with_capacity(len);
        let mut proj: Vec<ExactMatrix> = Vec::with_capacity(len);
        for idx in 0..len {
            let j = j_min + idx as i64;
            let dim = free.dim(j)?;
            let ambient = ExactMatrix::identity(field, dim);
            let keep = column_span_complement(&span[idx], &ambient);
            let (_, pivots) = span[idx].rref();
            let span_basis = span[idx].select_columns(&pivots);
            let kept_cols = ambient.select_columns(&keep);
            let basis = ExactMatrix::hstack(field, &[&span_basis, &kept_cols]);
            let coords = coords_in_basis(&basis, &ambient)
                .expect("relation span plus complement spans the piece");
            // bottom block: coefficients on the kept representatives
            let mut p = ExactMatrix::zero_dense(field, keep.len(), dim);
            for r in 0..keep.len() {
                for c in 0..dim {
                    let v = coords.get(span_basis.ncols() + r, c);
                    if !v.is_zero() {
                        p.set_entry(r, c, v);
                    }
                }
            }
            kept.push(keep);
            proj.push(p);
        }
        let dims: Vec<usize> = kept.iter().map(|k| k.len()).collect();
        let labels: Vec<Vec<String>> = kept
            .iter()
            .enumerate()
            .map(|(idx, k)| {
                let j = j_min + idx as i64;
                k.iter().map(|&b| free.labels_at(j).get(b).cloned().unwrap_or_default()).collect()
            })
            .collect();
        let stored = len.saturating_sub(g as usize);
        let mut action = Vec::with_capacity(algebra.gens());
        for gen in 0..algebra.gens() {
            let mut per = Vec::with_capacity(stored);
            for idx in 0..stored {
                let j = j_min + idx as i64;
                let f_act = free.action_at(gen, j)?;
                let emb = embed_columns(field, free.dim(j)?, &kept[idx]);
                let target = (idx as i64 + g) as usize;
                per.push(proj[target].mul(&f_act).mul(&emb));
            }
            action.push(per);
        }
        ModuleTable::new(algebra, j_min, dims, labels, action)
    }

    /// Checks pairwise commutation of the generator actions and, when the
    /// algebra is presented, that every ideal generator acts as zero.
    pub fn validate(&self) -> Result<()> {
        let g = self.algebra.gen_degree();
        let gens = self.algebra.gens();
        for j in self.j_min..=(self.j_cap() - 2 * g) {
            for u in 0..gens {
                for v in 0..u {
                    let uv = self.action_at(u, j + g)?.mul(&self.action_at(v, j)?);
                    let vu = self.action_at(v, j + g)?.mul(&self.action_at(u, j)?);
                    if uv != vu {
                        return Err(Error::NotWellDefined(format!(
                            "generator actions {u} and {v} do not commute at degree {j}"
                        )));
                    }
                }
            }
        }
        if let Some(pres) = self.algebra.presentation() {
            let names = &pres.ring.var_names;
            // classes of the presentation variables inside the level-1 basis
            let var_coords: Vec<Vec<Scalar>> = (0..names.len())
                .map(|i| {
                    let v = crate::polyring::Polynomial::variable(
                        self.algebra.field(),
                        names.len(),
                        i,
                    );
                    self.algebra.poly_to_vec(&v, 1)
                })
                .collect::<Result<_>>()?;
            for rel in &pres.ring.ideal {
                let e = rel.homogeneous_exponent().expect("presentation ideals are homogeneous")
                    as i64;
                for j in self.j_min..=(self.j_cap() - e * g) {
                    let mut total = ExactMatrix::zero(
                        self.algebra.field(),
                        self.dim(j + e * g)?,
                        self.dim(j)?,
                    );
                    for (mono, c) in rel.terms() {
                        let mut factor =
                            ExactMatrix::identity(self.algebra.field(), self.dim(j)?);
                        let mut at = j;
                        for (i, &exp) in mono.exps().iter().enumerate() {
                            for _ in 0..exp {
                                let step = self.element_action(&var_coords[i], 1, at)?;
                                factor = step.mul(&factor);
                                at += g;
                            }
                        }
                        total = total.add(&factor.scale(c));
                    }
                    if !total.is_zero() {
                        return Err(Error::NotWellDefined(format!(
                            "relation {} does not annihilate the module at degree {j}",
                            rel.format_with(names)
                        )));
                    }
                }
            }
        } else if self.algebra.level_cap() >= 2 {
            // without a presentation, at least the quadratic relations among
            // generators must act as zero
            let field = self.algebra.field();
            let blocks: Vec<&ExactMatrix> =
                (0..gens).map(|gen| self.algebra.gen_action(gen, 1)).collect();
            if !blocks.is_empty() {
                let stacked = ExactMatrix::hstack(field, &blocks);
                let kernel = stacked.kernel_basis();
                let inner = self.algebra.dim_level(1);
                for kcol in 0..kernel.ncols() {
                    let col = kernel.column(kcol);
                    for j in self.j_min..=(self.j_cap() - 2 * g) {
                        let mut total =
                            ExactMatrix::zero(field, self.dim(j + 2 * g)?, self.dim(j)?);
                        for gen in 0..gens {
                            let block = &col[gen * inner..(gen + 1) * inner];
                            if block.iter().all(|s| s.is_zero()) {
                                continue;
                            }
                            let partial = self.element_action(block, 1, j)?;
                            total = total.add(&self.action_at(gen, j + g)?.mul(&partial));
                        }
                        if !total.is_zero() {
                            return Err(Error::NotWellDefined(format!(
                                "a quadratic relation of the algebra acts nontrivially at degree {j}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Columns of the identity selected by index: the embedding of chosen
/// representatives back into the ambient piece.
fn embed_columns(field: crate::linalg::FieldSpec, dim: usize, keep: &[usize]) -> ExactMatrix {
    let entries: Vec<(usize, usize, Scalar)> =
        keep.iter().enumerate().map(|(c, &r)| (r, c, field.one())).collect();
    ExactMatrix::from_entries(field, dim, keep.len(), entries)
}

/// Block-diagonal assembly.
pub fn block_diagonal(field: crate::linalg::FieldSpec, blocks: &[&ExactMatrix]) -> ExactMatrix {
    let rows: usize = blocks.iter().map(|b| b.nrows()).sum();
    let cols: usize = blocks.iter().map(|b| b.ncols()).sum();
    let mut entries = Vec::new();
    let (mut ro, mut co) = (0usize, 0usize);
    for b in blocks {
        for (r, c, s) in b.entries() {
            entries.push((r + ro, c + co, s));
        }
        ro += b.nrows();
        co += b.ncols();
    }
    ExactMatrix::from_entries(field, rows, cols, entries)
}

/// A degree-homogeneous linear map M -> N raising degrees by `shift`:
/// matrices M_j -> N_{j+shift} for j in the stored domain window.
#[derive(Clone, Debug)]
pub struct GradedMap {
    shift: i64,
    j_min: i64,
    mats: Vec<ExactMatrix>,
}

impl GradedMap {
    pub fn new(shift: i64, j_min: i64, mats: Vec<ExactMatrix>) -> Self {
        GradedMap { shift, j_min, mats }
    }

    /// The zero map between two modules, on the largest sound domain window.
    pub fn zero(src: &ModuleTable, tgt: &ModuleTable, shift: i64) -> Result<Self> {
        let field = src.algebra().field();
        let j_min = src.j_min();
        let j_cap = src.j_cap().min(tgt.j_cap() - shift);
        let mut mats = Vec::new();
        for j in j_min..=j_cap {
            mats.push(ExactMatrix::zero(field, tgt.dim(j + shift)?, src.dim(j)?));
        }
        Ok(GradedMap { shift, j_min, mats })
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn j_min(&self) -> i64 {
        self.j_min
    }

    pub fn j_cap(&self) -> i64 {
        self.j_min + self.mats.len() as i64 - 1
    }

    pub fn matrix_at(&self, j: i64) -> Option<&ExactMatrix> {
        if j < self.j_min || j > self.j_cap() {
            return None;
        }
        Some(&self.mats[(j - self.j_min) as usize])
    }

    /// Re-reads the map after twisting source and target by t.
    pub fn twist(&self, t: i64) -> GradedMap {
        GradedMap { shift: self.shift, j_min: self.j_min + t, mats: self.mats.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.mats.iter().all(|m| m.is_zero())
    }

    /// Whether the map commutes with every generator action wherever all four
    /// composites are in the stored windows.
    pub fn commutes_with_action(&self, src: &ModuleTable, tgt: &ModuleTable) -> Result<bool> {
        let g = src.algebra().gen_degree();
        for gen in 0..src.algebra().gens() {
            for j in self.j_min..=self.j_cap() - g {
                let Some(f_j) = self.matrix_at(j) else { continue };
                let Some(f_jg) = self.matrix_at(j + g) else { continue };
                if j + g > src.j_cap() || j + self.shift + g > tgt.j_cap() {
                    continue;
                }
                let lhs = tgt.action_at(gen, j + self.shift)?.mul(f_j);
                let rhs = f_jg.mul(&src.action_at(gen, j)?);
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::FieldSpec;
    use crate::polyring::RingDesc;

    fn cross_algebra() -> Arc<AlgebraTable> {
        let base = RingDesc::polynomial(FieldSpec::prime(2).unwrap(), &["x", "y"]);
        let ideal = vec![base.parse_element("x*y").unwrap()];
        let ring =
            RingDesc::new(base.field, base.var_names.clone(), 1, ideal).unwrap();
        Arc::new(AlgebraTable::from_ring(&ring, 8).unwrap())
    }

    #[test]
    fn free_module_dims_follow_twists() {
        let a = cross_algebra();
        let f = ModuleTable::free(&a, &[0, 1], 5).unwrap();
        // A + A(-1): dims 1, 2+1, 2+2, ...
        let dims: Vec<usize> = (0..=5).map(|j| f.dim(j).unwrap()).collect();
        assert_eq!(dims, vec![1, 3, 4, 4, 4, 4]);
        assert_eq!(f.dim_known(-1), Some(0));
        assert_eq!(f.dim_known(6), None);
        f.validate().unwrap();
    }

    #[test]
    fn twisting_relabels_degrees_without_touching_matrices() {
        let a = cross_algebra();
        let f = ModuleTable::free(&a, &[0], 6).unwrap();
        let t = f.twist(3);
        assert_eq!(t.dim(3).unwrap(), 1);
        assert_eq!(t.dim(4).unwrap(), 2);
        assert_eq!(t.j_cap(), 9);
        assert_eq!(f.action_at(0, 1).unwrap(), t.action_at(0, 4).unwrap());
        assert_eq!(f.twist(0).dim(0).unwrap(), 1);
    }

    #[test]
    fn residue_field_is_annihilated_by_generators() {
        let a = cross_algebra();
        let k = ModuleTable::residue_field(&a);
        assert_eq!(k.dim(0).unwrap(), 1);
        assert_eq!(k.dim(1).unwrap(), 0);
        assert!(k.action_at(0, 0).unwrap().is_zero());
        k.validate().unwrap();
    }

    #[test]
    fn quotient_by_one_variable_gives_the_line() {
        let a = cross_algebra();
        let f = ModuleTable::free(&a, &[0], 6).unwrap();
        // kill y: R/(y) has dims 1,1,1,... and x acts as the shift
        let y = vec![a.field().zero(), a.field().one()];
        let m = ModuleTable::quotient_of_free(&f, &[(1, y)]).unwrap();
        let dims: Vec<usize> = (0..=6).map(|j| m.dim(j).unwrap()).collect();
        assert_eq!(dims, vec![1, 1, 1, 1, 1, 1, 1]);
        m.validate().unwrap();
        // x action is an isomorphism in each degree, y action is zero
        assert_eq!(m.action_at(0, 2).unwrap(), ExactMatrix::identity(a.field(), 1));
        assert!(m.action_at(1, 2).unwrap().is_zero());
    }

    #[test]
    fn element_action_matches_iterated_generators() {
        let a = cross_algebra();
        let f = ModuleTable::free(&a, &[0], 8).unwrap();
        // x^2 as a level-2 element
        let pres = a.presentation().unwrap();
        let x2 = a
            .poly_to_vec(&pres.ring.parse_element("x^2").unwrap(), 2)
            .unwrap();
        let via_element = f.element_action(&x2, 2, 1).unwrap();
        let via_steps = f.action_at(0, 2).unwrap().mul(&f.action_at(0, 1).unwrap());
        assert_eq!(via_element, via_steps);
    }

    #[test]
    fn direct_sum_orders_blocks_by_summand() {
        let a = cross_algebra();
        let f = ModuleTable::free(&a, &[0], 5).unwrap();
        let k = ModuleTable::residue_field(&a);
        let s = ModuleTable::direct_sum(&[&k, &f]).unwrap();
        assert_eq!(s.dim(0).unwrap(), 2);
        assert_eq!(s.dim(1).unwrap(), 2);
        assert!(s.labels_at(0)[0].starts_with("0:"));
        assert!(s.labels_at(0)[1].starts_with("1:"));
        s.validate().unwrap();
    }

    #[test]
    fn validation_rejects_broken_relations() {
        let a = cross_algebra();
        let f = ModuleTable::free(&a, &[0], 6).unwrap();
        // corrupt the y action on R so that x*y no longer acts as zero
        let mut bad = f.clone();
        bad.action[1][1] = ExactMatrix::identity(a.field(), 2);
        assert!(bad.validate().is_err());
    }
}
