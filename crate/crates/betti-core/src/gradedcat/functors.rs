//! Degree-scaling functors: Veronese subalgebras and pieces, fractional
//! Veronese regrading, and pushforward along a degree-scaling map.
//!
//! The common engine is the pushforward: a map that multiplies degrees by d
//! turns a module downstairs into d interleaved "pieces" upstairs, one per
//! residue of the internal degree mod d. Veronese pieces are the special
//! case of the subalgebra inclusion.

use crate::error::{Error, Result};
use crate::gradedcat::complex::{ComplexTable, HomologyPiece};
use crate::gradedcat::module::{block_diagonal, GradedMap, ModuleTable};
use crate::linalg::{ExactMatrix, Scalar};
use crate::polyring::AlgebraTable;
use num_integer::Integer;
use std::sync::Arc;

/// The d-th Veronese subalgebra: the piece at new degree j is the old piece
/// at degree d*j, regraded so that the generators sit in degree
/// g/gcd(d, g).
pub fn veronese_algebra(a: &AlgebraTable, d: i64) -> Result<AlgebraTable> {
    if d < 1 {
        return Err(Error::Invalid(format!("Veronese order must be positive, got {d}")));
    }
    let g = a.gen_degree();
    let gamma = d.gcd(&g);
    let stride = (d / gamma) as usize;
    let new_gen_degree = g / gamma;
    let level_cap = a.level_cap() / stride;
    let mut dims = Vec::with_capacity(level_cap + 1);
    let mut labels = Vec::with_capacity(level_cap + 1);
    for l in 0..=level_cap {
        dims.push(a.dim_level(l * stride));
        labels.push(a.labels_at(l * stride).to_vec());
    }
    let gens = if level_cap >= 1 { dims[1] } else { 0 };
    let mut action = Vec::with_capacity(gens);
    for gen in 0..gens {
        let mut per = Vec::with_capacity(level_cap.saturating_sub(1) + 1);
        for l in 0..level_cap {
            per.push(a.mult_basis(stride, gen, l * stride)?.as_ref().clone());
        }
        action.push(per);
    }
    AlgebraTable::from_parts(a.field(), new_gen_degree, dims, labels, action)
}

/// A module pushed forward along a map that multiplies internal degrees by
/// d: the summands indexed by the degree residue mod d, each a module over
/// the upstairs algebra.
#[derive(Clone, Debug)]
pub struct Pushforward {
    pieces: Vec<ModuleTable>,
}

impl Pushforward {
    pub fn order(&self) -> usize {
        self.pieces.len()
    }

    pub fn piece(&self, i: i64) -> Result<&ModuleTable> {
        if i < 0 || i >= self.pieces.len() as i64 {
            return Err(Error::BadPieceIndex { index: i, order: self.pieces.len() as i64 });
        }
        Ok(&self.pieces[i as usize])
    }

    pub fn pieces(&self) -> &[ModuleTable] {
        &self.pieces
    }

    /// The whole pushforward as one module: blocks ordered by piece index.
    pub fn total(&self) -> Result<ModuleTable> {
        let refs: Vec<&ModuleTable> = self.pieces.iter().collect();
        ModuleTable::direct_sum(&refs)
    }
}

fn ceil_div(a: i64, d: i64) -> i64 {
    (a + d - 1).div_euclid(d)
}

/// Checks the shape data of a degree-scaling map and returns the level of
/// the generator images downstairs.
fn image_level(
    m: &ModuleTable,
    source: &Arc<AlgebraTable>,
    images: &[Vec<Scalar>],
    d: i64,
) -> Result<usize> {
    if d < 1 {
        return Err(Error::Invalid(format!("scaling order must be positive, got {d}")));
    }
    let b = m.algebra();
    if source.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    if images.len() != source.gens() {
        return Err(Error::DimensionMismatch(format!(
            "expected {} generator images, got {}",
            source.gens(),
            images.len()
        )));
    }
    let h = source.gen_degree();
    let gb = b.gen_degree();
    if (d * h) % gb != 0 {
        return Err(Error::OrderMismatch(format!(
            "scaled generator degree {} is not a multiple of the downstairs generator degree {gb}",
            d * h
        )));
    }
    let c = ((d * h) / gb) as usize;
    for v in images {
        if v.len() != b.dim_level(c) {
            return Err(Error::DimensionMismatch(format!(
                "generator image needs {} coordinates at level {c}, got {}",
                b.dim_level(c),
                v.len()
            )));
        }
    }
    Ok(c)
}

/// Pushforward of a module along a degree-scaling map given by the images of
/// the upstairs generators (coordinates downstairs, all at one level).
pub fn pushforward_module(
    m: &ModuleTable,
    source: &Arc<AlgebraTable>,
    images: &[Vec<Scalar>],
    d: i64,
) -> Result<Pushforward> {
    let c = image_level(m, source, images, d)?;
    let h = source.gen_degree();
    let mut pieces = Vec::with_capacity(d as usize);
    for i in 0..d {
        let j_min = ceil_div(m.j_min() - i, d);
        let j_cap = (m.j_cap() - i).div_euclid(d);
        if j_cap < j_min {
            return Err(Error::WindowExceeded(format!(
                "piece {i} has no populated degrees in the window"
            )));
        }
        let len = (j_cap - j_min + 1) as usize;
        let mut dims = Vec::with_capacity(len);
        let mut labels = Vec::with_capacity(len);
        for idx in 0..len {
            let j = j_min + idx as i64;
            dims.push(m.dim(d * j + i)?);
            labels.push(m.labels_at(d * j + i).to_vec());
        }
        let stored = len.saturating_sub(h as usize);
        let mut action = Vec::with_capacity(source.gens());
        for img in images {
            let mut per = Vec::with_capacity(stored);
            for idx in 0..stored {
                let j = j_min + idx as i64;
                per.push(m.element_action(img, c, d * j + i)?);
            }
            action.push(per);
        }
        pieces.push(ModuleTable::new(source.clone(), j_min, dims, labels, action)?);
    }
    Ok(Pushforward { pieces })
}

/// Pushforward of a whole complex: each term is the total pushforward, and
/// the differentials act blockwise per residue.
pub fn pushforward_complex(
    c: &ComplexTable,
    source: &Arc<AlgebraTable>,
    images: &[Vec<Scalar>],
    d: i64,
) -> Result<ComplexTable> {
    let field = source.field();
    let mut modules = Vec::new();
    for i in c.i_min()..=c.i_max() {
        let m = c.module(i).expect("in range");
        modules.push(pushforward_module(m, source, images, d)?.total()?);
    }
    let mut diffs = Vec::new();
    for t in 0..(modules.len() - 1) {
        let i = c.i_min() + t as i64 + 1;
        let src = &modules[t + 1];
        let tgt = &modules[t];
        let j_min = src.j_min().max(tgt.j_min());
        let j_cap = src.j_cap().min(tgt.j_cap());
        let mut mats = Vec::new();
        for j in j_min..=j_cap {
            let blocks: Vec<ExactMatrix> =
                (0..d).map(|r| c.diff_matrix(i, d * j + r)).collect::<Result<_>>()?;
            let refs: Vec<&ExactMatrix> = blocks.iter().collect();
            mats.push(block_diagonal(field, &refs));
        }
        diffs.push(GradedMap::new(0, j_min, mats));
    }
    ComplexTable::new(c.i_min(), modules, diffs)
}

/// Veronese pieces of a module: the pushforward along the inclusion of the
/// d-th Veronese subalgebra, which multiplies regraded degrees by d.
pub fn veronese_pieces(
    m: &ModuleTable,
    va: &Arc<AlgebraTable>,
    d: i64,
) -> Result<Pushforward> {
    let b = m.algebra();
    let g = b.gen_degree();
    let gamma = d.gcd(&g);
    let stride = (d / gamma) as usize;
    let n = b.dim_level(stride);
    if va.gens() != n {
        return Err(Error::DimensionMismatch(format!(
            "Veronese algebra has {} generators, expected {n}",
            va.gens()
        )));
    }
    let field = b.field();
    let images: Vec<Vec<Scalar>> = (0..n)
        .map(|gen| {
            let mut v = vec![field.zero(); n];
            v[gen] = field.one();
            v
        })
        .collect();
    pushforward_module(m, va, &images, d)
}

/// One Veronese piece: degrees j of the result read the old degrees d*j + r.
pub fn veronese_piece(
    m: &ModuleTable,
    va: &Arc<AlgebraTable>,
    d: i64,
    r: i64,
) -> Result<ModuleTable> {
    if r < 0 || r >= d {
        return Err(Error::BadPieceIndex { index: r, order: d });
    }
    Ok(veronese_pieces(m, va, d)?.piece(r)?.clone())
}

/// Regrades a module by stretching degrees by s: the new piece at s*j is the
/// old piece at j, everything between the stretched degrees is zero. The new
/// window cap is s*(old cap) + s - 1 since those trailing degrees are known
/// to be zero.
pub fn fractional_veronese(
    m: &ModuleTable,
    s: i64,
    stretched: &Arc<AlgebraTable>,
) -> Result<ModuleTable> {
    if s < 1 {
        return Err(Error::Invalid(format!("stretch factor must be positive, got {s}")));
    }
    let b = m.algebra();
    if stretched.gen_degree() != s * b.gen_degree() {
        return Err(Error::OrderMismatch(format!(
            "stretched algebra has generator degree {}, expected {}",
            stretched.gen_degree(),
            s * b.gen_degree()
        )));
    }
    let field = b.field();
    let j_min = s * m.j_min();
    let j_cap = s * m.j_cap() + s - 1;
    let len = (j_cap - j_min + 1) as usize;
    let mut dims = Vec::with_capacity(len);
    let mut labels = Vec::with_capacity(len);
    for idx in 0..len {
        let j = j_min + idx as i64;
        if j % s == 0 {
            dims.push(m.dim(j / s)?);
            labels.push(m.labels_at(j / s).to_vec());
        } else {
            dims.push(0);
            labels.push(Vec::new());
        }
    }
    let g_new = stretched.gen_degree();
    let stored = len.saturating_sub(g_new as usize);
    let mut action = Vec::with_capacity(stretched.gens());
    for gen in 0..stretched.gens() {
        let mut per = Vec::with_capacity(stored);
        for idx in 0..stored {
            let j = j_min + idx as i64;
            if j % s == 0 {
                per.push(m.action_at(gen, j / s)?);
            } else {
                per.push(ExactMatrix::zero(field, 0, 0));
            }
        }
        action.push(per);
    }
    ModuleTable::new(stretched.clone(), j_min, dims, labels, action)
}

/// Stretches a whole complex by s.
pub fn fractional_veronese_complex(
    c: &ComplexTable,
    s: i64,
    stretched: &Arc<AlgebraTable>,
) -> Result<ComplexTable> {
    let mut modules = Vec::new();
    for i in c.i_min()..=c.i_max() {
        modules.push(fractional_veronese(c.module(i).expect("in range"), s, stretched)?);
    }
    let field = stretched.field();
    let mut diffs = Vec::new();
    for t in 0..(modules.len() - 1) {
        let i = c.i_min() + t as i64 + 1;
        let src = &modules[t + 1];
        let tgt = &modules[t];
        let j_min = src.j_min().max(tgt.j_min());
        let j_cap = src.j_cap().min(tgt.j_cap());
        let mut mats = Vec::new();
        for j in j_min..=j_cap {
            if j % s == 0 {
                mats.push(c.diff_matrix(i, j / s)?);
            } else {
                mats.push(ExactMatrix::zero(field, 0, 0));
            }
        }
        diffs.push(GradedMap::new(0, j_min, mats));
    }
    ComplexTable::new(c.i_min(), modules, diffs)
}

/// Convenience: homology dimensions of a complex across a degree range,
/// one row per homological index.
pub fn homology_row(c: &ComplexTable, i: i64, degrees: impl Iterator<Item = i64>) -> Result<Vec<HomologyPiece>> {
    degrees.map(|j| c.homology(i, j)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::FieldSpec;
    use crate::polyring::{stanley_reisner_ring, RingDesc};

    fn cross() -> Arc<AlgebraTable> {
        let ring = stanley_reisner_ring(FieldSpec::prime(2).unwrap(), 2, &[(1, 2)]).unwrap();
        Arc::new(AlgebraTable::from_ring(&ring, 12).unwrap())
    }

    fn path3() -> Arc<AlgebraTable> {
        let ring =
            stanley_reisner_ring(FieldSpec::prime(2).unwrap(), 3, &[(1, 2), (2, 3)]).unwrap();
        Arc::new(AlgebraTable::from_ring(&ring, 10).unwrap())
    }

    #[test]
    fn veronese_of_the_cross_ring_keeps_two_branches() {
        let a = cross();
        let v = veronese_algebra(&a, 2).unwrap();
        assert_eq!(v.gen_degree(), 1);
        assert_eq!(v.level_cap(), 6);
        let dims: Vec<usize> = (0..=3).map(|l| v.dim_level(l)).collect();
        assert_eq!(dims, vec![1, 2, 2, 2]);
        assert_eq!(v.labels_at(1), &["x^2".to_string(), "y^2".to_string()]);
    }

    #[test]
    fn veronese_of_the_path_ring_grows() {
        let a = path3();
        let v = veronese_algebra(&a, 2).unwrap();
        let dims: Vec<usize> = (0..=2).map(|l| v.dim_level(l)).collect();
        // degree 2 monomials avoiding xy, yz: x^2, x*z, y^2, z^2
        assert_eq!(dims, vec![1, 4, 6]);
    }

    #[test]
    fn veronese_pieces_interleave_the_free_module() {
        let a = cross();
        let va = Arc::new(veronese_algebra(&a, 2).unwrap());
        let r = ModuleTable::free(&a, &[0], 11).unwrap();
        let p = veronese_pieces(&r, &va, 2).unwrap();
        let v0 = p.piece(0).unwrap();
        let v1 = p.piece(1).unwrap();
        let d0: Vec<usize> = (0..=5).map(|j| v0.dim(j).unwrap()).collect();
        let d1: Vec<usize> = (0..=5).map(|j| v1.dim(j).unwrap()).collect();
        assert_eq!(d0, vec![1, 2, 2, 2, 2, 2]);
        assert_eq!(d1, vec![2, 2, 2, 2, 2, 2]);
        v0.validate().unwrap();
        v1.validate().unwrap();
        assert!(p.piece(2).is_err());
        let total = p.total().unwrap();
        assert_eq!(total.dim(0).unwrap(), 3);
    }

    #[test]
    fn frobenius_pushforward_over_the_cross_ring() {
        let a = cross();
        let r = ModuleTable::free(&a, &[0], 11).unwrap();
        let pres = a.presentation().unwrap();
        let images = vec![
            a.poly_to_vec(&pres.ring.parse_element("x^2").unwrap(), 2).unwrap(),
            a.poly_to_vec(&pres.ring.parse_element("y^2").unwrap(), 2).unwrap(),
        ];
        let p = pushforward_module(&r, &a, &images, 2).unwrap();
        let v0 = p.piece(0).unwrap();
        let v1 = p.piece(1).unwrap();
        assert_eq!(v0.dim(0).unwrap(), 1);
        assert_eq!(v0.dim(1).unwrap(), 2);
        assert_eq!(v1.dim(0).unwrap(), 2);
        v0.validate().unwrap();
        v1.validate().unwrap();
        // x acts on V_1 = spans of (x, y) in old degrees 2j+1 by x^2
        let act = v1.action_at(0, 0).unwrap();
        assert_eq!(act.get(0, 0), a.field().one());
        assert!(act.get(1, 1).is_zero());
    }

    #[test]
    fn fractional_veronese_stretches_degrees() {
        let a = cross();
        let r = ModuleTable::free(&a, &[0], 5).unwrap();
        let stretched = Arc::new(a.rescaled(3).unwrap());
        let f = fractional_veronese(&r, 3, &stretched).unwrap();
        assert_eq!(f.j_cap(), 17);
        assert_eq!(f.dim(0).unwrap(), 1);
        assert_eq!(f.dim(1).unwrap(), 0);
        assert_eq!(f.dim(3).unwrap(), 2);
        assert_eq!(f.dim(17).unwrap(), 0);
        f.validate().unwrap();
        // stretching by 1 is the identity
        let same = fractional_veronese(&r, 1, &Arc::new(a.rescaled(1).unwrap())).unwrap();
        assert_eq!(same.dim(2).unwrap(), r.dim(2).unwrap());
    }

    #[test]
    fn pushforward_needs_consistent_degree_scaling() {
        let a = cross();
        let r = ModuleTable::free(&a, &[0], 11).unwrap();
        // images with too few coordinates for level 2
        let bad = vec![vec![a.field().one()], vec![a.field().one()]];
        assert!(pushforward_module(&r, &a, &bad, 2).is_err());
        // source generator degree that the scaling cannot hit
        let stretched = Arc::new(a.rescaled(2).unwrap());
        let m2 = ModuleTable::free(&stretched, &[0], 10).unwrap();
        let imgs = vec![vec![a.field().one(), a.field().zero()]];
        assert!(matches!(
            pushforward_module(&m2, &a, &imgs, 1),
            Err(Error::OrderMismatch(_)) | Err(Error::DimensionMismatch(_))
        ));
    }
}
