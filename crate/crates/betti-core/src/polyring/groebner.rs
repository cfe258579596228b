//! Ring presentations and truncated Groebner bases.
//!
//! Buchberger with the normal selection strategy (smallest lcm first) and the
//! coprime-leading-term skip. All ideals here are homogeneous, so truncating
//! at a degree cap is exact: S-pairs above the cap cannot change anything at
//! or below it.

use super::monomial::{monomials_of_exponent, Monomial};
use super::polynomial::{parse_polynomial, Polynomial};
use crate::error::{Error, Result};
use crate::linalg::FieldSpec;

/// Presentation of a quotient algebra k[x_1..x_n]/I with every variable in a
/// single degree g.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingDesc {
    pub field: FieldSpec,
    pub var_names: Vec<String>,
    /// Common degree of every variable.
    pub var_degree: i64,
    pub ideal: Vec<Polynomial>,
}

impl RingDesc {
    pub fn new(
        field: FieldSpec,
        var_names: Vec<String>,
        var_degree: i64,
        ideal: Vec<Polynomial>,
    ) -> Result<Self> {
        if var_degree < 1 {
            return Err(Error::Invalid("variable degree must be at least 1".into()));
        }
        for (i, a) in var_names.iter().enumerate() {
            if var_names[..i].contains(a) {
                return Err(Error::Invalid(format!("duplicate variable name {a}")));
            }
        }
        for f in &ideal {
            if f.nvars() != var_names.len() {
                return Err(Error::Invalid("ideal generator over wrong variable list".into()));
            }
            if f.is_zero() {
                continue;
            }
            if f.homogeneous_exponent().is_none() {
                return Err(Error::NonHomogeneousInput(format!(
                    "ideal generator {} is not homogeneous",
                    f.format_with(&var_names)
                )));
            }
        }
        let ideal = ideal.into_iter().filter(|f| !f.is_zero()).collect();
        Ok(RingDesc { field, var_names, var_degree, ideal })
    }

    pub fn polynomial(field: FieldSpec, var_names: &[&str]) -> Self {
        RingDesc {
            field,
            var_names: var_names.iter().map(|s| s.to_string()).collect(),
            var_degree: 1,
            ideal: Vec::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.var_names.len()
    }

    pub fn parse_element(&self, text: &str) -> Result<Polynomial> {
        parse_polynomial(self.field, &self.var_names, text)
    }

    /// Rescales the grading: every variable degree is multiplied by s.
    pub fn rescale(&self, s: i64) -> Self {
        let mut out = self.clone();
        out.var_degree *= s;
        out
    }
}

/// Stanley-Reisner presentation of a graph complex: one degree-1 variable per
/// vertex, one monomial relation x_i*x_j per edge.
pub fn stanley_reisner_ring(field: FieldSpec, n: usize, edges: &[(usize, usize)]) -> Result<RingDesc> {
    const SHORT: [&str; 6] = ["x", "y", "z", "u", "v", "w"];
    let names: Vec<String> = if n <= SHORT.len() {
        SHORT[..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    };
    let mut seen = std::collections::BTreeSet::new();
    let mut ideal = Vec::new();
    for &(a, b) in edges {
        if a == b {
            return Err(Error::Invalid(format!("loop at vertex {a}")));
        }
        if a < 1 || b < 1 || a > n || b > n {
            return Err(Error::Invalid(format!("edge ({a},{b}) leaves the vertex range 1..={n}")));
        }
        let key = (a.min(b), a.max(b));
        if !seen.insert(key) {
            return Err(Error::Invalid(format!("duplicate edge ({a},{b})")));
        }
        let m = Monomial::var(n, key.0 - 1).mul(&Monomial::var(n, key.1 - 1));
        ideal.push(Polynomial::term(field, m, field.one()));
    }
    RingDesc::new(field, names, 1, ideal)
}

#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub ring: RingDesc,
    /// Reduced monic basis, sorted ascending by leading monomial.
    pub basis: Vec<Polynomial>,
    /// Exact for all data of total exponent <= this.
    pub cap_exponent: u32,
}

/// Truncated reduced Groebner basis of the presentation ideal.
pub fn buchberger(ring: &RingDesc, j_cap: i64) -> Result<GroebnerBasis> {
    let cap_exponent = (j_cap / ring.var_degree).max(0) as u32;
    let field = ring.field;
    let mut basis: Vec<Polynomial> = Vec::new();
    for f in &ring.ideal {
        let Some(e) = f.homogeneous_exponent() else {
            return Err(Error::NonHomogeneousInput(format!(
                "ideal generator {} is not homogeneous",
                f.format_with(&ring.var_names)
            )));
        };
        if e <= cap_exponent {
            let reduced = reduce(f, &basis, field);
            if !reduced.is_zero() {
                basis.push(make_monic(&reduced, field));
            }
        }
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    while !pairs.is_empty() {
        // normal selection: smallest lcm exponent, ties by index pair
        let mut best = 0usize;
        let mut best_key = pair_key(&basis, pairs[0]);
        for (t, &pair) in pairs.iter().enumerate().skip(1) {
            let key = pair_key(&basis, pair);
            if key < best_key {
                best = t;
                best_key = key;
            }
        }
        let (i, j) = pairs.swap_remove(best);
        let (lm_i, _) = basis[i].leading().expect("basis elements are nonzero");
        let (lm_j, _) = basis[j].leading().expect("basis elements are nonzero");
        let lcm = lm_i.lcm(lm_j);
        if lcm.total_exponent() > cap_exponent {
            continue;
        }
        // coprime leading terms: S-pair reduces to zero
        if lcm == lm_i.mul(lm_j) {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], field);
        let r = reduce(&s, &basis, field);
        if !r.is_zero() {
            basis.push(make_monic(&r, field));
            for i in 0..basis.len() - 1 {
                pairs.push((i, basis.len() - 1));
            }
        }
    }
    // inter-reduce to the unique reduced basis
    loop {
        let mut changed = false;
        let mut next: Vec<Polynomial> = Vec::with_capacity(basis.len());
        for i in 0..basis.len() {
            let others: Vec<Polynomial> = basis
                .iter()
                .enumerate()
                .filter(|(t, _)| *t != i)
                .map(|(_, p)| p.clone())
                .collect();
            let r = reduce(&basis[i], &others, field);
            if r != basis[i] {
                changed = true;
            }
            if !r.is_zero() {
                next.push(make_monic(&r, field));
            } else {
                changed = true;
            }
        }
        basis = next;
        if !changed {
            break;
        }
    }
    basis.sort_by(|a, b| {
        a.leading().expect("nonzero").0.cmp(b.leading().expect("nonzero").0)
    });
    basis.dedup();
    Ok(GroebnerBasis { ring: ring.clone(), basis, cap_exponent })
}

fn pair_key(basis: &[Polynomial], (i, j): (usize, usize)) -> (u32, usize, usize) {
    let lm_i = basis[i].leading().expect("nonzero").0;
    let lm_j = basis[j].leading().expect("nonzero").0;
    (lm_i.lcm(lm_j).total_exponent(), i, j)
}

fn make_monic(f: &Polynomial, field: FieldSpec) -> Polynomial {
    let (_, c) = f.leading().expect("nonzero polynomial");
    let inv = field.inv(c).expect("nonzero leading coefficient");
    f.scale(&inv)
}

fn s_polynomial(f: &Polynomial, g: &Polynomial, field: FieldSpec) -> Polynomial {
    let (lm_f, lc_f) = f.leading().expect("nonzero");
    let (lm_g, lc_g) = g.leading().expect("nonzero");
    let lcm = lm_f.lcm(lm_g);
    let a = f.mul_term(&lcm.div(lm_f).expect("lcm divisible"), &field.inv(lc_f).expect("nonzero"));
    let b = g.mul_term(&lcm.div(lm_g).expect("lcm divisible"), &field.inv(lc_g).expect("nonzero"));
    a.sub(&b)
}

/// Full reduction: no monomial of the result is divisible by any leading
/// monomial of `basis`.
fn reduce(f: &Polynomial, basis: &[Polynomial], field: FieldSpec) -> Polynomial {
    let mut rest = f.clone();
    let mut out: Vec<(Monomial, crate::linalg::Scalar)> = Vec::new();
    'outer: while let Some((m, c)) = rest.leading().map(|(m, c)| (m.clone(), c.clone())) {
        for g in basis {
            let (lm, lc) = g.leading().expect("nonzero");
            if lm.divides(&m) {
                let q = m.div(lm).expect("divisible");
                let factor = field.mul(&c, &field.inv(lc).expect("nonzero"));
                rest = rest.sub(&g.mul_term(&q, &factor));
                continue 'outer;
            }
        }
        // leading monomial is standard; move it to the output
        out.push((m.clone(), c));
        rest = rest.sub(&Polynomial::term(field, m, out.last().unwrap().1.clone()));
    }
    Polynomial::from_terms(field, f.nvars(), out)
}

impl GroebnerBasis {
    /// Unique remainder supported on standard monomials.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        let needed = f.terms().iter().map(|(m, _)| m.total_exponent()).max().unwrap_or(0);
        if needed > self.cap_exponent {
            return Err(Error::DegreeCapExceeded {
                needed: needed as i64 * self.ring.var_degree,
                cap: self.cap_exponent as i64 * self.ring.var_degree,
            });
        }
        Ok(reduce(f, &self.basis, self.ring.field))
    }

    /// Monomials of the given total exponent not divisible by any leading
    /// monomial, sorted descending. These are a basis of the graded piece.
    pub fn standard_monomials(&self, e: u32) -> Result<Vec<Monomial>> {
        if e > self.cap_exponent {
            return Err(Error::DegreeCapExceeded {
                needed: e as i64 * self.ring.var_degree,
                cap: self.cap_exponent as i64 * self.ring.var_degree,
            });
        }
        let leads: Vec<&Monomial> =
            self.basis.iter().map(|g| g.leading().expect("nonzero").0).collect();
        Ok(monomials_of_exponent(self.ring.nvars(), e)
            .into_iter()
            .filter(|m| !leads.iter().any(|l| l.divides(m)))
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2() -> FieldSpec {
        FieldSpec::prime(2).unwrap()
    }

    fn ring(names: &[&str], gens: &[&str]) -> RingDesc {
        let base = RingDesc::polynomial(gf2(), names);
        let ideal = gens.iter().map(|s| base.parse_element(s).unwrap()).collect();
        RingDesc::new(gf2(), base.var_names.clone(), 1, ideal).unwrap()
    }

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        let gb = buchberger(&ring(&["x", "y"], &["x*y"]), 6).unwrap();
        assert_eq!(gb.basis.len(), 1);
        assert_eq!(gb.basis[0], gb.ring.parse_element("x*y").unwrap());
    }

    #[test]
    fn single_binomial_is_its_own_basis() {
        let gb = buchberger(&ring(&["x", "y", "z"], &["x^2 + y*z"]), 6).unwrap();
        assert_eq!(gb.basis.len(), 1);
        assert_eq!(gb.basis[0], gb.ring.parse_element("x^2 + y*z").unwrap());
    }

    #[test]
    fn s_pair_completion_finds_the_cubic() {
        // (x^2, xy + y^2): the S-pair drops to y^3
        let r = ring(&["x", "y"], &["x^2", "x*y + y^2"]);
        let gb = buchberger(&r, 4).unwrap();
        let expected: Vec<Polynomial> =
            ["x*y + y^2", "x^2", "y^3"].iter().map(|s| r.parse_element(s).unwrap()).collect();
        assert_eq!(gb.basis, expected);
        let nf = gb.normal_form(&r.parse_element("y^3").unwrap()).unwrap();
        assert!(nf.is_zero());
    }

    #[test]
    fn normal_form_is_idempotent_and_respects_the_cap() {
        let r = ring(&["x"], &["x^3"]);
        let gb = buchberger(&r, 5).unwrap();
        let f = r.parse_element("x^2").unwrap();
        let nf = gb.normal_form(&f).unwrap();
        assert_eq!(nf, f);
        assert_eq!(gb.normal_form(&nf).unwrap(), nf);
        assert!(gb.normal_form(&r.parse_element("x^6").unwrap()).is_err());
    }

    #[test]
    fn standard_monomial_counts_follow_the_hilbert_function() {
        let gb = buchberger(&ring(&["x", "y"], &["x*y"]), 6).unwrap();
        let dims: Vec<usize> = (0..=4).map(|e| gb.standard_monomials(e).unwrap().len()).collect();
        assert_eq!(dims, vec![1, 2, 2, 2, 2]);
        // descending order within a degree: x^j before y^j
        let b2 = gb.standard_monomials(2).unwrap();
        assert_eq!(b2[0], Monomial::new(vec![2, 0]));
        assert_eq!(b2[1], Monomial::new(vec![0, 2]));
    }

    #[test]
    fn stanley_reisner_builds_edge_ideals() {
        let r = stanley_reisner_ring(gf2(), 3, &[(1, 2), (2, 3)]).unwrap();
        assert_eq!(r.var_names, vec!["x", "y", "z"]);
        assert_eq!(r.ideal.len(), 2);
        assert!(stanley_reisner_ring(gf2(), 3, &[(1, 1)]).is_err());
        assert!(stanley_reisner_ring(gf2(), 3, &[(1, 2), (2, 1)]).is_err());
    }
}
