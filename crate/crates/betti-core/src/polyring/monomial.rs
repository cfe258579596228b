//! Monomials over a fixed variable list.
//!
//! The order is graded reverse lexicographic with `x_1 > x_2 > ...`: compare
//! total exponent first, then the rightmost differing exponent, where the
//! smaller exponent wins. All graded-piece bases downstream are sorted
//! descending in this order, which pins every matrix in the engine.

use std::cmp::Ordering;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars] }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    /// Sum of exponents. Ring degree is this times the common variable degree.
    pub fn total_exponent(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        Monomial { exps: self.exps.iter().map(|a| a * e).collect() }
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `self / other`, when divisible.
    pub fn div(&self, other: &Self) -> Option<Self> {
        if other.divides(self) {
            Some(Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect() })
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Self) -> Self {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect() }
    }

    pub fn format_with(&self, names: &[String]) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (i, &e) in self.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(names[i].clone()),
                _ => parts.push(format!("{}^{}", names[i], e)),
            }
        }
        parts.join("*")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        match self.total_exponent().cmp(&other.total_exponent()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        // rightmost differing exponent; smaller exponent means larger monomial
        for i in (0..self.exps.len()).rev() {
            match self.exps[i].cmp(&other.exps[i]) {
                Ordering::Equal => {}
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials in `nvars` variables of total exponent `e`, sorted
/// descending (largest first).
pub fn monomials_of_exponent(nvars: usize, e: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u32; nvars];
    fill(&mut out, &mut current, 0, e);
    out.sort_by(|a, b| b.cmp(a));
    out
}

fn fill(out: &mut Vec<Monomial>, current: &mut Vec<u32>, idx: usize, remaining: u32) {
    if current.is_empty() {
        if remaining == 0 {
            out.push(Monomial::one(0));
        }
        return;
    }
    if idx == current.len() - 1 {
        current[idx] = remaining;
        out.push(Monomial::new(current.clone()));
        current[idx] = 0;
        return;
    }
    for e in 0..=remaining {
        current[idx] = e;
        fill(out, current, idx + 1, remaining - e);
    }
    current[idx] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(exps: &[u32]) -> Monomial {
        Monomial::new(exps.to_vec())
    }

    #[test]
    fn degrevlex_orders_quadrics_in_three_variables() {
        // descending: x^2 > xy > y^2 > xz > yz > z^2
        let expected = [
            m(&[2, 0, 0]),
            m(&[1, 1, 0]),
            m(&[0, 2, 0]),
            m(&[1, 0, 1]),
            m(&[0, 1, 1]),
            m(&[0, 0, 2]),
        ];
        let got = monomials_of_exponent(3, 2);
        assert_eq!(got, expected);
        for w in got.windows(2) {
            assert!(w[0] > w[1]);
        }
    }

    #[test]
    fn degree_dominates_the_order() {
        assert!(m(&[0, 3]) > m(&[2, 0]));
    }

    #[test]
    fn division_and_lcm() {
        let a = m(&[2, 1]);
        let b = m(&[1, 0]);
        assert!(b.divides(&a));
        assert_eq!(a.div(&b), Some(m(&[1, 1])));
        assert_eq!(b.div(&a), None);
        assert_eq!(a.lcm(&m(&[0, 3])), m(&[2, 3]));
    }

    #[test]
    fn formatting_uses_caret_and_star() {
        let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        assert_eq!(m(&[2, 0, 1]).format_with(&names), "x^2*z");
        assert_eq!(m(&[0, 0, 0]).format_with(&names), "1");
    }
}
