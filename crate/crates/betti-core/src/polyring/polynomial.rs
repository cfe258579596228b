//! Polynomials with exact coefficients, plus the text grammar used by input
//! files: `poly := term ('+' term)*`, `term := [coeff '*'] mono | coeff`,
//! `mono := var ['^' exp] ('*' var ['^' exp])*`. A leading or separating `-`
//! is accepted and folds the sign into the coefficient. Coefficients are
//! integers, or `a/b` fractions over the rationals.

use super::monomial::Monomial;
use crate::error::{Error, Result};
use crate::linalg::{FieldSpec, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    field: FieldSpec,
    nvars: usize,
    /// Terms sorted by monomial, largest first; no zero coefficients.
    terms: Vec<(Monomial, Scalar)>,
}

impl Polynomial {
    pub fn zero(field: FieldSpec, nvars: usize) -> Self {
        Polynomial { field, nvars, terms: Vec::new() }
    }

    pub fn one(field: FieldSpec, nvars: usize) -> Self {
        Self::term(field, Monomial::one(nvars), field.one())
    }

    pub fn variable(field: FieldSpec, nvars: usize, i: usize) -> Self {
        Self::term(field, Monomial::var(nvars, i), field.one())
    }

    pub fn term(field: FieldSpec, m: Monomial, c: Scalar) -> Self {
        let nvars = m.nvars();
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial { field, nvars, terms }
    }

    pub fn from_terms(field: FieldSpec, nvars: usize, terms: Vec<(Monomial, Scalar)>) -> Self {
        let mut terms = terms;
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, Scalar)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), nvars);
            if let Some(last) = out.last_mut() {
                if last.0 == m {
                    last.1 = field.add(&last.1, &c);
                    continue;
                }
            }
            out.push((m, c));
        }
        out.retain(|(_, c)| !c.is_zero());
        Polynomial { field, nvars, terms: out }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest term in the monomial order.
    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    /// Total exponent when every term has the same one; None for zero or
    /// inhomogeneous polynomials.
    pub fn homogeneous_exponent(&self) -> Option<u32> {
        let first = self.terms.first()?.0.total_exponent();
        self.terms.iter().all(|(m, _)| m.total_exponent() == first).then_some(first)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Self::from_terms(self.field, self.nvars, terms)
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), self.field.neg(c))).collect();
        Polynomial { field: self.field, nvars: self.nvars, terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero(self.field, self.nvars);
        }
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), self.field.mul(c, s))).collect();
        Polynomial { field: self.field, nvars: self.nvars, terms }
    }

    /// Multiplies by a single term.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.field, self.nvars);
        }
        let terms = self
            .terms
            .iter()
            .map(|(tm, tc)| (tm.mul(m), self.field.mul(tc, c)))
            .collect();
        // multiplying by a fixed monomial preserves the term order
        Polynomial { field: self.field, nvars: self.nvars, terms }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (m, c) in &self.terms {
            for (om, oc) in &other.terms {
                terms.push((m.mul(om), self.field.mul(c, oc)));
            }
        }
        Self::from_terms(self.field, self.nvars, terms)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.field, self.nvars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Substitutes `images[i]` for variable i. Image polynomials may live in
    /// a different variable list.
    pub fn substitute(&self, images: &[Polynomial], out_nvars: usize) -> Self {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let mut acc = Self::zero(self.field, out_nvars);
        for (m, c) in &self.terms {
            let mut prod = Self::one(self.field, out_nvars);
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    prod = prod.mul(&images[i].pow(e));
                }
            }
            acc = acc.add(&prod.scale(c));
        }
        acc
    }

    pub fn format_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let one = self.field.one();
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                if m.is_one() {
                    format!("{c}")
                } else if *c == one {
                    m.format_with(names)
                } else {
                    format!("{}*{}", c, m.format_with(names))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Ident(String),
    Int(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&ch) = chars.peek() {
        match ch {
            c if c.is_whitespace() => {
                chars.next();
            }
            '+' => {
                chars.next();
                out.push(Token::Plus);
            }
            '-' => {
                chars.next();
                out.push(Token::Minus);
            }
            '*' => {
                chars.next();
                out.push(Token::Star);
            }
            '^' => {
                chars.next();
                out.push(Token::Caret);
            }
            '/' => {
                chars.next();
                out.push(Token::Slash);
            }
            c if c.is_ascii_digit() => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Token::Int(s));
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_alphanumeric() || d == '_' {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Token::Ident(s));
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

/// Parses the polynomial grammar against a fixed variable list.
pub fn parse_polynomial(field: FieldSpec, names: &[String], text: &str) -> Result<Polynomial> {
    let nvars = names.len();
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut terms: Vec<(Monomial, Scalar)> = Vec::new();
    let mut pos = 0usize;
    let mut sign_negative = false;
    if tokens[pos] == Token::Minus {
        sign_negative = true;
        pos += 1;
    }
    loop {
        let (m, c, next) = parse_term(field, names, &tokens, pos)?;
        let c = if sign_negative { field.neg(&c) } else { c };
        terms.push((m, c));
        pos = next;
        match tokens.get(pos) {
            None => break,
            Some(Token::Plus) => {
                sign_negative = false;
                pos += 1;
            }
            Some(Token::Minus) => {
                sign_negative = true;
                pos += 1;
            }
            Some(t) => return Err(Error::Parse(format!("expected + or - before {t:?}"))),
        }
    }
    Ok(Polynomial::from_terms(field, nvars, terms))
}

fn parse_term(
    field: FieldSpec,
    names: &[String],
    tokens: &[Token],
    mut pos: usize,
) -> Result<(Monomial, Scalar, usize)> {
    let mut coeff = field.one();
    let mut mono = Monomial::one(names.len());
    let mut saw_factor = false;
    loop {
        match tokens.get(pos) {
            Some(Token::Int(raw)) => {
                pos += 1;
                let num: i64 = raw.parse().map_err(|_| Error::Parse(format!("integer {raw} out of range")))?;
                let value = if tokens.get(pos) == Some(&Token::Slash) {
                    if !field.is_rational() {
                        return Err(Error::Parse(
                            "fractional coefficients need characteristic 0".into(),
                        ));
                    }
                    pos += 1;
                    let Some(Token::Int(draw)) = tokens.get(pos) else {
                        return Err(Error::Parse("expected denominator after /".into()));
                    };
                    pos += 1;
                    let den: i64 =
                        draw.parse().map_err(|_| Error::Parse(format!("integer {draw} out of range")))?;
                    if den == 0 {
                        return Err(Error::Parse("zero denominator".into()));
                    }
                    field.ratio_i64(num, den)?
                } else {
                    field.from_i64(num)
                };
                coeff = field.mul(&coeff, &value);
            }
            Some(Token::Ident(name)) => {
                pos += 1;
                let Some(i) = names.iter().position(|n| n == name) else {
                    return Err(Error::Parse(format!("unknown variable {name}")));
                };
                let mut exp = 1u32;
                if tokens.get(pos) == Some(&Token::Caret) {
                    pos += 1;
                    let Some(Token::Int(raw)) = tokens.get(pos) else {
                        return Err(Error::Parse("expected exponent after ^".into()));
                    };
                    pos += 1;
                    exp = raw.parse().map_err(|_| Error::Parse(format!("exponent {raw} out of range")))?;
                }
                mono = mono.mul(&Monomial::var(names.len(), i).pow(exp));
            }
            other => {
                return Err(Error::Parse(format!("expected a coefficient or variable, found {other:?}")))
            }
        }
        saw_factor = true;
        if tokens.get(pos) == Some(&Token::Star) {
            pos += 1;
        } else {
            break;
        }
    }
    debug_assert!(saw_factor);
    Ok((mono, coeff, pos))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parses_the_reference_grammar() {
        let f = FieldSpec::prime(2).unwrap();
        let vars = names(&["x", "y"]);
        let p = parse_polynomial(f, &vars, "x^2 + x*y").unwrap();
        assert_eq!(p.terms().len(), 2);
        assert_eq!(p.format_with(&vars), "x^2 + x*y");
        let q = parse_polynomial(f, &vars, "3*x^2").unwrap();
        assert_eq!(q.format_with(&vars), "x^2");
    }

    #[test]
    fn minus_folds_into_coefficients() {
        let f = FieldSpec::prime(5).unwrap();
        let vars = names(&["x", "y"]);
        let p = parse_polynomial(f, &vars, "x^2 - y^2").unwrap();
        let q = parse_polynomial(f, &vars, "x^2 + 4*y^2").unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn rational_coefficients_parse_only_over_the_rationals() {
        let vars = names(&["x"]);
        let q = parse_polynomial(FieldSpec::rationals(), &vars, "1/2*x").unwrap();
        assert_eq!(q.leading().unwrap().1, &FieldSpec::rationals().ratio_i64(1, 2).unwrap());
        assert!(parse_polynomial(FieldSpec::prime(3).unwrap(), &vars, "1/2*x").is_err());
    }

    #[test]
    fn unknown_variables_are_rejected() {
        let f = FieldSpec::prime(2).unwrap();
        assert!(parse_polynomial(f, &names(&["x"]), "x + t").is_err());
    }

    #[test]
    fn substitution_composes_powers() {
        // x -> x^2 on x^2 + xy needs a second variable image too
        let f = FieldSpec::prime(2).unwrap();
        let vars = names(&["x", "y"]);
        let p = parse_polynomial(f, &vars, "x^2 + x*y").unwrap();
        let images = vec![
            parse_polynomial(f, &vars, "x^2").unwrap(),
            parse_polynomial(f, &vars, "y^2").unwrap(),
        ];
        let q = p.substitute(&images, 2);
        assert_eq!(q, parse_polynomial(f, &vars, "x^4 + x^2*y^2").unwrap());
    }

    #[test]
    fn homogeneity_detection() {
        let f = FieldSpec::prime(2).unwrap();
        let vars = names(&["x", "y"]);
        assert_eq!(
            parse_polynomial(f, &vars, "x^2 + x*y").unwrap().homogeneous_exponent(),
            Some(2)
        );
        assert_eq!(parse_polynomial(f, &vars, "x + x*y").unwrap().homogeneous_exponent(), None);
    }
}
