//! Exact linear algebra over GF(p) and Q.
//!
//! All decisions downstream (ranks, kernels, chosen complements) reduce to
//! the routines here, so they are deterministic by construction: row
//! reduction picks the leftmost nonzero pivot scanning rows top-down, kernel
//! bases are read off the reduced form in ascending free-column order, and
//! span complements are chosen by a greedy left-to-right rank test.
//!
//! GF(2) matrices are bit-packed (64 columns per word); other primes use u64
//! residues; Q uses arbitrary-precision rationals kept in lowest terms with
//! positive denominators. Low-density matrices are stored sparsely, which is
//! purely an internal layout choice and never affects any result.

mod bitmat;
mod echelon;
mod matrix;

pub use bitmat::BitMatrix;
pub use echelon::Echelon;
pub use matrix::{column_span_complement, coords_in_basis, solve_right, ExactMatrix};

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Largest admissible prime characteristic. Residues are added without
/// intermediate widening, so primes are kept below 2^31.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// The coefficient field: GF(p) for a prime p, or Q when the characteristic
/// is zero.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct FieldSpec {
    characteristic: u64,
}

/// A field element. `Fp` residues are canonical representatives in `[0, p)`;
/// `Rat` values are always in lowest terms with a positive denominator
/// (maintained by the rational type itself).
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Scalar {
    Fp(u64),
    Rat(BigRational),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Fp(a) => *a == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    /// Residue value; panics on rationals (internal fast paths only).
    pub(crate) fn fp(&self) -> u64 {
        match self {
            Scalar::Fp(a) => *a,
            Scalar::Rat(_) => panic!("expected a prime-field scalar"),
        }
    }
}

impl std::fmt::Display for Scalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Scalar::Fp(a) => write!(f, "{a}"),
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for u64 inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl FieldSpec {
    /// The rational field Q.
    pub fn rationals() -> Self {
        FieldSpec { characteristic: 0 }
    }

    /// GF(p). Primality is checked here, once, so every later operation can
    /// assume a true field.
    pub fn prime(p: u64) -> Result<Self> {
        if p > MAX_PRIME || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec { characteristic: p })
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn is_rational(&self) -> bool {
        self.characteristic == 0
    }

    pub fn is_two(&self) -> bool {
        self.characteristic == 2
    }

    pub fn zero(&self) -> Scalar {
        match self.characteristic {
            0 => Scalar::Rat(BigRational::zero()),
            _ => Scalar::Fp(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self.characteristic {
            0 => Scalar::Rat(BigRational::one()),
            _ => Scalar::Fp(1),
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self.characteristic {
            0 => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            p => {
                let r = n.rem_euclid(p as i64) as u64;
                Scalar::Fp(r)
            }
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self.characteristic {
            0 => Scalar::Rat(BigRational::from_integer(n.clone())),
            p => {
                let m = BigInt::from(p);
                let mut r = n % &m;
                if r.is_negative() {
                    r += &m;
                }
                Scalar::Fp(r.to_u64().expect("reduced residue fits u64"))
            }
        }
    }

    pub fn ratio_i64(&self, num: i64, den: i64) -> Result<Scalar> {
        self.ratio(&BigInt::from(num), &BigInt::from(den))
    }

    pub fn ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        match self.characteristic {
            0 => Ok(Scalar::Rat(BigRational::new(num.clone(), den.clone()))),
            _ => {
                let d = self.from_bigint(den);
                let n = self.from_bigint(num);
                Ok(self.mul(&n, &self.inv(&d)?))
            }
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp((x + y) % self.characteristic),
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            _ => panic!("mixed scalar kinds"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match a {
            Scalar::Fp(x) => Scalar::Fp(if *x == 0 { 0 } else { self.characteristic - x }),
            Scalar::Rat(x) => Scalar::Rat(-x),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp(mulmod(*x, *y, self.characteristic)),
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            _ => panic!("mixed scalar kinds"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if a.is_zero() {
            return Err(Error::Invalid("inverse of zero".into()));
        }
        Ok(match a {
            Scalar::Fp(x) => Scalar::Fp(powmod(*x, self.characteristic - 2, self.characteristic)),
            Scalar::Rat(x) => Scalar::Rat(x.recip()),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_is_checked_at_construction() {
        assert!(FieldSpec::prime(2).is_ok());
        assert!(FieldSpec::prime(31).is_ok());
        assert_eq!(FieldSpec::prime(1), Err(Error::NotPrime(1)));
        assert_eq!(FieldSpec::prime(91), Err(Error::NotPrime(91)));
        assert_eq!(FieldSpec::prime(1 << 32), Err(Error::NotPrime(1 << 32)));
    }

    #[test]
    fn gf5_arithmetic() {
        let f = FieldSpec::prime(5).unwrap();
        let a = f.from_i64(3);
        let b = f.from_i64(-1);
        assert_eq!(b, Scalar::Fp(4));
        assert_eq!(f.add(&a, &b), Scalar::Fp(2));
        assert_eq!(f.mul(&a, &b), Scalar::Fp(2));
        assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), Scalar::Fp(1));
    }

    #[test]
    fn rationals_stay_reduced_with_positive_denominator() {
        let f = FieldSpec::rationals();
        let half = f.ratio(&BigInt::from(2), &BigInt::from(-4)).unwrap();
        match &half {
            Scalar::Rat(r) => {
                assert_eq!(r.numer(), &BigInt::from(-1));
                assert_eq!(r.denom(), &BigInt::from(2));
            }
            _ => unreachable!(),
        }
        assert_eq!(half.to_string(), "-1/2");
    }
}
