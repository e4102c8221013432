//! Exact coefficient fields.
//!
//! Every structure in the crate is generic over a [`Field`] context object.
//! The context carries whatever runtime data the arithmetic needs (the
//! modulus for prime fields) and elements are plain values. Two fields are
//! provided: [`PrimeField`] for `GF(p)` with `p < 2^31`, and [`Rationals`]
//! backed by arbitrary-precision fractions.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Arithmetic context for an exact field.
pub trait Field: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; the zero scalar is rejected.
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// Parses an integer or a fraction `p/q` (with optional sign).
    fn parse(&self, s: &str) -> Result<Self::Elem>;
    fn format(&self, a: &Self::Elem) -> String;
    /// 0 for the rationals.
    fn characteristic(&self) -> u64;
    /// Uniform element for prime fields; small integers for the rationals.
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    fn spec(&self) -> FieldSpec;

    /// `acc += a * b`.
    fn mul_add_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        let prod = self.mul(a, b);
        *acc = self.add(acc, &prod);
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// Elements of the prime subfield with representatives `0..bound`, used by
    /// exhaustive enumerations.
    fn prime_subfield_elements(&self, bound: u64) -> Vec<Self::Elem> {
        let limit = match self.characteristic() {
            0 => bound,
            p => p.min(bound),
        };
        (0..limit as i64).map(|n| self.from_i64(n)).collect()
    }
}

/// Serializable description of a field, as it appears in instance documents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Prime(u32),
    Rational,
}

impl FieldSpec {
    pub fn parse(s: &str) -> Result<FieldSpec> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let lower = t.to_ascii_lowercase();
        if matches!(lower.as_str(), "qq" | "q" | "rational" | "rationals") {
            return Ok(FieldSpec::Rational);
        }
        let digits = lower
            .strip_prefix("gf(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| lower.strip_prefix("gf"))
            .or_else(|| lower.strip_prefix("f_"))
            .unwrap_or(&lower);
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::Parse(format!("unrecognised field `{s}`")))?;
        PrimeField::new(p).map(|f| FieldSpec::Prime(f.modulus()))
    }
}

impl std::fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
            FieldSpec::Rational => write!(f, "QQ"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `GF(p)`; elements are stored reduced in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::Parse(format!("{p} is not a prime below 2^31")));
        }
        Ok(PrimeField { p: p as u32 })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    #[inline]
    fn reduce(&self, v: u64) -> u32 {
        (v % self.p as u64) as u32
    }

    fn pow(&self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1u32;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.reduce(acc as u64 * base as u64);
            }
            base = self.reduce(base as u64 * base as u64);
            exp >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u32;

    #[inline]
    fn zero(&self) -> u32 {
        0
    }
    #[inline]
    fn one(&self) -> u32 {
        1 % self.p
    }
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        if s >= self.p as u64 {
            (s - self.p as u64) as u32
        } else {
            s as u32
        }
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (*a as u64 + self.p as u64 - *b as u64) as u32
        }
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.reduce(*a as u64 * *b as u64)
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u32) -> Result<u32> {
        if *a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(*a, self.p as u64 - 2))
    }
    fn from_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }
    fn parse(&self, s: &str) -> Result<u32> {
        let q = Rationals.parse(s)?;
        let num = (q.numer() % BigInt::from(self.p)).to_i64().unwrap_or(0);
        let den = (q.denom() % BigInt::from(self.p)).to_i64().unwrap_or(0);
        let den = self.from_i64(den);
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        self.div(&self.from_i64(num), &den)
    }
    fn format(&self, a: &u32) -> String {
        a.to_string()
    }
    fn characteristic(&self) -> u64 {
        self.p as u64
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        rng.gen_range(0..self.p)
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }
    #[inline]
    fn mul_add_assign(&self, acc: &mut u32, a: &u32, b: &u32) {
        *acc = self.reduce(*acc as u64 + *a as u64 * *b as u64);
    }
}

/// The field of rational numbers, elements stored reduced.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(a.recip())
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn parse(&self, s: &str) -> Result<BigRational> {
        let t = s.trim();
        let bad = || Error::Parse(format!("invalid scalar `{s}`"));
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(BigRational::new(num, den))
    }
    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        self.from_i64(rng.gen_range(-3..=3))
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Rational
    }
}

/// Sign of a rational, for comparisons done outside the field trait.
pub fn rational_sign(q: &BigRational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_axioms_exhaustive_gf7() {
        let f = PrimeField::new(7).unwrap();
        for a in 0..7u32 {
            for b in 0..7u32 {
                assert_eq!(f.sub(&f.add(&a, &b), &b), a);
                if b != 0 {
                    assert_eq!(f.mul(&f.div(&a, &b).unwrap(), &b), a);
                }
                assert!(f.add(&a, &b) < 7);
            }
        }
        assert!(matches!(f.inv(&0), Err(Error::DivisionByZero)));
    }

    #[test]
    fn prime_field_rejects_composites_and_large() {
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(91).is_err());
        assert!(PrimeField::new(1 << 31).is_err());
        assert!(PrimeField::new(2_147_483_647).is_ok());
        assert!(PrimeField::new(2_147_483_629).is_ok());
    }

    #[test]
    fn parse_scalars() {
        let f = PrimeField::new(101).unwrap();
        assert_eq!(f.parse("-1").unwrap(), 100);
        assert_eq!(f.mul(&f.parse("1/2").unwrap(), &2), 1);
        assert!(f.parse("1/101").is_err());
        let q = Rationals;
        assert_eq!(q.format(&q.parse("6/-4").unwrap()), "-3/2");
        assert!(q.parse("abc").is_err());
    }

    #[test]
    fn field_spec_strings() {
        assert_eq!(FieldSpec::parse("GF(101)").unwrap(), FieldSpec::Prime(101));
        assert_eq!(FieldSpec::parse(" gf( 5 )").unwrap(), FieldSpec::Prime(5));
        assert_eq!(FieldSpec::parse("QQ").unwrap(), FieldSpec::Rational);
        assert!(FieldSpec::parse("GF(100)").is_err());
        assert_eq!(FieldSpec::Prime(7).to_string(), "GF(7)");
    }

    #[test]
    fn large_prime_mul_add_does_not_overflow() {
        let f = PrimeField::new(2_147_483_629).unwrap();
        let a = f.from_i64(-1);
        let mut acc = a;
        f.mul_add_assign(&mut acc, &a, &a);
        assert_eq!(acc, f.add(&a, &1));
    }
}
