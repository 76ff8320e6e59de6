use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::ntheory::{inv_mod, is_prime, mul_mod};
use crate::{Error, Result};

/// A coefficient ring, given as a context object that owns the arithmetic.
///
/// Elements carry no reference to their ring; containers that mix elements
/// keep the context next to them and compare contexts before combining.
#[allow(clippy::wrong_self_convention)]
pub trait ScalarRing: Clone + PartialEq + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn from_int(&self, n: &BigInt) -> Self::Elem;
    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;
    /// Canonical text form: decimal integers, `num/den` rationals, residues.
    fn render(&self, a: &Self::Elem) -> String;
    fn name(&self) -> String;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_int(&BigInt::from(n))
    }
}

#[allow(clippy::wrong_self_convention)]
pub trait ScalarField: ScalarRing {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// Image of `num/den`, or `None` when `den` vanishes in the field.
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<Self::Elem> {
        let d = self.inv(&self.from_int(den))?;
        Some(self.mul(&self.from_int(num), &d))
    }

    fn from_rational(&self, q: &BigRational) -> Option<Self::Elem> {
        self.from_ratio(q.numer(), q.denom())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Integers;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

/// `F_q`, representatives kept in `[0, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    q: u64,
}

impl PrimeField {
    pub fn new(q: u64) -> Result<Self> {
        if !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        Ok(Self { q })
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }
}

impl ScalarRing for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn from_int(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn render(&self, a: &BigInt) -> String {
        a.to_string()
    }
    fn name(&self) -> String {
        "Z".into()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
}

impl ScalarRing for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn from_int(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn render(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn name(&self) -> String {
        "Q".into()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
}

impl ScalarField for Rationals {
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }

    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<BigRational> {
        (!den.is_zero()).then(|| BigRational::new(num.clone(), den.clone()))
    }
}

impl ScalarRing for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.q as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.q - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.q)
    }
    fn from_int(&self, n: &BigInt) -> u64 {
        let r = n.mod_floor(&BigInt::from(self.q));
        r.to_u64().expect("residue fits in u64")
    }
    fn characteristic(&self) -> u64 {
        self.q
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
    fn name(&self) -> String {
        format!("F{}", self.q)
    }
}

impl ScalarField for PrimeField {
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            inv_mod(*a, self.q)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_reduced() {
        let q = Rationals;
        let x = q.from_ratio(&BigInt::from(6), &BigInt::from(-4)).unwrap();
        assert_eq!(q.render(&x), "-3/2");
        assert_eq!(x.denom(), &BigInt::from(2));
        assert_eq!(q.render(&q.add(&x, &x)), "-3");
    }

    #[test]
    fn prime_field_residues() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.from_i64(-1), 6);
        assert_eq!(f.mul(&3, &5), 1);
        assert_eq!(f.inv(&3), Some(5));
        assert_eq!(f.inv(&0), None);
        assert_eq!(f.from_ratio(&BigInt::from(1), &BigInt::from(14)), None);
        assert_eq!(PrimeField::new(9), Err(Error::NotPrime(9)));
    }
}
