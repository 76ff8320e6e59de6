use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ntheory::gcd;
use super::scalar::ScalarRing;
use crate::{Error, Result};

/// `Q[x]/Φ_m(x)`, elements stored as coefficient vectors of length `deg Φ_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicRing {
    m: u64,
    /// Monic `Φ_m`, lowest degree first.
    phi: Vec<BigInt>,
}

/// Exact division of integer polynomials (lowest degree first) by a monic divisor.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

/// `Φ_m` from `x^m - 1 = ∏_{d | m} Φ_d`.
pub(crate) fn cyclotomic_polynomial(m: u64) -> Vec<BigInt> {
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = -BigInt::one();
    num[m as usize] = BigInt::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            num = poly_div_exact(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

impl CyclotomicRing {
    pub fn new(m: u64) -> Self {
        assert!(m >= 1, "cyclotomic order must be positive");
        Self { m, phi: cyclotomic_polynomial(m) }
    }

    pub fn order(&self) -> u64 {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    pub fn phi(&self) -> &[BigInt] {
        &self.phi
    }

    /// Reduce an arbitrary-length rational polynomial modulo `Φ_m`.
    pub fn reduce(&self, mut poly: Vec<BigRational>) -> Vec<BigRational> {
        let d = self.degree();
        while poly.len() > d {
            let c = poly.pop().expect("nonempty");
            if c.is_zero() {
                continue;
            }
            let shift = poly.len() - d;
            for (i, coeff) in self.phi[..d].iter().enumerate() {
                poly[shift + i] -= &c * BigRational::from_integer(coeff.clone());
            }
        }
        poly.resize(d, BigRational::zero());
        poly
    }

    /// `ζ_m^k`, with `k` taken modulo `m`.
    pub fn zeta_pow(&self, k: u64) -> Vec<BigRational> {
        let k = (k % self.m) as usize;
        let mut poly = vec![BigRational::zero(); k + 1];
        poly[k] = BigRational::one();
        self.reduce(poly)
    }

    /// The Galois automorphism `σ_a : ζ ↦ ζ^a`.
    pub fn galois(&self, a: u64, x: &[BigRational]) -> Result<Vec<BigRational>> {
        if gcd(a % self.m, self.m) != 1 && self.m != 1 {
            return Err(Error::BadGaloisIndex { a, m: self.m });
        }
        let mut acc = self.zero();
        for (i, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = self.zeta_pow(a * i as u64);
            for (slot, t) in acc.iter_mut().zip(term) {
                *slot += c * t;
            }
        }
        Ok(acc)
    }

    /// Sum of `σ_a(x)` over all `a` coprime to `m`; always rational.
    pub fn trace(&self, x: &[BigRational]) -> BigRational {
        let mut acc = self.zero();
        for a in (1..=self.m).filter(|&a| gcd(a, self.m) == 1) {
            let s = self.galois(a, x).expect("coprime index");
            acc = self.add(&acc, &s);
        }
        self.as_rational(&acc)
            .expect("Galois-invariant sum lies in Q")
    }

    /// `Some(q)` when `x` is the constant `q`.
    pub fn as_rational(&self, x: &[BigRational]) -> Option<BigRational> {
        if x.iter().skip(1).all(Zero::is_zero) {
            Some(x.first().cloned().unwrap_or_else(BigRational::zero))
        } else {
            None
        }
    }
}

impl ScalarRing for CyclotomicRing {
    type Elem = Vec<BigRational>;

    fn zero(&self) -> Self::Elem {
        vec![BigRational::zero(); self.degree()]
    }
    fn one(&self) -> Self::Elem {
        self.zeta_pow(0)
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| -x).collect()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut prod = vec![BigRational::zero(); a.len() + b.len()];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        self.reduce(prod)
    }
    fn from_int(&self, n: &BigInt) -> Self::Elem {
        let mut v = self.zero();
        v[0] = BigRational::from_integer(n.clone());
        v
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn render(&self, a: &Self::Elem) -> String {
        let terms: Vec<String> = a
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c})*z^{i}"))
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
    fn name(&self) -> String {
        format!("Q(zeta_{})", self.m)
    }
}
