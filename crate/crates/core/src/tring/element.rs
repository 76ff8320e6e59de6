use std::collections::BTreeMap;

use super::BasisElement;
use crate::exactarith::ScalarRing;
use crate::groupmodel::ModelParams;
use crate::{Error, Result};

/// Sparse element of `S ⊗ T^Δ`: nonzero coefficients only, keys in basis order.
#[derive(Debug, Clone, PartialEq)]
pub struct RingElement<S: ScalarRing> {
    params: ModelParams,
    ring: S,
    coeffs: BTreeMap<BasisElement, S::Elem>,
}

impl<S: ScalarRing> RingElement<S> {
    pub fn zero(params: ModelParams, ring: S) -> Self {
        Self { params, ring, coeffs: BTreeMap::new() }
    }

    pub fn basis(params: ModelParams, ring: S, b: BasisElement) -> Self {
        let one = ring.one();
        Self::from_terms(params, ring, [(b, one)])
    }

    pub fn from_terms(
        params: ModelParams,
        ring: S,
        terms: impl IntoIterator<Item = (BasisElement, S::Elem)>,
    ) -> Self {
        let mut x = Self::zero(params, ring);
        for (b, c) in terms {
            x.add_term(b, &c);
        }
        x
    }

    pub fn params(&self) -> ModelParams {
        self.params
    }

    pub fn ring(&self) -> &S {
        &self.ring
    }

    pub fn coeff(&self, b: &BasisElement) -> S::Elem {
        self.coeffs.get(b).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisElement, &S::Elem)> {
        self.coeffs.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &BasisElement> {
        self.coeffs.keys()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, b: BasisElement, c: &S::Elem) {
        if self.ring.is_zero(c) {
            return;
        }
        let sum = match self.coeffs.get(&b) {
            Some(old) => self.ring.add(old, c),
            None => c.clone(),
        };
        if self.ring.is_zero(&sum) {
            self.coeffs.remove(&b);
        } else {
            self.coeffs.insert(b, sum);
        }
    }

    pub(crate) fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.params != other.params {
            return Err(Error::ParamsMismatch);
        }
        if self.ring != other.ring {
            return Err(Error::ScalarMismatch(self.ring.name(), other.ring.name()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (b, c) in &other.coeffs {
            out.add_term(*b, c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.values_mut() {
            *c = self.ring.neg(c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &S::Elem) -> Self {
        let terms: Vec<_> = self.coeffs.iter().map(|(b, c)| (*b, self.ring.mul(s, c))).collect();
        Self::from_terms(self.params, self.ring.clone(), terms)
    }

    /// Image under a ring map on coefficients.
    pub fn map_scalars<T: ScalarRing>(&self, target: T, f: impl Fn(&S::Elem) -> T::Elem) -> RingElement<T> {
        let terms: Vec<_> = self.coeffs.iter().map(|(b, c)| (*b, f(c))).collect();
        RingElement::from_terms(self.params, target, terms)
    }

    /// `(basis label, rendered coefficient)` pairs in basis order.
    pub fn render_terms(&self) -> Vec<(BasisElement, String)> {
        self.coeffs.iter().map(|(b, c)| (*b, self.ring.render(c))).collect()
    }
}

impl<S: ScalarRing> std::fmt::Display for RingElement<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(b, c)| format!("{}*{}", self.ring.render(c), b))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
