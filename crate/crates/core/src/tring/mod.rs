//! The ring `T^Δ(F[D⋊E], F[D⋊E])` on its standard basis.
//!
//! Projective classes `P(λ,μ)` come first, then `M(i,α,λ)` ordered by level,
//! coset representative and character. Products are given by closed-form
//! structure constants; the table is built once per parameter set.

mod element;

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;

pub use element::RingElement;

use crate::exactarith::{IntMatrix, Integers, Mat, ScalarField, ScalarRing};
use crate::groupmodel::{GroupModel, ModelParams};
use crate::{Error, Result, Strategy};

/// Standard basis label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisElement {
    /// `[P_{λ,μ}]`.
    ProjPair { lambda: u64, mu: u64 },
    /// `[M_{i,α,λ}]`, `alpha` the canonical coset representative.
    NonProj { level: u32, alpha: u64, lambda: u64 },
}

impl BasisElement {
    pub fn p(lambda: u64, mu: u64) -> Self {
        Self::ProjPair { lambda, mu }
    }

    pub fn m(level: u32, alpha: u64, lambda: u64) -> Self {
        Self::NonProj { level, alpha, lambda }
    }

    /// Vertex order exponent: 0 for projectives.
    pub fn level(&self) -> u32 {
        match *self {
            Self::ProjPair { .. } => 0,
            Self::NonProj { level, .. } => level,
        }
    }

    pub fn is_projective(&self) -> bool {
        matches!(self, Self::ProjPair { .. })
    }
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::ProjPair { lambda, mu } => write!(f, "P({lambda},{mu})"),
            Self::NonProj { level, alpha, lambda } => write!(f, "M({level},{alpha},{lambda})"),
        }
    }
}

/// Canonical basis for `params`.
pub fn basis(model: &GroupModel) -> Vec<BasisElement> {
    let e = model.e();
    let mut out: Vec<BasisElement> = (0..e)
        .flat_map(|l| (0..e).map(move |m| BasisElement::p(l, m)))
        .collect();
    for i in 1..=model.params().n() {
        for c in model.aut_cosets(i) {
            out.extend((0..e).map(|l| BasisElement::m(i, c.rep, l)));
        }
    }
    out
}

/// The four product rules, coefficients as nonnegative integers.
pub fn closed_form(model: &GroupModel, a: BasisElement, b: BasisElement) -> Vec<(BasisElement, u64)> {
    use BasisElement::{NonProj, ProjPair};
    let params = model.params();
    let e = model.e();
    let mut out: Vec<(BasisElement, u64)> = Vec::new();
    let mut push = |b: BasisElement, c: u64| {
        if c == 0 {
            return;
        }
        match out.iter_mut().find(|(x, _)| *x == b) {
            Some((_, old)) => *old += c,
            None => out.push((b, c)),
        }
    };
    match (a, b) {
        (ProjPair { lambda, mu }, ProjPair { lambda: l2, mu: m2 }) => {
            let m = params.m();
            push(BasisElement::p(lambda, m2), if mu == l2 { m + 1 } else { m });
        }
        (ProjPair { lambda, mu }, NonProj { level, lambda: m2, .. }) => {
            push(BasisElement::p(lambda, model.char_add(mu, model.char_neg(m2))), 1);
            let mj = params.m_level(level);
            for nu in 0..e {
                push(BasisElement::p(lambda, nu), mj);
            }
        }
        (NonProj { level, lambda, .. }, ProjPair { lambda: l2, mu: m2 }) => {
            push(BasisElement::p(model.char_add(lambda, l2), m2), 1);
            let mi = params.m_level(level);
            for nu in 0..e {
                push(BasisElement::p(nu, m2), mi);
            }
        }
        (NonProj { level: i, alpha, lambda }, NonProj { level: j, alpha: beta, lambda: mu }) => {
            let k = i.min(j);
            let l = i.max(j);
            let modk = model.level_modulus(k);
            let composite = model
                .canonical_coset(k, (alpha % modk) * (beta % modk) % modk)
                .expect("product of units")
                .rep;
            push(BasisElement::m(k, composite, model.char_add(lambda, mu)), 1);
            let ml = params.m_level(l);
            for nu in 0..e {
                push(BasisElement::m(k, composite, nu), ml);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Memoized structure constants for one parameter set.
#[derive(Debug, Clone)]
pub struct TRing {
    model: GroupModel,
    basis: Vec<BasisElement>,
    index: HashMap<BasisElement, usize>,
    /// `table[a * rank + b]` lists `(c, coefficient)` of `basis[a]·basis[b]`.
    table: Vec<Vec<(usize, u64)>>,
}

impl TRing {
    pub fn new(params: ModelParams) -> Self {
        Self::with_strategy(params, Strategy::default())
    }

    pub fn with_strategy(params: ModelParams, strategy: Strategy) -> Self {
        let model = GroupModel::new(params);
        let basis = basis(&model);
        let index: HashMap<BasisElement, usize> = basis.iter().enumerate().map(|(i, b)| (*b, i)).collect();
        let rank = basis.len();
        let table = strategy.map_range(0..rank * rank, |ab| {
            closed_form(&model, basis[ab / rank], basis[ab % rank])
                .into_iter()
                .map(|(c, k)| (index[&c], k))
                .collect()
        });
        Self { model, basis, index, table }
    }

    pub fn from_triple(p: u64, n: u32, e: u64) -> Result<Self> {
        Ok(Self::new(ModelParams::new(p, n, e)?))
    }

    pub fn params(&self) -> ModelParams {
        self.model.params()
    }

    pub fn model(&self) -> &GroupModel {
        &self.model
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, b: &BasisElement) -> Option<usize> {
        self.index.get(b).copied()
    }

    fn require(&self, b: &BasisElement) -> Result<usize> {
        self.index_of(b).ok_or(Error::ParamsMismatch)
    }

    /// Structure constants of `basis[a]·basis[b]` by index.
    pub fn product(&self, a: usize, b: usize) -> &[(usize, u64)] {
        &self.table[a * self.rank() + b]
    }

    pub fn mult_basis(&self, a: &BasisElement, b: &BasisElement) -> Result<RingElement<Integers>> {
        let (ia, ib) = (self.require(a)?, self.require(b)?);
        let terms = self
            .product(ia, ib)
            .iter()
            .map(|&(c, k)| (self.basis[c], BigInt::from(k)));
        Ok(RingElement::from_terms(self.params(), Integers, terms))
    }

    pub fn identity_basis(&self) -> BasisElement {
        BasisElement::m(self.params().n(), 1, 0)
    }

    pub fn one<S: ScalarRing>(&self, ring: S) -> RingElement<S> {
        RingElement::basis(self.params(), ring, self.identity_basis())
    }

    pub fn element<S: ScalarRing>(&self, ring: S, b: BasisElement) -> RingElement<S> {
        RingElement::basis(self.params(), ring, b)
    }

    pub fn zero<S: ScalarRing>(&self, ring: S) -> RingElement<S> {
        RingElement::zero(self.params(), ring)
    }

    fn check_params<S: ScalarRing>(&self, x: &RingElement<S>) -> Result<()> {
        if x.params() != self.params() {
            return Err(Error::ParamsMismatch);
        }
        Ok(())
    }

    /// Bilinear extension of the basis product.
    pub fn mult<S: ScalarRing>(&self, x: &RingElement<S>, y: &RingElement<S>) -> Result<RingElement<S>> {
        self.check_params(x)?;
        x.check_compatible(y)?;
        let ring = x.ring().clone();
        let rank = self.rank();
        let mut acc = vec![ring.zero(); rank];
        let mut used = vec![false; rank];
        for (a, ca) in x.terms() {
            let ia = self.require(a)?;
            for (b, cb) in y.terms() {
                let ib = self.require(b)?;
                let cab = ring.mul(ca, cb);
                for &(c, k) in self.product(ia, ib) {
                    let term = ring.mul(&cab, &ring.from_int(&BigInt::from(k)));
                    acc[c] = ring.add(&acc[c], &term);
                    used[c] = true;
                }
            }
        }
        let terms = acc
            .into_iter()
            .enumerate()
            .filter(|(c, _)| used[*c])
            .map(|(c, v)| (self.basis[c], v));
        Ok(RingElement::from_terms(self.params(), ring, terms))
    }

    /// Dense coordinates in basis order.
    pub fn to_coords<S: ScalarRing>(&self, x: &RingElement<S>) -> Result<Vec<S::Elem>> {
        self.check_params(x)?;
        let mut v = vec![x.ring().zero(); self.rank()];
        for (b, c) in x.terms() {
            v[self.require(b)?] = c.clone();
        }
        Ok(v)
    }

    pub fn from_coords<S: ScalarRing>(&self, ring: S, coords: &[S::Elem]) -> RingElement<S> {
        let terms: Vec<_> = self.basis.iter().zip(coords).map(|(b, c)| (*b, c.clone())).collect();
        RingElement::from_terms(self.params(), ring, terms)
    }

    fn check_level(&self, i: u32) -> Result<()> {
        let n = self.params().n();
        if i > n {
            return Err(Error::BadLevel { level: i, max: n });
        }
        Ok(())
    }

    /// Basis of `T_{≤i}`: projectives and `M(j,·,·)` with `j ≤ i`.
    pub fn ideal_le(&self, i: u32) -> Result<Vec<BasisElement>> {
        self.check_level(i)?;
        Ok(self.basis.iter().copied().filter(|b| b.level() <= i).collect())
    }

    /// Basis of the graded piece `T_i`.
    pub fn level_basis(&self, i: u32) -> Result<Vec<BasisElement>> {
        self.check_level(i)?;
        Ok(self.basis.iter().copied().filter(|b| b.level() == i).collect())
    }

    /// Two-sided ideal property of `T_{≤i}` against the full basis.
    pub fn check_ideal(&self, i: u32) -> Result<usize> {
        self.check_level(i)?;
        let mut count = 0;
        for (ib, b) in self.basis.iter().enumerate().filter(|(_, b)| b.level() <= i) {
            for ix in 0..self.rank() {
                for &(c, _) in self.product(ix, ib).iter().chain(self.product(ib, ix)) {
                    count += 1;
                    if self.basis[c].level() > i {
                        return Err(Error::Violation(format!(
                            "T_<={i} not an ideal: {} times {} leaves it",
                            self.basis[ix], b
                        )));
                    }
                }
            }
        }
        Ok(count)
    }

    /// `x·y` with every `T_{≤i}` component removed.
    pub fn quotient_mult<S: ScalarRing>(
        &self,
        i: u32,
        x: &RingElement<S>,
        y: &RingElement<S>,
    ) -> Result<RingElement<S>> {
        self.check_level(i)?;
        if x.support().chain(y.support()).any(|b| b.level() <= i) {
            return Err(Error::SupportInIdeal(i));
        }
        let prod = self.mult(x, y)?;
        let terms: Vec<_> = prod
            .terms()
            .filter(|(b, _)| b.level() > i)
            .map(|(b, c)| (*b, c.clone()))
            .collect();
        Ok(RingElement::from_terms(self.params(), x.ring().clone(), terms))
    }

    /// `(ab - ba)` structure constants as an integer vector.
    fn commutator_coords(&self, a: usize, b: usize) -> Vec<i64> {
        let mut v = vec![0i64; self.rank()];
        for &(c, k) in self.product(a, b) {
            v[c] += k as i64;
        }
        for &(c, k) in self.product(b, a) {
            v[c] -= k as i64;
        }
        v
    }

    /// Basis of the center over a field.
    pub fn center_basis<F: ScalarField>(&self, field: F) -> Vec<RingElement<F>> {
        let rank = self.rank();
        let mut rows: Vec<Vec<F::Elem>> = Vec::new();
        for b in 0..rank {
            let cols: Vec<Vec<i64>> = (0..rank).map(|a| self.commutator_coords(a, b)).collect();
            for c in 0..rank {
                if cols.iter().all(|v| v[c] == 0) {
                    continue;
                }
                rows.push(cols.iter().map(|v| field.from_i64(v[c])).collect());
            }
        }
        let kernel = if rows.is_empty() {
            (0..rank)
                .map(|a| {
                    let mut v = vec![field.zero(); rank];
                    v[a] = field.one();
                    v
                })
                .collect()
        } else {
            Mat::from_rows(rows).kernel(&field)
        };
        kernel.iter().map(|v| self.from_coords(field.clone(), v)).collect()
    }

    /// Whether `x` commutes with every basis element.
    pub fn is_central<S: ScalarRing>(&self, x: &RingElement<S>) -> Result<bool> {
        for b in &self.basis {
            let bb = self.element(x.ring().clone(), *b);
            if self.mult(x, &bb)? != self.mult(&bb, x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `tr(L_{basis[k]})` for every `k`.
    pub fn left_traces(&self) -> Vec<u64> {
        (0..self.rank())
            .map(|k| {
                (0..self.rank())
                    .map(|c| self.product(k, c).iter().filter(|(d, _)| *d == c).map(|(_, v)| v).sum::<u64>())
                    .sum()
            })
            .collect()
    }

    /// `Gram(a,b) = tr(L_{ab})` over the integers.
    pub fn integer_gram(&self) -> IntMatrix {
        let traces = self.left_traces();
        let rank = self.rank();
        let mut g = IntMatrix::zeros(&Integers, rank, rank);
        for a in 0..rank {
            for b in 0..rank {
                let v: u64 = self.product(a, b).iter().map(|&(k, c)| c * traces[k]).sum();
                g.set(a, b, BigInt::from(v));
            }
        }
        g
    }

    /// Regular trace form over any scalar ring.
    pub fn trace_form_gram<S: ScalarRing>(&self, ring: &S) -> Mat<S::Elem> {
        self.integer_gram().to_ring(ring)
    }

    /// `(ab)c = a(bc)` on all basis triples.
    pub fn check_associativity(&self, strategy: Strategy) -> Result<usize> {
        let rank = self.rank();
        let per: Vec<Result<usize>> = strategy.map_range(0..rank, |a| {
            for b in 0..rank {
                for c in 0..rank {
                    let mut left = vec![0u64; rank];
                    for &(ab, k) in self.product(a, b) {
                        for &(d, l) in self.product(ab, c) {
                            left[d] += k * l;
                        }
                    }
                    let mut right = vec![0u64; rank];
                    for &(bc, k) in self.product(b, c) {
                        for &(d, l) in self.product(a, bc) {
                            right[d] += k * l;
                        }
                    }
                    if left != right {
                        return Err(Error::Violation(format!(
                            "({} {}) {} differs from {} ({} {})",
                            self.basis[a], self.basis[b], self.basis[c], self.basis[a], self.basis[b], self.basis[c]
                        )));
                    }
                }
            }
            Ok(rank * rank)
        });
        per.into_iter().sum()
    }

    /// `[M(n,1,0)]` is a two-sided identity.
    pub fn check_identity(&self) -> Result<usize> {
        let one = self.require(&self.identity_basis())?;
        for x in 0..self.rank() {
            let expect = [(x, 1u64)];
            if self.product(one, x) != expect || self.product(x, one) != expect {
                return Err(Error::Violation(format!("identity fails on {}", self.basis[x])));
            }
        }
        Ok(2 * self.rank())
    }

    /// Level bookkeeping of products and literal commutativity of non-projectives.
    pub fn check_grading(&self) -> Result<usize> {
        let mut count = 0;
        for (a, ba) in self.basis.iter().enumerate() {
            for (b, bb) in self.basis.iter().enumerate() {
                count += 1;
                let prod = self.product(a, b);
                let expected = if ba.is_projective() || bb.is_projective() {
                    0
                } else {
                    ba.level().min(bb.level())
                };
                if prod.is_empty() || prod.iter().any(|&(c, _)| self.basis[c].level() != expected) {
                    return Err(Error::Violation(format!("{ba} times {bb} leaves level {expected}")));
                }
                if !ba.is_projective() && !bb.is_projective() && prod != self.product(b, a) {
                    return Err(Error::Violation(format!("{ba} and {bb} do not commute")));
                }
            }
        }
        Ok(count)
    }

    /// Rule 4 on arbitrary unit representatives agrees with the canonical labels.
    pub fn check_coset_independence(&self) -> Result<usize> {
        let model = &self.model;
        let p = self.params().p();
        let mut count = 0;
        for i in 1..=self.params().n() {
            let mi = model.level_modulus(i);
            for j in i..=self.params().n() {
                let mj = model.level_modulus(j);
                for a in (1..mi).filter(|a| a % p != 0) {
                    for b in (1..mj).filter(|b| b % p != 0) {
                        count += 1;
                        let raw = model.canonical_coset(i, a * (b % mi) % mi)?;
                        let ca = model.canonical_coset(i, a)?.rep;
                        let cb = model.canonical_coset(j, b)?.rep;
                        let canon = model.canonical_coset(i, ca * (cb % mi) % mi)?;
                        if raw != canon {
                            return Err(Error::Violation(format!(
                                "coset product depends on representatives at level {i}: {a}, {b}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(count)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactarith::{PrimeField, Rationals};
    use num_rational::BigRational;

    fn ring(p: u64, n: u32, e: u64) -> TRing {
        TRing::from_triple(p, n, e).unwrap()
    }

    fn int_terms(x: &RingElement<Integers>) -> Vec<(BasisElement, i64)> {
        x.terms().map(|(b, c)| (*b, i64::try_from(c).unwrap())).collect()
    }

    #[test]
    fn basis_sizes() {
        let r = ring(3, 1, 1);
        assert_eq!(r.basis(), &[BasisElement::p(0, 0), BasisElement::m(1, 1, 0), BasisElement::m(1, 2, 0)]);
        assert_eq!(ring(3, 2, 2).rank(), 12);
        assert_eq!(ring(2, 3, 1).rank(), 8);
        assert_eq!(ring(7, 2, 3).rank(), 57);
        let r = ring(3, 2, 2);
        assert_eq!(r.level_basis(1).unwrap().len(), 2);
        assert_eq!(r.level_basis(2).unwrap().len(), 6);
    }

    #[test]
    fn rule_examples() {
        let r = ring(3, 2, 2);
        let x = r.mult_basis(&BasisElement::p(0, 1), &BasisElement::p(1, 0)).unwrap();
        assert_eq!(int_terms(&x), vec![(BasisElement::p(0, 0), 5)]);
        let x = r.mult_basis(&BasisElement::m(1, 1, 0), &BasisElement::m(1, 1, 0)).unwrap();
        assert_eq!(int_terms(&x), vec![(BasisElement::m(1, 1, 0), 2), (BasisElement::m(1, 1, 1), 1)]);
        let x = r.mult_basis(&BasisElement::p(0, 1), &BasisElement::m(1, 1, 1)).unwrap();
        assert_eq!(int_terms(&x), vec![(BasisElement::p(0, 0), 2), (BasisElement::p(0, 1), 1)]);
        assert_eq!(
            r.mult_basis(&BasisElement::p(0, 5), &BasisElement::p(0, 0)),
            Err(Error::ParamsMismatch)
        );
    }

    #[test]
    fn axioms_on_small_rings() {
        for (p, n, e) in [(3, 1, 1), (3, 2, 2), (2, 3, 1), (5, 1, 4)] {
            let r = ring(p, n, e);
            r.check_associativity(Strategy::Sequential).unwrap();
            r.check_identity().unwrap();
            r.check_grading().unwrap();
            r.check_coset_independence().unwrap();
            for i in 0..=n {
                r.check_ideal(i).unwrap();
            }
        }
    }

    #[test]
    fn idempotent_over_q() {
        let r = ring(3, 2, 2);
        let q = Rationals;
        let third = |k: i64| BigRational::new(k.into(), 3.into());
        let x = RingElement::from_terms(
            r.params(),
            q,
            [(BasisElement::m(1, 1, 0), third(2)), (BasisElement::m(1, 1, 1), third(-1))],
        );
        assert_eq!(r.mult(&x, &x).unwrap(), x);
        assert!(r.mult(&x, &r.zero(q)).unwrap().is_zero());
        assert_eq!(r.mult(&r.one(q), &x).unwrap(), x);
    }

    #[test]
    fn mismatches() {
        let a = ring(3, 2, 2);
        let b = ring(3, 1, 1);
        let x = a.one(Rationals);
        let y = b.one(Rationals);
        assert_eq!(a.mult(&x, &y), Err(Error::ParamsMismatch));
        let f = PrimeField::new(5).unwrap();
        let z = a.one(f);
        assert!(x.add(&x).is_ok());
        assert_eq!(a.one(PrimeField::new(7).unwrap()).add(&z), Err(Error::ScalarMismatch("F7".into(), "F5".into())));
    }

    #[test]
    fn ideals_and_quotients() {
        let r = ring(3, 2, 2);
        assert_eq!(r.ideal_le(0).unwrap().len(), 4);
        assert_eq!(r.ideal_le(1).unwrap().len(), 6);
        assert_eq!(r.ideal_le(2).unwrap().len(), 12);
        assert!(r.ideal_le(3).is_err());
        let x = r.element(Integers, BasisElement::m(2, 2, 0));
        let sq = r.quotient_mult(1, &x, &x).unwrap();
        assert_eq!(int_terms(&sq), vec![(BasisElement::m(2, 4, 0), 1)]);
        let pp = r.element(Integers, BasisElement::p(0, 0));
        assert_eq!(r.quotient_mult(0, &pp, &pp), Err(Error::SupportInIdeal(0)));
    }

    #[test]
    fn center_and_gram() {
        let r = ring(3, 1, 1);
        assert_eq!(r.center_basis(Rationals).len(), 3);
        let g = r.integer_gram();
        assert_eq!(g, g.transpose());
        assert_ne!(g.det(), BigInt::from(0));
        let r = ring(3, 2, 2);
        let f3 = PrimeField::new(3).unwrap();
        assert!(r.trace_form_gram(&f3).rank(&f3) < r.rank());
        let center = r.center_basis(Rationals);
        assert!(center.iter().all(|z| r.is_central(z).unwrap()));
    }
}
