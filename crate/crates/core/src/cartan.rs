//! Twisted matrix rings `R_c` (product `a·_c b = a c b`) and the idempotents
//! of the projective ideal `Pr`, which is `Mat_l(Z)` twisted by the Cartan matrix.
//!
//! `[P_{λ,μ}]` corresponds to the matrix unit `E_{λ,μ}` with characters
//! taken in their natural order.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exactarith::{mat_inverse_over_field, snf, IntMatrix, Integers, Mat, Rationals, ScalarField, ScalarRing};
use crate::groupmodel::ModelParams;
use crate::tring::{BasisElement, RingElement, TRing};
use crate::{Error, Result};

/// `Mat_l(S)` with the product `a·_c b = a c b`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwistedMatRing<S: ScalarRing> {
    pub ring: S,
    pub twist: Mat<S::Elem>,
}

impl<S: ScalarRing> TwistedMatRing<S> {
    pub fn new(ring: S, twist: Mat<S::Elem>) -> Result<Self> {
        if !twist.is_square() {
            return Err(Error::ShapeMismatch("twist must be square".into()));
        }
        Ok(Self { ring, twist })
    }

    pub fn size(&self) -> usize {
        self.twist.rows()
    }

    pub fn twisted_mult(&self, a: &Mat<S::Elem>, b: &Mat<S::Elem>) -> Result<Mat<S::Elem>> {
        a.mul(&self.ring, &self.twist)?.mul(&self.ring, b)
    }

    pub fn unit(&self, i: usize, j: usize) -> Mat<S::Elem> {
        Mat::unit(&self.ring, self.size(), i, j)
    }

    /// All matrix units `E_ij` in row-major order.
    pub fn units(&self) -> Vec<Mat<S::Elem>> {
        let l = self.size();
        (0..l * l).map(|k| self.unit(k / l, k % l)).collect()
    }
}

/// The map `r ↦ v·r·u` from `R_c` to `R_d`, valid when `c = u·d·v`.
#[derive(Debug, Clone, PartialEq)]
pub struct RcIso<S: ScalarRing> {
    pub ring: S,
    pub u: Mat<S::Elem>,
    pub v: Mat<S::Elem>,
}

impl<S: ScalarRing> RcIso<S> {
    pub fn apply(&self, r: &Mat<S::Elem>) -> Result<Mat<S::Elem>> {
        self.v.mul(&self.ring, r)?.mul(&self.ring, &self.u)
    }

    /// `f(a ·_c b) = f(a) ·_d f(b)` on every pair of `samples`.
    pub fn check_multiplicative(
        &self,
        from: &TwistedMatRing<S>,
        to: &TwistedMatRing<S>,
        samples: &[Mat<S::Elem>],
    ) -> Result<usize> {
        let images: Vec<_> = samples.iter().map(|s| self.apply(s)).collect::<Result<_>>()?;
        for (a, fa) in samples.iter().zip(&images) {
            for (b, fb) in samples.iter().zip(&images) {
                if self.apply(&from.twisted_mult(a, b)?)? != to.twisted_mult(fa, fb)? {
                    return Err(Error::Violation(format!("map not multiplicative at {a:?}, {b:?}")));
                }
            }
        }
        Ok(samples.len() * samples.len())
    }
}

/// Integer inverse of a unimodular matrix.
pub fn unimodular_inverse(m: &IntMatrix) -> Result<IntMatrix> {
    if !m.is_square() || !m.det().abs().is_one() {
        return Err(Error::NotInvertible("Z".into()));
    }
    let inv = mat_inverse_over_field(m, &Rationals)?;
    Ok(inv.map(|q| q.to_integer()))
}

/// `R_C → R_D`, `r ↦ V^{-1} r U^{-1}`, for the Smith form `D = U C V`.
pub fn snf_iso(c: &IntMatrix) -> Result<(RcIso<Integers>, IntMatrix)> {
    let s = snf(c);
    let iso = RcIso { ring: Integers, u: unimodular_inverse(&s.u)?, v: unimodular_inverse(&s.v)? };
    Ok((iso, s.d))
}

/// `C = I + mJ` of size `e`.
pub fn cartan_matrix(params: ModelParams) -> IntMatrix {
    let l = params.e() as usize;
    let m = params.m();
    let mut c = IntMatrix::zeros(&Integers, l, l);
    for i in 0..l {
        for j in 0..l {
            c.set(i, j, BigInt::from(if i == j { m + 1 } else { m }));
        }
    }
    c
}

/// Finite evidence that a matrix is an idempotent of `R_C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdempotentCertificate {
    pub element: IntMatrix,
    pub idempotent: bool,
    /// Indices (within the certified family) of members orthogonal to this one.
    pub orthogonal_to: Vec<usize>,
    /// `rank_Z {a ·_C X ·_C a}` over the matrix units `X`.
    pub corner_rank: Option<usize>,
}

impl IdempotentCertificate {
    pub fn is_primitive_witness(&self) -> bool {
        self.idempotent && self.corner_rank == Some(1)
    }
}

/// Rank of the corner `a ·_C R_C ·_C a`.
pub fn corner_rank(c: &IntMatrix, a: &IntMatrix) -> Result<usize> {
    let ring = TwistedMatRing::new(Integers, c.clone())?;
    let mut rows = Vec::new();
    for x in ring.units() {
        let y = ring.twisted_mult(&ring.twisted_mult(a, &x)?, a)?;
        rows.push(y.entries().to_vec());
    }
    Ok(IntMatrix::from_rows(rows).to_ring(&Rationals).rank(&Rationals))
}

/// Certify a family of integer matrices as pairwise orthogonal idempotents of `R_C`.
pub fn certify_family(c: &IntMatrix, family: &[IntMatrix]) -> Result<Vec<IdempotentCertificate>> {
    let ring = TwistedMatRing::new(Integers, c.clone())?;
    let zero = IntMatrix::zeros(&Integers, c.rows(), c.cols());
    family
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let idempotent = ring.twisted_mult(a, a)? == *a;
            let mut orthogonal_to = Vec::new();
            for (j, b) in family.iter().enumerate() {
                if i != j && ring.twisted_mult(a, b)? == zero && ring.twisted_mult(b, a)? == zero {
                    orthogonal_to.push(j);
                }
            }
            Ok(IdempotentCertificate {
                element: a.clone(),
                idempotent,
                orthogonal_to,
                corner_rank: Some(corner_rank(c, a)?),
            })
        })
        .collect()
}

/// `ẽ_i = V E_ii U` for every elementary divisor equal to 1, certified.
pub fn theorem_a_idempotents(c: &IntMatrix) -> Result<Vec<IdempotentCertificate>> {
    let s = snf(c);
    let l = c.rows();
    let family: Vec<IntMatrix> = (0..l.min(c.cols()))
        .filter(|&i| s.d.get(i, i).is_one())
        .map(|i| {
            let e = IntMatrix::unit(&Integers, l, i, i);
            s.v.mul(&Integers, &e)?.mul(&Integers, &s.u)
        })
        .collect::<Result<_>>()?;
    certify_family(c, &family)
}

/// Whether a certified family is complete: each member idempotent with a
/// rank-one corner, and orthogonal to all others.
pub fn family_is_certified(certs: &[IdempotentCertificate]) -> bool {
    certs
        .iter()
        .all(|c| c.is_primitive_witness() && c.orthogonal_to.len() + 1 == certs.len())
}

/// `ε_i = E_ii - E_li` for `i < l`.
pub fn epsilon_family(l: usize) -> Vec<IntMatrix> {
    (0..l.saturating_sub(1))
        .map(|i| {
            let mut m = IntMatrix::unit(&Integers, l, i, i);
            m.set(l - 1, i, -BigInt::one());
            m
        })
        .collect()
}

/// Rank of the Smith form modulo `p` and the number of unit divisors.
pub fn maximality_ranks(c: &IntMatrix, p: u64) -> Result<(usize, usize)> {
    let s = snf(c);
    let field = crate::exactarith::PrimeField::new(p)?;
    Ok((s.d.to_ring(&field).rank(&field), s.unit_divisors()))
}

/// `1_{kPr} = C^{-1}` in matrix coordinates.
pub fn pr_identity_matrix<F: ScalarField>(c: &IntMatrix, field: &F) -> Result<Mat<F::Elem>> {
    mat_inverse_over_field(c, field)
}

/// Matrix coordinates of an element supported on projectives.
pub fn pr_matrix<S: ScalarRing>(x: &RingElement<S>) -> Result<Mat<S::Elem>> {
    let l = x.params().e() as usize;
    let ring = x.ring().clone();
    let mut m = Mat::zeros(&ring, l, l);
    for (b, c) in x.terms() {
        match *b {
            BasisElement::ProjPair { lambda, mu } => m.set(lambda as usize, mu as usize, c.clone()),
            _ => return Err(Error::Violation(format!("{b} is not projective"))),
        }
    }
    Ok(m)
}

/// Element of `kPr` with the given matrix coordinates.
pub fn pr_element<S: ScalarRing>(params: ModelParams, ring: S, m: &Mat<S::Elem>) -> RingElement<S> {
    let mut terms = Vec::new();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            terms.push((BasisElement::p(i as u64, j as u64), m.get(i, j).clone()));
        }
    }
    RingElement::from_terms(params, ring, terms)
}

pub fn pr_identity_over_k<F: ScalarField>(params: ModelParams, field: F) -> Result<RingElement<F>> {
    let inv = pr_identity_matrix(&cartan_matrix(params), &field)?;
    Ok(pr_element(params, field, &inv))
}

/// `ε_i = Σ_j c'_ij [P_ij]`, one per row of `C^{-1}`.
pub fn pr_primitive_decomposition_over_k<F: ScalarField>(params: ModelParams, field: F) -> Result<Vec<RingElement<F>>> {
    let inv = pr_identity_matrix(&cartan_matrix(params), &field)?;
    let l = inv.rows();
    Ok((0..l)
        .map(|i| {
            let mut m = Mat::zeros(&field, l, l);
            for j in 0..l {
                m.set(i, j, inv.get(i, j).clone());
            }
            pr_element(params, field.clone(), &m)
        })
        .collect())
}

/// `1_{kPr}` commutes with every basis element of `kT^Δ`.
pub fn centrality_check_pr_identity<F: ScalarField>(ring: &TRing, field: F) -> Result<bool> {
    let params = ring.params();
    if field.characteristic() == params.p() {
        return Err(Error::CharIsP(params.p()));
    }
    ring.is_central(&pr_identity_over_k(params, field)?)
}

/// `kPr → Mat_l(k)`, `r ↦ rC`, with inverse `s ↦ sC^{-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldMatrixIso<F: ScalarField> {
    pub field: F,
    pub c: Mat<F::Elem>,
    pub c_inv: Mat<F::Elem>,
}

impl<F: ScalarField> FieldMatrixIso<F> {
    pub fn new(c: &IntMatrix, field: F) -> Result<Self> {
        let c_inv = mat_inverse_over_field(c, &field)?;
        Ok(Self { c: c.to_ring(&field), c_inv, field })
    }

    pub fn forward(&self, r: &Mat<F::Elem>) -> Result<Mat<F::Elem>> {
        r.mul(&self.field, &self.c)
    }

    pub fn backward(&self, s: &Mat<F::Elem>) -> Result<Mat<F::Elem>> {
        s.mul(&self.field, &self.c_inv)
    }

    /// Multiplicativity on all pairs of matrix units and exactness of the inverse.
    pub fn check(&self) -> Result<usize> {
        let from = TwistedMatRing::new(self.field.clone(), self.c.clone())?;
        let l = from.size();
        let to = TwistedMatRing::new(self.field.clone(), Mat::identity(&self.field, l))?;
        let units = from.units();
        let iso = RcIso { ring: self.field.clone(), u: self.c.clone(), v: Mat::identity(&self.field, l) };
        let count = iso.check_multiplicative(&from, &to, &units)?;
        for x in &units {
            if self.backward(&self.forward(x)?)? != *x || self.forward(&self.backward(x)?)? != *x {
                return Err(Error::Violation("matrix identification is not inverted exactly".into()));
            }
        }
        Ok(count)
    }
}

/// `1_{kPr}` has integer coordinates exactly when every elementary divisor is 1.
pub fn integrality_criterion(c: &IntMatrix) -> Result<(bool, bool)> {
    let inv = mat_inverse_over_field(c, &Rationals)?;
    let integral = inv.entries().iter().all(|q| q.is_integer());
    let all_units = snf(c).diagonal().iter().all(|d| d.is_one());
    Ok((integral, all_units))
}

/// Zero test on a matrix over the integers.
pub fn is_zero_matrix(m: &IntMatrix) -> bool {
    m.entries().iter().all(Zero::is_zero)
}
