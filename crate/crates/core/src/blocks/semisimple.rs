//! Deciding semisimplicity of `k ⊗ T^Δ` for `k = Q` or `F_q`.
//!
//! The decision is reached from certificates alone: a nondegenerate trace form,
//! or an explicit nonzero central nilpotent (or a nilpotent in a commutative
//! quotient). Invertibility of `|Aut D|` is only reported alongside.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{e_i, BlockMap, GammaGroup};
use crate::exactarith::{PrimeField, Rationals, ScalarField, ScalarRing};
use crate::groupmodel::ModelParams;
use crate::tring::{BasisElement, RingElement, TRing};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Decision {
    Semisimple,
    NotSemisimple,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SemisimplicityCertificate {
    /// Regular trace form of full rank; the determinant is given over `Q`.
    NondegenerateTraceForm { rank: usize, determinant: Option<BigInt> },
    /// Central `z ≠ 0` with `z² = 0`, the image of `Σ_{γ∈Γ_i} γ`.
    BlockNilpotent { level: u32, element: Vec<(BasisElement, String)> },
    /// `x ≠ 0` in `k[Γ_n] ≅ kT^Δ/kT^Δ_{≤n-1}` with `x^{p^s} = 0`.
    QuotientNilpotent { power: u64, element: Vec<(BasisElement, String)> },
    /// `J = Σ_{λ,μ} P(λ,μ)`, central with `J² = 0`.
    ProjectiveNilpotent { element: Vec<(BasisElement, String)> },
    /// No step applied; the trace form had the given rank.
    None { trace_form_rank: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SemisimplicityReport {
    /// Characteristic, 0 for `Q`.
    pub q: u64,
    pub decision: Decision,
    pub certificate: SemisimplicityCertificate,
    /// Whether `|Aut D| = p^{n-1}(p-1)` is invertible in the field.
    pub aut_invertible: bool,
}

impl SemisimplicityReport {
    pub fn matches_criterion(&self) -> bool {
        match self.decision {
            Decision::Semisimple => self.aut_invertible,
            Decision::NotSemisimple => !self.aut_invertible,
            Decision::Inconclusive => false,
        }
    }
}

pub fn aut_invertible(params: ModelParams, q: u64) -> bool {
    q == 0 || !params.aut_order().is_multiple_of(q)
}

fn central_square_zero<F: ScalarField>(ring: &TRing, z: &RingElement<F>) -> Result<bool> {
    Ok(!z.is_zero() && ring.mult(z, z)?.is_zero() && ring.is_central(z)?)
}

/// Step 2: a block `i` with `q | |Γ_i|` gives the central nilpotent `φ_i(Σγ)`.
fn block_nilpotent(ring: &TRing, field: PrimeField) -> Result<Option<SemisimplicityCertificate>> {
    let params = ring.params();
    for i in (1..=params.n()).rev() {
        let group = GammaGroup::new(ring.model(), i)?;
        if !(group.order() as u64).is_multiple_of(field.modulus()) {
            continue;
        }
        let f = e_i(ring, field, i)?.sub(&e_i(ring, field, i - 1)?)?;
        let map = BlockMap::new(ring, field, f, i)?;
        let z = map.apply(ring, &vec![field.one(); group.order()])?;
        if central_square_zero(ring, &z)? {
            return Ok(Some(SemisimplicityCertificate::BlockNilpotent { level: i, element: z.render_terms() }));
        }
    }
    Ok(None)
}

/// Step 3: Frobenius kernel of `k[Γ_n]`, checked inside the quotient ring.
fn quotient_nilpotent(ring: &TRing, field: PrimeField) -> Result<Option<SemisimplicityCertificate>> {
    let params = ring.params();
    let n = params.n();
    let group = GammaGroup::new(ring.model(), n)?;
    let order = group.order();
    let p = field.modulus();
    let mut power = 1u64;
    while power < order as u64 {
        power *= p;
    }
    let frob: Vec<usize> = (0..order).map(|g| group.pow(g, power)).collect();
    let Some((g, h)) = (0..order)
        .flat_map(|g| (g + 1..order).map(move |h| (g, h)))
        .find(|&(g, h)| frob[g] == frob[h])
    else {
        return Ok(None);
    };
    let lift = |k: usize| ring.element(field, group.label(k));
    let x = lift(g).sub(&lift(h))?;
    let mut y = x.clone();
    let mut k = 1;
    while k < power {
        y = ring.quotient_mult(n - 1, &y, &x)?;
        k += 1;
    }
    if y.is_zero() && !x.is_zero() {
        return Ok(Some(SemisimplicityCertificate::QuotientNilpotent { power, element: x.render_terms() }));
    }
    Ok(None)
}

/// `J = Σ P(λ,μ)`; `J² = e·p^n·J`.
fn projective_nilpotent(ring: &TRing, field: PrimeField) -> Result<Option<SemisimplicityCertificate>> {
    let e = ring.params().e();
    let mut j = ring.zero(field);
    for l in 0..e {
        for m in 0..e {
            j.add_term(BasisElement::p(l, m), &field.one());
        }
    }
    if central_square_zero(ring, &j)? {
        return Ok(Some(SemisimplicityCertificate::ProjectiveNilpotent { element: j.render_terms() }));
    }
    Ok(None)
}

/// Decide semisimplicity over `Q` (`q = 0`) or `F_q`.
pub fn semisimplicity_decide(ring: &TRing, q: u64) -> Result<SemisimplicityReport> {
    let params = ring.params();
    let aut = aut_invertible(params, q);
    let done = |decision, certificate| Ok(SemisimplicityReport { q, decision, certificate, aut_invertible: aut });
    let rank = ring.rank();
    if q == 0 {
        let det = ring.integer_gram().det();
        if !det.is_zero() {
            return done(
                Decision::Semisimple,
                SemisimplicityCertificate::NondegenerateTraceForm { rank, determinant: Some(det) },
            );
        }
        let gram_rank = ring.trace_form_gram(&Rationals).rank(&Rationals);
        return done(Decision::Inconclusive, SemisimplicityCertificate::None { trace_form_rank: gram_rank });
    }
    let field = PrimeField::new(q)?;
    let gram_rank = ring.trace_form_gram(&field).rank(&field);
    if gram_rank == rank {
        return done(
            Decision::Semisimple,
            SemisimplicityCertificate::NondegenerateTraceForm { rank, determinant: None },
        );
    }
    let found = if q != params.p() {
        block_nilpotent(ring, field)?
    } else {
        match quotient_nilpotent(ring, field)? {
            Some(c) => Some(c),
            None => projective_nilpotent(ring, field)?,
        }
    };
    match found {
        Some(c) => done(Decision::NotSemisimple, c),
        None => done(Decision::Inconclusive, SemisimplicityCertificate::None { trace_form_rank: gram_rank }),
    }
}
