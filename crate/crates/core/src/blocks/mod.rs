//! Central idempotents and block structure of `k ⊗ T^Δ`.
//!
//! For `char k ≠ p` the ring splits as `Mat_e(k) × ∏_i k[Γ_i]`, the factors
//! cut out by `f_i = e_i - e_{i-1}` with `e_i` the identity of `T_{≤i}`.
//! Everything claimed here is recomputed and checked, never assumed.

mod gamma;
mod scan;
mod semisimple;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

pub use gamma::{CyclicDecomposition, GammaGroup};
pub use scan::{rational_central_idempotent_scan, ScanReport, DEFAULT_SCAN_BOUND};
pub use semisimple::{aut_invertible, semisimplicity_decide, Decision, SemisimplicityCertificate};

use crate::cartan::{cartan_matrix, pr_matrix, pr_primitive_decomposition_over_k, FieldMatrixIso};
use crate::exactarith::{Integers, Mat, Rationals, ScalarField};
use crate::groupmodel::ModelParams;
use crate::tring::{BasisElement, RingElement, TRing};
use crate::{Error, Result, Strategy};

fn violation<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Violation(msg.into()))
}

fn ratio<F: ScalarField>(field: &F, p: u64, num: i64, den: u64) -> Result<F::Elem> {
    field
        .from_ratio(&BigInt::from(num), &BigInt::from(den))
        .ok_or(Error::CharIsP(p))
}

fn require_char<F: ScalarField>(params: ModelParams, field: &F) -> Result<()> {
    if field.characteristic() == params.p() {
        return Err(Error::CharIsP(params.p()));
    }
    Ok(())
}

/// `e_0 = Σ_λ P(λ,λ) - (m/p^n) Σ_{λ,μ} P(λ,μ)`, and for `i ≥ 1`
/// `e_i = M(i,1,0) + m'_i Σ_λ M(i,1,λ)` with `m'_i = -m_i/p^{n-i}`.
pub fn e_i<F: ScalarField>(ring: &TRing, field: F, i: u32) -> Result<RingElement<F>> {
    let params = ring.params();
    let (p, n, e) = (params.p(), params.n(), params.e());
    require_char(params, &field)?;
    if i > n {
        return Err(Error::BadLevel { level: i, max: n });
    }
    let mut x = ring.zero(field.clone());
    if i == 0 {
        let c = ratio(&field, p, -(params.m() as i64), params.defect_order())?;
        for l in 0..e {
            x.add_term(BasisElement::p(l, l), &field.one());
            for m in 0..e {
                x.add_term(BasisElement::p(l, m), &c);
            }
        }
    } else {
        let c = ratio(&field, p, -(params.m_level(i) as i64), p.pow(n - i))?;
        x.add_term(BasisElement::m(i, 1, 0), &field.one());
        for l in 0..e {
            x.add_term(BasisElement::m(i, 1, l), &c);
        }
    }
    Ok(x)
}

/// `m_i - m_i/p^{n-i} - m_i² e/p^{n-i} = 0` as rationals, for every level.
pub fn claim_identity(params: ModelParams) -> Result<usize> {
    let (p, n, e) = (params.p(), params.n(), params.e());
    for i in 0..=n {
        let mi = BigRational::from_integer(params.m_level(i).into());
        let q = BigRational::from_integer(p.pow(n - i).into());
        let ee = BigRational::from_integer(e.into());
        let v = &mi - &mi / &q - &mi * &mi * ee / &q;
        if !v.is_zero() {
            return violation(format!("level {i}: identity evaluates to {v}"));
        }
    }
    Ok(n as usize + 1)
}

/// Central decomposition with every invariant recomputed.
#[derive(Debug, Clone)]
pub struct BlockDecomposition<F: ScalarField> {
    pub field: F,
    pub e_list: Vec<RingElement<F>>,
    pub f_list: Vec<RingElement<F>>,
    pub dims: Vec<usize>,
    pub checks: usize,
}

/// Expected block dimensions `e², p^0(p-1), …, p^{n-1}(p-1)`.
pub fn expected_dims(params: ModelParams) -> Vec<usize> {
    let mut v = vec![(params.e() * params.e()) as usize];
    v.extend((1..=params.n()).map(|i| params.aut_order_level(i) as usize));
    v
}

fn span_rank<F: ScalarField>(ring: &TRing, field: &F, xs: &[RingElement<F>]) -> Result<usize> {
    if xs.is_empty() {
        return Ok(0);
    }
    let rows = xs.iter().map(|x| ring.to_coords(x)).collect::<Result<Vec<_>>>()?;
    Ok(Mat::from_rows(rows).rank(field))
}

/// Dimension of the two-sided ideal `kT^Δ·f`.
fn block_dim<F: ScalarField>(ring: &TRing, f: &RingElement<F>) -> Result<usize> {
    let field = f.ring().clone();
    let images = ring
        .basis()
        .iter()
        .map(|b| ring.mult(&ring.element(field.clone(), *b), f))
        .collect::<Result<Vec<_>>>()?;
    span_rank(ring, &field, &images)
}

/// Checks that `e` is a two-sided identity on each of `basis`.
fn acts_as_identity<F: ScalarField>(ring: &TRing, e: &RingElement<F>, basis: &[BasisElement]) -> Result<bool> {
    for b in basis {
        let x = ring.element(e.ring().clone(), *b);
        if ring.mult(e, &x)? != x || ring.mult(&x, e)? != x {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn central_decomposition<F: ScalarField>(ring: &TRing, field: F) -> Result<BlockDecomposition<F>> {
    let params = ring.params();
    require_char(params, &field)?;
    let n = params.n();
    let mut checks = claim_identity(params)?;
    let e_list = (0..=n).map(|i| e_i(ring, field.clone(), i)).collect::<Result<Vec<_>>>()?;
    for (i, e) in e_list.iter().enumerate() {
        let i = i as u32;
        if ring.mult(e, e)? != *e {
            return violation(format!("e_{i} is not idempotent"));
        }
        if !acts_as_identity(ring, e, &ring.level_basis(i)?)? {
            return violation(format!("e_{i} is not the identity of T_{i}"));
        }
        if !acts_as_identity(ring, e, &ring.ideal_le(i)?)? {
            return violation(format!("e_{i} is not the identity of T_<={i}"));
        }
        if !ring.is_central(e)? {
            return violation(format!("e_{i} is not central"));
        }
        checks += 4;
    }
    if e_list[n as usize] != ring.one(field.clone()) {
        return violation("e_n differs from the identity");
    }
    for (i, a) in e_list.iter().enumerate() {
        for (j, b) in e_list.iter().enumerate() {
            if ring.mult(a, b)? != e_list[i.min(j)] {
                return violation(format!("e_{i} e_{j} differs from e_{}", i.min(j)));
            }
            checks += 1;
        }
    }
    let mut f_list = vec![e_list[0].clone()];
    for i in 1..=n as usize {
        f_list.push(e_list[i].sub(&e_list[i - 1])?);
    }
    let mut sum = ring.zero(field.clone());
    for (i, a) in f_list.iter().enumerate() {
        sum = sum.add(a)?;
        if !ring.is_central(a)? {
            return violation(format!("f_{i} is not central"));
        }
        for (j, b) in f_list.iter().enumerate() {
            let prod = ring.mult(a, b)?;
            let expect = if i == j { a.clone() } else { ring.zero(field.clone()) };
            if prod != expect {
                return violation(format!("f_{i} f_{j} is wrong"));
            }
            checks += 1;
        }
    }
    if sum != ring.one(field.clone()) {
        return violation("f_i do not sum to 1");
    }
    let dims = f_list.iter().map(|f| block_dim(ring, f)).collect::<Result<Vec<_>>>()?;
    if dims != expected_dims(params) || dims.iter().sum::<usize>() != ring.rank() {
        return violation(format!("block dimensions {dims:?}, expected {:?}", expected_dims(params)));
    }
    Ok(BlockDecomposition { field, e_list, f_list, dims, checks })
}

/// The map `k[Γ_i] → kT^Δ f_i`, `g ↦ label^{-1}(g·d_i)·f_i`.
#[derive(Debug, Clone)]
pub struct BlockMap<F: ScalarField> {
    pub group: GammaGroup,
    pub field: F,
    pub f: RingElement<F>,
    /// `c_i = (1,1) + m_i Σ_λ (1,λ)` in group-algebra coordinates.
    pub c: Vec<F::Elem>,
    /// `d_i = (1,1) - m_i p^{-(n-i)} Σ_λ (1,λ)`.
    pub d: Vec<F::Elem>,
    pub images: Vec<RingElement<F>>,
}

impl<F: ScalarField> BlockMap<F> {
    pub fn new(ring: &TRing, field: F, f: RingElement<F>, i: u32) -> Result<Self> {
        let params = ring.params();
        require_char(params, &field)?;
        let group = GammaGroup::new(ring.model(), i)?;
        let mi = params.m_level(i);
        let mut c = group.algebra_unit(&field, group.identity());
        let mut d = c.clone();
        let cm = field.from_i64(mi as i64);
        let dm = ratio(&field, params.p(), -(mi as i64), params.p().pow(params.n() - i))?;
        for l in 0..params.e() {
            let g = group.element(0, l);
            c[g] = field.add(&c[g], &cm);
            d[g] = field.add(&d[g], &dm);
        }
        let images = (0..group.order())
            .map(|g| {
                let gd = group.algebra_mul(&field, &group.algebra_unit(&field, g), &d);
                let x = Self::unlabel_coords(ring, &group, &field, &gd);
                ring.mult(&x, &f)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { group, field, f, c, d, images })
    }

    fn unlabel_coords(ring: &TRing, group: &GammaGroup, field: &F, v: &[F::Elem]) -> RingElement<F> {
        let terms: Vec<_> = v.iter().enumerate().map(|(g, a)| (group.label(g), a.clone())).collect();
        RingElement::from_terms(ring.params(), field.clone(), terms)
    }

    /// Image of a group-algebra element.
    pub fn apply(&self, ring: &TRing, v: &[F::Elem]) -> Result<RingElement<F>> {
        let mut acc = ring.zero(self.field.clone());
        for (g, a) in v.iter().enumerate() {
            if !self.field.is_zero(a) {
                acc = acc.add(&self.images[g].scale(a))?;
            }
        }
        Ok(acc)
    }
}

/// Counters from a verified block isomorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockIsoCertificate {
    pub level: u32,
    pub dim: usize,
    pub pairs_checked: usize,
    pub rank: usize,
}

/// Verify `k[Γ_i] ≅ kT^Δ f_i` and `kT_i ≅ kT^Δ f_i` (via `a ↦ a f_i`).
pub fn block_iso_i<F: ScalarField>(
    ring: &TRing,
    dec: &BlockDecomposition<F>,
    i: u32,
    strategy: Strategy,
) -> Result<(BlockMap<F>, BlockIsoCertificate)> {
    let field = dec.field.clone();
    let f = dec.f_list.get(i as usize).cloned().ok_or(Error::BadLevel { level: i, max: ring.params().n() })?;
    let map = BlockMap::new(ring, field.clone(), f.clone(), i)?;
    let group = &map.group;
    let cd = group.algebra_mul(&field, &map.c, &map.d);
    if cd != group.algebra_unit(&field, group.identity()) {
        return violation(format!("c_{i} d_{i} is not the identity of k[Γ_{i}]"));
    }
    if map.images[group.identity()] != f {
        return violation(format!("identity of Γ_{i} does not map to f_{i}"));
    }
    let order = group.order();
    let results: Vec<Result<()>> = strategy.map_range(0..order * order, |gh| {
        let (g, h) = (gh / order, gh % order);
        if ring.mult(&map.images[g], &map.images[h])? != map.images[group.mul(g, h)] {
            return violation(format!("block map {i} not multiplicative at ({g},{h})"));
        }
        Ok(())
    });
    results.into_iter().collect::<Result<Vec<()>>>()?;
    for x in &map.images {
        if ring.mult(x, &f)? != *x {
            return violation(format!("image outside kT f_{i}"));
        }
    }
    let rank = span_rank(ring, &field, &map.images)?;
    let level: Vec<RingElement<F>> = ring
        .level_basis(i)?
        .iter()
        .map(|b| ring.mult(&ring.element(field.clone(), *b), &f))
        .collect::<Result<_>>()?;
    let level_basis = ring.level_basis(i)?;
    let results: Vec<Result<()>> = strategy.map_range(0..level.len() * level.len(), |ab| {
        let (a, b) = (ab / level.len(), ab % level.len());
        let prod = ring.mult(&ring.element(field.clone(), level_basis[a]), &ring.element(field.clone(), level_basis[b]))?;
        if ring.mult(&prod, &f)? != ring.mult(&level[a], &level[b])? {
            return violation(format!("a -> a f_{i} not multiplicative"));
        }
        Ok(())
    });
    results.into_iter().collect::<Result<Vec<()>>>()?;
    let level_rank = span_rank(ring, &field, &level)?;
    let dim = dec.dims[i as usize];
    if rank != order || level_rank != order || dim != order {
        return violation(format!("block {i}: ranks {rank}, {level_rank}, dimension {dim}, |Γ| = {order}"));
    }
    let pairs_checked = order * order + level.len() * level.len();
    Ok((map, BlockIsoCertificate { level: i, dim, pairs_checked, rank }))
}

/// Verify `kT^Δ f_0 ≅ Mat_e(k)` through `x ↦ (matrix of x)·C`.
pub fn block_iso_0<F: ScalarField>(ring: &TRing, dec: &BlockDecomposition<F>) -> Result<BlockIsoCertificate> {
    let params = ring.params();
    let field = dec.field.clone();
    let c = cartan_matrix(params);
    let iso = FieldMatrixIso::new(&c, field.clone())?;
    let mut pairs = iso.check()?;
    let projectives = ring.ideal_le(0)?;
    let l = params.e() as usize;
    for a in &projectives {
        for b in &projectives {
            let (x, y) = (ring.element(field.clone(), *a), ring.element(field.clone(), *b));
            let lhs = iso.forward(&pr_matrix(&ring.mult(&x, &y)?)?)?;
            let rhs = iso.forward(&pr_matrix(&x)?)?.mul(&field, &iso.forward(&pr_matrix(&y)?)?)?;
            if lhs != rhs {
                return violation(format!("block 0 map not multiplicative at {a}, {b}"));
            }
            pairs += 1;
        }
    }
    let f0 = &dec.f_list[0];
    if iso.forward(&pr_matrix(f0)?)? != Mat::identity(&field, l) {
        return violation("f_0 does not map to the identity matrix");
    }
    let images: Vec<Vec<F::Elem>> = projectives
        .iter()
        .map(|b| Ok(iso.forward(&pr_matrix(&ring.element(field.clone(), *b))?)?.entries().to_vec()))
        .collect::<Result<_>>()?;
    let rank = Mat::from_rows(images).rank(&field);
    for eps in pr_primitive_decomposition_over_k(params, field.clone())? {
        let m = iso.forward(&pr_matrix(&eps)?)?;
        if m.mul(&field, &m)? != m || m.rank(&field) != 1 {
            return violation("primitive idempotent of kPr is not a rank-one idempotent matrix");
        }
    }
    if rank != l * l || dec.dims[0] != l * l {
        return violation(format!("block 0 rank {rank}, expected {}", l * l));
    }
    Ok(BlockIsoCertificate { level: 0, dim: l * l, pairs_checked: pairs, rank })
}

/// Integral decomposition of 1: `ε_i = P(i,i) - P(l-1,i)` for `i < l-1`,
/// then the residual `1 - Σ ε_i`.
#[derive(Debug, Clone)]
pub struct TheoremCDecomposition {
    pub members: Vec<RingElement<Integers>>,
    /// `rank_Z(ε_i T^Δ ε_i)` for each `ε_i`; the residual is not certified.
    pub corner_ranks: Vec<usize>,
    pub outside_pr: usize,
}

pub fn theorem_c_decomposition(ring: &TRing) -> Result<TheoremCDecomposition> {
    let params = ring.params();
    let l = params.e();
    let mut members: Vec<RingElement<Integers>> = (0..l.saturating_sub(1))
        .map(|i| {
            RingElement::from_terms(
                params,
                Integers,
                [(BasisElement::p(i, i), BigInt::from(1)), (BasisElement::p(l - 1, i), BigInt::from(-1))],
            )
        })
        .collect();
    let mut residual = ring.one(Integers);
    for m in &members {
        residual = residual.sub(m)?;
    }
    let corner_ranks = members
        .iter()
        .map(|m| corner_rank_in_ring(ring, m))
        .collect::<Result<Vec<_>>>()?;
    members.push(residual);
    let mut sum = ring.zero(Integers);
    for (i, a) in members.iter().enumerate() {
        sum = sum.add(a)?;
        for (j, b) in members.iter().enumerate() {
            let prod = ring.mult(a, b)?;
            let expect = if i == j { a.clone() } else { ring.zero(Integers) };
            if prod != expect {
                return violation(format!("decomposition members {i}, {j} fail"));
            }
        }
    }
    if sum != ring.one(Integers) {
        return violation("decomposition does not sum to 1");
    }
    if corner_ranks.iter().any(|&r| r != 1) {
        return violation(format!("corner ranks {corner_ranks:?}"));
    }
    let outside_pr = members.iter().filter(|m| m.support().any(|b| !b.is_projective())).count();
    if outside_pr > 1 {
        return violation(format!("{outside_pr} members lie outside Pr"));
    }
    Ok(TheoremCDecomposition { members, corner_ranks, outside_pr })
}

/// `rank_Z(x·T^Δ·x)`, computed over `Q`.
pub fn corner_rank_in_ring(ring: &TRing, x: &RingElement<Integers>) -> Result<usize> {
    let xq = x.map_scalars(Rationals, |c| BigRational::from_integer(c.clone()));
    let corners = ring
        .basis()
        .iter()
        .map(|b| ring.mult(&ring.mult(&xq, &ring.element(Rationals, *b))?, &xq))
        .collect::<Result<Vec<_>>>()?;
    span_rank(ring, &Rationals, &corners)
}

/// Convenience: the full decomposition over `Q`.
pub fn rational_decomposition(ring: &TRing) -> Result<BlockDecomposition<Rationals>> {
    central_decomposition(ring, Rationals)
}
