//! Multiplication recomputed from the tensor-product Mackey formula.
//!
//! A product `[Ind_X(χ)]·[Ind_Y(ψ)]` is the sum over `t ∈ p_2(X)\G/p_1(Y)` of
//! `Ind_{X * (t,1)Y}(χ * ψ^t)`, a summand vanishing when the characters
//! disagree on `k_2(X) ∩ k_1((t,1)Y)`. Every summand is brought to a standard
//! shape by conjugation and read off as basis elements. Multiplicities come
//! from the coset enumeration alone.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::exactarith::Integers;
use crate::groupmodel::{GElement, GroupModel, SubgroupGG, SubgroupTag, GG};
use crate::tring::{BasisElement, RingElement, TRing};
use crate::{Error, Result, Strategy};

/// Module induced from a subgroup of `G×G` with a linear character.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedModule {
    pub subgroup: SubgroupGG,
    pub multiplicity: u64,
}

/// Vertex subgroup and character of the module behind a basis element.
pub fn subgroup_of_basis(model: &GroupModel, b: BasisElement) -> SubgroupGG {
    match b {
        BasisElement::ProjPair { lambda, mu } => model.e_times_e(lambda, mu),
        BasisElement::NonProj { level, alpha, lambda } => model.twisted_diag_pe(level, alpha, Some(lambda)),
    }
}

fn zeta(model: &GroupModel) -> GElement {
    GElement { x: 0, r: model.e_generator() }
}

fn char_at(z: &SubgroupGG, g: GG) -> Result<u64> {
    z.character(&g).ok_or_else(|| Error::UnrecognizedShape {
        order: z.order(),
        detail: format!("missing element {g:?}"),
    })
}

/// Decompose `Ind_Z(χ)` for `Z` in one of the standard shapes.
pub fn classify_induced(model: &GroupModel, z: &SubgroupGG) -> Result<Vec<(BasisElement, u64)>> {
    let e = model.e();
    let id = model.identity();
    let zt = zeta(model);
    let mut out = Vec::new();
    match z.tag {
        SubgroupTag::ExE => {
            let lambda = char_at(z, (zt, id))?;
            let mu = model.char_neg(char_at(z, (id, zt))?);
            out.push((BasisElement::p(lambda, mu), 1));
        }
        SubgroupTag::ExOne => {
            let lambda = char_at(z, (zt, id))?;
            out.extend((0..e).map(|nu| (BasisElement::p(lambda, nu), 1)));
        }
        SubgroupTag::OneE => {
            let mu = model.char_neg(char_at(z, (id, zt))?);
            out.extend((0..e).map(|nu| (BasisElement::p(nu, mu), 1)));
        }
        SubgroupTag::TwistedDiagPE { level, alpha } => {
            let rep = model.canonical_coset(level, alpha)?.rep;
            let lambda = char_at(z, (zt, zt))?;
            out.push((BasisElement::m(level, rep, lambda), 1));
        }
        SubgroupTag::TwistedDiagP { level, alpha } => {
            if z.elements.values().any(|&v| v != 0) {
                return Err(Error::UnrecognizedShape {
                    order: z.order(),
                    detail: "nontrivial character on a p-group".into(),
                });
            }
            let rep = model.canonical_coset(level, alpha)?.rep;
            out.extend((0..e).map(|nu| (BasisElement::m(level, rep, nu), 1)));
        }
        SubgroupTag::Explicit => {
            return Err(Error::UnrecognizedShape { order: z.order(), detail: "no standard shape".into() })
        }
    }
    Ok(out)
}

/// Conjugate `z` into a standard shape: first by the computed `D×D`
/// conjugator, then by exhaustive search over `D×D`, and with `full_search`
/// over all of `G×G`.
pub fn canonicalize(model: &GroupModel, z: SubgroupGG, full_search: bool) -> Result<SubgroupGG> {
    if z.tag != SubgroupTag::Explicit {
        return Ok(z);
    }
    let y = model.conj_subgroup(model.straightening_conjugator(&z), &z);
    if y.tag != SubgroupTag::Explicit {
        return Ok(y);
    }
    let d: Vec<GElement> = model.d_sub(model.params().n());
    for &u in &d {
        for &v in &d {
            let y = model.conj_subgroup((u, v), &z);
            if y.tag != SubgroupTag::Explicit {
                return Ok(y);
            }
        }
    }
    if full_search {
        let els = model.elements();
        for &u in &els {
            for &v in &els {
                let y = model.conj_subgroup((u, v), &z);
                if y.tag != SubgroupTag::Explicit {
                    return Ok(y);
                }
            }
        }
    }
    Err(Error::UnrecognizedShape { order: z.order(), detail: format!("{:?}", z.elements.keys().take(4).collect::<Vec<_>>()) })
}

/// Summand of the Mackey formula at the representative `t`, or `None` when it vanishes.
pub fn summand(
    model: &GroupModel,
    x: &SubgroupGG,
    y: &SubgroupGG,
    t: GElement,
    full_search: bool,
) -> Result<Option<InducedModule>> {
    let yt = model.conj_subgroup((t, model.identity()), y);
    if model.tensor_vanishes(x, &yt) {
        return Ok(None);
    }
    let z = canonicalize(model, model.star(x, &yt)?, full_search)?;
    Ok(Some(InducedModule { subgroup: z, multiplicity: 1 }))
}

/// Product of two basis elements from coset enumeration; `pick` chooses the
/// representative inside each double coset given the canonical one.
pub fn oracle_mult_with(
    model: &GroupModel,
    a: BasisElement,
    b: BasisElement,
    full_search: bool,
    pick: impl Fn(GElement, &[GElement], &[GElement]) -> GElement,
) -> Result<Vec<(BasisElement, u64)>> {
    let x = subgroup_of_basis(model, a);
    let y = subgroup_of_basis(model, b);
    let (h, k) = (x.p2(), y.p1());
    let mut acc: BTreeMap<BasisElement, u64> = BTreeMap::new();
    for coset in model.double_cosets_of(&h, &k) {
        let t = pick(coset.rep, &h, &k);
        if let Some(m) = summand(model, &x, &y, t, full_search)? {
            for (c, k) in classify_induced(model, &m.subgroup)? {
                *acc.entry(c).or_default() += k * m.multiplicity;
            }
        }
    }
    Ok(acc.into_iter().collect())
}

/// Independent product of two basis elements.
pub fn oracle_mult(model: &GroupModel, a: BasisElement, b: BasisElement) -> Result<RingElement<Integers>> {
    let terms = oracle_mult_with(model, a, b, false, |t, _, _| t)?;
    Ok(RingElement::from_terms(
        model.params(),
        Integers,
        terms.into_iter().map(|(c, k)| (c, BigInt::from(k))),
    ))
}

/// Counters from a full-table comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct OracleReport {
    pub products: usize,
    pub cosets: usize,
}

/// Compare the oracle with the closed-form table on every ordered basis pair.
pub fn check_table(ring: &TRing, strategy: Strategy) -> Result<OracleReport> {
    let model = ring.model();
    let rank = ring.rank();
    let basis = ring.basis();
    let per: Vec<Result<usize>> = strategy.map_range(0..rank * rank, |ab| {
        let (a, b) = (ab / rank, ab % rank);
        let oracle = oracle_mult_with(model, basis[a], basis[b], false, |t, _, _| t)?;
        let closed: Vec<(BasisElement, u64)> = ring.product(a, b).iter().map(|&(c, k)| (basis[c], k)).collect();
        if oracle != closed {
            return Err(Error::Violation(format!(
                "{} * {}: oracle {:?}, closed form {:?}",
                basis[a], basis[b], oracle, closed
            )));
        }
        let x = subgroup_of_basis(model, basis[a]);
        let y = subgroup_of_basis(model, basis[b]);
        Ok(model.double_cosets_of(&x.p2(), &y.p1()).len())
    });
    let mut report = OracleReport::default();
    for r in per {
        report.products += 1;
        report.cosets += r?;
    }
    Ok(report)
}

/// Replace every double-coset representative by the largest member of its
/// coset and recompute the table.
pub fn check_representative_independence(ring: &TRing, strategy: Strategy) -> Result<usize> {
    let model = ring.model();
    let rank = ring.rank();
    let basis = ring.basis();
    let per: Vec<Result<()>> = strategy.map_range(0..rank * rank, |ab| {
        let (a, b) = (ab / rank, ab % rank);
        let largest = |t: GElement, h: &[GElement], k: &[GElement]| {
            h.iter()
                .flat_map(|&u| k.iter().map(move |&v| (u, v)))
                .map(|(u, v)| model.mul(model.mul(u, t), v))
                .max()
                .expect("nonempty coset")
        };
        let moved = oracle_mult_with(model, basis[a], basis[b], false, largest)?;
        let canon = oracle_mult_with(model, basis[a], basis[b], false, |t, _, _| t)?;
        if moved != canon {
            return Err(Error::Violation(format!("{} * {} depends on representatives", basis[a], basis[b])));
        }
        Ok(())
    });
    per.into_iter().collect::<Result<Vec<()>>>()?;
    Ok(rank * rank)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(p: u64, n: u32, e: u64) -> GroupModel {
        GroupModel::from_triple(p, n, e).unwrap()
    }

    fn terms(x: &RingElement<Integers>) -> Vec<(BasisElement, i64)> {
        x.terms().map(|(b, c)| (*b, i64::try_from(c).unwrap())).collect()
    }

    #[test]
    fn basis_subgroups() {
        let g = model(3, 2, 2);
        let z = subgroup_of_basis(&g, BasisElement::p(0, 0));
        assert_eq!(z.tag, SubgroupTag::ExE);
        assert!(z.elements.values().all(|&v| v == 0));
        assert_eq!(subgroup_of_basis(&g, BasisElement::m(2, 1, 0)), g.diagonal());
    }

    #[test]
    fn classification_examples() {
        let g = model(3, 2, 2);
        assert_eq!(classify_induced(&g, &g.diagonal()).unwrap(), vec![(BasisElement::m(2, 1, 0), 1)]);
        assert_eq!(
            classify_induced(&g, &g.e_times_one(1)).unwrap(),
            vec![(BasisElement::p(1, 0), 1), (BasisElement::p(1, 1), 1)]
        );
        assert_eq!(
            classify_induced(&g, &g.twisted_diag_p(1, 1)).unwrap(),
            vec![(BasisElement::m(1, 1, 0), 1), (BasisElement::m(1, 1, 1), 1)]
        );
    }

    #[test]
    fn oracle_examples() {
        let g = model(3, 1, 1);
        let x = oracle_mult(&g, BasisElement::p(0, 0), BasisElement::p(0, 0)).unwrap();
        assert_eq!(terms(&x), vec![(BasisElement::p(0, 0), 3)]);
        let g = model(3, 2, 2);
        let x = oracle_mult(&g, BasisElement::m(1, 1, 0), BasisElement::m(1, 1, 0)).unwrap();
        assert_eq!(terms(&x), vec![(BasisElement::m(1, 1, 0), 2), (BasisElement::m(1, 1, 1), 1)]);
    }

    #[test]
    fn full_tables_agree() {
        for (p, n, e) in [(3, 1, 1), (3, 2, 2), (2, 2, 1), (5, 1, 4)] {
            let r = TRing::from_triple(p, n, e).unwrap();
            let rep = check_table(&r, Strategy::Sequential).unwrap();
            assert_eq!(rep.products, r.rank() * r.rank());
            check_representative_independence(&r, Strategy::Sequential).unwrap();
        }
    }
}
