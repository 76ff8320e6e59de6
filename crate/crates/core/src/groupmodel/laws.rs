//! Brute-force checks of the group-theoretic facts the ring structure rests
//! on. Each check returns the number of elementary comparisons it made.

use std::collections::BTreeSet;

use super::{GElement, GroupModel, GG};
use crate::exactarith::ntheory::{inv_mod, mul_mod};
use crate::{Error, Result, Strategy};

fn violation<T>(msg: String) -> Result<T> {
    Err(Error::Violation(msg))
}

/// Associativity, identity and inverses over all of `G`.
pub fn check_group_axioms(g: &GroupModel, strategy: Strategy) -> Result<usize> {
    let els = g.elements();
    let id = g.identity();
    let per: Vec<Result<usize>> = strategy.map(&els, |&a| {
        if g.mul(a, id) != a || g.mul(id, a) != a || g.mul(a, g.inv(a)) != id {
            return violation(format!("identity or inverse fails at {a:?}"));
        }
        for &b in &els {
            let ab = g.mul(a, b);
            for &c in &els {
                if g.mul(ab, c) != g.mul(a, g.mul(b, c)) {
                    return violation(format!("associativity fails at {a:?} {b:?} {c:?}"));
                }
            }
        }
        Ok(els.len() * els.len() + 3)
    });
    per.into_iter().sum()
}

/// `ρ·x ≠ x` for `ρ ∈ E \ {1}` and `x ∈ D \ {0}`.
pub fn check_frobenius(g: &GroupModel) -> Result<usize> {
    let n = g.modulus();
    let mut count = 0;
    for &r in g.e_elements().iter().filter(|&&r| r != 1) {
        for x in 1..n {
            count += 1;
            if mul_mod(r, x, n) == x {
                return violation(format!("{r} fixes {x}"));
            }
        }
    }
    Ok(count)
}

/// Level and twist of the twisted diagonal generated by `(a, b)` with `a, b ∈ D`
/// and `b` of order `p^i`.
fn twist_of(g: &GroupModel, gen: GG) -> Option<(u32, u64)> {
    let (a, b) = gen;
    if a.r != 1 || b.r != 1 || b.x == 0 {
        return None;
    }
    let n = g.params().n();
    let p = g.params().p();
    let mut v = 0;
    let mut bx = b.x;
    while bx % p == 0 {
        bx /= p;
        v += 1;
    }
    let level = n - v;
    let step = g.level_modulus(v);
    if a.x % step != 0 {
        return None;
    }
    let m = g.level_modulus(level);
    let alpha = mul_mod((a.x / step) % m, inv_mod(bx % m, m)?, m);
    Some((level, alpha))
}

/// `N_{G×G}(Δ(D_i, α, D_i)) = (D×D)Δ(E)` for every `i ≥ 1` and every `α`.
pub fn check_normalizers(g: &GroupModel, strategy: Strategy) -> Result<usize> {
    let els = g.elements();
    let n = g.params().n();
    let mut cases = Vec::new();
    for i in 1..=n {
        let m = g.level_modulus(i);
        cases.extend((1..m).filter(|u| u % g.params().p() != 0).map(|u| (i, u)));
    }
    let per: Vec<Result<usize>> = strategy.map(&cases, |&(i, alpha)| {
        let step = g.level_modulus(n - i);
        let gen = (GElement { x: mul_mod(alpha, step, g.modulus()), r: 1 }, GElement { x: step, r: 1 });
        for &x in &els {
            for &y in &els {
                let image = (g.conj(x, gen.0), g.conj(y, gen.1));
                let normalizes = twist_of(g, image) == Some((i, alpha));
                if normalizes != (x.r == y.r) {
                    return violation(format!("normalizer of Δ(D_{i},{alpha}) disagrees at ({x:?},{y:?})"));
                }
            }
        }
        Ok(els.len() * els.len())
    });
    per.into_iter().sum()
}

/// `Δ(D_i,α) ~ Δ(D_j,β)` under `G×G` iff `i = j` and `α ∈ β·π_i(E)`.
pub fn check_conjugacy(g: &GroupModel, strategy: Strategy) -> Result<usize> {
    let els = g.elements();
    let n = g.params().n();
    let mut cases = Vec::new();
    for i in 1..=n {
        let m = g.level_modulus(i);
        cases.extend((1..m).filter(|u| u % g.params().p() != 0).map(|u| (i, u)));
    }
    let per: Vec<Result<usize>> = strategy.map(&cases, |&(i, alpha)| {
        let m = g.level_modulus(i);
        let step = g.level_modulus(n - i);
        let gen = (GElement { x: mul_mod(alpha, step, g.modulus()), r: 1 }, GElement { x: step, r: 1 });
        let mut orbit = BTreeSet::new();
        for &x in &els {
            for &y in &els {
                let image = (g.conj(x, gen.0), g.conj(y, gen.1));
                match twist_of(g, image) {
                    Some((level, a)) if level == i => {
                        orbit.insert(a);
                    }
                    _ => return violation(format!("conjugate of Δ(D_{i},{alpha}) left level {i}")),
                }
            }
        }
        let coset: BTreeSet<u64> = g.pi_e(i).iter().map(|&u| mul_mod(alpha, u, m)).collect();
        if orbit != coset {
            return violation(format!("orbit of Δ(D_{i},{alpha}) is {orbit:?}, expected {coset:?}"));
        }
        Ok(els.len() * els.len())
    });
    per.into_iter().sum()
}

/// Sizes and counts of `D_iE\G/D_jE` for all levels.
pub fn check_double_cosets(g: &GroupModel) -> Result<usize> {
    let (p, n, e) = (g.params().p(), g.params().n(), g.e());
    let mut count = 0;
    for i in 0..=n {
        for j in 0..=n {
            let l = i.max(j);
            let cosets = g.double_cosets(i, j)?;
            let pl = p.pow(l) as usize;
            if cosets[0].rep != g.identity() || cosets[0].size != pl * e as usize {
                return violation(format!("trivial coset for ({i},{j}) is {:?}", cosets[0]));
            }
            for c in &cosets[1..] {
                if c.size != pl * (e * e) as usize {
                    return violation(format!("coset {:?} for ({i},{j}) has size {}", c.rep, c.size));
                }
            }
            let expected = ((p.pow(n - l) - 1) / e) as usize;
            if cosets.len() - 1 != expected {
                return violation(format!("({i},{j}) has {} nontrivial cosets, expected {expected}", cosets.len() - 1));
            }
            if cosets.iter().map(|c| c.size).sum::<usize>() != g.order() {
                return violation(format!("cosets for ({i},{j}) do not partition G"));
            }
            count += cosets.len();
        }
    }
    Ok(count)
}

/// All of the above.
pub fn check_all(g: &GroupModel, strategy: Strategy) -> Result<usize> {
    Ok(check_group_axioms(g, strategy)?
        + check_frobenius(g)?
        + check_normalizers(g, strategy)?
        + check_conjugacy(g, strategy)?
        + check_double_cosets(g)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laws_hold_on_small_models() {
        for (p, n, e) in [(3, 1, 1), (3, 2, 2), (5, 1, 4), (2, 3, 1), (7, 1, 3)] {
            let g = GroupModel::from_triple(p, n, e).unwrap();
            assert!(check_all(&g, Strategy::Sequential).unwrap() > 0, "({p},{n},{e})");
        }
    }

    #[test]
    fn twist_reading() {
        let g = GroupModel::from_triple(3, 2, 2).unwrap();
        let gen = (GElement { x: 6, r: 1 }, GElement { x: 3, r: 1 });
        assert_eq!(twist_of(&g, gen), Some((1, 2)));
        let gen = (GElement { x: 7, r: 1 }, GElement { x: 2, r: 1 });
        assert_eq!(twist_of(&g, gen), Some((2, 8)));
    }
}
