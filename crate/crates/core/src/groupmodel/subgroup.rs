use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::{GElement, GroupModel};
use crate::exactarith::ntheory::{inv_mod, mul_mod};
use crate::{Error, Result};

/// An element of `G×G`.
pub type GG = (GElement, GElement);

/// Structural shape of a subgroup of `G×G`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SubgroupTag {
    /// `Δ(D_i, α, D_i) = {(αy, y) : y ∈ D_i}`.
    TwistedDiagP { level: u32, alpha: u64 },
    /// `Δ(D_i E, α̃, D_i E) = {(αy·ρ, y·ρ)}`.
    TwistedDiagPE { level: u32, alpha: u64 },
    ExE,
    ExOne,
    OneE,
    Explicit,
}

/// Explicit subgroup of `G×G` carrying a linear character with values in `Z/e`.
///
/// Without a character every value is stored as 0 and `has_character` is false.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupGG {
    pub tag: SubgroupTag,
    pub elements: BTreeMap<GG, u64>,
    pub has_character: bool,
}

impl SubgroupGG {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &GG) -> bool {
        self.elements.contains_key(g)
    }

    pub fn character(&self, g: &GG) -> Option<u64> {
        self.elements.get(g).copied()
    }

    pub fn element_set(&self) -> BTreeSet<GG> {
        self.elements.keys().copied().collect()
    }

    /// `p_1`, sorted.
    pub fn p1(&self) -> Vec<GElement> {
        let s: BTreeSet<GElement> = self.elements.keys().map(|g| g.0).collect();
        s.into_iter().collect()
    }

    /// `p_2`, sorted.
    pub fn p2(&self) -> Vec<GElement> {
        let s: BTreeSet<GElement> = self.elements.keys().map(|g| g.1).collect();
        s.into_iter().collect()
    }

    /// `k_1 = {g : (g,1) ∈ X}`.
    pub fn k1(&self) -> Vec<GElement> {
        let one = GElement { x: 0, r: 1 };
        self.elements.keys().filter(|g| g.1 == one).map(|g| g.0).collect()
    }

    /// `k_2 = {h : (1,h) ∈ X}`.
    pub fn k2(&self) -> Vec<GElement> {
        let one = GElement { x: 0, r: 1 };
        self.elements.keys().filter(|g| g.0 == one).map(|g| g.1).collect()
    }
}

impl GroupModel {
    pub fn gg_mul(&self, a: GG, b: GG) -> GG {
        (self.mul(a.0, b.0), self.mul(a.1, b.1))
    }

    pub fn gg_inv(&self, a: GG) -> GG {
        (self.inv(a.0), self.inv(a.1))
    }

    fn build(&self, elements: BTreeMap<GG, u64>, has_character: bool) -> SubgroupGG {
        let mut z = SubgroupGG { tag: SubgroupTag::Explicit, elements, has_character };
        z.tag = self.recognize(&z);
        z
    }

    /// `Δ(D_i, α, D_i)`; `alpha` is a unit mod `p^i`.
    pub fn twisted_diag_p(&self, i: u32, alpha: u64) -> SubgroupGG {
        let n = self.modulus();
        let elements = self
            .d_sub(i)
            .into_iter()
            .map(|y| ((GElement { x: mul_mod(alpha, y.x, n), r: 1 }, y), 0))
            .collect();
        SubgroupGG { tag: SubgroupTag::TwistedDiagP { level: i, alpha }, elements, has_character: false }
    }

    /// `Δ(D_i E, α̃, D_i E)`, optionally with the character `(α̃(yρ), yρ) ↦ λ(ρ)`.
    pub fn twisted_diag_pe(&self, i: u32, alpha: u64, lambda: Option<u64>) -> SubgroupGG {
        let n = self.modulus();
        let mut elements = BTreeMap::new();
        for y in self.d_sub(i) {
            for &r in self.e_elements() {
                let a = GElement { x: mul_mod(alpha, y.x, n), r };
                let b = GElement { x: y.x, r };
                elements.insert((a, b), self.char_value(lambda.unwrap_or(0), r));
            }
        }
        SubgroupGG {
            tag: SubgroupTag::TwistedDiagPE { level: i, alpha },
            elements,
            has_character: lambda.is_some(),
        }
    }

    /// `Δ(G)` with trivial character.
    pub fn diagonal(&self) -> SubgroupGG {
        self.twisted_diag_pe(self.params().n(), 1, Some(0))
    }

    /// `E×E` with the character `(ρ,σ) ↦ λ(ρ) - μ(σ)`.
    pub fn e_times_e(&self, lambda: u64, mu: u64) -> SubgroupGG {
        let mut elements = BTreeMap::new();
        for &r in self.e_elements() {
            for &s in self.e_elements() {
                let v = self.char_add(self.char_value(lambda, r), self.char_neg(self.char_value(mu, s)));
                elements.insert((GElement { x: 0, r }, GElement { x: 0, r: s }), v);
            }
        }
        SubgroupGG { tag: SubgroupTag::ExE, elements, has_character: true }
    }

    /// `E×1` with the character `(ρ,1) ↦ λ(ρ)`.
    pub fn e_times_one(&self, lambda: u64) -> SubgroupGG {
        let elements = self
            .e_elements()
            .iter()
            .map(|&r| ((GElement { x: 0, r }, self.identity()), self.char_value(lambda, r)))
            .collect();
        SubgroupGG { tag: SubgroupTag::ExOne, elements, has_character: true }
    }

    /// `1×E` with the character `(1,σ) ↦ c(σ)`.
    pub fn one_times_e(&self, c: u64) -> SubgroupGG {
        let elements = self
            .e_elements()
            .iter()
            .map(|&s| ((self.identity(), GElement { x: 0, r: s }), self.char_value(c, s)))
            .collect();
        SubgroupGG { tag: SubgroupTag::OneE, elements, has_character: true }
    }

    /// Subgroup from an explicit element set and character, after validating
    /// closure and the homomorphism property.
    pub fn subgroup_from_elements(&self, elements: BTreeMap<GG, u64>, has_character: bool) -> Result<SubgroupGG> {
        let id = (self.identity(), self.identity());
        if !elements.contains_key(&id) {
            return Err(Error::Violation("subgroup lacks the identity".into()));
        }
        let e = self.e();
        for (&a, &ca) in &elements {
            if !elements.contains_key(&self.gg_inv(a)) {
                return Err(Error::Violation("subgroup not closed under inverses".into()));
            }
            for (&b, &cb) in &elements {
                match elements.get(&self.gg_mul(a, b)) {
                    None => return Err(Error::Violation("subgroup not closed under products".into())),
                    Some(&cab) if has_character && cab != (ca + cb) % e => {
                        return Err(Error::CharacterIllDefined("not a homomorphism".into()))
                    }
                    _ => {}
                }
            }
        }
        Ok(self.build(elements, has_character))
    }

    /// Element-wise conjugate `(g,h)X(g,h)^{-1}`, character transported.
    pub fn conj_subgroup(&self, c: GG, z: &SubgroupGG) -> SubgroupGG {
        let elements = z
            .elements
            .iter()
            .map(|(&(a, b), &v)| ((self.conj(c.0, a), self.conj(c.1, b)), v))
            .collect();
        self.build(elements, z.has_character)
    }

    /// `X*Y = {(g,k) : ∃h (g,h) ∈ X, (h,k) ∈ Y}` with the character
    /// `χ_X(g,h) + χ_Y(h,k)` when both carry one.
    pub fn star(&self, x: &SubgroupGG, y: &SubgroupGG) -> Result<SubgroupGG> {
        let mut by_first: HashMap<GElement, Vec<(GElement, u64)>> = HashMap::new();
        for (&(h, k), &v) in &y.elements {
            by_first.entry(h).or_default().push((k, v));
        }
        let has_character = x.has_character && y.has_character;
        let mut out: BTreeMap<GG, u64> = BTreeMap::new();
        for (&(g, h), &vx) in &x.elements {
            let Some(ks) = by_first.get(&h) else { continue };
            for &(k, vy) in ks {
                let v = if has_character { self.char_add(vx, vy) } else { 0 };
                match out.insert((g, k), v) {
                    Some(old) if old != v => {
                        return Err(Error::CharacterIllDefined(format!(
                            "values {old} and {v} at ({g:?}, {k:?})"
                        )))
                    }
                    _ => {}
                }
            }
        }
        Ok(self.build(out, has_character))
    }

    /// True when the tensor summand for `X` and `Y` is zero: the characters
    /// disagree on `k_2(X) ∩ k_1(Y)`.
    pub fn tensor_vanishes(&self, x: &SubgroupGG, y: &SubgroupGG) -> bool {
        if !(x.has_character && y.has_character) {
            return false;
        }
        let id = self.identity();
        let k1y: BTreeSet<GElement> = y.k1().into_iter().collect();
        x.k2().into_iter().filter(|h| k1y.contains(h)).any(|h| {
            let vx = x.character(&(id, self.inv(h))).expect("k_2 closed under inverse");
            let vy = y.character(&(h, id)).expect("h in k_1");
            vx != vy
        })
    }

    /// Shape recognition by comparison with the standard element sets.
    pub fn recognize(&self, z: &SubgroupGG) -> SubgroupTag {
        let keys = z.element_set();
        let same = |w: &SubgroupGG| w.elements.len() == keys.len() && w.elements.keys().eq(keys.iter());
        let q: Vec<GG> = keys.iter().copied().filter(|g| g.0.r == 1 && g.1.r == 1).collect();
        if q.len() == 1 {
            if same(&self.e_times_e(0, 0)) {
                return SubgroupTag::ExE;
            }
            if same(&self.e_times_one(0)) {
                return SubgroupTag::ExOne;
            }
            if same(&self.one_times_e(0)) {
                return SubgroupTag::OneE;
            }
            return SubgroupTag::Explicit;
        }
        let p = self.params().p();
        let n = self.params().n();
        let Some(k) = (1..=n).find(|&k| p.pow(k) as usize == q.len()) else {
            return SubgroupTag::Explicit;
        };
        let step = self.level_modulus(n - k);
        let Some(&(a, _)) = q.iter().find(|g| g.1.x == step) else {
            return SubgroupTag::Explicit;
        };
        if a.x % step != 0 {
            return SubgroupTag::Explicit;
        }
        let alpha = (a.x / step) % self.level_modulus(k);
        if alpha.is_multiple_of(p) {
            return SubgroupTag::Explicit;
        }
        if keys.len() == q.len() * self.e() as usize && same(&self.twisted_diag_pe(k, alpha, None)) {
            return SubgroupTag::TwistedDiagPE { level: k, alpha };
        }
        if keys.len() == q.len() && same(&self.twisted_diag_p(k, alpha)) {
            return SubgroupTag::TwistedDiagP { level: k, alpha };
        }
        SubgroupTag::Explicit
    }

    /// Conjugator in `D×D` taking a conjugate of a standard shape back to it,
    /// computed from elements whose `E`-parts generate the projections.
    pub fn straightening_conjugator(&self, z: &SubgroupGG) -> GG {
        let n = self.modulus();
        let solve = |x: u64, r: u64| -> u64 {
            // u with x + (1 - r)u = 0
            let one_minus = (1 + n - r) % n;
            let inv = inv_mod(one_minus, n).expect("Frobenius action makes 1 - r a unit");
            mul_mod(n - x % n, inv, n) % n
        };
        let least_nontrivial = |pick: fn(&GG) -> GElement| {
            z.elements
                .keys()
                .filter(|g| pick(g).r != 1)
                .min_by_key(|g| (self.e_log(pick(g).r), **g))
                .copied()
        };
        let mut u = 0;
        let mut v = None;
        if let Some(g) = least_nontrivial(|g| g.0) {
            u = solve(g.0.x, g.0.r);
            if g.1.r != 1 {
                v = Some(solve(g.1.x, g.1.r));
            }
        }
        let v = v.unwrap_or_else(|| {
            z.elements
                .keys()
                .filter(|g| g.0.r == 1 && g.1.r != 1)
                .min_by_key(|g| (self.e_log(g.1.r), **g))
                .map_or(0, |g| solve(g.1.x, g.1.r))
        });
        (GElement { x: u, r: 1 }, GElement { x: v, r: 1 })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(p: u64, n: u32, e: u64) -> GroupModel {
        GroupModel::from_triple(p, n, e).unwrap()
    }

    #[test]
    fn standard_shapes_are_recognized() {
        let g = model(3, 2, 2);
        assert_eq!(g.recognize(&g.e_times_e(0, 1)), SubgroupTag::ExE);
        assert_eq!(g.recognize(&g.e_times_one(1)), SubgroupTag::ExOne);
        assert_eq!(g.recognize(&g.one_times_e(1)), SubgroupTag::OneE);
        assert_eq!(g.recognize(&g.twisted_diag_p(1, 2)), SubgroupTag::TwistedDiagP { level: 1, alpha: 2 });
        assert_eq!(
            g.recognize(&g.twisted_diag_pe(2, 7, Some(1))),
            SubgroupTag::TwistedDiagPE { level: 2, alpha: 7 }
        );
        assert_eq!(g.diagonal().order(), 18);
    }

    #[test]
    fn diagonal_is_star_idempotent() {
        let g = model(3, 2, 2);
        let d = g.diagonal();
        assert_eq!(g.star(&d, &d).unwrap(), d);
    }

    #[test]
    fn twisted_diagonals_compose() {
        let g = model(7, 2, 3);
        let x = g.twisted_diag_pe(2, 10, Some(1));
        let y = g.twisted_diag_pe(1, 3, Some(2));
        let z = g.star(&x, &y).unwrap();
        assert_eq!(z.tag, SubgroupTag::TwistedDiagPE { level: 1, alpha: 2 });
        let w = g.twisted_diag_pe(1, 2, Some(0));
        assert_eq!(z, w);
    }

    #[test]
    fn exe_absorbs_twisted_diagonal() {
        let g = model(3, 2, 2);
        let x = g.e_times_e(0, 0);
        let y = g.twisted_diag_pe(1, 1, None);
        let z = g.star(&x, &y).unwrap();
        assert_eq!(z.tag, SubgroupTag::ExE);
    }

    #[test]
    fn conjugation_keeps_p_part_shape() {
        let g = model(3, 2, 2);
        let x = g.twisted_diag_p(1, 1);
        let c = (GElement { x: 1, r: 1 }, g.identity());
        let y = g.conj_subgroup(c, &x);
        assert_eq!(y.order(), x.order());
        assert_eq!(y.tag, SubgroupTag::TwistedDiagP { level: 1, alpha: 1 });
        let id = (g.identity(), g.identity());
        assert_eq!(g.conj_subgroup(id, &x), x);
    }

    #[test]
    fn straightening_recovers_standard_shape() {
        let g = model(7, 2, 3);
        let x = g.twisted_diag_pe(1, 2, Some(1));
        let c = (GElement { x: 5, r: 1 }, GElement { x: 11, r: 1 });
        let y = g.conj_subgroup(c, &x);
        assert_eq!(y.tag, SubgroupTag::Explicit);
        let back = g.conj_subgroup(g.straightening_conjugator(&y), &y);
        assert_eq!(back, x);
    }

    #[test]
    fn explicit_validation() {
        let g = model(3, 1, 1);
        let z = g.subgroup_from_elements(g.diagonal().elements, true).unwrap();
        assert_eq!(z.tag, SubgroupTag::TwistedDiagPE { level: 1, alpha: 1 });
        let mut bad = BTreeMap::new();
        bad.insert((g.identity(), g.identity()), 0);
        bad.insert((GElement { x: 1, r: 1 }, g.identity()), 0);
        assert!(g.subgroup_from_elements(bad, false).is_err());
    }
}
