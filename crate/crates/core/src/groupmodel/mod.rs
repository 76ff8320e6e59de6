//! The group `G = D⋊E` with `D = Z/p^n` written additively and `E` the
//! order-`e` subgroup of `(Z/p^n)^×`, plus the subgroup calculus of `G×G`.
//!
//! Automorphisms of `D_i = p^{n-i}Z/p^nZ` are units modulo `p^i`; composing
//! automorphisms is multiplying units. Characters of `E` are residues mod `e`:
//! the character `λ` sends `ζ^k` to `λ·k`, where `ζ` generates `E`.

mod cosets;
pub mod laws;
mod subgroup;

use std::collections::HashMap;

pub use cosets::DoubleCoset;
pub use subgroup::{SubgroupGG, SubgroupTag, GG};

use crate::exactarith::ntheory::{gcd, inv_mod, is_prime, mul_mod, pow_mod, primitive_root};
use crate::{Error, Result};

/// Validated `(p, n, e)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModelParams {
    p: u64,
    n: u32,
    e: u64,
}

/// Largest `p^n` accepted; keeps every residue product inside `u64`.
pub const MAX_MODULUS: u64 = 1 << 24;

impl ModelParams {
    pub fn new(p: u64, n: u32, e: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::ZeroExponent);
        }
        if e == 0 || !(p - 1).is_multiple_of(e) {
            return Err(Error::BadOrder { p, e });
        }
        if p == 2 && e != 1 {
            return Err(Error::TwoBlocked(e));
        }
        match p.checked_pow(n) {
            Some(m) if m <= MAX_MODULUS => Ok(Self { p, n, e }),
            _ => Err(Error::TooLarge { p, n }),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn e(&self) -> u64 {
        self.e
    }

    /// `|D| = p^n`.
    pub fn defect_order(&self) -> u64 {
        self.p.pow(self.n)
    }

    /// `m = (p^n - 1)/e`.
    pub fn m(&self) -> u64 {
        (self.defect_order() - 1) / self.e
    }

    /// `m_j = (p^{n-j} - 1)/e`.
    pub fn m_level(&self, j: u32) -> u64 {
        (self.p.pow(self.n - j) - 1) / self.e
    }

    /// `|Aut(D)| = p^{n-1}(p-1)`.
    pub fn aut_order(&self) -> u64 {
        self.p.pow(self.n - 1) * (self.p - 1)
    }

    /// `|Aut(D_i)| = p^{i-1}(p-1)` for `i ≥ 1`.
    pub fn aut_order_level(&self, i: u32) -> u64 {
        if i == 0 {
            1
        } else {
            self.p.pow(i - 1) * (self.p - 1)
        }
    }

    /// Dimension of the ring: `e² + p^n - 1`.
    pub fn rank(&self) -> usize {
        (self.e * self.e + self.defect_order() - 1) as usize
    }
}

impl std::fmt::Display for ModelParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.p, self.n, self.e)
    }
}

/// Element `xρ` of `D⋊E`: `x` a residue mod `p^n`, `r` the unit acting as `ρ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GElement {
    pub x: u64,
    pub r: u64,
}

/// Coset `rep·π_i(E)` in `Aut(D_i)`, `rep` the least positive member.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AutCoset {
    pub level: u32,
    pub rep: u64,
}

/// Derived data for one parameter set.
#[derive(Debug, Clone)]
pub struct GroupModel {
    params: ModelParams,
    modulus: u64,
    /// `ζ^k` at position `k`.
    e_units: Vec<u64>,
    e_log: HashMap<u64, u64>,
    e_sorted: Vec<u64>,
}

impl GroupModel {
    pub fn new(params: ModelParams) -> Self {
        let (p, n, e) = (params.p, params.n, params.e);
        let modulus = params.defect_order();
        let zeta = if p == 2 {
            1
        } else {
            pow_mod(primitive_root(p, n), params.aut_order() / e, modulus)
        };
        let e_units: Vec<u64> = (0..e).map(|k| pow_mod(zeta, k, modulus)).collect();
        let e_log = e_units.iter().enumerate().map(|(k, &u)| (u, k as u64)).collect();
        let mut e_sorted = e_units.clone();
        e_sorted.sort_unstable();
        Self { params, modulus, e_units, e_log, e_sorted }
    }

    pub fn from_triple(p: u64, n: u32, e: u64) -> Result<Self> {
        Ok(Self::new(ModelParams::new(p, n, e)?))
    }

    pub fn params(&self) -> ModelParams {
        self.params
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn e(&self) -> u64 {
        self.params.e
    }

    /// Elements of `E` as units mod `p^n`, in increasing order.
    pub fn e_elements(&self) -> &[u64] {
        &self.e_sorted
    }

    pub fn e_generator(&self) -> u64 {
        self.e_units.get(1).copied().unwrap_or(1)
    }

    /// Discrete log of `r ∈ E` base `ζ`.
    pub fn e_log(&self, r: u64) -> u64 {
        self.e_log[&r]
    }

    pub fn level_modulus(&self, i: u32) -> u64 {
        self.params.p.pow(i)
    }

    pub fn order(&self) -> usize {
        (self.modulus * self.params.e) as usize
    }

    pub fn identity(&self) -> GElement {
        GElement { x: 0, r: 1 }
    }

    /// `(x,r)·(y,s) = (x + r·y, r·s)`.
    pub fn mul(&self, a: GElement, b: GElement) -> GElement {
        GElement {
            x: (a.x + mul_mod(a.r, b.x, self.modulus)) % self.modulus,
            r: mul_mod(a.r, b.r, self.modulus),
        }
    }

    pub fn inv(&self, a: GElement) -> GElement {
        let r_inv = inv_mod(a.r, self.modulus).expect("E consists of units");
        let x = mul_mod(r_inv, a.x, self.modulus);
        GElement { x: (self.modulus - x) % self.modulus, r: r_inv }
    }

    pub fn conj(&self, g: GElement, a: GElement) -> GElement {
        self.mul(self.mul(g, a), self.inv(g))
    }

    /// Dense index in `0..|G|`.
    pub fn index(&self, a: GElement) -> usize {
        (a.x * self.params.e + self.e_log(a.r)) as usize
    }

    /// All of `G` in lexicographic `(x, r)` order.
    pub fn elements(&self) -> Vec<GElement> {
        (0..self.modulus)
            .flat_map(|x| self.e_sorted.iter().map(move |&r| GElement { x, r }))
            .collect()
    }

    /// `D_i`, the subgroup of order `p^i`.
    pub fn d_sub(&self, i: u32) -> Vec<GElement> {
        let step = self.level_modulus(self.params.n - i);
        (0..self.level_modulus(i))
            .map(|k| GElement { x: k * step, r: 1 })
            .collect()
    }

    /// `D_i E`, sorted.
    pub fn d_sub_e(&self, i: u32) -> Vec<GElement> {
        let mut out: Vec<GElement> = self
            .d_sub(i)
            .into_iter()
            .flat_map(|d| self.e_sorted.iter().map(move |&r| GElement { x: d.x, r }))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn in_d_sub(&self, a: GElement, i: u32) -> bool {
        a.r == 1 && a.x.is_multiple_of(self.level_modulus(self.params.n - i))
    }

    fn check_level(&self, i: u32) -> Result<()> {
        if i > self.params.n {
            return Err(Error::BadLevel { level: i, max: self.params.n });
        }
        Ok(())
    }

    /// Restriction `π_i` of a unit mod `p^j` to `D_i`, i.e. reduction mod `p^i`.
    pub fn pi(&self, i: u32, unit: u64, j: u32) -> Result<u64> {
        self.check_level(j)?;
        if i > j {
            return Err(Error::BadLevel { level: i, max: j });
        }
        if unit.is_multiple_of(self.params.p) {
            return Err(Error::NotUnit(unit));
        }
        Ok(unit % self.level_modulus(i))
    }

    /// `π_i(E)` as a sorted, deduplicated list of units mod `p^i`.
    pub fn pi_e(&self, i: u32) -> Vec<u64> {
        let m = self.level_modulus(i);
        let mut v: Vec<u64> = self.e_sorted.iter().map(|r| r % m).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn canonical_coset(&self, i: u32, unit: u64) -> Result<AutCoset> {
        self.check_level(i)?;
        let m = self.level_modulus(i);
        if i > 0 && gcd(unit % m, m) != 1 {
            return Err(Error::NotUnit(unit));
        }
        let rep = self
            .e_sorted
            .iter()
            .map(|&r| mul_mod(unit % m, r % m, m))
            .min()
            .unwrap_or(0);
        // Level 0 has the single automorphism of the trivial group.
        let rep = if i == 0 { 1 } else { rep };
        Ok(AutCoset { level: i, rep })
    }

    /// All cosets of `π_i(E)` in `Aut(D_i)`, ordered by representative.
    pub fn aut_cosets(&self, i: u32) -> Vec<AutCoset> {
        if i == 0 {
            return vec![AutCoset { level: 0, rep: 1 }];
        }
        let m = self.level_modulus(i);
        let mut reps: Vec<u64> = (1..m)
            .filter(|u| u % self.params.p != 0)
            .map(|u| self.canonical_coset(i, u).expect("unit").rep)
            .collect();
        reps.sort_unstable();
        reps.dedup();
        reps.into_iter().map(|rep| AutCoset { level: i, rep }).collect()
    }

    /// Product of cosets at one level.
    pub fn coset_mul(&self, a: AutCoset, b: AutCoset) -> AutCoset {
        let m = self.level_modulus(a.level);
        self.canonical_coset(a.level, mul_mod(a.rep, b.rep, m))
            .expect("product of units")
    }

    pub fn char_add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.params.e
    }

    pub fn char_neg(&self, a: u64) -> u64 {
        (self.params.e - a % self.params.e) % self.params.e
    }

    /// Value of the character `λ` at `r ∈ E`.
    pub fn char_value(&self, lambda: u64, r: u64) -> u64 {
        (lambda * self.e_log(r)) % self.params.e
    }

    /// Representatives of `D_iE\G/D_jE`, trivial coset first.
    pub fn double_cosets(&self, i: u32, j: u32) -> Result<Vec<DoubleCoset>> {
        self.check_level(i)?;
        self.check_level(j)?;
        Ok(self.double_cosets_of(&self.d_sub_e(i), &self.d_sub_e(j)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_validation() {
        assert!(ModelParams::new(3, 2, 2).is_ok());
        assert_eq!(ModelParams::new(4, 1, 1), Err(Error::NotPrime(4)));
        assert_eq!(ModelParams::new(3, 2, 4), Err(Error::BadOrder { p: 3, e: 4 }));
        assert_eq!(ModelParams::new(2, 3, 2), Err(Error::BadOrder { p: 2, e: 2 }));
        assert_eq!(ModelParams::new(3, 0, 1), Err(Error::ZeroExponent));
    }

    #[test]
    fn inertial_subgroup() {
        let g = GroupModel::from_triple(3, 2, 2).unwrap();
        assert_eq!(g.e_elements(), &[1, 8]);
        let g = GroupModel::from_triple(5, 1, 1).unwrap();
        assert_eq!(g.e_elements(), &[1]);
        let g = GroupModel::from_triple(2, 3, 1).unwrap();
        assert_eq!(g.e_elements(), &[1]);
    }

    #[test]
    fn restriction_maps() {
        let g = GroupModel::from_triple(3, 2, 2).unwrap();
        assert_eq!(g.pi(1, 8, 2), Ok(2));
        assert_eq!(g.pi(2, 7, 2), Ok(7));
        assert_eq!(g.pi(2, 7, 1), Err(Error::BadLevel { level: 2, max: 1 }));
        assert_eq!(g.pi(1, 3, 2), Err(Error::NotUnit(3)));
        let g = GroupModel::from_triple(7, 2, 3).unwrap();
        assert_eq!(g.pi_e(1).len(), 3);
        // surjectivity of reduction onto (Z/p^i)^×
        let mut img: Vec<u64> = (1..49).filter(|u| u % 7 != 0).map(|u| g.pi(1, u, 2).unwrap()).collect();
        img.sort_unstable();
        img.dedup();
        assert_eq!(img, (1..7).collect::<Vec<_>>());
    }

    #[test]
    fn canonical_cosets() {
        let g = GroupModel::from_triple(3, 2, 2).unwrap();
        assert_eq!(g.canonical_coset(2, 7).unwrap().rep, 2);
        assert!((1..3).all(|u| g.canonical_coset(1, u).unwrap().rep == 1));
        assert_eq!(g.canonical_coset(2, 1).unwrap().rep, 1);
        assert_eq!(g.aut_cosets(2).iter().map(|c| c.rep).collect::<Vec<_>>(), vec![1, 2, 4]);
    }

    #[test]
    fn product_law() {
        let g = GroupModel::from_triple(3, 2, 2).unwrap();
        let a = GElement { x: 1, r: 8 };
        let b = GElement { x: 2, r: 8 };
        assert_eq!(g.mul(a, b), GElement { x: (1 + 16) % 9, r: 1 });
        assert_eq!(g.mul(a, g.inv(a)), g.identity());
        assert_eq!(g.elements().len(), 18);
    }
}
