use std::collections::BTreeSet;

use crate::exactarith::ntheory::{gcd, lcm};
use crate::exactarith::{CyclotomicRing, ScalarRing};
use crate::groupmodel::{AutCoset, GroupModel};
use crate::tring::BasisElement;
use crate::{Error, Result};
use num_rational::BigRational;

/// `Γ_i = Aut(D_i)/π_i(E) × Ê`; element `k` is `(cosets[k / e], k % e)`.
#[derive(Debug, Clone)]
pub struct GammaGroup {
    level: u32,
    e: u64,
    cosets: Vec<AutCoset>,
    /// Coset multiplication table by index.
    coset_mul: Vec<Vec<usize>>,
}

impl GammaGroup {
    pub fn new(model: &GroupModel, level: u32) -> Result<Self> {
        if level == 0 || level > model.params().n() {
            return Err(Error::BadLevel { level, max: model.params().n() });
        }
        let cosets = model.aut_cosets(level);
        let pos = |c: AutCoset| cosets.iter().position(|d| *d == c).expect("closed under products");
        let coset_mul = cosets
            .iter()
            .map(|&a| cosets.iter().map(|&b| pos(model.coset_mul(a, b))).collect())
            .collect();
        Ok(Self { level, e: model.e(), cosets, coset_mul })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn order(&self) -> usize {
        self.cosets.len() * self.e as usize
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn coset(&self, g: usize) -> AutCoset {
        self.cosets[g / self.e as usize]
    }

    pub fn character(&self, g: usize) -> u64 {
        (g % self.e as usize) as u64
    }

    pub fn element(&self, coset_index: usize, lambda: u64) -> usize {
        coset_index * self.e as usize + lambda as usize
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        let e = self.e as usize;
        let c = self.coset_mul[g / e][h / e];
        self.element(c, (self.character(g) + self.character(h)) % self.e)
    }

    pub fn pow(&self, g: usize, k: u64) -> usize {
        (0..k).fold(self.identity(), |acc, _| self.mul(acc, g))
    }

    pub fn inv(&self, g: usize) -> usize {
        (0..self.order()).find(|&h| self.mul(g, h) == self.identity()).expect("group")
    }

    pub fn element_order(&self, g: usize) -> u64 {
        let mut k = 1;
        let mut x = g;
        while x != self.identity() {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// Basis label `[M(i, α, λ)]` of a group element.
    pub fn label(&self, g: usize) -> BasisElement {
        BasisElement::m(self.level, self.coset(g).rep, self.character(g))
    }

    pub fn unlabel(&self, b: &BasisElement) -> Option<usize> {
        match *b {
            BasisElement::NonProj { level, alpha, lambda } if level == self.level => {
                let c = self.cosets.iter().position(|d| d.rep == alpha)?;
                Some(self.element(c, lambda))
            }
            _ => None,
        }
    }

    /// Product in the group algebra with coefficients in `ring`.
    pub fn algebra_mul<S: ScalarRing>(&self, ring: &S, x: &[S::Elem], y: &[S::Elem]) -> Vec<S::Elem> {
        let mut out = vec![ring.zero(); self.order()];
        for (g, a) in x.iter().enumerate() {
            if ring.is_zero(a) {
                continue;
            }
            for (h, b) in y.iter().enumerate() {
                if ring.is_zero(b) {
                    continue;
                }
                let gh = self.mul(g, h);
                out[gh] = ring.add(&out[gh], &ring.mul(a, b));
            }
        }
        out
    }

    pub fn algebra_unit<S: ScalarRing>(&self, ring: &S, g: usize) -> Vec<S::Elem> {
        let mut v = vec![ring.zero(); self.order()];
        v[g] = ring.one();
        v
    }

    /// Decomposition into cyclic factors: generators with their orders.
    pub fn cyclic_decomposition(&self) -> Result<CyclicDecomposition> {
        let order = self.order();
        let mut gens: Vec<(usize, u64)> = Vec::new();
        let mut sub: BTreeSet<usize> = [self.identity()].into_iter().collect();
        while sub.len() < order {
            let quotient_order = |x: usize| {
                let mut k = 1;
                let mut y = x;
                while !sub.contains(&y) {
                    y = self.mul(y, x);
                    k += 1;
                }
                k as u64
            };
            let d = (0..order).map(quotient_order).max().expect("nonempty");
            let pick = (0..order)
                .filter(|&x| quotient_order(x) == d)
                .flat_map(|x| sub.iter().map(move |&h| (x, h)))
                .map(|(x, h)| self.mul(x, h))
                .find(|&y| self.element_order(y) == d)
                .ok_or_else(|| Error::Violation("no lift of maximal order in quotient".into()))?;
            gens.push((pick, d));
            let mut next = BTreeSet::new();
            for &h in &sub {
                let mut y = h;
                for _ in 0..d {
                    next.insert(y);
                    y = self.mul(y, pick);
                }
            }
            sub = next;
        }
        CyclicDecomposition::new(self, gens)
    }
}

/// `Γ ≅ ∏ Z/d_j` via chosen generators, with exponent vectors of every element.
#[derive(Debug, Clone)]
pub struct CyclicDecomposition {
    pub generators: Vec<(usize, u64)>,
    /// `coords[g]` gives `k` with `g = ∏ g_j^{k_j}`.
    pub coords: Vec<Vec<u64>>,
    pub exponent: u64,
}

impl CyclicDecomposition {
    fn new(group: &GammaGroup, generators: Vec<(usize, u64)>) -> Result<Self> {
        let mut coords: Vec<Option<Vec<u64>>> = vec![None; group.order()];
        let mut stack: Vec<(usize, Vec<u64>)> = vec![(group.identity(), Vec::new())];
        for &(g, d) in &generators {
            let mut next = Vec::new();
            for (h, k) in stack {
                let mut y = h;
                for t in 0..d {
                    let mut kk = k.clone();
                    kk.push(t);
                    next.push((y, kk));
                    y = group.mul(y, g);
                }
            }
            stack = next;
        }
        for (g, k) in stack {
            if coords[g].replace(k).is_some() {
                return Err(Error::Violation("generators are not independent".into()));
            }
        }
        let coords: Vec<Vec<u64>> = coords
            .into_iter()
            .collect::<Option<_>>()
            .ok_or_else(|| Error::Violation("generators do not span".into()))?;
        let exponent = generators.iter().fold(1, |acc, &(_, d)| lcm(acc, d));
        Ok(Self { generators, coords, exponent })
    }

    fn orders(&self) -> Vec<u64> {
        self.generators.iter().map(|&(_, d)| d).collect()
    }

    /// `χ_a(g) = ζ_M^{value}` with `M` the exponent.
    pub fn character_exponent(&self, a: &[u64], g: usize) -> u64 {
        let m = self.exponent;
        self.orders()
            .iter()
            .zip(a)
            .zip(&self.coords[g])
            .map(|((&d, &aj), &kj)| aj * kj % d * (m / d))
            .sum::<u64>()
            % m
    }

    /// Characters grouped into Galois orbits under `a ↦ t·a`, `t ∈ (Z/M)^×`.
    pub fn galois_orbits(&self) -> Vec<Vec<Vec<u64>>> {
        let orders = self.orders();
        let mut all: Vec<Vec<u64>> = vec![Vec::new()];
        for &d in &orders {
            all = all
                .into_iter()
                .flat_map(|v| (0..d).map(move |t| [v.clone(), vec![t]].concat()))
                .collect();
        }
        let m = self.exponent;
        let mut seen = BTreeSet::new();
        let mut orbits = Vec::new();
        for a in all {
            if seen.contains(&a) {
                continue;
            }
            let orbit: BTreeSet<Vec<u64>> = (1..=m)
                .filter(|&t| gcd(t, m) == 1)
                .map(|t| a.iter().zip(&orders).map(|(&x, &d)| x * t % d).collect())
                .collect();
            seen.extend(orbit.iter().cloned());
            orbits.push(orbit.into_iter().collect());
        }
        orbits
    }

    /// Rational coordinates of the primitive central idempotent for one orbit:
    /// `(1/|Γ|) Σ_g Σ_{χ ∈ O} χ(g^{-1}) g`.
    pub fn orbit_idempotent(&self, group: &GammaGroup, orbit: &[Vec<u64>]) -> Result<Vec<BigRational>> {
        let cyc = CyclotomicRing::new(self.exponent);
        let m = self.exponent;
        let order = BigRational::from_integer(group.order().into());
        (0..group.order())
            .map(|g| {
                let mut acc = cyc.zero();
                for a in orbit {
                    let k = (m - self.character_exponent(a, g)) % m;
                    acc = cyc.add(&acc, &cyc.zeta_pow(k));
                }
                let q = cyc
                    .as_rational(&acc)
                    .ok_or_else(|| Error::Violation("orbit sum is not rational".into()))?;
                Ok(q / &order)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gamma(p: u64, n: u32, e: u64, i: u32) -> GammaGroup {
        GammaGroup::new(&GroupModel::from_triple(p, n, e).unwrap(), i).unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(gamma(3, 2, 2, 1).order(), 2);
        assert_eq!(gamma(3, 2, 2, 2).order(), 6);
        assert_eq!(gamma(7, 2, 3, 2).order(), 42);
        assert_eq!(gamma(2, 3, 1, 3).order(), 4);
    }

    #[test]
    fn decompositions() {
        let g = gamma(2, 3, 1, 3);
        let d = g.cyclic_decomposition().unwrap();
        assert_eq!(d.generators.iter().map(|x| x.1).collect::<Vec<_>>(), vec![2, 2]);
        let g = gamma(7, 2, 3, 2);
        let d = g.cyclic_decomposition().unwrap();
        assert_eq!(d.exponent, 42);
        assert_eq!(g.label(g.identity()), BasisElement::m(2, 1, 0));
    }

    #[test]
    fn rational_idempotents_of_z2() {
        let g = gamma(3, 1, 1, 1);
        let d = g.cyclic_decomposition().unwrap();
        let orbits = d.galois_orbits();
        assert_eq!(orbits.len(), 2);
        let half = BigRational::new(1.into(), 2.into());
        let e0 = d.orbit_idempotent(&g, &orbits[0]).unwrap();
        assert_eq!(e0, vec![half.clone(), half.clone()]);
        let e1 = d.orbit_idempotent(&g, &orbits[1]).unwrap();
        assert_eq!(e1, vec![half.clone(), -half]);
    }
}
