//! Exhaustive search for integral central idempotents of `Q ⊗ T^Δ`.
//!
//! Every central idempotent is a subset sum of the primitive ones, which are
//! `f_0` and the images of the rational idempotents of each `Q[Γ_i]`. Sums are
//! scanned as residues modulo a common denominator, in Gray-code order.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use super::{central_decomposition, BlockMap};
use crate::exactarith::Rationals;
use crate::tring::{RingElement, TRing};
use crate::{Error, Result, Strategy};

pub const DEFAULT_SCAN_BOUND: usize = 20;

/// Low bits enumerated inside one chunk of the scan.
const CHUNK_BITS: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanReport {
    /// Primitive central idempotents per block, block 0 first.
    pub block_counts: Vec<usize>,
    pub total: usize,
    pub denominator: BigInt,
    pub sums_scanned: u64,
    /// Subsets with integral sum, as bit masks in increasing order.
    pub integral_masks: Vec<u64>,
}

impl ScanReport {
    /// Exactly the empty sum and the full sum are integral.
    pub fn only_trivial(&self) -> bool {
        let full = (1u64 << self.total) - 1;
        self.integral_masks == [0, full]
    }
}

/// All primitive central idempotents of `Q ⊗ T^Δ`, verified, with block counts.
pub fn primitive_central_idempotents(
    ring: &TRing,
    bound: usize,
) -> Result<(Vec<RingElement<Rationals>>, Vec<usize>)> {
    let dec = central_decomposition(ring, Rationals)?;
    let mut blocks = Vec::new();
    let mut counts = vec![1];
    for i in 1..=ring.params().n() {
        let map = BlockMap::new(ring, Rationals, dec.f_list[i as usize].clone(), i)?;
        let cyc = map.group.cyclic_decomposition()?;
        let orbits = cyc.galois_orbits();
        counts.push(orbits.len());
        blocks.push((map, cyc, orbits));
    }
    let total: usize = counts.iter().sum();
    if total > bound {
        return Err(Error::ScanTooLarge { count: total, bound });
    }
    let mut out = vec![dec.f_list[0].clone()];
    for (map, cyc, orbits) in &blocks {
        for orbit in orbits {
            let v = cyc.orbit_idempotent(&map.group, orbit)?;
            out.push(map.apply(ring, &v)?);
        }
    }
    let zero = ring.zero(Rationals);
    let mut sum = zero.clone();
    for (i, a) in out.iter().enumerate() {
        sum = sum.add(a)?;
        if a.is_zero() || !ring.is_central(a)? {
            return Err(Error::Violation(format!("primitive central idempotent {i} is zero or not central")));
        }
        for (j, b) in out.iter().enumerate() {
            let prod = ring.mult(a, b)?;
            if (i == j && prod != *a) || (i != j && prod != zero) {
                return Err(Error::Violation(format!("central idempotents {i}, {j} are not orthogonal idempotents")));
            }
        }
    }
    if sum != ring.one(Rationals) {
        return Err(Error::Violation("primitive central idempotents do not sum to 1".into()));
    }
    Ok((out, counts))
}

/// Residues `L·x mod L` of every coordinate.
fn residues(ring: &TRing, xs: &[RingElement<Rationals>]) -> Result<(BigInt, u64, Vec<Vec<u64>>)> {
    let coords = xs.iter().map(|x| ring.to_coords(x)).collect::<Result<Vec<Vec<BigRational>>>>()?;
    let l = coords.iter().flatten().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let lu = l
        .to_u64()
        .filter(|&v| v < 1 << 62)
        .ok_or_else(|| Error::Violation(format!("common denominator {l} exceeds 62 bits")))?;
    let rows = coords
        .iter()
        .map(|v| {
            v.iter()
                .map(|q| {
                    let scaled = q.numer() * (&l / q.denom());
                    scaled.mod_floor(&l).to_u64().expect("reduced below L")
                })
                .collect()
        })
        .collect();
    Ok((l, lu, rows))
}

fn scan_chunk(rows: &[Vec<u64>], modulus: u64, low_bits: usize, chunk: u64) -> Vec<u64> {
    let dim = rows.first().map_or(0, Vec::len);
    let mut acc = vec![0u64; dim];
    for (j, row) in rows.iter().enumerate().skip(low_bits) {
        if chunk >> (j - low_bits) & 1 == 1 {
            for (a, &r) in acc.iter_mut().zip(row) {
                *a = (*a + r) % modulus;
            }
        }
    }
    let mut nonzero = acc.iter().filter(|&&a| a != 0).count();
    let mut found = Vec::new();
    let mut mask = 0u64;
    if nonzero == 0 {
        found.push(chunk << low_bits);
    }
    for t in 1u64..1 << low_bits {
        let bit = t.trailing_zeros() as usize;
        mask ^= 1 << bit;
        let adding = mask >> bit & 1 == 1;
        for (a, &r) in acc.iter_mut().zip(&rows[bit]) {
            let before = *a != 0;
            *a = if adding { (*a + r) % modulus } else { (*a + modulus - r) % modulus };
            match (before, *a != 0) {
                (true, false) => nonzero -= 1,
                (false, true) => nonzero += 1,
                _ => {}
            }
        }
        if nonzero == 0 {
            found.push(chunk << low_bits | mask);
        }
    }
    found
}

/// Scan all `2^k` sums of primitive central idempotents for integral ones.
pub fn rational_central_idempotent_scan(ring: &TRing, bound: usize, strategy: Strategy) -> Result<ScanReport> {
    let (prims, block_counts) = primitive_central_idempotents(ring, bound)?;
    let total = prims.len();
    let (denominator, modulus, rows) = residues(ring, &prims)?;
    let low_bits = total.min(CHUNK_BITS);
    let chunks = 1usize << (total - low_bits);
    let mut integral_masks: Vec<u64> = strategy
        .map_range(0..chunks, |c| scan_chunk(&rows, modulus, low_bits, c as u64))
        .into_iter()
        .flatten()
        .collect();
    integral_masks.sort_unstable();
    Ok(ScanReport { block_counts, total, denominator, sums_scanned: 1 << total, integral_masks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_instance() {
        let r = TRing::from_triple(3, 1, 1).unwrap();
        let rep = rational_central_idempotent_scan(&r, DEFAULT_SCAN_BOUND, Strategy::Sequential).unwrap();
        assert_eq!(rep.block_counts, vec![1, 2]);
        assert_eq!(rep.sums_scanned, 8);
        assert_eq!(rep.integral_masks, vec![0, 7]);
        assert!(rep.only_trivial());
    }

    #[test]
    fn bound_is_enforced() {
        let r = TRing::from_triple(3, 2, 2).unwrap();
        assert_eq!(
            rational_central_idempotent_scan(&r, 2, Strategy::Sequential),
            Err(Error::ScanTooLarge { count: 7, bound: 2 })
        );
    }

    #[test]
    fn gray_code_matches_direct_sums() {
        let rows = vec![vec![1, 2], vec![2, 1], vec![0, 3], vec![3, 0]];
        let mut direct: Vec<u64> = (0u64..16)
            .filter(|m| {
                (0..2).all(|c| (0..4).filter(|j| m >> j & 1 == 1).map(|j| rows[j][c]).sum::<u64>() % 3 == 0)
            })
            .collect();
        direct.sort_unstable();
        let mut gray: Vec<u64> = (0..4).flat_map(|c| scan_chunk(&rows, 3, 2, c)).collect();
        gray.sort_unstable();
        assert_eq!(gray, direct);
    }
}
