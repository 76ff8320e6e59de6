//! Values recomputed by independent routes and compared with the library.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use tsring_core::blocks::{central_decomposition, e_i, rational_central_idempotent_scan, DEFAULT_SCAN_BOUND};
use tsring_core::cartan::cartan_matrix;
use tsring_core::exactarith::{snf, IntMatrix, Rationals};
use tsring_core::mackey::oracle_mult;
use tsring_core::{BasisElement, GroupModel, ModelParams, Strategy, TRing};

fn det_i128(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i128>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, v)| *v).collect())
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * det_i128(&minor)
        })
        .sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

/// Elementary divisors from gcds of `k×k` minors.
fn determinantal_divisors(c: &[Vec<i128>]) -> Vec<i128> {
    let n = c.len();
    let mut d = vec![1i128];
    for k in 1..=n {
        let mut g = 0i128;
        for rows in subsets(n, k) {
            for cols in subsets(n, k) {
                let minor: Vec<Vec<i128>> = rows.iter().map(|&r| cols.iter().map(|&s| c[r][s]).collect()).collect();
                g = g.gcd(&det_i128(&minor));
            }
        }
        d.push(g);
    }
    (1..=n).map(|k| if d[k - 1] == 0 { 0 } else { d[k] / d[k - 1] }).collect()
}

#[test]
fn special_cartan_divisors_from_minors() {
    for (p, n, e) in [(3, 1, 1), (3, 2, 2), (5, 1, 4), (7, 2, 3), (13, 1, 4), (5, 2, 4)] {
        let params = ModelParams::new(p, n, e).unwrap();
        let c = cartan_matrix(params);
        let rows: Vec<Vec<i128>> = (0..c.rows())
            .map(|i| (0..c.cols()).map(|j| i128::try_from(c.get(i, j)).unwrap()).collect())
            .collect();
        let expect: Vec<BigInt> = determinantal_divisors(&rows).into_iter().map(BigInt::from).collect();
        assert_eq!(snf(&c).diagonal(), expect);
        assert_eq!(expect.last().unwrap(), &BigInt::from(p.pow(n)));
    }
}

#[test]
fn random_divisors_from_minors() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for _ in 0..60 {
        let n = rng.gen_range(2..=4);
        let rows: Vec<Vec<i128>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-6..=6)).collect()).collect();
        let c = IntMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect());
        let expect: Vec<BigInt> = determinantal_divisors(&rows).into_iter().map(BigInt::from).collect();
        assert_eq!(snf(&c).diagonal(), expect);
    }
}

/// Regular trace form rebuilt from oracle products only.
#[test]
fn trace_form_from_oracle_products() {
    for (p, n, e) in [(3, 1, 1), (3, 2, 2), (2, 2, 1)] {
        let ring = TRing::from_triple(p, n, e).unwrap();
        let model = GroupModel::from_triple(p, n, e).unwrap();
        let basis = ring.basis().to_vec();
        let prod = |a: BasisElement, b: BasisElement| oracle_mult(&model, a, b).unwrap();
        let traces: Vec<BigInt> = basis
            .iter()
            .map(|&a| basis.iter().map(|&c| prod(a, c).coeff(&c)).sum())
            .collect();
        for (i, &a) in basis.iter().enumerate() {
            for (j, &b) in basis.iter().enumerate() {
                let ab = prod(a, b);
                let g: BigInt = basis.iter().zip(&traces).map(|(c, t)| ab.coeff(c) * t).sum();
                assert_eq!(ring.integer_gram().get(i, j), &g, "{a} {b}");
            }
        }
    }
}

/// Over `Q` the center is `Q ⊕ ∏ Q[Γ_i]`, of dimension `1 + p^n - 1`.
#[test]
fn center_dimension() {
    for (p, n, e) in [(3, 1, 1), (3, 2, 2), (2, 3, 1), (5, 1, 4), (7, 1, 6)] {
        let ring = TRing::from_triple(p, n, e).unwrap();
        assert_eq!(ring.center_basis(Rationals).len() as u64, p.pow(n));
    }
}

#[test]
fn chain_idempotent_examples() {
    let q = |a: i64, b: i64| BigRational::new(a.into(), b.into());
    let ring = TRing::from_triple(3, 2, 2).unwrap();
    let e1 = e_i(&ring, Rationals, 1).unwrap();
    let expect = [(BasisElement::m(1, 1, 0), q(2, 3)), (BasisElement::m(1, 1, 1), q(-1, 3))];
    assert_eq!(e1.terms().map(|(b, c)| (*b, c.clone())).collect::<Vec<_>>(), expect.to_vec());
    let ring = TRing::from_triple(3, 1, 1).unwrap();
    let d = central_decomposition(&ring, Rationals).unwrap();
    assert_eq!(d.f_list[0].terms().map(|(b, c)| (*b, c.clone())).collect::<Vec<_>>(), vec![(BasisElement::p(0, 0), q(1, 3))]);
    assert_eq!(d.dims, vec![1, 2]);
}

/// `f_0` alone is never integral; it carries the denominator `p^n`.
#[test]
fn block_zero_idempotent_denominator() {
    for (p, n, e) in [(3, 1, 1), (3, 2, 2), (2, 3, 1), (7, 2, 3)] {
        let ring = TRing::from_triple(p, n, e).unwrap();
        let d = central_decomposition(&ring, Rationals).unwrap();
        let den = d.f_list[0].terms().fold(BigInt::from(1), |acc, (_, c)| acc.lcm(c.denom()));
        assert_eq!(den, BigInt::from(p.pow(n)));
        assert!(d.f_list[0].terms().all(|(_, c)| !c.is_zero() && c.abs() <= BigRational::from_integer(1.into())));
    }
}

#[test]
fn scan_counts_match_divisor_counts() {
    // Γ_i is cyclic for these instances, so Q[Γ_i] has one primitive idempotent per divisor of |Γ_i|.
    let divisors = |k: u64| (1..=k).filter(|d| k.is_multiple_of(*d)).count();
    for (p, n, e) in [(3, 2, 2), (7, 2, 3), (13, 1, 4)] {
        let ring = TRing::from_triple(p, n, e).unwrap();
        let rep = rational_central_idempotent_scan(&ring, DEFAULT_SCAN_BOUND, Strategy::Sequential).unwrap();
        let params = ring.params();
        let expect: Vec<usize> =
            std::iter::once(1).chain((1..=n).map(|i| divisors(params.aut_order_level(i)))).collect();
        assert_eq!(rep.block_counts, expect);
        assert!(rep.only_trivial());
    }
}
