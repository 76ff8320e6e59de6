//! Small-integer number theory used by the group model and the fields.

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return if m == 1 { Some(0) } else { None };
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Distinct prime divisors in ascending order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    prime_factors(n)
        .into_iter()
        .fold(n, |acc, q| acc / q * (q - 1))
}

/// Multiplicative order of a unit `a` modulo `m`.
pub fn unit_order(a: u64, m: u64) -> u64 {
    let mut x = a % m;
    let mut k = 1;
    while x != 1 % m {
        x = mul_mod(x, a, m);
        k += 1;
    }
    k
}

/// Smallest primitive root modulo `p^n` for odd prime `p`.
pub fn primitive_root(p: u64, n: u32) -> u64 {
    let modulus = p.pow(n);
    let phi = p.pow(n - 1) * (p - 1);
    let factors = prime_factors(phi);
    (2..modulus)
        .find(|&g| g % p != 0 && factors.iter().all(|&q| pow_mod(g, phi / q, modulus) != 1))
        .unwrap_or(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_roots() {
        assert!(is_prime(13) && !is_prime(1) && !is_prime(91));
        assert_eq!(primitive_root(3, 2), 2);
        assert_eq!(primitive_root(7, 2), 3);
        assert_eq!(unit_order(primitive_root(5, 2), 25), 20);
        assert_eq!(inv_mod(8, 9), Some(8));
        assert_eq!(inv_mod(3, 9), None);
        assert_eq!(euler_phi(49), 42);
        assert_eq!(prime_factors(84), vec![2, 3, 7]);
    }
}
