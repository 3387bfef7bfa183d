//! Elementary number-theoretic helpers: primes, factorisation, modular
//! arithmetic and the structure of `(Z/m)^*`.
//!
//! Everything here works on `i64`/`u64` since the moduli appearing in group
//! rings and conductors stay at desk scale; exact big-integer arithmetic
//! lives in the callers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Extended gcd: returns (g, x, y) with a*x + b*y = g >= 0.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        if a < 0 {
            return (-a, -1, 0);
        }
        return (a, 1, 0);
    }
    let (g, x, y) = ext_gcd(b, a % b);
    (g, y, x - (a / b) * y)
}

pub fn mod_inv(a: i64, m: i64) -> Option<i64> {
    let (g, x, _) = ext_gcd(a.rem_euclid(m), m);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(m))
}

pub fn mod_pow(mut base: i64, mut exp: u64, m: i64) -> i64 {
    assert!(m > 0);
    let mut acc: i128 = 1;
    let mi = m as i128;
    let mut b = (base.rem_euclid(m)) as i128;
    base = 0;
    let _ = base;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % mi;
        }
        b = b * b % mi;
        exp >>= 1;
    }
    acc as i64
}

pub fn is_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2i64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    // Deterministic Miller-Rabin for 64-bit inputs.
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let s = (n - 1).trailing_zeros();
    'witness: for a in [2i64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a, d as u64, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = ((x as i128 * x as i128) % n as i128) as i64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn primes_up_to(n: i64) -> Vec<i64> {
    if n < 2 {
        return vec![];
    }
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    if n >= 1 {
        sieve[1] = false;
    }
    let mut p = 2;
    while p * p <= n {
        if sieve[p] {
            let mut q = p * p;
            while q <= n {
                sieve[q] = false;
                q += p;
            }
        }
        p += 1;
    }
    (2..=n).filter(|&i| sieve[i]).map(|i| i as i64).collect()
}

/// Factorisation into (prime, exponent) pairs, primes ascending.
pub fn factor(mut n: i64) -> Vec<(i64, u32)> {
    assert!(n != 0);
    n = n.abs();
    let mut out = vec![];
    let mut p = 2i64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn divisors(n: i64) -> Vec<i64> {
    let mut ds = vec![1i64];
    for (p, e) in factor(n) {
        let mut next = vec![];
        for d in &ds {
            let mut pk = 1i64;
            for _ in 0..=e {
                next.push(d * pk);
                pk *= p;
            }
        }
        ds = next;
    }
    ds.sort_unstable();
    ds
}

pub fn euler_phi(n: i64) -> i64 {
    let mut phi = n.abs();
    for (p, _) in factor(n) {
        phi = phi / p * (p - 1);
    }
    phi
}

pub fn valuation(mut n: i64, p: i64) -> u32 {
    assert!(n != 0 && p >= 2);
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

pub fn big_valuation(n: &BigInt, p: i64) -> Option<u64> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut v = 0u64;
    let mut n = n.abs();
    loop {
        let (q, r) = num_integer::div_rem(n.clone(), p.clone());
        if !r.is_zero() {
            return Some(v);
        }
        v += 1;
        n = q;
    }
}

/// p-adic valuation of a nonzero rational.
pub fn rat_valuation(x: &BigRational, p: i64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let vn = big_valuation(x.numer(), p).unwrap() as i64;
    let vd = big_valuation(x.denom(), p).unwrap() as i64;
    Some(vn - vd)
}

/// Legendre/Jacobi-style square test mod an odd prime p.
pub fn is_square_mod(a: i64, p: i64) -> bool {
    let a = a.rem_euclid(p);
    if a == 0 {
        return true;
    }
    mod_pow(a, ((p - 1) / 2) as u64, p) == 1
}

/// Quadratic character mod odd prime p: 0 on 0, else +-1.
pub fn legendre(a: i64, p: i64) -> i64 {
    let a = a.rem_euclid(p);
    if a == 0 {
        return 0;
    }
    if mod_pow(a, ((p - 1) / 2) as u64, p) == 1 {
        1
    } else {
        -1
    }
}

/// CRT for two coprime moduli: x = a mod m, x = b mod n.
pub fn crt(a: i64, m: i64, b: i64, n: i64) -> i64 {
    let (g, u, _) = ext_gcd(m, n);
    assert_eq!(g, 1, "crt moduli must be coprime");
    let mn = m * n;
    // x = a + m*u*(b-a) mod mn
    let t = ((b - a).rem_euclid(n) as i128 * u.rem_euclid(n) as i128).rem_euclid(n as i128) as i64;
    (a + m * t).rem_euclid(mn)
}

/// Generators (with their orders) of the unit group `(Z/m)^*`, obtained from
/// the CRT decomposition and primitive roots of odd prime power factors.
pub fn unit_group_generators(m: i64) -> Vec<(i64, i64)> {
    assert!(m >= 1);
    if m <= 2 {
        return vec![];
    }
    let mut gens: Vec<(i64, i64)> = vec![];
    for (p, e) in factor(m) {
        let pe = p.pow(e);
        let rest = m / pe;
        if p == 2 {
            if e == 1 {
                continue;
            }
            // (Z/2^e)^* = <-1> x <5> for e >= 3; cyclic <-1> for e = 2.
            let lift = |g: i64| crt(g.rem_euclid(pe), pe, 1, rest);
            gens.push((lift(pe - 1), 2));
            if e >= 3 {
                gens.push((lift(5), pe / 4));
            }
        } else {
            let g = primitive_root_mod_pe(p, e);
            let ord = pe / p * (p - 1);
            gens.push((crt(g, pe, 1, rest), ord));
        }
    }
    gens
}

fn primitive_root_mod_pe(p: i64, e: u32) -> i64 {
    let g = primitive_root_mod_p(p);
    if e == 1 {
        return g;
    }
    let pe = p.pow(e);
    // g lifts to a primitive root mod p^e unless g^(p-1) = 1 mod p^2.
    if mod_pow(g, (p - 1) as u64, p * p) == 1 {
        g + p
    } else {
        let phi = pe / p * (p - 1);
        debug_assert!(mod_pow(g, (phi / p) as u64, pe) != 1);
        g
    }
}

fn primitive_root_mod_p(p: i64) -> i64 {
    if p == 2 {
        return 1;
    }
    let fs = factor(p - 1);
    'cand: for g in 2..p {
        for (q, _) in &fs {
            if mod_pow(g, ((p - 1) / q) as u64, p) == 1 {
                continue 'cand;
            }
        }
        return g;
    }
    unreachable!("no primitive root found for prime {p}");
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat_is_integral(x: &BigRational) -> bool {
    x.denom().is_one() || x.is_zero()
}

/// Multiplicative order of a mod m (a must be a unit).
pub fn mult_order(a: i64, m: i64) -> i64 {
    assert_eq!(gcd_i64(a, m), 1);
    if m == 1 {
        return 1;
    }
    let phi = euler_phi(m);
    let mut ord = phi;
    for (q, _) in factor(phi) {
        while ord % q == 0 && mod_pow(a, (ord / q) as u64, m) == 1 {
            ord /= q;
        }
    }
    ord
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_basics() {
        assert!(is_prime(2) && is_prime(3) && is_prime(37) && is_prime(10007));
        assert!(!is_prime(1) && !is_prime(91) && !is_prime(561));
        assert_eq!(primes_up_to(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
    }

    #[test]
    fn factor_and_divisors() {
        assert_eq!(factor(60), vec![(2, 2), (3, 1), (5, 1)]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(euler_phi(60), 16);
        assert_eq!(valuation(-161051, 11), 5);
    }

    #[test]
    fn crt_and_units() {
        assert_eq!(crt(2, 3, 1, 4), 5);
        // (Z/12)^* = {1,5,7,11}, generated by 5 and 7 (or -1).
        let gens = unit_group_generators(12);
        let mut elems = std::collections::BTreeSet::new();
        elems.insert(1i64);
        let mut frontier = vec![1i64];
        while let Some(x) = frontier.pop() {
            for (g, _) in &gens {
                let y = x * g % 12;
                if elems.insert(y) {
                    frontier.push(y);
                }
            }
        }
        assert_eq!(elems.into_iter().collect::<Vec<_>>(), vec![1, 5, 7, 11]);
    }

    #[test]
    fn orders_and_roots() {
        assert_eq!(mult_order(2, 11), 10);
        assert_eq!(mult_order(3, 11), 5);
        for p in [3i64, 5, 7, 11, 13, 101] {
            let g = primitive_root_mod_p(p);
            assert_eq!(mult_order(g, p), p - 1);
        }
        assert_eq!(mult_order(primitive_root_mod_pe(3, 4), 81), 54);
    }

    #[test]
    fn square_detection() {
        assert!(is_square_mod(1, 11) && is_square_mod(3, 11));
        assert!(!is_square_mod(2, 11));
        assert_eq!(legendre(2, 11), -1);
    }
}
