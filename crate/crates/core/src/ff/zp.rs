//! Integer and prime-field helpers used while constructing field contexts.

use alloc::vec;
use alloc::vec::Vec;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Splits `n` as `p^k` with `p` prime.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    let fs = prime_factors(n);
    if fs.len() != 1 {
        return None;
    }
    let p = fs[0];
    let (mut k, mut r) = (0u32, n);
    while r > 1 {
        r /= p;
        k += 1;
    }
    Some((p, k))
}

pub fn mod_mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn mod_pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mod_mul(r, a, p);
        }
        a = mod_mul(a, a, p);
        e >>= 1;
    }
    r
}

pub fn mod_inv(a: u64, p: u64) -> u64 {
    mod_pow(a, p - 2, p)
}

pub fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    let mut r: u64 = 1;
    for _ in 0..exp {
        r = r.checked_mul(base)?;
    }
    Some(r)
}

fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

/// Remainder of `a` modulo the nonzero polynomial `f` over Z_p.
pub fn poly_rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let df = f.len() - 1;
    let inv_lead = mod_inv(f[df], p);
    while r.len() > df {
        let top = r.len() - 1;
        let c = mod_mul(r[top], inv_lead, p);
        if c != 0 {
            for (j, &fj) in f.iter().enumerate() {
                let idx = top - df + j;
                r[idx] = (r[idx] + p - mod_mul(c, fj, p)) % p;
            }
        }
        trim(&mut r);
    }
    r
}

pub fn poly_mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + mod_mul(x, y, p)) % p;
        }
    }
    poly_rem(&prod, f, p)
}

pub fn poly_powmod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut result = poly_rem(&[1], f, p);
    let mut b = poly_rem(base, f, p);
    while e > 0 {
        if e & 1 == 1 {
            result = poly_mulmod(&result, &b, f, p);
        }
        b = poly_mulmod(&b, &b, f, p);
        e >>= 1;
    }
    result
}

pub fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = poly_rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

fn sub_x(a: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    if r.len() < 2 {
        r.resize(2, 0);
    }
    r[1] = (r[1] + p - 1) % p;
    trim(&mut r);
    r
}

/// Rabin's test: `f` (monic, degree m) divides X^{p^m} − X and is coprime to
/// X^{p^d} − X for every proper divisor d of m.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let m = f.len() - 1;
    if m == 0 {
        return false;
    }
    if m == 1 {
        return true;
    }
    if f[0] == 0 {
        return false;
    }
    let x = [0u64, 1];
    let mut frob = x.to_vec();
    for d in 1..=m {
        frob = poly_powmod(&frob, p, f, p);
        let diff = sub_x(&frob, p);
        if d == m {
            return diff.is_empty();
        }
        if m.is_multiple_of(d) {
            let g = poly_gcd(f, &diff, p);
            if g.len() > 1 {
                return false;
            }
        }
    }
    unreachable!()
}

/// Lexicographically smallest monic irreducible of degree `m` over Z_p,
/// ordered by (c_{m−1}, …, c_0).
pub fn smallest_irreducible(p: u64, m: u32, order: u64) -> Vec<u64> {
    let m = m as usize;
    for code in 0..order {
        let mut f = vec![0u64; m + 1];
        let mut c = code;
        for slot in f.iter_mut().take(m) {
            *slot = c % p;
            c /= p;
        }
        f[m] = 1;
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_factors() {
        assert!(is_prime(2) && is_prime(7) && !is_prime(1) && !is_prime(9));
        assert_eq!(prime_factors(360), vec![2, 3, 5]);
        assert_eq!(prime_power(49), Some((7, 2)));
        assert_eq!(prime_power(12), None);
    }

    #[test]
    fn rabin_rejects_product_of_coprime_degrees() {
        // (X^2+1)(X^3+2X+1) over F_3 has no roots yet is reducible.
        let a = [1u64, 0, 1];
        let b = [1u64, 2, 0, 1];
        let mut prod = vec![0u64; 6];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % 3;
            }
        }
        assert!(is_irreducible(&a, 3));
        assert!(is_irreducible(&b, 3));
        assert!(!is_irreducible(&prod, 3));
    }

    #[test]
    fn smallest_irreducibles() {
        assert_eq!(smallest_irreducible(3, 2, 9), vec![1, 0, 1]);
        assert_eq!(smallest_irreducible(2, 1, 2), vec![0, 1]);
        assert_eq!(smallest_irreducible(2, 2, 4), vec![1, 1, 1]);
    }
}
