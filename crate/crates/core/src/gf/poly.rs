//! Dense polynomials over a prime field GF(p), little-endian coefficient vectors.
//!
//! Only what modulus selection and irreducibility testing need.

pub(crate) fn mul_mod_p(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn add_mod_p(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

pub(crate) fn sub_mod_p(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        p - (b - a)
    }
}

pub(crate) fn pow_mod_p(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_p(acc, base, p);
        }
        base = mul_mod_p(base, base, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn inv_mod_p(a: u64, p: u64) -> u64 {
    pow_mod_p(a, p - 2, p)
}

pub(crate) fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

/// Degree of a trimmed polynomial; `None` for the zero polynomial.
pub(crate) fn degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = add_mod_p(out[i + j], mul_mod_p(x, y, p), p);
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let len = a.len().max(b.len());
    let mut out: Vec<u64> = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            sub_mod_p(x, y, p)
        })
        .collect();
    trim(&mut out);
    out
}

/// Remainder of `a` modulo a nonzero `f`.
pub(crate) fn rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let df = degree(f).expect("division by the zero polynomial");
    let lead_inv = inv_mod_p(f[df], p);
    let mut r = a.to_vec();
    trim(&mut r);
    while let Some(dr) = degree(&r) {
        if dr < df {
            break;
        }
        let factor = mul_mod_p(r[dr], lead_inv, p);
        let shift = dr - df;
        for (i, &c) in f.iter().enumerate().take(df + 1) {
            r[shift + i] = sub_mod_p(r[shift + i], mul_mod_p(factor, c, p), p);
        }
        trim(&mut r);
    }
    r
}

pub(crate) fn mul_rem(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    rem(&mul(a, b, p), f, p)
}

pub(crate) fn pow_rem(base: &[u64], mut exp: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = rem(&[1], f, p);
    let mut b = rem(base, f, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_rem(&acc, &b, f, p);
        }
        b = mul_rem(&b, &b, f, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut f = 2u64;
    while f.saturating_mul(f) <= n {
        if n.is_multiple_of(f) {
            out.push(f);
            while n.is_multiple_of(f) {
                n /= f;
            }
        }
        f += if f == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    prime_factors(n) == [n]
}

/// Rabin's irreducibility test for a monic `f` of degree `d >= 1`.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let Some(d) = degree(f) else { return false };
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let x = vec![0, 1];
    // x^(p^k) mod f for k = 0..=d, built by repeated p-th powers
    let mut frob = vec![rem(&x, f, p)];
    for k in 1..=d {
        let next = pow_rem(&frob[k - 1], p, f, p);
        frob.push(next);
    }
    if frob[d] != frob[0] {
        return false;
    }
    for r in prime_factors(d as u64) {
        let k = d / r as usize;
        let g = gcd(&sub(&frob[k], &x, p), f, p);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}
