//! Dense polynomials over the prime field, stored as residue vectors with
//! the constant term first. These back the extension-field arithmetic and
//! the irreducibility test used to pick canonical moduli.

pub(crate) fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0);
    pow_mod(a as u64, (p - 2) as u64, p as u64) as u32
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

pub(crate) fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let p64 = p as u64;
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p64;
        }
    }
    let mut v: Vec<u32> = out.into_iter().map(|c| c as u32).collect();
    trim(&mut v);
    v
}

pub(crate) fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let n = a.len().max(b.len());
    let mut v: Vec<u32> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut v);
    v
}

/// Remainder of `a` modulo a nonzero `m`.
pub(crate) fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let (_, r) = divrem(a, m, p);
    r
}

pub(crate) fn divrem(a: &[u32], m: &[u32], p: u32) -> (Vec<u32>, Vec<u32>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let mut m = m.to_vec();
    trim(&mut m);
    assert!(!m.is_empty(), "division by the zero polynomial");
    if r.len() < m.len() {
        return (Vec::new(), r);
    }
    let p64 = p as u64;
    let lead_inv = inv_mod(*m.last().unwrap(), p) as u64;
    let dm = m.len() - 1;
    let mut q = vec![0u32; r.len() - dm];
    for i in (dm..r.len()).rev() {
        let c = r[i] as u64 * lead_inv % p64;
        if c == 0 {
            continue;
        }
        q[i - dm] = c as u32;
        for (j, &mj) in m.iter().enumerate() {
            let idx = i - dm + j;
            r[idx] = ((r[idx] as u64 + p64 - c * mj as u64 % p64) % p64) as u32;
        }
    }
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

pub(crate) fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    if let Some(&lead) = a.last() {
        let inv = inv_mod(lead, p) as u64;
        for c in a.iter_mut() {
            *c = (*c as u64 * inv % p as u64) as u32;
        }
    }
    a
}

/// Inverse of `a` in F_p[t]/(m), or `None` when they share a factor.
pub(crate) fn inv_in_quotient(a: &[u32], m: &[u32], p: u32) -> Option<Vec<u32>> {
    // extended Euclid tracking only the coefficient of `a`
    let mut r0 = m.to_vec();
    let mut r1 = rem(a, m, p);
    let mut s0: Vec<u32> = Vec::new();
    let mut s1: Vec<u32> = vec![1];
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s = sub(&s0, &mul(&q, &s1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    if r0.len() != 1 {
        return None;
    }
    let inv = inv_mod(r0[0], p) as u64;
    let mut out: Vec<u32> = s0
        .iter()
        .map(|&c| (c as u64 * inv % p as u64) as u32)
        .collect();
    trim(&mut out);
    Some(rem(&out, m, p))
}

fn powmod_poly(base: &[u32], mut exp: u64, m: &[u32], p: u32) -> Vec<u32> {
    let mut acc = vec![1u32];
    let mut b = rem(base, m, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = rem(&mul(&acc, &b, p), m, p);
        }
        b = rem(&mul(&b, &b, p), m, p);
        exp >>= 1;
    }
    acc
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
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

/// Rabin's irreducibility test for a monic `m` of degree `n >= 1`.
pub(crate) fn is_irreducible(m: &[u32], p: u32) -> bool {
    let n = m.len() - 1;
    if n == 1 {
        return true;
    }
    let x = vec![0u32, 1];
    // x^(p^i) mod m for i = 0..=n
    let mut frob = Vec::with_capacity(n + 1);
    let mut cur = rem(&x, m, p);
    frob.push(cur.clone());
    for _ in 0..n {
        cur = powmod_poly(&cur, p as u64, m, p);
        frob.push(cur.clone());
    }
    if !sub(&frob[n], &x, p).is_empty() {
        return false;
    }
    for q in prime_factors(n) {
        let g = gcd(&sub(&frob[n / q], &x, p), m, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest monic irreducible polynomial of degree `n` over F_p, ordering
/// candidates lexicographically on (c0, c1, ..., c_{n-1}).
pub(crate) fn canonical_modulus(p: u32, n: usize) -> Vec<u32> {
    if n == 1 {
        return vec![0, 1];
    }
    let mut coeffs = vec![0u32; n];
    loop {
        let mut candidate = coeffs.clone();
        candidate.push(1);
        if candidate[0] != 0 && is_irreducible(&candidate, p) {
            return candidate;
        }
        // increment with c_{n-1} as the least significant digit
        let mut i = n;
        loop {
            if i == 0 {
                unreachable!("irreducible polynomials exist in every degree");
            }
            i -= 1;
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
        }
    }
}
