//! Root finding over finite fields: squarefree decomposition, distinct-degree
//! splitting, and equal-degree splitting of the linear part.

use super::Polynomial;
use crate::error::{Error, Result};
use crate::ff::{ExtensionMap, FieldElement};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::cell::Cell;

/// Default seed for the randomized equal-degree splitting. Root lists are
/// sorted, so the seed only affects running time, never results.
pub const DEFAULT_SEED: u64 = 0x5eed_a5c0_ffee_0001;

/// Fields with at most this many elements are split by exhaustive search.
pub const EXHAUSTIVE_LIMIT: u128 = 2000;

thread_local! {
    static SEED: Cell<u64> = const { Cell::new(DEFAULT_SEED) };
}

/// Runs `f` with a different splitting seed on the current thread.
pub fn with_seed<T>(seed: u64, f: impl FnOnce() -> T) -> T {
    let old = SEED.with(|s| s.replace(seed));
    let out = f();
    SEED.with(|s| s.set(old));
    out
}

/// x^{|F|} mod m, by repeated p-th powering.
fn x_to_q_mod(m: &Polynomial) -> Result<Polynomial> {
    let f = m.field();
    let p = f.characteristic() as u64;
    let mut h = Polynomial::x(f).rem(m)?;
    for _ in 0..f.degree() {
        h = h.powmod(p, m)?;
    }
    Ok(h)
}

/// Squarefree pieces whose product has the same irreducible factors as
/// `f` (multiplicities are not tracked here).
fn squarefree_pieces(f: &Polynomial, out: &mut Vec<Polynomial>) -> Result<()> {
    if f.is_constant() {
        return Ok(());
    }
    let f = f.monic();
    let d = f.derivative();
    if d.is_zero() {
        return squarefree_pieces(&f.pth_root()?, out);
    }
    let mut c = f.gcd(&d)?;
    let mut w = f.exact_div(&c)?;
    while !w.is_constant() {
        let y = w.gcd(&c)?;
        let z = w.exact_div(&y)?;
        if !z.is_constant() {
            out.push(z);
        }
        w = y;
        c = c.exact_div(&w)?;
    }
    if !c.is_constant() {
        squarefree_pieces(&c.pth_root()?, out)?;
    }
    Ok(())
}

/// The monic product of the distinct irreducible factors of `f`.
pub fn radical(f: &Polynomial) -> Result<Polynomial> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut pieces = Vec::new();
    squarefree_pieces(f, &mut pieces)?;
    let mut r = Polynomial::one(f.field());
    for z in pieces {
        let g = r.gcd(&z)?;
        r = &r * &z.exact_div(&g)?;
    }
    Ok(r)
}

/// Squarefree factorization: monic pairwise coprime squarefree `g_i` and
/// multiplicities with f = lead · Π g_i^{m_i}, multiplicities distinct and
/// ascending.
pub fn squarefree_factorization(f: &Polynomial) -> Result<Vec<(Polynomial, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let rad = radical(f)?;
    let mut rest = f.monic();
    let mut level = rad.clone();
    let mut by_level: Vec<Polynomial> = Vec::new();
    // level j collects the factors of multiplicity >= j
    while !level.is_constant() {
        rest = rest.exact_div(&level)?;
        by_level.push(level.clone());
        level = level.gcd(&rest)?;
    }
    let mut out = Vec::new();
    for j in 0..by_level.len() {
        let exact = match by_level.get(j + 1) {
            Some(next) => by_level[j].exact_div(next)?,
            None => by_level[j].clone(),
        };
        if !exact.is_constant() {
            out.push((exact, j + 1));
        }
    }
    Ok(out)
}

/// Distinct-degree factorization of a monic squarefree polynomial:
/// pairs (d, product of all irreducible factors of degree d).
pub fn distinct_degree_factorization(g: &Polynomial) -> Result<Vec<(usize, Polynomial)>> {
    let field = g.field();
    let x = Polynomial::x(field);
    let mut g = g.monic();
    let mut out = Vec::new();
    let mut h = x.rem(&g)?;
    let mut i = 0;
    while g.deg() >= 2 * (i as isize + 1) {
        i += 1;
        h = {
            let p = field.characteristic() as u64;
            let mut cur = h;
            for _ in 0..field.degree() {
                cur = cur.powmod(p, &g)?;
            }
            cur
        };
        let d = (&h - &x).gcd(&g)?;
        if !d.is_constant() {
            g = g.exact_div(&d)?;
            h = h.rem(&g)?;
            out.push((i, d));
        }
    }
    if !g.is_constant() {
        out.push((g.degree().unwrap(), g));
    }
    Ok(out)
}

/// Degrees of the irreducible factors of the radical of `f`, ascending,
/// with repetition.
pub fn factor_degrees(f: &Polynomial) -> Result<Vec<usize>> {
    let rad = radical(f)?;
    let mut out = Vec::new();
    for (d, prod) in distinct_degree_factorization(&rad)? {
        for _ in 0..prod.degree().unwrap() / d {
            out.push(d);
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Splits a monic product of distinct linear factors into its roots.
fn split_linear(g: &Polynomial, rng: &mut ChaCha8Rng, out: &mut Vec<FieldElement>) -> Result<()> {
    match g.degree() {
        None | Some(0) => return Ok(()),
        Some(1) => {
            out.push(g.coeff(0).neg());
            return Ok(());
        }
        _ => {}
    }
    let field = g.field();
    if field.size().is_some_and(|s| s <= super::roots::EXHAUSTIVE_LIMIT) {
        for a in field.elements(EXHAUSTIVE_LIMIT).unwrap() {
            if g.eval(&a)?.is_zero() {
                out.push(a);
            }
        }
        return Ok(());
    }
    let p = field.characteristic() as u64;
    let n = g.degree().unwrap();
    let one = Polynomial::one(field);
    loop {
        let coeffs: Vec<FieldElement> = (0..n)
            .map(|_| {
                let idx: u128 = rng.gen::<u128>() % field.size().unwrap_or(u128::MAX);
                field.element_from_index(idx)
            })
            .collect();
        let r = Polynomial::new(field, coeffs);
        if r.is_constant() {
            continue;
        }
        // r^{(q-1)/2} = (r · r^p · ... · r^{p^{k-1}})^{(p-1)/2}
        let mut s = r.rem(g)?;
        let mut norm = s.clone();
        for _ in 1..field.degree() {
            s = s.powmod(p, g)?;
            norm = (&norm * &s).rem(g)?;
        }
        let w = norm.powmod((p - 1) / 2, g)?;
        let d = (&w - &one).gcd(g)?;
        if !d.is_constant() && d.deg() < g.deg() {
            let e = g.exact_div(&d)?;
            split_linear(&d, rng, out)?;
            split_linear(&e, rng, out)?;
            return Ok(());
        }
    }
}

/// Roots of `f` in its own field with multiplicities, sorted ascending.
pub fn roots_in_field(f: &Polynomial) -> Result<Vec<(FieldElement, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_constant() {
        return Ok(Vec::new());
    }
    let rad = radical(f)?;
    let xq = x_to_q_mod(&rad)?;
    let lin = (&xq - &Polynomial::x(f.field())).gcd(&rad)?;
    let mut roots = Vec::new();
    let seed = SEED.with(|s| s.get());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    split_linear(&lin, &mut rng, &mut roots)?;
    roots.sort();
    roots
        .into_iter()
        .map(|r| {
            let m = f.multiplicity(&r)?;
            Ok((r, m))
        })
        .collect()
}

/// Roots by evaluating at every element; an independent check for small
/// fields.
pub fn roots_exhaustive(f: &Polynomial) -> Result<Vec<(FieldElement, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let field = f.field();
    let elems = field
        .elements(EXHAUSTIVE_LIMIT * 100)
        .ok_or(Error::DomainTooLarge {
            size: field.size().unwrap_or(u128::MAX),
            budget: EXHAUSTIVE_LIMIT * 100,
        })?;
    let mut out = Vec::new();
    for a in elems {
        if f.eval(&a)?.is_zero() {
            out.push((a.clone(), f.multiplicity(&a)?));
        }
    }
    out.sort();
    Ok(out)
}

/// Degree over the owner field of the splitting field of `f`.
pub fn splitting_degree(f: &Polynomial) -> Result<usize> {
    let mut deg = 1;
    for d in factor_degrees(f)? {
        deg = crate::ff::lcm(deg, d);
    }
    Ok(deg)
}

/// All roots of `f` with multiplicity. With `allow_extension`, they are
/// computed in the splitting field (the canonical field of degree
/// lcm of the irreducible factor degrees) and the embedding is returned;
/// otherwise only the roots in the owner field are reported.
pub fn roots_with_multiplicity(
    f: &Polynomial,
    allow_extension: bool,
) -> Result<(Vec<(FieldElement, usize)>, ExtensionMap)> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let field = f.field();
    if !allow_extension {
        return Ok((roots_in_field(f)?, ExtensionMap::identity(field)));
    }
    let deg = splitting_degree(f)?;
    let e = ExtensionMap::extend(field, deg);
    let g = f.embed(&e)?;
    Ok((roots_in_field(&g)?, e))
}

/// The smallest root of `f` in the smallest extension of its field that
/// contains a root.
pub fn min_root(f: &Polynomial) -> Result<(FieldElement, ExtensionMap)> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_constant() {
        return Err(Error::Inconsistency("constant polynomial has no roots".into()));
    }
    let field = f.field();
    let d = factor_degrees(f)?[0];
    let e = ExtensionMap::extend(field, d);
    let g = if d == 1 { f.clone() } else { f.embed(&e)? };
    let roots = roots_in_field(&g)?;
    let r = roots
        .into_iter()
        .next()
        .ok_or_else(|| Error::Inconsistency("no root in the minimal extension".into()))?;
    Ok((r.0, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::{make_field, Field};

    fn poly(f: &Field, c: &[i64]) -> Polynomial {
        Polynomial::new(f, c.iter().map(|&v| f.from_int(v)).collect())
    }

    #[test]
    fn examples_over_f3() {
        let f3 = make_field(3, 1, None).unwrap();
        let x2p1 = poly(&f3, &[1, 0, 1]);
        assert!(roots_with_multiplicity(&x2p1, false).unwrap().0.is_empty());
        let (roots, e) = roots_with_multiplicity(&x2p1, true).unwrap();
        let f9 = e.target().clone();
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        assert_eq!(
            roots,
            vec![(f9.element(&[0, 1]), 1), (f9.element(&[0, 2]), 1)]
        );
        let (r, _) = roots_with_multiplicity(&poly(&f3, &[0, 0, 1]), false).unwrap();
        assert_eq!(r, vec![(f3.zero(), 2)]);
        assert_eq!(
            roots_with_multiplicity(&Polynomial::zero(&f3), true).unwrap_err(),
            Error::ZeroPolynomial
        );
    }

    #[test]
    fn squarefree_with_pth_powers() {
        let f3 = make_field(3, 1, None).unwrap();
        // (x+1)^3 (x-1)^2 x
        let a = poly(&f3, &[1, 1]).pow(3);
        let b = poly(&f3, &[-1, 1]).pow(2);
        let f = &(&a * &b) * &Polynomial::x(&f3);
        let sqf = squarefree_factorization(&f).unwrap();
        assert_eq!(sqf.len(), 3);
        assert_eq!(sqf[0], (Polynomial::x(&f3), 1));
        assert_eq!(sqf[1], (poly(&f3, &[-1, 1]), 2));
        assert_eq!(sqf[2], (poly(&f3, &[1, 1]), 3));
        let roots = roots_in_field(&f).unwrap();
        assert_eq!(roots, roots_exhaustive(&f).unwrap());
    }

    #[test]
    fn large_field_uses_random_splitting() {
        let f = make_field(3, 8, None).unwrap();
        let roots: Vec<FieldElement> = (1..6).map(|i| f.element_from_index(i * 977)).collect();
        let mut p = Polynomial::one(&f);
        for r in &roots {
            p = &p * &Polynomial::linear(r);
        }
        let found: Vec<FieldElement> = roots_in_field(&p).unwrap().into_iter().map(|x| x.0).collect();
        let mut expected = roots.clone();
        expected.sort();
        assert_eq!(found, expected);
        let other = with_seed(7, || roots_in_field(&p).unwrap());
        assert_eq!(other.len(), 5);
    }

    #[test]
    fn min_root_of_wp_equation() {
        let f3 = make_field(3, 1, None).unwrap();
        let (g, e) = f3.one().solve_wp();
        assert_eq!(e.target().degree(), 3);
        assert_eq!(&g.pow(3) - &g, e.target().one());
    }
}
