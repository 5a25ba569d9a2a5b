use crate::curve::split_constant;
use crate::error::{Error, Result};
use crate::ff::{ExtensionMap, FieldElement};
use crate::polyrat::{min_root, principal_parts, Polynomial, RationalFunction};

/// Replaces every term b·T^{kp} of `c` (T a local coordinate, exponents
/// processed in decreasing order) by b^{1/p}·T^k; returns the list of
/// (k, b^{1/p}) moved into h.
fn eliminate_local(c: &mut [FieldElement], p: usize) -> Vec<(usize, FieldElement)> {
    let mut moved = Vec::new();
    for j in (1..c.len()).rev() {
        if j % p == 0 && !c[j].is_zero() {
            let b = c[j].frobenius_inverse();
            c[j] = c[j].field().zero();
            c[j / p] = &c[j / p] + &b;
            moved.push((j / p, b));
        }
    }
    moved
}

/// Removes the monomials x^{kp} (k > 0) of the polynomial part and the
/// terms (x − μ)^{-kp} at every finite pole: returns (g, h) with
/// g = f − (h^p − h). Poles must be rational over the field of f. The
/// constant term is left alone.
pub fn eliminate_p_powers(f: &RationalFunction) -> Result<(RationalFunction, RationalFunction)> {
    let field = f.field();
    let p = field.characteristic() as usize;
    let mut pp = principal_parts(f)?;
    if !pp.extension.is_identity() {
        return Err(Error::PolesNotRational);
    }
    let mut h = RationalFunction::zero(field);
    let mut changed = false;
    let mut q: Vec<FieldElement> = pp.polynomial.coeffs().to_vec();
    for (k, b) in eliminate_local(&mut q, p) {
        changed = true;
        h = h.checked_add(&RationalFunction::from_poly(Polynomial::monomial(&b, k)))?;
    }
    pp.polynomial = Polynomial::new(field, q);
    for (mu, c) in pp.parts.iter_mut() {
        let mut v: Vec<FieldElement> = c.coeffs().to_vec();
        for (k, b) in eliminate_local(&mut v, p) {
            changed = true;
            h = h.checked_add(&RationalFunction::pole_term(&b, mu, k))?;
        }
        *c = Polynomial::new(field, v);
    }
    if !changed {
        return Ok((f.clone(), h));
    }
    let g = pp.recombine()?;
    debug_assert_eq!(&g + &h.wp(), *f);
    Ok((g, h))
}

/// The condition on the shift β for a monic polynomial of degree d with
/// ⌊⌊d/p⌋/p⌋ = 0: f'(β) = 0 when d < p, and f'(β)^p + u_p(β) = 0
/// otherwise, where u_p(β) is the coefficient of x^p in f(x + β).
fn shift_condition(f: &Polynomial, p: usize) -> Polynomial {
    let field = f.field();
    let d1 = f.derivative();
    let d = f.degree().expect("nonzero");
    if d < p {
        return d1;
    }
    // f'(β)^p: coefficients raised to the p-th power at exponents times p
    let mut frob = vec![field.zero(); d1.coeffs().len() * p];
    for (i, c) in d1.coeffs().iter().enumerate() {
        frob[i * p] = c.frobenius();
    }
    // u_p(β) = Σ_j a_j·C(j, p)·β^{j−p}, and C(j, p) ≡ ⌊j/p⌋ mod p
    let mut up = vec![field.zero(); d - p + 1];
    for j in p..=d {
        let binom = field.from_int(((j / p) % p) as i64);
        up[j - p] = &f.coeff(j) * &binom;
    }
    &Polynomial::new(field, frob) + &Polynomial::new(field, up)
}

/// Chooses β for the single-pole normalization of a monic polynomial of
/// degree d > 1 prime to p: the smallest root of the shift condition, in
/// the smallest extension containing one.
pub(crate) fn single_pole_shift(f: &Polynomial) -> Result<(FieldElement, ExtensionMap)> {
    let field = f.field();
    let p = field.characteristic() as usize;
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let d = f.degree().unwrap_or(0);
    if d <= 1 {
        return Err(Error::Inconsistency(format!("degree {d} is too small to normalize")));
    }
    if d % p == 0 {
        return Err(Error::DegreeDivisibleByP(d));
    }
    if (d / p) / p > 0 {
        return Err(Error::UnsupportedNesting(d));
    }
    min_root(&shift_condition(f, p))
}

/// Normalizes a monic polynomial f of degree d > 1 with p ∤ d and d < p²:
/// returns (g, β, h, e) with g = f(x + β) − (h^p − h) monic of degree d,
/// without linear term and without monomials x^{kp} (k ≥ 0). β, h and g live
/// in the target of `e`.
pub fn normalize_single_pole(
    f: &Polynomial,
) -> Result<(Polynomial, FieldElement, Polynomial, ExtensionMap)> {
    let (beta, e) = single_pole_shift(f)?;
    let shifted = f.embed(&e)?.shift(&beta);
    let (g, h) = eliminate_p_powers(&RationalFunction::from_poly(shifted))?;
    let (g, c) = split_constant(&g)?;
    let (b0, e2) = c.solve_wp();
    let h = h.embed(&e2)?;
    let g = g.embed(&e2)?;
    let h = h.checked_add(&RationalFunction::constant(&b0))?;
    let g = g.as_polynomial().expect("polynomial").clone();
    let h = h.as_polynomial().expect("polynomial").clone();
    Ok((g, e2.embed(&beta)?, h, e.then(&e2)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::make_field;
    use crate::polyrat::parse_rational;

    #[test]
    fn eliminate_examples() {
        let f3 = make_field(3, 1, None).unwrap();
        let r = |s: &str| parse_rational(s, &f3).unwrap();
        assert_eq!(eliminate_p_powers(&r("x^4+x^3+x")).unwrap(), (r("x^4+2x"), r("x")));
        assert_eq!(eliminate_p_powers(&r("x^4")).unwrap(), (r("x^4"), r("0")));
        assert_eq!(
            eliminate_p_powers(&r("x^2+1/x^3+1/x")).unwrap(),
            (r("x^2+2/x"), r("1/x"))
        );
    }

    #[test]
    fn nested_terms() {
        let f3 = make_field(3, 1, None).unwrap();
        let f = parse_rational("x^9 + x^3 + 1/(x-1)^9 + x^2", &f3).unwrap();
        let (g, h) = eliminate_p_powers(&f).unwrap();
        assert_eq!(&g + &h.wp(), f);
        assert_eq!(g, parse_rational("x^2 + 2x + 1/(x-1)", &f3).unwrap());
    }

    #[test]
    fn shift_examples() {
        let f3 = make_field(3, 1, None).unwrap();
        let f = Polynomial::from_prime_residues(&f3, &[0, 0, 0, 1, 1]);
        let (g, beta, h, e) = normalize_single_pole(&f).unwrap();
        assert_eq!(g, Polynomial::x(e.target()).pow(4));
        assert!(beta.is_one());
        assert_eq!(h.coeff(1), e.target().from_int(2));
        let b0 = h.coeff(0);
        assert_eq!(&b0.pow(3) - &b0, e.target().from_int(2));
        let lhs = f.embed(&e).unwrap().shift(&beta);
        let hp = h.frobenius();
        assert_eq!(&g + &(&hp - &h), lhs);

        let f = Polynomial::from_prime_residues(&f3, &[0, 0, 1, 0, 1]);
        let (g, beta, _, e) = normalize_single_pole(&f).unwrap();
        assert!(e.is_identity());
        assert!(beta.is_zero());
        assert_eq!(g, f);

        let f7 = make_field(7, 1, None).unwrap();
        let f = Polynomial::from_prime_residues(&f7, &[0, 1, 1]);
        let (g, beta, _, e) = normalize_single_pole(&f).unwrap();
        // the removed constant 12 = 5 needs γ^7 − γ = 5 in a degree-7 extension
        assert_eq!(e.target().degree(), 7);
        assert_eq!(beta, e.embed(&f7.from_int(3)).unwrap());
        assert_eq!(g, Polynomial::x(e.target()).pow(2));
    }

    #[test]
    fn shift_errors() {
        let f3 = make_field(3, 1, None).unwrap();
        let f = Polynomial::from_prime_residues(&f3, &[0, 1, 0, 2]);
        assert_eq!(normalize_single_pole(&f).unwrap_err(), Error::NotMonic);
        let f = Polynomial::from_prime_residues(&f3, &[0, 1, 0, 1]);
        assert_eq!(normalize_single_pole(&f).unwrap_err(), Error::DegreeDivisibleByP(3));
        let mut c = vec![0; 11];
        c[10] = 1;
        let f = Polynomial::from_prime_residues(&f3, &c);
        assert_eq!(normalize_single_pole(&f).unwrap_err(), Error::UnsupportedNesting(10));
    }
}
