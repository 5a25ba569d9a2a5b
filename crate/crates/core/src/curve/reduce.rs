use crate::error::{Error, Result};
use crate::polyrat::{factor_degrees, squarefree_factorization, Polynomial, RationalFunction};

/// c^{1/p} in the reduced ring F_q[x]/(g) for squarefree `g`: every
/// component field has F_p-degree dividing `n`, so r ↦ r^p has inverse
/// r ↦ r^{p^{n-1}}.
fn pth_root_mod(c: &Polynomial, g: &Polynomial, n: usize) -> Result<Polynomial> {
    let p = g.field().characteristic() as u64;
    let mut r = c.rem(g)?;
    for _ in 1..n {
        r = r.powmod(p, g)?;
    }
    Ok(r)
}

/// One elimination step, or `None` if no pole order is divisible by p.
fn step(f: &RationalFunction, p: usize) -> Result<Option<RationalFunction>> {
    let field = f.field();
    // pole at infinity
    let inf = f.order_at_infinity();
    if inf > 0 && inf % p == 0 {
        let (q, _) = f.num().divrem(f.den())?;
        let c = q.leading().expect("pole at infinity").frobenius_inverse();
        return Ok(Some(RationalFunction::from_poly(Polynomial::monomial(&c, inf / p))));
    }
    if f.den().is_constant() {
        return Ok(None);
    }
    for (g, m) in squarefree_factorization(f.den())? {
        if m % p != 0 {
            continue;
        }
        let k = m / p;
        // f = A / (g^m E) with gcd(g, E) = 1
        let gm = g.pow(m as u64);
        let e = f.den().exact_div(&gm)?;
        let e_inv = {
            let (one, s, _) = e.rem(&g)?.ext_gcd(&g)?;
            debug_assert!(one.is_one());
            s
        };
        let c = (f.num() * &e_inv).rem(&g)?;
        let lcm = factor_degrees(&g)?
            .into_iter()
            .fold(1, crate::ff::lcm);
        let b = pth_root_mod(&c, &g, field.degree() * lcm)?;
        let h = RationalFunction::new(b, g.pow(k as u64))?;
        return Ok(Some(h));
    }
    Ok(None)
}

/// Removes every pole whose order is divisible by p by subtracting
/// Artin-Schreier terms: returns (f_red, h) with f = f_red + h^p − h and
/// all pole orders of f_red prime to p. Fails with `TrivialCover` when
/// f_red is constant, i.e. the cover is not irreducible.
pub fn as_reduce(p: u32, f: &RationalFunction) -> Result<(RationalFunction, RationalFunction)> {
    if f.field().characteristic() != p {
        return Err(Error::FieldMismatch(
            format!("characteristic {p}"),
            f.field().descriptor(),
        ));
    }
    let mut cur = f.clone();
    let mut h = RationalFunction::zero(f.field());
    while let Some(term) = step(&cur, p as usize)? {
        cur = cur.checked_sub(&term.wp())?;
        h = h.checked_add(&term)?;
    }
    if cur.is_constant() {
        return Err(Error::TrivialCover);
    }
    Ok((cur, h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::make_field;
    use crate::polyrat::parse_rational;

    #[test]
    fn examples() {
        let f3 = make_field(3, 1, None).unwrap();
        let r = |s: &str| parse_rational(s, &f3).unwrap();
        assert_eq!(as_reduce(3, &r("x^3+x")).unwrap(), (r("2x"), r("x")));
        assert_eq!(as_reduce(3, &r("1/x^3+1/x")).unwrap(), (r("2/x"), r("1/x")));
        assert_eq!(as_reduce(3, &r("x^3-x")).unwrap_err(), Error::TrivialCover);
    }

    #[test]
    fn nonrational_poles() {
        let f9 = make_field(3, 2, None).unwrap();
        let f = parse_rational("t/(x^2+x+2)^3 + x^9 + x^2", &f9).unwrap();
        let (g, h) = as_reduce(3, &f).unwrap();
        assert_eq!(&g + &h.wp(), f);
        for o in g.pole_orders().unwrap() {
            assert_ne!(o % 3, 0);
        }
    }

    #[test]
    fn idempotent() {
        let f3 = make_field(3, 1, None).unwrap();
        let f = parse_rational("x^4+x^2+1/(x-1)", &f3).unwrap();
        let (g, h) = as_reduce(3, &f).unwrap();
        assert_eq!(g, f);
        assert!(h.is_zero());
    }
}
