use crate::error::{Error, Result};
use crate::ff::{ExtensionMap, Field, FieldElement};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Dense univariate polynomial in x over a [`Field`], constant term first,
/// without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: Field,
    c: Vec<FieldElement>,
}

impl Polynomial {
    pub fn new(field: &Field, coeffs: Vec<FieldElement>) -> Polynomial {
        let mut p = Polynomial {
            field: field.clone(),
            c: coeffs,
        };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.c.last().is_some_and(|c| c.is_zero()) {
            self.c.pop();
        }
    }

    pub fn zero(field: &Field) -> Polynomial {
        Polynomial {
            field: field.clone(),
            c: Vec::new(),
        }
    }

    pub fn one(field: &Field) -> Polynomial {
        Self::constant(&field.one())
    }

    pub fn constant(c: &FieldElement) -> Polynomial {
        Polynomial::new(c.field(), vec![c.clone()])
    }

    pub fn x(field: &Field) -> Polynomial {
        Self::monomial(&field.one(), 1)
    }

    /// c·x^n
    pub fn monomial(c: &FieldElement, n: usize) -> Polynomial {
        let f = c.field();
        let mut v = vec![f.zero(); n + 1];
        v[n] = c.clone();
        Polynomial::new(f, v)
    }

    /// x^n + c
    pub fn binomial(n: usize, c: &FieldElement) -> Polynomial {
        let f = c.field();
        let mut v = vec![f.zero(); n + 1];
        v[n] = f.one();
        v[0] = &v[0] + c;
        Polynomial::new(f, v)
    }

    /// x − a
    pub fn linear(a: &FieldElement) -> Polynomial {
        Polynomial::new(a.field(), vec![a.neg(), a.field().one()])
    }

    /// Polynomial over `field` whose coefficients are the given residues.
    pub fn from_prime_residues(field: &Field, residues: &[u32]) -> Polynomial {
        let c = residues.iter().map(|&r| field.from_int(r as i64)).collect();
        Polynomial::new(field, c)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.c
    }

    /// Coefficient of x^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.c.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree as a signed integer, with −1 for zero.
    pub fn deg(&self) -> isize {
        self.c.len() as isize - 1
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.c.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            None => self.clone(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.inv().expect("leading coefficient is nonzero")),
        }
    }

    pub fn scale(&self, s: &FieldElement) -> Polynomial {
        Polynomial::new(&self.field, self.c.iter().map(|c| c * s).collect())
    }

    pub fn map_coeffs(&self, f: impl Fn(&FieldElement) -> FieldElement) -> Polynomial {
        Polynomial::new(&self.field, self.c.iter().map(f).collect())
    }

    pub fn embed(&self, e: &ExtensionMap) -> Result<Polynomial> {
        self.field.check_same(e.source())?;
        let c = self.c.iter().map(|c| e.embed(c)).collect::<Result<_>>()?;
        Ok(Polynomial::new(e.target(), c))
    }

    fn same_field(&self, o: &Polynomial) -> Result<()> {
        self.field.check_same(&o.field)
    }

    pub fn checked_add(&self, o: &Polynomial) -> Result<Polynomial> {
        self.same_field(o)?;
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| match (self.c.get(i), o.c.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Ok(Polynomial::new(&self.field, c))
    }

    pub fn checked_sub(&self, o: &Polynomial) -> Result<Polynomial> {
        self.checked_add(&o.neg())
    }

    pub fn neg(&self) -> Polynomial {
        self.map_coeffs(|c| c.neg())
    }

    pub fn checked_mul(&self, o: &Polynomial) -> Result<Polynomial> {
        self.same_field(o)?;
        if self.is_zero() || o.is_zero() {
            return Ok(Polynomial::zero(&self.field));
        }
        let mut out = vec![self.field.zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        Ok(Polynomial::new(&self.field, out))
    }

    /// Quotient and remainder, deg(rem) < deg(divisor).
    pub fn divrem(&self, d: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        self.same_field(d)?;
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        if self.c.len() <= dd {
            return Ok((Polynomial::zero(&self.field), self.clone()));
        }
        let lead_inv = d.c[dd].inv()?;
        let mut r = self.c.clone();
        let mut q = vec![self.field.zero(); self.c.len() - dd];
        for i in (dd..r.len()).rev() {
            if r[i].is_zero() {
                continue;
            }
            let coef = &r[i] * &lead_inv;
            for (j, dj) in d.c.iter().enumerate() {
                let idx = i - dd + j;
                r[idx] = &r[idx] - &(&coef * dj);
            }
            q[i - dd] = coef;
        }
        Ok((Polynomial::new(&self.field, q), Polynomial::new(&self.field, r)))
    }

    pub fn rem(&self, d: &Polynomial) -> Result<Polynomial> {
        Ok(self.divrem(d)?.1)
    }

    /// Exact quotient; errors if the division leaves a remainder.
    pub fn exact_div(&self, d: &Polynomial) -> Result<Polynomial> {
        let (q, r) = self.divrem(d)?;
        if !r.is_zero() {
            return Err(Error::Inconsistency("inexact polynomial division".into()));
        }
        Ok(q)
    }

    /// Monic gcd; gcd(0, 0) is an error.
    pub fn gcd(&self, o: &Polynomial) -> Result<Polynomial> {
        self.same_field(o)?;
        if self.is_zero() && o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Returns (g, s, t) with g = s·self + t·o monic.
    pub fn ext_gcd(&self, o: &Polynomial) -> Result<(Polynomial, Polynomial, Polynomial)> {
        self.same_field(o)?;
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Polynomial::one(f), Polynomial::zero(f));
        let (mut t0, mut t1) = (Polynomial::zero(f), Polynomial::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1)?;
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        let l = r0.leading().ok_or(Error::DivisionByZero)?.inv()?;
        Ok((r0.scale(&l), s0.scale(&l), t0.scale(&l)))
    }

    pub fn derivative(&self) -> Polynomial {
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &self.field.from_int(i as i64))
            .collect();
        Polynomial::new(&self.field, c)
    }

    pub fn eval(&self, a: &FieldElement) -> Result<FieldElement> {
        self.field.check_same(a.field())?;
        let mut acc = self.field.zero();
        for c in self.c.iter().rev() {
            acc = &(&acc * a) + c;
        }
        Ok(acc)
    }

    /// self(g(x)).
    pub fn compose(&self, g: &Polynomial) -> Result<Polynomial> {
        self.same_field(g)?;
        let mut acc = Polynomial::zero(&self.field);
        for c in self.c.iter().rev() {
            acc = &(&acc * g) + &Polynomial::constant(c);
        }
        Ok(acc)
    }

    /// self(x + a).
    pub fn shift(&self, a: &FieldElement) -> Polynomial {
        let g = Polynomial::new(&self.field, vec![a.clone(), self.field.one()]);
        self.compose(&g).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn pow(&self, mut e: u64) -> Polynomial {
        let mut acc = Polynomial::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// self^e mod m.
    pub fn powmod(&self, mut e: u64, m: &Polynomial) -> Result<Polynomial> {
        let mut acc = Polynomial::one(&self.field).rem(m)?;
        let mut base = self.rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(m)?;
            }
            e >>= 1;
            if e > 0 {
                base = (&base * &base).rem(m)?;
            }
        }
        Ok(acc)
    }

    /// The p-th power computed coefficient-wise: (Σ c_i x^i)^p = Σ c_i^p x^{ip}.
    pub fn frobenius(&self) -> Polynomial {
        let p = self.field.characteristic() as usize;
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![self.field.zero(); (self.c.len() - 1) * p + 1];
        for (i, c) in self.c.iter().enumerate() {
            v[i * p] = c.frobenius();
        }
        Polynomial::new(&self.field, v)
    }

    /// For a polynomial in x^p only, the unique g with g^p = self.
    pub fn pth_root(&self) -> Result<Polynomial> {
        let p = self.field.characteristic() as usize;
        let mut v = Vec::new();
        for (i, c) in self.c.iter().enumerate() {
            if i % p == 0 {
                v.push(c.frobenius_inverse());
            } else if !c.is_zero() {
                return Err(Error::Inconsistency("not a p-th power".into()));
            }
        }
        Ok(Polynomial::new(&self.field, v))
    }

    /// Multiplicity of the root `a`.
    pub fn multiplicity(&self, a: &FieldElement) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let lin = Polynomial::linear(a);
        let mut cur = self.clone();
        let mut m = 0;
        loop {
            let (q, r) = cur.divrem(&lin)?;
            if !r.is_zero() {
                return Ok(m);
            }
            m += 1;
            cur = q;
        }
    }

    /// Number of nonzero coefficients.
    pub fn term_count(&self) -> usize {
        self.c.iter().filter(|c| !c.is_zero()).count()
    }
}

/// Formats a coefficient so that it can be juxtaposed with `*x^i`.
pub(crate) fn coeff_factor(c: &FieldElement) -> String {
    let s = c.to_string();
    if s.contains('+') {
        format!("({s})")
    } else {
        s
    }
}

pub(crate) fn format_poly_in(p: &Polynomial, var: &str) -> String {
    let mut parts = Vec::new();
    for (i, c) in p.c.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        let term = if i == 0 {
            c.to_string()
        } else if c.is_one() {
            mono
        } else {
            format!("{}*{mono}", coeff_factor(c))
        };
        parts.push(term);
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_poly_in(self, "x"))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

macro_rules! poly_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}

poly_binop!(Add, add, checked_add);
poly_binop!(Sub, sub, checked_sub);
poly_binop!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}
