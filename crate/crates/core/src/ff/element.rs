use super::{fp, ExtensionMap, Field};
use crate::error::{Error, Result};
use smallvec::SmallVec;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// An element of a [`Field`], stored as its k residues (constant first).
///
/// Elements are ordered lexicographically on that residue sequence, which
/// is the order used for every deterministic root choice in the crate.
#[derive(Clone)]
pub struct FieldElement {
    field: Field,
    c: SmallVec<[u32; 8]>,
}

pub(crate) fn format_residues(c: &[u32], sym: &str) -> String {
    let mut parts = Vec::new();
    for (i, &v) in c.iter().enumerate() {
        if v == 0 {
            continue;
        }
        let term = match (i, v) {
            (0, v) => v.to_string(),
            (1, 1) => sym.to_string(),
            (1, v) => format!("{v}*{sym}"),
            (i, 1) => format!("{sym}^{i}"),
            (i, v) => format!("{v}*{sym}^{i}"),
        };
        parts.push(term);
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join("+")
    }
}

impl FieldElement {
    pub(crate) fn from_raw(field: Field, c: SmallVec<[u32; 8]>) -> Self {
        debug_assert_eq!(c.len(), field.degree());
        FieldElement { field, c }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Residues of the coefficients of 1, t, ..., t^{k-1}.
    pub fn coeffs(&self) -> &[u32] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&v| v == 0)
    }

    pub fn is_one(&self) -> bool {
        self.c[0] == 1 && self.c[1..].iter().all(|&v| v == 0)
    }

    /// The residue in [0, p) if the element lies in the prime field.
    pub fn prime_value(&self) -> Option<u32> {
        if self.c[1..].iter().all(|&v| v == 0) {
            Some(self.c[0])
        } else {
            None
        }
    }

    fn p(&self) -> u32 {
        self.field.characteristic()
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        self.field.check_same(&o.field)?;
        let p = self.p();
        let c = self
            .c
            .iter()
            .zip(o.c.iter())
            .map(|(&a, &b)| {
                let s = a + b;
                if s >= p {
                    s - p
                } else {
                    s
                }
            })
            .collect();
        Ok(Self::from_raw(self.field.clone(), c))
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self> {
        self.field.check_same(&o.field)?;
        let p = self.p();
        let c = self
            .c
            .iter()
            .zip(o.c.iter())
            .map(|(&a, &b)| if a >= b { a - b } else { a + p - b })
            .collect();
        Ok(Self::from_raw(self.field.clone(), c))
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        self.field.check_same(&o.field)?;
        let p = self.p() as u64;
        let k = self.c.len();
        if k == 1 {
            let v = (self.c[0] as u64 * o.c[0] as u64 % p) as u32;
            return Ok(Self::from_raw(self.field.clone(), smallvec::smallvec![v]));
        }
        let mut acc: SmallVec<[u64; 16]> = smallvec::smallvec![0; 2 * k - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u64 * b as u64) % p;
            }
        }
        // reduce by the monic modulus, top degree first
        let m = self.field.modulus();
        for i in (k..2 * k - 1).rev() {
            let top = acc[i];
            if top == 0 {
                continue;
            }
            acc[i] = 0;
            for (j, &mj) in m.iter().enumerate().take(k) {
                if mj != 0 {
                    let idx = i - k + j;
                    acc[idx] = (acc[idx] + (p - top) * mj as u64) % p;
                }
            }
        }
        let c = acc[..k].iter().map(|&v| v as u32).collect();
        Ok(Self::from_raw(self.field.clone(), c))
    }

    pub fn neg(&self) -> Self {
        let p = self.p();
        let c = self.c.iter().map(|&a| if a == 0 { 0 } else { p - a }).collect();
        Self::from_raw(self.field.clone(), c)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.p();
        if self.c.len() == 1 {
            let v = fp::inv_mod(self.c[0], p);
            return Ok(Self::from_raw(self.field.clone(), smallvec::smallvec![v]));
        }
        let mut raw: Vec<u32> = self.c.to_vec();
        fp::trim(&mut raw);
        let inv = fp::inv_in_quotient(&raw, self.field.modulus(), p)
            .ok_or_else(|| Error::Inconsistency("modulus is not irreducible".into()))?;
        Ok(self.field.from_residues(&inv))
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        self.field.check_same(&o.field)?;
        self.checked_mul(&o.inv()?)
    }

    pub fn pow(&self, mut e: u128) -> Self {
        let mut acc = self.field.one();
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

    /// Integer power, negative exponents invert.
    pub fn powi(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u128))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs() as u128))
        }
    }

    /// The Frobenius image a^p.
    pub fn frobenius(&self) -> Self {
        if self.c.len() == 1 {
            return self.clone();
        }
        self.pow(self.p() as u128)
    }

    /// The unique r with r^p = a, namely a^{p^{k-1}}.
    pub fn frobenius_inverse(&self) -> Self {
        let mut r = self.clone();
        for _ in 1..self.c.len() {
            r = r.frobenius();
        }
        r
    }

    /// Some r with r^n = a in the smallest extension containing one,
    /// choosing the lexicographically smallest such root there.
    pub fn nth_root(&self, n: u64) -> (FieldElement, ExtensionMap) {
        if self.is_zero() || n == 1 {
            return (self.clone(), ExtensionMap::identity(&self.field));
        }
        let poly = crate::polyrat::Polynomial::binomial(n as usize, &self.neg());
        crate::polyrat::min_root(&poly).expect("nonzero polynomial of positive degree")
    }

    /// Some γ with γ^p − γ = a, in the smallest extension containing one
    /// (degree 1 or p over the owner field), lexicographically smallest.
    pub fn solve_wp(&self) -> (FieldElement, ExtensionMap) {
        if self.is_zero() {
            return (self.clone(), ExtensionMap::identity(&self.field));
        }
        let f = &self.field;
        let p = self.p() as usize;
        let mut coeffs = vec![f.zero(); p + 1];
        coeffs[0] = self.neg();
        coeffs[1] = f.from_int(-1);
        coeffs[p] = f.one();
        let poly = crate::polyrat::Polynomial::new(f, coeffs);
        crate::polyrat::min_root(&poly).expect("nonzero polynomial of positive degree")
    }

    /// Every n-th root of `self` that lies in the owner field, sorted.
    pub fn nth_roots_in_field(&self, n: u64) -> Vec<FieldElement> {
        if self.is_zero() {
            return vec![self.clone()];
        }
        let poly = crate::polyrat::Polynomial::binomial(n as usize, &self.neg());
        crate::polyrat::roots_in_field(&poly)
            .map(|v| v.into_iter().map(|(r, _)| r).collect())
            .unwrap_or_default()
    }
}

/// Free function form of [`FieldElement::frobenius_inverse`].
pub fn frobenius_inverse(a: &FieldElement) -> FieldElement {
    a.frobenius_inverse()
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c && self.field.same(&other.field)
    }
}

impl Eq for FieldElement {}

impl std::hash::Hash for FieldElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.c.hash(state);
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.c.cmp(&other.c)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_residues(&self.c, self.field.symbol()))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                (&self).$m(rhs)
            }
        }
        impl $tr<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
binop!(Div, div, checked_div);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::neg(self)
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::neg(&self)
    }
}

#[cfg(test)]
mod tests {
    use crate::ff::make_field;

    #[test]
    fn small_arithmetic() {
        let f3 = make_field(3, 1, None).unwrap();
        assert_eq!(f3.from_int(2) + f3.from_int(2), f3.from_int(1));
        let f9 = make_field(3, 2, None).unwrap();
        let t = f9.generator();
        assert_eq!(&t * &t, f9.from_int(2));
        assert_eq!(t.inv().unwrap(), f9.element(&[0, 2]));
        assert_eq!(t.to_string(), "t");
        assert_eq!(f9.element(&[1, 2]).to_string(), "1+2*t");
    }

    #[test]
    fn frobenius_inverse_examples() {
        let f3 = make_field(3, 1, None).unwrap();
        assert_eq!(f3.from_int(2).frobenius_inverse(), f3.from_int(2));
        let f9 = make_field(3, 2, None).unwrap();
        assert_eq!(f9.element(&[0, 2]).frobenius_inverse(), f9.generator());
        assert!(f9.zero().frobenius_inverse().is_zero());
    }

    #[test]
    fn mismatched_fields() {
        let f3 = make_field(3, 1, None).unwrap();
        let f9 = make_field(3, 2, None).unwrap();
        assert!(f3.one().checked_add(&f9.one()).is_err());
        assert!(f9.zero().inv().is_err());
    }
}
