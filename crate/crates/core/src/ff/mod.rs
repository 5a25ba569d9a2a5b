//! Finite fields F_{p^k} = F_p[t]/(m(t)) with runtime parameters.

mod element;
mod extension;
pub(crate) mod fp;

pub use element::{frobenius_inverse, FieldElement};
pub(crate) use extension::lcm;
pub use extension::{common_extension, ExtensionMap};

use crate::error::{Error, Result};
use std::fmt;
use std::sync::Arc;

struct FieldData {
    p: u32,
    k: usize,
    // monic, length k + 1, constant term first; prime fields use t
    modulus: Vec<u32>,
    symbol: String,
}

/// A finite field of odd characteristic, presented as F_p[t]/(m).
///
/// Two fields compare equal when their characteristic, degree and modulus
/// agree; the generator symbol is cosmetic.
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

impl Field {
    /// Builds F_{p^k}. Without a modulus the canonical one is used: the
    /// monic irreducible whose coefficient sequence (constant term first)
    /// is lexicographically smallest.
    pub fn new(p: u64, k: usize, modulus: Option<&[u32]>) -> Result<Field> {
        if p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        if !fp::is_prime(p) || p > u32::MAX as u64 {
            return Err(Error::NotPrime(p));
        }
        let p = p as u32;
        if k == 0 {
            return Err(Error::InvalidModulus("degree must be at least 1".into()));
        }
        let modulus = match modulus {
            None => fp::canonical_modulus(p, k),
            Some(_) if k == 1 => vec![0, 1],
            Some(m) => {
                let mut m: Vec<u32> = m.iter().map(|c| c % p).collect();
                fp::trim(&mut m);
                if m.len() != k + 1 {
                    return Err(Error::InvalidModulus(format!(
                        "expected degree {k}, got degree {}",
                        m.len().saturating_sub(1)
                    )));
                }
                if m[k] != 1 {
                    return Err(Error::InvalidModulus("modulus must be monic".into()));
                }
                if !fp::is_irreducible(&m, p) {
                    return Err(Error::NotIrreducible(p));
                }
                m
            }
        };
        Ok(Field(Arc::new(FieldData {
            p,
            k,
            modulus,
            symbol: "t".to_string(),
        })))
    }

    pub fn prime(p: u64) -> Result<Field> {
        Field::new(p, 1, None)
    }

    /// The canonical field of the given degree; panics on invalid `p`.
    pub(crate) fn canonical(p: u32, k: usize) -> Field {
        Field::new(p as u64, k, None).expect("valid characteristic")
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> usize {
        self.0.k
    }

    /// Modulus coefficients, constant term first (monic, length k + 1).
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn symbol(&self) -> &str {
        &self.0.symbol
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.k == 1
    }

    /// Number of elements, when it fits in a u128.
    pub fn size(&self) -> Option<u128> {
        (self.0.p as u128).checked_pow(self.0.k as u32)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::from_raw(self.clone(), smallvec::smallvec![0; self.0.k])
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        let p = self.0.p as i64;
        let mut c: smallvec::SmallVec<[u32; 8]> = smallvec::smallvec![0; self.0.k];
        c[0] = n.rem_euclid(p) as u32;
        FieldElement::from_raw(self.clone(), c)
    }

    /// The class of t. In a prime field this is the root of the internal
    /// modulus t, i.e. zero.
    pub fn generator(&self) -> FieldElement {
        if self.0.k == 1 {
            return self.zero();
        }
        let mut c: smallvec::SmallVec<[u32; 8]> = smallvec::smallvec![0; self.0.k];
        c[1] = 1;
        FieldElement::from_raw(self.clone(), c)
    }

    /// Element with the given coefficients (constant first), reduced
    /// modulo p and the modulus.
    pub fn element(&self, coeffs: &[i64]) -> FieldElement {
        let p = self.0.p as i64;
        let raw: Vec<u32> = coeffs.iter().map(|c| c.rem_euclid(p) as u32).collect();
        self.from_residues(&raw)
    }

    pub(crate) fn from_residues(&self, raw: &[u32]) -> FieldElement {
        let k = self.0.k;
        let reduced = if raw.len() > k {
            if k == 1 {
                // prime field: t is 0
                vec![raw[0] % self.0.p]
            } else {
                fp::rem(raw, &self.0.modulus, self.0.p)
            }
        } else {
            raw.to_vec()
        };
        let mut c: smallvec::SmallVec<[u32; 8]> = smallvec::smallvec![0; k];
        for (i, v) in reduced.into_iter().enumerate().take(k) {
            c[i] = v % self.0.p;
        }
        FieldElement::from_raw(self.clone(), c)
    }

    /// The element whose coefficients are the base-p digits of `index`
    /// (least significant digit is the constant term).
    pub fn element_from_index(&self, mut index: u128) -> FieldElement {
        let p = self.0.p as u128;
        let mut c: smallvec::SmallVec<[u32; 8]> = smallvec::smallvec![0; self.0.k];
        for slot in c.iter_mut() {
            *slot = (index % p) as u32;
            index /= p;
        }
        FieldElement::from_raw(self.clone(), c)
    }

    /// All elements in index order; `None` if the field has more than
    /// `limit` elements.
    pub fn elements(&self, limit: u128) -> Option<impl Iterator<Item = FieldElement> + '_> {
        let size = self.size()?;
        if size > limit {
            return None;
        }
        Some((0..size).map(move |i| self.element_from_index(i)))
    }

    /// Serialized descriptor "p^k:m", with the modulus omitted for prime fields.
    pub fn descriptor(&self) -> String {
        if self.0.k == 1 {
            format!("{}^1", self.0.p)
        } else {
            format!("{}^{}:{}", self.0.p, self.0.k, self.modulus_string())
        }
    }

    pub fn modulus_string(&self) -> String {
        element::format_residues(&self.0.modulus, &self.0.symbol)
    }

    pub(crate) fn same(&self, other: &Field) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.k == other.0.k && self.0.modulus == other.0.modulus)
    }

    pub(crate) fn check_same(&self, other: &Field) -> Result<()> {
        if self.same(other) {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.descriptor(), other.descriptor()))
        }
    }
}

/// Same as [`Field::new`].
pub fn make_field(p: u64, k: usize, modulus: Option<&[u32]>) -> Result<Field> {
    Field::new(p, k, modulus)
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for Field {}

impl std::hash::Hash for Field {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.modulus.hash(state);
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F({})", self.descriptor())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_fields() {
        let f9 = make_field(3, 2, None).unwrap();
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        assert_eq!(f9.descriptor(), "3^2:1+t^2");
        assert_eq!(make_field(3, 1, None).unwrap().descriptor(), "3^1");
        assert_eq!(make_field(3, 2, None).unwrap(), f9);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(make_field(2, 1, None).unwrap_err(), Error::EvenCharacteristic);
        assert_eq!(make_field(9, 1, None).unwrap_err(), Error::NotPrime(9));
        assert_eq!(
            make_field(3, 2, Some(&[0, 1, 1])).unwrap_err(),
            Error::NotIrreducible(3)
        );
    }

    #[test]
    fn nine_degree_two_candidates() {
        // of the 9 monic quadratics over F_3, exactly 3 are irreducible
        let count = (0..3u32)
            .flat_map(|a| (0..3u32).map(move |b| [a, b, 1]))
            .filter(|m| make_field(3, 2, Some(m)).is_ok())
            .count();
        assert_eq!(count, 3);
    }
}
