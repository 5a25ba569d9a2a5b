use super::{Field, FieldElement};
use crate::error::{Error, Result};
use crate::polyrat::{roots_in_field, Polynomial};
use std::sync::Arc;

/// A field embedding F_p[t]/(m) → target, determined by the image of t.
#[derive(Clone)]
pub struct ExtensionMap {
    source: Field,
    target: Field,
    image: FieldElement,
    // image^i for i < source degree
    powers: Arc<Vec<FieldElement>>,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

impl ExtensionMap {
    pub fn identity(field: &Field) -> ExtensionMap {
        Self::from_image(field.clone(), field.clone(), field.generator())
    }

    fn from_image(source: Field, target: Field, image: FieldElement) -> ExtensionMap {
        let mut powers = Vec::with_capacity(source.degree());
        let mut cur = target.one();
        for _ in 0..source.degree() {
            powers.push(cur.clone());
            cur = &cur * &image;
        }
        ExtensionMap {
            source,
            target,
            image,
            powers: Arc::new(powers),
        }
    }

    /// An embedding with the given image of the generator, after checking
    /// that the image is a root of the source modulus.
    pub fn new(source: &Field, target: &Field, image: FieldElement) -> Result<ExtensionMap> {
        target.check_same(image.field())?;
        if source.characteristic() != target.characteristic()
            || target.degree() % source.degree() != 0
        {
            return Err(Error::FieldMismatch(source.descriptor(), target.descriptor()));
        }
        let m = Polynomial::from_prime_residues(target, source.modulus());
        if !m.eval(&image)?.is_zero() {
            return Err(Error::InvalidModulus(
                "image of the generator is not a root of the source modulus".into(),
            ));
        }
        Ok(Self::from_image(source.clone(), target.clone(), image))
    }

    /// Embedding of `field` into the canonical field of degree
    /// `field.degree() * m`, sending t to the smallest root of its modulus.
    pub fn extend(field: &Field, m: usize) -> ExtensionMap {
        let target = Field::canonical(field.characteristic(), field.degree() * m);
        Self::into_field(field, &target)
    }

    /// Canonical embedding into a field whose degree is a multiple of the
    /// source degree: t maps to the smallest root of the source modulus.
    pub(crate) fn into_field(source: &Field, target: &Field) -> ExtensionMap {
        if source == target {
            return Self::identity(source);
        }
        if source.is_prime_field() {
            return Self::from_image(source.clone(), target.clone(), target.zero());
        }
        let image = Self::roots_of_modulus(source, target)
            .into_iter()
            .next()
            .expect("a field of multiple degree contains every root of the modulus");
        Self::from_image(source.clone(), target.clone(), image)
    }

    fn roots_of_modulus(source: &Field, target: &Field) -> Vec<FieldElement> {
        let m = Polynomial::from_prime_residues(target, source.modulus());
        roots_in_field(&m)
            .expect("modulus is nonzero")
            .into_iter()
            .map(|(r, _)| r)
            .collect()
    }

    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    pub fn image_of_generator(&self) -> &FieldElement {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.image == self.source.generator()
    }

    /// Degree of the target over the source.
    pub fn degree(&self) -> usize {
        self.target.degree() / self.source.degree()
    }

    pub fn embed(&self, a: &FieldElement) -> Result<FieldElement> {
        self.source.check_same(a.field())?;
        if self.is_identity() {
            return Ok(a.clone());
        }
        let mut acc = self.target.zero();
        for (&c, pw) in a.coeffs().iter().zip(self.powers.iter()) {
            if c != 0 {
                acc = &acc + &(pw * &self.target.from_int(c as i64));
            }
        }
        Ok(acc)
    }

    /// The composite: first `self`, then `next`.
    pub fn then(&self, next: &ExtensionMap) -> Result<ExtensionMap> {
        self.target.check_same(&next.source)?;
        if self.is_identity() {
            return Ok(next.clone());
        }
        if next.is_identity() {
            return Ok(self.clone());
        }
        let image = next.embed(&self.image)?;
        Ok(Self::from_image(self.source.clone(), next.target.clone(), image))
    }

    /// Given embeddings `a: K → A` and `b: K → B` of a common field, finds
    /// embeddings of A and B into one field L that agree on K.
    pub fn join(a: &ExtensionMap, b: &ExtensionMap) -> Result<(ExtensionMap, ExtensionMap)> {
        a.source.check_same(&b.source)?;
        let p = a.target.characteristic();
        let deg = lcm(a.target.degree(), b.target.degree());
        let target = if a.target.degree() == deg {
            a.target.clone()
        } else if b.target.degree() == deg {
            b.target.clone()
        } else {
            Field::canonical(p, deg)
        };
        let ia = Self::into_field(&a.target, &target);
        let want = ia.embed(&a.embed(&a.source.generator())?)?;
        let candidates: Vec<FieldElement> = if b.target.is_prime_field() {
            vec![target.zero()]
        } else if b.target == target {
            // all automorphisms of the target: Frobenius powers of t
            let mut out = Vec::new();
            let mut g = target.generator();
            for _ in 0..target.degree() {
                out.push(g.clone());
                g = g.frobenius();
            }
            out.sort();
            out
        } else {
            Self::roots_of_modulus(&b.target, &target)
        };
        for image in candidates {
            let ib = Self::from_image(b.target.clone(), target.clone(), image);
            if ib.embed(&b.embed(&b.source.generator())?)? == want {
                return Ok((ia, ib));
            }
        }
        Err(Error::Inconsistency("no compatible embedding found".into()))
    }
}

/// Canonical embeddings of two fields of the same characteristic into the
/// canonical field whose degree is the lcm of theirs.
pub fn common_extension(a: &Field, b: &Field) -> Result<(ExtensionMap, ExtensionMap)> {
    if a.characteristic() != b.characteristic() {
        return Err(Error::FieldMismatch(a.descriptor(), b.descriptor()));
    }
    if a == b {
        return Ok((ExtensionMap::identity(a), ExtensionMap::identity(b)));
    }
    let deg = lcm(a.degree(), b.degree());
    let target = if a.degree() == deg {
        a.clone()
    } else if b.degree() == deg {
        b.clone()
    } else {
        Field::canonical(a.characteristic(), deg)
    };
    Ok((
        ExtensionMap::into_field(a, &target),
        ExtensionMap::into_field(b, &target),
    ))
}

impl std::fmt::Debug for ExtensionMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "ExtensionMap({} -> {}, t -> {})",
            self.source, self.target, self.image
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::make_field;

    #[test]
    fn prime_field_embedding_fixes_constants() {
        let f3 = make_field(3, 1, None).unwrap();
        let e = ExtensionMap::extend(&f3, 2);
        assert_eq!(e.target().degree(), 2);
        assert_eq!(e.embed(&f3.from_int(2)).unwrap(), e.target().from_int(2));
        assert!(e.embed(&f3.zero()).unwrap().is_zero());
        assert!(e.embed(&f3.one()).unwrap().is_one());
    }

    #[test]
    fn tower_embedding_is_a_homomorphism() {
        let f9 = make_field(3, 2, None).unwrap();
        let e = ExtensionMap::extend(&f9, 2);
        for a in f9.elements(100).unwrap() {
            for b in f9.elements(100).unwrap() {
                let lhs = e.embed(&(&a * &b)).unwrap();
                let rhs = &e.embed(&a).unwrap() * &e.embed(&b).unwrap();
                assert_eq!(lhs, rhs);
                let lhs = e.embed(&(&a + &b)).unwrap();
                let rhs = &e.embed(&a).unwrap() + &e.embed(&b).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn join_agrees_on_common_subfield() {
        let f9 = make_field(3, 2, None).unwrap();
        let a = ExtensionMap::extend(&f9, 2);
        let b = ExtensionMap::extend(&f9, 3);
        let (ia, ib) = ExtensionMap::join(&a, &b).unwrap();
        let t = f9.generator();
        assert_eq!(
            ia.embed(&a.embed(&t).unwrap()).unwrap(),
            ib.embed(&b.embed(&t).unwrap()).unwrap()
        );
        assert_eq!(ia.target().degree(), 12);
    }
}
