use ascurves::ff::{frobenius_inverse, make_field, ExtensionMap, Field, FieldElement};
use ascurves::Error;
use proptest::prelude::*;

fn f9() -> Field {
    make_field(3, 2, None).unwrap()
}

#[test]
fn canonical_moduli() {
    assert_eq!(make_field(3, 1, None).unwrap().degree(), 1);
    assert_eq!(f9().modulus(), &[1, 0, 1]);
    assert_eq!(f9(), make_field(3, 2, None).unwrap());
    assert!(matches!(make_field(3, 2, Some(&[0, 1, 1])), Err(Error::NotIrreducible(3))));
    assert!(matches!(make_field(2, 1, None), Err(Error::EvenCharacteristic)));
    assert!(matches!(make_field(9, 1, None), Err(Error::NotPrime(9))));
}

#[test]
fn arithmetic_examples() {
    let f3 = Field::prime(3).unwrap();
    assert_eq!(&f3.from_int(2) + &f3.from_int(2), f3.one());
    let f9 = f9();
    let t = f9.generator();
    assert_eq!(&t * &t, f9.from_int(2));
    assert_eq!(t.inv().unwrap(), f9.element(&[0, 2]));
    assert!(f9.zero().inv().is_err());
}

#[test]
fn frobenius_examples() {
    let f3 = Field::prime(3).unwrap();
    assert_eq!(frobenius_inverse(&f3.from_int(2)), f3.from_int(2));
    let f9 = f9();
    assert_eq!(frobenius_inverse(&f9.element(&[0, 2])), f9.generator());
    assert_eq!(frobenius_inverse(&f9.zero()), f9.zero());
}

#[test]
fn nth_root_examples() {
    let f3 = Field::prime(3).unwrap();
    let (r, e) = f3.one().nth_root(4);
    assert!(e.is_identity());
    assert_eq!(r, f3.one());

    let (r, e) = f3.from_int(2).nth_root(2);
    assert_eq!(e.degree(), 2);
    assert_eq!(e.target(), &f9());
    assert_eq!(r, f9().generator());

    let (r, e) = f3.from_int(2).nth_root(3);
    assert!(e.is_identity());
    assert_eq!(r, f3.from_int(2));
}

#[test]
fn solve_wp_examples() {
    let f3 = Field::prime(3).unwrap();
    let (g, e) = f3.zero().solve_wp();
    assert!(e.is_identity());
    assert!(g.is_zero());

    let (g, e) = f3.one().solve_wp();
    assert_eq!(e.target().degree(), 3);
    assert_eq!(&g.pow(3) - &g, e.target().one());

    let f9 = f9();
    let t = f9.generator();
    let (g, e) = t.solve_wp();
    assert_eq!(&g.pow(3) - &g, e.embed(&t).unwrap());
}

#[test]
fn embedding_examples() {
    let f3 = Field::prime(3).unwrap();
    let e = ExtensionMap::extend(&f3, 2);
    assert_eq!(e.target(), &f9());
    assert!(e.embed(&f3.zero()).unwrap().is_zero());
    assert!(e.embed(&f3.one()).unwrap().is_one());
    assert_eq!(e.embed(&f3.from_int(2)).unwrap(), f9().from_int(2));

    // F_9 into F_81: the image of t squares to −1.
    let e = ExtensionMap::extend(&f9(), 2);
    let t = e.embed(&f9().generator()).unwrap();
    assert_eq!(&t * &t, e.target().from_int(2));
}

fn fields() -> Vec<Field> {
    vec![
        make_field(3, 1, None).unwrap(),
        make_field(3, 2, None).unwrap(),
        make_field(3, 4, None).unwrap(),
        make_field(5, 2, None).unwrap(),
        make_field(7, 3, None).unwrap(),
    ]
}

fn element(field: &Field, coeffs: &[i64]) -> FieldElement {
    field.element(&coeffs[..field.degree()])
}

proptest! {
    #[test]
    fn field_axioms(fi in 0usize..5, a in prop::collection::vec(0i64..7, 4),
                    b in prop::collection::vec(0i64..7, 4), c in prop::collection::vec(0i64..7, 4)) {
        let field = &fields()[fi];
        let (a, b, c) = (element(field, &a), element(field, &b), element(field, &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a + &a.neg()).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
            let q = (field.characteristic() as u128).pow(field.degree() as u32);
            prop_assert!(a.pow(q - 1).is_one());
        }
    }

    #[test]
    fn frobenius_inverse_is_inverse(fi in 0usize..5, a in prop::collection::vec(0i64..7, 4)) {
        let field = &fields()[fi];
        let a = element(field, &a);
        prop_assert_eq!(frobenius_inverse(&a).pow(field.characteristic() as u128), a.clone());
        prop_assert_eq!(frobenius_inverse(&a.frobenius()), a);
    }

    #[test]
    fn nth_root_is_root(fi in prop::sample::select(vec![0usize, 1, 3]), a in prop::collection::vec(0i64..7, 4),
                        n in 1u64..7) {
        let field = &fields()[fi];
        let a = element(field, &a);
        let (r, e) = a.nth_root(n);
        prop_assert_eq!(r.pow(n as u128), e.embed(&a).unwrap());
    }

    #[test]
    fn solve_wp_solves(fi in 0usize..4, u in prop::collection::vec(0i64..7, 4)) {
        let field = &fields()[fi];
        let u = element(field, &u);
        let (g, e) = u.solve_wp();
        let p = field.characteristic() as u128;
        prop_assert_eq!(&g.pow(p) - &g, e.embed(&u).unwrap());
    }
}
