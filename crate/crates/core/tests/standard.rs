use ascurves::curve::{apply_isomorphism, classify_exceptional, make_curve, ExceptionalClass, MobiusTransform};
use ascurves::ff::{make_field, Field, FieldElement};
use ascurves::invariants::invariants_of;
use ascurves::polyrat::{parse_rational, Polynomial, RationalFunction};
use ascurves::standard::{
    eliminate_p_powers, normalize_single_pole, standardize, IsomorphismRecord, StandardFormCurve, StandardShape,
};
use ascurves::strata::{enumerate_strata, TableStratum};
use proptest::prelude::*;

fn rat(text: &str, field: &Field) -> RationalFunction {
    parse_rational(text, field).unwrap()
}

fn poly(text: &str, field: &Field) -> Polynomial {
    rat(text, field).as_polynomial().unwrap().clone()
}

#[test]
fn eliminate_p_powers_examples() {
    let f = Field::prime(3).unwrap();
    let (g, h) = eliminate_p_powers(&rat("x^4+x^3+x", &f)).unwrap();
    assert_eq!((g, h), (rat("x^4+2*x", &f), rat("x", &f)));
    let (g, h) = eliminate_p_powers(&rat("x^4", &f)).unwrap();
    assert_eq!(g, rat("x^4", &f));
    assert!(h.is_zero());
    let (g, h) = eliminate_p_powers(&rat("x^2+1/x^3+1/x", &f)).unwrap();
    assert_eq!((g, h), (rat("x^2+2/x", &f), rat("1/x", &f)));
}

#[test]
fn normalize_single_pole_examples() {
    let f3 = Field::prime(3).unwrap();
    let (g, beta, h, e) = normalize_single_pole(&poly("x^4+x^3", &f3)).unwrap();
    let big = e.target();
    assert_eq!(g, poly("x^4", big));
    assert!(beta.is_one());
    let b0 = h.coeff(0);
    assert_eq!(h.checked_sub(&Polynomial::constant(&b0)).unwrap(), poly("2*x", big));
    assert_eq!(&b0.pow(3) - &b0, big.from_int(2));

    let (g, beta, h, _) = normalize_single_pole(&poly("x^4+x^2", &f3)).unwrap();
    assert_eq!(g, poly("x^4+x^2", &f3));
    assert!(beta.is_zero());
    assert!(h.is_zero());

    let f7 = Field::prime(7).unwrap();
    let (g, beta, h, e) = normalize_single_pole(&poly("x^2+x", &f7)).unwrap();
    assert_eq!(g, poly("x^2", e.target()));
    assert_eq!(beta, e.target().from_int(3));
    assert!(h.is_constant());
}

fn checked_standardize(p: u32, field: &Field, text: &str) -> StandardFormCurve {
    let c = make_curve(p, &rat(text, field)).unwrap();
    let (s, rec) = standardize(&c).unwrap();
    let image = apply_isomorphism(&rec, &c.embed(s.extension()).unwrap()).unwrap();
    assert_eq!(image.f(), s.f(), "transcript of {text}");
    s
}

#[test]
fn standardize_examples() {
    let f3 = Field::prime(3).unwrap();
    let s = checked_standardize(3, &f3, "1/(x-1)^4");
    assert_eq!(s.f(), &rat("x^4", s.field()));
    assert!(s.values()[0].is_zero());
    assert_eq!(classify_exceptional(&s.curve().unwrap()).unwrap(), ExceptionalClass::TypeB(4));

    let s = checked_standardize(3, &f3, "2*x^2+x+1/x");
    let f9 = s.field().clone();
    assert_eq!(f9.modulus(), &[1, 0, 1]);
    assert_eq!(s.f(), &rat("x^2+t*x+2*t/x", &f9));

    let s = checked_standardize(3, &f3, "x^4+x^3");
    assert_eq!(s.f(), &rat("x^4", s.field()));

    let s = checked_standardize(3, &f3, "x^4+x^2");
    assert_eq!(s.coefficient("a"), Some(&f3.one()));
}

#[test]
fn free_coefficients_match_dimension() {
    for g in 1..=6 {
        for p in [3, 5, 7, 11, 13] {
            for st in enumerate_strata(g, p) {
                assert_eq!(StandardShape::of(&st).len() as u64, st.dim, "{st:?}");
            }
        }
    }
    let names: Vec<Vec<String>> = TableStratum::ALL
        .iter()
        .map(|t| StandardShape::of(&t.descriptor()).names().into_iter().map(String::from).collect())
        .collect();
    assert_eq!(
        names,
        vec![
            vec!["a"],
            vec!["a", "b"],
            vec![] as Vec<&str>,
            vec!["c", "d"],
            vec!["a", "b", "c"],
            vec!["a", "b", "c"],
            vec!["a"],
            vec!["a"],
        ]
    );
}

// Random standard forms moved by random records must standardize back into
// their own isomorphism class.

fn base_field(t: TableStratum) -> Field {
    make_field(t.p() as u64, 2, None).unwrap()
}

fn random_standard(t: TableStratum, seeds: &[(i64, i64)]) -> StandardFormCurve {
    let field = base_field(t);
    let shape = StandardShape::of(&t.descriptor());
    let values: Vec<FieldElement> = (0..shape.len())
        .map(|i| {
            let v = field.element(&[seeds[i].0, seeds[i].1]);
            if shape.requires_nonzero(i) && v.is_zero() {
                field.one()
            } else {
                v
            }
        })
        .collect();
    StandardFormCurve::table(t, &field, &values).unwrap()
}

fn random_record(field: &Field, m: &[(i64, i64)], lambda: i64, h: &[(i64, i64)]) -> Option<IsomorphismRecord> {
    let el = |&(a, b): &(i64, i64)| field.element(&[a, b]);
    let m = MobiusTransform::new(el(&m[0]), el(&m[1]), el(&m[2]), el(&m[3])).ok()?;
    let lambda = field.from_int(lambda);
    let h = RationalFunction::from_poly(Polynomial::new(field, h.iter().map(el).collect()));
    IsomorphismRecord::new(m, lambda, h).ok()
}

fn audit_shape(s: &StandardFormCurve) {
    let shape = StandardShape::of(s.stratum());
    assert_eq!(s.f(), &shape.build(s.field(), &s.values()).unwrap());
    let p = s.stratum().p as usize;
    let (q, _) = s.f().num().divrem(s.f().den()).unwrap();
    for (k, c) in q.coeffs().iter().enumerate() {
        assert!(c.is_zero() || k % p != 0, "p-divisible exponent {k} in {:?}", s.f());
    }
    if s.stratum().partition.len() <= 2 {
        assert!(q.leading().unwrap().is_one());
    }
    if s.stratum().partition.len() == 1 {
        assert!(q.coeff(1).is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn standardize_round_trip(
        ti in 0usize..8,
        seeds in prop::collection::vec((0i64..7, 0i64..7), 3),
        m in prop::collection::vec((0i64..7, 0i64..7), 4),
        lambda in 1i64..7,
        h in prop::collection::vec((0i64..7, 0i64..7), 0..3),
    ) {
        let t = TableStratum::ALL[ti];
        let s = random_standard(t, &seeds);
        let Some(rec) = random_record(s.field(), &m, lambda, &h) else { return Ok(()) };
        let c = apply_isomorphism(&rec, &s.curve().unwrap()).unwrap();
        let (s2, rec2) = standardize(&c).unwrap();
        audit_shape(&s2);
        let image = apply_isomorphism(&rec2, &c.embed(s2.extension()).unwrap()).unwrap();
        prop_assert_eq!(image.f(), s2.f());
        let v1 = invariants_of(&s).unwrap().embed(s2.extension()).unwrap();
        let v2 = invariants_of(&s2).unwrap();
        prop_assert!(v1.equivalent(&v2), "{:?} vs {:?}", v1, v2);
    }
}
