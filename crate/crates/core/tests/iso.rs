use ascurves::curve::{apply_isomorphism, make_curve, ArtinSchreierCurve, MobiusTransform};
use ascurves::ff::{common_extension, make_field, Field, FieldElement};
use ascurves::invariants::invariants_of;
use ascurves::iso::{action_model, are_isomorphic, census, group_of, orbit, DEFAULT_CENSUS_BUDGET};
use ascurves::polyrat::{parse_rational, Polynomial, RationalFunction};
use ascurves::standard::{standardize, IsomorphismRecord, StandardFormCurve, StandardShape};
use ascurves::strata::TableStratum;
use ascurves::Error;
use proptest::prelude::*;
use std::collections::BTreeSet;

fn f9() -> Field {
    make_field(3, 2, None).unwrap()
}

fn curve(p: u32, text: &str, field: &Field) -> ArtinSchreierCurve {
    make_curve(p, &parse_rational(text, field).unwrap()).unwrap()
}

/// Checks that `rec` maps c1 onto c2, both over prime fields.
fn maps(rec: &IsomorphismRecord, c1: &ArtinSchreierCurve, c2: &ArtinSchreierCurve) -> bool {
    let image = apply_isomorphism(rec, c1).unwrap();
    let (e, _) = common_extension(c2.field(), rec.field()).unwrap();
    image == c2.embed(&e).unwrap()
}

#[test]
fn group_examples() {
    let f3 = Field::prime(3).unwrap();
    let g = group_of(&TableStratum::G4P3S4.descriptor(), &f3).unwrap();
    let swap = g.actions().iter().find(|a| a.label() == "(b, a, -c)").unwrap();
    assert!(swap.lambda().is_one());
    let v = vec![f3.from_int(1), f3.from_int(2), f3.from_int(1)];
    assert_eq!(swap.apply(&v).unwrap(), vec![f3.from_int(2), f3.from_int(1), f3.from_int(2)]);

    let g = group_of(&TableStratum::G3P3S0.descriptor(), &f3).unwrap();
    let a = vec![g.field().from_int(2)];
    assert!(g.actions().iter().any(|x| x.apply(&a).unwrap() == a && x.lambda().is_one()));

    let f5 = Field::prime(5).unwrap();
    let g = group_of(&TableStratum::G4P5S4.descriptor(), &f5).unwrap();
    assert_eq!(g.len(), 2);
    let neg = g.actions().iter().find(|x| *x.lambda() == f5.from_int(2)).unwrap();
    assert_eq!(neg.apply(&[f5.one()]).unwrap(), vec![f5.from_int(4)]);

    let sizes: Vec<usize> = TableStratum::ALL
        .iter()
        .map(|t| group_of(&t.descriptor(), &Field::prime(t.p() as u64).unwrap()).unwrap().len())
        .collect();
    assert_eq!(sizes, vec![4, 4, 1, 10, 8, 12, 12, 2]);
}

#[test]
fn orbit_examples() {
    let f3 = Field::prime(3).unwrap();
    let s = StandardFormCurve::table(TableStratum::G3P3S0, &f3, &[f3.zero()]).unwrap();
    assert_eq!(orbit(&s).unwrap().points.len(), 1);

    let f9 = f9();
    let s = StandardFormCurve::table(TableStratum::G3P3S0, &f9, &[f9.one()]).unwrap();
    let o = orbit(&s).unwrap();
    assert!(o.extension.is_identity());
    let want: BTreeSet<Vec<FieldElement>> =
        [[1, 0], [2, 0], [0, 1], [0, 2]].iter().map(|c| vec![f9.element(c)]).collect();
    assert_eq!(o.points, want);

    let s = StandardFormCurve::table(TableStratum::G3P3S2, &f9, &[f9.one(), f9.one()]).unwrap();
    let o = orbit(&s).unwrap();
    assert_eq!(o.points.len(), 4);
    assert!(o.points.contains(&vec![f9.from_int(2), f9.from_int(2)]));
}

#[test]
fn worked_isomorphisms() {
    let f9 = f9();
    let c1 = curve(3, "x^4-x^2", &f9);
    let c2 = curve(3, "x^4+x^2", &f9);
    let rec = are_isomorphic(&c1, &c2).unwrap().expect("isomorphic");
    assert_eq!(apply_isomorphism(&rec, &c1).unwrap(), c2);

    let f3 = Field::prime(3).unwrap();
    let a = curve(3, "x^2+x+1/x", &f3);
    let b = curve(3, "x^2+2*x+2/x", &f3);
    let rec = are_isomorphic(&a, &b).unwrap().expect("isomorphic");
    assert!(maps(&rec, &a, &b));
    assert!(are_isomorphic(&a, &curve(3, "x^2+x+2/x", &f3)).unwrap().is_none());
    assert!(are_isomorphic(&a, &curve(3, "x^4+x^2", &f3)).unwrap().is_none());
}

#[test]
fn census_examples() {
    let f9 = f9();
    let r = census(&TableStratum::G3P3S2.descriptor(), &f9, DEFAULT_CENSUS_BUDGET).unwrap();
    assert_eq!((r.domain_size, r.class_count, r.invariant_classes), (72, 18, 18));
    let f3 = Field::prime(3).unwrap();
    let r = census(&TableStratum::G3P3S0.descriptor(), &f3, DEFAULT_CENSUS_BUDGET).unwrap();
    assert_eq!((r.class_count, r.invariant_classes), (2, 2));
    assert_eq!(r.representatives, vec![vec![f3.zero()], vec![f3.one()]]);
    let f5 = Field::prime(5).unwrap();
    let r = census(&TableStratum::G4P5S4.descriptor(), &f5, DEFAULT_CENSUS_BUDGET).unwrap();
    assert_eq!((r.class_count, r.invariant_classes), (2, 2));
    assert_eq!(r.representatives, vec![vec![f5.one()], vec![f5.from_int(2)]]);
    assert!(matches!(
        census(&TableStratum::G4P3S4.descriptor(), &make_field(3, 4, None).unwrap(), 1000),
        Err(Error::DomainTooLarge { .. })
    ));
}

#[test]
fn exceptional_family() {
    let f81 = make_field(3, 4, None).unwrap();
    let sample: Vec<FieldElement> = (1..=6).map(|i| f81.element_from_index(i * 13)).collect();
    let curves: Vec<_> = sample
        .iter()
        .map(|a| make_curve(3, &RationalFunction::constant(a).checked_div(&parse_rational("x^3-x", &f81).unwrap()).unwrap()).unwrap())
        .collect();
    for (a, c) in sample.iter().zip(&curves) {
        let (s, _) = standardize(c).unwrap();
        assert_eq!(s.stratum(), &TableStratum::G4P3S4.descriptor());
        let v = invariants_of(&s).unwrap();
        assert_eq!(v.get("I1").unwrap(), &s.extension().embed(&a.pow(6)).unwrap());
        for n in ["I2", "I3", "I4"] {
            assert!(v.get(n).unwrap().is_zero());
        }
    }
    for (i, a) in sample.iter().enumerate() {
        for (j, b) in sample.iter().enumerate() {
            let expected = a == b || *a == b.neg();
            let got = are_isomorphic(&curves[i], &curves[j]).unwrap().is_some();
            assert_eq!(got, expected, "{a} vs {b}");
            let same_i1 = a.pow(6) == b.pow(6);
            assert_eq!(same_i1, expected);
        }
    }
}

// Property tests.

fn prime_field(t: TableStratum) -> Field {
    Field::prime(t.p() as u64).unwrap()
}

fn random_values(t: TableStratum, field: &Field, seeds: &[i64]) -> Vec<FieldElement> {
    let shape = StandardShape::of(&t.descriptor());
    (0..shape.len())
        .map(|i| {
            let v = field.from_int(seeds[i]);
            if shape.requires_nonzero(i) && v.is_zero() {
                field.one()
            } else {
                v
            }
        })
        .collect()
}

fn random_curve(t: TableStratum, seeds: &[i64], m: &[i64], lambda: i64, h: &[i64]) -> ArtinSchreierCurve {
    let field = prime_field(t);
    let s = StandardFormCurve::table(t, &field, &random_values(t, &field, seeds)).unwrap();
    let c = s.curve().unwrap();
    let Ok(m) = MobiusTransform::from_ints(&field, m[0], m[1], m[2], m[3]) else { return c };
    let h = RationalFunction::from_poly(Polynomial::new(&field, h.iter().map(|&x| field.from_int(x)).collect()));
    match IsomorphismRecord::new(m, field.from_int(lambda), h) {
        Ok(rec) => apply_isomorphism(&rec, &c).unwrap(),
        Err(_) => c,
    }
}

fn nonzero_tuple(field: &Field, seeds: &[(i64, i64)]) -> Vec<FieldElement> {
    seeds
        .iter()
        .map(|&(a, b)| {
            let v = field.element(&[a, b]);
            if v.is_zero() { field.one() } else { v }
        })
        .collect()
}

fn curve_args() -> impl Strategy<Value = (Vec<i64>, Vec<i64>, i64, Vec<i64>)> {
    (
        prop::collection::vec(0i64..7, 3),
        prop::collection::vec(0i64..7, 4),
        1i64..7,
        prop::collection::vec(0i64..7, 0..3),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn group_is_closed(ti in 0usize..8, seeds in prop::collection::vec((1i64..7, 0i64..7), 3)) {
        let t = TableStratum::ALL[ti];
        let field = make_field(t.p() as u64, 2, None).unwrap();
        let group = group_of(&t.descriptor(), &field).unwrap();
        let n = if t == TableStratum::G4P3S0 { 2 } else { StandardShape::of(&t.descriptor()).len() };
        let v = group.lift(&nonzero_tuple(&field, &seeds[..n])).unwrap();
        let images: Vec<Vec<FieldElement>> = group.actions().iter().map(|a| a.apply(&v).unwrap()).collect();
        for a in group.actions() {
            let w = a.apply(&v).unwrap();
            prop_assert!(group.actions().iter().any(|b| b.apply(&w).unwrap() == v), "no inverse for {}", a);
            for b in group.actions() {
                let u = b.apply(&w).unwrap();
                prop_assert!(images.contains(&u), "{} then {} leaves the group", a, b);
            }
        }
    }

    #[test]
    fn witnesses_are_faithful(ti in 0usize..8, seeds in prop::collection::vec((1i64..7, 0i64..7), 3)) {
        let t = TableStratum::ALL[ti];
        let field = make_field(t.p() as u64, 2, None).unwrap();
        let group = group_of(&t.descriptor(), &field).unwrap();
        let gf = group.field();
        let n = if t == TableStratum::G4P3S0 { 2 } else { StandardShape::of(&t.descriptor()).len() };
        let v = group.lift(&nonzero_tuple(&field, &seeds[..n])).unwrap();
        let p = t.p();
        let source = make_curve(p, &action_model(t, gf, &v).unwrap()).unwrap();
        for a in group.actions() {
            let rec = a.witness(&v).unwrap();
            let target = make_curve(p, &action_model(t, gf, &a.apply(&v).unwrap()).unwrap()).unwrap();
            prop_assert_eq!(apply_isomorphism(&rec, &source).unwrap(), target);
        }
    }

    #[test]
    fn isomorphism_is_an_equivalence(ti in 0usize..8, x in curve_args(), y in curve_args(), z in curve_args()) {
        let t = TableStratum::ALL[ti];
        let [a, b, c] = [x, y, z].map(|(s, m, l, h)| random_curve(t, &s, &m, l, &h));
        let refl = are_isomorphic(&a, &a).unwrap().expect("reflexive");
        prop_assert!(maps(&refl, &a, &a));
        let ab = are_isomorphic(&a, &b).unwrap();
        let ba = are_isomorphic(&b, &a).unwrap();
        prop_assert_eq!(ab.is_some(), ba.is_some());
        if let Some(r) = &ab {
            prop_assert!(maps(r, &a, &b));
            prop_assert!(maps(&r.inverse().unwrap(), &b, &a));
        }
        let bc = are_isomorphic(&b, &c).unwrap();
        if let (Some(r1), Some(r2)) = (&ab, &bc) {
            let (e1, e2) = common_extension(r1.field(), r2.field()).unwrap();
            let composite = r1.embed(&e1).unwrap().then(&r2.embed(&e2).unwrap()).unwrap();
            prop_assert!(maps(&composite, &a, &c));
            prop_assert!(are_isomorphic(&a, &c).unwrap().is_some());
        }
    }
}
