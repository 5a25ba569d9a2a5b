//! Brute-force isomorphism classes: orbits are found by trying every Möbius
//! map that permutes the poles of the standard shape, without using the
//! explicit group formulas.

use ascurves::curve::{make_curve, mobius_apply, pole_image, MobiusTransform};
use ascurves::ff::{ExtensionMap, Field, FieldElement};
use ascurves::polyrat::ProjectivePoint;
use ascurves::standard::{eliminate_p_powers, StandardShape};
use ascurves::strata::TableStratum;
use std::collections::{HashMap, HashSet};

fn elements(f: &Field) -> Vec<FieldElement> {
    f.elements(1 << 20).unwrap().collect()
}

/// Möbius maps over `k` permuting the pole set of the shape, orders kept.
fn candidates(t: TableStratum, k: &Field) -> Vec<MobiusTransform> {
    let orders = t.descriptor().pole_orders();
    let zero = k.zero();
    let one = k.one();
    let units: Vec<FieldElement> = elements(k).into_iter().filter(|e| !e.is_zero()).collect();
    match orders.len() {
        1 => {
            let mut out = Vec::new();
            for a in &units {
                for b in elements(k) {
                    out.push(MobiusTransform::new(a.clone(), b, zero.clone(), one.clone()).unwrap());
                }
            }
            out
        }
        2 => {
            let mut out: Vec<MobiusTransform> =
                units.iter().map(|a| MobiusTransform::scaling(a).unwrap()).collect();
            if orders[0] == orders[1] {
                for a in &units {
                    out.push(MobiusTransform::new(zero.clone(), a.clone(), one.clone(), zero.clone()).unwrap());
                }
            }
            out
        }
        _ => {
            // all of PGL2(F_p) that fixes the set {∞, 0, 1}
            let p = k.characteristic() as i64;
            let pts = [
                ProjectivePoint::Infinity,
                ProjectivePoint::Finite(k.zero()),
                ProjectivePoint::Finite(k.one()),
            ];
            let mut out: Vec<MobiusTransform> = Vec::new();
            for a in 0..p {
                for b in 0..p {
                    for c in 0..p {
                        for d in 0..p {
                            let Ok(m) = MobiusTransform::from_ints(k, a, b, c, d) else { continue };
                            let keeps = pts.iter().all(|pt| pts.contains(&pole_image(&m, pt).unwrap()));
                            if keeps && !out.contains(&m) {
                                out.push(m);
                            }
                        }
                    }
                }
            }
            out
        }
    }
}

/// Number of classes of F_q-tuples under brute-force isomorphism over `k`.
pub fn oracle_classes(t: TableStratum, base: &Field, ext_degree: usize) -> usize {
    let st = t.descriptor();
    let shape = StandardShape::of(&st);
    let e = if ext_degree == 1 { ExtensionMap::identity(base) } else { ExtensionMap::extend(base, ext_degree) };
    let k = e.target().clone();
    let back: HashMap<FieldElement, FieldElement> =
        elements(base).into_iter().map(|x| (e.embed(&x).unwrap(), x)).collect();
    let mut tuples: Vec<Vec<FieldElement>> = vec![vec![]];
    for i in 0..shape.len() {
        let mut next = Vec::new();
        for tup in &tuples {
            for x in elements(base) {
                if shape.requires_nonzero(i) && x.is_zero() {
                    continue;
                }
                let mut t2 = tup.clone();
                t2.push(x);
                next.push(t2);
            }
        }
        tuples = next;
    }
    let ms = candidates(t, &k);
    let p = base.characteristic();
    let lambdas: Vec<FieldElement> = (1..p as i64).map(|l| k.from_int(l)).collect();
    let mut seen: HashSet<Vec<FieldElement>> = HashSet::new();
    let mut classes = 0;
    for v in &tuples {
        if seen.contains(v) {
            continue;
        }
        classes += 1;
        let lifted: Vec<FieldElement> = v.iter().map(|x| e.embed(x).unwrap()).collect();
        let f = shape.build(&k, &lifted).unwrap();
        for m in &ms {
            let moved = mobius_apply(m, &f).unwrap();
            for l in &lambdas {
                let g = moved.scale(&l.inv().unwrap());
                let c = make_curve(p, &g).unwrap();
                let Ok((g, _)) = eliminate_p_powers(c.f()) else { continue };
                let g = make_curve(p, &g).unwrap();
                let Ok(w) = shape.extract(g.f()) else { continue };
                if let Some(w) = w.iter().map(|x| back.get(x).cloned()).collect::<Option<Vec<_>>>() {
                    seen.insert(w);
                }
            }
        }
    }
    classes
}

