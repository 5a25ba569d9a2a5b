use super::{group_of, ActionGroup};
use crate::error::{Error, Result};
use crate::ff::{Field, FieldElement};
use crate::invariants::{comparison_key, invariant_values, reduced_coordinates};
use crate::standard::StandardShape;
use crate::strata::{StratumDescriptor, TableStratum};
use rayon::prelude::*;
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};
use std::collections::{HashMap, HashSet};

/// Default limit on the number of enumerated coefficient tuples.
pub const DEFAULT_CENSUS_BUDGET: u128 = 10_000_000;

const CHUNK: usize = 1 << 14;

/// Isomorphism classes of standard forms with coefficients in F_q.
#[derive(Clone, Debug)]
pub struct CensusReport {
    pub stratum: StratumDescriptor,
    pub field: Field,
    pub q: u128,
    pub names: Vec<String>,
    pub domain_size: u128,
    pub class_count: usize,
    /// The lexicographically smallest tuple of every class, sorted.
    pub representatives: Vec<Vec<FieldElement>>,
    /// Number of distinct invariant vectors under the comparison semantics.
    pub invariant_classes: usize,
}

struct Row<'a>(&'a [String], &'a [FieldElement]);

impl Serialize for Row<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0.iter().zip(self.1) {
            m.serialize_entry(k, &v.to_string())?;
        }
        m.end()
    }
}

impl Serialize for CensusReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let reps: Vec<Row> = self.representatives.iter().map(|r| Row(&self.names, r)).collect();
        let mut st = s.serialize_struct("CensusReport", 7)?;
        st.serialize_field("stratum", &self.stratum)?;
        st.serialize_field("field", &self.field.descriptor())?;
        st.serialize_field("q", &self.q)?;
        st.serialize_field("class_count", &self.class_count)?;
        st.serialize_field("representatives", &reps)?;
        st.serialize_field("invariant_classes", &self.invariant_classes)?;
        st.serialize_field("domain_size", &self.domain_size)?;
        st.end()
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut i: usize) -> usize {
        while self.0[i] != i {
            self.0[i] = self.0[self.0[i]];
            i = self.0[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Mixed-radix enumeration of the admissible tuples.
struct Domain {
    slots: Vec<Vec<FieldElement>>,
    size: usize,
}

impl Domain {
    fn tuple(&self, mut i: usize) -> Vec<FieldElement> {
        let mut out = vec![];
        for slot in self.slots.iter().rev() {
            out.push(slot[i % slot.len()].clone());
            i /= slot.len();
        }
        out.reverse();
        out
    }
}

/// Action coordinates of a base-field tuple.
fn coordinates(t: TableStratum, v: &[FieldElement]) -> Vec<FieldElement> {
    if t == TableStratum::G4P3S0 {
        let (a, b) = reduced_coordinates(&v[0], &v[1]);
        return vec![a, b];
    }
    v.to_vec()
}

/// Partitions all standard forms of `st` with coefficients in `field` into
/// isomorphism classes. Two tuples are equivalent when one lies in the
/// group orbit of the other; orbits are computed over the group field and
/// intersected with the base field.
pub fn census(st: &StratumDescriptor, field: &Field, budget: u128) -> Result<CensusReport> {
    let t = st.require_table()?;
    let shape = StandardShape::of(st);
    let q = field.size().unwrap_or(u128::MAX);
    let size = (0..shape.len()).try_fold(1u128, |acc, i| {
        acc.checked_mul(if shape.requires_nonzero(i) { q - 1 } else { q })
    });
    let size = size.unwrap_or(u128::MAX);
    if size > budget || q > budget {
        return Err(Error::DomainTooLarge { size, budget });
    }
    let elements: Vec<FieldElement> = field.elements(budget).expect("q within budget").collect();
    let slots: Vec<Vec<FieldElement>> = (0..shape.len())
        .map(|i| {
            elements
                .iter()
                .filter(|e| !shape.requires_nonzero(i) || !e.is_zero())
                .cloned()
                .collect()
        })
        .collect();
    let domain = Domain { slots, size: size as usize };
    let group = group_of(st, field)?;

    // membership of group-field coordinates in the base field
    let index_of: HashMap<FieldElement, usize> = elements
        .iter()
        .enumerate()
        .map(|(i, e)| Ok((group.extension().embed(e)?, i)))
        .collect::<Result<_>>()?;
    let key_of = |coords: &[FieldElement]| -> Option<u128> {
        coords.iter().try_fold(0u128, |acc, c| Some(acc * q + *index_of.get(c)? as u128))
    };

    // tuples sharing action coordinates, grouped by key
    let keys: Vec<u128> = (0..domain.size)
        .into_par_iter()
        .map(|i| -> Result<u128> {
            let coords = group.lift(&coordinates(t, &domain.tuple(i)))?;
            key_of(&coords).ok_or_else(|| Error::Inconsistency("coordinates left the base field".into()))
        })
        .collect::<Result<_>>()?;
    let mut by_key: HashMap<u128, usize> = HashMap::new();
    let mut uf = UnionFind((0..domain.size).collect());
    for (i, &k) in keys.iter().enumerate() {
        match by_key.get(&k) {
            Some(&j) => uf.union(i, j),
            None => {
                by_key.insert(k, i);
            }
        }
    }

    for start in (0..domain.size).step_by(CHUNK) {
        let end = (start + CHUNK).min(domain.size);
        let edges: Vec<(usize, usize)> = (start..end)
            .into_par_iter()
            .map(|i| orbit_edges(&group, t, &domain, i, &key_of, &by_key))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        for (a, b) in edges {
            uf.union(a, b);
        }
    }

    let mut best: HashMap<usize, Vec<FieldElement>> = HashMap::new();
    for i in 0..domain.size {
        let root = uf.find(i);
        let v = domain.tuple(i);
        match best.get_mut(&root) {
            Some(b) if *b <= v => {}
            Some(b) => *b = v,
            None => {
                best.insert(root, v);
            }
        }
    }
    let mut representatives: Vec<Vec<FieldElement>> = best.into_values().collect();
    representatives.sort();

    let invariant_classes = (0..domain.size)
        .into_par_iter()
        .fold(HashSet::new, |mut set, i| {
            set.insert(comparison_key(t, &invariant_values(t, &domain.tuple(i))));
            set
        })
        .reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            a
        })
        .len();

    Ok(CensusReport {
        stratum: st.clone(),
        field: field.clone(),
        q,
        names: shape.names().into_iter().map(String::from).collect(),
        domain_size: size,
        class_count: representatives.len(),
        representatives,
        invariant_classes,
    })
}

fn orbit_edges(
    group: &ActionGroup,
    t: TableStratum,
    domain: &Domain,
    i: usize,
    key_of: &(impl Fn(&[FieldElement]) -> Option<u128> + Sync),
    by_key: &HashMap<u128, usize>,
) -> Result<Vec<(usize, usize)>> {
    let coords = coordinates(t, &domain.tuple(i));
    let mut out = Vec::new();
    for w in group.orbit_of(&coords)? {
        if let Some(j) = key_of(&w).and_then(|k| by_key.get(&k)) {
            out.push((i, *j));
        }
    }
    Ok(out)
}
