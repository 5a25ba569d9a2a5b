//! Irreducible components of the p-rank strata of the moduli space of
//! Artin-Schreier curves, indexed by partitions E of D + 2.

use crate::error::{Error, Result};
use serde::Serialize;
use std::fmt;

/// One irreducible component: genus, characteristic, p-rank, partition
/// (descending) and dimension.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct StratumDescriptor {
    pub g: u64,
    pub p: u32,
    pub s: u64,
    #[serde(rename = "E")]
    pub partition: Vec<u64>,
    pub dim: u64,
}

/// The strata that carry reconstructing invariants (genus 3 and 4).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TableStratum {
    G3P3S0,
    G3P3S2,
    G3P7S0,
    G4P3S0,
    G4P3S2,
    G4P3S4,
    G4P5S0,
    G4P5S4,
}

impl TableStratum {
    pub const ALL: [TableStratum; 8] = [
        TableStratum::G3P3S0,
        TableStratum::G3P3S2,
        TableStratum::G3P7S0,
        TableStratum::G4P3S0,
        TableStratum::G4P3S2,
        TableStratum::G4P3S4,
        TableStratum::G4P5S0,
        TableStratum::G4P5S4,
    ];

    /// The seven strata with at least one free coefficient.
    pub const WITH_COEFFICIENTS: [TableStratum; 7] = [
        TableStratum::G3P3S0,
        TableStratum::G3P3S2,
        TableStratum::G4P3S0,
        TableStratum::G4P3S2,
        TableStratum::G4P3S4,
        TableStratum::G4P5S0,
        TableStratum::G4P5S4,
    ];

    pub fn descriptor(self) -> StratumDescriptor {
        let (p, e): (u32, &[u64]) = match self {
            TableStratum::G3P3S0 => (3, &[5]),
            TableStratum::G3P3S2 => (3, &[3, 2]),
            TableStratum::G3P7S0 => (7, &[3]),
            TableStratum::G4P3S0 => (3, &[6]),
            TableStratum::G4P3S2 => (3, &[3, 3]),
            TableStratum::G4P3S4 => (3, &[2, 2, 2]),
            TableStratum::G4P5S0 => (5, &[4]),
            TableStratum::G4P5S4 => (5, &[2, 2]),
        };
        descriptor_for(p, e).expect("table partitions are valid")
    }

    /// Short name such as "g3p3s2".
    pub fn name(self) -> &'static str {
        match self {
            TableStratum::G3P3S0 => "g3p3s0",
            TableStratum::G3P3S2 => "g3p3s2",
            TableStratum::G3P7S0 => "g3p7s0",
            TableStratum::G4P3S0 => "g4p3s0",
            TableStratum::G4P3S2 => "g4p3s2",
            TableStratum::G4P3S4 => "g4p3s4",
            TableStratum::G4P5S0 => "g4p5s0",
            TableStratum::G4P5S4 => "g4p5s4",
        }
    }

    pub fn from_name(name: &str) -> Option<TableStratum> {
        Self::ALL.into_iter().find(|t| t.name() == name)
    }

    pub fn p(self) -> u32 {
        self.descriptor().p
    }
}

impl StratumDescriptor {
    /// The table stratum (genus 3 or 4, with invariants) this descriptor names, if any.
    pub fn table(&self) -> Option<TableStratum> {
        TableStratum::ALL
            .into_iter()
            .find(|t| t.descriptor() == *self)
    }

    pub fn require_table(&self) -> Result<TableStratum> {
        self.table().ok_or(Error::UnsupportedStratum {
            g: self.g,
            p: self.p,
            s: self.s,
        })
    }

    /// Pole orders d_j = e_j − 1, descending.
    pub fn pole_orders(&self) -> Vec<u64> {
        self.partition.iter().map(|e| e - 1).collect()
    }
}

impl fmt::Display for StratumDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e: Vec<String> = self.partition.iter().map(|e| e.to_string()).collect();
        write!(
            f,
            "g={} p={} s={} E={{{}}} dim={}",
            self.g,
            self.p,
            self.s,
            e.join(","),
            self.dim
        )
    }
}

fn validate(e: &[u64], p: u32) -> Result<()> {
    if e.is_empty() {
        return Err(Error::InvalidPartition("empty partition".into()));
    }
    for &part in e {
        if part < 2 {
            return Err(Error::InvalidPartition(format!("part {part} is smaller than 2")));
        }
        if part % p as u64 == 1 {
            return Err(Error::InvalidPartition(format!(
                "part {part} is congruent to 1 mod {p}"
            )));
        }
    }
    let total: u64 = e.iter().sum();
    if total < 3 {
        return Err(Error::InvalidPartition("D must be positive".into()));
    }
    Ok(())
}

/// dim = D − 1 − Σ ⌊(e_j − 1)/p⌋ with D = Σ e_j − 2.
pub fn stratum_dimension(e: &[u64], p: u32) -> Result<u64> {
    validate(e, p)?;
    let d: u64 = e.iter().sum::<u64>() - 2;
    let drop: u64 = e.iter().map(|x| (x - 1) / p as u64).sum();
    (d - 1)
        .checked_sub(drop)
        .ok_or_else(|| Error::InvalidPartition("negative dimension".into()))
}

/// The descriptor of the component with partition `e` in characteristic `p`.
pub fn descriptor_for(p: u32, e: &[u64]) -> Result<StratumDescriptor> {
    let mut partition = e.to_vec();
    partition.sort_unstable_by(|a, b| b.cmp(a));
    let dim = stratum_dimension(&partition, p)?;
    let d: u64 = partition.iter().sum::<u64>() - 2;
    Ok(StratumDescriptor {
        g: d * (p as u64 - 1) / 2,
        p,
        s: (partition.len() as u64 - 1) * (p as u64 - 1),
        partition,
        dim,
    })
}

fn partitions(n: u64, max: u64, p: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if n == 0 {
        out.push(prefix.clone());
        return;
    }
    for part in (2..=max.min(n)).rev() {
        if part % p == 1 {
            continue;
        }
        prefix.push(part);
        partitions(n - part, part, p, prefix, out);
        prefix.pop();
    }
}

/// All components for genus `g` in characteristic `p`, ordered by
/// ascending p-rank and then by partition, larger parts first. Empty when
/// 2g/(p − 1) is not a positive integer.
pub fn enumerate_strata(g: u64, p: u32) -> Vec<StratumDescriptor> {
    let pm1 = p as u64 - 1;
    if g == 0 || p < 3 || (2 * g) % pm1 != 0 {
        return Vec::new();
    }
    let d = 2 * g / pm1;
    let mut parts = Vec::new();
    partitions(d + 2, d + 2, p as u64, &mut Vec::new(), &mut parts);
    let mut out: Vec<StratumDescriptor> = parts
        .iter()
        .map(|e| descriptor_for(p, e).expect("generated partitions are valid"))
        .collect();
    out.sort_by(|a, b| a.s.cmp(&b.s).then_with(|| b.partition.cmp(&a.partition)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_genus_rows() {
        let rows = enumerate_strata(3, 3);
        assert_eq!(rows.len(), 2);
        assert_eq!((rows[0].partition.clone(), rows[0].dim, rows[0].s), (vec![5], 1, 0));
        assert_eq!((rows[1].partition.clone(), rows[1].dim, rows[1].s), (vec![3, 2], 2, 2));
        let rows = enumerate_strata(4, 3);
        let got: Vec<(Vec<u64>, u64)> = rows.iter().map(|r| (r.partition.clone(), r.dim)).collect();
        assert_eq!(got, vec![(vec![6], 2), (vec![3, 3], 3), (vec![2, 2, 2], 3)]);
        assert!(enumerate_strata(3, 5).is_empty());
    }

    #[test]
    fn dimensions() {
        assert_eq!(stratum_dimension(&[6], 3).unwrap(), 2);
        assert_eq!(stratum_dimension(&[2, 2], 5).unwrap(), 1);
        assert_eq!(stratum_dimension(&[3], 7).unwrap(), 0);
        assert!(stratum_dimension(&[4], 3).is_err());
        assert!(stratum_dimension(&[1, 2], 5).is_err());
    }

    #[test]
    fn table_lookup() {
        for t in TableStratum::ALL {
            assert_eq!(t.descriptor().table(), Some(t));
        }
        assert_eq!(TableStratum::G4P5S4.descriptor().s, 4);
    }
}
