//! Probe functions and the descriptive proximity they induce.
//!
//! Feature values are integers so that equality of descriptions is exact;
//! real-valued probes are encoded by a fixed-point scale chosen by the
//! caller (see [`truncation_probes`]).

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::proximity::{
    check_pcont, scan_axiom, Axiom, AxiomReport, FiniteSpace, Provenance, ProximityRelation,
    SpaceMap, Subset, Verdict, Witness,
};

/// Feature vector of one element.
pub type Description = Vec<i64>;

/// Per-element feature vectors `Φ(y) = (φ_1(y), ..., φ_k(y))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ProbeTable {
    space: FiniteSpace,
    arity: usize,
    values: Vec<Description>,
}

impl ProbeTable {
    pub fn new(space: FiniteSpace, arity: usize, values: Vec<Description>) -> Result<Self> {
        if arity == 0 {
            return Err(Error::InvalidProbes("arity must be at least 1".into()));
        }
        if values.len() != space.size() {
            return Err(Error::InvalidProbes(format!(
                "{} description vectors for {} elements",
                values.len(),
                space.size()
            )));
        }
        if let Some(i) = values.iter().position(|v| v.len() != arity) {
            return Err(Error::InvalidProbes(format!(
                "element {} has {} values, expected {arity}",
                space.label(i),
                values[i].len()
            )));
        }
        Ok(Self {
            space,
            arity,
            values,
        })
    }

    /// One probe per element taking distinct values.
    pub fn injective(space: FiniteSpace) -> Self {
        let values = (0..space.size() as i64).map(|i| vec![i]).collect();
        Self::new(space, 1, values).expect("well-formed")
    }

    /// One probe with the same value everywhere.
    pub fn constant(space: FiniteSpace) -> Self {
        let values = vec![vec![0]; space.size()];
        Self::new(space, 1, values).expect("well-formed")
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn values(&self) -> &[Description] {
        &self.values
    }

    pub fn description(&self, i: usize) -> &Description {
        &self.values[i]
    }

    /// Class index of each element: elements share a class iff their
    /// descriptions are equal. Classes are numbered by first occurrence.
    fn classes(&self) -> Vec<usize> {
        let mut seen: Vec<&Description> = Vec::new();
        self.values
            .iter()
            .map(|v| match seen.iter().position(|s| *s == v) {
                Some(k) => k,
                None => {
                    seen.push(v);
                    seen.len() - 1
                }
            })
            .collect()
    }

    /// Set of description classes met by each subset.
    fn class_masks(&self) -> Vec<u32> {
        let cls = self.classes();
        self.space
            .subsets()
            .map(|s| s.elements().fold(0u32, |m, i| m | 1 << cls[i]))
            .collect()
    }
}

impl<'de> Deserialize<'de> for ProbeTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            space: FiniteSpace,
            arity: usize,
            values: Vec<Description>,
        }
        let raw = Raw::deserialize(d)?;
        ProbeTable::new(raw.space, raw.arity, raw.values).map_err(serde::de::Error::custom)
    }
}

/// `Φ(B) = { Φ(b) : b ∈ B }`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DescriptionSet(pub BTreeSet<Description>);

impl DescriptionSet {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn meets(&self, other: &DescriptionSet) -> bool {
        self.0.intersection(&other.0).next().is_some()
    }
}

pub fn describe(probes: &ProbeTable, b: Subset) -> DescriptionSet {
    DescriptionSet(b.elements().map(|i| probes.values[i].clone()).collect())
}

/// `A δ_Φ B` iff `Φ(A) ∩ Φ(B) ≠ ∅`.
pub fn descriptive_proximity(probes: &ProbeTable) -> ProximityRelation {
    let masks = probes.class_masks();
    ProximityRelation::from_fn(probes.space.clone(), Provenance::Descriptive, |a, b| {
        masks[a.index()] & masks[b.index()] != 0
    })
}

/// `{ x ∈ A ∪ B : Φ(x) ∈ Φ(A) ∩ Φ(B) }`.
pub fn descriptive_intersection(probes: &ProbeTable, a: Subset, b: Subset) -> Subset {
    let cls = probes.classes();
    let met = |s: Subset| s.elements().fold(0u32, |m, i| m | 1 << cls[i]);
    let shared = met(a) & met(b);
    Subset::from_elements(a.union(b).elements().filter(|&i| shared >> cls[i] & 1 == 1))
}

fn dl3_scan(rel: &ProximityRelation, probes: &ProbeTable) -> Option<Witness> {
    let y = rel.space();
    for a in y.subsets() {
        for b in y.subsets() {
            if !descriptive_intersection(probes, a, b).is_empty() && rel.far(a, b) {
                return Some(Witness::of([a, b]));
            }
        }
    }
    None
}

/// DL1-DL5 (or DL1-DL4 and DEF) for an arbitrary table read against a
/// probe table; DL3 uses the descriptive intersection.
pub fn check_descriptive_axioms(
    rel: &ProximityRelation,
    probes: &ProbeTable,
    efremovic: bool,
) -> AxiomReport {
    let scan = |ax| scan_axiom(rel, ax).expect("table-level axiom");
    let mut report = AxiomReport::new()
        .with(Axiom::Dl1, scan(Axiom::L1))
        // "∅ far from everything", both argument positions.
        .with(Axiom::Dl2, scan(Axiom::L2))
        .with(Axiom::Dl3, Verdict::from_scan(dl3_scan(rel, probes)))
        .with(Axiom::Dl4, scan(Axiom::L4));
    if efremovic {
        report.record(Axiom::Def, scan(Axiom::Ef));
    } else {
        report.record(Axiom::Dl5, scan(Axiom::L5));
    }
    report
}

/// DL1-DL5 on `δ_Φ`.
pub fn check_descriptive_lodato(probes: &ProbeTable) -> AxiomReport {
    check_descriptive_axioms(&descriptive_proximity(probes), probes, false)
}

/// DL1-DL4 and DEF on `δ_Φ`.
pub fn check_descriptive_ef(probes: &ProbeTable) -> AxiomReport {
    check_descriptive_axioms(&descriptive_proximity(probes), probes, true)
}

/// Descriptive proximal continuity: `check_pcont` on the two induced
/// relations, reported under `DPCONT`.
pub fn check_dpcont(f: &SpaceMap, from: &ProbeTable, to: &ProbeTable) -> Result<AxiomReport> {
    let r = check_pcont(f, &descriptive_proximity(from), &descriptive_proximity(to))?;
    let v = r.verdict(Axiom::Pcont).cloned().expect("pcont verdict");
    Ok(AxiomReport::new().with(Axiom::Dpcont, v))
}

/// Outcome of comparing two families of dpcont maps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MappingSpaceVerdict {
    pub near: bool,
    /// `(left index, right index, A, B)` with `A δ B` but `γ(A)` far `γ'(B)`.
    pub witness: Option<(usize, usize, Subset, Subset)>,
}

/// Nearness in the descriptive proximal mapping space: `{γ_j} δ {γ'_k}` iff
/// every descriptively near pair `A, B` has `γ_j(A)` near `γ'_k(B)` for
/// all `j, k`. Every map must itself be dpcont.
pub fn mapping_space_relation(
    left: &[SpaceMap],
    right: &[SpaceMap],
    from: &ProbeTable,
    to: &ProbeTable,
) -> Result<MappingSpaceVerdict> {
    for (side, maps) in [("left", left), ("right", right)] {
        for (index, f) in maps.iter().enumerate() {
            if !check_dpcont(f, from, to)?.passed() {
                return Err(Error::NotDpcont { side, index });
            }
        }
    }
    let d1 = descriptive_proximity(from);
    let d2 = descriptive_proximity(to);
    for a in from.space().subsets() {
        for b in from.space().subsets() {
            if !d1.near(a, b) {
                continue;
            }
            for (j, g) in left.iter().enumerate() {
                for (k, h) in right.iter().enumerate() {
                    if d2.far(g.image(a), h.image(b)) {
                        return Ok(MappingSpaceVerdict {
                            near: false,
                            witness: Some((j, k, a, b)),
                        });
                    }
                }
            }
        }
    }
    Ok(MappingSpaceVerdict {
        near: true,
        witness: None,
    })
}

/// Result of comparing two label paths over a grid of boxes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathDemo {
    pub near: bool,
    /// First position whose box descriptions differ (or the shorter length).
    pub first_difference: Option<usize>,
    /// The spliced path when the first ends where the second starts.
    pub concatenation: Option<Vec<String>>,
}

fn resolve_path(grid: &ProbeTable, path: &[&str]) -> Result<Vec<usize>> {
    if path.is_empty() {
        return Err(Error::InvalidPath("paths must be nonempty".into()));
    }
    path.iter()
        .map(|l| {
            grid.space()
                .index_of(l)
                .ok_or_else(|| Error::InvalidPath(format!("unknown box label {l:?}")))
        })
        .collect()
}

/// Splices two paths at a shared endpoint: `(A,B) * (B,C) = (A,B,C)`.
pub fn concat_paths(grid: &ProbeTable, first: &[&str], second: &[&str]) -> Result<Vec<String>> {
    resolve_path(grid, first)?;
    resolve_path(grid, second)?;
    let (end, start) = (first[first.len() - 1], second[0]);
    if end != start {
        return Err(Error::InvalidPath(format!(
            "first path ends at {end:?} but second starts at {start:?}"
        )));
    }
    Ok(first
        .iter()
        .chain(&second[1..])
        .map(|s| s.to_string())
        .collect())
}

/// Two box paths are near iff they visit boxes with equal descriptions
/// position by position.
pub fn path_label_demo(grid: &ProbeTable, first: &[&str], second: &[&str]) -> Result<PathDemo> {
    let p = resolve_path(grid, first)?;
    let q = resolve_path(grid, second)?;
    let first_difference = (0..p.len().max(q.len())).find(|&k| {
        k >= p.len() || k >= q.len() || grid.description(p[k]) != grid.description(q[k])
    });
    Ok(PathDemo {
        near: first_difference.is_none(),
        first_difference,
        concatenation: concat_paths(grid, first, second).ok(),
    })
}

/// Finite analogue of the truncation probes: the carrier
/// `{-1.5, -1, 0, 0.3, 1, 1.3, 2.5}` with `φ1 = trunc` and
/// `φ2(y) = y` off the integers, `y + 0.3` on them, all in tenths.
pub fn truncation_probes() -> ProbeTable {
    let tenths: [i64; 7] = [-15, -10, 0, 3, 10, 13, 25];
    let labels = ["-1.5", "-1", "0", "0.3", "1", "1.3", "2.5"];
    let values = tenths
        .iter()
        .map(|&t| {
            let trunc = t / 10 * 10;
            let shifted = if t % 10 == 0 { t + 3 } else { t };
            vec![trunc, shifted]
        })
        .collect();
    ProbeTable::new(FiniteSpace::new(labels).expect("labels"), 2, values).expect("well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proximity::check_lodato;

    fn y(n: usize) -> FiniteSpace {
        FiniteSpace::lettered(n).unwrap()
    }

    #[test]
    fn describe_examples() {
        let p = ProbeTable::new(y(3), 1, vec![vec![4], vec![4], vec![9]]).unwrap();
        assert_eq!(describe(&p, Subset(4)).0, BTreeSet::from([vec![9]]));
        assert!(describe(&p, Subset::EMPTY).is_empty());
        assert_eq!(describe(&p, Subset(3)).len(), 1);
    }

    #[test]
    fn injective_and_constant_probes() {
        let inj = descriptive_proximity(&ProbeTable::injective(y(3)));
        assert!(inj.same_table(&ProximityRelation::discrete(y(3))));
        let con = descriptive_proximity(&ProbeTable::constant(y(3)));
        assert!(con.same_table(&ProximityRelation::coarse(y(3))));
        assert_eq!(
            check_descriptive_lodato(&ProbeTable::injective(y(3)))
                .iter()
                .map(|(_, v)| v.clone())
                .collect::<Vec<_>>(),
            check_lodato(&inj)
                .iter()
                .map(|(_, v)| v.clone())
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn truncation_fixture_by_hand() {
        let p = truncation_probes();
        // 1 -> (trunc 1, 1 + 0.3) = (10, 13); 1.3 -> (10, 13).
        assert_eq!(p.description(4), &vec![10, 13]);
        assert_eq!(p.description(5), &vec![10, 13]);
        // -1.5 -> (-1, -1.5); -1 -> (-1, -0.7).
        assert_eq!(p.description(0), &vec![-10, -15]);
        assert_eq!(p.description(1), &vec![-10, -7]);
        let d = descriptive_proximity(&p);
        assert!(d.near(Subset::singleton(4), Subset::singleton(5)));
        assert!(d.near(Subset::singleton(2), Subset::singleton(3)));
        assert!(d.far(Subset::singleton(0), Subset::singleton(1)));
        assert!(check_descriptive_lodato(&p).passed());
        assert!(check_descriptive_ef(&p).passed());
    }

    #[test]
    fn intersection_examples() {
        let p = ProbeTable::new(y(4), 1, vec![vec![0], vec![1], vec![0], vec![2]]).unwrap();
        assert_eq!(
            descriptive_intersection(&p, Subset(5), Subset(5)),
            Subset(5)
        );
        assert_eq!(
            descriptive_intersection(&p, Subset(2), Subset(8)),
            Subset::EMPTY
        );
        // {a} and {c} share description 0.
        assert_eq!(
            descriptive_intersection(&p, Subset(1), Subset(4)),
            Subset(5)
        );
        let inj = ProbeTable::injective(y(3));
        assert_eq!(
            descriptive_intersection(&inj, Subset(3), Subset(6)),
            Subset(2)
        );
    }

    #[test]
    fn corrupted_table_fails_dl3() {
        let p = ProbeTable::new(y(2), 1, vec![vec![0], vec![0]]).unwrap();
        let rel = ProximityRelation::discrete(y(2));
        let rep = check_descriptive_axioms(&rel, &p, false);
        assert_eq!(
            rep.witness(Axiom::Dl3),
            Some(&Witness::of([Subset(1), Subset(2)]))
        );
    }

    #[test]
    fn dpcont_examples() {
        let p = ProbeTable::new(y(3), 1, vec![vec![0], vec![1], vec![1]]).unwrap();
        let id = SpaceMap::identity(y(3));
        assert!(check_dpcont(&id, &p, &p).unwrap().passed());
        let anything = SpaceMap::new(y(3), y(2), vec![1, 0, 1]).unwrap();
        assert!(check_dpcont(&anything, &p, &ProbeTable::constant(y(2)))
            .unwrap()
            .passed());
        // b, c share a description; sending them to far points breaks dpcont.
        let split = SpaceMap::new(y(3), y(3), vec![0, 1, 0]).unwrap();
        let rep = check_dpcont(&split, &p, &p).unwrap();
        assert_eq!(
            rep.witness(Axiom::Dpcont),
            Some(&Witness::of([Subset(2), Subset(4)]))
        );
    }

    #[test]
    fn mapping_space_examples() {
        let p = ProbeTable::injective(y(2));
        let id = SpaceMap::identity(y(2));
        let v =
            mapping_space_relation(std::slice::from_ref(&id), std::slice::from_ref(&id), &p, &p)
                .unwrap();
        assert!(v.near);
        let swap = SpaceMap::new(y(2), y(2), vec![1, 0]).unwrap();
        let v = mapping_space_relation(
            std::slice::from_ref(&id),
            std::slice::from_ref(&swap),
            &p,
            &p,
        )
        .unwrap();
        assert_eq!(v.witness, Some((0, 0, Subset(1), Subset(1))));
        let c = ProbeTable::constant(y(2));
        let v = mapping_space_relation(std::slice::from_ref(&id), &[swap], &p, &c).unwrap();
        assert!(v.near);
        let collapse = SpaceMap::new(y(2), y(2), vec![0, 0]).unwrap();
        let err = mapping_space_relation(&[id], &[collapse], &c, &p).unwrap_err();
        assert!(matches!(
            err,
            Error::NotDpcont {
                side: "left",
                index: 0
            }
        ));
    }

    #[test]
    fn path_demo_examples() {
        let grid = ProbeTable::injective(FiniteSpace::new(["A", "B", "C"]).unwrap());
        let abc = path_label_demo(&grid, &["A", "B", "C"], &["A", "B", "C"]).unwrap();
        assert!(abc.near);
        let acb = path_label_demo(&grid, &["A", "B", "C"], &["A", "C", "B"]).unwrap();
        assert!(!acb.near);
        assert_eq!(acb.first_difference, Some(1));
        assert_eq!(
            concat_paths(&grid, &["A", "B"], &["B", "C"]).unwrap(),
            vec!["A", "B", "C"]
        );
        assert!(concat_paths(&grid, &["A", "B"], &["C", "A"]).is_err());
        assert!(path_label_demo(&grid, &[], &["A"]).is_err());
        assert!(path_label_demo(&grid, &["Z"], &["A"]).is_err());
    }

    #[test]
    fn probe_table_validation() {
        assert!(ProbeTable::new(y(2), 2, vec![vec![1, 2], vec![3]]).is_err());
        assert!(ProbeTable::new(y(2), 1, vec![vec![1]]).is_err());
        assert!(ProbeTable::new(y(2), 0, vec![vec![], vec![]]).is_err());
    }
}
