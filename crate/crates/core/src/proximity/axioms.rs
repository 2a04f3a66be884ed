//! Axiom identifiers, verdict reports and the table-level axiom checkers.
//!
//! Every scan visits tuples in lexicographic mask order with the first
//! argument outermost and stops at the first violation, so each failing
//! axiom carries the lexicographically smallest violating tuple.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::relation::{Nearness, ProximityRelation};
use super::space::Subset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Axiom {
    L1,
    L2,
    L3,
    L4,
    L5,
    Ef,
    Dl1,
    Dl2,
    Dl3,
    Dl4,
    Dl5,
    Def,
    K1,
    K2,
    K3,
    K4,
    Transitivity,
    Pcont,
    Dpcont,
    Bijective,
    InversePcont,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::L1 => "L1",
            Axiom::L2 => "L2",
            Axiom::L3 => "L3",
            Axiom::L4 => "L4",
            Axiom::L5 => "L5",
            Axiom::Ef => "EF",
            Axiom::Dl1 => "DL1",
            Axiom::Dl2 => "DL2",
            Axiom::Dl3 => "DL3",
            Axiom::Dl4 => "DL4",
            Axiom::Dl5 => "DL5",
            Axiom::Def => "DEF",
            Axiom::K1 => "K1",
            Axiom::K2 => "K2",
            Axiom::K3 => "K3",
            Axiom::K4 => "K4",
            Axiom::Transitivity => "TRANSITIVITY",
            Axiom::Pcont => "PCONT",
            Axiom::Dpcont => "DPCONT",
            Axiom::Bijective => "BIJECTIVE",
            Axiom::InversePcont => "INVERSE_PCONT",
        }
    }

    pub fn parse(s: &str) -> Option<Axiom> {
        ALL_AXIOMS
            .iter()
            .copied()
            .find(|a| a.name().eq_ignore_ascii_case(s))
    }
}

const ALL_AXIOMS: [Axiom; 21] = [
    Axiom::L1,
    Axiom::L2,
    Axiom::L3,
    Axiom::L4,
    Axiom::L5,
    Axiom::Ef,
    Axiom::Dl1,
    Axiom::Dl2,
    Axiom::Dl3,
    Axiom::Dl4,
    Axiom::Dl5,
    Axiom::Def,
    Axiom::K1,
    Axiom::K2,
    Axiom::K3,
    Axiom::K4,
    Axiom::Transitivity,
    Axiom::Pcont,
    Axiom::Dpcont,
    Axiom::Bijective,
    Axiom::InversePcont,
];

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Tuple of subset masks exhibiting a violation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Witness(pub Vec<Subset>);

impl Witness {
    pub fn of<const N: usize>(masks: [Subset; N]) -> Self {
        Witness(masks.to_vec())
    }

    pub fn masks(&self) -> &[Subset] {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail(Witness),
}

impl Verdict {
    pub fn from_scan(w: Option<Witness>) -> Self {
        match w {
            Some(w) => Verdict::Fail(w),
            None => Verdict::Pass,
        }
    }

    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(w) => Some(w),
        }
    }
}

/// Per-axiom verdicts. A failed axiom always carries its witness.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    verdicts: BTreeMap<Axiom, Verdict>,
}

impl AxiomReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, axiom: Axiom, verdict: Verdict) {
        self.verdicts.insert(axiom, verdict);
    }

    pub fn with(mut self, axiom: Axiom, verdict: Verdict) -> Self {
        self.record(axiom, verdict);
        self
    }

    pub fn merge(&mut self, other: AxiomReport) {
        self.verdicts.extend(other.verdicts);
    }

    pub fn verdict(&self, axiom: Axiom) -> Option<&Verdict> {
        self.verdicts.get(&axiom)
    }

    pub fn passes(&self, axiom: Axiom) -> bool {
        self.verdict(axiom).is_some_and(Verdict::passed)
    }

    pub fn witness(&self, axiom: Axiom) -> Option<&Witness> {
        self.verdict(axiom).and_then(Verdict::witness)
    }

    /// True iff every recorded axiom passed.
    pub fn passed(&self) -> bool {
        self.verdicts.values().all(Verdict::passed)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Axiom, &Verdict)> {
        self.verdicts.iter().map(|(a, v)| (*a, v))
    }

    pub fn failures(&self) -> impl Iterator<Item = (Axiom, &Witness)> {
        self.verdicts
            .iter()
            .filter_map(|(a, v)| v.witness().map(|w| (*a, w)))
    }

    pub fn axioms(&self) -> Vec<Axiom> {
        self.verdicts.keys().copied().collect()
    }
}

/// Axiom families a relation can be checked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AxiomClass {
    /// L1-L4.
    Cech,
    /// L1-L5.
    Lodato,
    /// L1-L4 and EF.
    Efremovic,
    /// L1-L5 and EF.
    LodatoEfremovic,
}

impl AxiomClass {
    pub fn axioms(self) -> &'static [Axiom] {
        use Axiom::*;
        match self {
            AxiomClass::Cech => &[L1, L2, L3, L4],
            AxiomClass::Lodato => &[L1, L2, L3, L4, L5],
            AxiomClass::Efremovic => &[L1, L2, L3, L4, Ef],
            AxiomClass::LodatoEfremovic => &[L1, L2, L3, L4, L5, Ef],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            AxiomClass::Cech => "cech",
            AxiomClass::Lodato => "lodato",
            AxiomClass::Efremovic => "ef",
            AxiomClass::LodatoEfremovic => "lodato-ef",
        }
    }
}

/// Runs one table-level axiom scan on a full relation.
///
/// Only the proximity axioms L1-L5, EF and the transitivity property are
/// table-level; other ids return `None`.
pub fn scan_axiom(rel: &ProximityRelation, axiom: Axiom) -> Option<Verdict> {
    let w = match axiom {
        Axiom::L1 => scan_l1(rel),
        Axiom::L2 => scan_l2(rel),
        Axiom::L3 => scan_l3(rel),
        Axiom::L4 => scan_l4(rel),
        Axiom::L5 => scan_l5(rel),
        Axiom::Ef => scan_ef(rel),
        Axiom::Transitivity => scan_transitivity(rel),
        _ => return None,
    };
    Some(Verdict::from_scan(w))
}

pub fn check_class(rel: &ProximityRelation, class: AxiomClass) -> AxiomReport {
    let mut report = AxiomReport::new();
    for &ax in class.axioms() {
        report.record(ax, scan_axiom(rel, ax).expect("table-level axiom"));
    }
    report
}

/// L1-L4.
pub fn check_cech(rel: &ProximityRelation) -> AxiomReport {
    check_class(rel, AxiomClass::Cech)
}

/// L1-L5.
pub fn check_lodato(rel: &ProximityRelation) -> AxiomReport {
    check_class(rel, AxiomClass::Lodato)
}

/// L1-L4 plus EF.
pub fn check_efremovic(rel: &ProximityRelation) -> AxiomReport {
    check_class(rel, AxiomClass::Efremovic)
}

fn scan_l1(rel: &ProximityRelation) -> Option<Witness> {
    let y = rel.space();
    for a in y.subsets() {
        for b in y.subsets() {
            if rel.near(a, b) && !rel.near(b, a) {
                return Some(Witness::of([a, b]));
            }
        }
    }
    None
}

fn scan_l2(rel: &ProximityRelation) -> Option<Witness> {
    let y = rel.space();
    for a in y.subsets() {
        for b in y.subsets() {
            if (a.is_empty() || b.is_empty()) && rel.near(a, b) {
                return Some(Witness::of([a, b]));
            }
        }
    }
    None
}

fn scan_l3(rel: &ProximityRelation) -> Option<Witness> {
    let y = rel.space();
    for a in y.subsets() {
        for b in y.subsets() {
            if a.intersects(b) && !rel.near(a, b) {
                return Some(Witness::of([a, b]));
            }
        }
    }
    None
}

fn scan_l4(rel: &ProximityRelation) -> Option<Witness> {
    let y = rel.space();
    for a in y.subsets() {
        let row = rel.row_words(a);
        let bit = |s: Subset| row[s.index() / 64] >> (s.index() % 64) & 1 == 1;
        for b in y.subsets() {
            let nb = bit(b);
            for c in y.subsets() {
                if bit(b.union(c)) != (nb || bit(c)) {
                    return Some(Witness::of([a, b, c]));
                }
            }
        }
    }
    None
}

/// `{ y : {y} near b }` for every `b`.
pub(crate) fn closures(rel: &ProximityRelation) -> Vec<Subset> {
    let y = rel.space();
    y.subsets()
        .map(|b| {
            Subset::from_elements((0..y.size()).filter(|&i| rel.near(Subset::singleton(i), b)))
        })
        .collect()
}

fn scan_l5(rel: &ProximityRelation) -> Option<Witness> {
    // "{b} near c for every b in B2" is exactly B2 ⊆ cl(c).
    let y = rel.space();
    let cl = closures(rel);
    for a in y.subsets() {
        for b in y.subsets() {
            if !rel.near(a, b) {
                continue;
            }
            for c in y.subsets() {
                if b.is_subset_of(cl[c.index()]) && !rel.near(a, c) {
                    return Some(Witness::of([a, b, c]));
                }
            }
        }
    }
    None
}

/// Bitset over `k`: bit `k` set iff `(Y - k)` is far from `b`.
fn complement_far_bits(rel: &ProximityRelation, b: Subset) -> Vec<u64> {
    let y = rel.space();
    let mut bits = vec![0u64; y.subset_count().div_ceil(64)];
    for k in y.subsets() {
        if rel.far(y.complement(k), b) {
            bits[k.index() / 64] |= 1 << (k.index() % 64);
        }
    }
    bits
}

/// Some `k` with `a` far from `k` and `(Y - k)` far from `b`, if one exists.
pub fn ef_separator(rel: &ProximityRelation, a: Subset, b: Subset) -> Option<Subset> {
    let row = rel.row_words(a);
    let g = complement_far_bits(rel, b);
    first_common_zero_one(row, &g, rel.space().subset_count())
}

/// Smallest index set in `ones` but clear in `zeros`, below `len`.
fn first_common_zero_one(zeros: &[u64], ones: &[u64], len: usize) -> Option<Subset> {
    for (w, (&z, &o)) in zeros.iter().zip(ones).enumerate() {
        let mut hit = !z & o;
        if len < 64 {
            hit &= (1u64 << len) - 1;
        }
        if hit != 0 {
            return Some(Subset((w * 64) as u32 + hit.trailing_zeros()));
        }
    }
    None
}

fn scan_ef(rel: &ProximityRelation) -> Option<Witness> {
    let y = rel.space();
    let g: Vec<Vec<u64>> = y.subsets().map(|b| complement_far_bits(rel, b)).collect();
    for a in y.subsets() {
        let row = rel.row_words(a);
        for b in y.subsets() {
            if rel.near(a, b) {
                continue;
            }
            if first_common_zero_one(row, &g[b.index()], y.subset_count()).is_none() {
                return Some(Witness::of([a, b]));
            }
        }
    }
    None
}

fn scan_transitivity(rel: &ProximityRelation) -> Option<Witness> {
    let y = rel.space();
    for a in y.subsets() {
        for b in y.subsets() {
            if !rel.near(a, b) {
                continue;
            }
            for c in y.subsets() {
                if rel.near(b, c) && !rel.near(a, c) {
                    return Some(Witness::of([a, b, c]));
                }
            }
        }
    }
    None
}

/// Axiom checks quantified only over the subsets a [`Nearness`] admits.
///
/// L4 is tested on triples whose union is admitted; L5 needs every singleton
/// of its middle argument admitted; EF searches `K` with both `K` and its
/// complement admitted. On a full table this agrees with [`check_class`].
pub fn check_class_on<N: Nearness + ?Sized>(rel: &N, class: AxiomClass) -> AxiomReport {
    let fam = rel.admissible();
    let y = rel.space();
    let near = |a: Subset, b: Subset| rel.is_near(a, b);
    let mut report = AxiomReport::new();
    for &ax in class.axioms() {
        let w = match ax {
            Axiom::L1 => pairs(&fam).find(|&(a, b)| near(a, b) && !near(b, a)),
            Axiom::L2 => pairs(&fam).find(|&(a, b)| (a.is_empty() || b.is_empty()) && near(a, b)),
            Axiom::L3 => pairs(&fam).find(|&(a, b)| a.intersects(b) && !near(a, b)),
            _ => None,
        }
        .map(|(a, b)| Witness::of([a, b]));
        let w = match ax {
            Axiom::L4 => triples(&fam).find_map(|(a, b, c)| {
                let u = b.union(c);
                (rel.admits(u) && near(a, u) != (near(a, b) || near(a, c)))
                    .then(|| Witness::of([a, b, c]))
            }),
            Axiom::L5 => triples(&fam).find_map(|(a, b, c)| {
                let all_near = b.elements().all(|i| {
                    let s = Subset::singleton(i);
                    rel.admits(s) && near(s, c)
                });
                (near(a, b) && all_near && !near(a, c)).then(|| Witness::of([a, b, c]))
            }),
            Axiom::Ef => pairs(&fam).find_map(|(a, b)| {
                let separated = fam.iter().any(|&k| {
                    rel.admits(y.complement(k)) && !near(a, k) && !near(y.complement(k), b)
                });
                (!near(a, b) && !separated).then(|| Witness::of([a, b]))
            }),
            _ => w,
        };
        report.record(ax, Verdict::from_scan(w));
    }
    report
}

fn pairs(fam: &[Subset]) -> impl Iterator<Item = (Subset, Subset)> + '_ {
    fam.iter()
        .flat_map(move |&a| fam.iter().map(move |&b| (a, b)))
}

fn triples(fam: &[Subset]) -> impl Iterator<Item = (Subset, Subset, Subset)> + '_ {
    fam.iter().flat_map(move |&a| {
        fam.iter()
            .flat_map(move |&b| fam.iter().map(move |&c| (a, b, c)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proximity::FiniteSpace;

    fn y(n: usize) -> FiniteSpace {
        FiniteSpace::lettered(n).unwrap()
    }

    #[test]
    fn discrete_passes_everything_up_to_four() {
        for n in 1..=4 {
            let r = ProximityRelation::discrete(y(n));
            let rep = check_class(&r, AxiomClass::LodatoEfremovic);
            assert!(rep.passed(), "n={n}: {rep:?}");
            assert_eq!(rep.axioms().len(), 6);
        }
    }

    #[test]
    fn coarse_passes_cech_lodato_ef() {
        for n in 1..=4 {
            let r = ProximityRelation::coarse(y(n));
            assert!(check_class(&r, AxiomClass::LodatoEfremovic).passed());
        }
    }

    #[test]
    fn one_asymmetric_entry_fails_l1_with_that_pair() {
        let r = ProximityRelation::discrete(y(3));
        let a = Subset(1);
        let b = Subset(2);
        let bad = r.with_flipped(a, b);
        let rep = check_cech(&bad);
        assert_eq!(rep.witness(Axiom::L1), Some(&Witness::of([a, b])));
    }

    #[test]
    fn empty_near_full_fails_l2() {
        let r = ProximityRelation::discrete(y(2));
        let bad = r.with_flipped(Subset::EMPTY, Subset(3));
        let rep = check_cech(&bad);
        assert_eq!(
            rep.witness(Axiom::L2),
            Some(&Witness::of([Subset::EMPTY, Subset(3)]))
        );
    }

    #[test]
    fn transitivity_fails_on_discrete_with_expected_witness() {
        let r = ProximityRelation::discrete(y(3));
        let v = scan_axiom(&r, Axiom::Transitivity).unwrap();
        assert_eq!(
            v.witness(),
            Some(&Witness::of([Subset(1), Subset(3), Subset(2)]))
        );
        let c = ProximityRelation::coarse(y(3));
        assert!(scan_axiom(&c, Axiom::Transitivity).unwrap().passed());
    }

    #[test]
    fn discrete_ef_separator_is_second_argument_closure() {
        let r = ProximityRelation::discrete(y(3));
        let k = ef_separator(&r, Subset(1), Subset(2)).unwrap();
        assert!(r.far(Subset(1), k));
        assert!(r.far(r.space().complement(k), Subset(2)));
    }

    #[test]
    fn generic_checker_agrees_on_full_tables() {
        let base = ProximityRelation::discrete(y(3));
        for (a, b) in [(1, 2), (3, 4), (0, 5), (6, 1), (7, 7)] {
            let r = base.with_flipped(Subset(a), Subset(b));
            let class = AxiomClass::LodatoEfremovic;
            assert_eq!(check_class(&r, class), check_class_on(&r, class));
        }
    }

    #[test]
    fn axiom_names_round_trip() {
        for ax in ALL_AXIOMS {
            assert_eq!(Axiom::parse(ax.name()), Some(ax));
        }
    }
}
