//! Optimized axiom scans against the naive oracle.

use nearspace::enumeration::{
    enumerate_forced_tables, enumerate_relations, naive_first_violation, naive_violates,
    random_table, TABLE_STYLES,
};
use nearspace::{
    check_class, check_class_on, check_kuratowski, scan_axiom, Axiom, AxiomClass, AxiomReport,
    FiniteSpace, ProximityRelation, Subset,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const TABLE_AXIOMS: [Axiom; 11] = [
    Axiom::L1,
    Axiom::L2,
    Axiom::L3,
    Axiom::L4,
    Axiom::L5,
    Axiom::Ef,
    Axiom::Transitivity,
    Axiom::K1,
    Axiom::K2,
    Axiom::K3,
    Axiom::K4,
];

fn optimized(rel: &ProximityRelation) -> AxiomReport {
    let mut r = check_class(rel, AxiomClass::LodatoEfremovic);
    r.merge(check_kuratowski(rel));
    r.record(
        Axiom::Transitivity,
        scan_axiom(rel, Axiom::Transitivity).unwrap(),
    );
    r
}

/// Same verdict as the oracle and the same first witness.
fn assert_agrees(rel: &ProximityRelation) {
    let opt = optimized(rel);
    for ax in TABLE_AXIOMS {
        let naive = naive_first_violation(rel, ax).expect("table axiom");
        assert_eq!(opt.witness(ax), naive.as_ref(), "{ax} on {rel:?}");
        if let Some(w) = opt.witness(ax) {
            assert!(naive_violates(rel, ax, w));
        }
    }
}

#[test]
fn every_symmetric_forced_table_up_to_three_points() {
    for n in 1..=3 {
        for rel in enumerate_forced_tables(n).unwrap() {
            assert_agrees(&rel);
        }
    }
}

#[test]
fn every_enumerated_relation_at_two_points() {
    for class in [AxiomClass::Cech, AxiomClass::Lodato, AxiomClass::Efremovic] {
        for rel in enumerate_relations(2, class).unwrap() {
            assert_agrees(&rel);
        }
    }
}

#[test]
fn random_tables_at_three_points() {
    let y = FiniteSpace::lettered(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for k in 0..3_000 {
        let rel = random_table(&y, TABLE_STYLES[k % 3], &mut rng);
        assert_agrees(&rel);
    }
}

#[test]
fn random_tables_at_four_points() {
    let y = FiniteSpace::lettered(4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for k in 0..150 {
        let rel = random_table(&y, TABLE_STYLES[k % 3], &mut rng);
        assert_agrees(&rel);
    }
}

#[test]
fn generic_checker_matches_table_checker() {
    let y = FiniteSpace::lettered(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for k in 0..500 {
        let rel = random_table(&y, TABLE_STYLES[k % 3], &mut rng);
        for class in [AxiomClass::Lodato, AxiomClass::Efremovic] {
            assert_eq!(check_class_on(&rel, class), check_class(&rel, class));
        }
    }
}

/// Corrupting a passing relation by one bit: the witness found on the
/// corrupted table must be rejected on the original.
#[test]
fn witnesses_do_not_survive_a_bit_flip_back() {
    for n in 1..=3 {
        let y = FiniteSpace::lettered(n).unwrap();
        for rel in enumerate_relations(n, AxiomClass::Cech).unwrap() {
            let good = optimized(&rel);
            for a in y.subsets() {
                for b in y.subsets() {
                    let bad = rel.with_flipped(a, b);
                    let report = optimized(&bad);
                    for (ax, w) in report.failures() {
                        assert!(naive_violates(&bad, ax, w));
                        if good.passes(ax) {
                            assert!(!naive_violates(&rel, ax, w), "{ax} {w:?}");
                        }
                    }
                    // L1 always breaks on an off-diagonal flip.
                    if a != b {
                        assert!(!report.passes(Axiom::L1));
                    }
                }
            }
        }
    }
}

#[test]
fn enumerated_relations_are_distinct_and_in_class() {
    for n in 1..=4 {
        for class in [AxiomClass::Cech, AxiomClass::Lodato, AxiomClass::Efremovic] {
            let rels = enumerate_relations(n, class).unwrap();
            let mut bits: Vec<Vec<bool>> = rels.iter().map(|r| r.table_bits()).collect();
            bits.sort();
            bits.dedup();
            assert_eq!(bits.len(), rels.len());
            if n <= 3 {
                for r in &rels {
                    for &ax in class.axioms() {
                        assert_eq!(naive_first_violation(r, ax), Some(None), "{ax}");
                    }
                }
            }
        }
    }
}

#[test]
fn witness_masks_stay_in_range() {
    let rel = ProximityRelation::discrete(FiniteSpace::lettered(2).unwrap());
    let w = nearspace::Witness::of([Subset(1), Subset(64)]);
    assert!(!naive_violates(&rel, Axiom::L3, &w));
}
