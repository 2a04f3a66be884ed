use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::generate::{enumerate_forced_tables, enumerate_relations, MAX_FORCED_N};
use super::oracle::{naive_oracle, naive_violates};
use crate::error::Result;
use crate::proximity::{check_class, Axiom, AxiomClass, ProximityRelation, Witness};

const CLASSES: [AxiomClass; 4] = [
    AxiomClass::Cech,
    AxiomClass::Lodato,
    AxiomClass::Efremovic,
    AxiomClass::LodatoEfremovic,
];

/// A minimal relation in one class but not another.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exemplar {
    /// e.g. `cech-not-lodato`.
    pub separation: String,
    pub relation: ProximityRelation,
    pub near_pairs: usize,
    /// The axiom of the stronger class that fails, with its witness.
    pub failing_axiom: Axiom,
    pub witness: Witness,
    /// Witness confirmed and weaker class confirmed by the naive oracle.
    pub naive_confirmed: bool,
}

/// The two containments that can be stated exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Containments {
    /// Every EF relation passes L1-L4.
    pub ef_within_cech: bool,
    /// Every Lodato relation passes EF and vice versa.
    pub lodato_equals_ef: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationCensus {
    pub n: usize,
    /// Relations per class, from the point-graph enumeration.
    pub counts: BTreeMap<String, usize>,
    /// The same counts from brute-force L1-L3 tables filtered by the naive
    /// oracle; present for `n <= 3`.
    pub naive_counts: Option<BTreeMap<String, usize>>,
    pub containments: Containments,
    pub exemplars: Vec<Exemplar>,
    /// Separations looked for and not found.
    pub absent: Vec<String>,
}

fn naive_in_class(rel: &ProximityRelation, class: AxiomClass) -> bool {
    class
        .axioms()
        .iter()
        .all(|&ax| naive_oracle(rel, ax).expect("table-level axiom"))
}

/// Census of the Čech relations on `n` points and minimal separating
/// exemplars. Minimality is by number of near pairs, then by the row-major
/// table bits (far before near).
pub fn mine_separating_examples(n: usize) -> Result<RelationCensus> {
    let rels = enumerate_relations(n, AxiomClass::Cech)?;
    // Per relation: Lodato report, EF report.
    let reports: Vec<_> = rels
        .par_iter()
        .map(|r| {
            (
                check_class(r, AxiomClass::Lodato),
                check_class(r, AxiomClass::Efremovic),
            )
        })
        .collect();
    let member = |i: usize, class: AxiomClass| match class {
        AxiomClass::Cech => true,
        AxiomClass::Lodato => reports[i].0.passed(),
        AxiomClass::Efremovic => reports[i].1.passed(),
        AxiomClass::LodatoEfremovic => reports[i].0.passed() && reports[i].1.passed(),
    };
    let counts = CLASSES
        .iter()
        .map(|&c| {
            (
                c.name().to_string(),
                (0..rels.len()).filter(|&i| member(i, c)).count(),
            )
        })
        .collect();

    let naive_counts = if n <= MAX_FORCED_N {
        let tables = enumerate_forced_tables(n)?;
        let flags: Vec<[bool; 4]> = tables
            .par_iter()
            .map(|t| CLASSES.map(|c| naive_in_class(t, c)))
            .collect();
        Some(
            CLASSES
                .iter()
                .enumerate()
                .map(|(k, c)| (c.name().to_string(), flags.iter().filter(|f| f[k]).count()))
                .collect(),
        )
    } else {
        None
    };

    let containments = Containments {
        ef_within_cech: (0..rels.len())
            .filter(|&i| member(i, AxiomClass::Efremovic))
            .all(|i| check_class(&rels[i], AxiomClass::Cech).passed()),
        lodato_equals_ef: (0..rels.len())
            .all(|i| member(i, AxiomClass::Lodato) == member(i, AxiomClass::Efremovic)),
    };

    let separations = [
        (
            "cech-not-lodato",
            AxiomClass::Cech,
            AxiomClass::Lodato,
            Axiom::L5,
        ),
        (
            "cech-not-ef",
            AxiomClass::Cech,
            AxiomClass::Efremovic,
            Axiom::Ef,
        ),
        (
            "lodato-not-ef",
            AxiomClass::Lodato,
            AxiomClass::Efremovic,
            Axiom::Ef,
        ),
        (
            "ef-not-lodato",
            AxiomClass::Efremovic,
            AxiomClass::Lodato,
            Axiom::L5,
        ),
    ];
    let mut exemplars = Vec::new();
    let mut absent = Vec::new();
    for (name, weak, strong, axiom) in separations {
        let best = (0..rels.len())
            .filter(|&i| member(i, weak) && !member(i, strong))
            .min_by_key(|&i| (rels[i].near_pair_count(), rels[i].table_bits()));
        let Some(i) = best else {
            absent.push(name.to_string());
            continue;
        };
        let rel = rels[i].clone();
        let report = if axiom == Axiom::L5 {
            &reports[i].0
        } else {
            &reports[i].1
        };
        let witness = report
            .witness(axiom)
            .expect("separating axiom fails")
            .clone();
        let naive_confirmed = naive_violates(&rel, axiom, &witness) && naive_in_class(&rel, weak);
        exemplars.push(Exemplar {
            separation: name.to_string(),
            near_pairs: rel.near_pair_count(),
            relation: rel,
            failing_axiom: axiom,
            witness,
            naive_confirmed,
        });
    }

    Ok(RelationCensus {
        n,
        counts,
        naive_counts,
        containments,
        exemplars,
        absent,
    })
}
