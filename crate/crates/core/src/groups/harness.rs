//! Theorem harnesses: each reports its hypotheses and conclusion separately
//! so a sweep can tell an abstention from a counterexample.

use serde::{Deserialize, Serialize};

use super::proximal::{check_proximal_group, check_translations};
use super::FiniteGroup;
use crate::error::{Error, Result};
use crate::proximity::{
    check_class, check_pcont, check_proximal_isomorphism, deposit, extract, quotient_proximity,
    scan_axiom, subspace_proximity, Axiom, AxiomClass, AxiomReport, FiniteSpace, ProximityRelation,
    SpaceMap, Subset, Verdict, Witness,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HarnessOutcome {
    /// Hypotheses and conclusion hold.
    Confirmed,
    /// Some hypothesis fails; nothing is claimed.
    Abstained,
    /// Hypotheses hold and the conclusion fails.
    Counterexample,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypothesis {
    pub name: String,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HarnessReport {
    pub hypotheses: Vec<Hypothesis>,
    /// How much of the stated hypothesis family is actually testable.
    pub scope: String,
    pub conclusion: Verdict,
    pub outcome: HarnessOutcome,
}

impl HarnessReport {
    fn new(hypotheses: Vec<Hypothesis>, scope: String, conclusion: Verdict) -> Self {
        let outcome = if !hypotheses.iter().all(|h| h.verdict.passed()) {
            HarnessOutcome::Abstained
        } else if conclusion.passed() {
            HarnessOutcome::Confirmed
        } else {
            HarnessOutcome::Counterexample
        };
        Self {
            hypotheses,
            scope,
            conclusion,
            outcome,
        }
    }

    /// First failing hypothesis, if the harness abstained.
    pub fn failed_hypothesis(&self) -> Option<&Hypothesis> {
        self.hypotheses.iter().find(|h| !h.verdict.passed())
    }
}

fn hypothesis(name: &str, verdict: Verdict) -> Hypothesis {
    Hypothesis {
        name: name.to_string(),
        verdict,
    }
}

/// First failing verdict of a report, as a single verdict.
fn summarize(report: &AxiomReport) -> Verdict {
    match report.failures().next() {
        Some((_, w)) => Verdict::Fail(w.clone()),
        None => Verdict::Pass,
    }
}

fn singleton_scope(g: &FiniteGroup) -> String {
    let n = g.order();
    format!(
        "invertible family: the {n} singletons out of {} nonempty subsets",
        (1usize << n) - 1
    )
}

/// `μ₁` pcont with an invertible family implies `μ₂` pcont, tested on the
/// singleton family, the only nonempty invertible one.
pub fn theorem_harness_lemma1(g: &FiniteGroup, rel: &ProximityRelation) -> Result<HarnessReport> {
    let pg = check_proximal_group(g, rel)?;
    let proximity = summarize(&check_class(rel, AxiomClass::Cech));
    let single = |x: usize| Subset::singleton(x);
    let n = g.order();
    let w = (0..n).find_map(|x| {
        (0..n)
            .find(|&y| {
                rel.near(single(x), single(y)) && rel.far(single(g.inv(x)), single(g.inv(y)))
            })
            .map(|y| Witness::of([single(x), single(y)]))
    });
    Ok(HarnessReport::new(
        vec![
            hypothesis("proximity", proximity),
            hypothesis("mu1_pcont", pg.mu1_pcont),
        ],
        singleton_scope(g),
        Verdict::from_scan(w),
    ))
}

/// Which hypothesis the translation criterion is run with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CriterionMode {
    /// EF proximity with the transitivity property.
    EfTransitivity,
    /// Lodato proximity with `B1 δ B2 ⟹ {x} δ B2` for every `x ∈ B1`.
    LodatoPointwise,
}

impl CriterionMode {
    pub fn name(self) -> &'static str {
        match self {
            CriterionMode::EfTransitivity => "ef-transitivity",
            CriterionMode::LodatoPointwise => "lodato-pointwise",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "ef-transitivity" | "transitivity" => Some(CriterionMode::EfTransitivity),
            "lodato-pointwise" | "pointwise" => Some(CriterionMode::LodatoPointwise),
            _ => None,
        }
    }
}

fn pointwise_scan(rel: &ProximityRelation) -> Option<Witness> {
    let y = rel.space();
    y.subsets().find_map(|a| {
        y.subsets().find_map(|b| {
            if !rel.near(a, b) {
                return None;
            }
            a.elements()
                .map(Subset::singleton)
                .find(|&x| rel.far(x, b))
                .map(|x| Witness::of([a, b, x]))
        })
    })
}

/// Pcont translations plus the selected condition imply a proximal group.
pub fn theorem_harness_thm2_and_corollary(
    g: &FiniteGroup,
    rel: &ProximityRelation,
    mode: CriterionMode,
) -> Result<HarnessReport> {
    let translations = check_translations(g, rel)?;
    let t = match translations
        .left
        .iter()
        .chain(&translations.right)
        .find(|r| !r.passes(Axiom::Pcont))
    {
        Some(r) => Verdict::Fail(r.witness(Axiom::Pcont).expect("failed").clone()),
        None => Verdict::Pass,
    };
    let mut hyps = Vec::new();
    match mode {
        CriterionMode::EfTransitivity => {
            hyps.push(hypothesis(
                "ef_proximity",
                summarize(&check_class(rel, AxiomClass::Efremovic)),
            ));
            hyps.push(hypothesis("translations_pcont", t));
            let tr = scan_axiom(rel, Axiom::Transitivity).expect("table-level axiom");
            hyps.push(hypothesis("transitivity", tr));
        }
        CriterionMode::LodatoPointwise => {
            hyps.push(hypothesis(
                "lodato_proximity",
                summarize(&check_class(rel, AxiomClass::Lodato)),
            ));
            hyps.push(hypothesis("translations_pcont", t));
            hyps.push(hypothesis(
                "pointwise",
                Verdict::from_scan(pointwise_scan(rel)),
            ));
        }
    }
    let pg = check_proximal_group(g, rel)?;
    let conclusion = if pg.verdict {
        Verdict::Pass
    } else {
        pg.mu1_pcont
            .witness()
            .or(pg.mu2_pcont.witness())
            .or(pg.is_proximity.failures().next().map(|(_, w)| w))
            .cloned()
            .map(Verdict::Fail)
            .expect("failed report carries a witness")
    };
    Ok(HarnessReport::new(hyps, singleton_scope(g), conclusion))
}

/// A quotient group with its quotient proximity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientGroup {
    pub group: FiniteGroup,
    pub relation: ProximityRelation,
    /// Coset `k` is element `k` of the quotient.
    pub cosets: Vec<Subset>,
}

impl QuotientGroup {
    fn coset_of(&self, x: usize) -> usize {
        self.cosets
            .iter()
            .position(|c| c.contains(x))
            .expect("partition")
    }
}

pub fn quotient_proximal_group(
    g: &FiniteGroup,
    rel: &ProximityRelation,
    n: Subset,
) -> Result<QuotientGroup> {
    if g.space() != rel.space() {
        return Err(Error::CarrierMismatch(
            "relation carrier differs from the group carrier".into(),
        ));
    }
    g.check_normal(n)?;
    let cosets = g.cosets(n);
    let space = FiniteSpace::new(cosets.iter().map(|&c| g.space().format_subset(c)))?;
    let find = |s: Subset| {
        cosets
            .iter()
            .position(|&c| c == s)
            .expect("coset product is a coset")
    };
    let cayley = cosets
        .iter()
        .map(|&a| {
            cosets
                .iter()
                .map(|&b| find(g.subset_product(a, b)))
                .collect()
        })
        .collect();
    let group = FiniteGroup::new(space, cayley)?;
    let relation = quotient_proximity(rel, &cosets)?;
    Ok(QuotientGroup {
        group,
        relation,
        cosets,
    })
}

/// Verdicts for a canonical map between two quotient constructions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoReport {
    /// Carrier of the canonical map's domain; coset labels for quotients.
    pub domain: FiniteSpace,
    pub codomain: FiniteSpace,
    /// The canonical map as element images.
    pub map: Vec<usize>,
    /// Homomorphism witness `[{a}, {b}]` or bijectivity witness.
    pub group_isomorphism: Verdict,
    pub proximal_isomorphism: AxiomReport,
    pub holds: bool,
}

fn iso_report(
    phi: SpaceMap,
    ga: &FiniteGroup,
    ra: &ProximityRelation,
    gb: &FiniteGroup,
    rb: &ProximityRelation,
) -> Result<IsoReport> {
    let proximal_isomorphism = check_proximal_isomorphism(&phi, ra, rb)?;
    let group_isomorphism = match ga.homomorphism_witness(&phi, gb) {
        Some((a, b)) => Verdict::Fail(Witness::of([Subset::singleton(a), Subset::singleton(b)])),
        None => proximal_isomorphism
            .verdict(Axiom::Bijective)
            .cloned()
            .expect("bijectivity verdict"),
    };
    let holds = group_isomorphism.passed() && proximal_isomorphism.passed();
    Ok(IsoReport {
        domain: phi.domain().clone(),
        codomain: phi.codomain().clone(),
        map: phi.images().to_vec(),
        group_isomorphism,
        proximal_isomorphism,
        holds,
    })
}

/// `G1/Ker η → G2` for a surjective proximal homomorphism `η`.
pub fn first_iso_harness(
    eta: &SpaceMap,
    g1: &FiniteGroup,
    rel1: &ProximityRelation,
    g2: &FiniteGroup,
    rel2: &ProximityRelation,
) -> Result<IsoReport> {
    if eta.domain() != g1.space() || eta.codomain() != g2.space() {
        return Err(Error::CarrierMismatch(
            "map carriers differ from the group carriers".into(),
        ));
    }
    if let Some((a, b)) = g1.homomorphism_witness(eta, g2) {
        return Err(Error::NotHomomorphism(format!(
            "image of {}·{} differs from the product of images",
            g1.space().label(a),
            g1.space().label(b)
        )));
    }
    if let Some(y) = eta.surjectivity_witness() {
        return Err(Error::NotSurjective(y));
    }
    if !check_pcont(eta, rel1, rel2)?.passed() {
        return Err(Error::Unverified("map is not pcont".into()));
    }
    let kernel = eta.preimage(Subset::singleton(g2.identity()));
    let q = quotient_proximal_group(g1, rel1, kernel)?;
    let images = q
        .cosets
        .iter()
        .map(|c| eta.apply(c.first().expect("nonempty coset")))
        .collect();
    let phi = SpaceMap::new(q.group.space().clone(), g2.space().clone(), images)?;
    iso_report(phi, &q.group, &q.relation, g2, rel2)
}

/// `H/(H∩N) → HN/N`, `h(H∩N) ↦ hN`.
pub fn second_iso_harness(
    g: &FiniteGroup,
    rel: &ProximityRelation,
    h: Subset,
    n: Subset,
) -> Result<IsoReport> {
    g.check_subgroup(h)?;
    g.check_normal(n)?;
    let hn = g.subset_product(h, n);
    let g_hn = g.subgroup(hn)?;
    let q1 = quotient_proximal_group(&g_hn, &subspace_proximity(rel, hn)?, extract(hn, n))?;
    let g_h = g.subgroup(h)?;
    let q2 = quotient_proximal_group(
        &g_h,
        &subspace_proximity(rel, h)?,
        extract(h, h.intersection(n)),
    )?;
    let images = q2
        .cosets
        .iter()
        .map(|&c| {
            let x = deposit(h, c).first().expect("nonempty coset");
            q1.coset_of(extract(hn, Subset::singleton(x)).first().expect("h ⊆ hn"))
        })
        .collect();
    let phi = SpaceMap::new(q2.group.space().clone(), q1.group.space().clone(), images)?;
    iso_report(phi, &q2.group, &q2.relation, &q1.group, &q1.relation)
}

/// `(G/N)/(K/N) → G/K` for normal `N ⊆ K`.
pub fn third_iso_harness(
    g: &FiniteGroup,
    rel: &ProximityRelation,
    n: Subset,
    k: Subset,
) -> Result<IsoReport> {
    g.check_normal(n)?;
    g.check_normal(k)?;
    if !n.is_subset_of(k) {
        return Err(Error::NotSubgroup(format!(
            "{} is not contained in {}",
            g.space().format_subset(n),
            g.space().format_subset(k)
        )));
    }
    let q_n = quotient_proximal_group(g, rel, n)?;
    let k_over_n =
        Subset::from_elements((0..q_n.cosets.len()).filter(|&i| q_n.cosets[i].is_subset_of(k)));
    let q_nk = quotient_proximal_group(&q_n.group, &q_n.relation, k_over_n)?;
    let q_k = quotient_proximal_group(g, rel, k)?;
    let images = q_nk
        .cosets
        .iter()
        .map(|c| {
            let i = c.first().expect("nonempty coset");
            q_k.coset_of(q_n.cosets[i].first().expect("nonempty coset"))
        })
        .collect();
    let phi = SpaceMap::new(
        q_nk.group.space().clone(),
        q_k.group.space().clone(),
        images,
    )?;
    iso_report(phi, &q_nk.group, &q_nk.relation, &q_k.group, &q_k.relation)
}
