use serde::{Deserialize, Serialize};

use super::FiniteGroup;
use crate::descriptive::{descriptive_proximity, ProbeTable};
use crate::error::{Error, Result};
use crate::proximity::{
    check_class_on, check_pcont, check_proximal_isomorphism, closure, product_proximity,
    scan_axiom, subspace_proximity, Axiom, AxiomClass, AxiomReport, Nearness, ProximityRelation,
    SpaceMap, Subset, Verdict, Witness,
};

/// Outcome of checking that `μ₁` (subset product on rectangles) and `μ₂`
/// (subset inversion) are pcont, next to the axiom report for the relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProximalGroupReport {
    pub class: AxiomClass,
    pub is_proximity: AxiomReport,
    /// Witness `[B1, B2, C1, C2]`: `B1 δ C1`, `B2 δ C2`, `B1B2` far `C1C2`.
    pub mu1_pcont: Verdict,
    /// Witness `[B, C]`: `B δ C`, `B⁻¹` far `C⁻¹`.
    pub mu2_pcont: Verdict,
    pub verdict: bool,
}

impl ProximalGroupReport {
    fn new(class: AxiomClass, is_proximity: AxiomReport, mu1: Verdict, mu2: Verdict) -> Self {
        let verdict = is_proximity.passed() && mu1.passed() && mu2.passed();
        Self {
            class,
            is_proximity,
            mu1_pcont: mu1,
            mu2_pcont: mu2,
            verdict,
        }
    }
}

fn check_group_carrier<N: Nearness + ?Sized>(g: &FiniteGroup, rel: &N) -> Result<()> {
    if g.space() != rel.space() {
        return Err(Error::CarrierMismatch(
            "relation carrier differs from the group carrier".into(),
        ));
    }
    Ok(())
}

/// Near lists indexed by mask, for admitted subsets only.
fn neighbours<N: Nearness + ?Sized>(rel: &N, fam: &[Subset]) -> Vec<Vec<Subset>> {
    let mut out = vec![Vec::new(); rel.space().subset_count()];
    for &b in fam {
        out[b.index()] = fam.iter().copied().filter(|&c| rel.is_near(b, c)).collect();
    }
    out
}

fn mu1_scan<N: Nearness + ?Sized>(
    g: &FiniteGroup,
    rel: &N,
    fam: &[Subset],
    nb: &[Vec<Subset>],
) -> Result<Option<Witness>> {
    for &b1 in fam {
        for &b2 in fam {
            let p = g.subset_product(b1, b2);
            if !rel.admits(p) {
                return Err(Error::NonRectangle(p));
            }
        }
    }
    for &b1 in fam {
        for &b2 in fam {
            let p = g.subset_product(b1, b2);
            for &c1 in &nb[b1.index()] {
                for &c2 in &nb[b2.index()] {
                    if !rel.is_near(p, g.subset_product(c1, c2)) {
                        return Ok(Some(Witness::of([b1, b2, c1, c2])));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn mu2_scan<N: Nearness + ?Sized>(
    g: &FiniteGroup,
    rel: &N,
    fam: &[Subset],
    nb: &[Vec<Subset>],
) -> Result<Option<Witness>> {
    for &b in fam {
        let bi = g.subset_inverse(b);
        if !rel.admits(bi) {
            return Err(Error::NonRectangle(bi));
        }
    }
    for &b in fam {
        for &c in &nb[b.index()] {
            if !rel.is_near(g.subset_inverse(b), g.subset_inverse(c)) {
                return Ok(Some(Witness::of([b, c])));
            }
        }
    }
    Ok(None)
}

/// [`check_proximal_group_with`] against the Čech axioms.
pub fn check_proximal_group<N: Nearness + ?Sized>(
    g: &FiniteGroup,
    rel: &N,
) -> Result<ProximalGroupReport> {
    check_proximal_group_with(g, rel, AxiomClass::Cech)
}

/// `μ₁` is quantified over rectangle pairs: whenever `B1 δ C1` and `B2 δ C2`,
/// `B1B2 δ C1C2` must hold. `μ₂` is `check_pcont` of the inversion.
pub fn check_proximal_group_with<N: Nearness + ?Sized>(
    g: &FiniteGroup,
    rel: &N,
    class: AxiomClass,
) -> Result<ProximalGroupReport> {
    check_group_carrier(g, rel)?;
    let fam = rel.admissible();
    let nb = neighbours(rel, &fam);
    let mu1 = Verdict::from_scan(mu1_scan(g, rel, &fam, &nb)?);
    let mu2 = Verdict::from_scan(mu2_scan(g, rel, &fam, &nb)?);
    Ok(ProximalGroupReport::new(
        class,
        check_class_on(rel, class),
        mu1,
        mu2,
    ))
}

/// Per-element isomorphism reports for the left and right translations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranslationReport {
    pub left: Vec<AxiomReport>,
    pub right: Vec<AxiomReport>,
}

impl TranslationReport {
    pub fn passed(&self) -> bool {
        self.left.iter().chain(&self.right).all(AxiomReport::passed)
    }

    /// Whether every translation is at least pcont.
    pub fn pcont_passed(&self) -> bool {
        self.left
            .iter()
            .chain(&self.right)
            .all(|r| r.passes(Axiom::Pcont))
    }

    /// First failing translation as `("left" | "right", x, report)`.
    pub fn first_failure(&self) -> Option<(&'static str, usize, &AxiomReport)> {
        for (side, v) in [("left", &self.left), ("right", &self.right)] {
            if let Some((x, r)) = v.iter().enumerate().find(|(_, r)| !r.passed()) {
                return Some((side, x, r));
            }
        }
        None
    }
}

/// Runs `L_x` and `R_x` through [`check_proximal_isomorphism`] for every `x`.
pub fn check_translations<N: Nearness + ?Sized>(
    g: &FiniteGroup,
    rel: &N,
) -> Result<TranslationReport> {
    check_group_carrier(g, rel)?;
    let n = g.order();
    let left = (0..n)
        .map(|x| check_proximal_isomorphism(&g.left_translation(x), rel, rel))
        .collect::<Result<_>>()?;
    let right = (0..n)
        .map(|x| check_proximal_isomorphism(&g.right_translation(x), rel, rel))
        .collect::<Result<_>>()?;
    Ok(TranslationReport { left, right })
}

/// All `B` with `B·B⁻¹ = B⁻¹·B = {e}`.
pub fn invertible_subsets(g: &FiniteGroup) -> Vec<Subset> {
    let e = Subset::singleton(g.identity());
    g.space()
        .subsets()
        .filter(|&b| {
            let bi = g.subset_inverse(b);
            g.subset_product(b, bi) == e && g.subset_product(bi, b) == e
        })
        .collect()
}

/// `A δ B ∧ B δ C ⟹ A δ C` over all triples.
pub fn check_transitivity_property(rel: &ProximityRelation) -> AxiomReport {
    let v = scan_axiom(rel, Axiom::Transitivity).expect("table-level axiom");
    AxiomReport::new().with(Axiom::Transitivity, v)
}

/// The subgroup `h` with the subspace proximity, checked as a proximal group.
pub fn subgroup_proximal_group(
    g: &FiniteGroup,
    rel: &ProximityRelation,
    h: Subset,
) -> Result<ProximalGroupReport> {
    check_group_carrier(g, rel)?;
    let sub = g.subgroup(h)?;
    let sub_rel = subspace_proximity(rel, h)?;
    check_proximal_group(&sub, &sub_rel)
}

/// Direct product with the rectangle product proximity. Both factors must
/// already be proximal groups.
pub fn product_proximal_group(
    g1: &FiniteGroup,
    rel1: &ProximityRelation,
    g2: &FiniteGroup,
    rel2: &ProximityRelation,
) -> Result<ProximalGroupReport> {
    for (side, g, rel) in [("left", g1, rel1), ("right", g2, rel2)] {
        if !check_proximal_group(g, rel)?.verdict {
            return Err(Error::Unverified(format!(
                "{side} factor is not a proximal group"
            )));
        }
    }
    let group = FiniteGroup::direct_product(g1, g2)?;
    let rel = product_proximity(rel1, rel2)?;
    check_proximal_group(&group, &rel)
}

fn check_map_carriers(eta: &SpaceMap, g1: &FiniteGroup, g2: &FiniteGroup) -> Result<()> {
    if eta.domain() != g1.space() || eta.codomain() != g2.space() {
        return Err(Error::CarrierMismatch(
            "map carriers differ from the group carriers".into(),
        ));
    }
    Ok(())
}

fn hom_verdict(eta: &SpaceMap, g1: &FiniteGroup, g2: &FiniteGroup) -> Verdict {
    Verdict::from_scan(
        g1.homomorphism_witness(eta, g2)
            .map(|(a, b)| Witness::of([Subset::singleton(a), Subset::singleton(b)])),
    )
}

/// Group-homomorphism, pcont and isomorphism verdicts for one map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomomorphismReport {
    /// Witness `[{a}, {b}]` with `η(ab) ≠ η(a)η(b)`.
    pub group_hom: Verdict,
    pub pcont: AxiomReport,
    /// `PCONT`, `BIJECTIVE` and, for bijections, `INVERSE_PCONT`.
    pub isomorphism: AxiomReport,
    pub is_homomorphism: bool,
    pub is_isomorphism: bool,
}

pub fn check_proximal_homomorphism(
    eta: &SpaceMap,
    g1: &FiniteGroup,
    rel1: &ProximityRelation,
    g2: &FiniteGroup,
    rel2: &ProximityRelation,
) -> Result<HomomorphismReport> {
    check_map_carriers(eta, g1, g2)?;
    check_group_carrier(g1, rel1)?;
    check_group_carrier(g2, rel2)?;
    let group_hom = hom_verdict(eta, g1, g2);
    let pcont = check_pcont(eta, rel1, rel2)?;
    let isomorphism = check_proximal_isomorphism(eta, rel1, rel2)?;
    let is_homomorphism = group_hom.passed() && pcont.passed();
    let is_isomorphism = group_hom.passed() && isomorphism.passed();
    Ok(HomomorphismReport {
        group_hom,
        pcont,
        isomorphism,
        is_homomorphism,
        is_isomorphism,
    })
}

/// The identity-neighbourhood criterion and pcont, reported separately.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionReport {
    /// `B δ₁ {e₁} ⟹ η(B) δ₂ {e₂}`; witness `[B]`.
    pub hypothesis: Verdict,
    pub conclusion: AxiomReport,
    /// Hypothesis true and conclusion false.
    pub counterexample: bool,
}

pub fn hom_criterion_check(
    eta: &SpaceMap,
    g1: &FiniteGroup,
    rel1: &ProximityRelation,
    g2: &FiniteGroup,
    rel2: &ProximityRelation,
) -> Result<CriterionReport> {
    check_map_carriers(eta, g1, g2)?;
    if let Some((a, b)) = g1.homomorphism_witness(eta, g2) {
        return Err(Error::NotHomomorphism(format!(
            "image of {}·{} differs from the product of images",
            g1.space().label(a),
            g1.space().label(b)
        )));
    }
    for (side, g, rel) in [("source", g1, rel1), ("target", g2, rel2)] {
        if !check_proximal_group(g, rel)?.verdict {
            return Err(Error::Unverified(format!("{side} is not a proximal group")));
        }
    }
    let e1 = Subset::singleton(g1.identity());
    let e2 = Subset::singleton(g2.identity());
    let w = g1
        .space()
        .subsets()
        .find(|&b| rel1.near(b, e1) && rel2.far(eta.image(b), e2))
        .map(|b| Witness::of([b]));
    let hypothesis = Verdict::from_scan(w);
    let conclusion = check_pcont(eta, rel1, rel2)?;
    let counterexample = hypothesis.passed() && !conclusion.passed();
    Ok(CriterionReport {
        hypothesis,
        conclusion,
        counterexample,
    })
}

/// T1 of the induced topology next to the identity criterion `cl{e} = {e}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HausdorffReport {
    pub t1: bool,
    /// Smallest `x` with `cl{x} ≠ {x}`.
    pub t1_witness: Option<usize>,
    pub identity_closure: Subset,
    pub identity_closed: bool,
    pub agree: bool,
}

pub fn hausdorff_check(g: &FiniteGroup, rel: &ProximityRelation) -> Result<HausdorffReport> {
    if !check_proximal_group(g, rel)?.verdict {
        return Err(Error::Unverified("not a proximal group".into()));
    }
    let t1_witness =
        (0..g.order()).find(|&x| closure(rel, Subset::singleton(x)) != Subset::singleton(x));
    let e = Subset::singleton(g.identity());
    let identity_closure = closure(rel, e);
    let identity_closed = identity_closure == e;
    let t1 = t1_witness.is_none();
    Ok(HausdorffReport {
        t1,
        t1_witness,
        identity_closure,
        identity_closed,
        agree: t1 == identity_closed,
    })
}

/// [`check_proximal_group`] on the relation the probes induce.
pub fn check_descriptive_proximal_group(
    g: &FiniteGroup,
    probes: &ProbeTable,
) -> Result<ProximalGroupReport> {
    if g.space() != probes.space() {
        return Err(Error::CarrierMismatch(
            "probe table carrier differs from the group carrier".into(),
        ));
    }
    check_proximal_group(g, &descriptive_proximity(probes))
}

/// The projection `G1 × G2 → G1` checked as a descriptive proximal
/// homomorphism and as an isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectionReport {
    pub group_hom: Verdict,
    pub dpcont: AxiomReport,
    pub isomorphism: AxiomReport,
    pub is_homomorphism: bool,
    pub is_isomorphism: bool,
    /// Smallest rectangle pair `[R, S]` far in the product whose projections
    /// are near: the second coordinates block nearness.
    pub reflection_witness: Option<Witness>,
}

pub fn projection_hom_demo(
    g1: &FiniteGroup,
    probes1: &ProbeTable,
    g2: &FiniteGroup,
    probes2: &ProbeTable,
) -> Result<ProjectionReport> {
    for (side, g, p) in [("first", g1, probes1), ("second", g2, probes2)] {
        if !check_descriptive_proximal_group(g, p)?.verdict {
            return Err(Error::Unverified(format!(
                "{side} factor is not a descriptive proximal group"
            )));
        }
    }
    let d1 = descriptive_proximity(probes1);
    let d2 = descriptive_proximity(probes2);
    let group = FiniteGroup::direct_product(g1, g2)?;
    let rect = product_proximity(&d1, &d2)?;
    let n2 = g2.order();
    let pi = SpaceMap::new(
        group.space().clone(),
        g1.space().clone(),
        (0..group.order()).map(|k| k / n2).collect(),
    )?;
    let group_hom = hom_verdict(&pi, &group, g1);
    let dpcont = check_pcont(&pi, &rect, &d1)?;
    let isomorphism = check_proximal_isomorphism(&pi, &rect, &d1)?;
    let fam = rect.admissible();
    let reflection_witness = fam.iter().find_map(|&r| {
        fam.iter()
            .find(|&&s| !rect.is_near(r, s) && d1.near(pi.image(r), pi.image(s)))
            .map(|&s| Witness::of([r, s]))
    });
    let is_homomorphism = group_hom.passed() && dpcont.passed();
    let is_isomorphism = group_hom.passed() && isomorphism.passed();
    Ok(ProjectionReport {
        group_hom,
        dpcont: AxiomReport::new().with(
            Axiom::Dpcont,
            dpcont.verdict(Axiom::Pcont).cloned().expect("pcont"),
        ),
        isomorphism,
        is_homomorphism,
        is_isomorphism,
        reflection_witness,
    })
}
