use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::generate::enumerate_relations;
use super::oracle::naive_violates;
use crate::error::{Error, Result};
use crate::groups::{
    check_proximal_group, check_translations, first_iso_harness, hausdorff_check,
    hom_criterion_check, invertible_subsets, product_proximal_group, second_iso_harness,
    subgroup_proximal_group, theorem_harness_lemma1, theorem_harness_thm2_and_corollary,
    third_iso_harness, CriterionMode, FiniteGroup, HarnessOutcome,
};
use crate::proximity::{
    check_class, check_pcont, compose, Axiom, AxiomClass, FiniteSpace, ProximityRelation, SpaceMap,
    Subset, Witness,
};

/// Statements the fuzzer can sweep. [`TheoremId::FirstIso`] and the two
/// `Cech*` statements are expected to fail; the rest are expected to hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremId {
    /// Proximal group ⟹ every translation is a proximal isomorphism.
    Translations,
    /// `μ₁` pcont with invertible singletons ⟹ `μ₂` pcont on singletons.
    LemmaInvertible,
    /// EF + transitivity + pcont translations ⟹ proximal group.
    CriterionTransitivity,
    /// Lodato + pointwise condition + pcont translations ⟹ proximal group.
    CriterionPointwise,
    /// Subgroups of proximal groups are proximal groups.
    Subgroup,
    /// Products of proximal groups are proximal groups.
    Product,
    /// Identity-neighbourhood criterion ⟹ pcont homomorphism.
    HomCriterion,
    /// `G/Ker η ≅ Im η` as proximal groups (expected to fail).
    FirstIso,
    /// `H/(H∩N) ≅ HN/N` as proximal groups.
    SecondIso,
    /// `(G/N)/(K/N) ≅ G/K` as proximal groups.
    ThirdIso,
    /// T1 ⟺ `cl{e} = {e}` on proximal groups.
    Hausdorff,
    /// Invertible subsets are exactly the singletons.
    InvertibleSingletons,
    /// Composites of pcont maps are pcont.
    CompositionPcont,
    /// "Every Čech relation is Lodato" (false).
    CechIsLodato,
    /// "Every Čech relation is EF" (false).
    CechIsEf,
}

pub const ALL_THEOREMS: [TheoremId; 15] = [
    TheoremId::Translations,
    TheoremId::LemmaInvertible,
    TheoremId::CriterionTransitivity,
    TheoremId::CriterionPointwise,
    TheoremId::Subgroup,
    TheoremId::Product,
    TheoremId::HomCriterion,
    TheoremId::FirstIso,
    TheoremId::SecondIso,
    TheoremId::ThirdIso,
    TheoremId::Hausdorff,
    TheoremId::InvertibleSingletons,
    TheoremId::CompositionPcont,
    TheoremId::CechIsLodato,
    TheoremId::CechIsEf,
];

impl TheoremId {
    pub fn name(self) -> &'static str {
        match self {
            TheoremId::Translations => "translations",
            TheoremId::LemmaInvertible => "lemma-invertible",
            TheoremId::CriterionTransitivity => "criterion-transitivity",
            TheoremId::CriterionPointwise => "criterion-pointwise",
            TheoremId::Subgroup => "subgroup",
            TheoremId::Product => "product",
            TheoremId::HomCriterion => "hom-criterion",
            TheoremId::FirstIso => "first-iso",
            TheoremId::SecondIso => "second-iso",
            TheoremId::ThirdIso => "third-iso",
            TheoremId::Hausdorff => "hausdorff",
            TheoremId::InvertibleSingletons => "invertible-singletons",
            TheoremId::CompositionPcont => "composition-pcont",
            TheoremId::CechIsLodato => "cech-is-lodato",
            TheoremId::CechIsEf => "cech-is-ef",
        }
    }

    pub fn parse(s: &str) -> Result<TheoremId> {
        ALL_THEOREMS
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::UnknownTheorem(s.to_string()))
    }

    /// Default sweep bounds.
    pub fn default_scope(self) -> FuzzScope {
        let scope = |enumerated_order, dc_order| FuzzScope {
            enumerated_order,
            dc_order,
            class: AxiomClass::Cech,
        };
        match self {
            TheoremId::Translations
            | TheoremId::Subgroup
            | TheoremId::Product
            | TheoremId::Hausdorff => scope(4, 6),
            TheoremId::HomCriterion | TheoremId::FirstIso => scope(4, 4),
            TheoremId::LemmaInvertible
            | TheoremId::CriterionTransitivity
            | TheoremId::CriterionPointwise
            | TheoremId::CompositionPcont
            | TheoremId::CechIsLodato
            | TheoremId::CechIsEf => scope(3, 3),
            TheoremId::SecondIso | TheoremId::ThirdIso | TheoremId::InvertibleSingletons => {
                scope(0, 8)
            }
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Size bounds for a sweep.
///
/// Groups of order up to `enumerated_order` get every relation of `class`;
/// larger groups up to `dc_order` get the discrete and coarse relations.
/// Relation-only statements read `enumerated_order` as the carrier bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzScope {
    pub enumerated_order: usize,
    pub dc_order: usize,
    pub class: AxiomClass,
}

/// Everything a single sweep case needs; serialized in full for
/// counterexamples.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub groups: Vec<FiniteGroup>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<ProximityRelation>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub maps: Vec<SpaceMap>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub subsets: Vec<Subset>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub instance: Instance,
    pub detail: String,
    /// Failing axiom and witness, when the failure is an axiom of a table.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axiom_witness: Option<(Axiom, Witness)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzOutcome {
    pub theorem: TheoremId,
    pub scope: FuzzScope,
    pub instances: usize,
    /// Instances whose hypotheses held.
    pub hypotheses_met: usize,
    pub counterexamples: Vec<Counterexample>,
    pub elapsed_ms: u128,
}

/// Result of running one instance through its harness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evaluation {
    pub hypotheses_met: bool,
    pub counterexample: Option<Counterexample>,
}

fn malformed(what: &str) -> Error {
    Error::MalformedInstance(what.to_string())
}

fn need<'a, T>(items: &'a [T], k: usize, what: &str) -> Result<&'a [T]> {
    if items.len() < k {
        return Err(malformed(&format!("expected {k} {what}")));
    }
    Ok(items)
}

/// Runs one instance through the public harness for `theorem`. This is
/// both the sweep body and the replay entry point.
pub fn evaluate(theorem: TheoremId, inst: &Instance) -> Result<Evaluation> {
    let fail = |detail: String, axiom_witness: Option<(Axiom, Witness)>| Counterexample {
        instance: inst.clone(),
        detail,
        axiom_witness,
    };
    let done = |met: bool, cx: Option<Counterexample>| {
        Ok(Evaluation {
            hypotheses_met: met,
            counterexample: cx,
        })
    };
    let gs = &inst.groups;
    let rs = &inst.relations;
    match theorem {
        TheoremId::Translations => {
            let (g, r) = (&need(gs, 1, "groups")?[0], &need(rs, 1, "relations")?[0]);
            if !check_proximal_group(g, r)?.verdict {
                return done(false, None);
            }
            let t = check_translations(g, r)?;
            let cx = t.first_failure().map(|(side, x, rep)| {
                let (ax, w) = rep.failures().next().expect("failed report");
                fail(
                    format!("{side} translation by {} fails {ax}", g.space().label(x)),
                    Some((ax, w.clone())),
                )
            });
            done(true, cx)
        }
        TheoremId::LemmaInvertible
        | TheoremId::CriterionTransitivity
        | TheoremId::CriterionPointwise => {
            let (g, r) = (&need(gs, 1, "groups")?[0], &need(rs, 1, "relations")?[0]);
            let report = match theorem {
                TheoremId::LemmaInvertible => theorem_harness_lemma1(g, r)?,
                TheoremId::CriterionTransitivity => {
                    theorem_harness_thm2_and_corollary(g, r, CriterionMode::EfTransitivity)?
                }
                _ => theorem_harness_thm2_and_corollary(g, r, CriterionMode::LodatoPointwise)?,
            };
            let met = report.outcome != HarnessOutcome::Abstained;
            let cx = (report.outcome == HarnessOutcome::Counterexample)
                .then(|| fail(format!("conclusion fails: {:?}", report.conclusion), None));
            done(met, cx)
        }
        TheoremId::Subgroup => {
            let (g, r) = (&need(gs, 1, "groups")?[0], &need(rs, 1, "relations")?[0]);
            let h = need(&inst.subsets, 1, "subsets")?[0];
            if !check_proximal_group(g, r)?.verdict || !g.is_subgroup(h) {
                return done(false, None);
            }
            let rep = subgroup_proximal_group(g, r, h)?;
            let cx = (!rep.verdict).then(|| {
                fail(
                    format!("subgroup {} fails", g.space().format_subset(h)),
                    None,
                )
            });
            done(true, cx)
        }
        TheoremId::Product => {
            let gs = need(gs, 2, "groups")?;
            let rs = need(rs, 2, "relations")?;
            match product_proximal_group(&gs[0], &rs[0], &gs[1], &rs[1]) {
                Err(Error::Unverified(_)) => done(false, None),
                Err(e) => Err(e),
                Ok(rep) => done(
                    true,
                    (!rep.verdict).then(|| fail("product fails".into(), None)),
                ),
            }
        }
        TheoremId::HomCriterion => {
            let gs = need(gs, 2, "groups")?;
            let rs = need(rs, 2, "relations")?;
            let eta = &need(&inst.maps, 1, "maps")?[0];
            match hom_criterion_check(eta, &gs[0], &rs[0], &gs[1], &rs[1]) {
                Err(Error::Unverified(_) | Error::NotHomomorphism(_)) => done(false, None),
                Err(e) => Err(e),
                Ok(rep) => {
                    let cx = rep.counterexample.then(|| {
                        let w = rep.conclusion.witness(Axiom::Pcont).cloned();
                        fail(
                            "criterion holds but map is not pcont".into(),
                            w.map(|w| (Axiom::Pcont, w)),
                        )
                    });
                    done(rep.hypothesis.passed(), cx)
                }
            }
        }
        TheoremId::FirstIso => {
            let gs = need(gs, 2, "groups")?;
            let rs = need(rs, 2, "relations")?;
            let eta = &need(&inst.maps, 1, "maps")?[0];
            match first_iso_harness(eta, &gs[0], &rs[0], &gs[1], &rs[1]) {
                Err(Error::Unverified(_) | Error::NotHomomorphism(_) | Error::NotSurjective(_)) => {
                    done(false, None)
                }
                Err(e) => Err(e),
                Ok(rep) => {
                    let cx = (!rep.holds).then(|| {
                        let aw = rep
                            .proximal_isomorphism
                            .failures()
                            .next()
                            .map(|(a, w)| (a, w.clone()));
                        fail(
                            format!(
                                "induced map is not a proximal isomorphism (group iso: {})",
                                rep.group_isomorphism.passed()
                            ),
                            aw,
                        )
                    });
                    done(true, cx)
                }
            }
        }
        TheoremId::SecondIso | TheoremId::ThirdIso => {
            let (g, r) = (&need(gs, 1, "groups")?[0], &need(rs, 1, "relations")?[0]);
            let s = need(&inst.subsets, 2, "subsets")?;
            let rep = if theorem == TheoremId::SecondIso {
                if !g.is_subgroup(s[0]) || !g.is_normal(s[1]) {
                    return done(false, None);
                }
                second_iso_harness(g, r, s[0], s[1])?
            } else {
                if !g.is_normal(s[0]) || !g.is_normal(s[1]) || !s[0].is_subset_of(s[1]) {
                    return done(false, None);
                }
                third_iso_harness(g, r, s[0], s[1])?
            };
            let cx = (!rep.holds).then(|| {
                let aw = rep
                    .proximal_isomorphism
                    .failures()
                    .next()
                    .map(|(a, w)| (a, w.clone()));
                fail(
                    "canonical map is not a proximal group isomorphism".into(),
                    aw,
                )
            });
            done(true, cx)
        }
        TheoremId::Hausdorff => {
            let (g, r) = (&need(gs, 1, "groups")?[0], &need(rs, 1, "relations")?[0]);
            match hausdorff_check(g, r) {
                Err(Error::Unverified(_)) => done(false, None),
                Err(e) => Err(e),
                Ok(rep) => done(
                    true,
                    (!rep.agree).then(|| {
                        fail(
                            format!("T1 = {} but cl{{e}} = {}", rep.t1, rep.identity_closure),
                            None,
                        )
                    }),
                ),
            }
        }
        TheoremId::InvertibleSingletons => {
            let g = &need(gs, 1, "groups")?[0];
            let singles: Vec<Subset> = (0..g.order()).map(Subset::singleton).collect();
            let got = invertible_subsets(g);
            done(
                true,
                (got != singles).then(|| fail(format!("invertible subsets {got:?}"), None)),
            )
        }
        TheoremId::CompositionPcont => {
            let rs = need(rs, 3, "relations")?;
            let ms = need(&inst.maps, 2, "maps")?;
            let (f, g) = (&ms[0], &ms[1]);
            if !check_pcont(f, &rs[0], &rs[1])?.passed()
                || !check_pcont(g, &rs[1], &rs[2])?.passed()
            {
                return done(false, None);
            }
            let rep = check_pcont(&compose(f, g)?, &rs[0], &rs[2])?;
            let cx = (!rep.passed()).then(|| {
                let w = rep.witness(Axiom::Pcont).cloned().expect("failed");
                fail("composite is not pcont".into(), Some((Axiom::Pcont, w)))
            });
            done(true, cx)
        }
        TheoremId::CechIsLodato | TheoremId::CechIsEf => {
            let r = &need(rs, 1, "relations")?[0];
            if !check_class(r, AxiomClass::Cech).passed() {
                return done(false, None);
            }
            let (class, axiom) = if theorem == TheoremId::CechIsLodato {
                (AxiomClass::Lodato, Axiom::L5)
            } else {
                (AxiomClass::Efremovic, Axiom::Ef)
            };
            let rep = check_class(r, class);
            let cx = rep.witness(axiom).map(|w| {
                fail(
                    format!("Čech relation fails {axiom}"),
                    Some((axiom, w.clone())),
                )
            });
            done(true, cx)
        }
    }
}

/// Re-runs a counterexample through [`evaluate`] and, when it carries a
/// table-axiom witness, confirms that witness with the naive oracle.
pub fn replay(theorem: TheoremId, cx: &Counterexample) -> Result<bool> {
    let again = evaluate(theorem, &cx.instance)?;
    let Some(found) = again.counterexample else {
        return Ok(false);
    };
    if found.detail != cx.detail || found.axiom_witness != cx.axiom_witness {
        return Ok(false);
    }
    if let (Some((axiom, w)), [rel, ..]) = (&cx.axiom_witness, cx.instance.relations.as_slice()) {
        if matches!(theorem, TheoremId::CechIsLodato | TheoremId::CechIsEf) {
            return Ok(naive_violates(rel, *axiom, w));
        }
    }
    Ok(true)
}

/// `(group, relation)` pairs in scope: every relation of the class for small
/// groups, discrete and coarse for the rest.
fn structures(scope: &FuzzScope) -> Result<Vec<(FiniteGroup, ProximityRelation)>> {
    let mut out = Vec::new();
    let top = scope.enumerated_order.max(scope.dc_order);
    let mut by_order: Vec<Option<Vec<ProximityRelation>>> = vec![None; top + 1];
    for (_, g) in FiniteGroup::catalog(top) {
        let n = g.order();
        if n <= scope.enumerated_order {
            let rels = match &by_order[n] {
                Some(r) => r.clone(),
                None => {
                    let r = enumerate_relations(n, scope.class)?;
                    by_order[n] = Some(r.clone());
                    r
                }
            };
            for r in rels {
                out.push((g.clone(), r.relabel(g.space().clone())?));
            }
        } else {
            out.push((g.clone(), ProximityRelation::discrete(g.space().clone())));
            out.push((g.clone(), ProximityRelation::coarse(g.space().clone())));
        }
    }
    Ok(out)
}

fn verified(scope: &FuzzScope) -> Result<Vec<(FiniteGroup, ProximityRelation)>> {
    let all = structures(scope)?;
    let flags: Vec<bool> = all
        .par_iter()
        .map(|(g, r)| check_proximal_group(g, r).map(|p| p.verdict))
        .collect::<Result<_>>()?;
    Ok(all
        .into_iter()
        .zip(flags)
        .filter(|(_, ok)| *ok)
        .map(|(s, _)| s)
        .collect())
}

fn single(g: &FiniteGroup, r: &ProximityRelation) -> Instance {
    Instance {
        groups: vec![g.clone()],
        relations: vec![r.clone()],
        ..Instance::default()
    }
}

fn all_maps(from: &FiniteSpace, to: &FiniteSpace) -> Vec<SpaceMap> {
    let (n, m) = (from.size(), to.size());
    (0..m.pow(n as u32))
        .map(|mut code| {
            let images = (0..n)
                .map(|_| {
                    let v = code % m;
                    code /= m;
                    v
                })
                .collect();
            SpaceMap::new(from.clone(), to.clone(), images).expect("in range")
        })
        .collect()
}

/// Instances of a sweep in a fixed order. Composition sweeps are decoded
/// on demand; their full list would not fit in memory comfortably.
#[derive(Debug, Clone)]
pub enum InstanceSource {
    Listed(Vec<Instance>),
    /// Per carrier size: relations and all self-maps. Instance order is
    /// `(r1, r2, r3, f, g)` lexicographic within each size.
    Composition(Vec<(Vec<ProximityRelation>, Vec<SpaceMap>)>),
}

impl InstanceSource {
    pub fn len(&self) -> usize {
        match self {
            InstanceSource::Listed(v) => v.len(),
            InstanceSource::Composition(levels) => levels
                .iter()
                .map(|(r, m)| r.len().pow(3) * m.len().pow(2))
                .sum(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, mut k: usize) -> Instance {
        match self {
            InstanceSource::Listed(v) => v[k].clone(),
            InstanceSource::Composition(levels) => {
                for (rels, maps) in levels {
                    let size = rels.len().pow(3) * maps.len().pow(2);
                    if k >= size {
                        k -= size;
                        continue;
                    }
                    let (r, m) = (rels.len(), maps.len());
                    let g = k % m;
                    let f = k / m % m;
                    let r3 = k / (m * m) % r;
                    let r2 = k / (m * m * r) % r;
                    let r1 = k / (m * m * r * r);
                    return Instance {
                        relations: vec![rels[r1].clone(), rels[r2].clone(), rels[r3].clone()],
                        maps: vec![maps[f].clone(), maps[g].clone()],
                        ..Instance::default()
                    };
                }
                panic!("instance index out of range")
            }
        }
    }
}

/// The instances for `theorem`, in a fixed order.
pub fn instances(theorem: TheoremId, scope: &FuzzScope) -> Result<InstanceSource> {
    let mut out = Vec::new();
    match theorem {
        TheoremId::Translations | TheoremId::Hausdorff => {
            for (g, r) in verified(scope)? {
                out.push(single(&g, &r));
            }
        }
        TheoremId::LemmaInvertible
        | TheoremId::CriterionTransitivity
        | TheoremId::CriterionPointwise => {
            for (g, r) in structures(scope)? {
                out.push(single(&g, &r));
            }
        }
        TheoremId::Subgroup => {
            for (g, r) in verified(scope)? {
                for h in g.subgroups() {
                    out.push(Instance {
                        subsets: vec![h],
                        ..single(&g, &r)
                    });
                }
            }
        }
        TheoremId::Product => {
            let v = verified(scope)?;
            let cap = scope.dc_order.max(scope.enumerated_order);
            for (g1, r1) in &v {
                for (g2, r2) in &v {
                    if g1.order() * g2.order() <= cap {
                        out.push(Instance {
                            groups: vec![g1.clone(), g2.clone()],
                            relations: vec![r1.clone(), r2.clone()],
                            ..Instance::default()
                        });
                    }
                }
            }
        }
        TheoremId::HomCriterion | TheoremId::FirstIso => {
            let v = verified(scope)?;
            for (g1, r1) in &v {
                for (g2, r2) in &v {
                    for eta in g1.homomorphisms_to(g2) {
                        if theorem == TheoremId::FirstIso && !eta.is_surjective() {
                            continue;
                        }
                        out.push(Instance {
                            groups: vec![g1.clone(), g2.clone()],
                            relations: vec![r1.clone(), r2.clone()],
                            maps: vec![eta],
                            subsets: vec![],
                        });
                    }
                }
            }
        }
        TheoremId::SecondIso | TheoremId::ThirdIso => {
            for (g, r) in structures(scope)? {
                let normals = g.normal_subgroups();
                if theorem == TheoremId::SecondIso {
                    for h in g.subgroups() {
                        for &n in &normals {
                            out.push(Instance {
                                subsets: vec![h, n],
                                ..single(&g, &r)
                            });
                        }
                    }
                } else {
                    for &n in &normals {
                        for &k in normals.iter().filter(|k| n.is_subset_of(**k)) {
                            out.push(Instance {
                                subsets: vec![n, k],
                                ..single(&g, &r)
                            });
                        }
                    }
                }
            }
        }
        TheoremId::InvertibleSingletons => {
            for (_, g) in FiniteGroup::catalog(scope.dc_order.max(scope.enumerated_order)) {
                out.push(Instance {
                    groups: vec![g],
                    ..Instance::default()
                });
            }
        }
        TheoremId::CompositionPcont => {
            let mut levels = Vec::new();
            for n in 1..=scope.enumerated_order {
                let rels = enumerate_relations(n, scope.class)?;
                let maps = all_maps(rels[0].space(), rels[0].space());
                levels.push((rels, maps));
            }
            return Ok(InstanceSource::Composition(levels));
        }
        TheoremId::CechIsLodato | TheoremId::CechIsEf => {
            for n in 1..=scope.enumerated_order {
                for r in enumerate_relations(n, AxiomClass::Cech)? {
                    out.push(Instance {
                        relations: vec![r],
                        ..Instance::default()
                    });
                }
            }
        }
    }
    Ok(InstanceSource::Listed(out))
}

/// Sweeps every instance in scope; results are merged in instance order.
pub fn fuzz_theorem(theorem: TheoremId, scope: FuzzScope) -> Result<FuzzOutcome> {
    let start = Instant::now();
    let list = instances(theorem, &scope)?;
    let evals: Vec<Evaluation> = (0..list.len())
        .into_par_iter()
        .map(|k| evaluate(theorem, &list.get(k)))
        .collect::<Result<_>>()?;
    Ok(FuzzOutcome {
        theorem,
        scope,
        instances: list.len(),
        hypotheses_met: evals.iter().filter(|e| e.hypotheses_met).count(),
        counterexamples: evals.into_iter().filter_map(|e| e.counterexample).collect(),
        elapsed_ms: start.elapsed().as_millis(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for t in ALL_THEOREMS {
            assert_eq!(TheoremId::parse(t.name()).unwrap(), t);
            let json = serde_json::to_string(&t).unwrap();
            assert_eq!(json, format!("\"{}\"", t.name()));
        }
        assert_eq!(
            TheoremId::parse("nope"),
            Err(Error::UnknownTheorem("nope".into()))
        );
    }

    #[test]
    fn pseudo_theorem_is_refuted_at_three_points() {
        let two = FuzzScope {
            enumerated_order: 2,
            ..TheoremId::CechIsLodato.default_scope()
        };
        assert!(fuzz_theorem(TheoremId::CechIsLodato, two)
            .unwrap()
            .counterexamples
            .is_empty());
        let out = fuzz_theorem(
            TheoremId::CechIsLodato,
            TheoremId::CechIsLodato.default_scope(),
        )
        .unwrap();
        assert_eq!(out.counterexamples.len(), 3);
        for cx in &out.counterexamples {
            assert!(replay(TheoremId::CechIsLodato, cx).unwrap());
        }
    }

    #[test]
    fn first_iso_sweep_finds_failures() {
        let out = fuzz_theorem(TheoremId::FirstIso, TheoremId::FirstIso.default_scope()).unwrap();
        assert!(!out.counterexamples.is_empty());
        let cx = &out.counterexamples[0];
        assert!(replay(TheoremId::FirstIso, cx).unwrap());
        let json = serde_json::to_string(cx).unwrap();
        let back: Counterexample = serde_json::from_str(&json).unwrap();
        assert_eq!(&back, cx);
    }

    #[test]
    fn malformed_instances_are_rejected() {
        let err = evaluate(TheoremId::Translations, &Instance::default()).unwrap_err();
        assert!(matches!(err, Error::MalformedInstance(_)));
    }
}
