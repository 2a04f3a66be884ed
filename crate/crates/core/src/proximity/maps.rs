use serde::{Deserialize, Serialize};

use super::axioms::{Axiom, AxiomReport, Verdict, Witness};
use super::relation::Nearness;
use super::space::{FiniteSpace, Subset};
use crate::error::{Error, Result};

/// A function between two finite carriers, given by its element images.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SpaceMap {
    domain: FiniteSpace,
    codomain: FiniteSpace,
    images: Vec<usize>,
}

impl SpaceMap {
    pub fn new(domain: FiniteSpace, codomain: FiniteSpace, images: Vec<usize>) -> Result<Self> {
        if images.len() != domain.size() {
            return Err(Error::CarrierMismatch(format!(
                "map has {} images for a domain of size {}",
                images.len(),
                domain.size()
            )));
        }
        for &i in &images {
            codomain.check_element(i)?;
        }
        Ok(Self {
            domain,
            codomain,
            images,
        })
    }

    pub fn identity(space: FiniteSpace) -> Self {
        let images = (0..space.size()).collect();
        Self {
            domain: space.clone(),
            codomain: space,
            images,
        }
    }

    pub fn constant(domain: FiniteSpace, codomain: FiniteSpace, target: usize) -> Result<Self> {
        let images = vec![target; domain.size()];
        Self::new(domain, codomain, images)
    }

    pub fn domain(&self) -> &FiniteSpace {
        &self.domain
    }

    pub fn codomain(&self) -> &FiniteSpace {
        &self.codomain
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// Image of a subset: the union of its element images.
    pub fn image(&self, s: Subset) -> Subset {
        Subset::from_elements(s.elements().map(|i| self.images[i]))
    }

    pub fn preimage(&self, s: Subset) -> Subset {
        Subset::from_elements((0..self.images.len()).filter(|&i| s.contains(self.images[i])))
    }

    pub fn is_injective(&self) -> bool {
        self.injectivity_witness().is_none()
    }

    pub fn is_surjective(&self) -> bool {
        self.surjectivity_witness().is_none()
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Smallest pair `i < j` with equal images.
    pub fn injectivity_witness(&self) -> Option<(usize, usize)> {
        let n = self.images.len();
        (0..n).find_map(|i| {
            (i + 1..n)
                .find(|&j| self.images[i] == self.images[j])
                .map(|j| (i, j))
        })
    }

    /// Smallest codomain element with no preimage.
    pub fn surjectivity_witness(&self) -> Option<usize> {
        (0..self.codomain.size()).find(|y| !self.images.contains(y))
    }

    pub fn inverse(&self) -> Option<SpaceMap> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Some(SpaceMap {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            images: inv,
        })
    }

    /// Image table for every subset of the domain.
    fn image_table(&self) -> Vec<Subset> {
        self.domain.subsets().map(|s| self.image(s)).collect()
    }
}

impl<'de> Deserialize<'de> for SpaceMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            domain: FiniteSpace,
            codomain: FiniteSpace,
            images: Vec<usize>,
        }
        let raw = Raw::deserialize(d)?;
        SpaceMap::new(raw.domain, raw.codomain, raw.images).map_err(serde::de::Error::custom)
    }
}

/// `g ∘ f`: apply `f` first, then `g`.
pub fn compose(f: &SpaceMap, g: &SpaceMap) -> Result<SpaceMap> {
    if f.codomain != g.domain {
        return Err(Error::CarrierMismatch(
            "compose: codomain of the first map is not the domain of the second".into(),
        ));
    }
    SpaceMap::new(
        f.domain.clone(),
        g.codomain.clone(),
        f.images.iter().map(|&i| g.images[i]).collect(),
    )
}

fn check_carriers<A, B>(f: &SpaceMap, from: &A, to: &B) -> Result<()>
where
    A: Nearness + ?Sized,
    B: Nearness + ?Sized,
{
    if f.domain() != from.space() {
        return Err(Error::CarrierMismatch(
            "map domain differs from the source relation's carrier".into(),
        ));
    }
    if f.codomain() != to.space() {
        return Err(Error::CarrierMismatch(
            "map codomain differs from the target relation's carrier".into(),
        ));
    }
    Ok(())
}

/// Smallest near pair `(a, b)` of `from` whose images are far in `to`.
/// Images the target does not admit are rejected.
fn pcont_scan<A, B>(f: &SpaceMap, from: &A, to: &B) -> Result<Option<Witness>>
where
    A: Nearness + ?Sized,
    B: Nearness + ?Sized,
{
    let fam = from.admissible();
    let table = f.image_table();
    let img = |s: Subset| table[s.index()];
    for &s in &fam {
        if !to.admits(img(s)) {
            return Err(Error::NonRectangle(img(s)));
        }
    }
    for &a in &fam {
        for &b in &fam {
            if from.is_near(a, b) && !to.is_near(img(a), img(b)) {
                return Ok(Some(Witness::of([a, b])));
            }
        }
    }
    Ok(None)
}

/// Proximal continuity: every near pair maps to a near pair.
pub fn check_pcont<A, B>(f: &SpaceMap, from: &A, to: &B) -> Result<AxiomReport>
where
    A: Nearness + ?Sized,
    B: Nearness + ?Sized,
{
    check_carriers(f, from, to)?;
    let w = pcont_scan(f, from, to)?;
    Ok(AxiomReport::new().with(Axiom::Pcont, Verdict::from_scan(w)))
}

/// Bijective, pcont, with pcont inverse.
///
/// A non-bijective map gets a failed `BIJECTIVE` verdict (witness: the two
/// singletons with a shared image, or the missed codomain singleton) and no
/// inverse verdict.
pub fn check_proximal_isomorphism<A, B>(f: &SpaceMap, from: &A, to: &B) -> Result<AxiomReport>
where
    A: Nearness + ?Sized,
    B: Nearness + ?Sized,
{
    let mut report = check_pcont(f, from, to)?;
    let bij = if let Some((i, j)) = f.injectivity_witness() {
        Some(Witness::of([Subset::singleton(i), Subset::singleton(j)]))
    } else {
        f.surjectivity_witness()
            .map(|y| Witness::of([Subset::singleton(y)]))
    };
    report.record(Axiom::Bijective, Verdict::from_scan(bij));
    if let Some(inv) = f.inverse() {
        let w = pcont_scan(&inv, to, from)?;
        report.record(Axiom::InversePcont, Verdict::from_scan(w));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proximity::ProximityRelation;

    fn y(n: usize) -> FiniteSpace {
        FiniteSpace::lettered(n).unwrap()
    }

    #[test]
    fn identity_is_pcont_and_iso() {
        let r = ProximityRelation::coarse(y(3));
        let id = SpaceMap::identity(y(3));
        assert!(check_pcont(&id, &r, &r).unwrap().passed());
        assert!(check_proximal_isomorphism(&id, &r, &r).unwrap().passed());
    }

    #[test]
    fn discrete_to_coarse_one_way_only() {
        let d = ProximityRelation::discrete(y(2));
        let c = ProximityRelation::coarse(y(2));
        let id = SpaceMap::identity(y(2));
        assert!(check_pcont(&id, &d, &c).unwrap().passed());
        let back = check_pcont(&id, &c, &d).unwrap();
        assert_eq!(
            back.witness(Axiom::Pcont),
            Some(&Witness::of([Subset(1), Subset(2)]))
        );
        let iso = check_proximal_isomorphism(&id, &d, &c).unwrap();
        assert!(iso.passes(Axiom::Pcont) && iso.passes(Axiom::Bijective));
        assert_eq!(
            iso.witness(Axiom::InversePcont),
            Some(&Witness::of([Subset(1), Subset(2)]))
        );
    }

    #[test]
    fn constant_map_into_l3_relation_is_pcont() {
        let d = ProximityRelation::discrete(y(3));
        let k = SpaceMap::constant(y(3), y(3), 2).unwrap();
        assert!(check_pcont(&k, &d, &d).unwrap().passed());
        let iso = check_proximal_isomorphism(&k, &d, &d).unwrap();
        assert_eq!(
            iso.witness(Axiom::Bijective),
            Some(&Witness::of([Subset(1), Subset(2)]))
        );
        assert!(iso.verdict(Axiom::InversePcont).is_none());
    }

    #[test]
    fn compose_rules() {
        let swap = SpaceMap::new(y(2), y(2), vec![1, 0]).unwrap();
        assert_eq!(compose(&swap, &swap).unwrap(), SpaceMap::identity(y(2)));
        let id = SpaceMap::identity(y(2));
        assert_eq!(compose(&id, &swap).unwrap(), swap);
        let three = SpaceMap::identity(y(3));
        assert!(compose(&swap, &three).is_err());
    }

    #[test]
    fn mismatched_carriers_are_rejected() {
        let d2 = ProximityRelation::discrete(y(2));
        let d3 = ProximityRelation::discrete(y(3));
        let id = SpaceMap::identity(y(2));
        assert!(check_pcont(&id, &d2, &d3).is_err());
        assert!(SpaceMap::new(y(2), y(2), vec![0, 5]).is_err());
        assert!(SpaceMap::new(y(2), y(2), vec![0]).is_err());
    }

    #[test]
    fn bijections_between_discrete_spaces_are_isos() {
        let d = ProximityRelation::discrete(y(3));
        for images in [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ] {
            let f = SpaceMap::new(y(3), y(3), images.to_vec()).unwrap();
            assert!(check_proximal_isomorphism(&f, &d, &d).unwrap().passed());
        }
    }
}
