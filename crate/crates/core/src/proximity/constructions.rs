use super::relation::{Nearness, Provenance, ProximityRelation};
use super::space::{FiniteSpace, Subset};
use crate::error::{Error, Result};

/// Product proximity on `Y1 × Y2`, answered on rectangle pairs only:
/// `(B1 × B2) near (C1 × C2)` iff `B1 near C1` and `B2 near C2`.
///
/// Element `(i, j)` of the product carrier has index `i * n2 + j`. The empty
/// set is the rectangle `∅ × ∅`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RectangleRelation {
    left: ProximityRelation,
    right: ProximityRelation,
    space: FiniteSpace,
    /// Factor pair per product-carrier mask; `None` for non-rectangles.
    factor_table: Vec<Option<(Subset, Subset)>>,
}

/// Labels `(a,x)` for the product of two carriers.
pub fn product_space(left: &FiniteSpace, right: &FiniteSpace) -> Result<FiniteSpace> {
    FiniteSpace::new(
        left.labels()
            .iter()
            .flat_map(|a| right.labels().iter().map(move |x| format!("({a},{x})"))),
    )
}

pub fn product_proximity(
    left: &ProximityRelation,
    right: &ProximityRelation,
) -> Result<RectangleRelation> {
    let space = product_space(left.space(), right.space())?;
    let n2 = right.space().size();
    let factor_table = space.subsets().map(|s| factorize(n2, s)).collect();
    Ok(RectangleRelation {
        left: left.clone(),
        right: right.clone(),
        space,
        factor_table,
    })
}

impl RectangleRelation {
    pub fn left(&self) -> &ProximityRelation {
        &self.left
    }

    pub fn right(&self) -> &ProximityRelation {
        &self.right
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    fn n2(&self) -> usize {
        self.right.space().size()
    }

    pub fn rectangle(&self, b1: Subset, b2: Subset) -> Subset {
        rectangle(self.n2(), b1, b2)
    }

    /// Factor pair of a rectangle mask, or `None` for a non-rectangle.
    pub fn factors(&self, s: Subset) -> Option<(Subset, Subset)> {
        self.factor_table.get(s.index()).copied().flatten()
    }

    pub fn near_factors(&self, b: (Subset, Subset), c: (Subset, Subset)) -> bool {
        self.left.near(b.0, c.0) && self.right.near(b.1, c.1)
    }

    /// Near/far on two product-carrier masks; non-rectangles are rejected.
    pub fn query(&self, a: Subset, b: Subset) -> Result<bool> {
        self.space.check_subset(a)?;
        self.space.check_subset(b)?;
        let fa = self.factors(a).ok_or(Error::NonRectangle(a))?;
        let fb = self.factors(b).ok_or(Error::NonRectangle(b))?;
        Ok(self.near_factors(fa, fb))
    }
}

impl Nearness for RectangleRelation {
    fn space(&self) -> &FiniteSpace {
        &self.space
    }

    fn admits(&self, s: Subset) -> bool {
        self.space.check_subset(s).is_ok() && self.factors(s).is_some()
    }

    fn is_near(&self, a: Subset, b: Subset) -> bool {
        self.query(a, b)
            .expect("rectangle query on admitted subsets")
    }
}

fn rectangle(n2: usize, b1: Subset, b2: Subset) -> Subset {
    if b1.is_empty() || b2.is_empty() {
        return Subset::EMPTY;
    }
    Subset::from_elements(
        b1.elements()
            .flat_map(|i| b2.elements().map(move |j| i * n2 + j)),
    )
}

fn factorize(n2: usize, s: Subset) -> Option<(Subset, Subset)> {
    if s.is_empty() {
        return Some((Subset::EMPTY, Subset::EMPTY));
    }
    let b1 = Subset::from_elements(s.elements().map(|k| k / n2));
    let b2 = Subset::from_elements(s.elements().map(|k| k % n2));
    (rectangle(n2, b1, b2) == s).then_some((b1, b2))
}

/// Maps a mask over `0..|v|` to the corresponding mask inside `v`.
pub(crate) fn deposit(v: Subset, s: Subset) -> Subset {
    Subset::from_elements(
        v.elements()
            .enumerate()
            .filter(|(k, _)| s.contains(*k))
            .map(|(_, i)| i),
    )
}

/// Inverse of [`deposit`]: the positions within `v` of the members of `s`.
pub(crate) fn extract(v: Subset, s: Subset) -> Subset {
    Subset::from_elements(
        v.elements()
            .enumerate()
            .filter(|(_, i)| s.contains(*i))
            .map(|(k, _)| k),
    )
}

/// The relation restricted to subsets of `v`, on the carrier `v`
/// (elements renumbered in increasing order).
pub fn subspace_proximity(rel: &ProximityRelation, v: Subset) -> Result<ProximityRelation> {
    let y = rel.space();
    y.check_subset(v)?;
    if v.is_empty() {
        return Err(Error::EmptySubspace);
    }
    let space = FiniteSpace::new(v.elements().map(|i| y.label(i).to_string()))?;
    Ok(ProximityRelation::from_fn(
        space,
        Provenance::Subspace,
        |a, b| rel.near(deposit(v, a), deposit(v, b)),
    ))
}

/// Checks that `blocks` are nonempty, pairwise disjoint and cover the carrier.
pub fn validate_partition(space: &FiniteSpace, blocks: &[Subset]) -> Result<()> {
    let mut seen = Subset::EMPTY;
    for (k, &b) in blocks.iter().enumerate() {
        space
            .check_subset(b)
            .map_err(|e| Error::InvalidPartition(format!("block {k}: {e}")))?;
        if b.is_empty() {
            return Err(Error::InvalidPartition(format!("block {k} is empty")));
        }
        if b.intersects(seen) {
            return Err(Error::InvalidPartition(format!(
                "block {k} overlaps an earlier block"
            )));
        }
        seen = seen.union(b);
    }
    if seen != space.full() {
        return Err(Error::InvalidPartition(format!(
            "blocks miss {}",
            space.format_subset(space.complement(seen))
        )));
    }
    Ok(())
}

/// Preimage of a set of block indices: the union of those blocks.
fn unblock(blocks: &[Subset], s: Subset) -> Subset {
    s.elements()
        .fold(Subset::EMPTY, |acc, k| acc.union(blocks[k]))
}

/// Quotient by a partition: block sets `A`, `B` are near iff the unions of
/// their blocks are near. Block `k` becomes element `k`, labelled by its
/// member set.
pub fn quotient_proximity(rel: &ProximityRelation, blocks: &[Subset]) -> Result<ProximityRelation> {
    let y = rel.space();
    validate_partition(y, blocks)?;
    let space = FiniteSpace::new(blocks.iter().map(|&b| y.format_subset(b)))?;
    Ok(ProximityRelation::from_fn(
        space,
        Provenance::Quotient,
        |a, b| rel.near(unblock(blocks, a), unblock(blocks, b)),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proximity::{check_class, check_class_on, AxiomClass};

    fn y(n: usize) -> FiniteSpace {
        FiniteSpace::lettered(n).unwrap()
    }

    #[test]
    fn product_rectangle_examples() {
        let d1 = ProximityRelation::discrete(y(2));
        let d2 = ProximityRelation::discrete(FiniteSpace::new(["x", "y"]).unwrap());
        let p = product_proximity(&d1, &d2).unwrap();
        assert_eq!(p.space().label(1), "(a,y)");
        let ax = p.rectangle(Subset(1), Subset(1));
        let bx = p.rectangle(Subset(2), Subset(1));
        assert!(p.query(ax, ax).unwrap());
        assert!(!p.query(ax, bx).unwrap());
    }

    #[test]
    fn non_rectangle_is_rejected_by_mask() {
        let d = ProximityRelation::discrete(y(2));
        let p = product_proximity(&d, &d).unwrap();
        // {(a,a), (b,b)} = bits 0 and 3.
        let diag = Subset(0b1001);
        assert_eq!(p.query(diag, Subset(1)), Err(Error::NonRectangle(diag)));
        assert!(p.admits(Subset(0b0011)));
    }

    #[test]
    fn product_of_oversized_factors_is_rejected() {
        let d = ProximityRelation::discrete(y(4));
        assert!(product_proximity(&d, &d).is_err());
    }

    #[test]
    fn subspace_examples() {
        let d = ProximityRelation::discrete(y(3));
        let s = subspace_proximity(&d, Subset(0b101)).unwrap();
        assert_eq!(s.space().labels(), ["a", "c"]);
        assert!(s.same_table(&ProximityRelation::discrete(
            FiniteSpace::new(["a", "c"]).unwrap()
        )));
        let whole = subspace_proximity(&d, Subset(7)).unwrap();
        assert!(whole.same_table(&d));
        assert_eq!(
            subspace_proximity(&d, Subset::EMPTY),
            Err(Error::EmptySubspace)
        );
    }

    #[test]
    fn quotient_examples() {
        let z4 = FiniteSpace::indexed(4).unwrap();
        let d = ProximityRelation::discrete(z4.clone());
        let cosets = [Subset(0b0101), Subset(0b1010)];
        let q = quotient_proximity(&d, &cosets).unwrap();
        assert_eq!(q.space().labels(), ["{0,2}", "{1,3}"]);
        assert!(q.same_table(&ProximityRelation::discrete(
            FiniteSpace::indexed(2).unwrap()
        )));

        let singles: Vec<Subset> = (0..4).map(Subset::singleton).collect();
        assert!(quotient_proximity(&d, &singles).unwrap().same_table(&d));

        let c = ProximityRelation::coarse(z4);
        let qc = quotient_proximity(&c, &cosets).unwrap();
        assert!(qc.same_table(&ProximityRelation::coarse(FiniteSpace::indexed(2).unwrap())));
    }

    #[test]
    fn bad_partitions() {
        let d = ProximityRelation::discrete(y(3));
        assert!(quotient_proximity(&d, &[Subset(3)]).is_err());
        assert!(quotient_proximity(&d, &[Subset(3), Subset(6)]).is_err());
        assert!(quotient_proximity(&d, &[Subset(7), Subset(0)]).is_err());
    }

    #[test]
    fn rectangle_axioms_on_discrete_factors() {
        let d = ProximityRelation::discrete(y(2));
        let p = product_proximity(&d, &d).unwrap();
        assert!(check_class_on(&p, AxiomClass::LodatoEfremovic).passed());
        assert!(check_class(&d, AxiomClass::Cech).passed());
    }
}
