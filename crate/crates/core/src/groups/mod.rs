//! Finite groups given by Cayley tables, their subset algebra, and the
//! proximal-group checks and theorem harnesses built on top.

mod harness;
mod proximal;

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::proximity::{product_space, FiniteSpace, SpaceMap, Subset};

pub use harness::{
    first_iso_harness, quotient_proximal_group, second_iso_harness, theorem_harness_lemma1,
    theorem_harness_thm2_and_corollary, third_iso_harness, CriterionMode, HarnessOutcome,
    HarnessReport, Hypothesis, IsoReport, QuotientGroup,
};
pub use proximal::{
    check_descriptive_proximal_group, check_proximal_group, check_proximal_group_with,
    check_proximal_homomorphism, check_transitivity_property, check_translations, hausdorff_check,
    hom_criterion_check, invertible_subsets, product_proximal_group, projection_hom_demo,
    subgroup_proximal_group, CriterionReport, HausdorffReport, HomomorphismReport,
    ProjectionReport, ProximalGroupReport, TranslationReport,
};

/// Largest carrier for which the full subset-product table is cached.
const PRODUCT_TABLE_MAX: usize = 8;

/// A group on a [`FiniteSpace`], validated at construction.
#[derive(Debug, Clone, Serialize)]
pub struct FiniteGroup {
    space: FiniteSpace,
    cayley: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    #[serde(skip)]
    products: OnceLock<Vec<Subset>>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.cayley == other.cayley
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Validates the table (every row and column a permutation, an identity,
    /// associativity) and derives the identity and inverses.
    #[allow(clippy::needless_range_loop)] // rows and columns are read together
    pub fn new(space: FiniteSpace, cayley: Vec<Vec<usize>>) -> Result<Self> {
        let n = space.size();
        if cayley.len() != n {
            return Err(Error::NotAGroup(format!(
                "table has {} rows, expected {n}",
                cayley.len()
            )));
        }
        for (i, row) in cayley.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotAGroup(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if let Some(j) = row.iter().position(|&v| v >= n) {
                return Err(Error::NotAGroup(format!(
                    "entry ({i},{j}) = {} is out of range",
                    row[j]
                )));
            }
        }
        for i in 0..n {
            let row: Subset = Subset::from_elements(cayley[i].iter().copied());
            if row.len() != n {
                return Err(Error::NotAGroup(format!("row {i} is not a permutation")));
            }
            let col = Subset::from_elements((0..n).map(|r| cayley[r][i]));
            if col.len() != n {
                return Err(Error::NotAGroup(format!("column {i} is not a permutation")));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| cayley[e][x] == x && cayley[x][e] == x))
            .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if cayley[cayley[a][b]][c] != cayley[a][cayley[b][c]] {
                        return Err(Error::NotAGroup(format!(
                            "not associative at ({}, {}, {})",
                            space.label(a),
                            space.label(b),
                            space.label(c)
                        )));
                    }
                }
            }
        }
        // Latin rows guarantee a unique right inverse, which is two-sided.
        let inverse = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| cayley[a][b] == identity)
                    .expect("latin row")
            })
            .collect();
        Ok(Self {
            space,
            cayley,
            identity,
            inverse,
            products: OnceLock::new(),
        })
    }

    /// As [`FiniteGroup::new`], also requiring the stated identity.
    pub fn with_identity(
        space: FiniteSpace,
        cayley: Vec<Vec<usize>>,
        identity: usize,
    ) -> Result<Self> {
        let g = Self::new(space, cayley)?;
        if g.identity != identity {
            return Err(Error::NotAGroup(format!(
                "{} is not the identity (found {})",
                g.space.label(identity.min(g.order() - 1)),
                g.space.label(g.identity)
            )));
        }
        Ok(g)
    }

    /// Cyclic group `Z_n` on labels `0..n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        let space = FiniteSpace::indexed(n)?;
        let cayley = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        Self::new(space, cayley)
    }

    /// Dihedral group of order `2k`: rotations `r0..` then reflections `s0..`,
    /// with `s^f r^i` at index `f * k + i`.
    pub fn dihedral(k: usize) -> Result<Self> {
        let labels = (0..k)
            .map(|i| format!("r{i}"))
            .chain((0..k).map(|i| format!("s{i}")));
        let space = FiniteSpace::new(labels)?;
        let mul = |x: usize, y: usize| {
            let (f1, i1) = (x / k, x % k);
            let (f2, i2) = (y / k, y % k);
            let i1 = if f2 == 1 { (k - i1) % k } else { i1 };
            ((f1 ^ f2) * k) + (i1 + i2) % k
        };
        let cayley = (0..2 * k)
            .map(|x| (0..2 * k).map(|y| mul(x, y)).collect())
            .collect();
        Self::new(space, cayley)
    }

    /// Quaternion group `Q8`.
    pub fn quaternion() -> Result<Self> {
        let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"];
        // Unit products (sign flip, unit) for units 1, i, j, k.
        let unit = |u: usize, v: usize| -> (bool, usize) {
            match (u, v) {
                (0, v) => (false, v),
                (u, 0) => (false, u),
                (u, v) if u == v => (true, 0),
                (1, 2) => (false, 3),
                (2, 3) => (false, 1),
                (3, 1) => (false, 2),
                (2, 1) => (true, 3),
                (3, 2) => (true, 1),
                (1, 3) => (true, 2),
                _ => unreachable!(),
            }
        };
        let mul = |x: usize, y: usize| {
            let (flip, u) = unit(x / 2, y / 2);
            let neg = (x % 2 == 1) ^ (y % 2 == 1) ^ flip;
            u * 2 + neg as usize
        };
        let cayley = (0..8)
            .map(|x| (0..8).map(|y| mul(x, y)).collect())
            .collect();
        Self::new(FiniteSpace::new(labels)?, cayley)
    }

    /// `G1 × G2` with element `(i, j)` at index `i * |G2| + j`.
    pub fn direct_product(g1: &FiniteGroup, g2: &FiniteGroup) -> Result<Self> {
        let space = product_space(&g1.space, &g2.space)?;
        let n2 = g2.order();
        let n = g1.order() * n2;
        let cayley = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| g1.mul(x / n2, y / n2) * n2 + g2.mul(x % n2, y % n2))
                    .collect()
            })
            .collect();
        Self::new(space, cayley)
    }

    /// Every group of order at most `max_order` (up to 8) up to isomorphism,
    /// smallest first.
    pub fn catalog(max_order: usize) -> Vec<(String, FiniteGroup)> {
        let z = |n| FiniteGroup::cyclic(n).expect("cyclic");
        let x =
            |a: &FiniteGroup, b: &FiniteGroup| FiniteGroup::direct_product(a, b).expect("product");
        let mut out: Vec<(String, FiniteGroup)> = Vec::new();
        for n in 1..=max_order.min(8) {
            out.push((format!("Z{n}"), z(n)));
            match n {
                4 => out.push(("Z2xZ2".into(), x(&z(2), &z(2)))),
                6 => out.push(("S3".into(), FiniteGroup::dihedral(3).expect("D3"))),
                8 => {
                    out.push(("Z2xZ4".into(), x(&z(2), &z(4))));
                    out.push(("Z2xZ2xZ2".into(), x(&x(&z(2), &z(2)), &z(2))));
                    out.push(("D4".into(), FiniteGroup::dihedral(4).expect("D4")));
                    out.push(("Q8".into(), FiniteGroup::quaternion().expect("Q8")));
                }
                _ => {}
            }
        }
        out
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn order(&self) -> usize {
        self.space.size()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn cayley(&self) -> &[Vec<usize>] {
        &self.cayley
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cayley[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    fn compute_product(&self, a: Subset, b: Subset) -> Subset {
        Subset::from_elements(
            a.elements()
                .flat_map(|x| b.elements().map(move |y| self.cayley[x][y])),
        )
    }

    fn product_table(&self) -> Option<&[Subset]> {
        if self.order() > PRODUCT_TABLE_MAX {
            return None;
        }
        let table = self.products.get_or_init(|| {
            let side = self.space.subset_count();
            let mut t = vec![Subset::EMPTY; side * side];
            // Peel the lowest element of `a`: AB = (A - {x})B ∪ xB.
            for a in 1..side {
                let low = a & a.wrapping_neg();
                let x = low.trailing_zeros() as usize;
                let rest = a ^ low;
                for b in 0..side {
                    let xb = Subset::from_elements(
                        Subset(b as u32).elements().map(|y| self.cayley[x][y]),
                    );
                    t[a * side + b] = t[rest * side + b].union(xb);
                }
            }
            t
        });
        Some(table)
    }

    /// `A · B = { a·b : a ∈ A, b ∈ B }`.
    pub fn subset_product(&self, a: Subset, b: Subset) -> Subset {
        match self.product_table() {
            Some(t) => t[a.index() * self.space.subset_count() + b.index()],
            None => self.compute_product(a, b),
        }
    }

    /// `A⁻¹ = { a⁻¹ : a ∈ A }`.
    pub fn subset_inverse(&self, a: Subset) -> Subset {
        Subset::from_elements(a.elements().map(|x| self.inverse[x]))
    }

    /// Ok iff `h` contains the identity and is closed under products and
    /// inverses; the error names the closure that fails.
    pub fn check_subgroup(&self, h: Subset) -> Result<()> {
        self.space.check_subset(h)?;
        if !h.contains(self.identity) {
            return Err(Error::NotSubgroup(format!(
                "{} does not contain the identity",
                self.space.format_subset(h)
            )));
        }
        for a in h.elements() {
            for b in h.elements() {
                if !h.contains(self.mul(a, b)) {
                    return Err(Error::NotSubgroup(format!(
                        "not closed under product: {}·{} = {}",
                        self.space.label(a),
                        self.space.label(b),
                        self.space.label(self.mul(a, b))
                    )));
                }
            }
            if !h.contains(self.inv(a)) {
                return Err(Error::NotSubgroup(format!(
                    "not closed under inverse: {}⁻¹ = {}",
                    self.space.label(a),
                    self.space.label(self.inv(a))
                )));
            }
        }
        Ok(())
    }

    pub fn is_subgroup(&self, h: Subset) -> bool {
        self.check_subgroup(h).is_ok()
    }

    /// Ok iff `n` is a subgroup with `g N g⁻¹ = N` for every `g`.
    pub fn check_normal(&self, n: Subset) -> Result<()> {
        self.check_subgroup(n)?;
        for g in 0..self.order() {
            let conj =
                Subset::from_elements(n.elements().map(|x| self.mul(self.mul(g, x), self.inv(g))));
            if conj != n {
                return Err(Error::NotNormal { conjugator: g });
            }
        }
        Ok(())
    }

    pub fn is_normal(&self, n: Subset) -> bool {
        self.check_normal(n).is_ok()
    }

    /// All subgroups in increasing mask order.
    pub fn subgroups(&self) -> Vec<Subset> {
        self.space
            .subsets()
            .filter(|&h| self.is_subgroup(h))
            .collect()
    }

    pub fn normal_subgroups(&self) -> Vec<Subset> {
        self.space
            .subsets()
            .filter(|&h| self.is_normal(h))
            .collect()
    }

    /// Left cosets `aH`, ordered by smallest member.
    pub fn cosets(&self, h: Subset) -> Vec<Subset> {
        let mut covered = Subset::EMPTY;
        let mut out = Vec::new();
        for a in 0..self.order() {
            if covered.contains(a) {
                continue;
            }
            let c = self.subset_product(Subset::singleton(a), h);
            covered = covered.union(c);
            out.push(c);
        }
        out
    }

    /// `h` as a group in its own right, elements renumbered in increasing order.
    pub fn subgroup(&self, h: Subset) -> Result<FiniteGroup> {
        self.check_subgroup(h)?;
        let members: Vec<usize> = h.elements().collect();
        let pos = |x: usize| members.iter().position(|&m| m == x).expect("closed");
        let space = FiniteSpace::new(members.iter().map(|&i| self.space.label(i).to_string()))?;
        let cayley = members
            .iter()
            .map(|&a| members.iter().map(|&b| pos(self.mul(a, b))).collect())
            .collect();
        FiniteGroup::new(space, cayley)
    }

    /// Left translation `y ↦ x·y`.
    pub fn left_translation(&self, x: usize) -> SpaceMap {
        SpaceMap::new(
            self.space.clone(),
            self.space.clone(),
            self.cayley[x].clone(),
        )
        .expect("in range")
    }

    /// Right translation `y ↦ y·x`.
    pub fn right_translation(&self, x: usize) -> SpaceMap {
        let images = (0..self.order()).map(|y| self.cayley[y][x]).collect();
        SpaceMap::new(self.space.clone(), self.space.clone(), images).expect("in range")
    }

    pub fn inversion(&self) -> SpaceMap {
        SpaceMap::new(self.space.clone(), self.space.clone(), self.inverse.clone())
            .expect("in range")
    }

    /// Smallest pair `(a, b)` with `f(a·b) ≠ f(a)·f(b)`, checked over the
    /// whole Cayley table.
    pub fn homomorphism_witness(
        &self,
        f: &SpaceMap,
        target: &FiniteGroup,
    ) -> Option<(usize, usize)> {
        let n = self.order();
        (0..n).find_map(|a| {
            (0..n)
                .find(|&b| f.apply(self.mul(a, b)) != target.mul(f.apply(a), f.apply(b)))
                .map(|b| (a, b))
        })
    }

    pub fn is_homomorphism(&self, f: &SpaceMap, target: &FiniteGroup) -> bool {
        f.domain() == &self.space
            && f.codomain() == &target.space
            && self.homomorphism_witness(f, target).is_none()
    }

    /// Every homomorphism into `target`, in lexicographic image order.
    pub fn homomorphisms_to(&self, target: &FiniteGroup) -> Vec<SpaceMap> {
        let n = self.order();
        let m = target.order();
        let mut out = Vec::new();
        let mut images = vec![0usize; n];
        loop {
            let f = SpaceMap::new(self.space.clone(), target.space.clone(), images.clone())
                .expect("in range");
            if self.homomorphism_witness(&f, target).is_none() {
                out.push(f);
            }
            // Odometer over all m^n maps.
            let mut k = n;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                images[k] += 1;
                if images[k] < m {
                    break;
                }
                images[k] = 0;
            }
        }
    }
}

impl<'de> Deserialize<'de> for FiniteGroup {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            space: FiniteSpace,
            cayley: Vec<Vec<usize>>,
            identity: usize,
        }
        let raw = Raw::deserialize(d)?;
        FiniteGroup::with_identity(raw.space, raw.cayley, raw.identity)
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_orders_and_counts() {
        let cat = FiniteGroup::catalog(8);
        let count = |n| cat.iter().filter(|(_, g)| g.order() == n).count();
        assert_eq!(
            (1..=8).map(count).collect::<Vec<_>>(),
            vec![1, 1, 1, 2, 1, 2, 1, 5]
        );
        // Non-abelian members really are non-abelian.
        for name in ["S3", "D4", "Q8"] {
            let g = &cat.iter().find(|(n, _)| n == name).unwrap().1;
            let abelian =
                (0..g.order()).all(|a| (0..g.order()).all(|b| g.mul(a, b) == g.mul(b, a)));
            assert!(!abelian, "{name}");
        }
    }

    #[test]
    fn q8_has_one_involution() {
        let q = FiniteGroup::quaternion().unwrap();
        let involutions = (0..8)
            .filter(|&x| x != q.identity() && q.mul(x, x) == q.identity())
            .count();
        assert_eq!(involutions, 1);
        let d4 = FiniteGroup::dihedral(4).unwrap();
        let d4_inv = (0..8)
            .filter(|&x| x != d4.identity() && d4.mul(x, x) == d4.identity())
            .count();
        assert_eq!(d4_inv, 5);
    }

    #[test]
    fn subset_algebra_examples() {
        let z4 = FiniteGroup::cyclic(4).unwrap();
        let e = Subset::singleton(0);
        for b in z4.space().subsets() {
            assert_eq!(z4.subset_product(e, b), b);
            assert_eq!(z4.subset_inverse(z4.subset_inverse(b)), b);
            assert_eq!(z4.subset_product(Subset::EMPTY, b), Subset::EMPTY);
        }
        assert_eq!(
            z4.subset_product(Subset::singleton(1), Subset::singleton(2)),
            Subset::singleton(3)
        );
        assert_eq!(
            z4.subset_product(Subset(0b0101), Subset(0b0101)),
            Subset(0b0101)
        );
        assert_eq!(z4.subset_inverse(Subset(0b0110)), Subset(0b1100));
        assert_eq!(z4.subset_inverse(e), e);
    }

    #[test]
    fn product_table_matches_direct_computation() {
        let g = FiniteGroup::dihedral(3).unwrap();
        for a in g.space().subsets() {
            for b in g.space().subsets() {
                assert_eq!(g.subset_product(a, b), g.compute_product(a, b));
            }
        }
    }

    #[test]
    fn rejects_non_groups() {
        let y = FiniteSpace::indexed(2).unwrap();
        assert!(FiniteGroup::new(y.clone(), vec![vec![0, 1], vec![1]]).is_err());
        assert!(FiniteGroup::new(y.clone(), vec![vec![0, 0], vec![1, 1]]).is_err());
        let err = FiniteGroup::new(y.clone(), vec![vec![0, 1], vec![1, 1]]).unwrap_err();
        assert!(err.to_string().contains("row 1"), "{err}");
        // Latin square without associativity.
        let y3 = FiniteSpace::indexed(3).unwrap();
        let bad = vec![vec![0, 1, 2], vec![1, 0, 2], vec![2, 2, 0]];
        assert!(FiniteGroup::new(y3.clone(), bad).is_err());
        let z2 = vec![vec![0, 1], vec![1, 0]];
        assert!(FiniteGroup::with_identity(y, z2, 1).is_err());
    }

    #[test]
    fn subgroups_normality_and_cosets() {
        let s3 = FiniteGroup::dihedral(3).unwrap();
        assert_eq!(s3.subgroups().len(), 6);
        assert_eq!(s3.normal_subgroups().len(), 3);
        // {r0, s0} is a subgroup but not normal.
        let h = Subset::from_elements([0, 3]);
        assert!(s3.is_subgroup(h));
        assert!(matches!(s3.check_normal(h), Err(Error::NotNormal { .. })));
        let err = s3
            .check_subgroup(Subset::from_elements([0, 1]))
            .unwrap_err();
        assert!(err.to_string().contains("product"), "{err}");
        let err = s3.check_subgroup(Subset::from_elements([1])).unwrap_err();
        assert!(err.to_string().contains("identity"), "{err}");
        let z4 = FiniteGroup::cyclic(4).unwrap();
        assert_eq!(
            z4.cosets(Subset(0b0101)),
            vec![Subset(0b0101), Subset(0b1010)]
        );
        let sub = z4.subgroup(Subset(0b0101)).unwrap();
        assert_eq!(sub.space().labels(), ["0", "2"]);
    }

    #[test]
    fn homomorphism_enumeration() {
        let z4 = FiniteGroup::cyclic(4).unwrap();
        let z2 = FiniteGroup::cyclic(2).unwrap();
        assert_eq!(z4.homomorphisms_to(&z2).len(), 2);
        assert_eq!(z2.homomorphisms_to(&z4).len(), 2);
        assert_eq!(z4.homomorphisms_to(&z4).len(), 4);
    }

    #[test]
    fn serde_round_trip() {
        let g = FiniteGroup::quaternion().unwrap();
        let json = serde_json::to_string(&g).unwrap();
        let back: FiniteGroup = serde_json::from_str(&json).unwrap();
        assert_eq!(g, back);
    }
}
