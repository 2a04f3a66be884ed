use std::fmt;

use serde::{Deserialize, Serialize};

use super::space::{FiniteSpace, Subset};
use crate::error::{Error, Result};

/// Which constructor produced a relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Explicit,
    Discrete,
    Coarse,
    Metric,
    Descriptive,
    Product,
    Subspace,
    Quotient,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Provenance::Explicit => "explicit",
            Provenance::Discrete => "discrete",
            Provenance::Coarse => "coarse",
            Provenance::Metric => "metric",
            Provenance::Descriptive => "descriptive",
            Provenance::Product => "product",
            Provenance::Subspace => "subspace",
            Provenance::Quotient => "quotient",
        };
        f.write_str(s)
    }
}

/// Anything that can answer near/far on some family of subsets of a carrier.
///
/// Full tables admit every subset; the rectangle product only admits
/// cartesian products.
pub trait Nearness {
    fn space(&self) -> &FiniteSpace;

    fn admits(&self, s: Subset) -> bool;

    /// Near/far for two admitted subsets.
    fn is_near(&self, a: Subset, b: Subset) -> bool;

    /// Admitted subsets in increasing mask order.
    fn admissible(&self) -> Vec<Subset> {
        self.space().subsets().filter(|&s| self.admits(s)).collect()
    }
}

/// Dense 2^n x 2^n bit table, one padded row of u64 words per subset.
#[derive(Clone, PartialEq, Eq, Hash)]
struct NearTable {
    side: usize,
    words_per_row: usize,
    words: Vec<u64>,
}

impl NearTable {
    fn new(n: usize) -> Self {
        let side = 1usize << n;
        let words_per_row = side.div_ceil(64);
        Self {
            side,
            words_per_row,
            words: vec![0; side * words_per_row],
        }
    }

    #[inline]
    fn get(&self, a: usize, b: usize) -> bool {
        self.words[a * self.words_per_row + b / 64] >> (b % 64) & 1 == 1
    }

    #[inline]
    fn set(&mut self, a: usize, b: usize, v: bool) {
        let w = &mut self.words[a * self.words_per_row + b / 64];
        if v {
            *w |= 1 << (b % 64);
        } else {
            *w &= !(1 << (b % 64));
        }
    }

    fn row(&self, a: usize) -> &[u64] {
        &self.words[a * self.words_per_row..(a + 1) * self.words_per_row]
    }

    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// A near/far predicate over every ordered pair of subsets of a finite
/// carrier, stored as a full table.
///
/// No axiom is enforced at construction; arbitrary tables are representable
/// so that counterexamples can be written down.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProximityRelation {
    space: FiniteSpace,
    table: NearTable,
    provenance: Provenance,
}

impl fmt::Debug for ProximityRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProximityRelation")
            .field("labels", &self.space.labels())
            .field("provenance", &self.provenance)
            .field("near_pairs", &self.near_pair_count())
            .finish()
    }
}

impl ProximityRelation {
    /// Builds a table by evaluating `near` on every ordered pair of subsets.
    pub fn from_fn(
        space: FiniteSpace,
        provenance: Provenance,
        mut near: impl FnMut(Subset, Subset) -> bool,
    ) -> Self {
        let mut table = NearTable::new(space.size());
        for a in space.subsets() {
            for b in space.subsets() {
                if near(a, b) {
                    table.set(a.index(), b.index(), true);
                }
            }
        }
        Self {
            space,
            table,
            provenance,
        }
    }

    /// Table with exactly the listed ordered pairs near.
    pub fn from_near_pairs(
        space: FiniteSpace,
        pairs: impl IntoIterator<Item = (Subset, Subset)>,
    ) -> Result<Self> {
        let mut table = NearTable::new(space.size());
        for (a, b) in pairs {
            space.check_subset(a)?;
            space.check_subset(b)?;
            table.set(a.index(), b.index(), true);
        }
        Ok(Self {
            space,
            table,
            provenance: Provenance::Explicit,
        })
    }

    /// Near iff the two subsets share an element.
    pub fn discrete(space: FiniteSpace) -> Self {
        Self::from_fn(space, Provenance::Discrete, |a, b| a.intersects(b))
    }

    /// Near iff both subsets are nonempty.
    pub fn coarse(space: FiniteSpace) -> Self {
        Self::from_fn(space, Provenance::Coarse, |a, b| {
            !a.is_empty() && !b.is_empty()
        })
    }

    /// Near iff the gap `min d(a, b)` between the subsets is zero.
    ///
    /// `d` must be a pseudometric: symmetric, zero on the diagonal,
    /// nonnegative and satisfying the triangle inequality.
    #[allow(clippy::needless_range_loop)] // d[i][j] against d[j][i]
    pub fn metric(space: FiniteSpace, d: &[Vec<f64>]) -> Result<Self> {
        let n = space.size();
        if d.len() != n || d.iter().any(|row| row.len() != n) {
            return Err(Error::NotPseudometric(format!("matrix must be {n} x {n}")));
        }
        for i in 0..n {
            if d[i][i] != 0.0 {
                return Err(Error::NotPseudometric(format!(
                    "zero diagonal: d({i},{i}) = {}",
                    d[i][i]
                )));
            }
            for j in 0..n {
                if !d[i][j].is_finite() || d[i][j] < 0.0 {
                    return Err(Error::NotPseudometric(format!(
                        "nonnegativity: d({i},{j}) = {}",
                        d[i][j]
                    )));
                }
                if d[i][j] != d[j][i] {
                    return Err(Error::NotPseudometric(format!(
                        "symmetry: d({i},{j}) != d({j},{i})"
                    )));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if d[i][k] > d[i][j] + d[j][k] + 1e-12 {
                        return Err(Error::NotPseudometric(format!(
                            "triangle inequality: d({i},{k}) > d({i},{j}) + d({j},{k})"
                        )));
                    }
                }
            }
        }
        // Zero-distance adjacency per point, then a subset-level OR.
        let zero: Vec<Subset> = (0..n)
            .map(|i| Subset::from_elements((0..n).filter(|&j| d[i][j] == 0.0)))
            .collect();
        Ok(Self::from_fn(space, Provenance::Metric, |a, b| {
            a.elements().any(|i| zero[i].intersects(b))
        }))
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }

    #[inline]
    pub fn near(&self, a: Subset, b: Subset) -> bool {
        self.table.get(a.index(), b.index())
    }

    pub fn far(&self, a: Subset, b: Subset) -> bool {
        !self.near(a, b)
    }

    /// Bit row of `a`: bit `b` set iff `a` is near `b`.
    pub fn row_words(&self, a: Subset) -> &[u64] {
        self.table.row(a.index())
    }

    /// Copy of this table with the `(a, b)` entry flipped.
    pub fn with_flipped(&self, a: Subset, b: Subset) -> Self {
        let mut out = self.clone();
        let v = out.table.get(a.index(), b.index());
        out.table.set(a.index(), b.index(), !v);
        out.provenance = Provenance::Explicit;
        out
    }

    /// Number of ordered near pairs.
    pub fn near_pair_count(&self) -> usize {
        self.table.count()
    }

    /// Ordered near pairs in lexicographic order.
    pub fn near_pairs(&self) -> Vec<(Subset, Subset)> {
        let mut out = Vec::new();
        for a in self.space.subsets() {
            for b in self.space.subsets() {
                if self.near(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// The table as a bit string in row-major `(a, b)` order; the basis of
    /// the lexicographic order used to break ties between relations.
    pub fn table_bits(&self) -> Vec<bool> {
        let side = self.space.subset_count();
        (0..side * side)
            .map(|k| self.table.get(k / side, k % side))
            .collect()
    }

    /// Same table on a relabelled carrier of equal size.
    pub fn relabel(&self, space: FiniteSpace) -> Result<Self> {
        if space.size() != self.space.size() {
            return Err(Error::CarrierMismatch(format!(
                "relabel from size {} to size {}",
                self.space.size(),
                space.size()
            )));
        }
        Ok(Self {
            space,
            table: self.table.clone(),
            provenance: self.provenance,
        })
    }

    /// Tables are equal entry for entry (carrier labels and provenance ignored).
    pub fn same_table(&self, other: &ProximityRelation) -> bool {
        self.table == other.table
    }
}

impl Nearness for ProximityRelation {
    fn space(&self) -> &FiniteSpace {
        &self.space
    }

    fn admits(&self, s: Subset) -> bool {
        s.0 >> self.space.size() == 0
    }

    fn is_near(&self, a: Subset, b: Subset) -> bool {
        self.near(a, b)
    }

    fn admissible(&self) -> Vec<Subset> {
        self.space.subsets().collect()
    }
}

#[derive(Serialize, Deserialize)]
struct RelationRepr {
    space: FiniteSpace,
    provenance: Provenance,
    near: Vec<(Subset, Subset)>,
}

impl Serialize for ProximityRelation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RelationRepr {
            space: self.space.clone(),
            provenance: self.provenance,
            near: self.near_pairs(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ProximityRelation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = RelationRepr::deserialize(d)?;
        let rel = ProximityRelation::from_near_pairs(repr.space, repr.near)
            .map_err(serde::de::Error::custom)?;
        Ok(rel.with_provenance(repr.provenance))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> FiniteSpace {
        FiniteSpace::lettered(2).unwrap()
    }

    #[test]
    fn discrete_examples() {
        let r = ProximityRelation::discrete(ab());
        let a = Subset::singleton(0);
        let b = Subset::singleton(1);
        assert!(r.near(a, Subset(3)));
        assert!(r.far(a, b));
        assert_eq!(r.table_bits().len(), 16);
    }

    #[test]
    fn coarse_examples() {
        let r = ProximityRelation::coarse(ab());
        assert!(r.near(Subset::singleton(0), Subset::singleton(1)));
        assert!(r.far(Subset::EMPTY, Subset(3)));
    }

    #[test]
    fn genuine_metric_is_discrete() {
        let y = FiniteSpace::lettered(3).unwrap();
        let d = vec![
            vec![0.0, 1.0, 2.0],
            vec![1.0, 0.0, 1.5],
            vec![2.0, 1.5, 0.0],
        ];
        let m = ProximityRelation::metric(y.clone(), &d).unwrap();
        assert!(m.same_table(&ProximityRelation::discrete(y)));
    }

    #[test]
    fn pseudometric_makes_disjoint_sets_near() {
        let y = FiniteSpace::lettered(3).unwrap();
        let d = vec![
            vec![0.0, 0.0, 1.0],
            vec![0.0, 0.0, 1.0],
            vec![1.0, 1.0, 0.0],
        ];
        let m = ProximityRelation::metric(y, &d).unwrap();
        assert!(m.near(Subset::singleton(0), Subset::singleton(1)));
        assert!(m.far(Subset::singleton(0), Subset::singleton(2)));
    }

    #[test]
    fn metric_rejections_name_the_property() {
        let y = FiniteSpace::lettered(3).unwrap();
        let asym = vec![
            vec![0.0, 1.0, 1.0],
            vec![2.0, 0.0, 1.0],
            vec![1.0, 1.0, 0.0],
        ];
        let err = ProximityRelation::metric(y.clone(), &asym).unwrap_err();
        assert!(err.to_string().contains("symmetry"), "{err}");
        let tri = vec![
            vec![0.0, 1.0, 5.0],
            vec![1.0, 0.0, 1.0],
            vec![5.0, 1.0, 0.0],
        ];
        let err = ProximityRelation::metric(y.clone(), &tri).unwrap_err();
        assert!(err.to_string().contains("triangle"), "{err}");
        let diag = vec![
            vec![1.0, 1.0, 1.0],
            vec![1.0, 0.0, 1.0],
            vec![1.0, 1.0, 0.0],
        ];
        let err = ProximityRelation::metric(y.clone(), &diag).unwrap_err();
        assert!(err.to_string().contains("diagonal"), "{err}");
        let neg = vec![
            vec![0.0, -1.0, 1.0],
            vec![-1.0, 0.0, 1.0],
            vec![1.0, 1.0, 0.0],
        ];
        let err = ProximityRelation::metric(y, &neg).unwrap_err();
        assert!(err.to_string().contains("nonnegativity"), "{err}");
    }

    #[test]
    fn serde_round_trip_keeps_table() {
        let r = ProximityRelation::coarse(FiniteSpace::lettered(3).unwrap());
        let json = serde_json::to_string(&r).unwrap();
        let back: ProximityRelation = serde_json::from_str(&json).unwrap();
        assert_eq!(r, back);
    }

    #[test]
    fn large_rows_span_words() {
        let y = FiniteSpace::indexed(8).unwrap();
        let r = ProximityRelation::discrete(y);
        assert_eq!(r.row_words(Subset(1)).len(), 4);
        assert!(r.near(Subset(255), Subset(200)));
        assert!(r.far(Subset(1), Subset(254)));
    }
}
