use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest carrier for which full near/far tables are stored (2^24 bits).
pub const MAX_CARRIER: usize = 12;

/// A finite, labelled carrier set. Elements are the indices `0..size`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FiniteSpace {
    labels: Vec<String>,
}

impl FiniteSpace {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() || labels.len() > MAX_CARRIER {
            return Err(Error::CarrierSize {
                got: labels.len(),
                max: MAX_CARRIER,
            });
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(Self { labels })
    }

    /// Carrier labelled `a`, `b`, `c`, ...
    pub fn lettered(n: usize) -> Result<Self> {
        Self::new((0..n).map(|i| ((b'a' + i as u8) as char).to_string()))
    }

    /// Carrier labelled `0`, `1`, `2`, ...
    pub fn indexed(n: usize) -> Result<Self> {
        Self::new((0..n).map(|i| i.to_string()))
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Number of subsets, `2^size`.
    pub fn subset_count(&self) -> usize {
        1usize << self.size()
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.size())
    }

    /// All subsets in increasing mask order.
    pub fn subsets(&self) -> impl Iterator<Item = Subset> + Clone {
        (0..self.subset_count() as u32).map(Subset)
    }

    pub fn singleton(&self, i: usize) -> Subset {
        Subset::singleton(i)
    }

    pub fn check_subset(&self, s: Subset) -> Result<Subset> {
        if s.0 >> self.size() != 0 {
            Err(Error::SubsetOutOfRange {
                mask: s.0,
                size: self.size(),
            })
        } else {
            Ok(s)
        }
    }

    pub fn check_element(&self, i: usize) -> Result<usize> {
        if i < self.size() {
            Ok(i)
        } else {
            Err(Error::ElementOutOfRange {
                index: i,
                size: self.size(),
            })
        }
    }

    pub fn complement(&self, s: Subset) -> Subset {
        Subset(!s.0 & self.full().0)
    }

    /// Renders a subset as `{a,b}` using this carrier's labels.
    pub fn format_subset(&self, s: Subset) -> String {
        let names: Vec<&str> = s.elements().map(|i| self.label(i)).collect();
        format!("{{{}}}", names.join(","))
    }
}

impl<'de> Deserialize<'de> for FiniteSpace {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            labels: Vec<String>,
        }
        let raw = Raw::deserialize(d)?;
        FiniteSpace::new(raw.labels).map_err(serde::de::Error::custom)
    }
}

/// A subset of a [`FiniteSpace`] as a bit mask: bit `i` set iff element `i`
/// is a member. The empty subset is mask 0.
#[derive(
    Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn full(n: usize) -> Subset {
        Subset(((1u64 << n) - 1) as u32)
    }

    pub fn singleton(i: usize) -> Subset {
        Subset(1 << i)
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(it: I) -> Subset {
        Subset(it.into_iter().fold(0, |m, i| m | (1 << i)))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn intersects(self, other: Subset) -> bool {
        self.0 & other.0 != 0
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    /// Member indices in increasing order.
    pub fn elements(self) -> impl Iterator<Item = usize> + Clone {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i)
            }
        })
    }

    /// Smallest member, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_carriers() {
        assert!(matches!(
            FiniteSpace::new(Vec::<String>::new()),
            Err(Error::CarrierSize { got: 0, .. })
        ));
        assert!(matches!(
            FiniteSpace::indexed(13),
            Err(Error::CarrierSize { got: 13, .. })
        ));
        assert_eq!(
            FiniteSpace::new(["a", "b", "a"]),
            Err(Error::DuplicateLabel("a".into()))
        );
        assert!(FiniteSpace::indexed(12).is_ok());
    }

    #[test]
    fn subset_basics() {
        let y = FiniteSpace::lettered(3).unwrap();
        let ab = Subset::from_elements([0, 1]);
        assert_eq!(ab.bits(), 3);
        assert_eq!(y.format_subset(ab), "{a,b}");
        assert_eq!(y.format_subset(Subset::EMPTY), "{}");
        assert_eq!(y.complement(ab), Subset::singleton(2));
        assert_eq!(ab.elements().collect::<Vec<_>>(), vec![0, 1]);
        assert!(y.check_subset(Subset(8)).is_err());
        assert_eq!(y.subsets().count(), 8);
        assert_eq!(Subset::full(12).bits(), 4095);
    }

    #[test]
    fn deserialize_validates() {
        let bad: std::result::Result<FiniteSpace, _> =
            serde_json::from_str(r#"{"labels":["x","x"]}"#);
        assert!(bad.is_err());
        let ok: FiniteSpace = serde_json::from_str(r#"{"labels":["x","y"]}"#).unwrap();
        assert_eq!(ok.size(), 2);
    }
}
