//! Ground-truth axiom evaluation, written straight from each quantifier.
//!
//! Sets are membership vectors and every quantifier is a plain loop over all
//! subsets. Nothing here calls the optimized scans; the only thing read from
//! a [`ProximityRelation`] is its near/far answer per mask pair.

use crate::proximity::{Axiom, ProximityRelation, Subset, Witness};

type Set = Vec<bool>;

struct Naive {
    n: usize,
    near: Vec<Vec<bool>>,
}

impl Naive {
    fn new(rel: &ProximityRelation) -> Self {
        let n = rel.space().size();
        let side = 1usize << n;
        let near = (0..side)
            .map(|i| {
                (0..side)
                    .map(|j| rel.near(Subset(i as u32), Subset(j as u32)))
                    .collect()
            })
            .collect();
        Naive { n, near }
    }

    fn decode(&self, code: usize) -> Set {
        (0..self.n).map(|k| code >> k & 1 == 1).collect()
    }

    fn encode(s: &Set) -> usize {
        s.iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(k, _)| 1 << k)
            .sum()
    }

    fn all_sets(&self) -> Vec<Set> {
        (0..1usize << self.n).map(|c| self.decode(c)).collect()
    }

    fn point(&self, i: usize) -> Set {
        (0..self.n).map(|k| k == i).collect()
    }

    fn near(&self, a: &Set, b: &Set) -> bool {
        self.near[Self::encode(a)][Self::encode(b)]
    }

    fn closure(&self, b: &Set) -> Set {
        (0..self.n).map(|y| self.near(&self.point(y), b)).collect()
    }

    /// Whether the tuple `args` violates `axiom`; `None` for axioms that are
    /// not properties of a single table.
    fn violates(&self, axiom: Axiom, args: &[Set]) -> Option<bool> {
        let empty = |s: &Set| s.iter().all(|&m| !m);
        let union = |a: &Set, b: &Set| a.iter().zip(b).map(|(x, y)| *x || *y).collect::<Set>();
        let meets = |a: &Set, b: &Set| a.iter().zip(b).any(|(x, y)| *x && *y);
        let complement = |a: &Set| a.iter().map(|x| !x).collect::<Set>();
        let subset = |a: &Set, b: &Set| a.iter().zip(b).all(|(x, y)| !*x || *y);
        let v = match (axiom, args) {
            (Axiom::L1, [a, b]) => self.near(a, b) && !self.near(b, a),
            (Axiom::L2, [a, b]) => self.near(a, b) && (empty(a) || empty(b)),
            (Axiom::L3, [a, b]) => meets(a, b) && !self.near(a, b),
            (Axiom::L4, [a, b, c]) => {
                self.near(a, &union(b, c)) != (self.near(a, b) || self.near(a, c))
            }
            (Axiom::L5, [a, b, c]) => {
                let every_point_near_c = (0..self.n).all(|i| !b[i] || self.near(&self.point(i), c));
                self.near(a, b) && every_point_near_c && !self.near(a, c)
            }
            (Axiom::Ef, [a, b]) => {
                let separated = self
                    .all_sets()
                    .iter()
                    .any(|k| !self.near(a, k) && !self.near(&complement(k), b));
                !self.near(a, b) && !separated
            }
            (Axiom::Transitivity, [a, b, c]) => {
                self.near(a, b) && self.near(b, c) && !self.near(a, c)
            }
            (Axiom::K1, [e]) => empty(e) && !empty(&self.closure(e)),
            (Axiom::K2, [b]) => !subset(b, &self.closure(b)),
            (Axiom::K3, [a, b]) => {
                let lhs = self.closure(&union(a, b));
                lhs != union(&self.closure(a), &self.closure(b))
            }
            (Axiom::K4, [b]) => self.closure(&self.closure(b)) != self.closure(b),
            _ => return None,
        };
        Some(v)
    }
}

fn arity(axiom: Axiom) -> Option<usize> {
    match axiom {
        Axiom::K1 | Axiom::K2 | Axiom::K4 => Some(1),
        Axiom::L1 | Axiom::L2 | Axiom::L3 | Axiom::Ef | Axiom::K3 => Some(2),
        Axiom::L4 | Axiom::L5 | Axiom::Transitivity => Some(3),
        _ => None,
    }
}

/// First violating tuple in lexicographic mask order, or `None` if the
/// axiom holds. Returns `None` in the outer option for axioms that are not
/// table properties (maps, descriptive DL3).
pub fn naive_first_violation(rel: &ProximityRelation, axiom: Axiom) -> Option<Option<Witness>> {
    let k = arity(axiom)?;
    let o = Naive::new(rel);
    let side = 1usize << o.n;
    let total = side.pow(k as u32);
    for t in 0..total {
        // Most significant position first, so the first argument varies slowest.
        let codes: Vec<usize> = (0..k)
            .rev()
            .map(|p| t / side.pow(p as u32) % side)
            .collect();
        let args: Vec<Set> = codes.iter().map(|&c| o.decode(c)).collect();
        if o.violates(axiom, &args)? {
            return Some(Some(Witness(
                codes.iter().map(|&c| Subset(c as u32)).collect(),
            )));
        }
    }
    Some(None)
}

/// Ground-truth verdict: `Some(true)` iff the axiom holds.
pub fn naive_oracle(rel: &ProximityRelation, axiom: Axiom) -> Option<bool> {
    naive_first_violation(rel, axiom).map(|w| w.is_none())
}

/// Whether `witness` really violates `axiom` on `rel`. Wrong arity or
/// out-of-range masks count as not violating.
pub fn naive_violates(rel: &ProximityRelation, axiom: Axiom, witness: &Witness) -> bool {
    let o = Naive::new(rel);
    if arity(axiom) != Some(witness.0.len()) {
        return false;
    }
    if witness.0.iter().any(|s| s.index() >= 1 << o.n) {
        return false;
    }
    let args: Vec<Set> = witness.0.iter().map(|s| o.decode(s.index())).collect();
    o.violates(axiom, &args).unwrap_or(false)
}
