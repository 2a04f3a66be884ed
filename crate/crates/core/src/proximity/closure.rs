use serde::{Deserialize, Serialize};

use super::axioms::{closures, Axiom, AxiomReport, Verdict, Witness};
use super::relation::ProximityRelation;
use super::space::Subset;

/// `cl B = { y : {y} near B }`.
pub fn closure(rel: &ProximityRelation, b: Subset) -> Subset {
    let n = rel.space().size();
    Subset::from_elements((0..n).filter(|&i| rel.near(Subset::singleton(i), b)))
}

/// K1: cl ∅ = ∅; K2: B ⊆ cl B; K3: cl(A ∪ B) = cl A ∪ cl B; K4: cl cl B = cl B.
pub fn check_kuratowski(rel: &ProximityRelation) -> AxiomReport {
    let y = rel.space();
    let cl = closures(rel);
    let c = |s: Subset| cl[s.index()];

    let k1 = (!c(Subset::EMPTY).is_empty()).then(|| Witness::of([Subset::EMPTY]));
    let k2 = y
        .subsets()
        .find(|&b| !b.is_subset_of(c(b)))
        .map(|b| Witness::of([b]));
    let k3 = y.subsets().find_map(|a| {
        y.subsets()
            .find(|&b| c(a.union(b)) != c(a).union(c(b)))
            .map(|b| Witness::of([a, b]))
    });
    let k4 = y
        .subsets()
        .find(|&b| c(c(b)) != c(b))
        .map(|b| Witness::of([b]));

    AxiomReport::new()
        .with(Axiom::K1, Verdict::from_scan(k1))
        .with(Axiom::K2, Verdict::from_scan(k2))
        .with(Axiom::K3, Verdict::from_scan(k3))
        .with(Axiom::K4, Verdict::from_scan(k4))
}

/// Closed and open families derived from the closure operator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopologySnapshot {
    pub closed_sets: Vec<Subset>,
    pub open_sets: Vec<Subset>,
    pub kuratowski_ok: bool,
    /// Whether the open family contains ∅ and Y and is closed under union
    /// and intersection. Only meaningful when `kuratowski_ok`.
    pub is_topology: bool,
    pub kuratowski: AxiomReport,
}

impl TopologySnapshot {
    pub fn is_open(&self, s: Subset) -> bool {
        self.open_sets.binary_search(&s).is_ok()
    }

    pub fn is_closed(&self, s: Subset) -> bool {
        self.closed_sets.binary_search(&s).is_ok()
    }
}

/// Closed sets are the fixed points of the closure; open sets their
/// complements. A snapshot is returned even when the closure is not a
/// Kuratowski operator; `kuratowski_ok` flags that case.
pub fn induced_topology(rel: &ProximityRelation) -> TopologySnapshot {
    let y = rel.space();
    let cl = closures(rel);
    let closed_sets: Vec<Subset> = y.subsets().filter(|s| cl[s.index()] == *s).collect();
    let mut open_sets: Vec<Subset> = closed_sets.iter().map(|&c| y.complement(c)).collect();
    open_sets.sort();
    let kuratowski = check_kuratowski(rel);
    let kuratowski_ok = kuratowski.passed();
    let is_topology = is_topology(&open_sets, y.full());
    TopologySnapshot {
        closed_sets,
        open_sets,
        kuratowski_ok,
        is_topology,
        kuratowski,
    }
}

fn is_topology(open: &[Subset], full: Subset) -> bool {
    let has = |s: Subset| open.binary_search(&s).is_ok();
    // On a finite carrier, pairwise closure suffices for arbitrary unions.
    has(Subset::EMPTY)
        && has(full)
        && open.iter().all(|&a| {
            open.iter()
                .all(|&b| has(a.union(b)) && has(a.intersection(b)))
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proximity::FiniteSpace;

    #[test]
    fn discrete_closure_is_identity() {
        let r = ProximityRelation::discrete(FiniteSpace::lettered(3).unwrap());
        for b in r.space().subsets() {
            assert_eq!(closure(&r, b), b);
        }
        assert!(check_kuratowski(&r).passed());
        let t = induced_topology(&r);
        assert_eq!(t.open_sets.len(), 8);
        assert!(t.kuratowski_ok && t.is_topology);
    }

    #[test]
    fn coarse_closure_is_everything() {
        let r = ProximityRelation::coarse(FiniteSpace::lettered(2).unwrap());
        assert_eq!(closure(&r, Subset(1)), Subset(3));
        assert_eq!(closure(&r, Subset::EMPTY), Subset::EMPTY);
        let t = induced_topology(&r);
        assert_eq!(t.open_sets, vec![Subset::EMPTY, Subset(3)]);
    }

    #[test]
    fn pseudometric_example_topology() {
        let y = FiniteSpace::lettered(3).unwrap();
        let d = vec![
            vec![0.0, 0.0, 1.0],
            vec![0.0, 0.0, 1.0],
            vec![1.0, 1.0, 0.0],
        ];
        let r = ProximityRelation::metric(y, &d).unwrap();
        assert_eq!(closure(&r, Subset(1)), Subset(3));
        let t = induced_topology(&r);
        assert!(t.is_open(Subset(4)));
        assert!(!t.is_open(Subset(1)));
        assert!(t.kuratowski_ok && t.is_topology);
    }

    #[test]
    fn non_transitive_point_graph_breaks_idempotence() {
        // a~b, b~c, a !~ c: cl{a} = {a,b}, cl{a,b} = Y.
        let y = FiniteSpace::lettered(3).unwrap();
        let edge = |i: usize, j: usize| i == j || (i as i32 - j as i32).abs() == 1;
        let r = ProximityRelation::from_fn(y, crate::Provenance::Explicit, |a, b| {
            a.elements().any(|i| b.elements().any(|j| edge(i, j)))
        });
        let rep = check_kuratowski(&r);
        assert_eq!(rep.witness(Axiom::K4), Some(&Witness::of([Subset(1)])));
        assert!(!induced_topology(&r).kuratowski_ok);
    }
}
