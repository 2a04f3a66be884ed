use crate::error::{Error, Result};
use crate::proximity::{
    check_class, AxiomClass, FiniteSpace, Provenance, ProximityRelation, Subset,
};

/// Largest carrier [`enumerate_relations`] accepts.
pub const MAX_ENUMERATION_N: usize = 4;

/// Largest carrier [`enumerate_forced_tables`] accepts.
pub const MAX_FORCED_N: usize = 3;

/// Unordered element pairs `i < j` in lexicographic order.
fn element_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect()
}

/// The L1-L4 relation generated by a reflexive symmetric point graph:
/// `A δ B` iff some `a ∈ A` and `b ∈ B` are equal or adjacent.
///
/// `adj[i]` is the neighbour mask of `i`; `i` itself is added.
pub fn point_graph_relation(space: FiniteSpace, adj: &[Subset]) -> ProximityRelation {
    let n = space.size();
    assert_eq!(adj.len(), n, "one neighbour mask per element");
    let reach: Vec<Subset> = space
        .subsets()
        .map(|a| {
            a.elements().fold(Subset::EMPTY, |m, i| {
                m.union(adj[i]).union(Subset::singleton(i))
            })
        })
        .collect();
    ProximityRelation::from_fn(space, Provenance::Explicit, |a, b| {
        reach[a.index()].intersects(b)
    })
}

/// Every relation of `class` on `n` lettered elements, each once, ordered by
/// the bit pattern of its singleton graph (pairs `i < j` lexicographic,
/// lowest bit first).
///
/// L4 determines every entry from the singleton pairs, and L1-L3 force
/// those to a reflexive symmetric graph, so the candidates are the
/// `2^(n(n-1)/2)` point graphs. Each is still run through the class checker.
pub fn enumerate_relations(n: usize, class: AxiomClass) -> Result<Vec<ProximityRelation>> {
    if n > MAX_ENUMERATION_N {
        return Err(Error::EnumerationTooLarge {
            n,
            max: MAX_ENUMERATION_N,
            bound: format!("2^{} point graphs", n * n.saturating_sub(1) / 2),
        });
    }
    let space = FiniteSpace::lettered(n)?;
    let pairs = element_pairs(n);
    let mut out = Vec::new();
    for code in 0u64..1 << pairs.len() {
        let mut adj = vec![Subset::EMPTY; n];
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if code >> k & 1 == 1 {
                adj[i] = adj[i].union(Subset::singleton(j));
                adj[j] = adj[j].union(Subset::singleton(i));
            }
        }
        let rel = point_graph_relation(space.clone(), &adj);
        if check_class(&rel, class).passed() {
            out.push(rel);
        }
    }
    Ok(out)
}

/// Every symmetric table satisfying L2 and L3 on `n` lettered elements.
///
/// Entries touching `∅` are forced far and intersecting pairs forced near;
/// only unordered disjoint nonempty pairs are branched on. Nothing beyond
/// L1-L3 is assumed, so this is the brute-force counterpart of
/// [`enumerate_relations`].
pub fn enumerate_forced_tables(n: usize) -> Result<Vec<ProximityRelation>> {
    if n > MAX_FORCED_N {
        return Err(Error::EnumerationTooLarge {
            n,
            max: MAX_FORCED_N,
            bound: format!("2^{} symmetric tables", free_pairs(n).len()),
        });
    }
    let space = FiniteSpace::lettered(n)?;
    let free = free_pairs(n);
    let forced: Vec<(Subset, Subset)> = space
        .subsets()
        .flat_map(|a| {
            space
                .subsets()
                .filter(move |&b| a.intersects(b))
                .map(move |b| (a, b))
        })
        .collect();
    let mut out = Vec::with_capacity(1 << free.len());
    for code in 0u64..1 << free.len() {
        let mut pairs = forced.clone();
        for (k, &(a, b)) in free.iter().enumerate() {
            if code >> k & 1 == 1 {
                pairs.push((a, b));
                pairs.push((b, a));
            }
        }
        out.push(ProximityRelation::from_near_pairs(space.clone(), pairs)?);
    }
    Ok(out)
}

/// Unordered pairs `{A, B}` of disjoint nonempty subsets, `A < B` by mask.
pub fn free_pairs(n: usize) -> Vec<(Subset, Subset)> {
    let side = 1u32 << n;
    (1..side)
        .flat_map(|a| {
            (a + 1..side)
                .filter(move |b| a & b == 0)
                .map(move |b| (Subset(a), Subset(b)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let counts = |n| {
            [AxiomClass::Cech, AxiomClass::Lodato, AxiomClass::Efremovic]
                .map(|c| enumerate_relations(n, c).unwrap().len())
        };
        assert_eq!(counts(1), [1, 1, 1]);
        assert_eq!(counts(2), [2, 2, 2]);
        assert_eq!(counts(3), [8, 5, 5]);
        assert_eq!(counts(4), [64, 15, 15]);
    }

    #[test]
    fn single_point_relation_is_forced() {
        let r = &enumerate_relations(1, AxiomClass::Cech).unwrap()[0];
        assert_eq!(r.near_pairs(), vec![(Subset(1), Subset(1))]);
    }

    #[test]
    fn caps_are_enforced() {
        let err = enumerate_relations(5, AxiomClass::Cech).unwrap_err();
        assert!(err.to_string().contains("2^10"), "{err}");
        assert!(enumerate_forced_tables(4).is_err());
    }

    #[test]
    fn forced_generator_sizes() {
        assert_eq!(free_pairs(2).len(), 1);
        assert_eq!(free_pairs(3).len(), 6);
        assert_eq!(enumerate_forced_tables(3).unwrap().len(), 64);
    }
}
