use rand::Rng;

use super::generate::{free_pairs, point_graph_relation};
use crate::descriptive::ProbeTable;
use crate::proximity::{FiniteSpace, Provenance, ProximityRelation, Subset};

/// How a random table is drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableStyle {
    /// Every entry an independent fair coin.
    Uniform,
    /// L1-L3 forced; each disjoint nonempty pair near with probability 1/2.
    SymmetricForced,
    /// A random point-graph relation with up to two free pairs flipped, so
    /// most draws sit at or next to a Čech relation.
    PerturbedPointGraph,
}

pub const TABLE_STYLES: [TableStyle; 3] = [
    TableStyle::Uniform,
    TableStyle::SymmetricForced,
    TableStyle::PerturbedPointGraph,
];

pub fn random_table<R: Rng + ?Sized>(
    space: &FiniteSpace,
    style: TableStyle,
    rng: &mut R,
) -> ProximityRelation {
    let n = space.size();
    match style {
        TableStyle::Uniform => {
            ProximityRelation::from_fn(space.clone(), Provenance::Explicit, |_, _| rng.gen())
        }
        TableStyle::SymmetricForced => {
            let near: Vec<(Subset, Subset)> =
                free_pairs(n).into_iter().filter(|_| rng.gen()).collect();
            ProximityRelation::from_fn(space.clone(), Provenance::Explicit, |a, b| {
                a.intersects(b) || near.contains(&(a, b)) || near.contains(&(b, a))
            })
        }
        TableStyle::PerturbedPointGraph => {
            let mut adj = vec![Subset::EMPTY; n];
            for i in 0..n {
                for j in i + 1..n {
                    if rng.gen() {
                        adj[i] = adj[i].union(Subset::singleton(j));
                        adj[j] = adj[j].union(Subset::singleton(i));
                    }
                }
            }
            let mut rel = point_graph_relation(space.clone(), &adj);
            let free = free_pairs(n);
            if !free.is_empty() {
                for _ in 0..rng.gen_range(0..=2) {
                    let (a, b) = free[rng.gen_range(0..free.len())];
                    rel = rel.with_flipped(a, b).with_flipped(b, a);
                }
            }
            rel
        }
    }
}

/// Probe table with `arity` features per element, each drawn from
/// `0..levels`. Few levels make shared descriptions common.
pub fn random_probes<R: Rng + ?Sized>(
    space: &FiniteSpace,
    arity: usize,
    levels: i64,
    rng: &mut R,
) -> ProbeTable {
    let values = (0..space.size())
        .map(|_| (0..arity).map(|_| rng.gen_range(0..levels)).collect())
        .collect();
    ProbeTable::new(space.clone(), arity, values).expect("well-formed probe table")
}
