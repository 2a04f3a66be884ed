//! Inputs shared by the benchmarks.

use nearspace::enumeration::point_graph_relation;
use nearspace::{FiniteSpace, ProximityRelation, Subset};

/// The Čech relation of the path `0 - 1 - ... - (n-1)`: not Lodato for
/// `n >= 3`, so every scan runs to its first violation.
pub fn path_relation(n: usize) -> ProximityRelation {
    let y = FiniteSpace::lettered(n).expect("carrier size");
    let adj: Vec<Subset> = (0..n)
        .map(|i| {
            let mut s = Subset::EMPTY;
            if i > 0 {
                s = s.union(Subset::singleton(i - 1));
            }
            if i + 1 < n {
                s = s.union(Subset::singleton(i + 1));
            }
            s
        })
        .collect();
    point_graph_relation(y, &adj)
}
