//! Exhaustive generators, the naive oracle, random tables, the theorem
//! fuzzer and the relation census.

mod census;
mod fuzz;
mod generate;
mod oracle;
mod random;

pub use census::{mine_separating_examples, Containments, Exemplar, RelationCensus};
pub use fuzz::{
    evaluate, fuzz_theorem, instances, replay, Counterexample, Evaluation, FuzzOutcome, FuzzScope,
    Instance, InstanceSource, TheoremId, ALL_THEOREMS,
};
pub use generate::{
    enumerate_forced_tables, enumerate_relations, free_pairs, point_graph_relation,
    MAX_ENUMERATION_N, MAX_FORCED_N,
};
pub use oracle::{naive_first_violation, naive_oracle, naive_violates};
pub use random::{random_probes, random_table, TableStyle, TABLE_STYLES};
