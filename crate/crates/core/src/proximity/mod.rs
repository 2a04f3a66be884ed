//! Finite carriers, proximity tables and the constructions on them.

mod axioms;
mod closure;
mod constructions;
mod maps;
mod relation;
mod space;

pub use axioms::{
    check_cech, check_class, check_class_on, check_efremovic, check_lodato, ef_separator,
    scan_axiom, Axiom, AxiomClass, AxiomReport, Verdict, Witness,
};
pub use closure::{check_kuratowski, closure, induced_topology, TopologySnapshot};
pub(crate) use constructions::{deposit, extract};
pub use constructions::{
    product_proximity, product_space, quotient_proximity, subspace_proximity, validate_partition,
    RectangleRelation,
};
pub use maps::{check_pcont, check_proximal_isomorphism, compose, SpaceMap};
pub use relation::{Nearness, Provenance, ProximityRelation};
pub use space::{FiniteSpace, Subset, MAX_CARRIER};
