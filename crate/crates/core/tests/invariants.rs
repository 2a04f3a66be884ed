//! Structural invariants as properties over generated inputs.

use nearspace::descriptive::{
    check_descriptive_ef, check_descriptive_lodato, descriptive_proximity, ProbeTable,
};
use nearspace::enumeration::{naive_violates, point_graph_relation, random_table, TABLE_STYLES};
use nearspace::groups::{check_descriptive_proximal_group, check_proximal_group, FiniteGroup};
use nearspace::{
    check_class, check_kuratowski, check_pcont, compose, quotient_proximity, subspace_proximity,
    Axiom, AxiomClass, FiniteSpace, ProximityRelation, SpaceMap, Subset,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn graph(n: usize, code: u8) -> ProximityRelation {
    let y = FiniteSpace::lettered(n).unwrap();
    let mut adj = vec![Subset::EMPTY; n];
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if code >> k & 1 == 1 {
                adj[i] = adj[i].union(Subset::singleton(j));
                adj[j] = adj[j].union(Subset::singleton(i));
            }
            k += 1;
        }
    }
    point_graph_relation(y, &adj)
}

fn transitive(rel: &ProximityRelation) -> bool {
    let n = rel.space().size();
    let e = |i, j| rel.near(Subset::singleton(i), Subset::singleton(j));
    (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| !(e(i, j) && e(j, k)) || e(i, k))))
}

fn group(idx: usize) -> FiniteGroup {
    let cat = FiniteGroup::catalog(8);
    cat[idx % cat.len()].1.clone()
}

fn mask(g: &FiniteGroup, m: u32) -> Subset {
    Subset(m & g.space().full().bits())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn subset_product_laws(idx in 0usize..14, a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let g = group(idx);
        let (a, b, c) = (mask(&g, a), mask(&g, b), mask(&g, c));
        let p = |x, y| g.subset_product(x, y);
        prop_assert_eq!(p(p(a, b), c), p(a, p(b, c)));
        prop_assert_eq!(g.subset_inverse(p(a, b)), p(g.subset_inverse(b), g.subset_inverse(a)));
        prop_assert_eq!(g.subset_inverse(g.subset_inverse(a)), a);
        prop_assert_eq!(p(Subset::singleton(g.identity()), a), a);
        prop_assert_eq!(p(a, b).is_empty(), a.is_empty() || b.is_empty());
    }

    #[test]
    fn point_graphs_are_cech_and_lodato_iff_transitive(n in 1usize..=4, code in any::<u8>()) {
        let rel = graph(n, code);
        prop_assert!(check_class(&rel, AxiomClass::Cech).passed());
        let t = transitive(&rel);
        prop_assert_eq!(check_class(&rel, AxiomClass::Lodato).passed(), t);
        prop_assert_eq!(check_class(&rel, AxiomClass::Efremovic).passed(), t);
        let k = check_kuratowski(&rel);
        prop_assert!(k.passes(Axiom::K1) && k.passes(Axiom::K2) && k.passes(Axiom::K3));
        prop_assert_eq!(k.passes(Axiom::K4), t);
    }

    #[test]
    fn subspaces_and_quotients_stay_cech(n in 1usize..=4, code in any::<u8>(), v in 1u32..16, cut in any::<u32>()) {
        let rel = graph(n, code);
        let y = rel.space().clone();
        let v = Subset(v & y.full().bits());
        prop_assume!(!v.is_empty());
        let sub = subspace_proximity(&rel, v).unwrap();
        prop_assert!(check_class(&sub, AxiomClass::Cech).passed());
        // Two-block partition (or one block when the cut is trivial).
        let left = Subset(cut & y.full().bits());
        let blocks: Vec<Subset> = [left, y.complement(left)].into_iter().filter(|b| !b.is_empty()).collect();
        let q = quotient_proximity(&rel, &blocks).unwrap();
        prop_assert!(check_class(&q, AxiomClass::Cech).passed());
    }

    #[test]
    fn pseudometric_relations_are_lodato_ef(points in prop::collection::vec(0i32..4, 1..=4)) {
        let y = FiniteSpace::indexed(points.len()).unwrap();
        let d: Vec<Vec<f64>> = points
            .iter()
            .map(|&p| points.iter().map(|&q| f64::from((p - q).abs())).collect())
            .collect();
        let rel = ProximityRelation::metric(y, &d).unwrap();
        prop_assert!(check_class(&rel, AxiomClass::LodatoEfremovic).passed());
    }

    #[test]
    fn descriptive_relations_pass_dl_axioms(n in 1usize..=4, arity in 1usize..=2, seed in any::<u64>()) {
        let y = FiniteSpace::lettered(n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let probes = nearspace::enumeration::random_probes(&y, arity, 3, &mut rng);
        prop_assert!(check_descriptive_lodato(&probes).passed());
        prop_assert!(check_descriptive_ef(&probes).passed());
    }

    #[test]
    fn descriptive_group_check_reduces(idx in 0usize..9, seed in any::<u64>()) {
        let g = group(idx);
        prop_assume!(g.order() <= 6);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let probes = nearspace::enumeration::random_probes(g.space(), 1, 3, &mut rng);
        prop_assert_eq!(
            check_descriptive_proximal_group(&g, &probes).unwrap(),
            check_proximal_group(&g, &descriptive_proximity(&probes)).unwrap()
        );
    }

    #[test]
    fn pcont_composes(n in 1usize..=3, c1 in any::<u8>(), c2 in any::<u8>(), c3 in any::<u8>(),
                      f in prop::collection::vec(0usize..3, 3), g in prop::collection::vec(0usize..3, 3)) {
        let (r1, r2, r3) = (graph(n, c1), graph(n, c2), graph(n, c3));
        let y = r1.space().clone();
        let f = SpaceMap::new(y.clone(), y.clone(), f.iter().take(n).map(|i| i % n).collect()).unwrap();
        let g = SpaceMap::new(y.clone(), y.clone(), g.iter().take(n).map(|i| i % n).collect()).unwrap();
        let fg = compose(&f, &g).unwrap();
        if check_pcont(&f, &r1, &r2).unwrap().passed() && check_pcont(&g, &r2, &r3).unwrap().passed() {
            prop_assert!(check_pcont(&fg, &r1, &r3).unwrap().passed());
        }
    }

    #[test]
    fn every_reported_witness_is_a_real_violation(n in 1usize..=3, style in 0usize..3, seed in any::<u64>()) {
        let y = FiniteSpace::lettered(n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rel = random_table(&y, TABLE_STYLES[style], &mut rng);
        let mut report = check_class(&rel, AxiomClass::LodatoEfremovic);
        report.merge(check_kuratowski(&rel));
        for (ax, w) in report.failures() {
            prop_assert!(naive_violates(&rel, ax, w), "{} {:?}", ax, w);
        }
    }

    #[test]
    fn serde_round_trips(n in 1usize..=3, style in 0usize..3, seed in any::<u64>(), idx in 0usize..14) {
        let y = FiniteSpace::lettered(n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rel = random_table(&y, TABLE_STYLES[style], &mut rng);
        let back: ProximityRelation = serde_json::from_str(&serde_json::to_string(&rel).unwrap()).unwrap();
        prop_assert!(back.same_table(&rel));
        prop_assert_eq!(back.space(), rel.space());
        let g = group(idx);
        let gb: FiniteGroup = serde_json::from_str(&serde_json::to_string(&g).unwrap()).unwrap();
        prop_assert_eq!(gb, g);
        let probes = nearspace::enumeration::random_probes(&y, 2, 4, &mut rng);
        let pb: ProbeTable = serde_json::from_str(&serde_json::to_string(&probes).unwrap()).unwrap();
        prop_assert_eq!(pb, probes);
    }
}
