use std::collections::BTreeSet;
use std::sync::Arc;

use edgeideal::graphs::{enumerate_graphs, Graph};
use edgeideal::groebner::{buchberger, ideal_equal, intersect_subring, membership};
use edgeideal::ideals::{build_ideal, IdealKind};
use edgeideal::resolution::{betti_table_koszul, betti_table_schreyer, BettiTable};
use edgeideal::ring::{Field, Monomial, MonomialOrder, PolyRing, PrimeField, Rationals};
use edgeideal::theorems::predicted_regularity;
use proptest::prelude::*;

const P: u64 = 32003;
const KINDS: [IdealKind; 4] = [IdealKind::Parity, IdealKind::Binomial, IdealKind::Lss, IdealKind::Permanental];

fn fp(n: usize, order: MonomialOrder) -> Arc<PolyRing<PrimeField>> {
    PolyRing::new(n, PrimeField::new(P).unwrap(), order).unwrap()
}

fn graph_from_mask(n: usize, mask: u32) -> Graph {
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
    let chosen: Vec<_> = pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &p)| p).collect();
    Graph::from_edges(n, &chosen).unwrap()
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn arb_graph(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n).prop_flat_map(|n| (0u32..1 << (n * (n - 1) / 2)).prop_map(move |m| graph_from_mask(n, m)))
}

fn arb_kind() -> impl Strategy<Value = IdealKind> {
    prop::sample::select(KINDS.to_vec())
}

/// Random small polynomial as (coefficient, exponent vector) pairs.
fn arb_terms(nvars: usize, max_deg: u8) -> impl Strategy<Value = Vec<(i64, Vec<u8>)>> {
    prop::collection::vec((-5i64..=5, prop::collection::vec(0..=max_deg, nvars)), 0..4)
        .prop_map(move |ts| ts.into_iter().filter(|(_, e)| e.iter().map(|&x| x as u32).sum::<u32>() <= max_deg as u32).collect())
}

fn poly_of(ring: &Arc<PolyRing<PrimeField>>, terms: &[(i64, Vec<u8>)]) -> edgeideal::ring::Polynomial<PrimeField> {
    let ts: Vec<(i64, Monomial)> = terms.iter().map(|(c, e)| (*c, Monomial::from_exponents(e))).collect();
    ring.from_i64_terms(&ts)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // Elements built as combinations of generators must be members under
    // both orders; a random perturbation must get the same verdict from both.
    #[test]
    fn membership_does_not_depend_on_the_order(
        g in arb_graph(2, 4),
        kind in arb_kind(),
        mults in prop::collection::vec(arb_terms(8, 2), 6),
        noise in arb_terms(8, 4),
    ) {
        let n = g.n();
        let drl = fp(n, MonomialOrder::DegRevLex);
        let lex = drl.reordered(MonomialOrder::Lex);
        let gens = build_ideal(kind, &g, &drl).unwrap();
        let gb_drl = buchberger(&gens);
        let gb_lex = buchberger(&build_ideal(kind, &g, &lex).unwrap());
        let trim = |ts: &Vec<(i64, Vec<u8>)>| -> Vec<(i64, Vec<u8>)> {
            ts.iter().map(|(c, e)| (*c, e[..2 * n].to_vec())).collect()
        };
        let mut f = drl.zero();
        for (gen, m) in gens.polys().iter().zip(mults.iter()) {
            f = f.add(&gen.mul(&poly_of(&drl, &trim(m))).unwrap()).unwrap();
        }
        prop_assert!(membership(&f, &gb_drl).unwrap());
        prop_assert!(membership(&f.embed(&lex), &gb_lex).unwrap());
        let h = f.add(&poly_of(&drl, &trim(&noise))).unwrap();
        prop_assert_eq!(membership(&h, &gb_drl).unwrap(), membership(&h.embed(&lex), &gb_lex).unwrap());
    }

    #[test]
    fn betti_tables_ignore_generator_order(g in arb_graph(2, 5), kind in arb_kind(), seed in any::<u64>()) {
        let r = fp(g.n(), MonomialOrder::DegRevLex);
        let gens = build_ideal(kind, &g, &r).unwrap();
        let mut perm: Vec<usize> = (0..gens.len()).collect();
        let mut s = seed;
        for k in (1..perm.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(k, (s >> 33) as usize % (k + 1));
        }
        let shuffled = gens.permuted(&perm);
        prop_assert_eq!(betti_table_schreyer(&gens).unwrap(), betti_table_schreyer(&shuffled).unwrap());
        prop_assert!(ideal_equal(&gens, &shuffled).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn betti_tables_ignore_the_monomial_order(g in arb_graph(2, 4), kind in arb_kind()) {
        let drl = fp(g.n(), MonomialOrder::DegRevLex);
        let lex = drl.reordered(MonomialOrder::Lex);
        let a = betti_table_schreyer(&build_ideal(kind, &g, &drl).unwrap()).unwrap();
        let b = betti_table_schreyer(&build_ideal(kind, &g, &lex).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn subring_intersection_recovers_induced_ideals() {
    for n in 2..=5 {
        for g in enumerate_graphs(n, true, true) {
            let r = fp(n, MonomialOrder::DegRevLex);
            let gens = build_ideal(IdealKind::Parity, &g, &r).unwrap();
            for mask in 1u32..(1 << n) - 1 {
                let keep: BTreeSet<usize> = (1..=n).filter(|v| mask >> (v - 1) & 1 == 1).collect();
                let inside: Vec<(usize, usize)> = g.edges().into_iter().filter(|(a, b)| keep.contains(a) && keep.contains(b)).collect();
                let h = build_ideal(IdealKind::Parity, &Graph::from_edges(n, &inside).unwrap(), &r).unwrap();
                let cut = intersect_subring(&gens, &keep).unwrap();
                assert!(ideal_equal(&cut, &h).unwrap(), "{} on {keep:?}", g.to_graph6());
            }
        }
    }
}

#[test]
fn predicted_regularity_matches_the_engine() {
    let mut seen = 0;
    for n in 1..=6 {
        for g in enumerate_graphs(n, false, true) {
            let Some(expected) = predicted_regularity(&g) else { continue };
            let r = fp(n, MonomialOrder::DegRevLex);
            let t = betti_table_schreyer(&build_ideal(IdealKind::Parity, &g, &r).unwrap()).unwrap();
            assert_eq!(t.regularity().unwrap(), expected as i64, "{}", g.to_graph6());
            seen += 1;
        }
    }
    assert!(seen > 30, "only {seen} graphs had a prediction");
}

/// Hilbert function of S/in(I) in degree d, counted monomial by monomial.
fn standard_monomials(gb: &edgeideal::groebner::GroebnerBasis<PrimeField>, nvars: usize, d: u32) -> u64 {
    fn go(gb: &edgeideal::groebner::GroebnerBasis<PrimeField>, e: &mut Vec<u8>, k: usize, left: u32, nvars: usize) -> u64 {
        if k + 1 == nvars {
            e[k] = left as u8;
            let hit = gb.is_standard(&Monomial::from_exponents(e)) as u64;
            e[k] = 0;
            return hit;
        }
        let mut total = 0;
        for a in 0..=left {
            e[k] = a as u8;
            total += go(gb, e, k + 1, left - a, nvars);
        }
        e[k] = 0;
        total
    }
    go(gb, &mut vec![0; nvars], 0, d, nvars)
}

#[test]
fn betti_numbers_reproduce_the_hilbert_function() {
    for n in 2..=4 {
        for g in enumerate_graphs(n, true, true) {
            for kind in KINDS {
                let r = fp(n, MonomialOrder::DegRevLex);
                let gens = build_ideal(kind, &g, &r).unwrap();
                let gb = buchberger(&gens);
                let t = betti_table_schreyer(&gens).unwrap();
                let v = 2 * n as u64;
                for d in 0..=8u32 {
                    let mut alt: i64 = 0;
                    for (i, j, b) in t.entries() {
                        if j <= d {
                            let sign = if i % 2 == 0 { 1 } else { -1 };
                            alt += sign * (b * binom(v - 1 + (d - j) as u64, v - 1)) as i64;
                        }
                    }
                    assert_eq!(alt, standard_monomials(&gb, 2 * n, d) as i64, "{} {kind:?} degree {d}", g.to_graph6());
                }
            }
        }
    }
}

fn tables_at<F: Field>(field: F, g: &Graph) -> Vec<(IdealKind, BettiTable)> {
    let r = PolyRing::new(g.n(), field, MonomialOrder::DegRevLex).unwrap();
    KINDS
        .iter()
        .map(|&k| {
            let gens = build_ideal(k, g, &r).unwrap();
            let s = betti_table_schreyer(&gens).unwrap();
            // the two oracles agree within each characteristic
            let j_max = s.entries().map(|(_, j, _)| j).max().unwrap_or(0);
            assert_eq!(betti_table_koszul(&gens, j_max).unwrap(), s.truncated(j_max), "{} {k:?}", g.to_graph6());
            (k, s)
        })
        .collect()
}

// Tables are recorded per characteristic; agreement across characteristics
// is reported, not assumed.
#[test]
fn tables_are_recorded_per_characteristic() {
    let mut differing = Vec::new();
    let mut compared = 0;
    for n in 2..=4 {
        for g in enumerate_graphs(n, true, true) {
            let q = tables_at(Rationals, &g);
            let p = tables_at(PrimeField::new(P).unwrap(), &g);
            let two = tables_at(PrimeField::new(2).unwrap(), &g);
            for (((kind, a), (_, b)), (_, c)) in q.iter().zip(&p).zip(&two) {
                for t in [a, b, c] {
                    assert_eq!(t.get(0, 0), 1);
                    assert_eq!(t.get(1, 2), g.edge_count() as u64);
                }
                compared += 1;
                if a != b || a != c {
                    differing.push(format!("{} {kind:?}", g.to_graph6()));
                }
            }
        }
    }
    println!("{compared} (graph, ideal) pairs; tables differing across characteristics 0/{P}/2: {differing:?}");
}

#[test]
fn odd_cycles_and_paths_give_complete_intersections() {
    let cases = [Graph::cycle(3).unwrap(), Graph::cycle(5).unwrap(), Graph::path(4).unwrap(), Graph::cycle(3).unwrap().disjoint_union(&Graph::path(3).unwrap()).unwrap()];
    for g in cases {
        let m = g.edge_count() as u64;
        let t = betti_table_schreyer(&build_ideal(IdealKind::Parity, &g, &fp(g.n(), MonomialOrder::DegRevLex)).unwrap()).unwrap();
        for (i, j, b) in t.entries() {
            assert_eq!(j, 2 * i as u32, "{}", g.to_graph6());
            assert_eq!(b, binom(m, i as u64));
        }
        assert_eq!(t.projective_dimension().unwrap() as u64, m);
    }
}
