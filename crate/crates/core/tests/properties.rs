use proptest::prelude::*;

use shortcycles::graph::{
    check_rainbow_cycle, text, validate_cycle, validate_rainbow_cycle, Digraph, RainbowStep,
    Rational,
};
use shortcycles::harness::{random_rainbow_instance, RainbowMode};
use shortcycles::oracles::{
    deg2_short_cycle, enumerate_cycles, girth, shortest_rainbow_cycle_exact,
    two_cycles_min_intersection,
};
use shortcycles::peeling::{peel, phi, psi, removable_vertices, removal_side_sums};
use shortcycles::rainbow::{
    build_greedy_subgraph, check_diameter_claim, contract, find_rainbow_cycle_traced,
    rainbow_bound,
};

fn digraph(max_n: usize) -> impl Strategy<Value = Digraph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1)).prop_map(move |bits| {
            let arcs = (0..n)
                .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
                .zip(bits)
                .filter(|(_, b)| *b)
                .map(|(a, _)| a);
            Digraph::from_arcs(n, arcs).unwrap()
        })
    })
}

/// Adds an arc `v → v+1` at every sink.
fn sinkless(max_n: usize) -> impl Strategy<Value = Digraph> {
    digraph(max_n)
        .prop_filter("needs two vertices", |d| d.n() >= 2)
        .prop_map(|d| {
            let n = d.n();
            let mut arcs = d.arcs().to_vec();
            arcs.extend(d.sinks().map(|v| (v, (v + 1) % n)));
            Digraph::from_arcs(n, arcs).unwrap()
        })
}

/// Every vertex picks one or two out-neighbours.
fn one_or_two(max_n: usize) -> impl Strategy<Value = Digraph> {
    (2..=max_n).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n, any::<bool>()), n).prop_map(move |picks| {
            let mut arcs = Vec::new();
            for (v, &(a, b, two)) in picks.iter().enumerate() {
                let first = if a == v { (a + 1) % n } else { a };
                arcs.push((v, first));
                if two && b != v && b != first {
                    arcs.push((v, b));
                }
            }
            Digraph::from_arcs(n, arcs).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn bfs_girth_matches_enumeration(d in digraph(7)) {
        let by_enumeration = enumerate_cycles(&d, d.n()).unwrap().iter().map(Vec::len).min();
        prop_assert_eq!(girth(&d), by_enumeration);
    }

    #[test]
    fn side_sums_equal_phi(d in sinkless(8)) {
        let (l, r) = removal_side_sums(&d);
        prop_assert_eq!(&l, &phi(&d));
        prop_assert_eq!(&r, &phi(&d));
    }

    #[test]
    fn each_sink_drops_one_from_the_right_sum(d in digraph(8)) {
        let (l, r) = removal_side_sums(&d);
        prop_assert_eq!(&l, &phi(&d));
        prop_assert_eq!(r + Rational::from(d.sinks().count()), phi(&d));
    }

    #[test]
    fn removable_means_phi_does_not_grow(d in digraph(7)) {
        let before = phi(&d);
        let removable = removable_vertices(&d);
        for v in 0..d.n() {
            let (rest, _) = d.remove_vertex(v);
            let after = phi(&rest);
            prop_assert_eq!(removable.contains(&v), after <= before, "vertex {}", v);
        }
    }

    #[test]
    fn peeling_certificate_within_two_phi(d in sinkless(8)) {
        let trace = peel(&d).unwrap();
        prop_assert!(trace.check(&d).is_ok());
        let cert = trace.certificate();
        prop_assert!(validate_cycle(&d, &cert));
        let g = girth(&d).unwrap();
        prop_assert!(cert.len() >= g);
        prop_assert!(Rational::from(g) <= phi(&d) * Rational::from(2u64));
        prop_assert!(Rational::from(g) < psi(&d).unwrap() * Rational::from(2u64));
    }

    #[test]
    fn two_cycles_meet_in_at_most_p_plus_one(d in one_or_two(7)) {
        let pair = two_cycles_min_intersection(&d).unwrap();
        prop_assert!(pair.in_hypothesis);
        prop_assert!(pair.intersection.len() <= pair.p + 1);
        let cert = deg2_short_cycle(&d).unwrap();
        prop_assert!(validate_cycle(&d, &cert));
        prop_assert!(girth(&d).unwrap() <= (d.n() + pair.p).div_ceil(2));
    }

    #[test]
    fn digraph_text_and_json_round_trip(d in digraph(6)) {
        prop_assert_eq!(&text::parse_digraph(&text::write_digraph(&d)).unwrap(), &d);
        let json = serde_json::to_string(&d).unwrap();
        prop_assert_eq!(&serde_json::from_str::<Digraph>(&json).unwrap(), &d);
    }
}

fn rainbow_params() -> impl Strategy<Value = (usize, usize, u64, bool)> {
    (3usize..=9).prop_flat_map(|n| (Just(n), 0..=n, any::<u64>(), any::<bool>()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rainbow_cycle_is_valid_short_and_not_below_optimum((n, p, seed, disjoint) in rainbow_params()) {
        let mode = if disjoint { RainbowMode::Disjoint } else { RainbowMode::Unconstrained };
        let Ok(inst) = random_rainbow_instance(n, p, seed, mode) else {
            return Ok(());
        };
        let (cert, trace) = find_rainbow_cycle_traced(&inst).unwrap();
        prop_assert!(validate_rainbow_cycle(&inst, &cert));
        prop_assert!(cert.len() <= rainbow_bound(n, inst.p()));
        let best = shortest_rainbow_cycle_exact(&inst).unwrap().unwrap();
        prop_assert!(best.len() <= cert.len());
        for h in trace.structures() {
            prop_assert!(check_diameter_claim(h).is_ok());
        }
        prop_assert_eq!(text::parse_rainbow(&text::write_rainbow(&inst)).unwrap(), inst);
    }

    #[test]
    fn contraction_arithmetic((n, p, seed) in (3usize..=9).prop_flat_map(|n| (Just(n), 1..=n, any::<u64>()))) {
        let Ok(inst) = random_rainbow_instance(n, p, seed, RainbowMode::Disjoint) else {
            return Ok(());
        };
        let seed_family = (0..n).find(|&i| inst.family(i).len() == 1).unwrap();
        let h = build_greedy_subgraph(&inst, seed_family).unwrap();
        let (g, map) = contract(&inst, &h);
        prop_assert_eq!(g.n(), n - h.t() - 1);
        prop_assert_eq!(g.m(), n - h.t() - 1);
        prop_assert_eq!(g.p() + 1, inst.p());
        prop_assert_eq!(h.vertices.len(), h.t() + 2);
        for &v in &h.vertices {
            prop_assert!(map.in_h(v));
        }
    }

    #[test]
    fn recoloured_certificates_are_rejected((n, p, seed) in (4usize..=8).prop_flat_map(|n| (Just(n), 0..=n, any::<u64>()))) {
        let Ok(inst) = random_rainbow_instance(n, p, seed, RainbowMode::Unconstrained) else {
            return Ok(());
        };
        let (cert, _) = find_rainbow_cycle_traced(&inst).unwrap();
        for i in 0..cert.steps.len() {
            for c in 0..inst.m() {
                if c == cert.steps[i].color {
                    continue;
                }
                let mut bad = cert.clone();
                bad.steps[i] = RainbowStep { edge: cert.steps[i].edge, color: c };
                let repeats = cert.steps.iter().any(|s| s.color == c);
                if repeats || !inst.family(c).contains(&cert.steps[i].edge) {
                    prop_assert!(check_rainbow_cycle(&inst, &bad).is_err());
                }
            }
        }
    }
}
