use std::sync::OnceLock;

use proptest::prelude::*;

use bqlab_core::fixtures;
use bqlab_core::invariant::{bracket_invariant, cocycle_invariant, counting_invariant, kauffman_jones};
use bqlab_core::json;
use bqlab_core::search::search_brackets;
use bqlab_core::{Biquandle, BiquandleBracket, Coloring, LinkDiagram, Ring, RingElement, SearchSpec};

fn flip2_z5() -> &'static [BiquandleBracket] {
    static CACHE: OnceLock<Vec<BiquandleBracket>> = OnceLock::new();
    CACHE.get_or_init(|| {
        search_brackets(&SearchSpec::new(Biquandle::flip2(), Ring::modular(5).unwrap()))
            .unwrap()
            .results
    })
}

fn braid_word(strands: i32, max_len: usize) -> impl Strategy<Value = Vec<i32>> {
    prop::collection::vec((1..strands, any::<bool>()), 1..=max_len)
        .prop_map(|v| v.into_iter().map(|(g, s)| if s { g } else { -g }).collect())
}

fn laurent() -> Ring {
    Ring::laurent(&["s", "t"]).unwrap()
}

fn laurent_element() -> impl Strategy<Value = RingElement> {
    prop::collection::vec((-3i64..=3, -2i64..=2, -2i64..=2), 0..4).prop_map(|terms| {
        laurent()
            .laurent_from_terms(terms.into_iter().map(|(k, a, b)| (vec![a, b], k)))
            .unwrap()
    })
}

fn finite_ring() -> impl Strategy<Value = Ring> {
    prop_oneof![
        (2u64..40).prop_map(|n| Ring::modular(n).unwrap()),
        Just(fixtures::gf8()),
        Just(Ring::quotient(3, &[2, 1, 1]).unwrap()),
        Just(Ring::quotient(4, &[1, 0, 1]).unwrap()),
    ]
}

fn finite_triple() -> impl Strategy<Value = (RingElement, RingElement, RingElement)> {
    finite_ring().prop_flat_map(|r| {
        let size = r.size().unwrap();
        (0..size, 0..size, 0..size).prop_map(move |(a, b, c)| {
            (r.element_at(a).unwrap(), r.element_at(b).unwrap(), r.element_at(c).unwrap())
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn finite_ring_laws((a, b, c) in finite_triple()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if let Some(ai) = a.inverse() {
            prop_assert!((&a * &ai).is_one());
        }
        prop_assert_eq!(a.ring().element_at(a.index().unwrap()).unwrap(), a.clone());
    }

    #[test]
    fn laurent_ring_laws(a in laurent_element(), b in laurent_element(), c in laurent_element()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(a.invert_variables().invert_variables(), a.clone());
        prop_assert_eq!((&a * &b).invert_variables(), &a.invert_variables() * &b.invert_variables());
    }

    #[test]
    fn elements_round_trip_through_json((a, _, _) in finite_triple(), l in laurent_element()) {
        for x in [a, l] {
            let v = json::element_to_json(&x);
            prop_assert_eq!(json::element_from_json(x.ring(), &v).unwrap(), x.clone());
            let r = json::ring_from_json(&json::ring_to_json(x.ring())).unwrap();
            prop_assert_eq!(&r, x.ring());
        }
    }

    #[test]
    fn scaling_leaves_invariant_unchanged(
        idx in 0usize..256,
        unit in 1u64..5,
        word in braid_word(3, 6),
    ) {
        let br = &flip2_z5()[idx % flip2_z5().len()];
        let c = br.ring().int(unit as i64);
        let d = LinkDiagram::braid_closure(3, &word).unwrap();
        prop_assert!(bracket_invariant(&d, br).same_multiset(&bracket_invariant(&d, &br.scale(&c).unwrap())));
    }

    #[test]
    fn reidemeister_two_insertion(word in braid_word(3, 5), pos in 0usize..6, g in 1i32..3, sign in any::<bool>()) {
        let g = if sign { g } else { -g };
        let mut longer = word.clone();
        let at = pos.min(word.len());
        longer.splice(at..at, [g, -g]);
        let d = LinkDiagram::braid_closure(3, &word).unwrap();
        let e = LinkDiagram::braid_closure(3, &longer).unwrap();
        for name in ["flip2-gf8", "flip2-z7", "jones", "reflect3-z5"] {
            let br = fixtures::bracket(name).unwrap().build().unwrap();
            prop_assert!(bracket_invariant(&d, &br).same_multiset(&bracket_invariant(&e, &br)), "{}", name);
        }
        let phi = fixtures::cocycle("flip2-free2").unwrap().build().unwrap();
        prop_assert!(cocycle_invariant(&d, &phi).same_multiset(&cocycle_invariant(&e, &phi)));
    }

    #[test]
    fn conjugation_invariance(word in braid_word(3, 5), g in 1i32..3, sign in any::<bool>()) {
        let g = if sign { g } else { -g };
        let mut conj = vec![g];
        conj.extend(&word);
        conj.push(-g);
        let d = LinkDiagram::braid_closure(3, &word).unwrap();
        let e = LinkDiagram::braid_closure(3, &conj).unwrap();
        prop_assert_eq!(kauffman_jones(&d), kauffman_jones(&e));
        let br = fixtures::bracket("flip2-gf8").unwrap().build().unwrap();
        prop_assert!(bracket_invariant(&d, &br).same_multiset(&bracket_invariant(&e, &br)));
    }

    #[test]
    fn constant_bracket_is_jones(word in braid_word(3, 6)) {
        let d = LinkDiagram::braid_closure(3, &word).unwrap();
        let jones = fixtures::bracket("jones").unwrap().build().unwrap();
        prop_assert_eq!(bracket_invariant(&d, &jones).sorted_values(), vec![kauffman_jones(&d)]);
    }

    #[test]
    fn loop_counts_are_bounded(word in braid_word(4, 7)) {
        let d = LinkDiagram::braid_closure(4, &word).unwrap();
        // crossings + 1 per split piece; components (free loops included) bound the pieces
        let max = d.crossing_count() + d.component_count();
        for &l in &d.all_loop_counts() {
            prop_assert!(l >= 1 && l <= max);
        }
    }

    #[test]
    fn colorings_match_brute_force(word in braid_word(3, 4)) {
        let d = LinkDiagram::braid_closure(3, &word).unwrap();
        for b in [Biquandle::flip2(), Biquandle::dihedral(3).unwrap(), fixtures::biquandle("reflect3").unwrap()] {
            let n = b.size();
            let e = d.edges().len();
            let mut brute = 0usize;
            for code in 0..n.pow(e as u32) {
                let mut c = code;
                let edges: Vec<usize> = (0..e).map(|_| { let v = c % n; c /= n; v }).collect();
                let coloring = Coloring { edges, free: vec![0; d.free_loops()] };
                brute += d.coloring_violation(&b, &coloring).is_none() as usize;
            }
            brute *= n.pow(d.free_loops() as u32);
            prop_assert_eq!(counting_invariant(&d, &b), brute);
        }
    }

    #[test]
    fn mirror_swaps_jones(word in braid_word(3, 6)) {
        let d = LinkDiagram::braid_closure(3, &word).unwrap();
        prop_assert_eq!(kauffman_jones(&d.mirror()), kauffman_jones(&d).invert_variables());
        prop_assert_eq!(d.mirror().writhe(), -d.writhe());
    }
}
