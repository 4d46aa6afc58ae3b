use bqlab_core::fixtures;
use bqlab_core::invariant::{bracket_invariant, cocycle_invariant, counting_invariant, kauffman_jones};
use bqlab_core::search::search_brackets;
use bqlab_core::{Biquandle, BiquandleBracket, LinkDiagram, Ring, SearchSpec};

fn bracket(name: &str) -> BiquandleBracket {
    fixtures::bracket(name).unwrap().build().unwrap()
}

fn same_everywhere(a: &LinkDiagram, b: &LinkDiagram) {
    for name in fixtures::names(fixtures::FixtureKind::Bracket) {
        let br = bracket(name);
        assert!(
            bracket_invariant(a, &br).same_multiset(&bracket_invariant(b, &br)),
            "{name}: {} vs {}",
            a.to_pd(),
            b.to_pd()
        );
    }
    for name in fixtures::names(fixtures::FixtureKind::Cocycle) {
        let c = fixtures::cocycle(name).unwrap().build().unwrap();
        assert!(cocycle_invariant(a, &c).same_multiset(&cocycle_invariant(b, &c)), "{name}");
    }
}

#[test]
fn trefoil_presentations_agree() {
    let pd = fixtures::diagram("trefoil").unwrap();
    let braid = LinkDiagram::braid_closure(2, &[1, 1, 1]).unwrap();
    let stabilized = LinkDiagram::braid_closure(3, &[1, 1, 1, 2]).unwrap();
    same_everywhere(&pd, &braid);
    same_everywhere(&pd, &stabilized);
}

#[test]
fn figure_eight_presentations_agree() {
    same_everywhere(
        &fixtures::diagram("figure-eight").unwrap(),
        &fixtures::diagram("figure-eight-braid").unwrap(),
    );
}

#[test]
fn reidemeister_three() {
    let l = LinkDiagram::braid_closure(3, &[1, 2, 1, -2, 1]).unwrap();
    let r = LinkDiagram::braid_closure(3, &[2, 1, 2, -2, 1]).unwrap();
    same_everywhere(&l, &r);
    let l = LinkDiagram::braid_closure(3, &[-1, -2, -1, 2]).unwrap();
    let r = LinkDiagram::braid_closure(3, &[-2, -1, -2, 2]).unwrap();
    same_everywhere(&l, &r);
}

#[test]
fn mirror_inverts_jones_variable() {
    for name in ["trefoil", "figure-eight", "hopf-positive", "unknot-kink-negative"] {
        let d = fixtures::diagram(name).unwrap();
        assert_eq!(kauffman_jones(&d.mirror()), kauffman_jones(&d).invert_variables(), "{name}");
    }
    let t = kauffman_jones(&fixtures::diagram("trefoil").unwrap());
    assert_ne!(t, t.invert_variables(), "the trefoil is chiral");
    let f = kauffman_jones(&fixtures::diagram("figure-eight").unwrap());
    assert_eq!(f, f.invert_variables(), "the figure-eight is amphichiral");
}

#[test]
fn unknot_values_are_one() {
    let unknot = fixtures::diagram("unknot-0").unwrap();
    for name in fixtures::names(fixtures::FixtureKind::Bracket) {
        let br = bracket(name);
        let inv = bracket_invariant(&unknot, &br);
        assert_eq!(inv.len(), br.biquandle().size());
        assert!(inv.entries().iter().all(|(v, _)| v.is_one()), "{name}");
    }
}

#[test]
fn bracket_distinguishes_where_counting_cannot() {
    // Over flip2 both knots admit two colorings, but the Z_2[t]/(1+t+t^3)
    // bracket separates them.
    let b = bracket("flip2-gf8");
    let t = fixtures::diagram("trefoil").unwrap();
    let f = fixtures::diagram("figure-eight").unwrap();
    assert_eq!(counting_invariant(&t, b.biquandle()), counting_invariant(&f, b.biquandle()));
    assert!(!bracket_invariant(&t, &b).same_multiset(&bracket_invariant(&f, &b)));
}

#[test]
fn searched_brackets_are_invariant_under_rii() {
    let out = search_brackets(&SearchSpec::new(Biquandle::dihedral(3).unwrap(), Ring::modular(5).unwrap())).unwrap();
    let t = fixtures::diagram("trefoil").unwrap();
    let t2 = fixtures::diagram("trefoil-RII-variant").unwrap();
    for br in out.results.iter().step_by(7) {
        assert!(bracket_invariant(&t, br).same_multiset(&bracket_invariant(&t2, br)), "{}", br.presentation());
    }
}
