mod common;

use common::{and3, iter3, or3, value, worlds4};
use conditionals::TrivalentValue::{False as F, True as T, Void as V};
use conditionals::{
    conjoin_trivalent, disjoin_trivalent, gn_implies, iterate_trivalent, negate,
    semantically_equal, truth_value, ConditionalEvent, Constraints, Formula, TrivalentIteration,
    TrivalentKind, World,
};

fn atom(name: &str) -> Formula {
    Formula::atom(name)
}

fn ce(a: &str, h: &str) -> ConditionalEvent {
    ConditionalEvent::new(atom(a), atom(h)).unwrap()
}

#[test]
fn truth_value_examples() {
    let bk = ce("B", "K");
    let w = World::new([("B", true), ("K", true)]);
    assert_eq!(truth_value(&bk, &w).unwrap(), T);
    let w = World::new([("B", true), ("K", false)]);
    assert_eq!(truth_value(&bk, &w).unwrap(), V);
    let w = World::new([("A", false), ("H", true)]);
    assert_eq!(truth_value(&ce("A", "H"), &w).unwrap(), F);
}

#[test]
fn negation_examples() {
    let ah = ce("A", "H");
    let n = negate(&ah);
    assert_eq!(n.consequent(), &!atom("A"));
    assert_eq!(negate(&n), ah);
    let sure = ConditionalEvent::new(Formula::True, atom("H")).unwrap();
    let ns = negate(&sure);
    for w in worlds4() {
        let expected = if w.get("H").unwrap() { F } else { V };
        assert_eq!(truth_value(&ns, &w).unwrap(), expected);
    }
}

#[test]
fn goodman_nguyen_examples() {
    let none = Constraints::none();
    let ah = ce("A", "H");
    assert!(gn_implies(&ah, &ah, &none).unwrap());
    let abh = ConditionalEvent::new(atom("A") & atom("B"), atom("H")).unwrap();
    assert!(gn_implies(&abh, &ah, &none).unwrap());
    assert!(!gn_implies(&ah, &abh, &none).unwrap());
    assert!(!gn_implies(&ah, &ce("B", "K"), &none).unwrap());
}

#[test]
fn conjunctions_and_disjunctions_match_the_tables() {
    let none = Constraints::none();
    let (ah, bk) = (ce("A", "H"), ce("B", "K"));
    for kind in TrivalentKind::ALL {
        let c = conjoin_trivalent(kind, &ah, &bk, &none).unwrap();
        let d = disjoin_trivalent(kind, &ah, &bk, &none).unwrap();
        for w in worlds4() {
            let (x, y) = (value(&w, "A", "H"), value(&w, "B", "K"));
            assert_eq!(
                truth_value(&c, &w).unwrap(),
                and3(kind, x, y),
                "and_{kind:?} at {w}"
            );
            assert_eq!(
                truth_value(&d, &w).unwrap(),
                or3(kind, x, y),
                "or_{kind:?} at {w}"
            );
        }
    }
}

#[test]
fn iterations_match_the_tables() {
    let none = Constraints::none();
    let (ah, bk) = (ce("A", "H"), ce("B", "K"));
    for kind in TrivalentIteration::ALL {
        let it = iterate_trivalent(kind, &ah, &bk, &none).unwrap();
        for w in worlds4() {
            let expected = iter3(kind, value(&w, "A", "H"), value(&w, "B", "K"));
            assert_eq!(truth_value(&it, &w).unwrap(), expected, "{kind:?} at {w}");
        }
    }
}

#[test]
fn conjunction_examples() {
    let none = Constraints::none();
    let (ah, bk) = (ce("A", "H"), ce("B", "K"));
    let (a, b, h, k) = (atom("A"), atom("B"), atom("H"), atom("K"));
    let kleene = conjoin_trivalent(TrivalentKind::K, &ah, &bk, &none).unwrap();
    let expected = ConditionalEvent::new(
        a.clone() & h.clone() & b.clone() & k.clone(),
        (h.clone() & k.clone()) | (!a.clone() & h.clone()) | (!b.clone() & k.clone()),
    )
    .unwrap();
    assert!(semantically_equal(&kleene, &expected, &none).unwrap());

    let same = conjoin_trivalent(TrivalentKind::B, &ah, &ah, &none).unwrap();
    assert!(semantically_equal(&same, &ah, &none).unwrap());

    let s = conjoin_trivalent(TrivalentKind::S, &ah, &bk, &none).unwrap();
    let w = World::new([("A", true), ("H", true), ("B", false), ("K", false)]);
    assert_eq!(truth_value(&s, &w).unwrap(), T);

    let s_or = disjoin_trivalent(TrivalentKind::S, &ah, &bk, &none).unwrap();
    let w = World::new([("A", false), ("H", false), ("B", true), ("K", true)]);
    assert_eq!(truth_value(&s_or, &w).unwrap(), T);

    let b_or = disjoin_trivalent(TrivalentKind::B, &ah, &bk, &none).unwrap();
    let hk = ConditionalEvent::new(a | b, h & k).unwrap();
    assert!(semantically_equal(&b_or, &hk, &none).unwrap());
}

#[test]
fn iteration_examples() {
    let none = Constraints::none();
    let bk = ce("B", "K");
    let a = ConditionalEvent::event(atom("A"));
    let c = iterate_trivalent(TrivalentIteration::C, &a, &bk, &none).unwrap();
    let b_given_ak = ConditionalEvent::new(atom("B"), atom("A") & atom("K")).unwrap();
    assert!(semantically_equal(&c, &b_given_ak, &none).unwrap());

    let ah = ce("A", "H");
    let df = iterate_trivalent(TrivalentIteration::DF, &ah, &bk, &none).unwrap();
    let w = World::new([("A", false), ("H", true), ("B", true), ("K", true)]);
    assert_eq!(truth_value(&df, &w).unwrap(), V);

    let f = iterate_trivalent(TrivalentIteration::F, &ah, &bk, &none).unwrap();
    let w = World::new([("A", true), ("H", true), ("B", true), ("K", false)]);
    assert_eq!(truth_value(&f, &w).unwrap(), V);
}

#[test]
fn import_export_holds_for_all_three_iterations() {
    let none = Constraints::none();
    let bk = ce("B", "K");
    let a = ConditionalEvent::event(atom("A"));
    let b_given_ak = ConditionalEvent::new(atom("B"), atom("A") & atom("K")).unwrap();
    for kind in TrivalentIteration::ALL {
        let it = iterate_trivalent(kind, &a, &bk, &none).unwrap();
        assert!(
            semantically_equal(&it, &b_given_ak, &none).unwrap(),
            "{kind:?}"
        );
    }
}

#[test]
fn first_property_for_the_trivalent_iterations() {
    let none = Constraints::none();
    let (ah, bk) = (ce("A", "H"), ce("B", "K"));
    let k_and = conjoin_trivalent(TrivalentKind::K, &ah, &bk, &none).unwrap();
    for kind in [TrivalentIteration::DF, TrivalentIteration::F] {
        let lhs = iterate_trivalent(kind, &ah, &k_and, &none).unwrap();
        let rhs = iterate_trivalent(kind, &ah, &bk, &none).unwrap();
        assert!(semantically_equal(&lhs, &rhs, &none).unwrap(), "{kind:?}");
    }
    let s_and = conjoin_trivalent(TrivalentKind::S, &ah, &bk, &none).unwrap();
    let lhs = iterate_trivalent(TrivalentIteration::C, &ah, &s_and, &none).unwrap();
    let rhs = iterate_trivalent(TrivalentIteration::C, &ah, &bk, &none).unwrap();
    let w = World::new([("A", true), ("H", true), ("B", true), ("K", false)]);
    assert_eq!(truth_value(&lhs, &w).unwrap(), T);
    assert_eq!(truth_value(&rhs, &w).unwrap(), V);
}

#[test]
fn second_property_spot_checks() {
    let none = Constraints::none();
    let (ah, bk) = (ce("A", "H"), ce("B", "K"));
    let k_and = conjoin_trivalent(TrivalentKind::K, &ah, &bk, &none).unwrap();
    for kind in [TrivalentIteration::DF, TrivalentIteration::F] {
        let it = iterate_trivalent(kind, &ah, &bk, &none).unwrap();
        assert!(gn_implies(&k_and, &it, &none).unwrap(), "{kind:?}");
    }
    let s_and = conjoin_trivalent(TrivalentKind::S, &ah, &bk, &none).unwrap();
    let c = iterate_trivalent(TrivalentIteration::C, &ah, &bk, &none).unwrap();
    assert!(!gn_implies(&s_and, &c, &none).unwrap());
}

#[test]
fn impossible_antecedents_are_errors() {
    assert!(ConditionalEvent::new(atom("A"), Formula::False).is_err());
    let constraints = Constraints::none().forbid(atom("H"));
    assert!(ConditionalEvent::with_constraints(atom("A"), atom("H"), &constraints).is_err());
}
