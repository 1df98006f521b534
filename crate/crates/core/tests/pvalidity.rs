use conditionals::propagation::StandardPair;
use conditionals::pvalidity::{
    evaluate, iterated_with_context, lewis_triviality_demo, p_consistent_in, p_entails_in,
};
use conditionals::rational::qi;
use conditionals::{
    check_inference, indicator, is_coherent, negate, p_consistent, p_entails, ConditionalEvent,
    Constraints, Crq, Error, Formula, Operator, Param, Property, Rule, SearchOptions,
};

fn atom(name: &str) -> Formula {
    Formula::atom(name)
}

fn event(f: Formula, p: &str) -> Crq {
    let none = Constraints::none();
    indicator(&ConditionalEvent::event(f), &Param::probability(p), &none).unwrap()
}

fn cond(a: &str, h: &str, p: &str) -> Crq {
    let none = Constraints::none();
    let ce = ConditionalEvent::new(atom(a), atom(h)).unwrap();
    indicator(&ce, &Param::probability(p), &none).unwrap()
}

#[test]
fn p_consistency_examples() {
    let none = Constraints::none();
    let sp = StandardPair::new();
    let mu = Param::prevision("mu");
    let (gs, context) = iterated_with_context(Operator::Gs, &sp, &mu).unwrap();
    assert!(p_consistent_in(&context, &[sp.ah_crq(), gs]).unwrap());
    let not_ah = indicator(&negate(&sp.ah), &Param::probability("w"), &none).unwrap();
    assert!(!p_consistent(&[sp.ah_crq(), not_ah], &none).unwrap());
    assert!(p_consistent(&[sp.ah_crq(), sp.bk_crq()], &none).unwrap());
}

#[test]
fn values_outside_the_unit_interval_are_rejected() {
    let sp = StandardPair::new();
    let mu = Param::prevision("mu");
    for op in [Operator::B, Operator::S] {
        let (it, context) = iterated_with_context(op, &sp, &mu).unwrap();
        let r = p_consistent_in(&context, &[sp.ah_crq(), it]);
        assert!(matches!(r, Err(Error::ValuesOutsideUnit(_))), "{op:?}");
        assert!(matches!(
            check_inference(Rule::ModusPonens, op),
            Err(Error::UnsupportedKind(_))
        ));
    }
}

#[test]
fn p_entailment_examples() {
    let none = Constraints::none();
    let premises = [event(atom("A"), "a"), cond("B", "A", "b_a")];
    let e = p_entails(&premises, &event(atom("B"), "b"), &none).unwrap();
    assert!(e.holds);
    assert!(e.interval.is_point(&qi(1)));
    assert!(e.counterexample.is_none());

    let sp = StandardPair::new();
    let mu = Param::prevision("mu");
    let opts = SearchOptions::default();
    let (gs, context) = iterated_with_context(Operator::Gs, &sp, &mu).unwrap();
    let e = p_entails_in(&context, &[sp.ah_crq(), gs], &sp.bk_crq(), &opts).unwrap();
    assert!(e.holds);

    let (c, context) = iterated_with_context(Operator::C, &sp, &mu).unwrap();
    let e = p_entails_in(&context, &[sp.ah_crq(), c], &sp.bk_crq(), &opts).unwrap();
    assert!(!e.holds);
    let counter = e.counterexample.expect("counterexample");
    assert!(is_coherent(&counter).unwrap());
    let values: Vec<_> = (0..counter.family().len())
        .map(|i| counter.prevision_of(i).unwrap())
        .collect();
    assert_eq!(values, vec![qi(1), qi(1), qi(0)]);
}

#[test]
fn entailment_requires_p_consistent_premises() {
    let none = Constraints::none();
    let premises = [event(atom("A"), "a"), event(!atom("A"), "na")];
    let r = p_entails(&premises, &event(atom("B"), "b"), &none);
    assert!(matches!(r, Err(Error::NotPConsistent)));
}

#[test]
fn adding_premises_keeps_entailments() {
    let none = Constraints::none();
    let base = vec![event(atom("A"), "a"), cond("B", "A", "b_a")];
    let conclusion = event(atom("B"), "b");
    assert!(p_entails(&base, &conclusion, &none).unwrap().holds);
    for extra in [
        cond("C", "D", "c_d"),
        event(atom("C"), "c"),
        cond("B", "C", "b_c"),
    ] {
        let mut more = base.clone();
        more.push(extra);
        assert!(p_entails(&more, &conclusion, &none).unwrap().holds);
    }
    let sp = StandardPair::new();
    let mu = Param::prevision("mu");
    let opts = SearchOptions::default();
    for op in [Operator::K, Operator::L, Operator::Gs] {
        let (it, context) = iterated_with_context(op, &sp, &mu).unwrap();
        let extra = cond("C", "D", "c_d");
        let e = p_entails_in(&context, &[sp.ah_crq(), it, extra], &sp.bk_crq(), &opts).unwrap();
        assert!(e.holds, "{op:?}");
    }
}

#[test]
fn inference_verdicts() {
    for op in [
        Operator::C,
        Operator::DF,
        Operator::F,
        Operator::K,
        Operator::L,
        Operator::Gs,
    ] {
        let mp = check_inference(Rule::ModusPonens, op).unwrap();
        let expected = matches!(op, Operator::K | Operator::L | Operator::Gs);
        assert_eq!(mp.holds, expected, "MP {op:?}: {}", mp.note);
        assert_eq!(mp.counterexample.is_some(), !expected);
        let centering = check_inference(Rule::Centering, op).unwrap();
        assert_eq!(
            centering.holds,
            op == Operator::Gs,
            "centering {op:?}: {}",
            centering.note
        );
        for v in [&mp, &centering] {
            if let Some(c) = &v.counterexample {
                assert!(is_coherent(c).unwrap());
            }
        }
    }
}

#[test]
fn centering_for_k_allows_zero() {
    let v = check_inference(Rule::Centering, Operator::K).unwrap();
    let c = v.counterexample.unwrap();
    let n = c.family().len();
    assert_eq!(c.prevision_of(n - 1).unwrap(), qi(0));
}

#[test]
fn table_rows_for_three_operators() {
    let expect = |op: Operator, row: [bool; 5]| {
        for (property, want) in Property::TABLE.into_iter().zip(row) {
            let v = evaluate(property, op).unwrap();
            assert_eq!(v.holds, want, "{op:?} {property}: {}", v.note);
            if let Some(c) = &v.counterexample {
                assert!(is_coherent(c).unwrap());
            }
        }
    };
    expect(Operator::DF, [false, true, true, false, false]);
    expect(Operator::Gs, [true, true, true, true, true]);
    expect(Operator::C, [false, false, false, false, false]);
}

#[test]
fn import_export_triviality_demonstration() {
    let demo = lewis_triviality_demo().unwrap();
    assert!(demo.import_export);
    assert!(!demo.contradictions().is_empty());
    for row in demo.contradictions() {
        assert_ne!(row.p_c_given_a, row.p_c);
    }
}
