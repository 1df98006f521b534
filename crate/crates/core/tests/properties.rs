mod common;

use common::{and3, iter3, not3, or3, worlds, Small};
use conditionals::dsl::{parse, Ast, CompoundOp, Connective};
use conditionals::rational::{fmt_q, parse_rational, q};
use conditionals::TrivalentValue::{self, False as F, True as T, Void as V};
use conditionals::{
    conjoin_trivalent, disjoin_trivalent, is_possible, iterate_trivalent, negate,
    semantically_equal, truth_value, ConditionalEvent, Constraints, Error, Operator,
    TrivalentIteration, TrivalentKind, World,
};
use proptest::prelude::*;

const ATOMS: [&str; 4] = ["E0", "E1", "E2", "E3"];

fn all_worlds() -> Vec<World> {
    worlds(&ATOMS)
}

fn mask_of(w: &World) -> u32 {
    ATOMS
        .iter()
        .enumerate()
        .map(|(i, a)| (w.get(a).unwrap() as u32) << i)
        .sum()
}

fn small() -> impl Strategy<Value = Small> {
    let leaf = (0..4usize, any::<bool>()).prop_map(|(i, pos)| Small::Lit(i, pos));
    leaf.prop_recursive(3, 8, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Small::And(Box::new(a), Box::new(b))),
            (inner.clone(), inner).prop_map(|(a, b)| Small::Or(Box::new(a), Box::new(b))),
        ]
    })
}

/// A conditional event with a satisfiable antecedent, with its oracle truth table.
fn conditional() -> impl Strategy<Value = (ConditionalEvent, Vec<TrivalentValue>)> {
    (small(), small())
        .prop_filter("antecedent must be satisfiable", |(_, h)| {
            (0..16).any(|m| h.eval(m))
        })
        .prop_map(|(a, h)| {
            let ce = ConditionalEvent::new(a.formula(), h.formula()).unwrap();
            let table = (0..16u32)
                .map(|m| match (h.eval(m), a.eval(m)) {
                    (false, _) => V,
                    (true, true) => T,
                    (true, false) => F,
                })
                .collect();
            (ce, table)
        })
}

/// Truth values of a compound in every world, indexed by the world's bit mask.
/// A compound whose antecedent is impossible is void everywhere.
fn table_of(result: conditionals::Result<ConditionalEvent>) -> Vec<TrivalentValue> {
    let mut out = vec![V; 16];
    match result {
        Ok(ce) => {
            for w in all_worlds() {
                out[mask_of(&w) as usize] = truth_value(&ce, &w).unwrap();
            }
        }
        Err(Error::ImpossibleAntecedent(_)) => {}
        Err(e) => panic!("unexpected error {e}"),
    }
    out
}

fn pointwise(
    f: impl Fn(TrivalentValue, TrivalentValue) -> TrivalentValue,
    x: &[TrivalentValue],
    y: &[TrivalentValue],
) -> Vec<TrivalentValue> {
    x.iter().zip(y).map(|(a, b)| f(*a, *b)).collect()
}

fn kind() -> impl Strategy<Value = TrivalentKind> {
    prop::sample::select(TrivalentKind::ALL.to_vec())
}

fn iteration() -> impl Strategy<Value = TrivalentIteration> {
    prop::sample::select(vec![
        TrivalentIteration::C,
        TrivalentIteration::DF,
        TrivalentIteration::F,
    ])
}

fn event_ast() -> impl Strategy<Value = Ast> {
    let leaf = prop_oneof![
        8 => prop::sample::select(vec!["A", "B", "H", "K", "rain", "x_1"])
            .prop_map(|s| Ast::Atom(s.to_string())),
        1 => Just(Ast::True),
        1 => Just(Ast::False),
    ];
    leaf.prop_recursive(3, 10, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| Ast::Not(Box::new(e))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Ast::And(Box::new(a), Box::new(b))),
            (inner.clone(), inner).prop_map(|(a, b)| Ast::Or(Box::new(a), Box::new(b))),
        ]
    })
}

fn compound_op() -> impl Strategy<Value = CompoundOp> {
    let connective = prop::sample::select(Connective::ALL.to_vec());
    let operator = prop::sample::select(vec![
        Operator::C,
        Operator::DF,
        Operator::F,
        Operator::K,
        Operator::L,
        Operator::B,
        Operator::S,
        Operator::Gs,
    ]);
    prop_oneof![
        connective.clone().prop_map(CompoundOp::And),
        connective.prop_map(CompoundOp::Or),
        operator.prop_map(CompoundOp::Iter),
    ]
}

fn object_ast() -> impl Strategy<Value = Ast> {
    let leaf = prop_oneof![
        event_ast(),
        (event_ast(), event_ast()).prop_map(|(a, h)| Ast::Cond(Box::new(a), Box::new(h))),
    ];
    leaf.prop_recursive(3, 8, 2, |inner| {
        (compound_op(), inner.clone(), inner)
            .prop_map(|(op, l, r)| Ast::Compound(op, Box::new(l), Box::new(r)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn compounds_agree_with_the_oracle_tables(
        (x, tx) in conditional(), (y, ty) in conditional(), k in kind(), it in iteration()
    ) {
        let none = Constraints::none();
        let and = table_of(conjoin_trivalent(k, &x, &y, &none));
        prop_assert_eq!(and, pointwise(|a, b| and3(k, a, b), &tx, &ty));
        let or = table_of(disjoin_trivalent(k, &x, &y, &none));
        prop_assert_eq!(or, pointwise(|a, b| or3(k, a, b), &tx, &ty));
        let iterated = table_of(iterate_trivalent(it, &x, &y, &none));
        prop_assert_eq!(iterated, pointwise(|a, b| iter3(it, a, b), &tx, &ty));
    }

    #[test]
    fn conjunction_and_disjunction_commute(
        (x, _) in conditional(), (y, _) in conditional(), k in kind()
    ) {
        let none = Constraints::none();
        prop_assert_eq!(
            table_of(conjoin_trivalent(k, &x, &y, &none)),
            table_of(conjoin_trivalent(k, &y, &x, &none))
        );
        prop_assert_eq!(
            table_of(disjoin_trivalent(k, &x, &y, &none)),
            table_of(disjoin_trivalent(k, &y, &x, &none))
        );
    }

    #[test]
    fn conjunction_and_disjunction_associate(
        (x, _) in conditional(), (y, _) in conditional(), (z, _) in conditional(), k in kind()
    ) {
        let none = Constraints::none();
        for compose in [conjoin_trivalent, disjoin_trivalent] {
            // A void-everywhere intermediate is not a conditional event, so it cannot be nested.
            let (Ok(xy), Ok(yz)) = (compose(k, &x, &y, &none), compose(k, &y, &z, &none)) else {
                continue;
            };
            let left = table_of(compose(k, &xy, &z, &none));
            let right = table_of(compose(k, &x, &yz, &none));
            prop_assert_eq!(left, right);
        }
    }

    #[test]
    fn de_morgan_laws_hold(
        (x, tx) in conditional(), (y, ty) in conditional(), k in kind()
    ) {
        let none = Constraints::none();
        let (nx, ny) = (negate(&x), negate(&y));
        let not_and: Vec<_> = table_of(conjoin_trivalent(k, &x, &y, &none)).into_iter().map(not3).collect();
        prop_assert_eq!(not_and, table_of(disjoin_trivalent(k, &nx, &ny, &none)));
        let not_or: Vec<_> = table_of(disjoin_trivalent(k, &x, &y, &none)).into_iter().map(not3).collect();
        prop_assert_eq!(not_or, table_of(conjoin_trivalent(k, &nx, &ny, &none)));
        if let (Ok(a), Ok(b)) = (conjoin_trivalent(k, &x, &y, &none), disjoin_trivalent(k, &nx, &ny, &none)) {
            prop_assert!(semantically_equal(&negate(&a), &b, &none).unwrap());
        }
        let negated: Vec<_> = tx.iter().map(|v| not3(*v)).collect();
        prop_assert_eq!(table_of(Ok(nx)), negated);
        prop_assert_eq!(table_of(Ok(negate(&negate(&y)))), ty);
    }

    #[test]
    fn is_possible_matches_enumeration(f in small(), required in prop::collection::vec(small(), 0..3)) {
        let constraints = required
            .iter()
            .fold(Constraints::none(), |c, r| c.require(r.formula()));
        let expected = (0..16u32).any(|m| f.eval(m) && required.iter().all(|r| r.eval(m)));
        prop_assert_eq!(is_possible(&f.formula(), &constraints), expected);
    }

    #[test]
    fn rationals_round_trip(n in -10_000i64..10_000, d in 1i64..10_000) {
        let v = q(n, d);
        prop_assert_eq!(parse_rational(&fmt_q(&v)).unwrap(), v);
    }

    #[test]
    fn decimals_parse_exactly(n in 0i64..1_000_000, places in 0u32..6, negative in any::<bool>()) {
        let scale = 10i64.pow(places);
        let digits = format!("{:0width$}", n, width = places as usize + 1);
        let (int_part, frac_part) = digits.split_at(digits.len() - places as usize);
        let sign = if negative { "-" } else { "" };
        let text = if places == 0 {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac_part}")
        };
        let expected = if negative { -q(n, scale) } else { q(n, scale) };
        prop_assert_eq!(parse_rational(&text).unwrap(), expected);
    }

    #[test]
    fn printed_expressions_parse_back(ast in object_ast()) {
        let text = ast.to_string();
        prop_assert_eq!(parse(&text).unwrap(), ast, "{}", text);
    }
}
