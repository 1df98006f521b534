use conditionals::events::{Partition, Universe};
use conditionals::{constituents, evaluate, is_possible, Constraints, Formula, World};

fn atom(name: &str) -> Formula {
    Formula::atom(name)
}

fn cond(a: &Formula, h: &Formula) -> Partition {
    Partition::of_conditional(a, h)
}

/// All truth assignments over `atoms`, enumerated independently of the library.
fn all_worlds(atoms: &[&str]) -> Vec<World> {
    (0..1u32 << atoms.len())
        .map(|m| World::new(atoms.iter().enumerate().map(|(i, a)| (*a, m >> i & 1 == 1))))
        .collect()
}

#[test]
fn evaluate_examples() {
    let (a, h, k) = (atom("A"), atom("H"), atom("K"));
    for w in all_worlds(&["A"]) {
        assert!(!evaluate(&(a.clone() & !a.clone()), &w).unwrap());
        assert!(evaluate(&Formula::True, &w).unwrap());
    }
    let f = (!h.clone() | a.clone()) & k.clone();
    let w = World::new([("A", true), ("H", true), ("K", true)]);
    assert!(evaluate(&f, &w).unwrap());
    for w in all_worlds(&["A", "H", "K"]) {
        let (va, vh, vk) = (
            w.get("A").unwrap(),
            w.get("H").unwrap(),
            w.get("K").unwrap(),
        );
        assert_eq!(evaluate(&f, &w).unwrap(), (!vh || va) && vk);
    }
}

#[test]
fn evaluate_reports_unknown_atoms() {
    let w = World::new([("A", true)]);
    assert!(evaluate(&atom("B"), &w).is_err());
}

#[test]
fn is_possible_examples() {
    let (a, b, k) = (atom("A"), atom("B"), atom("K"));
    assert!(!is_possible(
        &(a.clone() & !a.clone()),
        &Constraints::none()
    ));
    assert!(is_possible(
        &a,
        &Constraints::none().require(!a.clone() | b)
    ));
    let ak = a & !k;
    assert!(!is_possible(&ak, &Constraints::none().forbid(ak.clone())));
}

#[test]
fn two_independent_conditionals_have_nine_constituents() {
    let (a, b, h, k) = (atom("A"), atom("B"), atom("H"), atom("K"));
    let cs = constituents(&[cond(&a, &h), cond(&b, &k)], &Constraints::none()).unwrap();
    assert_eq!(cs.len(), 9);
    assert_eq!(cs.iter().filter(|c| c.index == 0).count(), 1);
    let last = cs.last().unwrap();
    assert_eq!(last.index, 0);
    for w in &last.worlds {
        assert!(!w.get("H").unwrap() && !w.get("K").unwrap());
    }
}

#[test]
fn independent_conditionals_give_powers_of_three() {
    for n in 1..=4 {
        let family: Vec<Partition> = (0..n)
            .map(|i| cond(&atom(&format!("E{i}")), &atom(&format!("H{i}"))))
            .collect();
        let cs = constituents(&family, &Constraints::none()).unwrap();
        assert_eq!(cs.len(), 3usize.pow(n as u32), "n = {n}");
    }
}

#[test]
fn nested_antecedent_family_has_five_constituents() {
    let (a, b, h, k) = (atom("A"), atom("B"), atom("H"), atom("K"));
    let family = [cond(&b, &k), cond(&b, &(k.clone() & (!h | a)))];
    let cs = constituents(&family, &Constraints::none()).unwrap();
    assert_eq!(cs.len(), 5);
    let zero = cs.iter().find(|c| c.index == 0).unwrap();
    let u = Universe::new(["A", "B", "H", "K"], &Constraints::none()).unwrap();
    assert!(u.equivalent(&zero.formula, &!k).unwrap());
}

#[test]
fn constituents_partition_the_possible_worlds() {
    let (a, b, c, h, k) = (atom("A"), atom("B"), atom("C"), atom("H"), atom("K"));
    let families: Vec<(Vec<Partition>, Constraints)> = vec![
        (vec![cond(&a, &h), cond(&b, &k)], Constraints::none()),
        (
            vec![
                cond(&a, &h),
                cond(&b, &k),
                cond(&c, &(h.clone() | k.clone())),
            ],
            Constraints::none(),
        ),
        (
            vec![cond(&a, &h), cond(&b, &k)],
            Constraints::none().forbid(a.clone() & !k.clone()),
        ),
        (
            vec![cond(&(a.clone() & b.clone()), &h), cond(&a, &h)],
            Constraints::none(),
        ),
    ];
    for (family, constraints) in families {
        let cs = constituents(&family, &constraints).unwrap();
        let mut atoms: Vec<String> = cs[0].worlds[0].iter().map(|(k, _)| k.to_string()).collect();
        atoms.sort();
        let names: Vec<&str> = atoms.iter().map(String::as_str).collect();
        for w in all_worlds(&names) {
            let allowed = constraints
                .formulas()
                .iter()
                .all(|f| evaluate(f, &w).unwrap());
            let hits = cs.iter().filter(|c| c.worlds.contains(&w)).count();
            assert_eq!(hits, usize::from(allowed), "world {w}");
        }
        for c in &cs {
            assert!(!c.worlds.is_empty());
            for w in &c.worlds {
                assert!(evaluate(&c.formula, w).unwrap());
            }
        }
    }
}

#[test]
fn constituent_indices_are_deterministic() {
    let (a, b, h, k) = (atom("A"), atom("B"), atom("H"), atom("K"));
    let family = [cond(&a, &h), cond(&b, &k)];
    let first = constituents(&family, &Constraints::none()).unwrap();
    let second = constituents(&family, &Constraints::none()).unwrap();
    assert_eq!(first, second);
}
