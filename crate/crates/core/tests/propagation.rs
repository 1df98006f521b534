use conditionals::propagation::{bayes_swapped_interval, bound_family, unit_grid, StandardPair};
use conditionals::rational::{q, qi};
use conditionals::{
    closed_form_bounds, extension_interval, is_coherent, verify_bounds_match, Assessment,
    BoundKind, Constraints, Error, ExtensionInterval, Param, SearchOptions, StructuralKind, Q,
};

fn closed(lo: Q, hi: Q) -> ExtensionInterval {
    ExtensionInterval::closed(lo, hi)
}

fn search(kind: BoundKind, x: &Q, y: &Q) -> ExtensionInterval {
    let (a, _) = bound_family(kind, x, y).unwrap();
    extension_interval(&a, &SearchOptions::default()).unwrap()
}

#[test]
fn extension_examples() {
    let half = q(1, 2);
    let found = search(BoundKind::IterC, &half, &half);
    assert_eq!(
        (found.lower.clone(), found.upper.clone()),
        (q(1, 4), Some(q(1, 2)))
    );
    assert!(found.lower_attained && found.upper_attained);
    let found = search(BoundKind::IterDF, &qi(1), &qi(1));
    assert_eq!((found.lower, found.upper), (qi(0), Some(qi(1))));
    let found = search(BoundKind::IterS, &qi(0), &half);
    assert_eq!(found.lower, qi(0));
    assert_eq!(found.upper, None);
}

#[test]
fn closed_form_examples() {
    let s = closed_form_bounds(BoundKind::ConjS, &q(7, 10), &q(3, 5)).unwrap();
    assert_eq!(s, closed(q(3, 10), q(23, 29)));
    let f = closed_form_bounds(BoundKind::IterF, &q(1, 2), &q(1, 2)).unwrap();
    assert_eq!(f.upper, Some(q(1, 3)));
    let b = closed_form_bounds(BoundKind::IterB, &q(1, 2), &q(1, 3)).unwrap();
    assert_eq!(b.upper, Some(qi(2)));
    for y in [qi(0), q(1, 3), qi(1)] {
        let gs = closed_form_bounds(BoundKind::IterGs, &qi(1), &y).unwrap();
        assert_eq!(gs, closed(y.clone(), y));
    }
    let frechet = closed_form_bounds(BoundKind::ConjGs, &q(3, 4), &q(1, 2)).unwrap();
    assert_eq!(frechet, closed(q(1, 4), q(1, 2)));
    let plain = closed_form_bounds(BoundKind::PlainConditional, &q(1, 2), &q(3, 4)).unwrap();
    assert_eq!(plain, closed(q(1, 2), qi(1)));
}

#[test]
fn closed_forms_reject_points_outside_the_square() {
    let r = closed_form_bounds(BoundKind::IterK, &q(3, 2), &q(1, 2));
    assert!(matches!(r, Err(Error::OutOfDomain(_))));
}

#[test]
fn search_matches_closed_forms_on_a_small_grid() {
    let tol = q(1, 1_000_000);
    let opts = SearchOptions::default();
    for kind in [BoundKind::ConjGs, BoundKind::IterC, BoundKind::IterK] {
        let report = verify_bounds_match(kind, &unit_grid(3), &tol, &opts).unwrap();
        assert_eq!(report.rows.len(), 9);
        assert!(
            report.failures().is_empty(),
            "{kind:?}: {:?}",
            report.failures()
        );
    }
    let positive: Vec<(Q, Q)> = unit_grid(5)
        .into_iter()
        .filter(|(x, _)| x > &qi(0))
        .collect();
    let report = verify_bounds_match(BoundKind::PlainConditional, &positive, &tol, &opts).unwrap();
    assert!(report.failures().is_empty());
}

#[test]
fn coherent_values_form_an_interval() {
    let points = [(q(1, 2), q(1, 4)), (q(3, 4), q(3, 4)), (qi(1), q(1, 2))];
    for kind in [
        BoundKind::IterB,
        BoundKind::IterS,
        BoundKind::ConjS,
        BoundKind::IterF,
    ] {
        for (x, y) in &points {
            let (mut a, target) = bound_family(kind, x, y).unwrap();
            let pattern: Vec<bool> = (0..50)
                .map(|i| {
                    a.set(&target, q(i, 20));
                    is_coherent(&a).unwrap()
                })
                .collect();
            let switches = pattern.windows(2).filter(|w| w[0] != w[1]).count();
            let starts_inside = pattern[0];
            assert!(
                switches <= 1 || (switches == 2 && !starts_inside),
                "{kind:?} at ({x}, {y}): {pattern:?}"
            );
        }
    }
}

#[test]
fn closed_form_endpoints_are_coherent() {
    for kind in BoundKind::ALL {
        for (x, y) in unit_grid(3) {
            if kind == BoundKind::PlainConditional && x == qi(0) {
                continue;
            }
            let interval = closed_form_bounds(kind, &x, &y).unwrap();
            let (mut a, target) = bound_family(kind, &x, &y).unwrap();
            let mut ends = vec![interval.lower.clone()];
            ends.extend(interval.upper.clone());
            for v in ends {
                a.set(&target, v.clone());
                assert!(is_coherent(&a).unwrap(), "{kind:?} at ({x}, {y}) value {v}");
            }
        }
    }
}

#[test]
fn only_gs_agrees_with_the_plain_conditional() {
    let grid: Vec<(Q, Q)> = unit_grid(5)
        .into_iter()
        .filter(|(x, _)| x > &qi(0))
        .collect();
    let plain = |x: &Q, y: &Q| closed_form_bounds(BoundKind::PlainConditional, x, y).unwrap();
    for kind in [
        BoundKind::IterK,
        BoundKind::IterL,
        BoundKind::IterB,
        BoundKind::IterS,
        BoundKind::IterGs,
    ] {
        let agrees = grid
            .iter()
            .all(|(x, y)| closed_form_bounds(kind, x, y).unwrap() == plain(x, y));
        assert_eq!(agrees, kind == BoundKind::IterGs, "{kind:?}");
    }
    let k = closed_form_bounds(BoundKind::IterK, &qi(1), &qi(1)).unwrap();
    assert_eq!(k.lower, qi(0));
    assert_eq!(plain(&qi(1), &qi(1)).lower, qi(1));
    let found = search(BoundKind::IterK, &qi(1), &qi(1));
    assert_eq!(found.lower, qi(0));
}

#[test]
fn swapped_prevision_is_forced() {
    let opts = SearchOptions::default();
    for kind in StructuralKind::ALL {
        for (x, y, mu) in [(q(1, 2), q(3, 4), q(1, 2)), (q(3, 4), q(1, 2), q(1, 3))] {
            let interval = bayes_swapped_interval(kind, &x, &y, &mu, &opts).unwrap();
            assert!(interval.is_point(&(&mu * &x / &y)), "{kind:?}: {interval}");
        }
    }
}

#[test]
fn search_errors() {
    let sp = StandardPair::new();
    let (z, mu) = (Param::probability("z"), Param::prevision("mu"));
    let two_free = Assessment::new(Constraints::none())
        .with(sp.ah_crq(), q(1, 2))
        .with_target(sp.gs_conjunction(&z).unwrap())
        .with_target(sp.iterated(StructuralKind::K, &mu).unwrap());
    assert!(matches!(
        extension_interval(&two_free, &SearchOptions::default()),
        Err(Error::MultipleUnbound(_))
    ));
    let incoherent = Assessment::new(Constraints::none())
        .with(sp.ah_crq(), q(3, 2))
        .with(sp.bk_crq(), q(1, 2))
        .with_target(sp.gs_conjunction(&z).unwrap());
    assert!(matches!(
        extension_interval(&incoherent, &SearchOptions::default()),
        Err(Error::BaseIncoherent)
    ));
}
