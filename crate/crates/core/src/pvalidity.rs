//! p-consistency, p-entailment, generalized inference rules and the property suite.
//!
//! Structural iterated conditionals are always evaluated together with the
//! conjunction they are built from, whose probability is tied to `x·μ` (the compound
//! prevision identity). The bounds of every theorem about these objects are stated on
//! that joint family, and leaving the conjunction out admits assessments that cannot
//! be extended to it.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coherence::{is_coherent, Assessment};
use crate::conditional::{
    conjoin_trivalent, distinguishing_world, gn_implies, iterate_trivalent, semantically_equal,
    ConditionalEvent, TrivalentIteration, TrivalentKind,
};
use crate::crq::{
    differences, indicator, iterate_gs_family, iterate_structural, iterate_structural_free,
    values_in_unit_interval, Crq, StructuralKind,
};
use crate::error::{Error, Result};
use crate::events::{Constraints, Formula, Universe};
use crate::expr::{Binding, Expr, Param};
use crate::propagation::{
    bound_family, closed_form_bounds, extension_interval, with_tied_conjunction, BoundKind,
    ExtensionInterval, SearchOptions, StandardPair,
};
use crate::rational::{fmt_q, q, qi, Q};

/// The eight notions of iterated conditioning compared by the suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Operator {
    /// Cooper–Calabrese, paired with `∧_S`.
    C,
    /// de Finetti, paired with `∧_K`.
    DF,
    /// Farrell, paired with `∧_K`.
    F,
    /// Structural, built on `∧_K`.
    K,
    /// Structural, built on `∧_L`.
    L,
    /// Structural, built on `∧_B`.
    B,
    /// Structural, built on `∧_S`.
    S,
    /// Structural, built on `∧_gs`.
    Gs,
}

impl Operator {
    /// Every operator, in table order.
    pub const ALL: [Operator; 8] = [
        Operator::C,
        Operator::DF,
        Operator::F,
        Operator::K,
        Operator::L,
        Operator::B,
        Operator::S,
        Operator::Gs,
    ];

    /// Short name: `C`, `dF`, `F`, `K`, `L`, `B`, `S` or `gs`.
    pub fn name(self) -> &'static str {
        match self {
            Operator::C => "C",
            Operator::DF => "dF",
            Operator::F => "F",
            Operator::K => "K",
            Operator::L => "L",
            Operator::B => "B",
            Operator::S => "S",
            Operator::Gs => "gs",
        }
    }

    /// Parses a short name.
    pub fn from_name(name: &str) -> Option<Operator> {
        Operator::ALL.into_iter().find(|o| o.name() == name)
    }

    /// The trivalent iteration, for `C`, `dF` and `F`.
    pub fn iteration(self) -> Option<TrivalentIteration> {
        match self {
            Operator::C => Some(TrivalentIteration::C),
            Operator::DF => Some(TrivalentIteration::DF),
            Operator::F => Some(TrivalentIteration::F),
            _ => None,
        }
    }

    /// The structural kind, for `K`, `L`, `B`, `S` and `gs`.
    pub fn structural(self) -> Option<StructuralKind> {
        match self {
            Operator::K => Some(StructuralKind::K),
            Operator::L => Some(StructuralKind::L),
            Operator::B => Some(StructuralKind::B),
            Operator::S => Some(StructuralKind::S),
            Operator::Gs => Some(StructuralKind::Gs),
            _ => None,
        }
    }

    /// The conjunction paired with a trivalent iteration.
    pub fn paired_conjunction(self) -> Option<TrivalentKind> {
        match self {
            Operator::C => Some(TrivalentKind::S),
            Operator::DF | Operator::F => Some(TrivalentKind::K),
            _ => None,
        }
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Properties reported by the suite and the inference checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Property {
    /// The Import-Export principle fails.
    NoImportExport,
    /// `(B|K)|(A|H) = [(A|H) ∧ (B|K)]|(A|H)`.
    P1,
    /// `(A|H) ∧ (B|K) ≤ (B|K)|(A|H)`.
    P2,
    /// Coherence forces `ℙ[(A|H) ∧ (B|K)] = ℙ[(B|K)|(A|H)]·P(A|H)`.
    P3,
    /// The extension interval of the iterated conditional is the one of `B|A`.
    P4,
    /// `{A|H, (B|K)|(A|H)}` p-entails `B|K`.
    ModusPonens,
    /// `{A|H, B|K}` p-entails `(B|K)|(A|H)`.
    Centering,
}

impl Property {
    /// The five columns of the summary table.
    pub const TABLE: [Property; 5] = [
        Property::NoImportExport,
        Property::P1,
        Property::P2,
        Property::P3,
        Property::P4,
    ];

    /// Short name.
    pub fn name(self) -> &'static str {
        match self {
            Property::NoImportExport => "no-IE",
            Property::P1 => "P1",
            Property::P2 => "P2",
            Property::P3 => "P3",
            Property::P4 => "P4",
            Property::ModusPonens => "MP",
            Property::Centering => "centering",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The outcome of one property for one operator.
#[derive(Clone, Debug)]
pub struct Verdict {
    /// The property.
    pub property: Property,
    /// The operator.
    pub operator: Operator,
    /// Whether the property holds.
    pub holds: bool,
    /// A coherent assessment refuting the property, present exactly when it fails.
    pub counterexample: Option<Assessment>,
    /// A short account of how the verdict was reached.
    pub note: String,
}

/// Outcome of a p-entailment query.
#[derive(Clone, Debug)]
pub struct Entailment {
    /// Whether the conclusion is p-entailed.
    pub holds: bool,
    /// Coherent values of the conclusion with every premise at 1.
    pub interval: ExtensionInterval,
    /// A coherent assessment with premises at 1 and the conclusion below 1.
    pub counterexample: Option<Assessment>,
}

fn check_unit(crq: &Crq) -> Result<()> {
    if values_in_unit_interval(crq) {
        Ok(())
    } else {
        Err(Error::ValuesOutsideUnit(crq.label().to_string()))
    }
}

/// Whether the all-ones assessment on `family` is coherent.
pub fn p_consistent(family: &[Crq], constraints: &Constraints) -> Result<bool> {
    p_consistent_in(&Assessment::new(constraints.clone()), family)
}

/// [`p_consistent`] with auxiliary members and ties taken from `context`.
pub fn p_consistent_in(context: &Assessment, family: &[Crq]) -> Result<bool> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let mut a = context.clone();
    for crq in family {
        check_unit(crq)?;
        a = a.with(crq.clone(), Q::one());
    }
    // Context members tied to the previsions of absent quantities are dropped.
    is_coherent(&a.bound_part())
}

/// Whether `family` p-entails `conclusion`.
pub fn p_entails(
    family: &[Crq],
    conclusion: &Crq,
    constraints: &Constraints,
) -> Result<Entailment> {
    p_entails_in(
        &Assessment::new(constraints.clone()),
        family,
        conclusion,
        &SearchOptions::default(),
    )
}

/// [`p_entails`] with auxiliary members and ties taken from `context`.
pub fn p_entails_in(
    context: &Assessment,
    family: &[Crq],
    conclusion: &Crq,
    opts: &SearchOptions,
) -> Result<Entailment> {
    if !p_consistent_in(context, family)? {
        return Err(Error::NotPConsistent);
    }
    check_unit(conclusion)?;
    let mut a = context.clone();
    for crq in family {
        a = a.with(crq.clone(), Q::one());
    }
    let a = a.with_target(conclusion.clone());
    let mut o = opts.clone();
    o.hints.push(Q::one());
    let interval = extension_interval(&a, &o)?;
    let holds = interval.is_point(&Q::one());
    let counterexample = if holds {
        None
    } else {
        let v = if interval.lower.is_one() {
            interval.upper.clone().unwrap_or_else(|| qi(2))
        } else {
            interval.lower.clone()
        };
        let mut c = a.clone();
        c.set(conclusion.prevision(), v);
        verified(c)?
    };
    Ok(Entailment {
        holds,
        interval,
        counterexample,
    })
}

fn verified(a: Assessment) -> Result<Option<Assessment>> {
    Ok(is_coherent(&a)?.then_some(a))
}

/// Generalized inference rules checked by [`check_inference`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    /// From `A|H` and `(B|K)|(A|H)` infer `B|K`.
    ModusPonens,
    /// From `A|H` and `B|K` infer `(B|K)|(A|H)`.
    Centering,
}

impl Rule {
    /// Short name.
    pub fn name(self) -> &'static str {
        match self {
            Rule::ModusPonens => "modus_ponens",
            Rule::Centering => "centering",
        }
    }

    /// Parses a short name.
    pub fn from_name(name: &str) -> Option<Rule> {
        [Rule::ModusPonens, Rule::Centering]
            .into_iter()
            .find(|r| r.name() == name)
    }
}

/// `(B|K)|_op(A|H)` with prevision `mu`, and the context holding its tied conjunction
/// for structural operators.
pub fn iterated_with_context(
    op: Operator,
    sp: &StandardPair,
    mu: &Param,
) -> Result<(Crq, Assessment)> {
    let empty = Assessment::new(sp.constraints.clone());
    match (op.iteration(), op.structural()) {
        (Some(it), _) => Ok((sp.trivalent_iterated(it, mu)?, empty)),
        (None, Some(kind)) => {
            let a = with_tied_conjunction(empty, sp, kind, mu)?;
            let n = a.family().len();
            let y = a.family()[n - 1].clone();
            Ok((y, a.subfamily(&(0..n - 1).collect::<Vec<_>>())))
        }
        (None, None) => unreachable!("every operator is trivalent or structural"),
    }
}

/// Verdict of a generalized inference rule for one operator, computed by p-entailment.
pub fn check_inference(rule: Rule, op: Operator) -> Result<Verdict> {
    if matches!(op, Operator::B | Operator::S) {
        return Err(Error::UnsupportedKind(format!(
            "iterated conditioning |_{} takes values outside [0, 1]",
            op.name()
        )));
    }
    let sp = StandardPair::new();
    let mu = Param::prevision("mu");
    let (iter, context) = iterated_with_context(op, &sp, &mu)?;
    let (premises, conclusion, property) = match rule {
        Rule::ModusPonens => (vec![sp.ah_crq(), iter], sp.bk_crq(), Property::ModusPonens),
        Rule::Centering => (vec![sp.ah_crq(), sp.bk_crq()], iter, Property::Centering),
    };
    let e = p_entails_in(&context, &premises, &conclusion, &SearchOptions::default())?;
    Ok(Verdict {
        property,
        operator: op,
        holds: e.holds,
        note: format!("conclusion interval with premises at 1: {}", e.interval),
        counterexample: e.counterexample,
    })
}

fn unit_thirds() -> Vec<Q> {
    vec![Q::zero(), q(1, 2), Q::one()]
}

/// `(B|K)|_op A` (antecedent `A|Ω`) against `B|AK`.
fn no_import_export(op: Operator) -> Result<Verdict> {
    let none = Constraints::none();
    let a = ConditionalEvent::event(Formula::atom("A"));
    let bk = ConditionalEvent::new(Formula::atom("B"), Formula::atom("K"))?;
    let b_ak = ConditionalEvent::new(
        Formula::atom("B"),
        Formula::atom("A").and(&Formula::atom("K")),
    )?;
    let verdict = |holds, counterexample, note| Verdict {
        property: Property::NoImportExport,
        operator: op,
        holds,
        counterexample,
        note,
    };
    if let Some(it) = op.iteration() {
        let lhs = iterate_trivalent(it, &a, &bk, &none)?;
        if let Some((w, l, r)) = distinguishing_world(&lhs, &b_ak, &none)? {
            return Ok(verdict(
                true,
                None,
                format!("differs from B|AK at {w}: {l} vs {r}"),
            ));
        }
        let (p, w) = (Param::probability("p"), Param::probability("w"));
        let eq = Assessment::new(none.clone())
            .with(indicator(&lhs, &p, &none)?, q(1, 2))
            .with(indicator(&b_ak, &w, &none)?, q(1, 2));
        let mut uneq = eq.clone();
        uneq.set(&w, q(1, 4));
        let forced = !is_coherent(&uneq)?;
        let note = format!(
            "{lhs} coincides with B|AK; unequal probabilities are {}",
            if forced { "incoherent" } else { "coherent" }
        );
        return Ok(verdict(false, verified(eq)?, note));
    }
    let kind = op.structural().expect("structural operator");
    let (x, y, mu, w) = (
        Param::probability("x"),
        Param::probability("y"),
        Param::prevision("mu"),
        Param::probability("w"),
    );
    let lhs = iterate_structural(kind, &a, &bk, &x, &y, &mu, &none)?;
    let rhs = indicator(&b_ak, &w, &none)?;
    let identify = BTreeMap::from([(mu.clone(), w.clone())]);
    let diffs = differences(&lhs, &rhs, &identify, &none)?;
    match diffs.first() {
        Some((world, l, r)) => Ok(verdict(
            true,
            None,
            format!("differs from B|AK at {world}: {l} vs {r}"),
        )),
        None => Ok(verdict(false, None, "coincides with B|AK".into())),
    }
}

fn p1(op: Operator) -> Result<Verdict> {
    let sp = StandardPair::new();
    let c = &sp.constraints;
    let verdict = |holds, counterexample, note| Verdict {
        property: Property::P1,
        operator: op,
        holds,
        counterexample,
        note,
    };
    if let Some(it) = op.iteration() {
        let conj = conjoin_trivalent(op.paired_conjunction().expect("paired"), &sp.ah, &sp.bk, c)?;
        let lhs = iterate_trivalent(it, &sp.ah, &sp.bk, c)?;
        let rhs = iterate_trivalent(it, &sp.ah, &conj, c)?;
        let t = op.paired_conjunction().expect("paired");
        let (ln, rn) = (
            format!("({}) iter_{} ({})", sp.bk, it.name(), sp.ah),
            format!(
                "(({}) and_{} ({})) iter_{} ({})",
                sp.ah,
                t.name(),
                sp.bk,
                it.name(),
                sp.ah
            ),
        );
        return match distinguishing_world(&lhs, &rhs, c)? {
            None => Ok(verdict(
                true,
                None,
                format!("{ln} = {lhs} coincides with {rn}"),
            )),
            Some((w, l, r)) => {
                let (p, v) = (Param::probability("p"), Param::probability("v"));
                let mut found = None;
                'search: for a in unit_thirds() {
                    for b in unit_thirds() {
                        if a == b {
                            continue;
                        }
                        let asg = Assessment::new(c.clone())
                            .with(indicator(&lhs, &p, c)?.with_label(ln.clone()), a.clone())
                            .with(indicator(&rhs, &v, c)?.with_label(rn.clone()), b);
                        if let Some(ok) = verified(asg)? {
                            found = Some(ok);
                            break 'search;
                        }
                    }
                }
                Ok(verdict(false, found, format!("differs at {w}: {l} vs {r}")))
            }
        };
    }
    let kind = op.structural().expect("structural operator");
    let (mu, nu, w) = (
        Param::prevision("mu"),
        Param::prevision("nu"),
        Param::probability("w"),
    );
    let y1 = sp.iterated(kind, &mu)?;
    let z2 = Param::probability("z2");
    let (y2, conj2) =
        match kind.trivalent() {
            Some(t) => {
                let conj = conjoin_trivalent(t, &sp.ah, &sp.bk, c)?;
                let outer = conjoin_trivalent(t, &sp.ah, &conj, c)?;
                let inner = format!("({}) and_{} ({})", sp.ah, t.name(), sp.bk);
                (
                    iterate_structural(kind, &sp.ah, &conj, &sp.x, &w, &nu, c)?
                        .with_label(format!("({inner}) iter_{} ({})", t.name(), sp.ah)),
                    indicator(&outer, &z2, c)?.with_label(format!(
                        "({}) and_{} ({inner})",
                        sp.ah,
                        t.name()
                    )),
                )
            }
            None => (
                iterate_gs_family((&sp.ah, &sp.x), &[(&sp.ah, &sp.x), (&sp.bk, &sp.y)], &nu, c)?,
                sp.gs_conjunction(&z2)?,
            ),
        };
    let identify = BTreeMap::from([(nu.clone(), mu.clone())]);
    let diffs = differences(&y1, &y2, &identify, c)?;
    let differs = diffs
        .first()
        .map(|(world, l, r)| format!("differs at {world}: {l} vs {r}"));
    // Identical quantities must receive identical previsions.
    let points = [(q(1, 2), q(1, 2)), (q(3, 4), q(1, 4)), (Q::one(), q(1, 2))];
    for (x, y) in points {
        let b = closed_form_bounds(bound_kind(kind), &x, &y)?;
        let mu_v = match &b.upper {
            Some(u) => (&b.lower + u) / qi(2),
            None => &b.lower + Q::one(),
        };
        let base = Assessment::new(c.clone())
            .with(sp.ah_crq(), x.clone())
            .with(sp.bk_crq(), y.clone());
        let a = with_tied_conjunction(base, &sp, kind, &mu)?
            .bind(&mu, mu_v.clone())
            .bind(&w, &x * &mu_v)
            .with_target(conj2.clone())
            .tie(&z2, Expr::param(&sp.x).mul(&Expr::param(&nu))?)
            .with_target(y2.clone());
        let interval = extension_interval(
            &a,
            &SearchOptions {
                hints: vec![mu_v.clone()],
                ..SearchOptions::default()
            },
        )?;
        if !interval.is_point(&mu_v) {
            let mut other = a.clone();
            let v = if interval.lower != mu_v {
                interval.lower.clone()
            } else {
                interval.upper.clone().unwrap_or(qi(2))
            };
            other.set(&nu, v);
            let note = differs.unwrap_or_else(|| {
                format!(
                    "previsions not forced equal at x={}, y={}",
                    fmt_q(&x),
                    fmt_q(&y)
                )
            });
            return Ok(verdict(false, verified(other)?, note));
        }
    }
    if let Some(note) = differs {
        return Ok(verdict(false, None, note));
    }
    Ok(verdict(
        true,
        None,
        "both sides have the same values once their previsions are identified; coherence forces equal previsions".into(),
    ))
}

fn bound_kind(kind: StructuralKind) -> BoundKind {
    match kind {
        StructuralKind::K => BoundKind::IterK,
        StructuralKind::L => BoundKind::IterL,
        StructuralKind::B => BoundKind::IterB,
        StructuralKind::S => BoundKind::IterS,
        StructuralKind::Gs => BoundKind::IterGs,
    }
}

/// `{A|H (x), (B|K)|_op(A|H) (y), (A|H) ∧ (B|K) (z)}` for a trivalent operator.
fn trivalent_triple(op: Operator, x: &Q, y: &Q, z: &Q) -> Result<Assessment> {
    let sp = StandardPair::new();
    let it = op.iteration().expect("trivalent operator");
    let conj = sp.conjunction(
        op.paired_conjunction().expect("paired"),
        &Param::probability("z"),
    )?;
    Ok(Assessment::new(sp.constraints.clone())
        .with(sp.ah_crq(), x.clone())
        .with(
            sp.trivalent_iterated(it, &Param::probability("y"))?,
            y.clone(),
        )
        .with(conj, z.clone()))
}

/// The first coherent assessment among the candidates.
fn first_coherent(
    candidates: impl IntoIterator<Item = (Q, Q, Q)>,
    build: impl Fn(&Q, &Q, &Q) -> Result<Assessment>,
) -> Result<Option<Assessment>> {
    for (a, b, c) in candidates {
        if let Some(ok) = verified(build(&a, &b, &c)?)? {
            return Ok(Some(ok));
        }
    }
    Ok(None)
}

fn cube(values: &[Q]) -> Vec<(Q, Q, Q)> {
    let mut out = Vec::new();
    for a in values {
        for b in values {
            for c in values {
                out.push((a.clone(), b.clone(), c.clone()));
            }
        }
    }
    out
}

fn p2(op: Operator) -> Result<Verdict> {
    let sp = StandardPair::new();
    let c = &sp.constraints;
    let verdict = |holds, counterexample, note| Verdict {
        property: Property::P2,
        operator: op,
        holds,
        counterexample,
        note,
    };
    if let Some(it) = op.iteration() {
        let conj = conjoin_trivalent(op.paired_conjunction().expect("paired"), &sp.ah, &sp.bk, c)?;
        let iter = iterate_trivalent(it, &sp.ah, &sp.bk, c)?;
        let t = op.paired_conjunction().expect("paired");
        let (cn, iname) = (
            format!("({}) and_{} ({})", sp.ah, t.name(), sp.bk),
            format!("({}) iter_{} ({})", sp.bk, it.name(), sp.ah),
        );
        if gn_implies(&conj, &iter, c)? {
            return Ok(verdict(true, None, format!("{cn} implies {iname}")));
        }
        let mut candidates = vec![(Q::one(), Q::zero(), Q::one())];
        candidates.extend(cube(&unit_thirds()).into_iter().filter(|(_, y, z)| z > y));
        let found = first_coherent(candidates, |x, y, z| trivalent_triple(op, x, y, z))?;
        return Ok(verdict(
            false,
            found,
            format!("{cn} does not imply {iname}"),
        ));
    }
    let kind = op.structural().expect("structural operator");
    let (mu, z) = (Param::prevision("mu"), Param::probability("z"));
    let iter = sp.iterated(kind, &mu)?;
    let conj = match kind.trivalent() {
        Some(t) => sp.conjunction(t, &z)?,
        None => sp.gs_conjunction(&z)?,
    };
    let mut atoms = iter.atoms();
    atoms.extend(conj.atoms());
    let u = Universe::new(atoms, c)?;
    let yv = iter.exprs_in(&u)?;
    let cv = conj.exprs_in(&u)?;
    let mut samples = 0;
    for (x, y) in crate::propagation::unit_grid(5) {
        let bounds = closed_form_bounds(bound_kind(kind), &x, &y)?;
        let hi = bounds
            .upper
            .clone()
            .unwrap_or_else(|| &bounds.lower + qi(2));
        for m in [bounds.lower.clone(), (&bounds.lower + &hi) / qi(2), hi] {
            let binding: Binding = [
                (sp.x.clone(), x.clone()),
                (sp.y.clone(), y.clone()),
                (mu.clone(), m.clone()),
                (z.clone(), &x * &m),
            ]
            .into_iter()
            .collect();
            for w in 0..u.len() {
                if cv[w].eval(&binding)? > yv[w].eval(&binding)? {
                    let (a, _) = bound_family(bound_kind(kind), &x, &y)?;
                    let mut a = a;
                    a.set(&mu, m.clone());
                    return Ok(verdict(
                        false,
                        verified(a)?,
                        format!(
                            "conjunction exceeds the iterated conditional at {}",
                            u.world(w)
                        ),
                    ));
                }
            }
            samples += 1;
        }
    }
    Ok(verdict(
        true,
        None,
        format!("conjunction ≤ iterated conditional in every world on {samples} coherent samples"),
    ))
}

fn p3(op: Operator) -> Result<Verdict> {
    let verdict = |holds, counterexample, note| Verdict {
        property: Property::P3,
        operator: op,
        holds,
        counterexample,
        note,
    };
    if op.iteration().is_some() {
        let witness = match op {
            Operator::C => (Q::one(), Q::zero(), Q::one()),
            _ => (Q::one(), Q::one(), Q::zero()),
        };
        let mut candidates = vec![witness];
        candidates.extend(
            cube(&unit_thirds())
                .into_iter()
                .filter(|(x, y, z)| *z != x * y),
        );
        let found = first_coherent(candidates, |x, y, z| trivalent_triple(op, x, y, z))?;
        return Ok(match found {
            Some(a) => verdict(false, Some(a), "coherent assessment with z ≠ x·y".into()),
            None => verdict(
                true,
                None,
                "every grid assessment with z ≠ x·y is incoherent".into(),
            ),
        });
    }
    let kind = op.structural().expect("structural operator");
    let sp = StandardPair::new();
    let (mu, z) = (Param::prevision("mu"), Param::probability("z"));
    let conj = match kind.trivalent() {
        Some(t) => sp.conjunction(t, &z)?,
        None => sp.gs_conjunction(&z)?,
    };
    let iter =
        iterate_structural_free(kind, &sp.ah, &sp.bk, &sp.x, &sp.y, &z, &mu, &sp.constraints)?;
    let mut checked = 0;
    for (x, y, zv) in cube(&unit_thirds()) {
        for m in [Q::zero(), q(1, 2), Q::one(), qi(2)] {
            if zv == &x * &m {
                continue;
            }
            let a = Assessment::new(sp.constraints.clone())
                .with(sp.ah_crq(), x.clone())
                .with(sp.bk_crq(), y.clone())
                .with(conj.clone(), zv.clone())
                .with(iter.clone(), m);
            if is_coherent(&a)? {
                return Ok(verdict(
                    false,
                    Some(a),
                    "coherent assessment with z ≠ x·μ".into(),
                ));
            }
            checked += 1;
        }
    }
    Ok(verdict(
        true,
        None,
        format!("all {checked} grid assessments with z ≠ x·μ are incoherent"),
    ))
}

fn p4(op: Operator) -> Result<Verdict> {
    let verdict = |holds, counterexample, note| Verdict {
        property: Property::P4,
        operator: op,
        holds,
        counterexample,
        note,
    };
    let family = |x: &Q, y: &Q| -> Result<(Assessment, Param)> {
        match op.structural() {
            Some(kind) => bound_family(bound_kind(kind), x, y),
            None => {
                let sp = StandardPair::new();
                let mu = Param::probability("mu");
                let it = op.iteration().expect("trivalent operator");
                Ok((
                    Assessment::new(sp.constraints.clone())
                        .with(sp.ah_crq(), x.clone())
                        .with(sp.bk_crq(), y.clone())
                        .with_target(sp.trivalent_iterated(it, &mu)?),
                    mu,
                ))
            }
        }
    };
    let witnesses = match op {
        Operator::B => vec![(q(1, 2), q(1, 2), qi(2))],
        Operator::S => vec![(q(1, 2), Q::one(), qi(2))],
        Operator::Gs => vec![],
        _ => vec![(Q::one(), Q::one(), Q::zero())],
    };
    for (x, y, m) in witnesses {
        let plain = closed_form_bounds(BoundKind::PlainConditional, &x, &y)?;
        if plain.contains(&m) {
            continue;
        }
        let (mut a, target) = family(&x, &y)?;
        a.set(&target, m.clone());
        if let Some(ok) = verified(a)? {
            return Ok(verdict(
                false,
                Some(ok),
                format!(
                    "μ = {} is coherent at (x, y) = ({}, {}) but outside {plain}",
                    fmt_q(&m),
                    fmt_q(&x),
                    fmt_q(&y)
                ),
            ));
        }
    }
    let opts = SearchOptions::default();
    let tol = q(1, 1_000_000);
    let rows = crate::propagation::unit_grid(5)
        .into_par_iter()
        .map(|(x, y)| {
            let (a, target) = family(&x, &y)?;
            let found = extension_interval(&a, &opts)?;
            let plain = closed_form_bounds(BoundKind::PlainConditional, &x, &y)?;
            Ok((x, y, a, target, found, plain))
        })
        .collect::<Result<Vec<_>>>()?;
    for (x, y, a, target, found, plain) in rows {
        if found.close_to(&plain, &tol) {
            continue;
        }
        let outside = if found.lower < plain.lower {
            Some(found.lower.clone())
        } else {
            match (&found.upper, &plain.upper) {
                (Some(f), Some(p)) if f > p => Some(f.clone()),
                (None, _) => plain.upper.clone().map(|p| p + Q::one()),
                _ => None,
            }
        };
        let counterexample = match outside {
            Some(v) => {
                let mut c = a.clone();
                c.set(&target, v);
                verified(c)?
            }
            None => None,
        };
        return Ok(verdict(
            false,
            counterexample,
            format!(
                "at ({}, {}) the interval is {found}, not {plain}",
                fmt_q(&x),
                fmt_q(&y)
            ),
        ));
    }
    Ok(verdict(
        true,
        None,
        "interval equals that of B|A on the 5×5 grid".into(),
    ))
}

/// Evaluates one cell of the summary table.
pub fn evaluate(property: Property, op: Operator) -> Result<Verdict> {
    match property {
        Property::NoImportExport => no_import_export(op),
        Property::P1 => p1(op),
        Property::P2 => p2(op),
        Property::P3 => p3(op),
        Property::P4 => p4(op),
        Property::ModusPonens => check_inference(Rule::ModusPonens, op),
        Property::Centering => check_inference(Rule::Centering, op),
    }
}

/// The 40 cells of the summary table, row by row in [`Operator::ALL`] order and
/// column by column in [`Property::TABLE`] order.
pub fn property_suite() -> Result<Vec<Verdict>> {
    let cells: Vec<(Operator, Property)> = Operator::ALL
        .into_iter()
        .flat_map(|o| Property::TABLE.into_iter().map(move |p| (o, p)))
        .collect();
    cells.into_par_iter().map(|(o, p)| evaluate(p, o)).collect()
}

/// Renders verdicts as a text table with one row per operator.
pub fn render_table(verdicts: &[Verdict]) -> String {
    let mut out = String::from("op   ");
    for p in Property::TABLE {
        out.push_str(&format!("{:<7}", p.name()));
    }
    out.push('\n');
    for o in Operator::ALL {
        out.push_str(&format!("{:<5}", o.name()));
        for p in Property::TABLE {
            let mark = verdicts
                .iter()
                .find(|v| v.operator == o && v.property == p)
                .map_or("?", |v| if v.holds { "yes" } else { "no" });
            out.push_str(&format!("{mark:<7}"));
        }
        out.push('\n');
    }
    out
}

/// One row of the triviality demonstration.
#[derive(Clone, Debug)]
pub struct LewisRow {
    /// `P(A)`.
    pub p_a: Q,
    /// `P(C)`.
    pub p_c: Q,
    /// `P(C|A)`.
    pub p_c_given_a: Q,
    /// Whether `(P(A), P(C), P(C|A))` is coherent.
    pub coherent: bool,
    /// The value of `P(C|A)` that total probability plus Import-Export would force.
    pub forced: Q,
}

/// The triviality demonstration for `|_dF`.
#[derive(Clone, Debug)]
pub struct LewisDemo {
    /// Whether `(C|A)|_dF C = C|AC` and `(C|A)|_dF C̄ = C|AC̄`.
    pub import_export: bool,
    /// Grid rows; coherent rows with `P(C|A) ≠ P(C)` contradict the forced value.
    pub rows: Vec<LewisRow>,
}

impl LewisDemo {
    /// Coherent rows where the forced value differs from `P(C|A)`.
    pub fn contradictions(&self) -> Vec<&LewisRow> {
        self.rows
            .iter()
            .filter(|r| r.coherent && r.forced != r.p_c_given_a)
            .collect()
    }
}

/// Shows that total probability plus Import-Export forces `P(C|A) = P(C)`, which
/// coherence does not require.
pub fn lewis_triviality_demo() -> Result<LewisDemo> {
    let none = Constraints::none();
    let (a, c) = (Formula::atom("A"), Formula::atom("C"));
    let c_given_a = ConditionalEvent::new(c.clone(), a.clone())?;
    let on_c = ConditionalEvent::event(c.clone());
    let on_not_c = ConditionalEvent::event(c.negate());
    let lhs1 = iterate_trivalent(TrivalentIteration::DF, &on_c, &c_given_a, &none)?;
    let lhs2 = iterate_trivalent(TrivalentIteration::DF, &on_not_c, &c_given_a, &none)?;
    let rhs1 = ConditionalEvent::new(c.clone(), a.and(&c))?;
    let rhs2 = ConditionalEvent::new(c.clone(), a.and(&c.negate()))?;
    let import_export =
        semantically_equal(&lhs1, &rhs1, &none)? && semantically_equal(&lhs2, &rhs2, &none)?;
    let (pa, pc, pca) = (
        Param::probability("pa"),
        Param::probability("pc"),
        Param::probability("pca"),
    );
    let family = |x: &Q, y: &Q, z: &Q| -> Result<Assessment> {
        Ok(Assessment::new(none.clone())
            .with(
                indicator(&ConditionalEvent::event(a.clone()), &pa, &none)?,
                x.clone(),
            )
            .with(indicator(&on_c, &pc, &none)?, y.clone())
            .with(indicator(&c_given_a, &pca, &none)?, z.clone()))
    };
    let values = [q(1, 4), q(1, 2), q(3, 4)];
    let mut rows = Vec::new();
    for (x, y, z) in cube(&values) {
        let coherent = is_coherent(&family(&x, &y, &z)?)?;
        rows.push(LewisRow {
            // P(C|AC)·P(C) + P(C|AC̄)·P(C̄) = 1·P(C) + 0·P(C̄).
            forced: y.clone(),
            p_a: x,
            p_c: y,
            p_c_given_a: z,
            coherent,
        });
    }
    Ok(LewisDemo {
        import_export,
        rows,
    })
}
