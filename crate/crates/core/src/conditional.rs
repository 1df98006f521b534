//! Conditional events with trivalent semantics and the trivalent compound operators.
//!
//! A conditional event `A|H` is true when `AH` holds, false when `ĀH` holds and void
//! when `H̄` holds. Equality is semantic: two conditional events are equal when they
//! take the same trivalent value in every world allowed by the constraints.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::events::{evaluate, is_possible, Constraints, Formula, Universe, World, WorldSet};

/// The three truth values of a conditional event.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TrivalentValue {
    /// The consequent and the antecedent hold.
    True,
    /// The antecedent holds and the consequent fails.
    False,
    /// The antecedent fails.
    Void,
}

impl fmt::Display for TrivalentValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TrivalentValue::True => "T",
            TrivalentValue::False => "F",
            TrivalentValue::Void => "V",
        })
    }
}

/// The trivalent conjunction and disjunction families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TrivalentKind {
    /// Kleene–Lukasiewicz–Heyting–de Finetti.
    K,
    /// Lukasiewicz.
    L,
    /// Bochvar internal.
    B,
    /// Sobocinski (quasi conjunction).
    S,
}

impl TrivalentKind {
    /// All four kinds.
    pub const ALL: [TrivalentKind; 4] = [
        TrivalentKind::K,
        TrivalentKind::L,
        TrivalentKind::B,
        TrivalentKind::S,
    ];

    /// Short name: `K`, `L`, `B` or `S`.
    pub fn name(self) -> &'static str {
        match self {
            TrivalentKind::K => "K",
            TrivalentKind::L => "L",
            TrivalentKind::B => "B",
            TrivalentKind::S => "S",
        }
    }
}

/// Iterated conditionals whose value is again a conditional event.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TrivalentIteration {
    /// Cooper–Calabrese: `B | K(H̄ ∨ A)`.
    C,
    /// de Finetti: `B | AHK`.
    DF,
    /// Farrell: `AHBK | (AHBK ∨ AHB̄K ∨ H̄B̄K)`.
    F,
}

impl TrivalentIteration {
    /// All three kinds.
    pub const ALL: [TrivalentIteration; 3] = [
        TrivalentIteration::C,
        TrivalentIteration::DF,
        TrivalentIteration::F,
    ];

    /// Short name: `C`, `dF` or `F`.
    pub fn name(self) -> &'static str {
        match self {
            TrivalentIteration::C => "C",
            TrivalentIteration::DF => "dF",
            TrivalentIteration::F => "F",
        }
    }
}

/// A conditional event `consequent | antecedent`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConditionalEvent {
    consequent: Formula,
    antecedent: Formula,
}

impl ConditionalEvent {
    /// Builds `A|H`, rejecting an antecedent that is logically impossible.
    pub fn new(consequent: Formula, antecedent: Formula) -> Result<Self> {
        ConditionalEvent::with_constraints(consequent, antecedent, &Constraints::none())
    }

    /// Builds `A|H`, rejecting an antecedent that is impossible under `constraints`.
    pub fn with_constraints(
        consequent: Formula,
        antecedent: Formula,
        constraints: &Constraints,
    ) -> Result<Self> {
        if !is_possible(&antecedent, constraints) {
            return Err(Error::ImpossibleAntecedent(antecedent.to_string()));
        }
        Ok(ConditionalEvent {
            consequent,
            antecedent,
        })
    }

    /// The unconditional event `A` embedded as `A|Ω`.
    pub fn event(a: Formula) -> Self {
        ConditionalEvent {
            consequent: a,
            antecedent: Formula::True,
        }
    }

    /// The consequent `A`.
    pub fn consequent(&self) -> &Formula {
        &self.consequent
    }

    /// The antecedent `H`.
    pub fn antecedent(&self) -> &Formula {
        &self.antecedent
    }

    /// The event `AH` on which the conditional is true.
    pub fn true_event(&self) -> Formula {
        self.consequent.and(&self.antecedent)
    }

    /// The event `ĀH` on which the conditional is false.
    pub fn false_event(&self) -> Formula {
        self.consequent.negate().and(&self.antecedent)
    }

    /// The event `H̄` on which the conditional is void.
    pub fn void_event(&self) -> Formula {
        self.antecedent.negate()
    }

    /// Atoms mentioned by the consequent or the antecedent.
    pub fn atoms(&self) -> std::collections::BTreeSet<String> {
        let mut s = self.consequent.atoms();
        s.extend(self.antecedent.atoms());
        s
    }

    pub(crate) fn sets(&self, u: &Universe) -> Result<(WorldSet, WorldSet)> {
        let h = u.extension(&self.antecedent)?;
        let a = u.extension(&self.consequent)?;
        Ok((a.and(&h), h))
    }

    /// Trivalent value in every world of the universe.
    pub fn values_in(&self, u: &Universe) -> Result<Vec<TrivalentValue>> {
        let (ah, h) = self.sets(u)?;
        Ok((0..u.len())
            .map(|w| {
                if !h.contains(w) {
                    TrivalentValue::Void
                } else if ah.contains(w) {
                    TrivalentValue::True
                } else {
                    TrivalentValue::False
                }
            })
            .collect())
    }
}

impl fmt::Display for ConditionalEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |f: &mut fmt::Formatter<'_>, x: &Formula| match x {
            Formula::Or(..) => write!(f, "({x})"),
            _ => write!(f, "{x}"),
        };
        if self.antecedent == Formula::True {
            return write!(f, "{}", self.consequent);
        }
        side(f, &self.consequent)?;
        f.write_str("|")?;
        side(f, &self.antecedent)
    }
}

/// Trivalent value of `ce` in `world`.
pub fn truth_value(ce: &ConditionalEvent, world: &World) -> Result<TrivalentValue> {
    if !evaluate(&ce.antecedent, world)? {
        Ok(TrivalentValue::Void)
    } else if evaluate(&ce.consequent, world)? {
        Ok(TrivalentValue::True)
    } else {
        Ok(TrivalentValue::False)
    }
}

/// The negation `Ā|H` of `A|H`.
pub fn negate(ce: &ConditionalEvent) -> ConditionalEvent {
    let consequent = match &ce.consequent {
        Formula::Not(inner) => (**inner).clone(),
        other => other.negate(),
    };
    ConditionalEvent {
        consequent,
        antecedent: ce.antecedent.clone(),
    }
}

fn universe_of(items: &[&ConditionalEvent], constraints: &Constraints) -> Result<Universe> {
    let formulas: Vec<&Formula> = items
        .iter()
        .flat_map(|c| [&c.consequent, &c.antecedent])
        .collect();
    Universe::spanning(formulas, constraints)
}

/// Goodman–Nguyen inclusion `A|H ⊆ B|K`: `AH ⊆ BK` and `B̄K ⊆ ĀH`.
pub fn gn_implies(
    ce1: &ConditionalEvent,
    ce2: &ConditionalEvent,
    constraints: &Constraints,
) -> Result<bool> {
    let u = universe_of(&[ce1, ce2], constraints)?;
    let t1 = u.extension(&ce1.true_event())?;
    let t2 = u.extension(&ce2.true_event())?;
    let f1 = u.extension(&ce1.false_event())?;
    let f2 = u.extension(&ce2.false_event())?;
    Ok(t1.is_subset(&t2) && f2.is_subset(&f1))
}

/// Semantic equality: the same trivalent value in every possible world.
pub fn semantically_equal(
    ce1: &ConditionalEvent,
    ce2: &ConditionalEvent,
    constraints: &Constraints,
) -> Result<bool> {
    let u = universe_of(&[ce1, ce2], constraints)?;
    Ok(ce1.values_in(&u)? == ce2.values_in(&u)?)
}

/// The first possible world where the two conditional events take different values.
pub fn distinguishing_world(
    ce1: &ConditionalEvent,
    ce2: &ConditionalEvent,
    constraints: &Constraints,
) -> Result<Option<(World, TrivalentValue, TrivalentValue)>> {
    let u = universe_of(&[ce1, ce2], constraints)?;
    let v1 = ce1.values_in(&u)?;
    let v2 = ce2.values_in(&u)?;
    Ok((0..u.len())
        .find(|&w| v1[w] != v2[w])
        .map(|w| (u.world(w), v1[w], v2[w])))
}

fn checked(
    consequent: Formula,
    antecedent: Formula,
    constraints: &Constraints,
) -> Result<ConditionalEvent> {
    ConditionalEvent::with_constraints(
        consequent.simplified(),
        antecedent.simplified(),
        constraints,
    )
}

/// The trivalent conjunction `(A|H) ∧_kind (B|K)`.
pub fn conjoin_trivalent(
    kind: TrivalentKind,
    ce1: &ConditionalEvent,
    ce2: &ConditionalEvent,
    constraints: &Constraints,
) -> Result<ConditionalEvent> {
    let (h, k) = (&ce1.antecedent, &ce2.antecedent);
    let both_true = ce1.true_event().and(&ce2.true_event());
    let f1 = ce1.false_event();
    let f2 = ce2.false_event();
    match kind {
        TrivalentKind::K => checked(both_true, Formula::any(&[h.and(k), f1, f2]), constraints),
        TrivalentKind::L => checked(
            both_true.clone(),
            Formula::any(&[both_true, f1, f2, h.negate().and(&k.negate())]),
            constraints,
        ),
        TrivalentKind::B => checked(both_true, h.and(k), constraints),
        TrivalentKind::S => {
            let left = ce1.true_event().or(&h.negate());
            let right = ce2.true_event().or(&k.negate());
            checked(left.and(&right), h.or(k), constraints)
        }
    }
}

/// The trivalent disjunction `(A|H) ∨_kind (B|K)`, the De Morgan dual of the conjunction.
pub fn disjoin_trivalent(
    kind: TrivalentKind,
    ce1: &ConditionalEvent,
    ce2: &ConditionalEvent,
    constraints: &Constraints,
) -> Result<ConditionalEvent> {
    let (h, k) = (&ce1.antecedent, &ce2.antecedent);
    let either_true = ce1.true_event().or(&ce2.true_event());
    let both_false = ce1.false_event().and(&ce2.false_event());
    match kind {
        TrivalentKind::K => checked(
            either_true.clone(),
            Formula::any(&[both_false, ce1.true_event(), ce2.true_event()]),
            constraints,
        ),
        // Void or void is true, as the dual of void and void being false.
        TrivalentKind::L => {
            let neither = h.negate().and(&k.negate());
            checked(
                either_true.or(&neither),
                Formula::any(&[
                    both_false,
                    ce1.true_event(),
                    ce2.true_event(),
                    neither.clone(),
                ]),
                constraints,
            )
        }
        TrivalentKind::B => checked(ce1.consequent.or(&ce2.consequent), h.and(k), constraints),
        TrivalentKind::S => checked(either_true, h.or(k), constraints),
    }
}

/// The iterated conditional `(B|K) |_kind (A|H)` for the conditional-event-valued kinds.
pub fn iterate_trivalent(
    kind: TrivalentIteration,
    antecedent: &ConditionalEvent,
    consequent: &ConditionalEvent,
    constraints: &Constraints,
) -> Result<ConditionalEvent> {
    let (a, h) = (&antecedent.consequent, &antecedent.antecedent);
    let (b, k) = (&consequent.consequent, &consequent.antecedent);
    match kind {
        TrivalentIteration::C => checked(b.clone(), k.and(&h.negate().or(a)), constraints),
        TrivalentIteration::DF => checked(b.clone(), Formula::all([a, h, k]), constraints),
        TrivalentIteration::F => {
            let ah = a.and(h);
            let bk = b.and(k);
            let nbk = b.negate().and(k);
            let all_true = ah.and(&bk);
            checked(
                all_true.clone(),
                Formula::any(&[all_true, ah.and(&nbk), h.negate().and(&nbk)]),
                constraints,
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ce(a: &str, h: &str) -> ConditionalEvent {
        ConditionalEvent::new(Formula::atom(a), Formula::atom(h)).unwrap()
    }

    #[test]
    fn sobocinski_true_when_one_side_void() {
        let c = conjoin_trivalent(
            TrivalentKind::S,
            &ce("A", "H"),
            &ce("B", "K"),
            &Constraints::none(),
        )
        .unwrap();
        let w = World::new([("A", true), ("H", true), ("B", false), ("K", false)]);
        assert_eq!(truth_value(&c, &w).unwrap(), TrivalentValue::True);
    }

    #[test]
    fn impossible_antecedent_is_rejected() {
        let r = ConditionalEvent::new(Formula::atom("A"), Formula::atom("H") & !Formula::atom("H"));
        assert!(matches!(r, Err(Error::ImpossibleAntecedent(_))));
    }
}
