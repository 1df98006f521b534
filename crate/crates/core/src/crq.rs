//! Conditional random quantities: value expressions over a partition of the worlds.
//!
//! A [`Crq`] assigns a bilinear expression in assessment parameters to each piece of
//! a partition of the sure event, and carries its own prevision parameter `μ`. The
//! convention `X|H = XH + μH̄` makes every piece outside the conditioning event take
//! the value `μ`; conversely the conditioning event is the union of the pieces whose
//! value is not `μ`. At instantiation the same rule is applied to the partially
//! evaluated values, so a piece such as `μ(1−x)` drops out of the conditioning event
//! when `x = 0`.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::conditional::{
    conjoin_trivalent, semantically_equal, ConditionalEvent, TrivalentKind, TrivalentValue,
};
use crate::error::{Error, Result};
use crate::events::{group_worlds, Constraints, Formula, Universe, World, WorldSet};
use crate::expr::{Binding, Expr, Param};
use crate::rational::Q;

/// The kinds of iterated conditional defined through the structure `□∧○ + μ(1−○)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StructuralKind {
    /// Built on the Kleene conjunction.
    K,
    /// Built on the Lukasiewicz conjunction.
    L,
    /// Built on the Bochvar conjunction.
    B,
    /// Built on the Sobocinski conjunction.
    S,
    /// Built on the conjunction as a conditional random quantity.
    Gs,
}

impl StructuralKind {
    /// All five kinds.
    pub const ALL: [StructuralKind; 5] = [
        StructuralKind::K,
        StructuralKind::L,
        StructuralKind::B,
        StructuralKind::S,
        StructuralKind::Gs,
    ];

    /// The trivalent conjunction underlying the kind, if any.
    pub fn trivalent(self) -> Option<TrivalentKind> {
        match self {
            StructuralKind::K => Some(TrivalentKind::K),
            StructuralKind::L => Some(TrivalentKind::L),
            StructuralKind::B => Some(TrivalentKind::B),
            StructuralKind::S => Some(TrivalentKind::S),
            StructuralKind::Gs => None,
        }
    }
}

/// One piece of the partition of a [`Crq`] with its value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    /// The event on which the value applies.
    pub event: Formula,
    /// The value as an expression in the assessment parameters.
    pub value: Expr,
}

/// A conditional random quantity with symbolic values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crq {
    label: String,
    pieces: Vec<Piece>,
    prevision: Param,
    conditioning: Formula,
}

/// A [`Crq`] evaluated at numbers on a concrete universe.
#[derive(Clone, Debug)]
pub(crate) struct Instantiated {
    /// Piece index of every world.
    pub piece_of: Vec<usize>,
    /// Numeric value of every piece.
    pub values: Vec<Q>,
    /// Whether every piece lies inside the effective conditioning event.
    pub live: Vec<bool>,
    /// The assessed prevision.
    pub prevision: Q,
}

impl Crq {
    /// Builds a random quantity from pieces; pieces with equal values are merged.
    ///
    /// The pieces must partition the sure event under the constraints used later.
    pub fn new(label: impl Into<String>, pieces: Vec<Piece>, prevision: Param) -> Self {
        let mut merged: Vec<Piece> = Vec::new();
        for p in pieces {
            match merged.iter_mut().find(|m| m.value == p.value) {
                Some(m) => m.event = m.event.or(&p.event),
                None => merged.push(p),
            }
        }
        let live: Vec<&Formula> = merged
            .iter()
            .filter(|p| !p.value.is_param(&prevision))
            .map(|p| &p.event)
            .collect();
        let conditioning = Formula::any(live);
        Crq {
            label: label.into(),
            pieces: merged,
            prevision,
            conditioning,
        }
    }

    /// The quantity `X|H`: the given values inside `H` and the prevision on `H̄`.
    pub fn conditional(
        label: impl Into<String>,
        conditioning: &Formula,
        inside: Vec<(Formula, Expr)>,
        prevision: Param,
    ) -> Self {
        let mut pieces: Vec<Piece> = inside
            .into_iter()
            .map(|(e, v)| Piece {
                event: e.and(conditioning),
                value: v,
            })
            .collect();
        pieces.push(Piece {
            event: conditioning.negate(),
            value: Expr::param(&prevision),
        });
        Crq::new(label, pieces, prevision)
    }

    /// A display label.
    pub fn label(&self) -> &str {
        &self.label
    }

    /// Replaces the display label.
    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// The pieces of the partition with their values.
    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// The prevision parameter `μ`.
    pub fn prevision(&self) -> &Param {
        &self.prevision
    }

    /// The symbolic conditioning event: the union of pieces whose value is not `μ`.
    pub fn conditioning(&self) -> &Formula {
        &self.conditioning
    }

    /// All parameters mentioned by the values or the prevision.
    pub fn params(&self) -> Vec<Param> {
        let mut out: Vec<Param> = self.pieces.iter().flat_map(|p| p.value.params()).collect();
        out.push(self.prevision.clone());
        out.sort();
        out.dedup();
        out
    }

    /// Atoms mentioned by the pieces.
    pub fn atoms(&self) -> std::collections::BTreeSet<String> {
        let mut s = std::collections::BTreeSet::new();
        for p in &self.pieces {
            s.extend(p.event.atoms());
        }
        s
    }

    /// Piece index of every world of the universe.
    pub(crate) fn piece_index(&self, u: &Universe) -> Result<Vec<usize>> {
        let sets = self
            .pieces
            .iter()
            .map(|p| u.extension(&p.event))
            .collect::<Result<Vec<WorldSet>>>()?;
        (0..u.len())
            .map(|w| {
                let mut hits = sets.iter().enumerate().filter(|(_, s)| s.contains(w));
                match (hits.next(), hits.next()) {
                    (Some((i, _)), None) => Ok(i),
                    _ => Err(Error::InvalidPartition(self.label.clone())),
                }
            })
            .collect()
    }

    /// The symbolic value in every world of the universe.
    pub fn exprs_in(&self, u: &Universe) -> Result<Vec<Expr>> {
        Ok(self
            .piece_index(u)?
            .into_iter()
            .map(|i| self.pieces[i].value.clone())
            .collect())
    }

    pub(crate) fn instantiate(&self, u: &Universe, binding: &Binding) -> Result<Instantiated> {
        let piece_of = self.piece_index(u)?;
        let prevision = binding
            .get(&self.prevision)
            .cloned()
            .ok_or_else(|| Error::UnboundParam(self.prevision.name().to_string()))?;
        let mut values = Vec::with_capacity(self.pieces.len());
        let mut live = Vec::with_capacity(self.pieces.len());
        for p in &self.pieces {
            let (a, b) = p.value.affine_in(&self.prevision, binding)?;
            live.push(!(a.is_zero() && b.is_one()));
            values.push(a + b * &prevision);
        }
        Ok(Instantiated {
            piece_of,
            values,
            live,
            prevision,
        })
    }
}

impl fmt::Display for Crq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// Value of a [`Crq`] on each piece of its partition at a full binding.
pub fn value_table(crq: &Crq, binding: &Binding) -> Result<Vec<(Formula, Q)>> {
    crq.pieces
        .iter()
        .map(|p| Ok((p.event.clone(), p.value.eval(binding)?)))
        .collect()
}

fn universe_for(items: &[&ConditionalEvent], constraints: &Constraints) -> Result<Universe> {
    let formulas: Vec<&Formula> = items
        .iter()
        .flat_map(|c| [c.consequent(), c.antecedent()])
        .collect();
    Universe::spanning(formulas, constraints)
}

fn state_formula(ce: &ConditionalEvent, v: TrivalentValue) -> Formula {
    match v {
        TrivalentValue::True => ce.true_event(),
        TrivalentValue::False => ce.false_event(),
        TrivalentValue::Void => ce.void_event(),
    }
}

/// Builds pieces from per-world expressions, grouping worlds by the joint trivalent
/// state of `ces` so that piece formulas read like `AH ∧ BK`.
fn pieces_by_state(u: &Universe, ces: &[&ConditionalEvent], exprs: &[Expr]) -> Result<Vec<Piece>> {
    let states = ces
        .iter()
        .map(|c| c.values_in(u))
        .collect::<Result<Vec<_>>>()?;
    let groups = group_worlds(u, |w| {
        (
            states.iter().map(|s| s[w]).collect::<Vec<_>>(),
            exprs[w].clone(),
        )
    });
    Ok(groups
        .into_iter()
        .map(|((sig, value), _)| {
            let parts: Vec<Formula> = ces
                .iter()
                .zip(&sig)
                .map(|(c, &v)| state_formula(c, v))
                .collect();
            Piece {
                event: Formula::all(&parts),
                value,
            }
        })
        .collect())
}

fn trivalent_expr(v: TrivalentValue, void: &Expr) -> Expr {
    match v {
        TrivalentValue::True => Expr::one(),
        TrivalentValue::False => Expr::zero(),
        TrivalentValue::Void => void.clone(),
    }
}

/// The indicator `AH + x H̄` of a conditional event, with prevision `x`.
///
/// When `AH = H` the indicator is the constant 1, and when `AH = ∅` the constant 0.
pub fn indicator(ce: &ConditionalEvent, x: &Param, constraints: &Constraints) -> Result<Crq> {
    let u = universe_for(&[ce], constraints)?;
    let (ah, h) = ce.sets(&u)?;
    if h.is_empty() {
        return Err(Error::ImpossibleAntecedent(ce.antecedent().to_string()));
    }
    let label = ce.to_string();
    if ah == h {
        return Ok(Crq::new(
            label,
            vec![Piece {
                event: Formula::True,
                value: Expr::one(),
            }],
            x.clone(),
        ));
    }
    if ah.is_empty() {
        return Ok(Crq::new(
            label,
            vec![Piece {
                event: Formula::True,
                value: Expr::zero(),
            }],
            x.clone(),
        ));
    }
    Ok(Crq::conditional(
        label,
        ce.antecedent(),
        vec![
            (ce.consequent().clone(), Expr::one()),
            (ce.consequent().negate(), Expr::zero()),
        ],
        x.clone(),
    ))
}

fn gs_conjunction_exprs(
    u: &Universe,
    ce1: &ConditionalEvent,
    ce2: &ConditionalEvent,
    x: &Expr,
    y: &Expr,
    z: &Expr,
) -> Result<Vec<Expr>> {
    let s1 = ce1.values_in(u)?;
    let s2 = ce2.values_in(u)?;
    use TrivalentValue::*;
    Ok((0..u.len())
        .map(|w| match (s1[w], s2[w]) {
            (True, True) => Expr::one(),
            (False, _) | (_, False) => Expr::zero(),
            (True, Void) => y.clone(),
            (Void, True) => x.clone(),
            (Void, Void) => z.clone(),
        })
        .collect())
}

/// The conjunction `(AHBK + x H̄BK + y AHK̄) | (H ∨ K)` with prevision `z`.
pub fn conjoin_gs(
    ce1: &ConditionalEvent,
    ce2: &ConditionalEvent,
    x: &Param,
    y: &Param,
    z: &Param,
    constraints: &Constraints,
) -> Result<Crq> {
    let u = universe_for(&[ce1, ce2], constraints)?;
    let hk = u
        .extension(ce1.antecedent())?
        .or(&u.extension(ce2.antecedent())?);
    if hk.is_empty() {
        return Err(Error::ImpossibleAntecedent(format!(
            "{} || {}",
            ce1.antecedent(),
            ce2.antecedent()
        )));
    }
    let exprs = gs_conjunction_exprs(&u, ce1, ce2, &x.into(), &y.into(), &z.into())?;
    Ok(Crq::new(
        format!("({ce1}) and_gs ({ce2})"),
        pieces_by_state(&u, &[ce1, ce2], &exprs)?,
        z.clone(),
    ))
}

/// The disjunction `(AH ∨ BK + x H̄B̄K + y ĀHK̄) | (H ∨ K)` with prevision `w`.
pub fn disjoin_gs(
    ce1: &ConditionalEvent,
    ce2: &ConditionalEvent,
    x: &Param,
    y: &Param,
    w: &Param,
    constraints: &Constraints,
) -> Result<Crq> {
    let u = universe_for(&[ce1, ce2], constraints)?;
    let hk = u
        .extension(ce1.antecedent())?
        .or(&u.extension(ce2.antecedent())?);
    if hk.is_empty() {
        return Err(Error::ImpossibleAntecedent(format!(
            "{} || {}",
            ce1.antecedent(),
            ce2.antecedent()
        )));
    }
    let s1 = ce1.values_in(&u)?;
    let s2 = ce2.values_in(&u)?;
    use TrivalentValue::*;
    let exprs: Vec<Expr> = (0..u.len())
        .map(|i| match (s1[i], s2[i]) {
            (True, _) | (_, True) => Expr::one(),
            (False, False) => Expr::zero(),
            (Void, False) => Expr::param(x),
            (False, Void) => Expr::param(y),
            (Void, Void) => Expr::param(w),
        })
        .collect();
    Ok(Crq::new(
        format!("({ce1}) or_gs ({ce2})"),
        pieces_by_state(&u, &[ce1, ce2], &exprs)?,
        w.clone(),
    ))
}

fn antecedent_indicator_exprs(u: &Universe, ce: &ConditionalEvent, x: &Param) -> Result<Vec<Expr>> {
    let states = ce.values_in(u)?;
    Ok(states
        .into_iter()
        .map(|s| trivalent_expr(s, &Expr::param(x)))
        .collect())
}

fn check_structural_antecedent(
    antecedent: &ConditionalEvent,
    constraints: &Constraints,
) -> Result<()> {
    if !crate::events::is_possible(&antecedent.true_event(), constraints) {
        return Err(Error::ImpossibleAntecedent(
            antecedent.true_event().to_string(),
        ));
    }
    Ok(())
}

/// Combines a conjunction with the antecedent indicator: `c + μ(1 − a)`.
fn structure(conj: &[Expr], ant: &[Expr], mu: &Param) -> Result<Vec<Expr>> {
    conj.iter()
        .zip(ant)
        .map(|(c, a)| Ok(c.add(&Expr::param(mu).mul(&Expr::one().sub(a))?)))
        .collect()
}

/// The iterated conditional `(B|K) |_kind (A|H) = (A|H) ∧_kind (B|K) + μ (Ā|H)`.
///
/// The prevision of the conjunction is replaced by `x·μ`, so the values depend only
/// on `x = P(A|H)`, `y = P(B|K)` and `μ`.
pub fn iterate_structural(
    kind: StructuralKind,
    antecedent: &ConditionalEvent,
    consequent: &ConditionalEvent,
    x: &Param,
    y: &Param,
    mu: &Param,
    constraints: &Constraints,
) -> Result<Crq> {
    let z = Expr::param(x).mul(&Expr::param(mu))?;
    structural_with_void(kind, antecedent, consequent, x, y, &z, mu, constraints)
}

/// [`iterate_structural`] with the conjunction prevision kept as its own parameter
/// `z` instead of `x·μ`.
#[allow(clippy::too_many_arguments)]
pub fn iterate_structural_free(
    kind: StructuralKind,
    antecedent: &ConditionalEvent,
    consequent: &ConditionalEvent,
    x: &Param,
    y: &Param,
    z: &Param,
    mu: &Param,
    constraints: &Constraints,
) -> Result<Crq> {
    structural_with_void(
        kind,
        antecedent,
        consequent,
        x,
        y,
        &z.into(),
        mu,
        constraints,
    )
}

#[allow(clippy::too_many_arguments)]
fn structural_with_void(
    kind: StructuralKind,
    antecedent: &ConditionalEvent,
    consequent: &ConditionalEvent,
    x: &Param,
    y: &Param,
    z: &Expr,
    mu: &Param,
    constraints: &Constraints,
) -> Result<Crq> {
    check_structural_antecedent(antecedent, constraints)?;
    let u = universe_for(&[antecedent, consequent], constraints)?;
    let conj = match kind.trivalent() {
        Some(t) => {
            let c = conjoin_trivalent(t, antecedent, consequent, constraints)?;
            c.values_in(&u)?
                .into_iter()
                .map(|v| trivalent_expr(v, z))
                .collect()
        }
        None => gs_conjunction_exprs(&u, antecedent, consequent, &x.into(), &y.into(), z)?,
    };
    let ant = antecedent_indicator_exprs(&u, antecedent, x)?;
    let exprs = structure(&conj, &ant, mu)?;
    let tag = match kind {
        StructuralKind::K => "K",
        StructuralKind::L => "L",
        StructuralKind::B => "B",
        StructuralKind::S => "S",
        StructuralKind::Gs => "gs",
    };
    Ok(Crq::new(
        format!("({consequent}) iter_{tag} ({antecedent})"),
        pieces_by_state(&u, &[antecedent, consequent], &exprs)?,
        mu.clone(),
    ))
}

/// The gs iterated conditional whose consequent is the gs conjunction of a family.
///
/// The value is `C(F₁ ∪ F₂) + μ(Ā|H)` with `F₁ = {A|H}`. Only unions with at most two
/// semantically distinct members are supported, where the conjunction is the binary
/// one (or the indicator itself for a single member).
pub fn iterate_gs_family(
    antecedent: (&ConditionalEvent, &Param),
    consequents: &[(&ConditionalEvent, &Param)],
    mu: &Param,
    constraints: &Constraints,
) -> Result<Crq> {
    check_structural_antecedent(antecedent.0, constraints)?;
    let mut union: Vec<(&ConditionalEvent, &Param)> = vec![antecedent];
    for &(c, p) in consequents {
        let mut seen = false;
        for (d, _) in &union {
            if semantically_equal(c, d, constraints)? {
                seen = true;
            }
        }
        if !seen {
            union.push((c, p));
        }
    }
    if union.len() > 2 {
        return Err(Error::UnsupportedKind(
            "gs conjunction of more than two conditional events".into(),
        ));
    }
    let all: Vec<&ConditionalEvent> = union.iter().map(|(c, _)| *c).collect();
    let u = universe_for(&all, constraints)?;
    let (ce1, x) = antecedent;
    let z = Expr::param(x).mul(&Expr::param(mu))?;
    let conj = if union.len() == 1 {
        antecedent_indicator_exprs(&u, ce1, x)?
    } else {
        let (ce2, y) = union[1];
        gs_conjunction_exprs(&u, ce1, ce2, &x.into(), &y.into(), &z)?
    };
    let ant = antecedent_indicator_exprs(&u, ce1, x)?;
    let exprs = structure(&conj, &ant, mu)?;
    let names: Vec<String> = consequents.iter().map(|(c, _)| format!("({c})")).collect();
    Ok(Crq::new(
        format!("C{{{}}} iter_gs ({ce1})", names.join(", ")),
        pieces_by_state(&u, &all, &exprs)?,
        mu.clone(),
    ))
}

/// Worlds where two quantities have different symbolic values.
///
/// Parameters listed in `identify` are renamed before comparing, which is how the
/// previsions of two objects claimed to be equal are identified.
pub fn differences(
    left: &Crq,
    right: &Crq,
    identify: &BTreeMap<Param, Param>,
    constraints: &Constraints,
) -> Result<Vec<(World, Expr, Expr)>> {
    let mut atoms = left.atoms();
    atoms.extend(right.atoms());
    let u = Universe::new(atoms, constraints)?;
    let l = left.exprs_in(&u)?;
    let r = right.exprs_in(&u)?;
    Ok((0..u.len())
        .filter_map(|w| {
            let a = l[w].rename(identify);
            let b = r[w].rename(identify);
            (a != b).then(|| (u.world(w), a, b))
        })
        .collect())
}

/// Whether every value of `crq` stays in `[0, 1]` whenever its parameters do.
pub fn values_in_unit_interval(crq: &Crq) -> bool {
    crq.pieces.iter().all(|p| {
        let (lo, hi) = p.value.range_on_unit_box();
        lo >= Q::zero() && hi <= Q::one()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merged_pieces_define_the_conditioning_event() {
        let ce = ConditionalEvent::new(Formula::atom("A"), Formula::atom("H")).unwrap();
        let c = indicator(&ce, &Param::probability("x"), &Constraints::none()).unwrap();
        assert_eq!(c.pieces().len(), 3);
        let u = Universe::new(["A", "H"], &Constraints::none()).unwrap();
        assert_eq!(
            u.extension(c.conditioning()).unwrap(),
            u.extension(&Formula::atom("H")).unwrap()
        );
    }
}
