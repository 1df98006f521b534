//! Coherence checking of prevision assessments on families of conditional objects.
//!
//! An assessment `M = (μ_1, …, μ_n)` on `X_1|H_1, …, X_n|H_n` is checked by the
//! geometric procedure: build the points `Q_h` of the constituents inside
//! `H_1 ∨ ⋯ ∨ H_n`, test whether `M` lies in their convex hull (system Σ), compute
//! for each `i` the largest mass `M_i` that a solution can put on `H_i`, and recurse
//! on the sub-assessment of the indices with `M_i = 0`. Every step is exact.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Signed, Zero};

use crate::crq::{Crq, Instantiated};
use crate::error::{Error, Result};
use crate::events::{group_worlds, Constituent, Constraints, Formula, Universe, WorldSet};
use crate::expr::{Binding, Expr, Param};
use crate::rational::{fmt_q, Q};
use crate::simplex::{feasible_point, maximize, LpOutcome};

/// A family of conditional random quantities with parameter bindings.
///
/// The assessed value of each member is the binding of its prevision parameter.
/// Other bound parameters (such as `x = P(A|H)` inside an iterated conditional)
/// may belong to members of the family or be bound without being assessed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assessment {
    family: Vec<Crq>,
    values: Binding,
    ties: BTreeMap<Param, Expr>,
    constraints: Constraints,
}

impl Assessment {
    /// An empty assessment under the given constraints.
    pub fn new(constraints: Constraints) -> Self {
        Assessment {
            family: Vec::new(),
            values: Binding::new(),
            ties: BTreeMap::new(),
            constraints,
        }
    }

    /// Adds a member assessed at `value`.
    pub fn with(mut self, crq: Crq, value: Q) -> Self {
        self.values.insert(crq.prevision().clone(), value);
        self.family.push(crq);
        self
    }

    /// Adds a member whose prevision is left unbound (an extension target).
    pub fn with_target(mut self, crq: Crq) -> Self {
        self.family.push(crq);
        self
    }

    /// Binds a parameter without adding a member.
    pub fn bind(mut self, param: &Param, value: Q) -> Self {
        self.values.insert(param.clone(), value);
        self
    }

    /// Defines a parameter as an expression in other parameters.
    ///
    /// A tied parameter is never free: its value is computed from the bindings each
    /// time the assessment is checked. This is how a prevision forced by a known
    /// identity, such as `z = x·μ`, follows a free target.
    pub fn tie(mut self, param: &Param, expr: Expr) -> Self {
        self.values.remove(param);
        self.ties.insert(param.clone(), expr);
        self
    }

    /// The bindings with every tied parameter evaluated.
    pub fn resolved_values(&self) -> Result<Binding> {
        let mut out = self.values.clone();
        for (p, e) in &self.ties {
            if self.family.iter().any(|c| c.params().contains(p)) {
                out.insert(p.clone(), e.eval(&self.values)?);
            }
        }
        Ok(out)
    }

    /// Sets a parameter in place.
    pub fn set(&mut self, param: &Param, value: Q) {
        self.values.insert(param.clone(), value);
    }

    /// Removes a binding in place.
    pub fn unset(&mut self, param: &Param) {
        self.values.remove(param);
    }

    /// The members, in order.
    pub fn family(&self) -> &[Crq] {
        &self.family
    }

    /// The parameter bindings.
    pub fn values(&self) -> &Binding {
        &self.values
    }

    /// The logical constraints.
    pub fn constraints(&self) -> &Constraints {
        &self.constraints
    }

    /// The assessed prevision of member `i`, if bound.
    pub fn prevision_of(&self, i: usize) -> Option<Q> {
        let p = self.family[i].prevision();
        match self.ties.get(p) {
            Some(e) => e.eval(&self.values).ok(),
            None => self.values.get(p).cloned(),
        }
    }

    /// Parameters that member `i` depends on, with tied parameters expanded.
    pub fn member_params(&self, i: usize) -> Vec<Param> {
        let mut out = Vec::new();
        for p in self.family[i].params() {
            match self.ties.get(&p) {
                Some(e) => out.extend(e.params()),
                None => out.push(p),
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Parameters used by the family but not bound.
    pub fn unbound_params(&self) -> Vec<Param> {
        let mut out: Vec<Param> = (0..self.family.len())
            .flat_map(|i| self.member_params(i))
            .filter(|p| !self.values.contains_key(p))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// The sub-assessment on the listed members, keeping every binding.
    pub fn subfamily(&self, members: &[usize]) -> Assessment {
        Assessment {
            family: members.iter().map(|&i| self.family[i].clone()).collect(),
            values: self.values.clone(),
            ties: self.ties.clone(),
            constraints: self.constraints.clone(),
        }
    }

    /// The sub-assessment on the members whose parameters are all bound.
    pub fn bound_part(&self) -> Assessment {
        let keep: Vec<usize> = (0..self.family.len())
            .filter(|&i| {
                self.member_params(i)
                    .iter()
                    .all(|p| self.values.contains_key(p))
            })
            .collect();
        self.subfamily(&keep)
    }

    /// The same assessment with one member removed.
    pub fn without(&self, index: usize) -> Assessment {
        let keep: Vec<usize> = (0..self.family.len()).filter(|&i| i != index).collect();
        self.subfamily(&keep)
    }

    fn universe(&self) -> Result<Universe> {
        let formulas: Vec<&Formula> = self
            .family
            .iter()
            .flat_map(|c| c.pieces().iter().map(|p| &p.event))
            .collect();
        Universe::spanning(formulas, &self.constraints)
    }
}

impl fmt::Display for Assessment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .family
            .iter()
            .enumerate()
            .map(|(i, c)| match self.prevision_of(i) {
                Some(v) => format!("{} = {}", c.label(), fmt_q(&v)),
                None => format!("{} = ?", c.label()),
            })
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// The points `Q_h`, the target `M` and the masks `C_h ⊆ H_i` of an assessment.
#[derive(Clone, Debug)]
pub struct PointSystem {
    /// Constituents `C_1..C_m` followed by `C_0` when it is possible.
    pub constituents: Vec<Constituent>,
    /// One point per constituent `C_1..C_m`.
    pub points: Vec<Vec<Q>>,
    /// The assessed previsions `M`.
    pub target: Vec<Q>,
    /// `antecedent_masks[i][h]` is true iff `C_h ⊆ H_i`.
    pub antecedent_masks: Vec<Vec<bool>>,
}

impl PointSystem {
    /// Number of members `n`.
    pub fn dimension(&self) -> usize {
        self.target.len()
    }

    fn sigma_rows(&self) -> (Vec<Vec<Q>>, Vec<Q>) {
        let m = self.points.len();
        let mut a: Vec<Vec<Q>> = (0..self.dimension())
            .map(|i| self.points.iter().map(|q| q[i].clone()).collect())
            .collect();
        a.push(vec![Q::one(); m]);
        let mut b = self.target.clone();
        b.push(Q::one());
        (a, b)
    }

    /// `Φ_i(Λ) = Σ_{C_h ⊆ H_i} λ_h`.
    pub fn phi(&self, i: usize, lambda: &[Q]) -> Q {
        lambda
            .iter()
            .zip(&self.antecedent_masks[i])
            .filter(|(_, &m)| m)
            .fold(Q::zero(), |acc, (l, _)| acc + l)
    }

    /// The gain `Σ_i s_i (q_hi − μ_i)` of stakes `s` on constituent `h`.
    pub fn gain(&self, stakes: &[Q], h: usize) -> Q {
        stakes
            .iter()
            .zip(&self.points[h])
            .zip(&self.target)
            .fold(Q::zero(), |acc, ((s, q), mu)| acc + s * (q - mu))
    }
}

/// Builds the point system of an assessment.
pub fn build_points(assessment: &Assessment) -> Result<PointSystem> {
    if assessment.family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let u = assessment.universe()?;
    let values = assessment.resolved_values()?;
    let inst: Vec<Instantiated> = assessment
        .family
        .iter()
        .map(|c| c.instantiate(&u, &values))
        .collect::<Result<_>>()?;
    let groups = group_worlds(&u, |w| {
        inst.iter().map(|m| m.piece_of[w]).collect::<Vec<_>>()
    });
    let mut constituents = Vec::new();
    let mut points = Vec::new();
    let mut masks: Vec<Vec<bool>> = vec![Vec::new(); inst.len()];
    let mut outside: Option<WorldSet> = None;
    for (sig, set) in groups {
        let live: Vec<bool> = inst.iter().zip(&sig).map(|(m, &p)| m.live[p]).collect();
        if live.iter().any(|&l| l) {
            points.push(
                inst.iter()
                    .zip(&sig)
                    .map(|(m, &p)| m.values[p].clone())
                    .collect(),
            );
            for (i, l) in live.into_iter().enumerate() {
                masks[i].push(l);
            }
            constituents.push(make_constituent(&u, constituents.len() + 1, set));
        } else {
            outside = Some(match outside {
                None => set,
                Some(o) => o.or(&set),
            });
        }
    }
    if let Some(set) = outside {
        constituents.push(make_constituent(&u, 0, set));
    }
    Ok(PointSystem {
        constituents,
        points,
        target: inst.iter().map(|m| m.prevision.clone()).collect(),
        antecedent_masks: masks,
    })
}

fn make_constituent(u: &Universe, index: usize, set: WorldSet) -> Constituent {
    Constituent {
        index,
        formula: u.canonical(&set),
        worlds: set.iter().map(|w| u.world(w)).collect(),
        set,
    }
}

/// A solution `Λ` of system Σ, or `None` when Σ has no solution.
pub fn solve_sigma(ps: &PointSystem) -> Option<Vec<Q>> {
    if ps.points.is_empty() {
        return None;
    }
    let (a, b) = ps.sigma_rows();
    feasible_point(&a, &b)
}

/// `M_i = max Φ_i(Λ)` over the solutions of Σ.
pub fn max_phi(ps: &PointSystem, i: usize) -> Result<Q> {
    if ps.points.is_empty() {
        return Err(Error::InfeasibleSystem);
    }
    let (a, b) = ps.sigma_rows();
    let c: Vec<Q> = ps.antecedent_masks[i]
        .iter()
        .map(|&m| if m { Q::one() } else { Q::zero() })
        .collect();
    match maximize(&a, &b, &c) {
        LpOutcome::Optimal { value, .. } => Ok(value),
        LpOutcome::Infeasible => Err(Error::InfeasibleSystem),
        LpOutcome::Unbounded => unreachable!("Φ_i is bounded by Σλ = 1"),
    }
}

/// One level of the recursive check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceLevel {
    /// Family indices checked at this level.
    pub members: Vec<usize>,
    /// Whether system Σ had a solution.
    pub solvable: bool,
    /// Family indices with `M_i = 0`, which form the next level.
    pub zero_set: Vec<usize>,
}

/// A stake vector whose gains share a strict sign on every constituent that matters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DutchBook {
    /// Family indices of the subfamily the bets are placed on.
    pub members: Vec<usize>,
    /// One stake per family member (zero outside `members`).
    pub stakes: Vec<Q>,
    /// The gain on each constituent inside the union of the subfamily's antecedents.
    pub gains: Vec<Q>,
}

impl DutchBook {
    /// Whether all gains are strictly positive or all strictly negative.
    pub fn is_one_signed(&self) -> bool {
        !self.gains.is_empty()
            && (self.gains.iter().all(Signed::is_positive)
                || self.gains.iter().all(Signed::is_negative))
    }

    /// Recomputes the gains on `assessment` and checks their sign.
    pub fn verify(&self, assessment: &Assessment) -> Result<bool> {
        let sub = assessment.subfamily(&self.members);
        let ps = build_points(&sub)?;
        let stakes: Vec<Q> = self
            .members
            .iter()
            .map(|&i| self.stakes[i].clone())
            .collect();
        let gains: Vec<Q> = (0..ps.points.len()).map(|h| ps.gain(&stakes, h)).collect();
        Ok(!gains.is_empty()
            && (gains.iter().all(Signed::is_positive) || gains.iter().all(Signed::is_negative)))
    }
}

/// Verdict of a coherence check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoherenceResult {
    /// Whether the assessment is coherent.
    pub coherent: bool,
    /// The levels of the recursion, outermost first.
    pub trace: Vec<TraceLevel>,
    /// A Dutch book, when requested and the assessment is incoherent.
    pub witness: Option<DutchBook>,
}

fn check_unbound(assessment: &Assessment) -> Result<()> {
    if assessment.family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    match assessment.unbound_params().first() {
        Some(p) => Err(Error::UnboundParam(p.name().to_string())),
        None => Ok(()),
    }
}

/// Runs the recursion and returns the trace and the failing level, if any.
fn run(assessment: &Assessment) -> Result<(Vec<TraceLevel>, Option<Vec<usize>>)> {
    check_unbound(assessment)?;
    let mut trace = Vec::new();
    let mut members: Vec<usize> = (0..assessment.family.len()).collect();
    loop {
        let ps = build_points(&assessment.subfamily(&members))?;
        if ps.points.is_empty() {
            // Every bet is called off in every outcome: nothing can be lost.
            trace.push(TraceLevel {
                members,
                solvable: true,
                zero_set: Vec::new(),
            });
            return Ok((trace, None));
        }
        let Some(lambda) = solve_sigma(&ps) else {
            trace.push(TraceLevel {
                members: members.clone(),
                solvable: false,
                zero_set: Vec::new(),
            });
            return Ok((trace, Some(members)));
        };
        let mut zero_set = Vec::new();
        for (local, &global) in members.iter().enumerate() {
            if ps.phi(local, &lambda).is_positive() {
                continue;
            }
            if max_phi(&ps, local)?.is_zero() {
                zero_set.push(global);
            }
        }
        trace.push(TraceLevel {
            members: members.clone(),
            solvable: true,
            zero_set: zero_set.clone(),
        });
        if zero_set.is_empty() {
            return Ok((trace, None));
        }
        debug_assert!(zero_set.len() < members.len());
        members = zero_set;
    }
}

/// Checks coherence of an assessment; no witness is computed.
pub fn check_coherence(assessment: &Assessment) -> Result<CoherenceResult> {
    let (trace, failing) = run(assessment)?;
    Ok(CoherenceResult {
        coherent: failing.is_none(),
        trace,
        witness: None,
    })
}

/// Checks coherence and, when incoherent, attaches a Dutch book.
pub fn check_coherence_with_witness(assessment: &Assessment) -> Result<CoherenceResult> {
    let (trace, failing) = run(assessment)?;
    let witness = match &failing {
        Some(members) => Some(book_for(assessment, members)?),
        None => None,
    };
    Ok(CoherenceResult {
        coherent: failing.is_none(),
        trace,
        witness,
    })
}

/// Whether the assessment is coherent.
pub fn is_coherent(assessment: &Assessment) -> Result<bool> {
    Ok(run(assessment)?.1.is_none())
}

/// A Dutch book against the assessment, or `None` when it is coherent.
pub fn dutch_book(assessment: &Assessment) -> Result<Option<DutchBook>> {
    match run(assessment)?.1 {
        Some(members) => Ok(Some(book_for(assessment, &members)?)),
        None => Ok(None),
    }
}

/// Finds stakes `s` with `Σ_i s_i (q_hi − μ_i) ≥ 1` on every constituent, which
/// exist exactly when `M` lies outside the hull of the points.
fn book_for(assessment: &Assessment, members: &[usize]) -> Result<DutchBook> {
    let ps = build_points(&assessment.subfamily(members))?;
    let n = ps.dimension();
    let m = ps.points.len();
    let cols = 2 * n + m;
    let mut a = Vec::with_capacity(m);
    for h in 0..m {
        let mut row = vec![Q::zero(); cols];
        for i in 0..n {
            let d = &ps.points[h][i] - &ps.target[i];
            row[i] = d.clone();
            row[n + i] = -d;
        }
        row[2 * n + h] = -Q::one();
        a.push(row);
    }
    let b = vec![Q::one(); m];
    let x = feasible_point(&a, &b).ok_or(Error::InfeasibleSystem)?;
    let local: Vec<Q> = (0..n).map(|i| &x[i] - &x[n + i]).collect();
    let gains = (0..m).map(|h| ps.gain(&local, h)).collect();
    let mut stakes = vec![Q::zero(); assessment.family.len()];
    for (k, &i) in members.iter().enumerate() {
        stakes[i] = local[k].clone();
    }
    Ok(DutchBook {
        members: members.to_vec(),
        stakes,
        gains,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conditional::ConditionalEvent;
    use crate::crq::indicator;
    use crate::rational::q;

    #[test]
    fn single_conditional_event() {
        let ce = ConditionalEvent::new(Formula::atom("A"), Formula::atom("H")).unwrap();
        let x = Param::probability("x");
        let c = indicator(&ce, &x, &Constraints::none()).unwrap();
        for (v, ok) in [
            (q(0, 1), true),
            (q(1, 2), true),
            (q(1, 1), true),
            (q(3, 2), false),
        ] {
            let a = Assessment::new(Constraints::none()).with(c.clone(), v);
            assert_eq!(is_coherent(&a).unwrap(), ok);
        }
    }
}
