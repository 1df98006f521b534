//! Coherent extension intervals by bisection, closed-form bounds and their comparison.
//!
//! The set of coherent values of one free parameter, with every other value fixed, is
//! a closed interval or a closed ray. [`extension_interval`] locates a coherent seed
//! value and bisects towards both ends with exact coherence checks at every midpoint.
//! When a closed-form interval is supplied, each endpoint found by bisection is
//! replaced by the closed-form endpoint provided the latter is coherent and the value
//! just outside it is not.

use std::fmt;

use num::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coherence::{is_coherent, Assessment};
use crate::conditional::{
    conjoin_trivalent, iterate_trivalent, negate, ConditionalEvent, TrivalentIteration,
    TrivalentKind,
};
use crate::crq::{conjoin_gs, indicator, iterate_structural, Crq, StructuralKind};
use crate::error::{Error, Result};
use crate::events::{Constraints, Formula};
use crate::expr::{Expr, Param};
use crate::rational::{fmt_q, q, qi, simplest_between, to_f64, Q};

/// A closed interval `[lower, upper]`, or a ray `[lower, +∞)` when `upper` is `None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionInterval {
    /// Lower endpoint.
    pub lower: Q,
    /// Upper endpoint, `None` when unbounded above.
    pub upper: Option<Q>,
    /// Whether the lower endpoint belongs to the interval.
    pub lower_attained: bool,
    /// Whether the upper endpoint belongs to the interval.
    pub upper_attained: bool,
}

impl ExtensionInterval {
    /// The closed interval `[lower, upper]`.
    pub fn closed(lower: Q, upper: Q) -> Self {
        ExtensionInterval {
            lower,
            upper: Some(upper),
            lower_attained: true,
            upper_attained: true,
        }
    }

    /// The ray `[lower, +∞)`.
    pub fn ray(lower: Q) -> Self {
        ExtensionInterval {
            lower,
            upper: None,
            lower_attained: true,
            upper_attained: false,
        }
    }

    /// Whether `v` lies in the interval.
    pub fn contains(&self, v: &Q) -> bool {
        v >= &self.lower && self.upper.as_ref().is_none_or(|u| v <= u)
    }

    /// Whether the interval is the single point `v`.
    pub fn is_point(&self, v: &Q) -> bool {
        &self.lower == v && self.upper.as_ref() == Some(v)
    }

    /// Whether both endpoints are within `tol` of the other interval's (rays must match).
    pub fn close_to(&self, other: &ExtensionInterval, tol: &Q) -> bool {
        let lo = (&self.lower - &other.lower).abs() <= *tol;
        let hi = match (&self.upper, &other.upper) {
            (Some(a), Some(b)) => (a - b).abs() <= *tol,
            (None, None) => true,
            _ => false,
        };
        lo && hi
    }
}

impl fmt::Display for ExtensionInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.upper {
            Some(u) => write!(f, "[{}, {}]", fmt_q(&self.lower), fmt_q(u)),
            None => write!(f, "[{}, +inf)", fmt_q(&self.lower)),
        }
    }
}

/// Options of the bisection search.
#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Bisection stops once the bracket is narrower than this.
    pub tolerance: Q,
    /// Values coherent at the cap are reported as unbounded above.
    pub cap: Q,
    /// The lowest value searched.
    pub floor: Q,
    /// Distance used to confirm that a snapped endpoint is sharp.
    pub snap_margin: Q,
    /// Closed-form interval to snap to, when known.
    pub closed_form: Option<ExtensionInterval>,
    /// Extra candidate seed values tried before the default grid.
    pub hints: Vec<Q>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            tolerance: q(1, 1_000_000_000),
            cap: qi(1 << 20),
            floor: Q::zero(),
            snap_margin: q(1, 1_000_000),
            closed_form: None,
            hints: Vec::new(),
        }
    }
}

struct Probe<'a> {
    assessment: Assessment,
    target: &'a Param,
}

impl Probe<'_> {
    fn coherent(&mut self, v: &Q) -> Result<bool> {
        self.assessment.set(self.target, v.clone());
        is_coherent(&self.assessment)
    }
}

fn single_unbound(assessment: &Assessment) -> Result<Param> {
    let unbound = assessment.unbound_params();
    if unbound.len() != 1 {
        return Err(Error::MultipleUnbound(
            unbound.iter().map(|p| p.name().to_string()).collect(),
        ));
    }
    Ok(unbound[0].clone())
}

/// The interval of coherent values of the single unbound parameter.
pub fn extension_interval(
    assessment: &Assessment,
    opts: &SearchOptions,
) -> Result<ExtensionInterval> {
    let target = single_unbound(assessment)?;
    let base: Vec<usize> = (0..assessment.family().len())
        .filter(|&i| !assessment.member_params(i).contains(&target))
        .collect();
    if !base.is_empty() && !is_coherent(&assessment.subfamily(&base))? {
        return Err(Error::BaseIncoherent);
    }
    let mut probe = Probe {
        assessment: assessment.clone(),
        target: &target,
    };

    let mut candidates: Vec<Q> = Vec::new();
    if let Some(cf) = &opts.closed_form {
        candidates.push(cf.lower.clone());
        if let Some(u) = &cf.upper {
            candidates.push((&cf.lower + u) / qi(2));
            candidates.push(u.clone());
        }
    }
    candidates.extend(opts.hints.iter().cloned());
    candidates.extend((0..=16).map(|k| &opts.floor + q(k, 16)));
    let mut p = qi(2);
    while p <= opts.cap {
        candidates.push(p.clone());
        p *= qi(2);
    }
    let mut seed = None;
    for c in candidates {
        if c < opts.floor || c > opts.cap {
            continue;
        }
        if probe.coherent(&c)? {
            seed = Some(c);
            break;
        }
    }
    let seed = seed.ok_or(Error::NoCoherentExtension)?;

    let lower = if probe.coherent(&opts.floor)? {
        opts.floor.clone()
    } else {
        let (bad, good) = bisect(
            &mut probe,
            opts.floor.clone(),
            seed.clone(),
            &opts.tolerance,
        )?;
        let snapped = match &opts.closed_form {
            Some(cf) => snap(&mut probe, &cf.lower, &good, -&opts.snap_margin, opts)?,
            None => None,
        };
        match snapped {
            Some(v) => v,
            None => tidy(&mut probe, &bad, &good)?,
        }
    };

    let upper = if probe.coherent(&opts.cap)? {
        None
    } else {
        let (bad, good) = bisect(&mut probe, opts.cap.clone(), seed, &opts.tolerance)?;
        let snapped = match opts.closed_form.as_ref().and_then(|cf| cf.upper.as_ref()) {
            Some(u) => snap(&mut probe, u, &good, opts.snap_margin.clone(), opts)?,
            None => None,
        };
        Some(match snapped {
            Some(v) => v,
            None => tidy(&mut probe, &bad, &good)?,
        })
    };
    Ok(match upper {
        Some(u) => ExtensionInterval::closed(lower, u),
        None => ExtensionInterval::ray(lower),
    })
}

/// Shrinks a bracket `(bad, good)` with `bad` incoherent and `good` coherent.
fn bisect(probe: &mut Probe<'_>, mut bad: Q, mut good: Q, tol: &Q) -> Result<(Q, Q)> {
    while (&good - &bad).abs() >= *tol {
        let mid = (&good + &bad) / qi(2);
        if probe.coherent(&mid)? {
            good = mid;
        } else {
            bad = mid;
        }
    }
    Ok((bad, good))
}

/// Accepts a closed-form endpoint when it is near the bracket, coherent, and the
/// value one margin step outside it is incoherent.
fn snap(
    probe: &mut Probe<'_>,
    candidate: &Q,
    good: &Q,
    outward: Q,
    opts: &SearchOptions,
) -> Result<Option<Q>> {
    if (candidate - good).abs() > opts.snap_margin {
        return Ok(None);
    }
    if !probe.coherent(candidate)? {
        return Ok(None);
    }
    let outside = candidate + outward;
    if outside >= opts.floor && outside <= opts.cap && probe.coherent(&outside)? {
        return Ok(None);
    }
    Ok(Some(candidate.clone()))
}

/// The simplest coherent rational in the final bracket, falling back to `good`.
fn tidy(probe: &mut Probe<'_>, bad: &Q, good: &Q) -> Result<Q> {
    let (lo, hi) = if bad < good { (bad, good) } else { (good, bad) };
    let s = simplest_between(lo, hi);
    if &s != bad && probe.coherent(&s)? {
        Ok(s)
    } else {
        Ok(good.clone())
    }
}

/// The bound formulas with a closed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BoundKind {
    /// `P((A|H) ∧_K (B|K))` given `x`, `y`.
    ConjK,
    /// `P((A|H) ∧_L (B|K))` given `x`, `y`.
    ConjL,
    /// `P((A|H) ∧_B (B|K))` given `x`, `y`.
    ConjB,
    /// `P((A|H) ∧_S (B|K))` given `x`, `y`.
    ConjS,
    /// `ℙ((A|H) ∧_gs (B|K))` given `x`, `y` (Fréchet–Hoeffding).
    ConjGs,
    /// `P((A|H) ∧_S (B|K))` given `x = P(A|H)` and `y = P((B|K)|_C(A|H))`.
    IterC,
    /// `P((A|H) ∧_K (B|K))` given `x = P(A|H)` and `y = P((B|K)|_dF(A|H))`.
    IterDF,
    /// `P((A|H) ∧_K (B|K))` given `x = P(A|H)` and `y = P((B|K)|_F(A|H))` (Hamacher).
    IterF,
    /// `ℙ((B|K)|_K(A|H))` given `x`, `y`.
    IterK,
    /// `ℙ((B|K)|_L(A|H))` given `x`, `y`.
    IterL,
    /// `ℙ((B|K)|_B(A|H))` given `x`, `y`.
    IterB,
    /// `ℙ((B|K)|_S(A|H))` given `x`, `y`.
    IterS,
    /// `ℙ((B|K)|_gs(A|H))` given `x`, `y`.
    IterGs,
    /// `P(B|A)` given `P(A) = x`, `P(B) = y`.
    PlainConditional,
}

impl BoundKind {
    /// Every kind.
    pub const ALL: [BoundKind; 14] = [
        BoundKind::ConjK,
        BoundKind::ConjL,
        BoundKind::ConjB,
        BoundKind::ConjS,
        BoundKind::ConjGs,
        BoundKind::IterC,
        BoundKind::IterDF,
        BoundKind::IterF,
        BoundKind::IterK,
        BoundKind::IterL,
        BoundKind::IterB,
        BoundKind::IterS,
        BoundKind::IterGs,
        BoundKind::PlainConditional,
    ];

    /// The command-line name, for example `conj_K` or `iter_gs`.
    pub fn name(self) -> &'static str {
        match self {
            BoundKind::ConjK => "conj_K",
            BoundKind::ConjL => "conj_L",
            BoundKind::ConjB => "conj_B",
            BoundKind::ConjS => "conj_S",
            BoundKind::ConjGs => "conj_gs",
            BoundKind::IterC => "iter_C",
            BoundKind::IterDF => "iter_dF",
            BoundKind::IterF => "iter_F",
            BoundKind::IterK => "iter_K",
            BoundKind::IterL => "iter_L",
            BoundKind::IterB => "iter_B",
            BoundKind::IterS => "iter_S",
            BoundKind::IterGs => "iter_gs",
            BoundKind::PlainConditional => "plain_conditional",
        }
    }

    /// Parses a command-line name.
    pub fn from_name(name: &str) -> Option<BoundKind> {
        BoundKind::ALL.into_iter().find(|k| k.name() == name)
    }
}

/// The exact interval of the closed-form bound of `kind` at `(x, y)`.
pub fn closed_form_bounds(kind: BoundKind, x: &Q, y: &Q) -> Result<ExtensionInterval> {
    let zero = Q::zero();
    let one = Q::one();
    if x < &zero || x > &one || y < &zero || y > &one {
        return Err(Error::OutOfDomain(kind.name().to_string()));
    }
    let min = |a: &Q, b: &Q| if a < b { a.clone() } else { b.clone() };
    let max = |a: &Q, b: &Q| if a > b { a.clone() } else { b.clone() };
    let xy = x * y;
    let frechet_low = max(&(x + y - &one), &zero);
    let s_high = || {
        if x.is_one() && y.is_one() {
            one.clone()
        } else {
            (x + y - qi(2) * &xy) / (&one - &xy)
        }
    };
    Ok(match kind {
        BoundKind::ConjK | BoundKind::ConjL => ExtensionInterval::closed(zero, min(x, y)),
        BoundKind::ConjB => ExtensionInterval::closed(zero, one),
        BoundKind::ConjS => ExtensionInterval::closed(frechet_low, s_high()),
        BoundKind::ConjGs => ExtensionInterval::closed(frechet_low, min(x, y)),
        BoundKind::IterC => ExtensionInterval::closed(xy, max(x, y)),
        BoundKind::IterDF => ExtensionInterval::closed(zero, xy),
        BoundKind::IterF => {
            let upper = if x.is_zero() || y.is_zero() {
                zero.clone()
            } else {
                &xy / (x + y - &xy)
            };
            ExtensionInterval::closed(zero, upper)
        }
        BoundKind::IterK | BoundKind::IterL => {
            if x.is_zero() {
                ExtensionInterval::closed(zero, one)
            } else {
                ExtensionInterval::closed(zero, min(&one, &(y / x)))
            }
        }
        BoundKind::IterB => {
            if x.is_zero() || x.is_one() {
                ExtensionInterval::closed(zero, one)
            } else {
                ExtensionInterval::closed(zero, x.recip())
            }
        }
        BoundKind::IterS => {
            if x.is_zero() {
                ExtensionInterval::ray(zero)
            } else {
                ExtensionInterval::closed(max(&((x + y - &one) / x), &zero), s_high() / x)
            }
        }
        BoundKind::IterGs | BoundKind::PlainConditional => {
            if x.is_zero() {
                ExtensionInterval::closed(zero, one)
            } else {
                ExtensionInterval::closed(frechet_low / x, min(x, y) / x)
            }
        }
    })
}

/// The events `A`, `B`, `H`, `K`, the conditionals `A|H`, `B|K` and their parameters.
#[derive(Clone, Debug)]
pub struct StandardPair {
    /// `A|H`.
    pub ah: ConditionalEvent,
    /// `B|K`.
    pub bk: ConditionalEvent,
    /// `x = P(A|H)`.
    pub x: Param,
    /// `y = P(B|K)`.
    pub y: Param,
    /// Constraints in force (none: logical independence).
    pub constraints: Constraints,
}

impl StandardPair {
    /// `A|H` and `B|K` over four logically independent atoms.
    pub fn new() -> Self {
        StandardPair::with_constraints(Constraints::none())
    }

    /// `A|H` and `B|K` under the given constraints.
    pub fn with_constraints(constraints: Constraints) -> Self {
        let ce = |a: &str, h: &str| {
            ConditionalEvent::with_constraints(Formula::atom(a), Formula::atom(h), &constraints)
                .expect("atomic antecedents are possible")
        };
        StandardPair {
            ah: ce("A", "H"),
            bk: ce("B", "K"),
            x: Param::probability("x"),
            y: Param::probability("y"),
            constraints: constraints.clone(),
        }
    }

    /// The indicator of `A|H` with prevision `x`.
    pub fn ah_crq(&self) -> Crq {
        indicator(&self.ah, &self.x, &self.constraints).expect("possible antecedent")
    }

    /// The indicator of `B|K` with prevision `y`.
    pub fn bk_crq(&self) -> Crq {
        indicator(&self.bk, &self.y, &self.constraints).expect("possible antecedent")
    }

    /// `(B|K) |_kind (A|H)` with prevision `mu`.
    pub fn iterated(&self, kind: StructuralKind, mu: &Param) -> Result<Crq> {
        iterate_structural(
            kind,
            &self.ah,
            &self.bk,
            &self.x,
            &self.y,
            mu,
            &self.constraints,
        )
    }

    /// `(A|H) |_kind (B|K)` with prevision `nu` (roles exchanged).
    pub fn swapped(&self, kind: StructuralKind, nu: &Param) -> Result<Crq> {
        iterate_structural(
            kind,
            &self.bk,
            &self.ah,
            &self.y,
            &self.x,
            nu,
            &self.constraints,
        )
    }

    /// The indicator of `(A|H) ∧_kind (B|K)` with prevision `z`.
    pub fn conjunction(&self, kind: TrivalentKind, z: &Param) -> Result<Crq> {
        let c = conjoin_trivalent(kind, &self.ah, &self.bk, &self.constraints)?;
        Ok(indicator(&c, z, &self.constraints)?.with_label(format!(
            "({}) and_{} ({})",
            self.ah,
            kind.name(),
            self.bk
        )))
    }

    /// `(A|H) ∧_gs (B|K)` with prevision `z`.
    pub fn gs_conjunction(&self, z: &Param) -> Result<Crq> {
        conjoin_gs(&self.ah, &self.bk, &self.x, &self.y, z, &self.constraints)
    }

    /// The indicator of `(B|K) |_kind (A|H)` for a conditional-event-valued kind.
    pub fn trivalent_iterated(&self, kind: TrivalentIteration, p: &Param) -> Result<Crq> {
        let c = iterate_trivalent(kind, &self.ah, &self.bk, &self.constraints)?;
        Ok(indicator(&c, p, &self.constraints)?.with_label(format!(
            "({}) iter_{} ({})",
            self.bk,
            kind.name(),
            self.ah
        )))
    }
}

impl Default for StandardPair {
    fn default() -> Self {
        StandardPair::new()
    }
}

/// The family and free target parameter whose extension interval `kind` describes.
pub fn bound_family(kind: BoundKind, x: &Q, y: &Q) -> Result<(Assessment, Param)> {
    let sp = StandardPair::new();
    let z = Param::probability("z");
    let mu = Param::prevision("mu");
    let base = || {
        Assessment::new(Constraints::none())
            .with(sp.ah_crq(), x.clone())
            .with(sp.bk_crq(), y.clone())
    };
    let conj = |k: TrivalentKind| -> Result<(Assessment, Param)> {
        Ok((base().with_target(sp.conjunction(k, &z)?), z.clone()))
    };
    let iter_conj = |it: TrivalentIteration, k: TrivalentKind| -> Result<(Assessment, Param)> {
        let w = Param::probability("y");
        Ok((
            Assessment::new(Constraints::none())
                .with(sp.ah_crq(), x.clone())
                .with(sp.trivalent_iterated(it, &w)?, y.clone())
                .with_target(sp.conjunction(k, &z)?),
            z.clone(),
        ))
    };
    let iter = |k: StructuralKind| -> Result<(Assessment, Param)> {
        Ok((with_tied_conjunction(base(), &sp, k, &mu)?, mu.clone()))
    };
    match kind {
        BoundKind::ConjK => conj(TrivalentKind::K),
        BoundKind::ConjL => conj(TrivalentKind::L),
        BoundKind::ConjB => conj(TrivalentKind::B),
        BoundKind::ConjS => conj(TrivalentKind::S),
        BoundKind::ConjGs => Ok((base().with_target(sp.gs_conjunction(&z)?), z.clone())),
        BoundKind::IterC => iter_conj(TrivalentIteration::C, TrivalentKind::S),
        BoundKind::IterDF => iter_conj(TrivalentIteration::DF, TrivalentKind::K),
        BoundKind::IterF => iter_conj(TrivalentIteration::F, TrivalentKind::K),
        BoundKind::IterK => iter(StructuralKind::K),
        BoundKind::IterL => iter(StructuralKind::L),
        BoundKind::IterB => iter(StructuralKind::B),
        BoundKind::IterS => iter(StructuralKind::S),
        BoundKind::IterGs => iter(StructuralKind::Gs),
        BoundKind::PlainConditional => {
            let a = Formula::atom("A");
            let b = Formula::atom("B");
            let none = Constraints::none();
            let ev =
                |f: &Formula, p: &Param| indicator(&ConditionalEvent::event(f.clone()), p, &none);
            let b_given_a = ConditionalEvent::new(b.clone(), a.clone())?;
            Ok((
                Assessment::new(none.clone())
                    .with(ev(&a, &sp.x)?, x.clone())
                    .with(ev(&b, &sp.y)?, y.clone())
                    .with_target(indicator(&b_given_a, &mu, &none)?),
                mu,
            ))
        }
    }
}

/// Appends `(A|H) ∧_kind (B|K)` and `(B|K)|_kind(A|H)` to `base`, with the probability
/// of the conjunction tied to `x·μ` as the compound prevision identity requires.
pub fn with_tied_conjunction(
    base: Assessment,
    sp: &StandardPair,
    kind: StructuralKind,
    mu: &Param,
) -> Result<Assessment> {
    let z = Param::probability("z");
    let conj = match kind.trivalent() {
        Some(t) => sp.conjunction(t, &z)?,
        None => sp.gs_conjunction(&z)?,
    };
    Ok(base
        .with_target(conj)
        .tie(&z, Expr::param(&sp.x).mul(&Expr::param(mu))?)
        .with_target(sp.iterated(kind, mu)?))
}

/// One grid point of a bounds comparison.
#[derive(Clone, Debug)]
pub struct BoundsRow {
    /// First argument.
    pub x: Q,
    /// Second argument.
    pub y: Q,
    /// Interval found by bisection without snapping.
    pub search: ExtensionInterval,
    /// Closed-form interval.
    pub closed: ExtensionInterval,
    /// Whether the two agree within the tolerance.
    pub ok: bool,
}

/// Result of [`verify_bounds_match`].
#[derive(Clone, Debug)]
pub struct BoundsReport {
    /// The kind compared.
    pub kind: BoundKind,
    /// Tolerance used.
    pub tolerance: Q,
    /// One row per grid point, in grid order.
    pub rows: Vec<BoundsRow>,
}

impl BoundsReport {
    /// Rows where search and closed form disagree.
    pub fn failures(&self) -> Vec<&BoundsRow> {
        self.rows.iter().filter(|r| !r.ok).collect()
    }
}

/// Compares bisection with the closed form of `kind` on every grid point.
///
/// The search runs without the closed form, so agreement is a genuine cross-check.
pub fn verify_bounds_match(
    kind: BoundKind,
    grid: &[(Q, Q)],
    tolerance: &Q,
    opts: &SearchOptions,
) -> Result<BoundsReport> {
    let rows = grid
        .par_iter()
        .map(|(x, y)| {
            let closed = closed_form_bounds(kind, x, y)?;
            let (a, _) = bound_family(kind, x, y)?;
            let search = extension_interval(&a, opts)?;
            let ok = search.close_to(&closed, tolerance);
            Ok(BoundsRow {
                x: x.clone(),
                y: y.clone(),
                search,
                closed,
                ok,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundsReport {
        kind,
        tolerance: tolerance.clone(),
        rows,
    })
}

/// The grid `{0, 1/(k−1), …, 1}²` in row-major order.
pub fn unit_grid(k: usize) -> Vec<(Q, Q)> {
    let step = |i: usize| q(i as i64, (k - 1) as i64);
    (0..k)
        .flat_map(|i| (0..k).map(move |j| (step(i), step(j))))
        .collect()
}

/// `cons |_kind ant` together with `ant ∧_kind cons`, the probability of the latter
/// tied to `P(ant)·μ`.
fn tied_pair(
    sp: &StandardPair,
    kind: StructuralKind,
    ant: (&ConditionalEvent, &Param),
    cons: (&ConditionalEvent, &Param),
    mu: &Param,
    z: &Param,
) -> Result<(Crq, Crq, Expr)> {
    let c = &sp.constraints;
    let conj = match kind.trivalent() {
        Some(t) => indicator(&conjoin_trivalent(t, ant.0, cons.0, c)?, z, c)?,
        None => conjoin_gs(ant.0, cons.0, ant.1, cons.1, z, c)?,
    };
    let iter = iterate_structural(kind, ant.0, cons.0, ant.1, cons.1, mu, c)?;
    Ok((conj, iter, Expr::param(ant.1).mul(&Expr::param(mu))?))
}

/// The joint family of `(B|K)|_kind(A|H)` at `μ` and `(A|H)|_kind(B|K)` left free,
/// each with its conjunction, given `P(A|H) = x` and `P(B|K) = y`.
pub fn bayes_swapped_family(
    kind: StructuralKind,
    x: &Q,
    y: &Q,
    mu: &Q,
) -> Result<(Assessment, Param)> {
    let sp = StandardPair::new();
    let (mu_p, nu_p) = (Param::prevision("mu"), Param::prevision("nu"));
    let (z1, z2) = (Param::probability("z"), Param::probability("z_swapped"));
    let (c1, y1, t1) = tied_pair(&sp, kind, (&sp.ah, &sp.x), (&sp.bk, &sp.y), &mu_p, &z1)?;
    let (c2, y2, t2) = tied_pair(&sp, kind, (&sp.bk, &sp.y), (&sp.ah, &sp.x), &nu_p, &z2)?;
    let a = Assessment::new(Constraints::none())
        .with(sp.ah_crq(), x.clone())
        .with(sp.bk_crq(), y.clone())
        .with_target(c1)
        .tie(&z1, t1)
        .with(y1, mu.clone())
        .with_target(c2)
        .tie(&z2, t2)
        .with_target(y2);
    Ok((a, nu_p))
}

/// Extension interval of `ℙ[(A|H)|_kind(B|K)]` on [`bayes_swapped_family`].
///
/// Coherence forces the single value `μx/y` when `y > 0`.
pub fn bayes_swapped_interval(
    kind: StructuralKind,
    x: &Q,
    y: &Q,
    mu: &Q,
    opts: &SearchOptions,
) -> Result<ExtensionInterval> {
    let (a, _) = bayes_swapped_family(kind, x, y, mu)?;
    let mut o = opts.clone();
    if !y.is_zero() {
        o.hints.push(mu * x / y);
    }
    extension_interval(&a, &o)
}

/// The family of [`bayes_swapped_family`] with `ν = μx/y` bound, extended by
/// `(A|H)|_kind(B̄|K)` with free prevision `ν̄` and its conjunction. The parameter
/// `P(B̄|K)` is bound to `1 − y`.
pub fn bayes_total_family(
    kind: StructuralKind,
    x: &Q,
    y: &Q,
    mu: &Q,
) -> Result<(Assessment, Param)> {
    if y.is_zero() || y.is_one() || x.is_zero() {
        return Err(Error::OutOfDomain("total-probability Bayes rule".into()));
    }
    let sp = StandardPair::new();
    let nu_bar = Param::prevision("nu_bar");
    let y_bar = Param::probability("y_bar");
    let z3 = Param::probability("z_negated");
    let bk_bar = negate(&sp.bk);
    let (c3, y3, t3) = tied_pair(&sp, kind, (&bk_bar, &y_bar), (&sp.ah, &sp.x), &nu_bar, &z3)?;
    let (a, nu) = bayes_swapped_family(kind, x, y, mu)?;
    let a = a
        .bind(&nu, mu * x / y)
        .bind(&y_bar, Q::one() - y)
        .with_target(c3)
        .tie(&z3, t3)
        .with_target(y3);
    Ok((a, nu_bar))
}

/// The value `x(1−μ)/(1−y)` of `ν̄` that makes the total-probability form of Bayes'
/// rule hold, given the value `μx/y` of `ν`.
pub fn bayes_total_expected(x: &Q, y: &Q, mu: &Q) -> Q {
    x * (Q::one() - mu) / (Q::one() - y)
}

/// Outcome of a total-probability Bayes check at one point.
#[derive(Clone, Debug)]
pub struct BayesTotalCheck {
    /// Coherent values of `ν̄`.
    pub interval: ExtensionInterval,
    /// The value the rule prescribes.
    pub expected: Q,
    /// A coherent value of `ν̄` different from the prescribed one, if any.
    pub counterexample: Option<Q>,
}

impl BayesTotalCheck {
    /// Whether coherence forces the prescribed value.
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks whether coherence forces `ℙ[(A|H)|_kind(B̄|K)] = x(1−μ)/(1−y)`.
pub fn bayes_total_check(
    kind: StructuralKind,
    x: &Q,
    y: &Q,
    mu: &Q,
    opts: &SearchOptions,
) -> Result<BayesTotalCheck> {
    let (a, _) = bayes_total_family(kind, x, y, mu)?;
    let expected = bayes_total_expected(x, y, mu);
    let mut o = opts.clone();
    o.hints.push(expected.clone());
    let interval = extension_interval(&a, &o)?;
    let counterexample = if interval.is_point(&expected) {
        None
    } else if interval.lower != expected {
        Some(interval.lower.clone())
    } else {
        interval.upper.clone()
    };
    Ok(BayesTotalCheck {
        interval,
        expected,
        counterexample,
    })
}

/// The right-hand side `νy / (νy + ν̄(1−y))` of the total-probability form of Bayes' rule.
pub fn bayes_total_rhs(y: &Q, nu: &Q, nu_bar: &Q) -> Option<Q> {
    let den = nu * y + nu_bar * (Q::one() - y);
    (!den.is_zero()).then(|| nu * y / den)
}

/// Lossy summary used in human-readable reports.
pub fn describe(interval: &ExtensionInterval) -> String {
    match &interval.upper {
        Some(u) => format!("[{:.6}, {:.6}]", to_f64(&interval.lower), to_f64(u)),
        None => format!("[{:.6}, +inf)", to_f64(&interval.lower)),
    }
}
