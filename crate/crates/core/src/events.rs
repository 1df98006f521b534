//! Boolean events over named atoms, worlds, logical constraints and constituents.
//!
//! Events are formulas over atomic events. Their meaning is computed by exhaustive
//! enumeration of the worlds (truth assignments) over the atoms in scope, with
//! worlds violating a constraint removed. A [`Universe`] fixes the atoms and
//! constraints and turns formulas into [`WorldSet`]s.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};

/// Largest number of atoms a universe may enumerate.
pub const MAX_ATOMS: usize = 20;

/// A Boolean formula over named atomic events.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    /// The sure event Ω.
    True,
    /// The impossible event ∅.
    False,
    /// A named atomic event.
    Atom(String),
    /// Negation.
    Not(Box<Formula>),
    /// Conjunction.
    And(Box<Formula>, Box<Formula>),
    /// Disjunction.
    Or(Box<Formula>, Box<Formula>),
}

impl Formula {
    /// An atomic event.
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    /// Conjunction `self ∧ other`.
    pub fn and(&self, other: &Formula) -> Formula {
        Formula::And(Box::new(self.clone()), Box::new(other.clone()))
    }

    /// Disjunction `self ∨ other`.
    pub fn or(&self, other: &Formula) -> Formula {
        Formula::Or(Box::new(self.clone()), Box::new(other.clone()))
    }

    /// Negation `¬self`.
    pub fn negate(&self) -> Formula {
        Formula::Not(Box::new(self.clone()))
    }

    /// Conjunction of all formulas, Ω when empty.
    pub fn all<'a>(items: impl IntoIterator<Item = &'a Formula>) -> Formula {
        items
            .into_iter()
            .fold(None, |acc: Option<Formula>, f| {
                Some(match acc {
                    None => f.clone(),
                    Some(a) => a.and(f),
                })
            })
            .unwrap_or(Formula::True)
    }

    /// Disjunction of all formulas, ∅ when empty.
    pub fn any<'a>(items: impl IntoIterator<Item = &'a Formula>) -> Formula {
        items
            .into_iter()
            .fold(None, |acc: Option<Formula>, f| {
                Some(match acc {
                    None => f.clone(),
                    Some(a) => a.or(f),
                })
            })
            .unwrap_or(Formula::False)
    }

    /// The atom names occurring in the formula.
    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    /// The formula with `TRUE` and `FALSE` folded away and double negations removed.
    pub fn simplified(&self) -> Formula {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => self.clone(),
            Formula::Not(f) => match f.simplified() {
                Formula::True => Formula::False,
                Formula::False => Formula::True,
                Formula::Not(g) => *g,
                g => g.negate(),
            },
            Formula::And(a, b) => match (a.simplified(), b.simplified()) {
                (Formula::False, _) | (_, Formula::False) => Formula::False,
                (Formula::True, g) | (g, Formula::True) => g,
                (g, h) => g.and(&h),
            },
            Formula::Or(a, b) => match (a.simplified(), b.simplified()) {
                (Formula::True, _) | (_, Formula::True) => Formula::True,
                (Formula::False, g) | (g, Formula::False) => g,
                (g, h) => g.or(&h),
            },
        }
    }

    pub(crate) fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(name) => {
                out.insert(name.clone());
            }
            Formula::Not(f) => f.collect_atoms(out),
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Or(..) => 1,
            Formula::And(..) => 2,
            _ => 3,
        }
    }
}

impl std::ops::Not for Formula {
    type Output = Formula;
    fn not(self) -> Formula {
        Formula::Not(Box::new(self))
    }
}

impl std::ops::BitAnd for Formula {
    type Output = Formula;
    fn bitand(self, rhs: Formula) -> Formula {
        Formula::And(Box::new(self), Box::new(rhs))
    }
}

impl std::ops::BitOr for Formula {
    type Output = Formula;
    fn bitor(self, rhs: Formula) -> Formula {
        Formula::Or(Box::new(self), Box::new(rhs))
    }
}

impl fmt::Display for Formula {
    /// Prints in the expression language: `!`, `&`, `||`, `TRUE`, `FALSE`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let child = |f: &mut fmt::Formatter<'_>, c: &Formula, min: u8| {
            if c.precedence() < min {
                write!(f, "({c})")
            } else {
                write!(f, "{c}")
            }
        };
        match self {
            Formula::True => write!(f, "TRUE"),
            Formula::False => write!(f, "FALSE"),
            Formula::Atom(name) => write!(f, "{name}"),
            Formula::Not(inner) => {
                write!(f, "!")?;
                child(f, inner, 3)
            }
            Formula::And(a, b) => {
                child(f, a, 2)?;
                write!(f, " & ")?;
                child(f, b, 3)
            }
            Formula::Or(a, b) => {
                child(f, a, 1)?;
                write!(f, " || ")?;
                child(f, b, 2)
            }
        }
    }
}

/// A total truth assignment to named atoms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct World {
    assignment: BTreeMap<String, bool>,
}

impl World {
    /// Builds a world from `(atom, value)` pairs.
    pub fn new<S: Into<String>>(pairs: impl IntoIterator<Item = (S, bool)>) -> Self {
        World {
            assignment: pairs.into_iter().map(|(k, v)| (k.into(), v)).collect(),
        }
    }

    /// Value of an atom, if assigned.
    pub fn get(&self, atom: &str) -> Option<bool> {
        self.assignment.get(atom).copied()
    }

    /// Iterates over `(atom, value)` pairs in atom order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, bool)> {
        self.assignment.iter().map(|(k, v)| (k.as_str(), *v))
    }

    /// The minterm formula that holds exactly in this world.
    pub fn minterm(&self) -> Formula {
        let literals: Vec<Formula> = self
            .assignment
            .iter()
            .map(|(k, &v)| {
                let a = Formula::atom(k.clone());
                if v {
                    a
                } else {
                    !a
                }
            })
            .collect();
        Formula::all(&literals)
    }
}

impl fmt::Display for World {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.assignment {
            if *v {
                write!(f, "{k}")?;
            } else {
                write!(f, "!{k}")?;
            }
        }
        Ok(())
    }
}

/// Evaluates a formula in a world with standard Boolean semantics.
pub fn evaluate(formula: &Formula, world: &World) -> Result<bool> {
    Ok(match formula {
        Formula::True => true,
        Formula::False => false,
        Formula::Atom(name) => world
            .get(name)
            .ok_or_else(|| Error::UnknownAtom(name.clone()))?,
        Formula::Not(f) => !evaluate(f, world)?,
        Formula::And(a, b) => evaluate(a, world)? && evaluate(b, world)?,
        Formula::Or(a, b) => evaluate(a, world)? || evaluate(b, world)?,
    })
}

/// Logical constraints: formulas that must hold in every possible world.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Constraints {
    required: Vec<Formula>,
}

impl Constraints {
    /// No constraints: all atoms are logically independent.
    pub fn none() -> Self {
        Constraints::default()
    }

    /// Adds a formula that must hold in every world.
    pub fn require(mut self, formula: Formula) -> Self {
        self.required.push(formula);
        self
    }

    /// Declares a formula impossible (for instance `A & !K` for `AK̄ = ∅`).
    pub fn forbid(self, formula: Formula) -> Self {
        self.require(!formula)
    }

    /// The required formulas.
    pub fn formulas(&self) -> &[Formula] {
        &self.required
    }

    /// Whether there are no constraints.
    pub fn is_empty(&self) -> bool {
        self.required.is_empty()
    }
}

/// A set of worlds of a [`Universe`], stored as a bitset over its possible worlds.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WorldSet {
    bits: Vec<u64>,
    len: usize,
}

impl WorldSet {
    fn empty(len: usize) -> Self {
        WorldSet {
            bits: vec![0; len.div_ceil(64).max(1)],
            len,
        }
    }

    fn full(len: usize) -> Self {
        let mut s = WorldSet::empty(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    fn insert(&mut self, i: usize) {
        self.bits[i / 64] |= 1 << (i % 64);
    }

    /// Whether world index `i` belongs to the set.
    pub fn contains(&self, i: usize) -> bool {
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    /// Intersection.
    pub fn and(&self, other: &WorldSet) -> WorldSet {
        WorldSet {
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(a, b)| a & b)
                .collect(),
            len: self.len,
        }
    }

    /// Union.
    pub fn or(&self, other: &WorldSet) -> WorldSet {
        WorldSet {
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(a, b)| a | b)
                .collect(),
            len: self.len,
        }
    }

    /// Complement relative to the possible worlds.
    pub fn complement(&self) -> WorldSet {
        let mut out = WorldSet::empty(self.len);
        for i in 0..self.len {
            if !self.contains(i) {
                out.insert(i);
            }
        }
        out
    }

    /// Whether the set has no worlds.
    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&b| b == 0)
    }

    /// Whether every world of `self` is in `other`.
    pub fn is_subset(&self, other: &WorldSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    /// Number of worlds in the set.
    pub fn count(&self) -> usize {
        self.bits.iter().map(|b| b.count_ones() as usize).sum()
    }

    /// Indices of the member worlds, ascending.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.contains(i))
    }
}

/// The atoms in scope together with the possible worlds under a set of constraints.
#[derive(Clone, Debug)]
pub struct Universe {
    atoms: Vec<String>,
    index: HashMap<String, usize>,
    worlds: Vec<u32>,
}

impl Universe {
    /// Builds a universe over the given atoms; constraint atoms are added automatically.
    pub fn new<S: Into<String>>(
        atoms: impl IntoIterator<Item = S>,
        constraints: &Constraints,
    ) -> Result<Self> {
        let mut names: BTreeSet<String> = atoms.into_iter().map(Into::into).collect();
        for c in constraints.formulas() {
            c.collect_atoms(&mut names);
        }
        if names.len() > MAX_ATOMS {
            return Err(Error::TooManyAtoms(names.len()));
        }
        let atoms: Vec<String> = names.into_iter().collect();
        let index = atoms
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), i))
            .collect();
        let mut universe = Universe {
            atoms,
            index,
            worlds: Vec::new(),
        };
        let n = universe.atoms.len();
        // Worlds are ordered so that the first atom varies slowest and `true` comes first.
        let all: Vec<u32> = (0..1u32 << n).map(|k| !k & ((1u32 << n) - 1)).collect();
        let all = all
            .into_iter()
            .map(|m| {
                // Reverse bit order so atom 0 is the most significant position.
                (0..n).fold(0u32, |acc, i| acc | (((m >> (n - 1 - i)) & 1) << i))
            })
            .collect::<Vec<_>>();
        let mut kept = Vec::with_capacity(all.len());
        for mask in all {
            let mut ok = true;
            for c in constraints.formulas() {
                if !universe.eval_mask(c, mask)? {
                    ok = false;
                    break;
                }
            }
            if ok {
                kept.push(mask);
            }
        }
        universe.worlds = kept;
        Ok(universe)
    }

    /// Builds the universe spanned by the atoms of the given formulas.
    pub fn spanning<'a>(
        formulas: impl IntoIterator<Item = &'a Formula>,
        constraints: &Constraints,
    ) -> Result<Self> {
        let mut names = BTreeSet::new();
        for f in formulas {
            f.collect_atoms(&mut names);
        }
        Universe::new(names, constraints)
    }

    /// The atom names, in order.
    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    /// Number of possible worlds.
    pub fn len(&self) -> usize {
        self.worlds.len()
    }

    /// Whether the constraints rule out every world.
    pub fn is_empty(&self) -> bool {
        self.worlds.is_empty()
    }

    /// The possible world with index `i`.
    pub fn world(&self, i: usize) -> World {
        let mask = self.worlds[i];
        World::new(
            self.atoms
                .iter()
                .enumerate()
                .map(|(k, a)| (a.clone(), mask >> k & 1 == 1)),
        )
    }

    fn eval_mask(&self, formula: &Formula, mask: u32) -> Result<bool> {
        Ok(match formula {
            Formula::True => true,
            Formula::False => false,
            Formula::Atom(name) => {
                let i = *self
                    .index
                    .get(name)
                    .ok_or_else(|| Error::UnknownAtom(name.clone()))?;
                mask >> i & 1 == 1
            }
            Formula::Not(f) => !self.eval_mask(f, mask)?,
            Formula::And(a, b) => self.eval_mask(a, mask)? && self.eval_mask(b, mask)?,
            Formula::Or(a, b) => self.eval_mask(a, mask)? || self.eval_mask(b, mask)?,
        })
    }

    /// The set of possible worlds in which the formula holds.
    pub fn extension(&self, formula: &Formula) -> Result<WorldSet> {
        let n = self.worlds.len();
        Ok(match formula {
            Formula::True => WorldSet::full(n),
            Formula::False => WorldSet::empty(n),
            Formula::Atom(name) => {
                let k = *self
                    .index
                    .get(name)
                    .ok_or_else(|| Error::UnknownAtom(name.clone()))?;
                let mut s = WorldSet::empty(n);
                for (i, &m) in self.worlds.iter().enumerate() {
                    if m >> k & 1 == 1 {
                        s.insert(i);
                    }
                }
                s
            }
            Formula::Not(f) => self.extension(f)?.complement(),
            Formula::And(a, b) => self.extension(a)?.and(&self.extension(b)?),
            Formula::Or(a, b) => self.extension(a)?.or(&self.extension(b)?),
        })
    }

    /// The empty world set of this universe.
    pub fn nothing(&self) -> WorldSet {
        WorldSet::empty(self.worlds.len())
    }

    /// The set of all possible worlds.
    pub fn everything(&self) -> WorldSet {
        WorldSet::full(self.worlds.len())
    }

    /// Canonical sum-of-worlds formula for a world set (∅ when empty).
    pub fn canonical(&self, set: &WorldSet) -> Formula {
        let minterms: Vec<Formula> = set.iter().map(|i| self.world(i).minterm()).collect();
        Formula::any(&minterms)
    }

    /// Whether two formulas hold in exactly the same possible worlds.
    pub fn equivalent(&self, a: &Formula, b: &Formula) -> Result<bool> {
        Ok(self.extension(a)? == self.extension(b)?)
    }
}

/// True iff some world satisfies `formula` and every constraint.
pub fn is_possible(formula: &Formula, constraints: &Constraints) -> bool {
    match Universe::spanning([formula], constraints) {
        Ok(u) => u.extension(formula).map(|s| !s.is_empty()).unwrap_or(false),
        Err(_) => false,
    }
}

/// The partition an object induces: its antecedent and the pieces `A_j H` it distinguishes.
///
/// The complement of the antecedent is added implicitly as the last piece.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    /// The conditioning event `H`.
    pub antecedent: Formula,
    /// The pieces inside `H`.
    pub pieces: Vec<Formula>,
}

impl Partition {
    /// The partition `{AH, ĀH, H̄}` of a conditional event `A|H`.
    pub fn of_conditional(consequent: &Formula, antecedent: &Formula) -> Self {
        Partition {
            antecedent: antecedent.clone(),
            pieces: vec![
                consequent.and(antecedent),
                consequent.negate().and(antecedent),
            ],
        }
    }
}

/// A possible elementary outcome generated by a family of objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constituent {
    /// Index `h`; `0` is reserved for the outcome where every antecedent is false.
    pub index: usize,
    /// Canonical sum-of-worlds formula.
    pub formula: Formula,
    /// The worlds realising the constituent.
    pub worlds: Vec<World>,
    pub(crate) set: WorldSet,
}

impl Constituent {
    /// The constituent as a set of universe worlds.
    pub fn world_set(&self) -> &WorldSet {
        &self.set
    }
}

/// Groups universe worlds by a signature, preserving first-occurrence order.
pub(crate) fn group_worlds<K: Eq + std::hash::Hash + Clone>(
    universe: &Universe,
    signature: impl Fn(usize) -> K,
) -> Vec<(K, WorldSet)> {
    let mut order: Vec<(K, WorldSet)> = Vec::new();
    let mut position: HashMap<K, usize> = HashMap::new();
    for w in 0..universe.len() {
        let key = signature(w);
        let slot = *position.entry(key.clone()).or_insert_with(|| {
            order.push((key.clone(), universe.nothing()));
            order.len() - 1
        });
        order[slot].1.insert(w);
    }
    order
}

/// Enumerates the constituents generated by a family of partitions.
///
/// Constituents inside `H_1 ∨ ⋯ ∨ H_n` come first with indices `1..=m` in world
/// order; the constituent `H̄_1 ⋯ H̄_n` comes last with index `0` when possible.
pub fn constituents(family: &[Partition], constraints: &Constraints) -> Result<Vec<Constituent>> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let formulas = family
        .iter()
        .flat_map(|p| std::iter::once(&p.antecedent).chain(p.pieces.iter()));
    let universe = Universe::spanning(formulas, constraints)?;
    let mut piece_sets = Vec::with_capacity(family.len());
    for p in family {
        let sets = p
            .pieces
            .iter()
            .map(|f| universe.extension(f))
            .collect::<Result<Vec<_>>>()?;
        piece_sets.push(sets);
    }
    let groups = group_worlds(&universe, |w| {
        piece_sets
            .iter()
            .map(|sets| sets.iter().position(|s| s.contains(w)))
            .collect::<Vec<Option<usize>>>()
    });
    let mut inside = Vec::new();
    let mut outside = None;
    for (sig, set) in groups {
        if sig.iter().all(Option::is_none) {
            outside = Some(set);
        } else {
            inside.push(set);
        }
    }
    let build = |index: usize, set: WorldSet| Constituent {
        index,
        formula: universe.canonical(&set),
        worlds: set.iter().map(|w| universe.world(w)).collect(),
        set,
    };
    let mut out: Vec<Constituent> = inside
        .into_iter()
        .enumerate()
        .map(|(h, set)| build(h + 1, set))
        .collect();
    if let Some(set) = outside {
        out.push(build(0, set));
    }
    Ok(out)
}
