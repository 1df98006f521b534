//! Independent oracles shared by the integration tests.
//!
//! Nothing here calls into the library's evaluation code: truth tables are written
//! out by hand and coherence is decided by brute-force hull membership over
//! `Ratio<i128>`.
#![allow(dead_code)]

use conditionals::TrivalentValue::{self, False as F, True as T, Void as V};
use conditionals::{Formula, TrivalentIteration, TrivalentKind, World};
use num::rational::Ratio;
use num::{One, Zero};

pub type R = Ratio<i128>;

pub fn r(n: i128, d: i128) -> R {
    R::new(n, d)
}

/// All worlds over the atoms `A`, `B`, `H`, `K`.
pub fn worlds4() -> Vec<World> {
    worlds(&["A", "B", "H", "K"])
}

/// All truth assignments over `atoms`.
pub fn worlds(atoms: &[&str]) -> Vec<World> {
    (0..1u32 << atoms.len())
        .map(|m| World::new(atoms.iter().enumerate().map(|(i, a)| (*a, m >> i & 1 == 1))))
        .collect()
}

/// The value of `a|h` in `w` for atomic `a` and `h`.
pub fn value(w: &World, a: &str, h: &str) -> TrivalentValue {
    match (w.get(h).unwrap(), w.get(a).unwrap()) {
        (false, _) => V,
        (true, true) => T,
        (true, false) => F,
    }
}

pub fn not3(v: TrivalentValue) -> TrivalentValue {
    match v {
        T => F,
        F => T,
        V => V,
    }
}

/// Conjunction tables; the L table maps void and void to false.
pub fn and3(kind: TrivalentKind, x: TrivalentValue, y: TrivalentValue) -> TrivalentValue {
    match kind {
        TrivalentKind::K => match (x, y) {
            (F, _) | (_, F) => F,
            (T, T) => T,
            _ => V,
        },
        TrivalentKind::L => match (x, y) {
            (F, _) | (_, F) | (V, V) => F,
            (T, T) => T,
            _ => V,
        },
        TrivalentKind::B => match (x, y) {
            (V, _) | (_, V) => V,
            (T, T) => T,
            _ => F,
        },
        TrivalentKind::S => match (x, y) {
            (V, z) | (z, V) => z,
            (T, T) => T,
            _ => F,
        },
    }
}

pub fn or3(kind: TrivalentKind, x: TrivalentValue, y: TrivalentValue) -> TrivalentValue {
    not3(and3(kind, not3(x), not3(y)))
}

/// Iterated conditioning of `b` given `a`.
pub fn iter3(kind: TrivalentIteration, a: TrivalentValue, b: TrivalentValue) -> TrivalentValue {
    match kind {
        TrivalentIteration::C => {
            if a == F {
                V
            } else {
                b
            }
        }
        TrivalentIteration::DF => {
            if a == T {
                b
            } else {
                V
            }
        }
        TrivalentIteration::F => match (a, b) {
            (T, T) => T,
            (T, F) | (V, F) => F,
            _ => V,
        },
    }
}

/// A small formula over atoms `0..n`, mirrored into a library [`Formula`].
#[derive(Clone, Debug)]
pub enum Small {
    Lit(usize, bool),
    And(Box<Small>, Box<Small>),
    Or(Box<Small>, Box<Small>),
}

impl Small {
    pub fn eval(&self, mask: u32) -> bool {
        match self {
            Small::Lit(i, pos) => (mask >> i & 1 == 1) == *pos,
            Small::And(a, b) => a.eval(mask) && b.eval(mask),
            Small::Or(a, b) => a.eval(mask) || b.eval(mask),
        }
    }

    pub fn formula(&self) -> Formula {
        match self {
            Small::Lit(i, true) => Formula::atom(format!("E{i}")),
            Small::Lit(i, false) => !Formula::atom(format!("E{i}")),
            Small::And(a, b) => a.formula() & b.formula(),
            Small::Or(a, b) => a.formula() | b.formula(),
        }
    }
}

/// A conditional event `consequent | antecedent` over small formulas.
#[derive(Clone, Debug)]
pub struct Cond {
    pub consequent: Small,
    pub antecedent: Small,
}

impl Cond {
    fn value(&self, mask: u32) -> TrivalentValue {
        if !self.antecedent.eval(mask) {
            V
        } else if self.consequent.eval(mask) {
            T
        } else {
            F
        }
    }
}

/// Solves `Σ λ_j P_j = M`, `Σ λ_j = 1` on the given points; returns the unique
/// solution when the points are affinely independent and the system is consistent.
fn solve_subset(points: &[&Vec<R>], target: &[R]) -> Option<Vec<R>> {
    let k = points.len();
    let n = target.len();
    // Rows: n coordinates plus the normalisation; columns: k unknowns plus rhs.
    let mut m: Vec<Vec<R>> = (0..n)
        .map(|i| {
            let mut row: Vec<R> = points.iter().map(|p| p[i]).collect();
            row.push(target[i]);
            row
        })
        .collect();
    let mut ones = vec![R::one(); k];
    ones.push(R::one());
    m.push(ones);
    let rows = n + 1;
    // Every column must have a pivot, so the pivot of column `col` lands in row `col`.
    for col in 0..k {
        let p = (col..rows).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, p);
        let inv = R::one() / m[col][col];
        let pivot: Vec<R> = m[col].iter().map(|v| v * inv).collect();
        for (r, row) in m.iter_mut().enumerate() {
            if r == col {
                row.clone_from(&pivot);
            } else if !row[col].is_zero() {
                let f = row[col];
                for (v, pv) in row.iter_mut().zip(&pivot).skip(col) {
                    *v -= f * pv;
                }
            }
        }
    }
    if (k..rows).any(|r| !m[r][k].is_zero()) {
        return None;
    }
    Some((0..k).map(|c| m[c][k]).collect())
}

fn subsets(m: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn go(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..m {
            if m - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, m, k, cur, f);
            cur.pop();
        }
    }
    go(0, m, k, &mut Vec::new(), f);
}

/// Coherence of `values` on `family` over `atoms` logically independent atoms,
/// decided by enumerating every vertex of the solution polytope.
pub fn oracle_coherent(family: &[Cond], values: &[R], atoms: usize) -> bool {
    let n = family.len();
    // Constituents inside the union of antecedents, keyed by their joint state.
    let mut states: Vec<Vec<TrivalentValue>> = Vec::new();
    for mask in 0..1u32 << atoms {
        let s: Vec<TrivalentValue> = family.iter().map(|c| c.value(mask)).collect();
        if s.iter().any(|&v| v != V) && !states.contains(&s) {
            states.push(s);
        }
    }
    let points: Vec<Vec<R>> = states
        .iter()
        .map(|s| {
            s.iter()
                .zip(values)
                .map(|(v, p)| match v {
                    T => R::one(),
                    F => R::zero(),
                    V => *p,
                })
                .collect()
        })
        .collect();
    let mut best = vec![R::zero(); n];
    let mut feasible = false;
    for k in 1..=(n + 1).min(points.len()) {
        subsets(points.len(), k, &mut |idx| {
            let chosen: Vec<&Vec<R>> = idx.iter().map(|&h| &points[h]).collect();
            if let Some(lambda) = solve_subset(&chosen, values) {
                if lambda.iter().all(|l| *l >= R::zero()) {
                    feasible = true;
                    for (i, b) in best.iter_mut().enumerate() {
                        let phi: R = idx
                            .iter()
                            .zip(&lambda)
                            .filter(|(&h, _)| states[h][i] != V)
                            .map(|(_, l)| *l)
                            .sum();
                        if phi > *b {
                            *b = phi;
                        }
                    }
                }
            }
        });
    }
    if !feasible {
        return false;
    }
    let zero: Vec<usize> = (0..n).filter(|&i| best[i].is_zero()).collect();
    if zero.is_empty() {
        return true;
    }
    let sub: Vec<Cond> = zero.iter().map(|&i| family[i].clone()).collect();
    let sub_values: Vec<R> = zero.iter().map(|&i| values[i]).collect();
    oracle_coherent(&sub, &sub_values, atoms)
}
