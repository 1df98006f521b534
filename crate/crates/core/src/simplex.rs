//! Exact two-phase simplex over the rationals with Bland's anti-cycling rule.
//!
//! Problems are in equality form: maximise `c·x` subject to `A x = b`, `x ≥ 0`.
//! Pivot choices are deterministic (lowest eligible column, ties in the ratio test
//! broken by the lowest basic variable), so repeated runs return the same vertex.

use num::{Signed, Zero};

use crate::rational::Q;

/// Outcome of a linear program.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    /// No `x ≥ 0` satisfies `A x = b`.
    Infeasible,
    /// The objective is unbounded above on the feasible set.
    Unbounded,
    /// An optimal vertex and its objective value.
    Optimal {
        /// The optimal vertex.
        x: Vec<Q>,
        /// The optimal objective value.
        value: Q,
    },
}

struct Tableau {
    rows: Vec<Vec<Q>>,
    rhs: Vec<Q>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize, obj: &mut [Q], obj_value: &mut Q) {
        let p = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v /= &p;
            }
        }
        self.rhs[r] /= &p;
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r {
                continue;
            }
            let f = self.rows[i][c].clone();
            if f.is_zero() {
                continue;
            }
            for (j, pv) in pivot_row.iter().enumerate() {
                if !pv.is_zero() {
                    let delta = &f * pv;
                    self.rows[i][j] -= delta;
                }
            }
            self.rhs[i] -= &f * &pivot_rhs;
        }
        let f = obj[c].clone();
        if !f.is_zero() {
            for (j, pv) in pivot_row.iter().enumerate() {
                if !pv.is_zero() {
                    obj[j] -= &f * pv;
                }
            }
            *obj_value += &f * &pivot_rhs;
        }
        self.basis[r] = c;
    }

    /// Runs simplex iterations on reduced costs `obj` over the allowed columns.
    /// Returns `false` when the objective is unbounded.
    fn optimize(&mut self, obj: &mut [Q], obj_value: &mut Q, allowed: usize) -> bool {
        loop {
            let entering = (0..allowed).find(|&j| obj[j].is_positive());
            let Some(c) = entering else {
                return true;
            };
            let mut best: Option<(usize, Q)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][c];
                if a.is_positive() {
                    let ratio = &self.rhs[r] / a;
                    let better = match &best {
                        None => true,
                        Some((br, bv)) => {
                            ratio < *bv || (ratio == *bv && self.basis[r] < self.basis[*br])
                        }
                    };
                    if better {
                        best = Some((r, ratio));
                    }
                }
            }
            let Some((r, _)) = best else {
                return false;
            };
            self.pivot(r, c, obj, obj_value);
        }
    }
}

/// Maximises `c·x` subject to `A x = b`, `x ≥ 0`, exactly.
pub fn maximize(a: &[Vec<Q>], b: &[Q], c: &[Q]) -> LpOutcome {
    let n = c.len();
    let m = a.len();
    assert_eq!(b.len(), m, "rhs length must match the number of rows");
    assert!(
        a.iter().all(|row| row.len() == n),
        "ragged constraint matrix"
    );

    // Phase 1: artificial variables n..n+m, one per row, with b made nonnegative.
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for (i, row) in a.iter().enumerate() {
        let flip = b[i].is_negative();
        let mut full: Vec<Q> = row
            .iter()
            .map(|v| if flip { -v.clone() } else { v.clone() })
            .collect();
        full.extend((0..m).map(|k| {
            if k == i {
                Q::from_integer(1.into())
            } else {
                Q::zero()
            }
        }));
        rows.push(full);
        rhs.push(if flip { -b[i].clone() } else { b[i].clone() });
    }
    let mut t = Tableau {
        rows,
        rhs,
        basis: (n..n + m).collect(),
        cols: n + m,
    };
    // Reduced costs for maximising −Σ artificials: sum of the rows over original columns.
    let mut obj: Vec<Q> = vec![Q::zero(); t.cols];
    let mut obj_value = Q::zero();
    for i in 0..m {
        for (o, v) in obj.iter_mut().zip(&t.rows[i][..n]) {
            *o += v;
        }
        obj_value -= &t.rhs[i];
    }
    t.optimize(&mut obj, &mut obj_value, n);
    if !obj_value.is_zero() {
        return LpOutcome::Infeasible;
    }

    // Drive remaining artificial variables out of the basis or drop redundant rows.
    let mut r = 0;
    while r < t.rows.len() {
        if t.basis[r] >= n {
            match (0..n).find(|&j| !t.rows[r][j].is_zero()) {
                Some(c) => {
                    let mut dummy = vec![Q::zero(); t.cols];
                    let mut dv = Q::zero();
                    t.pivot(r, c, &mut dummy, &mut dv);
                    r += 1;
                }
                None => {
                    t.rows.remove(r);
                    t.rhs.remove(r);
                    t.basis.remove(r);
                }
            }
        } else {
            r += 1;
        }
    }
    for row in t.rows.iter_mut() {
        row.truncate(n);
    }
    t.cols = n;

    // Phase 2.
    let mut obj: Vec<Q> = c.to_vec();
    let mut obj_value = Q::zero();
    for (i, &bv) in t.basis.iter().enumerate() {
        let cb = c[bv].clone();
        if cb.is_zero() {
            continue;
        }
        for (o, v) in obj.iter_mut().zip(&t.rows[i]) {
            *o -= &cb * v;
        }
        obj_value += &cb * &t.rhs[i];
    }
    if !t.optimize(&mut obj, &mut obj_value, n) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Q::zero(); n];
    for (i, &bv) in t.basis.iter().enumerate() {
        x[bv] = t.rhs[i].clone();
    }
    LpOutcome::Optimal {
        x,
        value: obj_value,
    }
}

/// A solution of `A x = b`, `x ≥ 0`, or `None` when infeasible.
pub fn feasible_point(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let n = a.first().map_or(0, Vec::len);
    match maximize(a, b, &vec![Q::zero(); n]) {
        LpOutcome::Optimal { x, .. } => Some(x),
        LpOutcome::Infeasible => None,
        LpOutcome::Unbounded => unreachable!("a zero objective is never unbounded"),
    }
}
