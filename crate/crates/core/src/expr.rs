//! Named assessment parameters and bilinear value expressions over them.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, Q};

/// Whether a parameter is a probability (kept in `[0, 1]`) or an unrestricted prevision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Role {
    /// Probability of a conditional event.
    Probability,
    /// Prevision of a conditional random quantity.
    Prevision,
}

/// A named assessment parameter such as `x = P(A|H)` or `μ = ℙ[(B|K)|(A|H)]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Param {
    name: String,
    role: Role,
}

impl Param {
    /// A probability parameter.
    pub fn probability(name: impl Into<String>) -> Self {
        Param {
            name: name.into(),
            role: Role::Probability,
        }
    }

    /// A prevision parameter.
    pub fn prevision(name: impl Into<String>) -> Self {
        Param {
            name: name.into(),
            role: Role::Prevision,
        }
    }

    /// The parameter name.
    pub fn name(&self) -> &str {
        &self.name
    }

    /// The parameter role.
    pub fn role(&self) -> Role {
        self.role
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// Parameter bindings.
pub type Binding = BTreeMap<Param, Q>;

/// `c + Σ a_p·p + Σ b_pq·p·q` with exact rational coefficients.
///
/// Products involve two distinct parameters at most once each, which covers every
/// value of the structural iterated conditionals (terms like `μ·x`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Expr {
    constant: Q,
    linear: BTreeMap<Param, Q>,
    bilinear: BTreeMap<(Param, Param), Q>,
}

impl Expr {
    /// The constant expression `c`.
    pub fn constant(c: Q) -> Self {
        Expr {
            constant: c,
            linear: BTreeMap::new(),
            bilinear: BTreeMap::new(),
        }
    }

    /// The constant `0`.
    pub fn zero() -> Self {
        Expr::constant(Q::zero())
    }

    /// The constant `1`.
    pub fn one() -> Self {
        Expr::constant(Q::one())
    }

    /// The expression consisting of a single parameter.
    pub fn param(p: &Param) -> Self {
        let mut e = Expr::zero();
        e.linear.insert(p.clone(), Q::one());
        e
    }

    /// The constant term.
    pub fn constant_term(&self) -> &Q {
        &self.constant
    }

    /// Whether the expression is a constant; returns it if so.
    pub fn as_constant(&self) -> Option<&Q> {
        (self.linear.is_empty() && self.bilinear.is_empty()).then_some(&self.constant)
    }

    /// Whether the expression is exactly the given parameter.
    pub fn is_param(&self, p: &Param) -> bool {
        self.constant.is_zero()
            && self.bilinear.is_empty()
            && self.linear.len() == 1
            && self.linear.get(p).is_some_and(One::is_one)
    }

    /// Parameters occurring in the expression.
    pub fn params(&self) -> Vec<Param> {
        let mut out: Vec<Param> = self.linear.keys().cloned().collect();
        for (a, b) in self.bilinear.keys() {
            out.push(a.clone());
            out.push(b.clone());
        }
        out.sort();
        out.dedup();
        out
    }

    fn normalize(mut self) -> Self {
        self.linear.retain(|_, c| !c.is_zero());
        self.bilinear.retain(|_, c| !c.is_zero());
        self
    }

    /// `self + other`.
    pub fn add(&self, other: &Expr) -> Expr {
        let mut out = self.clone();
        out.constant += &other.constant;
        for (p, c) in &other.linear {
            *out.linear.entry(p.clone()).or_insert_with(Q::zero) += c;
        }
        for (k, c) in &other.bilinear {
            *out.bilinear.entry(k.clone()).or_insert_with(Q::zero) += c;
        }
        out.normalize()
    }

    /// `self − other`.
    pub fn sub(&self, other: &Expr) -> Expr {
        self.add(&other.scale(&-Q::one()))
    }

    /// `k · self`.
    pub fn scale(&self, k: &Q) -> Expr {
        Expr {
            constant: &self.constant * k,
            linear: self
                .linear
                .iter()
                .map(|(p, c)| (p.clone(), c * k))
                .collect(),
            bilinear: self
                .bilinear
                .iter()
                .map(|(p, c)| (p.clone(), c * k))
                .collect(),
        }
        .normalize()
    }

    /// `self · other`, defined when the product stays bilinear.
    pub fn mul(&self, other: &Expr) -> Result<Expr> {
        if !self.bilinear.is_empty() && !other.is_const_nonzero_or_zero() {
            return Err(Error::NonBilinear);
        }
        if !other.bilinear.is_empty() && !self.is_const_nonzero_or_zero() {
            return Err(Error::NonBilinear);
        }
        if let Some(c) = other.as_constant() {
            return Ok(self.scale(c));
        }
        if let Some(c) = self.as_constant() {
            return Ok(other.scale(c));
        }
        let mut out = Expr::constant(&self.constant * &other.constant);
        for (p, c) in &self.linear {
            *out.linear.entry(p.clone()).or_insert_with(Q::zero) += c * &other.constant;
        }
        for (p, c) in &other.linear {
            *out.linear.entry(p.clone()).or_insert_with(Q::zero) += c * &self.constant;
        }
        for (p, a) in &self.linear {
            for (r, b) in &other.linear {
                if p == r {
                    return Err(Error::NonBilinear);
                }
                let key = if p < r {
                    (p.clone(), r.clone())
                } else {
                    (r.clone(), p.clone())
                };
                *out.bilinear.entry(key).or_insert_with(Q::zero) += a * b;
            }
        }
        Ok(out.normalize())
    }

    fn is_const_nonzero_or_zero(&self) -> bool {
        self.as_constant().is_some()
    }

    /// Replaces a parameter by an expression.
    pub fn substitute(&self, p: &Param, by: &Expr) -> Result<Expr> {
        let mut out = Expr::constant(self.constant.clone());
        for (r, c) in &self.linear {
            let term = if r == p { by.clone() } else { Expr::param(r) };
            out = out.add(&term.scale(c));
        }
        for ((a, b), c) in &self.bilinear {
            let ea = if a == p { by.clone() } else { Expr::param(a) };
            let eb = if b == p { by.clone() } else { Expr::param(b) };
            out = out.add(&ea.mul(&eb)?.scale(c));
        }
        Ok(out)
    }

    /// Evaluates under a binding of every parameter.
    pub fn eval(&self, binding: &Binding) -> Result<Q> {
        let get = |p: &Param| {
            binding
                .get(p)
                .ok_or_else(|| Error::UnboundParam(p.name().to_string()))
        };
        let mut v = self.constant.clone();
        for (p, c) in &self.linear {
            v += c * get(p)?;
        }
        for ((a, b), c) in &self.bilinear {
            v += c * get(a)? * get(b)?;
        }
        Ok(v)
    }

    /// Evaluates every parameter except `own`, returning `(a, b)` with value `a + b·own`.
    pub fn affine_in(&self, own: &Param, binding: &Binding) -> Result<(Q, Q)> {
        let get = |p: &Param| {
            binding
                .get(p)
                .ok_or_else(|| Error::UnboundParam(p.name().to_string()))
        };
        let mut a = self.constant.clone();
        let mut b = Q::zero();
        for (p, c) in &self.linear {
            if p == own {
                b += c;
            } else {
                a += c * get(p)?;
            }
        }
        for ((p, r), c) in &self.bilinear {
            if p == own {
                b += c * get(r)?;
            } else if r == own {
                b += c * get(p)?;
            } else {
                a += c * get(p)? * get(r)?;
            }
        }
        Ok((a, b))
    }

    /// Replaces parameters by other parameters (used to identify previsions).
    pub fn rename(&self, map: &BTreeMap<Param, Param>) -> Expr {
        let r = |p: &Param| map.get(p).cloned().unwrap_or_else(|| p.clone());
        let mut out = Expr::constant(self.constant.clone());
        for (p, c) in &self.linear {
            out = out.add(&Expr::param(&r(p)).scale(c));
        }
        for ((a, b), c) in &self.bilinear {
            let term = Expr::param(&r(a))
                .mul(&Expr::param(&r(b)))
                .expect("renaming keeps products bilinear");
            out = out.add(&term.scale(c));
        }
        out
    }

    /// Lowest and highest value over the box where every parameter ranges in `[0, 1]`.
    ///
    /// The expression is multilinear, so the extremes are attained at box vertices.
    pub fn range_on_unit_box(&self) -> (Q, Q) {
        let params = self.params();
        let mut lo: Option<Q> = None;
        let mut hi: Option<Q> = None;
        for mask in 0u64..1 << params.len() {
            let binding: Binding = params
                .iter()
                .enumerate()
                .map(|(i, p)| {
                    (
                        p.clone(),
                        if mask >> i & 1 == 1 {
                            Q::one()
                        } else {
                            Q::zero()
                        },
                    )
                })
                .collect();
            let v = self.eval(&binding).expect("all parameters bound");
            if lo.as_ref().is_none_or(|l| &v < l) {
                lo = Some(v.clone());
            }
            if hi.as_ref().is_none_or(|h| &v > h) {
                hi = Some(v);
            }
        }
        (lo.unwrap(), hi.unwrap())
    }
}

impl From<Q> for Expr {
    fn from(c: Q) -> Self {
        Expr::constant(c)
    }
}

impl From<&Param> for Expr {
    fn from(p: &Param) -> Self {
        Expr::param(p)
    }
}

impl fmt::Display for Expr {
    /// Prints terms in a stable order, for example `x*mu + 1` or `mu - x*mu`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(Q, String)> = Vec::new();
        for (p, c) in &self.linear {
            terms.push((c.clone(), p.name().to_string()));
        }
        for ((a, b), c) in &self.bilinear {
            terms.push((c.clone(), format!("{}*{}", a.name(), b.name())));
        }
        if !self.constant.is_zero() || terms.is_empty() {
            terms.push((self.constant.clone(), String::new()));
        }
        for (i, (c, name)) in terms.iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            if name.is_empty() {
                f.write_str(&fmt_q(&mag))?;
            } else if mag.is_one() {
                f.write_str(name)?;
            } else {
                write!(f, "{}*{}", fmt_q(&mag), name)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn bilinear_products_and_partial_evaluation() {
        let x = Param::probability("x");
        let mu = Param::prevision("mu");
        // mu * (1 - x)
        let e = Expr::param(&mu)
            .mul(&Expr::one().sub(&Expr::param(&x)))
            .unwrap();
        let mut b = Binding::new();
        b.insert(x.clone(), q(1, 4));
        let (a0, a1) = e.affine_in(&mu, &b).unwrap();
        assert_eq!(a0, q(0, 1));
        assert_eq!(a1, q(3, 4));
        assert!(Expr::param(&x).mul(&Expr::param(&x)).is_err());
        assert_eq!(e.to_string(), "mu - mu*x");
    }
}
