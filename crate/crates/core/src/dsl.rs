//! The expression language: parsing, printing and elaboration into conditional objects.
//!
//! ```text
//! statement := ('P' | 'PV') '(' expr ')' '=' (rational | '?')
//! expr      := comp ('|' comp)?
//! comp      := disj (COMPOUND disj)*
//! disj      := conj ('||' conj)*
//! conj      := unary ('&' unary)*
//! unary     := '!' unary | primary
//! primary   := 'TRUE' | 'FALSE' | atom | '(' expr ')'
//! COMPOUND  := and_K | and_L | and_B | and_S | and_gs
//!            | or_K | or_L | or_B | or_S | or_gs
//!            | iter_C | iter_dF | iter_F | iter_K | iter_L | iter_B | iter_S | iter_gs
//! ```
//!
//! The conditional former binds loosest and cannot be chained, so a conditional used
//! as an operand of a compound must be parenthesised: `(B|K) iter_C (A|H)`. Compounds
//! associate to the left. Rationals are written `p/q` or as decimals, which are
//! converted exactly. A `#` starts a comment that runs to the end of the line.
//!
//! Elaborated parameters are named after the printed expression they belong to, so
//! `P(A|H)` is both the binding syntax and the name of the probability of `A|H`, and
//! `PV((A|H) and_gs (B|K))` names the prevision of the gs conjunction.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coherence::Assessment;
use crate::conditional::{
    conjoin_trivalent, disjoin_trivalent, iterate_trivalent, negate, ConditionalEvent,
    TrivalentKind, TrivalentValue,
};
use crate::crq::{conjoin_gs, disjoin_gs, indicator, iterate_structural, Crq, StructuralKind};
use crate::error::{Error, Result};
use crate::events::{Constraints, Formula, Universe};
use crate::expr::{Expr, Param};
use crate::pvalidity::Operator;
use crate::rational::{parse_rational, Q};

/// The connective of an `and_*` or `or_*` compound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Connective {
    /// Kleene.
    K,
    /// Lukasiewicz.
    L,
    /// Bochvar.
    B,
    /// Sobocinski.
    S,
    /// The conditional random quantity compound.
    Gs,
}

impl Connective {
    /// All five connectives.
    pub const ALL: [Connective; 5] = [
        Connective::K,
        Connective::L,
        Connective::B,
        Connective::S,
        Connective::Gs,
    ];

    /// Short name used after `and_` and `or_`.
    pub fn name(self) -> &'static str {
        match self {
            Connective::K => "K",
            Connective::L => "L",
            Connective::B => "B",
            Connective::S => "S",
            Connective::Gs => "gs",
        }
    }

    /// The trivalent kind, or `None` for gs.
    pub fn trivalent(self) -> Option<TrivalentKind> {
        match self {
            Connective::K => Some(TrivalentKind::K),
            Connective::L => Some(TrivalentKind::L),
            Connective::B => Some(TrivalentKind::B),
            Connective::S => Some(TrivalentKind::S),
            Connective::Gs => None,
        }
    }

    fn of_structural(kind: StructuralKind) -> Connective {
        match kind {
            StructuralKind::K => Connective::K,
            StructuralKind::L => Connective::L,
            StructuralKind::B => Connective::B,
            StructuralKind::S => Connective::S,
            StructuralKind::Gs => Connective::Gs,
        }
    }
}

/// A binary compound of conditional objects.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CompoundOp {
    /// `and_*`.
    And(Connective),
    /// `or_*`.
    Or(Connective),
    /// `iter_*`, with the consequent on the left and the antecedent on the right.
    Iter(Operator),
}

impl CompoundOp {
    /// The keyword, such as `and_K` or `iter_dF`.
    pub fn keyword(self) -> String {
        match self {
            CompoundOp::And(c) => format!("and_{}", c.name()),
            CompoundOp::Or(c) => format!("or_{}", c.name()),
            CompoundOp::Iter(op) => format!("iter_{}", op.name()),
        }
    }

    /// Parses a keyword.
    pub fn from_keyword(word: &str) -> Option<CompoundOp> {
        if let Some(rest) = word.strip_prefix("and_") {
            return Connective::ALL
                .into_iter()
                .find(|c| c.name() == rest)
                .map(CompoundOp::And);
        }
        if let Some(rest) = word.strip_prefix("or_") {
            return Connective::ALL
                .into_iter()
                .find(|c| c.name() == rest)
                .map(CompoundOp::Or);
        }
        word.strip_prefix("iter_")
            .and_then(Operator::from_name)
            .map(CompoundOp::Iter)
    }
}

/// Syntax tree of an expression.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ast {
    /// `TRUE`.
    True,
    /// `FALSE`.
    False,
    /// An atomic event.
    Atom(String),
    /// `!e`.
    Not(Box<Ast>),
    /// `a & b`.
    And(Box<Ast>, Box<Ast>),
    /// `a || b`.
    Or(Box<Ast>, Box<Ast>),
    /// `consequent | antecedent`.
    Cond(Box<Ast>, Box<Ast>),
    /// `left op right`.
    Compound(CompoundOp, Box<Ast>, Box<Ast>),
}

impl Ast {
    fn precedence(&self) -> u8 {
        match self {
            Ast::Cond(..) => 0,
            Ast::Compound(..) => 1,
            Ast::Or(..) => 2,
            Ast::And(..) => 3,
            _ => 4,
        }
    }

    /// The operands that are not themselves compounds, left to right.
    pub fn leaves(&self) -> Vec<&Ast> {
        match self {
            Ast::Compound(_, l, r) => {
                let mut out = l.leaves();
                out.extend(r.leaves());
                out
            }
            other => vec![other],
        }
    }
}

impl fmt::Display for Ast {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let child = |f: &mut fmt::Formatter<'_>, c: &Ast, min: u8| {
            if c.precedence() < min {
                write!(f, "({c})")
            } else {
                write!(f, "{c}")
            }
        };
        match self {
            Ast::True => f.write_str("TRUE"),
            Ast::False => f.write_str("FALSE"),
            Ast::Atom(name) => f.write_str(name),
            Ast::Not(e) => {
                f.write_str("!")?;
                child(f, e, 4)
            }
            Ast::And(a, b) => {
                child(f, a, 3)?;
                f.write_str(" & ")?;
                child(f, b, 4)
            }
            Ast::Or(a, b) => {
                child(f, a, 2)?;
                f.write_str(" || ")?;
                child(f, b, 3)
            }
            Ast::Cond(c, a) => {
                child(f, c, 1)?;
                f.write_str("|")?;
                child(f, a, 1)
            }
            Ast::Compound(op, l, r) => {
                child(f, l, 1)?;
                write!(f, " {} ", op.keyword())?;
                child(f, r, 2)
            }
        }
    }
}

/// Whether a binding assesses a probability (`P`) or a prevision (`PV`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BindingKind {
    /// `P(...)`.
    Probability,
    /// `PV(...)`.
    Prevision,
}

/// One line of an assessment file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Statement {
    /// `P` or `PV`.
    pub kind: BindingKind,
    /// The assessed expression.
    pub expr: Ast,
    /// The value, or `None` for `=?`.
    pub value: Option<Q>,
    /// Line number, starting at 1.
    pub line: usize,
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head = match self.kind {
            BindingKind::Probability => "P",
            BindingKind::Prevision => "PV",
        };
        match &self.value {
            Some(v) => write!(f, "{head}({}) = {}", self.expr, crate::rational::fmt_q(v)),
            None => write!(f, "{head}({}) = ?", self.expr),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Ident(String),
    LParen,
    RParen,
    Bar,
    OrOr,
    Amp,
    Bang,
    Eq,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Ident(s) => write!(f, "`{s}`"),
            Token::LParen => f.write_str("`(`"),
            Token::RParen => f.write_str("`)`"),
            Token::Bar => f.write_str("`|`"),
            Token::OrOr => f.write_str("`||`"),
            Token::Amp => f.write_str("`&`"),
            Token::Bang => f.write_str("`!`"),
            Token::Eq => f.write_str("`=`"),
        }
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
    peeked: Option<(Token, usize, usize)>,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, line: usize) -> Self {
        Parser {
            text,
            pos: 0,
            line,
            peeked: None,
        }
    }

    fn error_at(&self, offset: usize, message: impl Into<String>) -> Error {
        let (line, column) = self.locate(offset);
        Error::SyntaxError {
            line,
            column,
            message: message.into(),
        }
    }

    fn locate(&self, offset: usize) -> (usize, usize) {
        let before = &self.text[..offset.min(self.text.len())];
        let line = self.line + before.matches('\n').count();
        let column = before.rsplit('\n').next().map_or(0, |s| s.chars().count()) + 1;
        (line, column)
    }

    fn skip_space(&mut self) {
        let rest = &self.text[self.pos..];
        let trimmed = rest.trim_start();
        self.pos += rest.len() - trimmed.len();
        if trimmed.starts_with('#') {
            self.pos = self.text.len();
        }
    }

    fn lex(&mut self) -> Result<Option<(Token, usize, usize)>> {
        self.skip_space();
        let start = self.pos;
        let rest = &self.text[start..];
        let Some(c) = rest.chars().next() else {
            return Ok(None);
        };
        let (token, len) = match c {
            '(' => (Token::LParen, 1),
            ')' => (Token::RParen, 1),
            '&' => (Token::Amp, 1),
            '!' => (Token::Bang, 1),
            '=' => (Token::Eq, 1),
            '|' if rest.starts_with("||") => (Token::OrOr, 2),
            '|' => (Token::Bar, 1),
            c if c.is_ascii_alphabetic() || c == '_' => {
                let len = rest
                    .find(|ch: char| !(ch.is_ascii_alphanumeric() || ch == '_'))
                    .unwrap_or(rest.len());
                (Token::Ident(rest[..len].to_string()), len)
            }
            other => return Err(self.error_at(start, format!("unexpected character `{other}`"))),
        };
        self.pos += len;
        Ok(Some((token, start, self.pos)))
    }

    fn peek(&mut self) -> Result<Option<&Token>> {
        if self.peeked.is_none() {
            self.peeked = self.lex()?;
        }
        Ok(self.peeked.as_ref().map(|(t, _, _)| t))
    }

    fn next(&mut self) -> Result<Option<(Token, usize, usize)>> {
        match self.peeked.take() {
            Some(t) => Ok(Some(t)),
            None => self.lex(),
        }
    }

    fn offset(&mut self) -> usize {
        match &self.peeked {
            Some((_, start, _)) => *start,
            None => {
                self.skip_space();
                self.pos
            }
        }
    }

    fn expect(&mut self, want: Token) -> Result<()> {
        let at = self.offset();
        match self.next()? {
            Some((t, _, _)) if t == want => Ok(()),
            Some((t, start, _)) => Err(self.error_at(start, format!("expected {want}, found {t}"))),
            None => Err(self.error_at(at, format!("expected {want}, found end of input"))),
        }
    }

    fn expr(&mut self) -> Result<Ast> {
        let consequent = self.comp()?;
        if self.peek()? == Some(&Token::Bar) {
            self.next()?;
            let antecedent = self.comp()?;
            if self.peek()? == Some(&Token::Bar) {
                let at = self.offset();
                return Err(self.error_at(
                    at,
                    "a conditional cannot be conditioned again without parentheses",
                ));
            }
            return Ok(Ast::Cond(Box::new(consequent), Box::new(antecedent)));
        }
        Ok(consequent)
    }

    fn compound_op(&mut self) -> Result<Option<CompoundOp>> {
        Ok(match self.peek()? {
            Some(Token::Ident(word)) => CompoundOp::from_keyword(word),
            _ => None,
        })
    }

    fn comp(&mut self) -> Result<Ast> {
        let mut left = self.disj()?;
        while let Some(op) = self.compound_op()? {
            self.next()?;
            let right = self.disj()?;
            left = Ast::Compound(op, Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn disj(&mut self) -> Result<Ast> {
        let mut left = self.conj()?;
        while self.peek()? == Some(&Token::OrOr) {
            self.next()?;
            let right = self.conj()?;
            left = Ast::Or(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn conj(&mut self) -> Result<Ast> {
        let mut left = self.unary()?;
        while self.peek()? == Some(&Token::Amp) {
            self.next()?;
            let right = self.unary()?;
            left = Ast::And(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Ast> {
        if self.peek()? == Some(&Token::Bang) {
            self.next()?;
            return Ok(Ast::Not(Box::new(self.unary()?)));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Ast> {
        let at = self.offset();
        match self.next()? {
            Some((Token::LParen, _, _)) => {
                let inner = self.expr()?;
                self.expect(Token::RParen)?;
                Ok(inner)
            }
            Some((Token::Ident(word), start, _)) => match word.as_str() {
                "TRUE" => Ok(Ast::True),
                "FALSE" => Ok(Ast::False),
                w if CompoundOp::from_keyword(w).is_some() => {
                    Err(self.error_at(start, format!("operator `{w}` needs a left operand")))
                }
                _ => Ok(Ast::Atom(word)),
            },
            Some((t, start, _)) => Err(self.error_at(start, format!("unexpected {t}"))),
            None => Err(self.error_at(at, "unexpected end of input")),
        }
    }

    fn finish(&mut self) -> Result<()> {
        match self.next()? {
            None => Ok(()),
            Some((t, start, _)) => {
                Err(self.error_at(start, format!("unexpected {t} after the expression")))
            }
        }
    }
}

/// Parses one expression.
pub fn parse(text: &str) -> Result<Ast> {
    let mut p = Parser::new(text, 1);
    let ast = p.expr()?;
    p.finish()?;
    Ok(ast)
}

fn parse_statement_at(text: &str, line: usize) -> Result<Statement> {
    let mut p = Parser::new(text, line);
    let at = p.offset();
    let kind = match p.next()? {
        Some((Token::Ident(w), _, _)) if w == "P" => BindingKind::Probability,
        Some((Token::Ident(w), _, _)) if w == "PV" => BindingKind::Prevision,
        _ => return Err(p.error_at(at, "expected `P(` or `PV(`")),
    };
    p.expect(Token::LParen)?;
    let expr = p.expr()?;
    p.expect(Token::RParen)?;
    p.expect(Token::Eq)?;
    let start = p.offset();
    let raw = text[start..].split('#').next().unwrap_or("").trim();
    let value =
        if raw == "?" {
            None
        } else {
            Some(parse_rational(raw).map_err(|_| {
                p.error_at(start, format!("expected a rational or `?`, found `{raw}`"))
            })?)
        };
    Ok(Statement {
        kind,
        expr,
        value,
        line,
    })
}

/// Parses one binding such as `P(A|H) = 3/10` or `PV((B|K) iter_K (A|H)) = ?`.
pub fn parse_statement(text: &str) -> Result<Statement> {
    parse_statement_at(text, 1)
}

/// Parses an assessment file: one binding per line, blank lines and `#` comments allowed.
pub fn parse_bindings(text: &str) -> Result<Vec<Statement>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        })
        .map(|(i, l)| parse_statement_at(l, i + 1))
        .collect()
}

/// Parses and elaborates an unconditional event such as `A & !K`.
pub fn parse_event(text: &str) -> Result<Formula> {
    let ast = parse(text)?;
    let mut el = Elaborator::new(Constraints::none());
    el.event(&ast)
}

/// The meaning of an expression.
#[derive(Clone, Debug)]
pub enum Object {
    /// An unconditional event.
    Event(Formula),
    /// A conditional event.
    Conditional(ConditionalEvent),
    /// A conditional random quantity.
    Quantity(Crq),
}

impl Object {
    fn kind_name(&self) -> &'static str {
        match self {
            Object::Event(_) => "an event",
            Object::Conditional(_) => "a conditional event",
            Object::Quantity(_) => "a random quantity",
        }
    }
}

/// How elaboration names parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Naming {
    /// `P(expr)` and `PV(expr)`, matching the binding syntax.
    #[default]
    Keyed,
    /// `x`, `y`, `p3`, … for probabilities and `mu`, `nu`, `mu3`, … for previsions,
    /// in order of first use.
    Short,
}

/// Turns syntax trees into conditional objects under fixed constraints.
#[derive(Clone, Debug)]
pub struct Elaborator {
    constraints: Constraints,
    naming: Naming,
    names: BTreeMap<String, Param>,
}

impl Elaborator {
    /// An elaborator with keyed parameter names.
    pub fn new(constraints: Constraints) -> Self {
        Elaborator::with_naming(constraints, Naming::Keyed)
    }

    /// An elaborator with the given naming scheme.
    pub fn with_naming(constraints: Constraints, naming: Naming) -> Self {
        Elaborator {
            constraints,
            naming,
            names: BTreeMap::new(),
        }
    }

    /// Keyed name to parameter, for every parameter handed out so far.
    pub fn legend(&self) -> &BTreeMap<String, Param> {
        &self.names
    }

    /// The probability parameter of an event or conditional event.
    pub fn probability_of(&mut self, ast: &Ast) -> Param {
        let key = format!("P({ast})");
        self.named(key, true)
    }

    /// The prevision parameter of a random quantity.
    pub fn prevision_of(&mut self, ast: &Ast) -> Param {
        let key = format!("PV({ast})");
        self.named(key, false)
    }

    fn named(&mut self, key: String, probability: bool) -> Param {
        if let Some(p) = self.names.get(&key) {
            return p.clone();
        }
        let param = match self.naming {
            Naming::Keyed if probability => Param::probability(key.clone()),
            Naming::Keyed => Param::prevision(key.clone()),
            Naming::Short => {
                let n = self
                    .names
                    .values()
                    .filter(|p| (p.role() == crate::expr::Role::Probability) == probability)
                    .count();
                let pool: &[&str] = if probability {
                    &["x", "y"]
                } else {
                    &["mu", "nu"]
                };
                let name = match pool.get(n) {
                    Some(s) => s.to_string(),
                    None if probability => format!("p{}", n + 1),
                    None => format!("mu{}", n + 1),
                };
                if probability {
                    Param::probability(name)
                } else {
                    Param::prevision(name)
                }
            }
        };
        self.names.insert(key, param.clone());
        param
    }

    /// Elaborates an expression.
    pub fn elaborate(&mut self, ast: &Ast) -> Result<Object> {
        let c = self.constraints.clone();
        match ast {
            Ast::True => Ok(Object::Event(Formula::True)),
            Ast::False => Ok(Object::Event(Formula::False)),
            Ast::Atom(name) => Ok(Object::Event(Formula::atom(name.clone()))),
            Ast::Not(e) => match self.elaborate(e)? {
                Object::Event(f) => Ok(Object::Event(f.negate())),
                Object::Conditional(ce) => Ok(Object::Conditional(negate(&ce))),
                Object::Quantity(_) => {
                    Err(unsupported(e, "`!` does not apply to a random quantity"))
                }
            },
            Ast::And(a, b) | Ast::Or(a, b) => {
                let (l, r) = (self.event(a)?, self.event(b)?);
                Ok(Object::Event(if matches!(ast, Ast::And(..)) {
                    l.and(&r)
                } else {
                    l.or(&r)
                }))
            }
            Ast::Cond(cons, ant) => {
                let (cf, af) = (self.event(cons)?, self.event(ant)?);
                Ok(Object::Conditional(ConditionalEvent::with_constraints(
                    cf, af, &c,
                )?))
            }
            Ast::Compound(op, l, r) => {
                let (lc, rc) = (self.conditional(l)?, self.conditional(r)?);
                match *op {
                    CompoundOp::And(conn) | CompoundOp::Or(conn) => {
                        let and = matches!(op, CompoundOp::And(_));
                        match conn.trivalent() {
                            Some(t) => Ok(Object::Conditional(if and {
                                conjoin_trivalent(t, &lc, &rc, &c)?
                            } else {
                                disjoin_trivalent(t, &lc, &rc, &c)?
                            })),
                            None => {
                                let (x, y) = (self.probability_of(l), self.probability_of(r));
                                let z = self.prevision_of(ast);
                                let crq = if and {
                                    conjoin_gs(&lc, &rc, &x, &y, &z, &c)?
                                } else {
                                    disjoin_gs(&lc, &rc, &x, &y, &z, &c)?
                                };
                                Ok(Object::Quantity(crq.with_label(ast.to_string())))
                            }
                        }
                    }
                    CompoundOp::Iter(operator) => {
                        match (operator.iteration(), operator.structural()) {
                            (Some(it), _) => {
                                Ok(Object::Conditional(iterate_trivalent(it, &rc, &lc, &c)?))
                            }
                            (None, Some(kind)) => {
                                let (x, y) = (self.probability_of(r), self.probability_of(l));
                                let mu = self.prevision_of(ast);
                                let crq = iterate_structural(kind, &rc, &lc, &x, &y, &mu, &c)?;
                                Ok(Object::Quantity(crq.with_label(ast.to_string())))
                            }
                            (None, None) => {
                                unreachable!("every operator is trivalent or structural")
                            }
                        }
                    }
                }
            }
        }
    }

    fn event(&mut self, ast: &Ast) -> Result<Formula> {
        match self.elaborate(ast)? {
            Object::Event(f) => Ok(f),
            other => Err(unsupported(
                ast,
                format!("expected an event, found {}", other.kind_name()),
            )),
        }
    }

    fn conditional(&mut self, ast: &Ast) -> Result<ConditionalEvent> {
        match self.elaborate(ast)? {
            Object::Event(f) => Ok(ConditionalEvent::event(f)),
            Object::Conditional(ce) => Ok(ce),
            Object::Quantity(_) => Err(unsupported(
                ast,
                "compounds of random quantities are not supported",
            )),
        }
    }

    /// Elaborates an expression as an assessable random quantity: the indicator of an
    /// event or conditional event, or the quantity itself.
    pub fn member(&mut self, ast: &Ast) -> Result<Crq> {
        match self.elaborate(ast)? {
            Object::Event(f) => {
                let p = self.probability_of(ast);
                Ok(
                    indicator(&ConditionalEvent::event(f), &p, &self.constraints.clone())?
                        .with_label(ast.to_string()),
                )
            }
            Object::Conditional(ce) => {
                let p = self.probability_of(ast);
                Ok(indicator(&ce, &p, &self.constraints.clone())?.with_label(ast.to_string()))
            }
            Object::Quantity(crq) => Ok(crq),
        }
    }
}

fn unsupported(ast: &Ast, message: impl fmt::Display) -> Error {
    Error::UnsupportedKind(format!("{message} in `{ast}`"))
}

/// An assessment built from a list of bindings.
#[derive(Clone, Debug)]
pub struct AssessmentSpec {
    /// The assessment, with targets unbound.
    pub assessment: Assessment,
    /// Parameters of the `=?` members, in file order.
    pub targets: Vec<Param>,
    /// Printed expressions of members added automatically.
    pub auxiliary: Vec<String>,
}

/// Builds an assessment from bindings.
///
/// Each structural iterated conditional `(B|K) iter_i (A|H)` brings its conjunction
/// `(A|H) and_i (B|K)` along when the file does not assess it, with the prevision of
/// the conjunction tied to `P(A|H)·PV((B|K) iter_i (A|H))`.
pub fn build_assessment(
    statements: &[Statement],
    constraints: &Constraints,
) -> Result<AssessmentSpec> {
    let mut el = Elaborator::new(constraints.clone());
    let mut a = Assessment::new(constraints.clone());
    let mut targets = Vec::new();
    let mut keys = Vec::new();
    for s in statements {
        let key = s.expr.to_string();
        if keys.contains(&key) {
            return Err(Error::SyntaxError {
                line: s.line,
                column: 1,
                message: format!("`{key}` is assessed twice"),
            });
        }
        let crq = el.member(&s.expr)?;
        match &s.value {
            Some(v) => a = a.with(crq, v.clone()),
            None => {
                targets.push(crq.prevision().clone());
                a = a.with_target(crq);
            }
        }
        keys.push(key);
    }
    let mut auxiliary = Vec::new();
    for s in statements {
        let Ast::Compound(CompoundOp::Iter(op), cons, ant) = &s.expr else {
            continue;
        };
        let Some(kind) = op.structural() else {
            continue;
        };
        let conj = Ast::Compound(
            CompoundOp::And(Connective::of_structural(kind)),
            ant.clone(),
            cons.clone(),
        );
        let key = conj.to_string();
        if keys.contains(&key) {
            continue;
        }
        let crq = el.member(&conj)?;
        let z = crq.prevision().clone();
        let x = el.probability_of(ant);
        let mu = el.prevision_of(&s.expr);
        let tie = Expr::param(&x).mul(&Expr::param(&mu))?;
        a = a.with_target(crq).tie(&z, tie);
        keys.push(key.clone());
        auxiliary.push(key);
    }
    Ok(AssessmentSpec {
        assessment: a,
        targets,
        auxiliary,
    })
}

/// One row of a value table: the joint state of the leaves and the value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    /// The state of each leaf.
    pub states: Vec<TrivalentValue>,
    /// The worlds in this row, as conjunctions of literals.
    pub worlds: Vec<String>,
    /// `T`, `F`, `V` for a conditional event, or a symbolic value.
    pub value: String,
}

/// The value of an expression on each joint state of its leaf operands.
#[derive(Clone, Debug)]
pub struct ValueTable {
    /// The printed expression.
    pub expr: String,
    /// The printed leaf operands.
    pub leaves: Vec<String>,
    /// Short parameter name to the expression it stands for.
    pub legend: Vec<(String, String)>,
    /// One row per joint leaf state and value.
    pub rows: Vec<TableRow>,
}

impl ValueTable {
    /// The distinct values, in row order.
    pub fn distinct_values(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for r in &self.rows {
            if !out.contains(&r.value.as_str()) {
                out.push(&r.value);
            }
        }
        out
    }
}

impl fmt::Display for ValueTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.expr)?;
        for (short, key) in &self.legend {
            writeln!(f, "  {short} = {key}")?;
        }
        let header: Vec<String> = self.leaves.iter().map(|l| format!("{l:>8}")).collect();
        writeln!(f, "{}  | value", header.join(" "))?;
        for r in &self.rows {
            let cells: Vec<String> = r
                .states
                .iter()
                .map(|s| format!("{:>8}", s.to_string()))
                .collect();
            writeln!(f, "{}  | {}", cells.join(" "), r.value)?;
        }
        Ok(())
    }
}

/// Tabulates an expression over the joint states of its leaf operands, with short
/// parameter names.
pub fn value_table_of(ast: &Ast, constraints: &Constraints) -> Result<ValueTable> {
    let mut el = Elaborator::with_naming(constraints.clone(), Naming::Short);
    let leaves: Vec<&Ast> = ast.leaves();
    let leaf_ces = leaves
        .iter()
        .map(|l| el.conditional(l))
        .collect::<Result<Vec<_>>>()?;
    let object = el.elaborate(ast)?;
    let mut atoms = std::collections::BTreeSet::new();
    for ce in &leaf_ces {
        atoms.extend(ce.atoms());
    }
    let u = Universe::new(atoms, constraints)?;
    let states = leaf_ces
        .iter()
        .map(|ce| ce.values_in(&u))
        .collect::<Result<Vec<_>>>()?;
    let values: Vec<String> = match &object {
        Object::Event(f) => {
            let ext = u.extension(f)?;
            (0..u.len())
                .map(|w| if ext.contains(w) { "T" } else { "F" }.to_string())
                .collect()
        }
        Object::Conditional(ce) => ce.values_in(&u)?.iter().map(|v| v.to_string()).collect(),
        Object::Quantity(crq) => crq.exprs_in(&u)?.iter().map(|e| e.to_string()).collect(),
    };
    let mut rows: Vec<TableRow> = Vec::new();
    for w in 0..u.len() {
        let st: Vec<TrivalentValue> = states.iter().map(|s| s[w]).collect();
        let world = u.world(w).to_string();
        match rows
            .iter_mut()
            .find(|r| r.states == st && r.value == values[w])
        {
            Some(r) => r.worlds.push(world),
            None => rows.push(TableRow {
                states: st,
                worlds: vec![world],
                value: values[w].clone(),
            }),
        }
    }
    let mut legend: Vec<(String, String)> = el
        .legend()
        .iter()
        .map(|(k, p)| (p.name().to_string(), k.clone()))
        .collect();
    legend.sort();
    Ok(ValueTable {
        expr: ast.to_string(),
        leaves: leaves.iter().map(|l| l.to_string()).collect(),
        legend,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conditional_binds_loosest() {
        let ast = parse("A & B | H || K").unwrap();
        assert!(matches!(ast, Ast::Cond(..)));
        assert_eq!(ast.to_string(), "A & B|H || K");
    }

    #[test]
    fn chained_conditionals_are_rejected() {
        let err = parse("A|B|C").unwrap_err();
        assert!(
            matches!(err, Error::SyntaxError { column: 4, .. }),
            "{err:?}"
        );
    }
}
