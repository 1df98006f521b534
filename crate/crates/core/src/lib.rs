//! Conditional events, trivalent compounds and conditional random quantities, with
//! exact coherence checking, coherent extension intervals and p-validity queries.
//!
//! The crate is organised bottom-up:
//!
//! - [`events`]: Boolean formulas over named atoms, worlds, constraints, constituents.
//! - [`conditional`]: conditional events, trivalent conjunctions, disjunctions and
//!   the conditional-event-valued iterated conditionals.
//! - [`crq`]: conditional random quantities with symbolic values, the gs compounds
//!   and the structural iterated conditionals.
//! - [`coherence`]: the exact coherence checker with Dutch-book witnesses.
//! - [`propagation`]: coherent extension intervals and closed-form bounds.
//! - [`pvalidity`]: p-consistency, p-entailment and the property suite.
//! - [`dsl`]: the expression language used by the command-line tool.

pub mod cli;
pub mod coherence;
pub mod conditional;
pub mod crq;
pub mod dsl;
pub mod error;
pub mod events;
pub mod expr;
pub mod propagation;
pub mod pvalidity;
pub mod rational;
pub mod simplex;

pub use coherence::{
    build_points, check_coherence, check_coherence_with_witness, dutch_book, is_coherent, max_phi,
    solve_sigma, Assessment, CoherenceResult, DutchBook, PointSystem, TraceLevel,
};
pub use conditional::{
    conjoin_trivalent, disjoin_trivalent, gn_implies, iterate_trivalent, negate,
    semantically_equal, truth_value, ConditionalEvent, TrivalentIteration, TrivalentKind,
    TrivalentValue,
};
pub use crq::{
    conjoin_gs, disjoin_gs, indicator, iterate_structural, iterate_structural_free, value_table,
    Crq, Piece, StructuralKind,
};
pub use error::{Error, Result};
pub use events::{constituents, evaluate, is_possible, Constituent, Constraints, Formula, World};
pub use expr::{Binding, Expr, Param, Role};
pub use propagation::{
    closed_form_bounds, extension_interval, verify_bounds_match, BoundKind, ExtensionInterval,
    SearchOptions,
};
pub use pvalidity::{
    check_inference, p_consistent, p_entails, property_suite, Operator, Property, Rule, Verdict,
};
pub use rational::Q;
