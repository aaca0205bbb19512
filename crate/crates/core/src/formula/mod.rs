//! Formula languages: tense formulas in negation normal form, their
//! user-facing surface syntax, and bi-intuitionistic formulas.

mod bi;
mod parse;
mod tense;

use std::collections::BTreeSet;
use std::fmt;
use std::hash::Hash;

pub use bi::BiFormula;
pub use parse::{parse_bi, parse_tense, ParseError};
pub use tense::{SurfaceTense, TenseFormula};

/// Which calculus a formula, sequent or proof belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Logic {
    /// Classical tense logic extended with path axioms.
    Kt,
    /// Bi-intuitionistic logic.
    Bi,
}

impl Logic {
    pub fn as_str(self) -> &'static str {
        match self {
            Logic::Kt => "kt",
            Logic::Bi => "bi",
        }
    }
}

impl fmt::Display for Logic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Logic {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "kt" => Ok(Logic::Kt),
            "bi" => Ok(Logic::Bi),
            other => Err(format!("unknown logic `{other}` (expected kt or bi)")),
        }
    }
}

/// Behaviour shared by both formula languages, so that sequents, proofs and
/// interpolants can be written once.
pub trait Formula:
    Clone + Eq + Ord + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    const LOGIC: Logic;

    fn top() -> Self;
    fn bot() -> Self;

    /// Adds every propositional variable of the formula to `out`.
    fn collect_vars(&self, out: &mut BTreeSet<String>);

    /// Parses the canonical printed form. For tense formulas this rejects
    /// anything that is not already in negation normal form.
    fn parse_canonical(text: &str) -> Result<Self, ParseError>;

    fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }
}

/// Joins `items` into a right-nested chain, matching the right-associative
/// parser. An empty input yields `unit`.
pub(crate) fn fold_right<F, I>(items: I, unit: F, join: impl Fn(F, F) -> F) -> F
where
    I: IntoIterator<Item = F>,
    I::IntoIter: DoubleEndedIterator,
{
    let mut iter = items.into_iter().rev();
    match iter.next() {
        None => unit,
        Some(last) => iter.fold(last, |acc, item| join(item, acc)),
    }
}

/// Rebuilds a flattened conjunction or disjunction: drops `unit` and
/// repeated operands, and returns `zero` if it occurs.
pub(crate) fn junction<F: Eq>(operands: Vec<F>, unit: F, zero: F, join: impl Fn(F, F) -> F) -> F {
    let mut kept: Vec<F> = Vec::new();
    for op in operands {
        if op == zero {
            return zero;
        }
        if op != unit && !kept.contains(&op) {
            kept.push(op);
        }
    }
    fold_right(kept, unit, join)
}
