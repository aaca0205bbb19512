use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use super::{fold_right, junction, parse, Formula, Logic, ParseError};

/// A tense formula in negation normal form.
///
/// `Top` and `Bot` are included so that interpolants such as the empty
/// conjunction can be written without inventing an atom.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TenseFormula {
    Atom(String),
    NegAtom(String),
    Top,
    Bot,
    And(Arc<TenseFormula>, Arc<TenseFormula>),
    Or(Arc<TenseFormula>, Arc<TenseFormula>),
    /// Future necessity.
    Box(Arc<TenseFormula>),
    /// Future possibility.
    Dia(Arc<TenseFormula>),
    /// Past necessity.
    BBox(Arc<TenseFormula>),
    /// Past possibility.
    BDia(Arc<TenseFormula>),
}

use TenseFormula as T;

impl TenseFormula {
    pub fn atom(name: impl Into<String>) -> Self {
        T::Atom(name.into())
    }

    pub fn neg_atom(name: impl Into<String>) -> Self {
        T::NegAtom(name.into())
    }

    pub fn and(l: Self, r: Self) -> Self {
        T::And(Arc::new(l), Arc::new(r))
    }

    pub fn or(l: Self, r: Self) -> Self {
        T::Or(Arc::new(l), Arc::new(r))
    }

    pub fn boxed(f: Self) -> Self {
        T::Box(Arc::new(f))
    }

    pub fn dia(f: Self) -> Self {
        T::Dia(Arc::new(f))
    }

    pub fn bbox(f: Self) -> Self {
        T::BBox(Arc::new(f))
    }

    pub fn bdia(f: Self) -> Self {
        T::BDia(Arc::new(f))
    }

    /// Classical negation pushed down to the atoms. Involutive and
    /// size-preserving.
    pub fn negate(&self) -> Self {
        match self {
            T::Atom(p) => T::NegAtom(p.clone()),
            T::NegAtom(p) => T::Atom(p.clone()),
            T::Top => T::Bot,
            T::Bot => T::Top,
            T::And(l, r) => T::or(l.negate(), r.negate()),
            T::Or(l, r) => T::and(l.negate(), r.negate()),
            T::Box(f) => T::dia(f.negate()),
            T::Dia(f) => T::boxed(f.negate()),
            T::BBox(f) => T::bdia(f.negate()),
            T::BDia(f) => T::bbox(f.negate()),
        }
    }

    /// Number of nodes in the syntax tree.
    pub fn size(&self) -> usize {
        match self {
            T::Atom(_) | T::NegAtom(_) | T::Top | T::Bot => 1,
            T::And(l, r) | T::Or(l, r) => 1 + l.size() + r.size(),
            T::Box(f) | T::Dia(f) | T::BBox(f) | T::BDia(f) => 1 + f.size(),
        }
    }

    /// Maximum nesting of modal operators.
    pub fn modal_depth(&self) -> usize {
        match self {
            T::Atom(_) | T::NegAtom(_) | T::Top | T::Bot => 0,
            T::And(l, r) | T::Or(l, r) => l.modal_depth().max(r.modal_depth()),
            T::Box(f) | T::Dia(f) | T::BBox(f) | T::BDia(f) => 1 + f.modal_depth(),
        }
    }

    /// Number of modal operator occurrences.
    pub fn modal_count(&self) -> usize {
        match self {
            T::Atom(_) | T::NegAtom(_) | T::Top | T::Bot => 0,
            T::And(l, r) | T::Or(l, r) => l.modal_count() + r.modal_count(),
            T::Box(f) | T::Dia(f) | T::BBox(f) | T::BDia(f) => 1 + f.modal_count(),
        }
    }

    /// Right-nested conjunction; empty gives `Top`.
    pub fn conj<I>(items: I) -> Self
    where
        I: IntoIterator<Item = Self>,
        I::IntoIter: DoubleEndedIterator,
    {
        fold_right(items, T::Top, T::and)
    }

    /// Right-nested disjunction; empty gives `Bot`.
    pub fn disj<I>(items: I) -> Self
    where
        I: IntoIterator<Item = Self>,
        I::IntoIter: DoubleEndedIterator,
    {
        fold_right(items, T::Bot, T::or)
    }

    /// An equivalent formula with `top` and `bot` folded away, nested
    /// conjunctions and disjunctions flattened and repeated operands
    /// dropped. A junction holding both `p` and `~p` collapses.
    pub fn simplify(&self) -> Self {
        match self {
            T::And(..) | T::Or(..) => {
                let conj = matches!(self, T::And(..));
                let mut raw = Vec::new();
                self.operands(conj, &mut raw);
                let mut ops = Vec::new();
                for f in raw {
                    f.simplify().operands(conj, &mut ops);
                }
                let (unit, zero) = if conj {
                    (T::Top, T::Bot)
                } else {
                    (T::Bot, T::Top)
                };
                let clash = ops
                    .iter()
                    .any(|f| matches!(f, T::Atom(p) if ops.contains(&T::NegAtom(p.clone()))));
                if clash {
                    return zero;
                }
                junction(ops, unit, zero, if conj { T::and } else { T::or })
            }
            // Every successor has a predecessor and vice versa.
            T::Box(f) => match f.simplify() {
                T::Top => T::Top,
                T::BDia(g) if *g == T::Top => T::Top,
                g => T::boxed(g),
            },
            T::BBox(f) => match f.simplify() {
                T::Top => T::Top,
                T::Dia(g) if *g == T::Top => T::Top,
                g => T::bbox(g),
            },
            T::Dia(f) => match f.simplify() {
                T::Bot => T::Bot,
                g => T::dia(g),
            },
            T::BDia(f) => match f.simplify() {
                T::Bot => T::Bot,
                g => T::bdia(g),
            },
            _ => self.clone(),
        }
    }

    fn operands(&self, conj: bool, out: &mut Vec<TenseFormula>) {
        match self {
            T::And(l, r) if conj => {
                l.operands(conj, out);
                r.operands(conj, out);
            }
            T::Or(l, r) if !conj => {
                l.operands(conj, out);
                r.operands(conj, out);
            }
            _ => out.push(self.clone()),
        }
    }

    /// Prints with conventional precedences and minimal parentheses.
    pub fn pretty(&self) -> String {
        let mut out = String::new();
        pretty_tense(self, 0, &mut out);
        out
    }
}

impl Formula for TenseFormula {
    const LOGIC: Logic = Logic::Kt;

    fn top() -> Self {
        T::Top
    }

    fn bot() -> Self {
        T::Bot
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            T::Atom(p) | T::NegAtom(p) => {
                out.insert(p.clone());
            }
            T::Top | T::Bot => {}
            T::And(l, r) | T::Or(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
            T::Box(f) | T::Dia(f) | T::BBox(f) | T::BDia(f) => f.collect_vars(out),
        }
    }

    fn parse_canonical(text: &str) -> Result<Self, ParseError> {
        parse::parse_tense(text)?.into_nnf_strict()
    }
}

/// Canonical form: every binary connective is wrapped in parentheses.
impl fmt::Display for TenseFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            T::Atom(p) => write!(f, "{p}"),
            T::NegAtom(p) => write!(f, "~{p}"),
            T::Top => f.write_str("top"),
            T::Bot => f.write_str("bot"),
            T::And(l, r) => write!(f, "({l} & {r})"),
            T::Or(l, r) => write!(f, "({l} | {r})"),
            T::Box(g) => write!(f, "[]{g}"),
            T::Dia(g) => write!(f, "<>{g}"),
            T::BBox(g) => write!(f, "[b]{g}"),
            T::BDia(g) => write!(f, "<b>{g}"),
        }
    }
}

// Binding strength: 1 for `|`, 2 for `&`, 3 for prefixes and atoms.
fn pretty_tense(f: &TenseFormula, ctx: u8, out: &mut String) {
    let (own, text_op) = match f {
        T::Or(..) => (1, " | "),
        T::And(..) => (2, " & "),
        _ => (3, ""),
    };
    match f {
        T::And(l, r) | T::Or(l, r) => {
            let wrap = own <= ctx;
            if wrap {
                out.push('(');
            }
            // Right-associative: the left operand needs parentheses at equal strength.
            pretty_tense(l, own, out);
            out.push_str(text_op);
            pretty_tense(r, own - 1, out);
            if wrap {
                out.push(')');
            }
        }
        T::Box(g) => {
            out.push_str("[]");
            pretty_tense(g, 3, out);
        }
        T::Dia(g) => {
            out.push_str("<>");
            pretty_tense(g, 3, out);
        }
        T::BBox(g) => {
            out.push_str("[b]");
            pretty_tense(g, 3, out);
        }
        T::BDia(g) => {
            out.push_str("<b>");
            pretty_tense(g, 3, out);
        }
        other => out.push_str(&other.to_string()),
    }
}

/// Tense input syntax: negation and implication may appear anywhere.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SurfaceTense {
    Atom(String),
    Top,
    Bot,
    Neg(Box<SurfaceTense>),
    And(Box<SurfaceTense>, Box<SurfaceTense>),
    Or(Box<SurfaceTense>, Box<SurfaceTense>),
    Imp(Box<SurfaceTense>, Box<SurfaceTense>),
    Box(Box<SurfaceTense>),
    Dia(Box<SurfaceTense>),
    BBox(Box<SurfaceTense>),
    BDia(Box<SurfaceTense>),
}

use SurfaceTense as S;

impl SurfaceTense {
    /// Converts to negation normal form, reading `A -> B` as `~A | B`.
    pub fn normalize(&self) -> TenseFormula {
        match self {
            S::Atom(p) => T::Atom(p.clone()),
            S::Top => T::Top,
            S::Bot => T::Bot,
            S::Neg(g) => g.normalize().negate(),
            S::And(l, r) => T::and(l.normalize(), r.normalize()),
            S::Or(l, r) => T::or(l.normalize(), r.normalize()),
            S::Imp(l, r) => T::or(l.normalize().negate(), r.normalize()),
            S::Box(g) => T::boxed(g.normalize()),
            S::Dia(g) => T::dia(g.normalize()),
            S::BBox(g) => T::bbox(g.normalize()),
            S::BDia(g) => T::bdia(g.normalize()),
        }
    }

    /// Accepts only formulas already in negation normal form: `~` directly
    /// on an atom, and no implication.
    pub fn into_nnf_strict(self) -> Result<TenseFormula, ParseError> {
        fn go(f: &SurfaceTense) -> Option<TenseFormula> {
            Some(match f {
                S::Atom(p) => T::Atom(p.clone()),
                S::Top => T::Top,
                S::Bot => T::Bot,
                S::Neg(g) => match g.as_ref() {
                    S::Atom(p) => T::NegAtom(p.clone()),
                    _ => return None,
                },
                S::And(l, r) => T::and(go(l)?, go(r)?),
                S::Or(l, r) => T::or(go(l)?, go(r)?),
                S::Imp(..) => return None,
                S::Box(g) => T::boxed(go(g)?),
                S::Dia(g) => T::dia(go(g)?),
                S::BBox(g) => T::bbox(go(g)?),
                S::BDia(g) => T::bdia(go(g)?),
            })
        }
        go(&self).ok_or_else(|| ParseError {
            offset: 0,
            expected: vec!["formula in negation normal form".into()],
            found: "negation of a compound formula or an implication".into(),
        })
    }
}

impl From<&TenseFormula> for SurfaceTense {
    fn from(f: &TenseFormula) -> Self {
        let b = |g: &TenseFormula| Box::new(SurfaceTense::from(g));
        match f {
            T::Atom(p) => S::Atom(p.clone()),
            T::NegAtom(p) => S::Neg(Box::new(S::Atom(p.clone()))),
            T::Top => S::Top,
            T::Bot => S::Bot,
            T::And(l, r) => S::And(b(l), b(r)),
            T::Or(l, r) => S::Or(b(l), b(r)),
            T::Box(g) => S::Box(b(g)),
            T::Dia(g) => S::Dia(b(g)),
            T::BBox(g) => S::BBox(b(g)),
            T::BDia(g) => S::BDia(b(g)),
        }
    }
}

impl fmt::Display for SurfaceTense {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            S::Atom(p) => write!(f, "{p}"),
            S::Top => f.write_str("top"),
            S::Bot => f.write_str("bot"),
            S::Neg(g) => write!(f, "~{g}"),
            S::And(l, r) => write!(f, "({l} & {r})"),
            S::Or(l, r) => write!(f, "({l} | {r})"),
            S::Imp(l, r) => write!(f, "({l} -> {r})"),
            S::Box(g) => write!(f, "[]{g}"),
            S::Dia(g) => write!(f, "<>{g}"),
            S::BBox(g) => write!(f, "[b]{g}"),
            S::BDia(g) => write!(f, "<b>{g}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> TenseFormula {
        T::atom("p")
    }

    #[test]
    fn negate_box_atom() {
        assert_eq!(T::boxed(p()).negate(), T::dia(T::neg_atom("p")));
        assert_eq!(p().negate(), T::neg_atom("p"));
    }

    #[test]
    fn negate_is_involutive_on_sample() {
        let f = T::or(p(), T::bbox(T::atom("q")));
        assert_eq!(f.negate().negate(), f);
        assert_eq!(f.negate().size(), f.size());
    }

    #[test]
    fn normalize_examples() {
        let imp = S::Imp(Box::new(S::Atom("p".into())), Box::new(S::Atom("q".into())));
        assert_eq!(imp.normalize(), T::or(T::neg_atom("p"), T::atom("q")));
        let nb = S::Neg(Box::new(S::Box(Box::new(S::Atom("p".into())))));
        assert_eq!(nb.normalize(), T::dia(T::neg_atom("p")));
        let nn = S::Neg(Box::new(S::Neg(Box::new(S::Atom("p".into())))));
        assert_eq!(nn.normalize(), p());
    }

    #[test]
    fn vars_examples() {
        let f = T::or(p(), T::neg_atom("p"));
        assert_eq!(f.vars(), BTreeSet::from(["p".to_string()]));
        let g = T::boxed(T::dia(T::atom("q")));
        assert_eq!(g.vars(), BTreeSet::from(["q".to_string()]));
    }

    #[test]
    fn canonical_and_pretty_printing() {
        let f = T::or(T::and(p(), T::atom("q")), T::or(T::dia(p()), T::Bot));
        assert_eq!(f.to_string(), "((p & q) | (<>p | bot))");
        assert_eq!(f.pretty(), "p & q | <>p | bot");
        let g = T::and(T::or(p(), p()), p());
        assert_eq!(g.pretty(), "(p | p) & p");
        let h = T::or(T::or(p(), p()), p());
        assert_eq!(h.pretty(), "(p | p) | p");
        assert_eq!(T::boxed(T::and(p(), p())).pretty(), "[](p & p)");
    }

    #[test]
    fn strict_nnf_rejects_compound_negation() {
        assert!(parse::parse_tense("~[]p")
            .unwrap()
            .into_nnf_strict()
            .is_err());
        assert!(parse::parse_tense("p -> q")
            .unwrap()
            .into_nnf_strict()
            .is_err());
        assert_eq!(
            TenseFormula::parse_canonical("(~p | <b>q)").unwrap(),
            T::or(T::neg_atom("p"), T::bdia(T::atom("q")))
        );
    }
}
