use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use super::{fold_right, junction, parse, Formula, Logic, ParseError};

/// A bi-intuitionistic formula. `Excl(a, b)` is exclusion (co-implication):
/// `a` holds while `b` fails.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BiFormula {
    Atom(String),
    Top,
    Bot,
    And(Arc<BiFormula>, Arc<BiFormula>),
    Or(Arc<BiFormula>, Arc<BiFormula>),
    Imp(Arc<BiFormula>, Arc<BiFormula>),
    Excl(Arc<BiFormula>, Arc<BiFormula>),
}

use BiFormula as B;

impl BiFormula {
    pub fn atom(name: impl Into<String>) -> Self {
        B::Atom(name.into())
    }

    pub fn and(l: Self, r: Self) -> Self {
        B::And(Arc::new(l), Arc::new(r))
    }

    pub fn or(l: Self, r: Self) -> Self {
        B::Or(Arc::new(l), Arc::new(r))
    }

    pub fn imp(l: Self, r: Self) -> Self {
        B::Imp(Arc::new(l), Arc::new(r))
    }

    pub fn excl(l: Self, r: Self) -> Self {
        B::Excl(Arc::new(l), Arc::new(r))
    }

    pub fn size(&self) -> usize {
        match self {
            B::Atom(_) | B::Top | B::Bot => 1,
            B::And(l, r) | B::Or(l, r) | B::Imp(l, r) | B::Excl(l, r) => 1 + l.size() + r.size(),
        }
    }

    /// Nesting depth of `->` and `-<`, the connectives that create labels.
    pub fn modal_depth(&self) -> usize {
        match self {
            B::Atom(_) | B::Top | B::Bot => 0,
            B::And(l, r) | B::Or(l, r) => l.modal_depth().max(r.modal_depth()),
            B::Imp(l, r) | B::Excl(l, r) => 1 + l.modal_depth().max(r.modal_depth()),
        }
    }

    /// Number of `->` and `-<` occurrences.
    pub fn modal_count(&self) -> usize {
        match self {
            B::Atom(_) | B::Top | B::Bot => 0,
            B::And(l, r) | B::Or(l, r) => l.modal_count() + r.modal_count(),
            B::Imp(l, r) | B::Excl(l, r) => 1 + l.modal_count() + r.modal_count(),
        }
    }

    /// Right-nested conjunction; empty gives `Top`.
    pub fn conj<I>(items: I) -> Self
    where
        I: IntoIterator<Item = Self>,
        I::IntoIter: DoubleEndedIterator,
    {
        fold_right(items, B::Top, B::and)
    }

    /// Right-nested disjunction; empty gives `Bot`.
    pub fn disj<I>(items: I) -> Self
    where
        I: IntoIterator<Item = Self>,
        I::IntoIter: DoubleEndedIterator,
    {
        fold_right(items, B::Bot, B::or)
    }

    /// An equivalent formula with `top` and `bot` folded away, nested
    /// conjunctions and disjunctions flattened and repeated operands
    /// dropped. Also `top -> a` becomes `a`, `a -< bot` becomes `a`, and
    /// `a -> b` and `a -< b` become `top` and `bot` when `a` entails `b`.
    pub fn simplify(&self) -> Self {
        match self {
            B::And(..) | B::Or(..) => {
                let conj = matches!(self, B::And(..));
                let mut raw = Vec::new();
                self.operands(conj, &mut raw);
                let mut ops = Vec::new();
                for f in raw {
                    f.simplify().operands(conj, &mut ops);
                }
                // A disjunct that entails another one is redundant, and so
                // is a conjunct entailed by another one.
                let weaker = |a: &B, b: &B| if conj { a.entails(b) } else { b.entails(a) };
                let mut kept: Vec<B> = Vec::new();
                for f in ops {
                    if kept.iter().any(|k| weaker(k, &f)) {
                        continue;
                    }
                    kept.retain(|k| !weaker(&f, k));
                    kept.push(f);
                }
                let (unit, zero) = if conj {
                    (B::Top, B::Bot)
                } else {
                    (B::Bot, B::Top)
                };
                junction(kept, unit, zero, if conj { B::and } else { B::or })
            }
            B::Imp(l, r) => match (l.simplify(), r.simplify()) {
                (B::Top, b) => b,
                (a, b) if a.entails(&b) => B::Top,
                (a, b) => B::imp(a, b),
            },
            B::Excl(l, r) => match (l.simplify(), r.simplify()) {
                (a, B::Bot) => a,
                (a, b) if a.entails(&b) => B::Bot,
                (a, b) => B::excl(a, b),
            },
            _ => self.clone(),
        }
    }

    /// A syntactic check that `self -> other` is valid. Sound but
    /// incomplete: it uses the lattice laws, persistence (`a -< b` entails
    /// `a`, and `a` entails `b -> a`) and the monotonicity of `->` and
    /// `-<`.
    pub fn entails(&self, other: &BiFormula) -> bool {
        if self == other || *self == B::Bot || *other == B::Top {
            return true;
        }
        match (self, other) {
            (B::Or(a, b), _) => return a.entails(other) && b.entails(other),
            (_, B::And(a, b)) => return self.entails(a) && self.entails(b),
            _ => {}
        }
        let split = match self {
            B::And(a, b) => a.entails(other) || b.entails(other),
            B::Excl(a, _) => a.entails(other),
            _ => false,
        };
        split
            || match (self, other) {
                (_, B::Or(a, b)) => self.entails(a) || self.entails(b),
                (_, B::Imp(_, b)) if self.entails(b) => true,
                (B::Imp(a, b), B::Imp(c, d)) => c.entails(a) && b.entails(d),
                (B::Excl(a, b), B::Excl(c, d)) => a.entails(c) && d.entails(b),
                _ => false,
            }
    }

    fn operands(&self, conj: bool, out: &mut Vec<BiFormula>) {
        match self {
            B::And(l, r) if conj => {
                l.operands(conj, out);
                r.operands(conj, out);
            }
            B::Or(l, r) if !conj => {
                l.operands(conj, out);
                r.operands(conj, out);
            }
            _ => out.push(self.clone()),
        }
    }

    /// Prints with conventional precedences and minimal parentheses.
    pub fn pretty(&self) -> String {
        let mut out = String::new();
        pretty_bi(self, 0, &mut out);
        out
    }
}

impl Formula for BiFormula {
    const LOGIC: Logic = Logic::Bi;

    fn top() -> Self {
        B::Top
    }

    fn bot() -> Self {
        B::Bot
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            B::Atom(p) => {
                out.insert(p.clone());
            }
            B::Top | B::Bot => {}
            B::And(l, r) | B::Or(l, r) | B::Imp(l, r) | B::Excl(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }

    fn parse_canonical(text: &str) -> Result<Self, ParseError> {
        parse::parse_bi(text)
    }
}

impl fmt::Display for BiFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            B::Atom(p) => write!(f, "{p}"),
            B::Top => f.write_str("top"),
            B::Bot => f.write_str("bot"),
            B::And(l, r) => write!(f, "({l} & {r})"),
            B::Or(l, r) => write!(f, "({l} | {r})"),
            B::Imp(l, r) => write!(f, "({l} -> {r})"),
            B::Excl(l, r) => write!(f, "({l} -< {r})"),
        }
    }
}

fn pretty_bi(f: &BiFormula, ctx: u8, out: &mut String) {
    let (own, op) = match f {
        B::Imp(..) => (1, " -> "),
        B::Excl(..) => (1, " -< "),
        B::Or(..) => (2, " | "),
        B::And(..) => (3, " & "),
        other => {
            out.push_str(&other.to_string());
            return;
        }
    };
    let (B::And(l, r) | B::Or(l, r) | B::Imp(l, r) | B::Excl(l, r)) = f else {
        unreachable!()
    };
    let wrap = own <= ctx;
    if wrap {
        out.push('(');
    }
    pretty_bi(l, own, out);
    out.push_str(op);
    pretty_bi(r, own - 1, out);
    if wrap {
        out.push(')');
    }
}
