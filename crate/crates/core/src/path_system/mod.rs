//! Path axioms, their completion, and the side condition that decides where
//! a diamond formula may be propagated.
//!
//! The completion of an axiom set is infinite in general, so it is never
//! materialised. Instead every axiom `k1 .. kn -> t` becomes a grammar rule
//! `D_t -> D_k1 .. D_kn`, the language of `D_t` is exactly the set of
//! prefixes completing to `t`, and reachability in a propagation graph is
//! decided by context-free-language reachability.

mod cfl;
mod cyk;
mod graph;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use cfl::{find_path, reachable, Reachability, SaturationStats};
pub use graph::{oracle_reachable, Path, PropagationGraph};

/// The two diamonds: white looks forward along relational atoms, black looks
/// backward.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DiamondKind {
    White,
    Black,
}

impl DiamondKind {
    pub fn flip(self) -> DiamondKind {
        match self {
            DiamondKind::White => DiamondKind::Black,
            DiamondKind::Black => DiamondKind::White,
        }
    }

    /// `d` for white, `b` for black, as in axiom files.
    pub fn letter(self) -> char {
        match self {
            DiamondKind::White => 'd',
            DiamondKind::Black => 'b',
        }
    }

    pub fn from_letter(c: char) -> Option<DiamondKind> {
        match c {
            'd' => Some(DiamondKind::White),
            'b' => Some(DiamondKind::Black),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("path axiom prefix must be nonempty")]
    EmptyPrefix,
    #[error("axioms not composable at position {0}")]
    NotComposable(usize),
    #[error("axiom file line {line}: {message}")]
    Syntax { line: usize, message: String },
}

/// `k1 .. kn p -> t p` with `n >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PathAxiom {
    prefix: Vec<DiamondKind>,
    target: DiamondKind,
}

impl PathAxiom {
    pub fn new(prefix: Vec<DiamondKind>, target: DiamondKind) -> Result<Self, PathError> {
        if prefix.is_empty() {
            return Err(PathError::EmptyPrefix);
        }
        Ok(PathAxiom { prefix, target })
    }

    /// The trivial axiom `k -> k`.
    pub fn identity(kind: DiamondKind) -> Self {
        PathAxiom {
            prefix: vec![kind],
            target: kind,
        }
    }

    pub fn prefix(&self) -> &[DiamondKind] {
        &self.prefix
    }

    pub fn target(&self) -> DiamondKind {
        self.target
    }

    /// Reverses the prefix and flips every diamond, including the target.
    pub fn invert(&self) -> PathAxiom {
        PathAxiom {
            prefix: self.prefix.iter().rev().map(|k| k.flip()).collect(),
            target: self.target.flip(),
        }
    }

    /// Replaces position `i` (1-based) of `g`'s prefix by the whole prefix
    /// of `f`. Requires the target of `f` to equal that position.
    pub fn compose(f: &PathAxiom, g: &PathAxiom, i: usize) -> Result<PathAxiom, PathError> {
        if i == 0 || i > g.prefix.len() || g.prefix[i - 1] != f.target {
            return Err(PathError::NotComposable(i));
        }
        let mut prefix = g.prefix[..i - 1].to_vec();
        prefix.extend_from_slice(&f.prefix);
        prefix.extend_from_slice(&g.prefix[i..]);
        Ok(PathAxiom {
            prefix,
            target: g.target,
        })
    }
}

impl fmt::Display for PathAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix: String = self.prefix.iter().map(|k| k.letter()).collect();
        write!(f, "{prefix} -> {}", self.target.letter())
    }
}

impl FromStr for PathAxiom {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (lhs, rhs) = s.split_once("->").ok_or("expected `PREFIX -> T`")?;
        let prefix = lhs
            .trim()
            .chars()
            .map(|c| DiamondKind::from_letter(c).ok_or(format!("unexpected `{c}` in prefix")))
            .collect::<Result<Vec<_>, _>>()?;
        let rhs = rhs.trim();
        let mut chars = rhs.chars();
        let target = match (chars.next(), chars.next()) {
            (Some(c), None) => DiamondKind::from_letter(c),
            _ => None,
        }
        .ok_or(format!("target must be `d` or `b`, found `{rhs}`"))?;
        PathAxiom::new(prefix, target).map_err(|e| e.to_string())
    }
}

/// Nonterminal index in the derived grammar. `0` and `1` are `D_White` and
/// `D_Black`; the rest come from splitting long rules.
pub(crate) type Nt = usize;

pub(crate) fn nt_of(kind: DiamondKind) -> Nt {
    match kind {
        DiamondKind::White => 0,
        DiamondKind::Black => 1,
    }
}

/// Binary-normal-form grammar generating, from `D_t`, every prefix that
/// completes to `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grammar {
    pub(crate) nt_count: usize,
    /// `A -> B C`
    pub(crate) binary: Vec<(Nt, Nt, Nt)>,
    /// `A -> B`
    pub(crate) unit: Vec<(Nt, Nt)>,
    /// For each `B`, every `A` with `A =>* B` through unit rules, `B` included.
    pub(crate) unit_closure: Vec<Vec<Nt>>,
}

impl Grammar {
    fn build(axioms: &BTreeSet<PathAxiom>) -> Grammar {
        let mut nt_count = 2;
        let mut binary = Vec::new();
        let mut unit = Vec::new();
        for ax in axioms {
            let lhs = nt_of(ax.target);
            let syms: Vec<Nt> = ax.prefix.iter().map(|&k| nt_of(k)).collect();
            match syms.len() {
                1 => unit.push((lhs, syms[0])),
                _ => {
                    // D_t -> s1 X1, X1 -> s2 X2, ..., X_{n-2} -> s_{n-1} s_n
                    let mut head = lhs;
                    for &s in &syms[..syms.len() - 2] {
                        let fresh = nt_count;
                        nt_count += 1;
                        binary.push((head, s, fresh));
                        head = fresh;
                    }
                    binary.push((head, syms[syms.len() - 2], syms[syms.len() - 1]));
                }
            }
        }
        unit.retain(|(a, b)| a != b);
        unit.sort();
        unit.dedup();
        let mut unit_closure: Vec<Vec<Nt>> = (0..nt_count).map(|b| vec![b]).collect();
        loop {
            let mut changed = false;
            for &(a, b) in &unit {
                for closure in unit_closure.iter_mut() {
                    if closure.contains(&b) && !closure.contains(&a) {
                        closure.push(a);
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        for v in &mut unit_closure {
            v.sort();
        }
        Grammar {
            nt_count,
            binary,
            unit,
            unit_closure,
        }
    }

    pub fn nonterminal_count(&self) -> usize {
        self.nt_count
    }
}

/// A set of path axioms with its derived grammar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathAxiomSystem {
    axioms: BTreeSet<PathAxiom>,
    include_inverses: bool,
    grammar: Grammar,
}

impl Default for PathAxiomSystem {
    fn default() -> Self {
        PathAxiomSystem::new(Vec::new(), false)
    }
}

impl PathAxiomSystem {
    /// With `include_inverses`, the completion is taken over the axioms
    /// together with their inverses.
    pub fn new(axioms: impl IntoIterator<Item = PathAxiom>, include_inverses: bool) -> Self {
        let axioms: BTreeSet<PathAxiom> = axioms.into_iter().collect();
        let mut generating = axioms.clone();
        if include_inverses {
            generating.extend(axioms.iter().map(PathAxiom::invert));
        }
        let grammar = Grammar::build(&generating);
        PathAxiomSystem {
            axioms,
            include_inverses,
            grammar,
        }
    }

    /// Parses the axiom file format: one `PREFIX -> T` per line over the
    /// letters `d` and `b`, `#` to end of line is a comment.
    pub fn parse(text: &str, include_inverses: bool) -> Result<Self, PathError> {
        let mut axioms = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let ax = line
                .parse::<PathAxiom>()
                .map_err(|message| PathError::Syntax {
                    line: n + 1,
                    message,
                })?;
            axioms.push(ax);
        }
        Ok(PathAxiomSystem::new(axioms, include_inverses))
    }

    pub fn axioms(&self) -> &BTreeSet<PathAxiom> {
        &self.axioms
    }

    pub fn include_inverses(&self) -> bool {
        self.include_inverses
    }

    pub fn grammar(&self) -> &Grammar {
        &self.grammar
    }

    /// The axioms the completion is generated from: the declared ones, plus
    /// their inverses when enabled.
    pub fn generating_axioms(&self) -> BTreeSet<PathAxiom> {
        let mut out = self.axioms.clone();
        if self.include_inverses {
            out.extend(self.axioms.iter().map(PathAxiom::invert));
        }
        out
    }

    /// Whether `word -> target` is in the completion.
    pub fn completion_member(&self, word: &[DiamondKind], target: DiamondKind) -> bool {
        !word.is_empty() && cyk::derives(&self.grammar, word, nt_of(target))
    }

    /// Axiom strings as written in an axiom file.
    pub fn to_lines(&self) -> Vec<String> {
        self.axioms.iter().map(ToString::to_string).collect()
    }
}

#[cfg(test)]
pub(crate) mod closure_oracle {
    //! Brute-force completion by repeated composition, bounded by prefix length.

    use super::*;

    pub fn completion_up_to(sys: &PathAxiomSystem, max_len: usize) -> BTreeSet<PathAxiom> {
        let mut set = sys.generating_axioms();
        set.retain(|a| a.prefix().len() <= max_len);
        set.insert(PathAxiom::identity(DiamondKind::White));
        set.insert(PathAxiom::identity(DiamondKind::Black));
        loop {
            let snapshot: Vec<PathAxiom> = set.iter().cloned().collect();
            let mut added = false;
            for f in &snapshot {
                for g in &snapshot {
                    for i in 1..=g.prefix().len() {
                        if let Ok(h) = PathAxiom::compose(f, g, i) {
                            if h.prefix().len() <= max_len && set.insert(h) {
                                added = true;
                            }
                        }
                    }
                }
            }
            if !added {
                return set;
            }
        }
    }
}
