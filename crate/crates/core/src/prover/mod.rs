//! Backward proof search for the tense calculus and the bi-intuitionistic
//! calculus.
//!
//! Both searches are deterministic and saturating: every rule is
//! invertible, so a branch never needs backtracking. The only source of
//! non-termination, fresh-label rules, is capped per branch by
//! [`SearchConfig::depth_bound`].

mod bi;
mod kt;
mod prune;

use thiserror::Error;

use crate::path_system::PathAxiomSystem;
use crate::proof::{Principal, Proof, RuleTag};
use crate::sequent::{Label, LabelledSequent};

pub use bi::prove_bi;
pub use kt::prove_kt;
pub use prune::prune;

#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Maximum number of fresh labels introduced along any branch.
    pub depth_bound: usize,
    pub system: PathAxiomSystem,
    /// Remove non-branching steps whose output is never used.
    pub prune: bool,
    /// Total rule applications before the search gives up.
    pub max_steps: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            depth_bound: 12,
            system: PathAxiomSystem::default(),
            prune: true,
            max_steps: 200_000,
        }
    }
}

impl SearchConfig {
    pub fn with_bound(depth_bound: usize) -> Self {
        SearchConfig {
            depth_bound,
            ..Default::default()
        }
    }

    pub fn with_system(mut self, system: PathAxiomSystem) -> Self {
        self.system = system;
        self
    }
}

/// Why a search ended without a proof.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NotProved {
    /// Some branch saturated without closing and no limit was reached: the
    /// goal is not derivable.
    Refuted,
    /// A limit cut the search short.
    BoundExceeded,
}

#[derive(Clone, Debug)]
pub enum Outcome<F> {
    Proved(Proof<F>),
    NotProved(NotProved),
}

impl<F: crate::formula::Formula> PartialEq for Outcome<F> {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Outcome::Proved(a), Outcome::Proved(b)) => a == b,
            (Outcome::NotProved(a), Outcome::NotProved(b)) => a == b,
            _ => false,
        }
    }
}

impl<F> Outcome<F> {
    pub fn proof(self) -> Option<Proof<F>> {
        match self {
            Outcome::Proved(p) => Some(p),
            Outcome::NotProved(_) => None,
        }
    }

    pub fn is_proved(&self) -> bool {
        matches!(self, Outcome::Proved(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("tense goals must be one-sided (no formulas on the left)")]
    NotOneSided,
    #[error("depth bound must be at least 1")]
    ZeroBound,
}

/// Mutable state of one search call.
struct Session<'a> {
    cfg: &'a SearchConfig,
    next_label: u32,
    bound_hit: bool,
    steps: usize,
}

/// Signals that some branch cannot be closed.
struct Stuck;

impl<'a> Session<'a> {
    fn new<F: crate::formula::Formula>(cfg: &'a SearchConfig, goal: &LabelledSequent<F>) -> Self {
        let next_label = goal.max_label().map_or(0, |l| l.0 + 1);
        Session {
            cfg,
            next_label,
            bound_hit: false,
            steps: 0,
        }
    }

    fn tick(&mut self) -> Result<(), Stuck> {
        self.steps += 1;
        if self.steps > self.cfg.max_steps {
            self.bound_hit = true;
            return Err(Stuck);
        }
        Ok(())
    }

    /// Takes a fresh label if the branch still has budget.
    fn fresh(&mut self, used: &mut usize) -> Option<Label> {
        if *used >= self.cfg.depth_bound {
            self.bound_hit = true;
            return None;
        }
        *used += 1;
        let l = Label(self.next_label);
        self.next_label += 1;
        Some(l)
    }

    fn finish<F: crate::formula::Formula>(&self, result: Result<Proof<F>, Stuck>) -> Outcome<F> {
        match result {
            Ok(p) if self.cfg.prune => Outcome::Proved(prune(p)),
            Ok(p) => Outcome::Proved(p),
            Err(Stuck) if self.bound_hit => Outcome::NotProved(NotProved::BoundExceeded),
            Err(Stuck) => Outcome::NotProved(NotProved::Refuted),
        }
    }
}

/// Linear steps recorded bottom-up, closed off by the node at the top.
type Chain<F> = Vec<(LabelledSequent<F>, RuleTag, Principal<F>)>;

fn assemble<F: crate::formula::Formula>(chain: Chain<F>, top: Proof<F>) -> Proof<F> {
    chain
        .into_iter()
        .rev()
        .fold(top, |above, (conclusion, rule, principal)| Proof {
            conclusion,
            rule,
            principal,
            premises: vec![above],
        })
}
