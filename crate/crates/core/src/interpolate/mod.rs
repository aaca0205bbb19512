//! Generalised interpolants: sets of flat sequents computed by recursion
//! over a derivation of a split sequent.
//!
//! The recursions follow the interpolation calculi rule by rule. A step
//! whose principal occurrence sits in the first partition is handled by
//! flipping the split and taking the orthogonal of the result.

mod bi;
mod craig;
mod duality;
mod extract;
mod kt;
mod orth;
mod tagged;
mod transform;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::formula::Formula;
use crate::sequent::{FlatSequent, Label, Labelled, Part};

pub use bi::interpolate_bi;
pub use craig::{craig_bi, craig_tense, reproof_config, Craig, CraigError};
pub use duality::duality_derivation;
pub use extract::{formula_of_bi, formula_of_tense};
pub use kt::interpolate_kt;
pub use orth::{orthogonal, orthogonal_bi, orthogonal_tense, orthogonal_uncollapsed, Orthogonal};
pub use transform::{box_transform, excl_transform, imp_transform};

/// A finite set of flat sequents.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interpolant<F> {
    members: BTreeSet<FlatSequent<F>>,
}

impl<F: Formula> Interpolant<F> {
    pub fn empty() -> Self {
        Interpolant {
            members: BTreeSet::new(),
        }
    }

    pub fn singleton(member: FlatSequent<F>) -> Self {
        Interpolant {
            members: BTreeSet::from([member]),
        }
    }

    pub fn members(&self) -> &BTreeSet<FlatSequent<F>> {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = &FlatSequent<F>> {
        self.members.iter()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, member: &FlatSequent<F>) -> bool {
        self.members.contains(member)
    }

    pub fn union(mut self, other: Interpolant<F>) -> Self {
        self.members.extend(other.members);
        self
    }

    pub fn vars(&self) -> BTreeSet<String> {
        self.members.iter().flat_map(FlatSequent::vars).collect()
    }

    pub fn labels(&self) -> BTreeSet<Label> {
        self.members.iter().flat_map(FlatSequent::labels).collect()
    }

    /// Drops every member that includes another member occurrence-wise.
    /// Of members including each other (they differ only in repeats) the
    /// least is kept. The formula reading is unchanged up to equivalence,
    /// since the smaller member implies the larger one.
    pub fn absorbed(&self) -> Self {
        let within = |small: &FlatSequent<F>, big: &FlatSequent<F>| {
            small.left().iter().all(|o| big.left().contains(o))
                && small.right().iter().all(|o| big.right().contains(o))
        };
        // A member can only be included in members with at least as many
        // distinct occurrences, so scanning in that order keeps the test
        // against the few survivors.
        let distinct = |m: &FlatSequent<F>| {
            let count = |side: &[Labelled<F>]| side.iter().collect::<BTreeSet<_>>().len();
            count(m.left()) + count(m.right())
        };
        let mut order: Vec<&FlatSequent<F>> = self.members.iter().collect();
        order.sort_by_key(|m| distinct(m));
        let mut kept: Vec<&FlatSequent<F>> = Vec::new();
        for m in order {
            if !kept.iter().any(|n| within(n, m)) {
                kept.push(m);
            }
        }
        kept.into_iter().cloned().collect()
    }

    /// Total number of labelled formulas across members.
    pub fn occurrence_count(&self) -> usize {
        self.members.iter().map(FlatSequent::len).sum()
    }
}

impl<F: Formula> FromIterator<FlatSequent<F>> for Interpolant<F> {
    fn from_iter<I: IntoIterator<Item = FlatSequent<F>>>(iter: I) -> Self {
        Interpolant {
            members: iter.into_iter().collect(),
        }
    }
}

impl<F: Formula> fmt::Display for Interpolant<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({m})")?;
        }
        f.write_str("}")
    }
}

/// Assignment of every occurrence of a sequent to a partition: left
/// occurrences first, then right ones, in sequent order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SplitSpec(pub Vec<Part>);

impl SplitSpec {
    pub fn new(parts: Vec<Part>) -> Self {
        SplitSpec(parts)
    }

    pub fn parts(&self) -> &[Part] {
        &self.0
    }
}

/// Variants of the interpolation rules.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct InterpolateOptions {
    /// In the right-exclusion rule, move the kept principal into the first
    /// partition of the second premise instead of leaving it where it was.
    /// Off by default: moving it lets second-partition variables leak into
    /// the interpolant (see the `exclr_principal_in_part1_leaks` test).
    pub exclr_principal_part1: bool,
    /// Absorb every intermediate interpolant (see [`Interpolant::absorbed`])
    /// before it is combined or dualised. The formula reading is unchanged
    /// up to equivalence, and orthogonals of absorbed sets stay small.
    /// The Craig procedures always set it.
    pub absorb: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum InterpolateError {
    #[error("split has {found} parts but the sequent has {expected} occurrences")]
    SplitMismatch { expected: usize, found: usize },
    #[error("malformed proof at {position:?} ({rule}): {reason}")]
    MalformedProof {
        rule: String,
        position: Vec<usize>,
        reason: String,
    },
    #[error("interpolant mentions labels other than {expected}")]
    MixedLabels { expected: Label },
}

#[cfg(test)]
mod tests;
