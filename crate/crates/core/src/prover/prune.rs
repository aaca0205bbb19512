//! Removal of idle non-branching steps from finished proofs.
//!
//! A step is idle when none of the occurrences it adds is ever principal
//! higher up. Dropping it means deleting those occurrences from every
//! sequent above and restoring the occurrence it consumed.

use std::collections::HashSet;

use crate::formula::Formula;
use crate::proof::{Proof, RuleTag};
use crate::sequent::{Labelled, Side};

type Content<F> = (Side, Labelled<F>);

/// Occurrences added and consumed by a prunable step, or `None` if the step
/// must be kept.
fn effect<F: Formula>(node: &Proof<F>) -> Option<(Vec<Content<F>>, Vec<Content<F>>)> {
    let premise = node.premises.first()?;
    let diff = |side: Side| -> (Vec<Labelled<F>>, Vec<Labelled<F>>) {
        let mut below = node.conclusion.side(side).to_vec();
        let mut added = Vec::new();
        for o in premise.conclusion.side(side) {
            match below.iter().position(|b| b == o) {
                Some(i) => {
                    below.remove(i);
                }
                None => added.push(o.clone()),
            }
        }
        (added, below)
    };
    match node.rule {
        RuleTag::Or
        | RuleTag::Dia
        | RuleTag::BDia
        | RuleTag::AndL
        | RuleTag::OrR
        | RuleTag::MonL
        | RuleTag::MonR => {
            let mut added = Vec::new();
            let mut consumed = Vec::new();
            for side in [Side::Left, Side::Right] {
                let (a, c) = diff(side);
                added.extend(a.into_iter().map(|o| (side, o)));
                consumed.extend(c.into_iter().map(|o| (side, o)));
            }
            Some((added, consumed))
        }
        _ => None,
    }
}

fn principal_contents<F: Formula>(node: &Proof<F>) -> impl Iterator<Item = Content<F>> + '_ {
    let p = &node.principal;
    p.left
        .iter()
        .map(|o| (Side::Left, o.clone()))
        .chain(p.right.iter().map(|o| (Side::Right, o.clone())))
        .chain(
            p.cut
                .iter()
                .flat_map(|o| [(Side::Left, o.clone()), (Side::Right, o.clone())]),
        )
}

struct Summary<F> {
    used: HashSet<Content<F>>,
    added: HashSet<Content<F>>,
}

fn edit_above<F: Formula>(node: &mut Proof<F>, remove: &[Content<F>], restore: &[Content<F>]) {
    for (side, occ) in remove {
        let v = match side {
            Side::Left => &mut node.conclusion.left,
            Side::Right => &mut node.conclusion.right,
        };
        if let Some(i) = v.iter().position(|o| o == occ) {
            v.remove(i);
        }
    }
    for (side, occ) in restore {
        match side {
            Side::Left => node.conclusion.left.push(occ.clone()),
            Side::Right => node.conclusion.right.push(occ.clone()),
        }
    }
    for p in &mut node.premises {
        edit_above(p, remove, restore);
    }
}

fn go<F: Formula>(mut node: Proof<F>) -> (Proof<F>, Summary<F>) {
    let mut summary = Summary {
        used: HashSet::new(),
        added: HashSet::new(),
    };
    let premises = std::mem::take(&mut node.premises);
    for p in premises {
        let (p, s) = go(p);
        summary.used.extend(s.used);
        summary.added.extend(s.added);
        node.premises.push(p);
    }
    if let Some((added, consumed)) = effect(&node) {
        let idle = added.iter().all(|c| !summary.used.contains(c))
            && consumed.iter().all(|c| !summary.added.contains(c));
        if idle {
            let mut above = node
                .premises
                .pop()
                .expect("prunable steps have one premise");
            edit_above(&mut above, &added, &consumed);
            return (above, summary);
        }
        summary.added.extend(added);
    }
    summary.used.extend(principal_contents(&node));
    (node, summary)
}

/// Drops idle `Or`, `Dia`, `BDia`, `AndL`, `OrR`, `MonL` and `MonR` steps.
/// Branching and fresh-label steps are never removed.
pub fn prune<F: Formula>(proof: Proof<F>) -> Proof<F> {
    go(proof).0
}
