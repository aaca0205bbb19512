use crate::formula::Logic;
use crate::proof::{Principal, Proof, RuleTag};
use crate::sequent::{FlatSequent, LabelledSequent, Polarity};

use super::orth::{collapse, orthogonal, Item, Orthogonal};
use super::Interpolant;

fn sequent<F: Orthogonal>(items: Vec<Item<F>>) -> LabelledSequent<F> {
    F::assemble(items).with_rel(Vec::new())
}

fn hyp<F: Orthogonal>(s: &FlatSequent<F>) -> Proof<F> {
    Proof::leaf(s.with_rel(Vec::new()), RuleTag::Hyp, Principal::default())
}

/// Weakens `premise` by `extra`.
fn weaken<F: Orthogonal>(premise: Proof<F>, extra: Vec<Item<F>>) -> Proof<F> {
    if extra.is_empty() {
        return premise;
    }
    let added = sequent(extra);
    let mut conclusion = premise.conclusion.clone();
    conclusion.left.extend(added.left.iter().cloned());
    conclusion.right.extend(added.right.iter().cloned());
    let principal = Principal {
        left: added.left,
        right: added.right,
        ..Default::default()
    };
    Proof {
        conclusion,
        rule: RuleTag::Wk,
        principal,
        premises: vec![premise],
    }
}

/// Cuts on `item`, where `with_item` contains it and `with_dual` contains
/// its dual.
fn cut<F: Orthogonal>(
    conclusion: LabelledSequent<F>,
    item: &Item<F>,
    with_item: Proof<F>,
    with_dual: Proof<F>,
) -> Proof<F> {
    let rule = match F::LOGIC {
        Logic::Kt => RuleTag::Cut1,
        Logic::Bi => RuleTag::Cut2,
    };
    let premises = match item.1 {
        Polarity::R => vec![with_item, with_dual],
        Polarity::L => vec![with_dual, with_item],
    };
    let principal = Principal {
        cut: Some(item.0.clone()),
        ..Default::default()
    };
    Proof {
        conclusion,
        rule,
        principal,
        premises,
    }
}

/// The orthogonal member collapsing `items`, weakened back up to `items`.
fn orthogonal_leaf<F: Orthogonal>(items: Vec<Item<F>>) -> Proof<F> {
    let set = collapse(items.clone());
    let mut repeated = items;
    repeated.sort();
    for item in &set {
        let at = repeated
            .binary_search(item)
            .expect("collapse keeps every item");
        repeated.remove(at);
    }
    weaken(hyp(&F::assemble(set)), repeated)
}

/// Derives `|- lambda` from `member` and the orthogonal members
/// `lambda, dual(a)` for each occurrence `a` of `member`, cutting the
/// occurrences of `member` away one at a time.
fn discharge<F: Orthogonal>(member: &FlatSequent<F>, lambda: &FlatSequent<F>) -> Proof<F> {
    let items = F::items(member);
    let ctx = F::items(lambda);
    let mut current = weaken(hyp(member), ctx.clone());
    for (j, item) in items.iter().enumerate() {
        let remaining: Vec<Item<F>> = items[j + 1..].to_vec();
        let mut leaf_items = ctx.clone();
        leaf_items.push(F::dual(item));
        let leaf = weaken(orthogonal_leaf(leaf_items), remaining.clone());
        let conclusion = sequent(remaining.into_iter().chain(ctx.iter().cloned()).collect());
        current = cut(conclusion, item, current, leaf);
    }
    current
}

fn replace_leaves<F: Orthogonal>(
    proof: Proof<F>,
    targets: &Interpolant<F>,
    member: &FlatSequent<F>,
) -> Proof<F> {
    if proof.rule == RuleTag::Hyp {
        let flat = proof.conclusion.flatten();
        if targets.contains(&flat) {
            return discharge(member, &flat);
        }
        return proof;
    }
    let Proof {
        conclusion,
        rule,
        principal,
        premises,
    } = proof;
    let premises = premises
        .into_iter()
        .map(|p| replace_leaves(p, targets, member))
        .collect();
    Proof {
        conclusion,
        rule,
        principal,
        premises,
    }
}

/// A derivation of the empty sequent whose leaves are `Hyp` nodes taken
/// from `i` and its orthogonal, built by induction on the members of `i`.
/// Besides cut it uses weakening, because cut shares its context and
/// orthogonal members are sets.
pub fn duality_derivation<F: Orthogonal>(i: &Interpolant<F>) -> Proof<F> {
    let members: Vec<FlatSequent<F>> = i.iter().cloned().collect();
    build(&members)
}

fn build<F: Orthogonal>(members: &[FlatSequent<F>]) -> Proof<F> {
    let Some((first, rest)) = members.split_first() else {
        return hyp(&FlatSequent::empty());
    };
    if first.is_empty() {
        return hyp(first);
    }
    let inner = build(rest);
    let rest_orth = orthogonal(&rest.iter().cloned().collect());
    replace_leaves(inner, &rest_orth, first)
}
