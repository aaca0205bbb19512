use std::collections::BTreeSet;

use crate::formula::{BiFormula, Formula, TenseFormula};
use crate::sequent::{depolarise, polarise, FlatSequent, Labelled, Polarity};

use super::Interpolant;

pub type Item<F> = (Labelled<F>, Polarity);

/// The duality used by the orthogonal. Tense sequents are one-sided and
/// dualise by negation; bi-intuitionistic sequents dualise by moving an
/// occurrence to the other side.
pub trait Orthogonal: Formula {
    fn items(s: &FlatSequent<Self>) -> Vec<Item<Self>>;
    fn dual(item: &Item<Self>) -> Item<Self>;
    fn assemble(items: Vec<Item<Self>>) -> FlatSequent<Self>;
}

impl Orthogonal for TenseFormula {
    fn items(s: &FlatSequent<Self>) -> Vec<Item<Self>> {
        s.right().iter().map(|o| (o.clone(), Polarity::R)).collect()
    }

    fn dual((o, _): &Item<Self>) -> Item<Self> {
        (Labelled::new(o.label, o.formula.negate()), Polarity::R)
    }

    fn assemble(items: Vec<Item<Self>>) -> FlatSequent<Self> {
        FlatSequent::right_only(items.into_iter().map(|(o, _)| o).collect())
    }
}

impl Orthogonal for BiFormula {
    fn items(s: &FlatSequent<Self>) -> Vec<Item<Self>> {
        polarise(s).items().to_vec()
    }

    fn dual((o, pol): &Item<Self>) -> Item<Self> {
        (o.clone(), pol.dual())
    }

    fn assemble(items: Vec<Item<Self>>) -> FlatSequent<Self> {
        depolarise(&crate::sequent::PolarisedSequent::new(items))
    }
}

/// One sequent per choice function picking an occurrence from every member,
/// each pick dualised. Duplicates are kept.
pub fn orthogonal_uncollapsed<F: Orthogonal>(i: &Interpolant<F>) -> Vec<FlatSequent<F>> {
    let mut partial: Vec<Vec<Item<F>>> = vec![Vec::new()];
    for member in i.iter() {
        let choices: Vec<Item<F>> = F::items(member).iter().map(F::dual).collect();
        partial = partial
            .iter()
            .flat_map(|prefix| {
                choices.iter().map(move |c| {
                    let mut next = prefix.clone();
                    next.push(c.clone());
                    next
                })
            })
            .collect();
        if partial.is_empty() {
            break;
        }
    }
    partial.into_iter().map(F::assemble).collect()
}

/// Sorts `items` and drops repeated occurrences.
pub fn collapse<F: Orthogonal>(mut items: Vec<Item<F>>) -> Vec<Item<F>> {
    items.sort();
    items.dedup();
    items
}

/// The orthogonal with set semantics: members are sets of occurrences, so
/// picking the same dual twice yields it once, and equal members coincide.
/// Partial choices are collapsed as they are built, which gives the same
/// set as collapsing at the end.
pub fn orthogonal<F: Orthogonal>(i: &Interpolant<F>) -> Interpolant<F> {
    let mut partial: BTreeSet<Vec<Item<F>>> = BTreeSet::from([Vec::new()]);
    for member in i.iter() {
        let choices: Vec<Item<F>> = F::items(member).iter().map(F::dual).collect();
        let mut next = BTreeSet::new();
        for prefix in &partial {
            for c in &choices {
                let mut grown = prefix.clone();
                if let Err(at) = grown.binary_search(c) {
                    grown.insert(at, c.clone());
                }
                next.insert(grown);
            }
        }
        partial = next;
        if partial.is_empty() {
            break;
        }
    }
    partial.into_iter().map(F::assemble).collect()
}

pub fn orthogonal_tense(i: &Interpolant<TenseFormula>) -> Interpolant<TenseFormula> {
    orthogonal(i)
}

pub fn orthogonal_bi(i: &Interpolant<BiFormula>) -> Interpolant<BiFormula> {
    orthogonal(i)
}
