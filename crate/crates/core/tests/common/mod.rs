//! Seeded random generators shared by the integration suites.

#![allow(dead_code)]

use nested_interp::formula::{BiFormula, Formula, Logic, TenseFormula};
use nested_interp::interpolate::Interpolant;
use nested_interp::path_system::{DiamondKind, PathAxiom, PathAxiomSystem, PropagationGraph};
use nested_interp::proof::{Proof, RuleTag};
use nested_interp::sequent::{FlatSequent, Label, Labelled, RelAtom};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

pub const VARS: [&str; 3] = ["p", "q", "r"];

/// Which modalities a random tense formula may use.
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Modalities {
    FutureOnly,
    Both,
}

/// A random NNF tense formula with at most `size` binary or modal
/// connectives and modal depth at most `depth`.
pub fn tense(rng: &mut Rng8, size: usize, depth: usize, modalities: Modalities) -> TenseFormula {
    if size == 0 {
        let v = *VARS.choose(rng).unwrap();
        return if rng.gen_bool(0.5) {
            TenseFormula::atom(v)
        } else {
            TenseFormula::neg_atom(v)
        };
    }
    let modal = depth > 0 && rng.gen_bool(0.5);
    if modal {
        let inner = tense(rng, size - 1, depth - 1, modalities);
        let pick = if modalities == Modalities::Both {
            rng.gen_range(0..4)
        } else {
            rng.gen_range(0..2)
        };
        match pick {
            0 => TenseFormula::boxed(inner),
            1 => TenseFormula::dia(inner),
            2 => TenseFormula::bbox(inner),
            _ => TenseFormula::bdia(inner),
        }
    } else {
        let split = rng.gen_range(0..size);
        let l = tense(rng, split, depth, modalities);
        let r = tense(rng, size - 1 - split, depth, modalities);
        if rng.gen_bool(0.5) {
            TenseFormula::and(l, r)
        } else {
            TenseFormula::or(l, r)
        }
    }
}

/// A random pair biased towards valid implications: about half are built
/// so that `A -> B` holds propositionally.
pub fn tense_pair(rng: &mut Rng8, modalities: Modalities) -> (TenseFormula, TenseFormula) {
    let size = rng.gen_range(1..=4);
    let core = tense(rng, size, 3, modalities);
    let extra_size = rng.gen_range(0..=2);
    let extra = tense(rng, extra_size, 2, modalities);
    match rng.gen_range(0..5) {
        0 => (core.clone(), TenseFormula::or(core, extra)),
        1 => (TenseFormula::and(core.clone(), extra), core),
        2 => (
            TenseFormula::boxed(core.clone()),
            TenseFormula::boxed(TenseFormula::or(core, extra)),
        ),
        3 => (
            TenseFormula::dia(TenseFormula::and(core.clone(), extra)),
            TenseFormula::dia(core),
        ),
        _ => (core, tense(rng, size, 3, modalities)),
    }
}

/// A random BiInt formula of height at most `depth`.
pub fn bi(rng: &mut Rng8, depth: usize) -> BiFormula {
    if depth == 0 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..10) {
            0 => BiFormula::Top,
            1 => BiFormula::Bot,
            _ => BiFormula::atom(*VARS.choose(rng).unwrap()),
        };
    }
    let l = bi(rng, depth - 1);
    let r = bi(rng, depth - 1);
    match rng.gen_range(0..4) {
        0 => BiFormula::and(l, r),
        1 => BiFormula::or(l, r),
        2 => BiFormula::imp(l, r),
        _ => BiFormula::excl(l, r),
    }
}

/// A random BiInt pair of height at most 3, biased towards valid
/// implications.
pub fn bi_pair(rng: &mut Rng8) -> (BiFormula, BiFormula) {
    let core = bi(rng, 2);
    let extra = bi(rng, 2);
    match rng.gen_range(0..6) {
        0 => (core.clone(), BiFormula::or(core, extra)),
        1 => (BiFormula::and(core.clone(), extra), core),
        2 => (
            BiFormula::and(core.clone(), BiFormula::imp(core, extra.clone())),
            extra,
        ),
        3 => (
            core.clone(),
            BiFormula::or(extra.clone(), BiFormula::excl(core, extra)),
        ),
        4 => (BiFormula::excl(core.clone(), extra.clone()), core),
        _ => (bi(rng, 3), bi(rng, 3)),
    }
}

pub fn label(rng: &mut Rng8, labels: u32) -> Label {
    Label(rng.gen_range(0..labels))
}

fn small_tense(rng: &mut Rng8) -> TenseFormula {
    let size = rng.gen_range(0..=1);
    tense(rng, size, 1, Modalities::Both)
}

fn small_bi(rng: &mut Rng8) -> BiFormula {
    bi(rng, 1)
}

/// A random tense interpolant: up to `members` members of up to `width`
/// occurrences each.
pub fn tense_interpolant(
    rng: &mut Rng8,
    members: usize,
    width: usize,
) -> Interpolant<TenseFormula> {
    (0..rng.gen_range(0..=members))
        .map(|_| {
            let right = (0..rng.gen_range(0..=width))
                .map(|_| Labelled::new(label(rng, 3), small_tense(rng)))
                .collect();
            FlatSequent::right_only(right)
        })
        .collect()
}

/// A random BiInt interpolant with occurrences on both sides.
pub fn bi_interpolant(rng: &mut Rng8, members: usize, width: usize) -> Interpolant<BiFormula> {
    (0..rng.gen_range(0..=members))
        .map(|_| {
            let (mut left, mut right) = (Vec::new(), Vec::new());
            for _ in 0..rng.gen_range(0..=width) {
                let occ = Labelled::new(label(rng, 3), small_bi(rng));
                if rng.gen_bool(0.5) {
                    left.push(occ)
                } else {
                    right.push(occ)
                }
            }
            FlatSequent::new(left, right)
        })
        .collect()
}

pub fn kind(rng: &mut Rng8) -> DiamondKind {
    if rng.gen_bool(0.5) {
        DiamondKind::White
    } else {
        DiamondKind::Black
    }
}

/// Up to `max` random path axioms with prefixes of length 2 or 3.
pub fn axiom_system(rng: &mut Rng8, max: usize) -> PathAxiomSystem {
    let axioms: Vec<PathAxiom> = (0..rng.gen_range(1..=max))
        .map(|_| {
            let prefix = (0..rng.gen_range(2..=3)).map(|_| kind(rng)).collect();
            PathAxiom::new(prefix, kind(rng)).expect("non-empty prefix")
        })
        .collect();
    PathAxiomSystem::new(axioms, rng.gen_bool(0.3))
}

/// A random relational structure on at most `max_nodes` labels.
pub fn graph(rng: &mut Rng8, max_nodes: u32) -> PropagationGraph {
    let n = rng.gen_range(1..=max_nodes);
    let rel: Vec<RelAtom> = (0..rng.gen_range(0..=2 * n))
        .map(|_| RelAtom::new(Label(rng.gen_range(0..n)), Label(rng.gen_range(0..n))))
        .collect();
    PropagationGraph::from_parts((0..n).map(Label), &rel)
}

/// Single-node certificate mutations. Each one breaks a rule schema at the
/// mutated node or at its parent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    ExtraOccurrence,
    DropPremise,
    Retag,
    ForeignPrincipal,
    Relabel,
}

pub const MUTATIONS: [Mutation; 5] = [
    Mutation::ExtraOccurrence,
    Mutation::DropPremise,
    Mutation::Retag,
    Mutation::ForeignPrincipal,
    Mutation::Relabel,
];

fn node_at<F: Formula>(proof: &mut Proof<F>, index: usize) -> &mut Proof<F> {
    if index == 0 {
        return proof;
    }
    let mut rest = index - 1;
    for p in proof.premises.iter_mut() {
        let size = p.size();
        if rest < size {
            return node_at(p, rest);
        }
        rest -= size;
    }
    panic!("node index out of range")
}

fn foreign<F: Formula>() -> F {
    F::parse_canonical("zz").expect("atom parses")
}

/// Applies `m` at preorder node `index`. Returns false when the mutation
/// does not apply there.
pub fn mutate<F: Formula>(proof: &mut Proof<F>, index: usize, m: Mutation, rng: &mut Rng8) -> bool {
    let node = node_at(proof, index);
    match m {
        Mutation::ExtraOccurrence => {
            let label = node
                .conclusion
                .labels()
                .into_iter()
                .next()
                .unwrap_or(Label(0));
            node.conclusion.right.push(Labelled::new(label, foreign()));
            true
        }
        Mutation::DropPremise => node.premises.pop().is_some(),
        Mutation::Retag => {
            let choices: Vec<RuleTag> = RuleTag::ALL
                .into_iter()
                .filter(|&t| t != node.rule && t != RuleTag::Hyp)
                .filter(|&t| core_rule(F::LOGIC, t))
                .collect();
            node.rule = *choices.choose(rng).unwrap();
            true
        }
        Mutation::ForeignPrincipal => {
            if let Some(occ) = node
                .principal
                .right
                .first_mut()
                .or(node.principal.left.first_mut())
            {
                occ.formula = foreign();
                true
            } else {
                false
            }
        }
        Mutation::Relabel => {
            let side = if node.conclusion.right.is_empty() {
                &mut node.conclusion.left
            } else {
                &mut node.conclusion.right
            };
            match side.choose_mut(rng) {
                Some(occ) => {
                    occ.label = Label(999);
                    true
                }
                None => false,
            }
        }
    }
}

fn core_rule(logic: Logic, t: RuleTag) -> bool {
    use RuleTag::*;
    match logic {
        Logic::Kt => matches!(t, Id | Or | And | Dia | Box | BDia | BBox | Top),
        Logic::Bi => matches!(
            t,
            Id | Top | Bot | OrL | OrR | AndL | AndR | MonL | MonR | ImpL | ImpR | ExclL | ExclR
        ),
    }
}
