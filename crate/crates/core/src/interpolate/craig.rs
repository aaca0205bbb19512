use thiserror::Error;

use crate::formula::{BiFormula, Formula, TenseFormula};
use crate::proof::{Principal, Proof, RuleTag};
use crate::prover::{prove_bi, prove_kt, NotProved, Outcome, SearchConfig, SearchError};
use crate::sequent::{Label, Labelled, LabelledSequent, Part, RelAtom};

use super::{formula_of_bi, formula_of_tense, interpolate_bi, interpolate_kt};
use super::{Interpolant, InterpolateError, InterpolateOptions, SplitSpec};

/// An interpolant `c` for `a -> b` together with derivations of `a -> c`
/// and `c -> b`. `c` is the formula reading of `interpolant` after
/// absorption and constant folding, so it is equivalent to the literal
/// reading but usually much smaller.
#[derive(Clone, Debug)]
pub struct Craig<F> {
    pub a: F,
    pub b: F,
    pub interpolant: Interpolant<F>,
    pub c: F,
    /// The split derivation the interpolant was read off.
    pub source: Proof<F>,
    pub proof_ac: Proof<F>,
    pub proof_cb: Proof<F>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CraigError {
    #[error("implication not proved: {0:?}")]
    NotProved(NotProved),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Interpolate(#[from] InterpolateError),
    #[error("re-proof of {which} failed ({outcome:?}) for interpolant {c}")]
    InterpolantReproofFailed {
        which: &'static str,
        c: String,
        outcome: NotProved,
    },
}

/// Search settings for re-proving the two implications through `c`. The
/// interpolant's own boxes may need fresh labels on top of the original
/// budget.
pub fn reproof_config(cfg: &SearchConfig, modal_count: usize) -> SearchConfig {
    SearchConfig {
        depth_bound: cfg.depth_bound + modal_count,
        max_steps: cfg.max_steps.saturating_mul(4),
        ..cfg.clone()
    }
}

fn reprove<F: Formula>(
    which: &'static str,
    c: &F,
    outcome: Result<Outcome<F>, SearchError>,
) -> Result<Proof<F>, CraigError> {
    match outcome? {
        Outcome::Proved(p) => Ok(p),
        Outcome::NotProved(why) => Err(CraigError::InterpolantReproofFailed {
            which,
            c: c.to_string(),
            outcome: why,
        }),
    }
}

/// Interpolates a valid tense implication `a -> b` (both in negation normal
/// form).
pub fn craig_tense(
    a: &TenseFormula,
    b: &TenseFormula,
    cfg: &SearchConfig,
) -> Result<Craig<TenseFormula>, CraigError> {
    let x = Label::ROOT;
    let antecedent = Labelled::new(x, a.negate());
    let goal = LabelledSequent::new(
        Vec::new(),
        Vec::new(),
        vec![antecedent.clone(), Labelled::new(x, b.clone())],
    );
    let source = match prove_kt(&goal, cfg)? {
        Outcome::Proved(p) => p,
        Outcome::NotProved(why) => return Err(CraigError::NotProved(why)),
    };
    // The prover may reorder the root, so the split follows the occurrence.
    let first = source
        .conclusion
        .right
        .iter()
        .position(|o| *o == antecedent);
    let parts = (0..source.conclusion.right.len())
        .map(|i| {
            if Some(i) == first {
                Part::One
            } else {
                Part::Two
            }
        })
        .collect();
    let interpolant = interpolate_kt(&source, &SplitSpec::new(parts))?;
    let c = formula_of_tense(&interpolant.absorbed(), x)?.simplify();
    let re = reproof_config(cfg, c.modal_count());
    let ac = LabelledSequent::goal_right(TenseFormula::or(a.negate(), c.clone()));
    let cb = LabelledSequent::goal_right(TenseFormula::or(c.negate(), b.clone()));
    let proof_ac = reprove("A -> C", &c, prove_kt(&ac, &re))?;
    let proof_cb = reprove("C -> B", &c, prove_kt(&cb, &re))?;
    Ok(Craig {
        a: a.clone(),
        b: b.clone(),
        interpolant,
        c,
        source,
        proof_ac,
        proof_cb,
    })
}

/// Interpolates a valid bi-intuitionistic implication `a -> b`.
pub fn craig_bi(
    a: &BiFormula,
    b: &BiFormula,
    cfg: &SearchConfig,
    options: InterpolateOptions,
) -> Result<Craig<BiFormula>, CraigError> {
    let x = Label::ROOT;
    let goal = LabelledSequent::goal_both(a.clone(), b.clone());
    let source = match prove_bi(&goal, cfg)? {
        Outcome::Proved(p) => p,
        Outcome::NotProved(why) => return Err(CraigError::NotProved(why)),
    };
    let options = InterpolateOptions {
        absorb: true,
        ..options
    };
    let interpolant = interpolate_bi(
        &source,
        &SplitSpec::new(vec![Part::One, Part::Two]),
        options,
    )?;
    let c = formula_of_bi(&interpolant.absorbed(), x)?.simplify();
    let re = reproof_config(cfg, c.modal_count());
    let proof_ac = reprove(
        "A -> C",
        &c,
        prove_bi(&LabelledSequent::goal_both(a.clone(), c.clone()), &re),
    )?;
    let proof_cb = reprove(
        "C -> B",
        &c,
        prove_bi(&LabelledSequent::goal_both(c.clone(), b.clone()), &re),
    )?;
    let proof_ac = under_imp_right(a, &c, proof_ac);
    let proof_cb = under_imp_right(&c, b, proof_cb);
    Ok(Craig {
        a: a.clone(),
        b: b.clone(),
        interpolant,
        c,
        source,
        proof_ac,
        proof_cb,
    })
}

/// Turns a derivation of `x: a |- x: c` into one of `|- x: a -> c`.
///
/// Searching the one-sided goal directly is much slower: monotonicity
/// copies every right formula at the fresh world back to the root.
fn under_imp_right(a: &BiFormula, c: &BiFormula, proof: Proof<BiFormula>) -> Proof<BiFormula> {
    let x = Label::ROOT;
    let y = proof
        .nodes()
        .iter()
        .filter_map(|n| n.conclusion.max_label())
        .max()
        .unwrap_or(x)
        .next();
    let edge = RelAtom::new(x, y);
    Proof {
        conclusion: LabelledSequent::goal_right(BiFormula::imp(a.clone(), c.clone())),
        rule: RuleTag::ImpR,
        principal: Principal {
            right: vec![Labelled::new(x, BiFormula::imp(a.clone(), c.clone()))],
            rel: vec![edge],
            fresh: Some(y),
            ..Default::default()
        },
        premises: vec![relocate(proof, x, y, edge)],
    }
}

/// Renames `x` to `y` throughout and adds `edge` to every relational
/// context.
fn relocate(proof: Proof<BiFormula>, x: Label, y: Label, edge: RelAtom) -> Proof<BiFormula> {
    let sub = |l: Label| if l == x { y } else { l };
    let occs = |v: Vec<Labelled<BiFormula>>| {
        v.into_iter()
            .map(|o| Labelled::new(sub(o.label), o.formula))
            .collect()
    };
    let atoms = |v: Vec<RelAtom>| {
        v.into_iter()
            .map(|r| RelAtom::new(sub(r.from), sub(r.to)))
            .collect::<Vec<_>>()
    };
    let mut conclusion = proof.conclusion.substitute_label(y, x);
    conclusion.rel.insert(0, edge);
    let pr = proof.principal;
    Proof {
        conclusion,
        rule: proof.rule,
        principal: Principal {
            left: occs(pr.left),
            right: occs(pr.right),
            rel: atoms(pr.rel),
            target: pr.target.map(sub),
            fresh: pr.fresh.map(sub),
            ..pr
        },
        premises: proof
            .premises
            .into_iter()
            .map(|p| relocate(p, x, y, edge))
            .collect(),
    }
}
