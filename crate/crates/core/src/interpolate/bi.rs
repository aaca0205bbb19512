use crate::formula::BiFormula as B;
use crate::proof::{Proof, RuleTag};
use crate::sequent::{FlatSequent, Label, Labelled, Part, RelAtom, Side};

use super::orth::orthogonal;
use super::tagged::{check_premises, malformed, Tagged};
use super::transform::{excl_transform, imp_transform};
use super::{Interpolant, InterpolateError, InterpolateOptions, SplitSpec};

/// Computes an interpolant for the conclusion of `proof` split by `split`.
pub fn interpolate_bi(
    proof: &Proof<B>,
    split: &SplitSpec,
    options: InterpolateOptions,
) -> Result<Interpolant<B>, InterpolateError> {
    let tagged = Tagged::from_split(&proof.conclusion, split)?;
    go(proof, &tagged, options, &mut Vec::new())
}

fn single_right(x: Label, f: B) -> Interpolant<B> {
    Interpolant::singleton(FlatSequent::new(Vec::new(), vec![Labelled::new(x, f)]))
}

/// The occurrence whose partition decides between applying the rule and
/// going through the orthogonal, with its side.
fn deciding(node: &Proof<B>) -> Result<(Side, Labelled<B>), String> {
    let p = &node.principal;
    let right = p.right.first().cloned().map(|o| (Side::Right, o));
    let left = p.left.first().cloned().map(|o| (Side::Left, o));
    match node.rule {
        RuleTag::Id => right,
        _ => right.or(left),
    }
    .ok_or_else(|| "missing principal".to_string())
}

fn go(
    node: &Proof<B>,
    tagged: &Tagged<B>,
    options: InterpolateOptions,
    position: &mut Vec<usize>,
) -> Result<Interpolant<B>, InterpolateError> {
    let (side, occ) = deciding(node).map_err(|r| malformed(node, position, r))?;
    let part = tagged
        .part(side, &occ)
        .map_err(|r| malformed(node, position, r))?;
    let reduce = |i: Interpolant<B>| if options.absorb { i.absorbed() } else { i };
    Ok(match part {
        Part::Two => reduce(apply(node, tagged, side, &occ, options, position)?),
        Part::One => reduce(orthogonal(&reduce(apply(
            node,
            &tagged.flip(),
            side,
            &occ,
            options,
            position,
        )?))),
    })
}

fn recurse(
    node: &Proof<B>,
    premises: Vec<Tagged<B>>,
    options: InterpolateOptions,
    position: &mut Vec<usize>,
) -> Result<Interpolant<B>, InterpolateError> {
    check_premises(node, position, &premises)?;
    let mut out = Interpolant::empty();
    for (i, (child, tagged)) in node.premises.iter().zip(&premises).enumerate() {
        position.push(i);
        out = out.union(go(child, tagged, options, position)?);
        position.pop();
    }
    Ok(out)
}

/// Applies the interpolation rule for a step whose deciding occurrence
/// lies in the second partition. Branching rules union their premises'
/// interpolants.
fn apply(
    node: &Proof<B>,
    tagged: &Tagged<B>,
    side: Side,
    occ: &Labelled<B>,
    options: InterpolateOptions,
    position: &mut Vec<usize>,
) -> Result<Interpolant<B>, InterpolateError> {
    let here = position.clone();
    let bad = |r: String| malformed(node, &here, r);
    let x = occ.label;
    let at = |l: Label, f: &B| Labelled::new(l, f.clone());
    let two = Part::Two;
    let premises = match (node.rule, side, &occ.formula) {
        (RuleTag::Id, Side::Right, B::Atom(p)) => {
            let left = node
                .principal
                .left
                .first()
                .ok_or_else(|| bad("id without a left occurrence".into()))?;
            if left != occ {
                return Err(bad(format!("{left} and {occ} differ")));
            }
            return Ok(match tagged.part(Side::Left, left).map_err(bad)? {
                Part::One => single_right(x, B::atom(p.clone())),
                Part::Two => single_right(x, B::Top),
            });
        }
        (RuleTag::Top, Side::Right, B::Top) | (RuleTag::Bot, Side::Left, B::Bot) => {
            return Ok(single_right(x, B::Top))
        }
        (RuleTag::AndL, Side::Left, B::And(a, b)) => {
            let (rest, _) = tagged.without(side, occ).map_err(bad)?;
            vec![rest
                .put(Side::Left, at(x, a), two)
                .put(Side::Left, at(x, b), two)]
        }
        (RuleTag::OrR, Side::Right, B::Or(a, b)) => {
            let (rest, _) = tagged.without(side, occ).map_err(bad)?;
            vec![rest
                .put(Side::Right, at(x, a), two)
                .put(Side::Right, at(x, b), two)]
        }
        (RuleTag::OrL, Side::Left, B::Or(a, b)) => {
            let (rest, _) = tagged.without(side, occ).map_err(bad)?;
            vec![
                rest.clone().put(Side::Left, at(x, a), two),
                rest.put(Side::Left, at(x, b), two),
            ]
        }
        (RuleTag::AndR, Side::Right, B::And(a, b)) => {
            let (rest, _) = tagged.without(side, occ).map_err(bad)?;
            vec![
                rest.clone().put(Side::Right, at(x, a), two),
                rest.put(Side::Right, at(x, b), two),
            ]
        }
        (RuleTag::MonL, Side::Left, f) => {
            let y = node
                .principal
                .target
                .ok_or_else(|| bad("missing target".into()))?;
            vec![tagged.clone().put(Side::Left, at(y, f), two)]
        }
        (RuleTag::MonR, Side::Right, f) => {
            let y = node
                .principal
                .target
                .ok_or_else(|| bad("missing target".into()))?;
            vec![tagged.clone().put(Side::Right, at(y, f), two)]
        }
        (RuleTag::ImpL, Side::Left, B::Imp(a, b)) => {
            let (rest, _) = tagged.without(side, occ).map_err(bad)?;
            vec![
                tagged.clone().put(Side::Right, at(x, a), two),
                rest.put(Side::Left, at(x, b), two),
            ]
        }
        (RuleTag::ExclR, Side::Right, B::Excl(a, b)) => {
            let (rest, _) = tagged.without(side, occ).map_err(bad)?;
            let kept = if options.exclr_principal_part1 {
                Part::One
            } else {
                two
            };
            let second =
                rest.clone()
                    .put(Side::Right, occ.clone(), kept)
                    .put(Side::Left, at(x, b), two);
            vec![rest.put(Side::Right, at(x, a), two), second]
        }
        (RuleTag::ImpR, Side::Right, B::Imp(a, b))
        | (RuleTag::ExclL, Side::Left, B::Excl(a, b)) => {
            let y = node
                .principal
                .fresh
                .ok_or_else(|| bad("missing fresh label".into()))?;
            if tagged.untagged().labels().contains(&y) {
                return Err(bad(format!("label {y} is not fresh")));
            }
            let atom = if node.rule == RuleTag::ImpR {
                RelAtom::new(x, y)
            } else {
                RelAtom::new(y, x)
            };
            let (rest, _) = tagged.without(side, occ).map_err(bad)?;
            let premise =
                rest.put_rel(atom)
                    .put(Side::Left, at(y, a), two)
                    .put(Side::Right, at(y, b), two);
            let inner = recurse(node, vec![premise], options, position)?;
            return Ok(if node.rule == RuleTag::ImpR {
                imp_transform(&inner, x, y)
            } else {
                excl_transform(&inner, x, y)
            });
        }
        (rule, _, _) => return Err(bad(format!("{occ} does not match rule {rule}"))),
    };
    recurse(node, premises, options, position)
}
