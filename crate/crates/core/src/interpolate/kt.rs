use crate::formula::TenseFormula as T;
use crate::path_system::DiamondKind;
use crate::proof::{Proof, RuleTag};
use crate::sequent::{FlatSequent, Labelled, Part, RelAtom, Side};

use super::orth::orthogonal;
use super::tagged::{check_premises, malformed, Tagged};
use super::transform::box_transform;
use super::{Interpolant, InterpolateError, SplitSpec};

/// Computes an interpolant for the conclusion of `proof` split by `split`.
pub fn interpolate_kt(
    proof: &Proof<T>,
    split: &SplitSpec,
) -> Result<Interpolant<T>, InterpolateError> {
    let tagged = Tagged::from_split(&proof.conclusion, split)?;
    if !tagged.matches(&proof.conclusion) {
        return Err(malformed(
            proof,
            &[],
            "split does not describe the conclusion",
        ));
    }
    go(proof, &tagged, &mut Vec::new())
}

fn single(x: crate::sequent::Label, f: T) -> Interpolant<T> {
    Interpolant::singleton(FlatSequent::right_only(vec![Labelled::new(x, f)]))
}

/// The occurrence whose partition decides between applying the rule and
/// going through the orthogonal.
fn deciding(node: &Proof<T>) -> Result<Labelled<T>, String> {
    let p = &node.principal;
    match node.rule {
        RuleTag::Id => p
            .right
            .iter()
            .find(|o| matches!(o.formula, T::Atom(_)))
            .cloned()
            .ok_or_else(|| "id without a positive literal".to_string()),
        _ => p
            .right
            .first()
            .cloned()
            .ok_or_else(|| "missing principal".to_string()),
    }
}

fn go(
    node: &Proof<T>,
    tagged: &Tagged<T>,
    position: &mut Vec<usize>,
) -> Result<Interpolant<T>, InterpolateError> {
    let occ = deciding(node).map_err(|r| malformed(node, position, r))?;
    let part = tagged
        .part(Side::Right, &occ)
        .map_err(|r| malformed(node, position, r))?;
    match part {
        Part::Two => apply(node, tagged, &occ, position),
        Part::One => Ok(orthogonal(&apply(node, &tagged.flip(), &occ, position)?)),
    }
}

fn recurse(
    node: &Proof<T>,
    premises: Vec<Tagged<T>>,
    position: &mut Vec<usize>,
) -> Result<Vec<Interpolant<T>>, InterpolateError> {
    check_premises(node, position, &premises)?;
    let mut out = Vec::with_capacity(premises.len());
    for (i, (child, tagged)) in node.premises.iter().zip(&premises).enumerate() {
        position.push(i);
        out.push(go(child, tagged, position)?);
        position.pop();
    }
    Ok(out)
}

/// Applies the interpolation rule for a step whose principal `occ` lies in
/// the second partition.
fn apply(
    node: &Proof<T>,
    tagged: &Tagged<T>,
    occ: &Labelled<T>,
    position: &mut Vec<usize>,
) -> Result<Interpolant<T>, InterpolateError> {
    let here = position.clone();
    let bad = |r: String| malformed(node, &here, r);
    let x = occ.label;
    match (node.rule, &occ.formula) {
        (RuleTag::Id, T::Atom(p)) => {
            let neg = Labelled::new(x, T::NegAtom(p.clone()));
            Ok(match tagged.part(Side::Right, &neg).map_err(bad)? {
                Part::One => single(x, T::atom(p.clone())),
                Part::Two => single(x, T::Top),
            })
        }
        (RuleTag::Top, T::Top) => Ok(single(x, T::Top)),
        (RuleTag::Or, T::Or(a, b)) => {
            let (rest, d) = tagged.without(Side::Right, occ).map_err(bad)?;
            let premise = rest
                .put(Side::Right, Labelled::new(x, (**a).clone()), d)
                .put(Side::Right, Labelled::new(x, (**b).clone()), d);
            Ok(recurse(node, vec![premise], position)?.remove(0))
        }
        (RuleTag::And, T::And(a, b)) => {
            let (rest, d) = tagged.without(Side::Right, occ).map_err(bad)?;
            let premises = vec![
                rest.clone()
                    .put(Side::Right, Labelled::new(x, (**a).clone()), d),
                rest.put(Side::Right, Labelled::new(x, (**b).clone()), d),
            ];
            let mut parts = recurse(node, premises, position)?;
            let second = parts.pop().expect("two premises");
            Ok(parts.pop().expect("two premises").union(second))
        }
        (RuleTag::Dia, T::Dia(a)) | (RuleTag::BDia, T::BDia(a)) => {
            let y = node
                .principal
                .target
                .ok_or_else(|| bad("missing propagation target".into()))?;
            let premise =
                tagged
                    .clone()
                    .put(Side::Right, Labelled::new(y, (**a).clone()), Part::Two);
            Ok(recurse(node, vec![premise], position)?.remove(0))
        }
        (RuleTag::Box, T::Box(a)) | (RuleTag::BBox, T::BBox(a)) => {
            let y = node
                .principal
                .fresh
                .ok_or_else(|| bad("missing fresh label".into()))?;
            if tagged.untagged().labels().contains(&y) {
                return Err(bad(format!("label {y} is not fresh")));
            }
            let (atom, kind) = match node.rule {
                RuleTag::Box => (RelAtom::new(x, y), DiamondKind::White),
                _ => (RelAtom::new(y, x), DiamondKind::Black),
            };
            let (rest, d) = tagged.without(Side::Right, occ).map_err(bad)?;
            let premise = rest
                .put_rel(atom)
                .put(Side::Right, Labelled::new(y, (**a).clone()), d);
            let inner = recurse(node, vec![premise], position)?.remove(0);
            Ok(box_transform(&inner, x, y, kind))
        }
        (rule, _) => Err(bad(format!("{occ} does not match rule {rule}"))),
    }
}
