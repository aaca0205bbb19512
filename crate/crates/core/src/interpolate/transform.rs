use crate::formula::{BiFormula, TenseFormula};
use crate::path_system::DiamondKind;
use crate::sequent::{FlatSequent, Label, Labelled};

use super::Interpolant;

type Split<F> = (Vec<F>, Vec<F>, FlatSequent<F>);

/// Separates the `y`-labelled formulas of a member, left and right, from
/// the rest.
fn at_label<F: crate::formula::Formula>(member: &FlatSequent<F>, y: Label) -> Split<F> {
    let pick = |side: &[Labelled<F>]| {
        side.iter()
            .filter(|o| o.label == y)
            .map(|o| o.formula.clone())
            .collect()
    };
    (
        pick(member.left()),
        pick(member.right()),
        member.without_label(y),
    )
}

/// Folds the `y`-formulas of every member into `x: [](...)` (white) or
/// `x: [b](...)` (black). A member without `y`-formulas gains a box of
/// `bot`.
pub fn box_transform(
    i: &Interpolant<TenseFormula>,
    x: Label,
    y: Label,
    kind: DiamondKind,
) -> Interpolant<TenseFormula> {
    i.iter()
        .map(|m| {
            let (_, ys, rest) = at_label(m, y);
            let body = TenseFormula::disj(ys);
            let boxed = match kind {
                DiamondKind::White => TenseFormula::boxed(body),
                DiamondKind::Black => TenseFormula::bbox(body),
            };
            rest.with_right(Labelled::new(x, boxed))
        })
        .collect()
}

/// Replaces each member's `y`-formulas `C |- D` by `x: /\C -> \/D` on the
/// right.
pub fn imp_transform(i: &Interpolant<BiFormula>, x: Label, y: Label) -> Interpolant<BiFormula> {
    i.iter()
        .map(|m| {
            let (cs, ds, rest) = at_label(m, y);
            rest.with_right(Labelled::new(
                x,
                BiFormula::imp(BiFormula::conj(cs), BiFormula::disj(ds)),
            ))
        })
        .collect()
}

/// Replaces each member's `y`-formulas `C |- D` by `x: /\C -< \/D` on the
/// left.
pub fn excl_transform(i: &Interpolant<BiFormula>, x: Label, y: Label) -> Interpolant<BiFormula> {
    i.iter()
        .map(|m| {
            let (cs, ds, rest) = at_label(m, y);
            rest.with_left(Labelled::new(
                x,
                BiFormula::excl(BiFormula::conj(cs), BiFormula::disj(ds)),
            ))
        })
        .collect()
}
