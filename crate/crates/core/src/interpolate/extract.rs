use crate::formula::{BiFormula, Formula, TenseFormula};
use crate::sequent::{Label, Labelled};

use super::{Interpolant, InterpolateError};

fn single_label<F: Formula>(i: &Interpolant<F>, x: Label) -> Result<(), InterpolateError> {
    if i.labels().iter().all(|&l| l == x) {
        Ok(())
    } else {
        Err(InterpolateError::MixedLabels { expected: x })
    }
}

fn formulas<F: Clone>(side: &[Labelled<F>]) -> Vec<F> {
    side.iter().map(|o| o.formula.clone()).collect()
}

/// Conjunction over members of the disjunction of each member.
pub fn formula_of_tense(
    i: &Interpolant<TenseFormula>,
    x: Label,
) -> Result<TenseFormula, InterpolateError> {
    single_label(i, x)?;
    Ok(TenseFormula::conj(
        i.iter()
            .map(|m| TenseFormula::disj(formulas(m.right())))
            .collect::<Vec<_>>(),
    ))
}

/// Conjunction over members `C |- D` of `/\C -> \/D`.
pub fn formula_of_bi(i: &Interpolant<BiFormula>, x: Label) -> Result<BiFormula, InterpolateError> {
    single_label(i, x)?;
    Ok(BiFormula::conj(
        i.iter()
            .map(|m| {
                BiFormula::imp(
                    BiFormula::conj(formulas(m.left())),
                    BiFormula::disj(formulas(m.right())),
                )
            })
            .collect::<Vec<_>>(),
    ))
}
