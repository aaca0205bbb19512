use crate::formula::Formula;
use crate::proof::Proof;
use crate::sequent::{Labelled, LabelledSequent, Part, RelAtom, Side};

use super::{InterpolateError, SplitSpec};

/// A sequent whose occurrences each carry a partition.
#[derive(Clone, Debug)]
pub(crate) struct Tagged<F> {
    pub rel: Vec<RelAtom>,
    pub left: Vec<(Labelled<F>, Part)>,
    pub right: Vec<(Labelled<F>, Part)>,
}

impl<F: Formula> Tagged<F> {
    pub fn from_split(
        seq: &LabelledSequent<F>,
        split: &SplitSpec,
    ) -> Result<Self, InterpolateError> {
        let expected = seq.left.len() + seq.right.len();
        if split.parts().len() != expected {
            return Err(InterpolateError::SplitMismatch {
                expected,
                found: split.parts().len(),
            });
        }
        let (lp, rp) = split.parts().split_at(seq.left.len());
        Ok(Tagged {
            rel: seq.rel.clone(),
            left: seq.left.iter().cloned().zip(lp.iter().copied()).collect(),
            right: seq.right.iter().cloned().zip(rp.iter().copied()).collect(),
        })
    }

    fn side_mut(&mut self, side: Side) -> &mut Vec<(Labelled<F>, Part)> {
        match side {
            Side::Left => &mut self.left,
            Side::Right => &mut self.right,
        }
    }

    pub fn flip(&self) -> Self {
        let flip =
            |v: &[(Labelled<F>, Part)]| v.iter().map(|(o, p)| (o.clone(), p.flip())).collect();
        Tagged {
            rel: self.rel.clone(),
            left: flip(&self.left),
            right: flip(&self.right),
        }
    }

    /// Partition of the first occurrence of `occ` on `side`.
    pub fn part(&self, side: Side, occ: &Labelled<F>) -> Result<Part, String> {
        let v = match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        };
        v.iter()
            .find(|(o, _)| o == occ)
            .map(|(_, p)| *p)
            .ok_or_else(|| format!("{occ} not in conclusion"))
    }

    /// Removes the first occurrence of `occ`, returning its partition.
    pub fn take(&mut self, side: Side, occ: &Labelled<F>) -> Result<Part, String> {
        let v = self.side_mut(side);
        let i = v
            .iter()
            .position(|(o, _)| o == occ)
            .ok_or_else(|| format!("{occ} not in conclusion"))?;
        Ok(v.remove(i).1)
    }

    pub fn put(mut self, side: Side, occ: Labelled<F>, part: Part) -> Self {
        self.side_mut(side).push((occ, part));
        self
    }

    pub fn put_rel(mut self, r: RelAtom) -> Self {
        self.rel.push(r);
        self
    }

    pub fn without(&self, side: Side, occ: &Labelled<F>) -> Result<(Self, Part), String> {
        let mut out = self.clone();
        let part = out.take(side, occ)?;
        Ok((out, part))
    }

    pub fn untagged(&self) -> LabelledSequent<F> {
        LabelledSequent::new(
            self.rel.clone(),
            self.left.iter().map(|(o, _)| o.clone()).collect(),
            self.right.iter().map(|(o, _)| o.clone()).collect(),
        )
    }

    pub fn matches(&self, seq: &LabelledSequent<F>) -> bool {
        self.untagged().same_multisets(seq)
    }
}

pub(crate) fn malformed<F: Formula>(
    node: &Proof<F>,
    position: &[usize],
    reason: impl Into<String>,
) -> InterpolateError {
    InterpolateError::MalformedProof {
        rule: node.rule.name().to_string(),
        position: position.to_vec(),
        reason: reason.into(),
    }
}

/// Checks the constructed premise sequents against the ones in the proof.
pub(crate) fn check_premises<F: Formula>(
    node: &Proof<F>,
    position: &[usize],
    premises: &[Tagged<F>],
) -> Result<(), InterpolateError> {
    if node.premises.len() != premises.len() {
        return Err(malformed(
            node,
            position,
            format!(
                "expected {} premises, found {}",
                premises.len(),
                node.premises.len()
            ),
        ));
    }
    for (i, (want, got)) in premises.iter().zip(&node.premises).enumerate() {
        if !want.matches(&got.conclusion) {
            return Err(malformed(
                node,
                position,
                format!("premise {i} does not match the rule"),
            ));
        }
    }
    Ok(())
}
