use std::collections::HashSet;

use super::{assemble, Chain, Outcome, SearchConfig, SearchError, Session, Stuck};
use crate::formula::BiFormula as B;
use crate::proof::{Principal, Proof, RuleTag};
use crate::sequent::{Label, Labelled, LabelledSequent, RelAtom, Side};

type Occ = Labelled<B>;

/// Searches for a derivation of a two-sided bi-intuitionistic sequent.
pub fn prove_bi(goal: &LabelledSequent<B>, cfg: &SearchConfig) -> Result<Outcome<B>, SearchError> {
    if cfg.depth_bound == 0 {
        return Err(SearchError::ZeroBound);
    }
    let mut session = Session::new(cfg, goal);
    let branch = Branch {
        rel: goal.rel.clone(),
        left: goal.left.clone(),
        right: goal.right.clone(),
        monotone: HashSet::new(),
        split: HashSet::new(),
        expanded: HashSet::new(),
        fresh_used: 0,
    };
    let result = session.run_bi(branch);
    Ok(session.finish(result))
}

#[derive(Clone)]
struct Branch {
    rel: Vec<RelAtom>,
    left: Vec<Occ>,
    right: Vec<Occ>,
    /// (from, formula, to, side) already copied along a relational atom.
    monotone: HashSet<(Label, B, Label, Side)>,
    /// (label, formula, side) already used by the principal-keeping
    /// branching rules.
    split: HashSet<(Label, B, Side)>,
    /// (label, formula, side) already expanded with a fresh label.
    expanded: HashSet<(Label, B, Side)>,
    fresh_used: usize,
}

impl Branch {
    fn sequent(&self) -> LabelledSequent<B> {
        LabelledSequent::new(self.rel.clone(), self.left.clone(), self.right.clone())
    }

    fn side(&self, side: Side) -> &Vec<Occ> {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    fn side_mut(&mut self, side: Side) -> &mut Vec<Occ> {
        match side {
            Side::Left => &mut self.left,
            Side::Right => &mut self.right,
        }
    }

    fn closing_rule(&self) -> Option<(RuleTag, Principal<B>)> {
        for o in &self.left {
            match &o.formula {
                B::Atom(_) if self.right.contains(o) => {
                    let pr = Principal {
                        left: vec![o.clone()],
                        right: vec![o.clone()],
                        ..Default::default()
                    };
                    return Some((RuleTag::Id, pr));
                }
                B::Bot => return Some((RuleTag::Bot, Principal::left(o.clone()))),
                _ => {}
            }
        }
        let top = self.right.iter().find(|o| o.formula == B::Top)?;
        Some((RuleTag::Top, Principal::right(top.clone())))
    }

    /// Copy of the branch with the occurrence at `index` on `side` removed
    /// and `added` appended.
    fn rewrite(&self, side: Side, index: Option<usize>, added: &[(Side, Occ)]) -> Branch {
        let mut next = self.clone();
        if let Some(i) = index {
            next.side_mut(side).remove(i);
        }
        for (s, o) in added {
            next.side_mut(*s).push(o.clone());
        }
        next
    }

    fn first(&self, side: Side, pred: impl Fn(&B) -> bool) -> Option<usize> {
        self.side(side).iter().position(|o| pred(&o.formula))
    }

    fn monotone_step(
        &self,
    ) -> Option<(RuleTag, Principal<B>, (Side, Occ), (Label, B, Label, Side))> {
        for &atom in &self.rel {
            let (x, y) = (atom.from, atom.to);
            for o in self.left.iter().filter(|o| o.label == x) {
                let added = Labelled::new(y, o.formula.clone());
                let key = (x, o.formula.clone(), y, Side::Left);
                if !self.monotone.contains(&key) && !self.left.contains(&added) {
                    let pr = Principal {
                        left: vec![o.clone()],
                        rel: vec![atom],
                        target: Some(y),
                        ..Default::default()
                    };
                    return Some((RuleTag::MonL, pr, (Side::Left, added), key));
                }
            }
            for o in self.right.iter().filter(|o| o.label == y) {
                let added = Labelled::new(x, o.formula.clone());
                let key = (y, o.formula.clone(), x, Side::Right);
                if !self.monotone.contains(&key) && !self.right.contains(&added) {
                    let pr = Principal {
                        right: vec![o.clone()],
                        rel: vec![atom],
                        target: Some(x),
                        ..Default::default()
                    };
                    return Some((RuleTag::MonR, pr, (Side::Right, added), key));
                }
            }
        }
        None
    }
}

fn parts(f: &B) -> (B, B) {
    match f {
        B::And(l, r) | B::Or(l, r) | B::Imp(l, r) | B::Excl(l, r) => ((**l).clone(), (**r).clone()),
        _ => unreachable!("binary connective expected"),
    }
}

impl Session<'_> {
    fn run_bi(&mut self, mut b: Branch) -> Result<Proof<B>, Stuck> {
        let mut chain: Chain<B> = Vec::new();
        let top = loop {
            self.tick()?;
            let conclusion = b.sequent();

            if let Some((rule, pr)) = b.closing_rule() {
                break Proof::leaf(conclusion, rule, pr);
            }

            // Consuming non-branching rules.
            let linear = [
                (
                    Side::Left,
                    RuleTag::AndL,
                    b.first(Side::Left, |f| matches!(f, B::And(..))),
                ),
                (
                    Side::Right,
                    RuleTag::OrR,
                    b.first(Side::Right, |f| matches!(f, B::Or(..))),
                ),
            ];
            if let Some(&(side, rule, Some(i))) = linear.iter().find(|(_, _, i)| i.is_some()) {
                let occ = b.side(side)[i].clone();
                let (l, r) = parts(&occ.formula);
                let x = occ.label;
                b = b.rewrite(
                    side,
                    Some(i),
                    &[(side, Labelled::new(x, l)), (side, Labelled::new(x, r))],
                );
                let pr = match side {
                    Side::Left => Principal::left(occ),
                    Side::Right => Principal::right(occ),
                };
                chain.push((conclusion, rule, pr));
                continue;
            }

            if let Some((rule, pr, (side, added), key)) = b.monotone_step() {
                b.monotone.insert(key);
                b.side_mut(side).push(added);
                chain.push((conclusion, rule, pr));
                continue;
            }

            // Consuming branching rules.
            let branching = [
                (
                    Side::Left,
                    RuleTag::OrL,
                    b.first(Side::Left, |f| matches!(f, B::Or(..))),
                ),
                (
                    Side::Right,
                    RuleTag::AndR,
                    b.first(Side::Right, |f| matches!(f, B::And(..))),
                ),
            ];
            if let Some(&(side, rule, Some(i))) = branching.iter().find(|(_, _, i)| i.is_some()) {
                let occ = b.side(side)[i].clone();
                let (l, r) = parts(&occ.formula);
                let x = occ.label;
                let p1 = self.run_bi(b.rewrite(side, Some(i), &[(side, Labelled::new(x, l))]))?;
                let p2 = self.run_bi(b.rewrite(side, Some(i), &[(side, Labelled::new(x, r))]))?;
                let pr = match side {
                    Side::Left => Principal::left(occ),
                    Side::Right => Principal::right(occ),
                };
                break Proof {
                    conclusion,
                    rule,
                    principal: pr,
                    premises: vec![p1, p2],
                };
            }

            // Principal-keeping branching rules, once per occurrence class.
            let keeping = b
                .left
                .iter()
                .enumerate()
                .filter(|(_, o)| matches!(o.formula, B::Imp(..)))
                .map(|(i, o)| (Side::Left, i, o))
                .chain(
                    b.right
                        .iter()
                        .enumerate()
                        .filter(|(_, o)| matches!(o.formula, B::Excl(..)))
                        .map(|(i, o)| (Side::Right, i, o)),
                )
                .find(|(side, _, o)| !b.split.contains(&(o.label, o.formula.clone(), *side)))
                .map(|(side, i, o)| (side, i, o.clone()));
            if let Some((side, i, occ)) = keeping {
                let (a, c) = parts(&occ.formula);
                let x = occ.label;
                b.split.insert((x, occ.formula.clone(), side));
                let (rule, pr, first, second) = match side {
                    // ImpL: keep x:A->C and add x:A right; replace by x:C left.
                    Side::Left => (
                        RuleTag::ImpL,
                        Principal::left(occ),
                        b.rewrite(side, None, &[(Side::Right, Labelled::new(x, a))]),
                        b.rewrite(side, Some(i), &[(Side::Left, Labelled::new(x, c))]),
                    ),
                    // ExclR: replace by x:A right; keep x:A-<C and add x:C left.
                    Side::Right => (
                        RuleTag::ExclR,
                        Principal::right(occ),
                        b.rewrite(side, Some(i), &[(Side::Right, Labelled::new(x, a))]),
                        b.rewrite(side, None, &[(Side::Left, Labelled::new(x, c))]),
                    ),
                };
                let p1 = self.run_bi(first)?;
                let p2 = self.run_bi(second)?;
                break Proof {
                    conclusion,
                    rule,
                    principal: pr,
                    premises: vec![p1, p2],
                };
            }

            // Fresh-label rules, smallest label first.
            let mut fresh_candidates: Vec<(Label, Side, usize)> = b
                .right
                .iter()
                .enumerate()
                .filter(|(_, o)| matches!(o.formula, B::Imp(..)))
                .map(|(i, o)| (o.label, Side::Right, i))
                .chain(
                    b.left
                        .iter()
                        .enumerate()
                        .filter(|(_, o)| matches!(o.formula, B::Excl(..)))
                        .map(|(i, o)| (o.label, Side::Left, i)),
                )
                .filter(|&(l, s, i)| !b.expanded.contains(&(l, b.side(s)[i].formula.clone(), s)))
                .collect();
            fresh_candidates.sort_by_key(|&(l, s, i)| (l, i, s));
            if let Some(&(x, side, i)) = fresh_candidates.first() {
                let Some(y) = self.fresh(&mut b.fresh_used) else {
                    return Err(Stuck);
                };
                let occ = b.side(side)[i].clone();
                let (a, c) = parts(&occ.formula);
                b.expanded.insert((x, occ.formula.clone(), side));
                let (rule, atom, pr) = match side {
                    Side::Right => (RuleTag::ImpR, RelAtom::new(x, y), Principal::right(occ)),
                    Side::Left => (RuleTag::ExclL, RelAtom::new(y, x), Principal::left(occ)),
                };
                b = b.rewrite(
                    side,
                    Some(i),
                    &[
                        (Side::Left, Labelled::new(y, a)),
                        (Side::Right, Labelled::new(y, c)),
                    ],
                );
                b.rel.push(atom);
                let pr = Principal {
                    fresh: Some(y),
                    rel: vec![atom],
                    ..pr
                };
                chain.push((conclusion, rule, pr));
                continue;
            }

            return Err(Stuck);
        };
        Ok(assemble(chain, top))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_bi;
    use crate::prover::NotProved;

    fn prove_right(text: &str, bound: usize) -> Outcome<B> {
        let g = LabelledSequent::goal_right(parse_bi(text).unwrap());
        prove_bi(&g, &SearchConfig::with_bound(bound)).unwrap()
    }

    #[test]
    fn identity_sequent() {
        let g = LabelledSequent::goal_both(B::atom("p"), B::atom("p"));
        let Outcome::Proved(p) = prove_bi(&g, &SearchConfig::default()).unwrap() else {
            panic!()
        };
        assert_eq!(p.rule_sequence(), vec![RuleTag::Id]);
    }

    #[test]
    fn projection() {
        let Outcome::Proved(p) = prove_right("p & q -> p", 12) else {
            panic!()
        };
        assert_eq!(
            p.rule_sequence(),
            vec![RuleTag::ImpR, RuleTag::AndL, RuleTag::Id]
        );
    }

    #[test]
    fn classical_principles_fail() {
        assert!(matches!(
            prove_right("p | (p -> bot)", 12),
            Outcome::NotProved(_)
        ));
        assert!(matches!(
            prove_right("((p -> q) -> p) -> p", 12),
            Outcome::NotProved(_)
        ));
        assert_eq!(
            prove_right("p | (p -> bot)", 12),
            Outcome::NotProved(NotProved::Refuted)
        );
    }

    #[test]
    fn intuitionistic_validities() {
        for f in [
            "p -> p",
            "p -> (q -> p)",
            "(p -> q -> r) -> (p -> q) -> p -> r",
            "(p | q) -> (q | p)",
            "p -> ((p -> bot) -> bot)",
            "(((p -> bot) -> bot) -> bot) -> p -> bot",
            "top",
            "bot -> p",
            "(p -< q) -> p",
            "p -> (q | (p -< q))",
            "((p -< q) -< r) -> (p -< (q | r))",
        ] {
            assert!(prove_right(f, 12).is_proved(), "{f}");
        }
    }

    #[test]
    fn co_excluded_middle_and_left_rules() {
        // Excluded middle holds for the co-negation `top -< p`.
        assert!(prove_right("p | (top -< p)", 12).is_proved());
        let g =
            LabelledSequent::goal_both(B::and(B::atom("p"), B::excl(B::Top, B::atom("p"))), B::Bot);
        assert!(!prove_bi(&g, &SearchConfig::default()).unwrap().is_proved());
        let g = LabelledSequent::goal_both(
            B::atom("p"),
            B::or(B::atom("q"), B::excl(B::atom("p"), B::atom("q"))),
        );
        assert!(prove_bi(&g, &SearchConfig::default()).unwrap().is_proved());
    }
}
