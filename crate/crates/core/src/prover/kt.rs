use std::collections::HashSet;

use super::{assemble, Chain, Outcome, SearchConfig, SearchError, Session, Stuck};
use crate::formula::TenseFormula as T;
use crate::path_system::{DiamondKind, PropagationGraph, Reachability};
use crate::proof::{Principal, Proof, RuleTag};
use crate::sequent::{Label, Labelled, LabelledSequent, RelAtom};

type Occ = Labelled<T>;

/// Searches for a derivation of a one-sided tense sequent.
pub fn prove_kt(goal: &LabelledSequent<T>, cfg: &SearchConfig) -> Result<Outcome<T>, SearchError> {
    if !goal.left.is_empty() {
        return Err(SearchError::NotOneSided);
    }
    if cfg.depth_bound == 0 {
        return Err(SearchError::ZeroBound);
    }
    let mut session = Session::new(cfg, goal);
    let branch = Branch {
        rel: goal.rel.clone(),
        right: goal.right.clone(),
        propagated: HashSet::new(),
        expanded: HashSet::new(),
        fresh_used: 0,
    };
    let result = session.run_kt(branch);
    Ok(session.finish(result))
}

#[derive(Clone)]
struct Branch {
    rel: Vec<RelAtom>,
    right: Vec<Occ>,
    /// (source label, diamond formula, target) already propagated.
    propagated: HashSet<(Label, T, Label)>,
    /// (label, box formula) already expanded.
    expanded: HashSet<(Label, T)>,
    fresh_used: usize,
}

impl Branch {
    fn sequent(&self) -> LabelledSequent<T> {
        LabelledSequent::new(self.rel.clone(), Vec::new(), self.right.clone())
    }

    fn has(&self, occ: &Occ) -> bool {
        self.right.contains(occ)
    }

    fn find_id(&self) -> Option<Principal<T>> {
        self.right.iter().find_map(|o| match &o.formula {
            T::NegAtom(p) => {
                let pos = Labelled::new(o.label, T::Atom(p.clone()));
                self.has(&pos).then(|| Principal {
                    right: vec![o.clone(), pos],
                    ..Default::default()
                })
            }
            _ => None,
        })
    }

    fn replace(&self, index: usize, with: &[Occ]) -> Vec<Occ> {
        let mut right = self.right.clone();
        right.remove(index);
        right.extend_from_slice(with);
        right
    }
}

fn diamond_kind(f: &T) -> Option<(DiamondKind, &T)> {
    match f {
        T::Dia(a) => Some((DiamondKind::White, a)),
        T::BDia(a) => Some((DiamondKind::Black, a)),
        _ => None,
    }
}

impl Session<'_> {
    fn run_kt(&mut self, mut b: Branch) -> Result<Proof<T>, Stuck> {
        let mut chain: Chain<T> = Vec::new();
        let mut reach: Option<Reachability> = None;
        let top = 'search: loop {
            self.tick()?;
            let conclusion = b.sequent();

            if let Some(pr) = b.find_id() {
                break Proof::leaf(conclusion, RuleTag::Id, pr);
            }
            if let Some(o) = b.right.iter().find(|o| o.formula == T::Top) {
                break Proof::leaf(
                    conclusion.clone(),
                    RuleTag::Top,
                    Principal::right(o.clone()),
                );
            }

            if let Some(i) = b.right.iter().position(|o| matches!(o.formula, T::Or(..))) {
                let occ = b.right[i].clone();
                let T::Or(l, r) = &occ.formula else {
                    unreachable!()
                };
                let added = [
                    Labelled::new(occ.label, (**l).clone()),
                    Labelled::new(occ.label, (**r).clone()),
                ];
                b.right = b.replace(i, &added);
                chain.push((conclusion, RuleTag::Or, Principal::right(occ)));
                continue;
            }

            if let Some(i) = b.right.iter().position(|o| matches!(o.formula, T::And(..))) {
                let occ = b.right[i].clone();
                let T::And(l, r) = &occ.formula else {
                    unreachable!()
                };
                let mut first = b.clone();
                first.right = b.replace(i, &[Labelled::new(occ.label, (**l).clone())]);
                let p1 = self.run_kt(first)?;
                let mut second = b;
                second.right = second.replace(i, &[Labelled::new(occ.label, (**r).clone())]);
                let p2 = self.run_kt(second)?;
                break Proof {
                    conclusion,
                    rule: RuleTag::And,
                    principal: Principal::right(occ),
                    premises: vec![p1, p2],
                };
            }

            let r = reach.get_or_insert_with(|| {
                Reachability::compute(&PropagationGraph::build(&conclusion), &self.cfg.system)
            });
            let propagation = b.right.iter().find_map(|occ| {
                let (kind, body) = diamond_kind(&occ.formula)?;
                r.targets(occ.label, kind).into_iter().find_map(|y| {
                    let key = (occ.label, occ.formula.clone(), y);
                    let added = Labelled::new(y, body.clone());
                    (!b.propagated.contains(&key) && !b.has(&added))
                        .then(|| (occ.clone(), kind, key, added))
                })
            });
            if let Some((occ, kind, key, added)) = propagation {
                let y = added.label;
                let principal = Principal {
                    path: r.witness(occ.label, y, kind),
                    right: vec![occ],
                    target: Some(y),
                    ..Default::default()
                };
                let rule = match kind {
                    DiamondKind::White => RuleTag::Dia,
                    DiamondKind::Black => RuleTag::BDia,
                };
                b.propagated.insert(key);
                b.right.push(added);
                chain.push((conclusion, rule, principal));
                continue 'search;
            }

            let mut boxes: Vec<(Label, usize)> = b
                .right
                .iter()
                .enumerate()
                .filter(|(_, o)| matches!(o.formula, T::Box(_) | T::BBox(_)))
                .filter(|(_, o)| !b.expanded.contains(&(o.label, o.formula.clone())))
                .map(|(i, o)| (o.label, i))
                .collect();
            boxes.sort();
            if let Some(&(x, i)) = boxes.first() {
                let Some(y) = self.fresh(&mut b.fresh_used) else {
                    return Err(Stuck);
                };
                let occ = b.right[i].clone();
                let (rule, body, atom) = match &occ.formula {
                    T::Box(a) => (RuleTag::Box, a, RelAtom::new(x, y)),
                    T::BBox(a) => (RuleTag::BBox, a, RelAtom::new(y, x)),
                    _ => unreachable!(),
                };
                b.expanded.insert((x, occ.formula.clone()));
                b.right = b.replace(i, &[Labelled::new(y, (**body).clone())]);
                b.rel.push(atom);
                reach = None;
                let principal = Principal {
                    right: vec![occ],
                    fresh: Some(y),
                    rel: vec![atom],
                    ..Default::default()
                };
                chain.push((conclusion, rule, principal));
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
    use crate::formula::parse_tense;
    use crate::path_system::PathAxiomSystem;
    use crate::prover::NotProved;

    fn goal(text: &str) -> LabelledSequent<T> {
        LabelledSequent::goal_right(parse_tense(text).unwrap().normalize())
    }

    fn prove(text: &str, axioms: &str) -> Outcome<T> {
        let cfg =
            SearchConfig::with_bound(8).with_system(PathAxiomSystem::parse(axioms, false).unwrap());
        prove_kt(&goal(text), &cfg).unwrap()
    }

    #[test]
    fn excluded_middle_by_or_then_id() {
        let Outcome::Proved(p) = prove("~p | p", "") else {
            panic!()
        };
        assert_eq!(p.rule_sequence(), vec![RuleTag::Or, RuleTag::Id]);
    }

    #[test]
    fn bare_atom_refuted() {
        assert_eq!(prove("p", ""), Outcome::NotProved(NotProved::Refuted));
    }

    #[test]
    fn converse_axiom_needs_no_path_axioms() {
        assert!(prove("~p | []<b>p", "").is_proved());
        assert!(prove("~p | [b]<>p", "").is_proved());
    }

    #[test]
    fn transitivity_requires_axiom() {
        assert!(prove("[]p -> [][]p", "dd -> d").is_proved());
        assert!(!prove("[]p -> [][]p", "").is_proved());
    }

    #[test]
    fn worked_example() {
        let text = "[]<>~q -> [](<>~p | <><>p)";
        assert!(prove(text, "dd -> d").is_proved());
        assert!(!prove(text, "").is_proved());
    }

    #[test]
    fn one_sided_required() {
        let g = LabelledSequent::goal_both(T::atom("p"), T::atom("p"));
        assert_eq!(
            prove_kt(&g, &SearchConfig::default()),
            Err(SearchError::NotOneSided)
        );
    }

    #[test]
    fn deterministic() {
        let a = prove("[]<>~q -> [](<>~p | <><>p)", "dd -> d");
        let b = prove("[]<>~q -> [](<>~p | <><>p)", "dd -> d");
        assert_eq!(a, b);
    }
}
