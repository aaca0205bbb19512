//! Rule-by-rule schema checking. Every expected premise is rebuilt from the
//! conclusion and the recorded principal data, then compared as a multiset
//! with the premise actually present.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::formula::{BiFormula, Formula, Logic, TenseFormula};
use crate::path_system::{DiamondKind, PathAxiomSystem, PropagationGraph, Reachability};
use crate::proof::{Principal, Proof, RuleTag};
use crate::sequent::{Label, Labelled, LabelledSequent, RelAtom, Side};

/// Which rules a certificate may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckMode {
    /// The cut-free calculus only.
    Core,
    /// Adds contraction, weakening and cut.
    Extended,
    /// Adds the derived left-implication and right-exclusion rules and
    /// reflexivity elimination on top of the extended rules.
    Derived,
}

impl CheckMode {
    pub fn name(self) -> &'static str {
        match self {
            CheckMode::Core => "core",
            CheckMode::Extended => "extended",
            CheckMode::Derived => "derived",
        }
    }
}

impl std::str::FromStr for CheckMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "core" => Ok(CheckMode::Core),
            "extended" => Ok(CheckMode::Extended),
            "derived" => Ok(CheckMode::Derived),
            other => Err(format!("unknown check mode `{other}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckFailure {
    pub rule: String,
    /// Premise indices leading from the root to the failing node.
    pub position: Vec<usize>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub ok: bool,
    pub failures: Vec<CheckFailure>,
    /// Number of assumption leaves.
    pub open_leaves: usize,
    /// Side-condition decisions made for propagation steps.
    pub reachability_queries: usize,
}

fn rule_allowed(logic: Logic, mode: CheckMode, rule: RuleTag) -> bool {
    use RuleTag::*;
    let core = match logic {
        Logic::Kt => matches!(rule, Id | Top | Or | And | Dia | BDia | Box | BBox),
        Logic::Bi => matches!(
            rule,
            Id | Top | Bot | OrL | OrR | AndL | AndR | MonL | MonR | ImpL | ImpR | ExclL | ExclR
        ),
    };
    let extended = match logic {
        Logic::Kt => matches!(rule, Ctr | Wk | Cut1),
        Logic::Bi => matches!(rule, Ctr | Wk | Cut2),
    };
    let derived = logic == Logic::Bi && matches!(rule, ImpLStar | ExclRStar | Refl);
    core || rule == Hyp
        || (mode >= CheckMode::Extended && extended)
        || (mode >= CheckMode::Derived && derived)
}

/// Multiset edits on a copy of a sequent.
struct Edit<F: Formula>(LabelledSequent<F>);

impl<F: Formula> Edit<F> {
    fn of(s: &LabelledSequent<F>) -> Self {
        Edit(s.unmarked())
    }

    fn take(mut self, side: Side, occ: &Labelled<F>) -> Result<Self, String> {
        let v = match side {
            Side::Left => &mut self.0.left,
            Side::Right => &mut self.0.right,
        };
        let i = v
            .iter()
            .position(|o| o == occ)
            .ok_or_else(|| format!("{occ} not in conclusion"))?;
        v.remove(i);
        Ok(self)
    }

    fn put(mut self, side: Side, occ: Labelled<F>) -> Self {
        match side {
            Side::Left => self.0.left.push(occ),
            Side::Right => self.0.right.push(occ),
        }
        self
    }

    fn take_rel(mut self, r: RelAtom) -> Result<Self, String> {
        let i = self
            .0
            .rel
            .iter()
            .position(|a| *a == r)
            .ok_or_else(|| format!("{r} not in conclusion"))?;
        self.0.rel.remove(i);
        Ok(self)
    }

    fn put_rel(mut self, r: RelAtom) -> Self {
        self.0.rel.push(r);
        self
    }

    fn done(self) -> LabelledSequent<F> {
        self.0
    }
}

fn one<T: Clone>(items: &[T], what: &str) -> Result<T, String> {
    match items {
        [x] => Ok(x.clone()),
        _ => Err(format!(
            "expected exactly one {what}, found {}",
            items.len()
        )),
    }
}

fn only_right<F>(p: &Principal<F>) -> Result<(), String> {
    if p.left.is_empty() {
        Ok(())
    } else {
        Err("unexpected left principal".into())
    }
}

fn only_left<F>(p: &Principal<F>) -> Result<(), String> {
    if p.right.is_empty() {
        Ok(())
    } else {
        Err("unexpected right principal".into())
    }
}

fn require_fresh<F: Formula>(
    concl: &LabelledSequent<F>,
    p: &Principal<F>,
) -> Result<Label, String> {
    let y = p.fresh.ok_or("missing fresh label")?;
    if concl.labels().contains(&y) {
        return Err(format!("label {y} is not fresh"));
    }
    Ok(y)
}

fn require_rel<F: Formula>(
    concl: &LabelledSequent<F>,
    p: &Principal<F>,
) -> Result<RelAtom, String> {
    let r = one(&p.rel, "relational atom")?;
    if !concl.has_rel(r.from, r.to) {
        return Err(format!("{r} not in conclusion"));
    }
    Ok(r)
}

/// Structural rules shared by both logics.
fn structural<F: Formula>(
    logic: Logic,
    node: &Proof<F>,
    negate: impl Fn(&F) -> F,
) -> Result<Vec<LabelledSequent<F>>, String> {
    let c = &node.conclusion;
    let p = &node.principal;
    match node.rule {
        RuleTag::Ctr => {
            if p.left.is_empty() && p.right.is_empty() && p.rel.is_empty() {
                return Err("contraction of nothing".into());
            }
            let mut check = Edit::of(c);
            let mut e = Edit::of(c);
            for o in &p.left {
                check = check.take(Side::Left, o)?;
                e = e.put(Side::Left, o.clone());
            }
            for o in &p.right {
                check = check.take(Side::Right, o)?;
                e = e.put(Side::Right, o.clone());
            }
            for r in &p.rel {
                check = check.take_rel(*r)?;
                e = e.put_rel(*r);
            }
            Ok(vec![e.done()])
        }
        RuleTag::Wk => {
            if p.left.is_empty() && p.right.is_empty() && p.rel.is_empty() {
                return Err("weakening by nothing".into());
            }
            let mut e = Edit::of(c);
            for o in &p.left {
                e = e.take(Side::Left, o)?;
            }
            for o in &p.right {
                e = e.take(Side::Right, o)?;
            }
            for r in &p.rel {
                e = e.take_rel(*r)?;
            }
            Ok(vec![e.done()])
        }
        RuleTag::Cut1 | RuleTag::Cut2 => {
            let a = p.cut.clone().ok_or("missing cut formula")?;
            match logic {
                Logic::Kt => {
                    let na = Labelled::new(a.label, negate(&a.formula));
                    Ok(vec![
                        Edit::of(c).put(Side::Right, a).done(),
                        Edit::of(c).put(Side::Right, na).done(),
                    ])
                }
                Logic::Bi => Ok(vec![
                    Edit::of(c).put(Side::Right, a.clone()).done(),
                    Edit::of(c).put(Side::Left, a).done(),
                ]),
            }
        }
        other => Err(format!("{other} is not a structural rule")),
    }
}

struct Walker<'a, F: Formula> {
    logic: Logic,
    mode: CheckMode,
    assumptions: &'a [LabelledSequent<F>],
    report: CheckReport,
}

impl<'a, F: Formula> Walker<'a, F> {
    fn new(logic: Logic, mode: CheckMode, assumptions: &'a [LabelledSequent<F>]) -> Self {
        Walker {
            logic,
            mode,
            assumptions,
            report: CheckReport {
                ok: true,
                failures: Vec::new(),
                open_leaves: 0,
                reachability_queries: 0,
            },
        }
    }

    fn fail(&mut self, node: &Proof<F>, position: &[usize], reason: String) {
        self.report.ok = false;
        self.report.failures.push(CheckFailure {
            rule: node.rule.name().to_string(),
            position: position.to_vec(),
            reason,
        });
    }

    /// `schema` rebuilds the expected premises of a logical rule.
    fn walk(
        &mut self,
        node: &Proof<F>,
        position: &mut Vec<usize>,
        schema: &mut dyn FnMut(&Proof<F>, &mut usize) -> Result<Vec<LabelledSequent<F>>, String>,
        negate: &dyn Fn(&F) -> F,
    ) {
        let outcome = self.node(node, schema, negate);
        if let Err(reason) = outcome {
            self.fail(node, position, reason);
        }
        for (i, p) in node.premises.iter().enumerate() {
            position.push(i);
            self.walk(p, position, schema, negate);
            position.pop();
        }
    }

    fn node(
        &mut self,
        node: &Proof<F>,
        schema: &mut dyn FnMut(&Proof<F>, &mut usize) -> Result<Vec<LabelledSequent<F>>, String>,
        negate: &dyn Fn(&F) -> F,
    ) -> Result<(), String> {
        if !rule_allowed(self.logic, self.mode, node.rule) {
            return Err(format!(
                "rule {} not allowed for {} in {} mode",
                node.rule,
                self.logic,
                self.mode.name()
            ));
        }
        if self.logic == Logic::Kt && !node.conclusion.left.is_empty() {
            return Err("tense sequents must be one-sided".into());
        }
        if node.premises.len() != node.rule.arity() {
            return Err(format!(
                "{} premises, rule takes {}",
                node.premises.len(),
                node.rule.arity()
            ));
        }
        let expected = match node.rule {
            RuleTag::Hyp => {
                self.report.open_leaves += 1;
                if self
                    .assumptions
                    .iter()
                    .any(|a| a.same_multisets(&node.conclusion))
                {
                    return Ok(());
                }
                return Err("assumption leaf matches no declared assumption".into());
            }
            RuleTag::Ctr | RuleTag::Wk | RuleTag::Cut1 | RuleTag::Cut2 => {
                structural(self.logic, node, negate)?
            }
            _ => schema(node, &mut self.report.reachability_queries)?,
        };
        for (i, (want, got)) in expected.iter().zip(&node.premises).enumerate() {
            if !want.same_multisets(&got.conclusion) {
                return Err(format!(
                    "premise {i} is `{}`, expected `{}`",
                    got.conclusion, want
                ));
            }
        }
        Ok(())
    }
}

fn tense_schema(
    node: &Proof<TenseFormula>,
    system: &PathAxiomSystem,
    queries: &mut usize,
) -> Result<Vec<LabelledSequent<TenseFormula>>, String> {
    use TenseFormula as T;
    let c = &node.conclusion;
    let p = &node.principal;
    only_right(p)?;
    match node.rule {
        RuleTag::Id => {
            let [a, b] = p.right.as_slice() else {
                return Err("id needs two principal occurrences".into());
            };
            let complementary = a.label == b.label
                && matches!((&a.formula, &b.formula),
                    (T::NegAtom(x), T::Atom(y)) | (T::Atom(y), T::NegAtom(x)) if x == y);
            if !complementary {
                return Err(format!(
                    "{a} and {b} are not complementary literals at one label"
                ));
            }
            Edit::of(c).take(Side::Right, a)?.take(Side::Right, b)?;
            Ok(vec![])
        }
        RuleTag::Top => {
            let a = one(&p.right, "principal")?;
            if a.formula != T::Top {
                return Err(format!("{a} is not top"));
            }
            Edit::of(c).take(Side::Right, &a)?;
            Ok(vec![])
        }
        RuleTag::Or | RuleTag::And => {
            let a = one(&p.right, "principal")?;
            let x = a.label;
            let rest = Edit::of(c).take(Side::Right, &a)?.done();
            let with = |f: &T| {
                Edit(rest.clone())
                    .put(Side::Right, Labelled::new(x, f.clone()))
                    .done()
            };
            match (&a.formula, node.rule) {
                (T::Or(l, r), RuleTag::Or) => Ok(vec![Edit(rest.clone())
                    .put(Side::Right, Labelled::new(x, (**l).clone()))
                    .put(Side::Right, Labelled::new(x, (**r).clone()))
                    .done()]),
                (T::And(l, r), RuleTag::And) => Ok(vec![with(l), with(r)]),
                _ => Err(format!("{a} does not match {}", node.rule)),
            }
        }
        RuleTag::Dia | RuleTag::BDia => {
            let a = one(&p.right, "principal")?;
            let (kind, body) = match (&a.formula, node.rule) {
                (T::Dia(b), RuleTag::Dia) => (DiamondKind::White, b),
                (T::BDia(b), RuleTag::BDia) => (DiamondKind::Black, b),
                _ => return Err(format!("{a} does not match {}", node.rule)),
            };
            Edit::of(c).take(Side::Right, &a)?;
            let y = p.target.ok_or("missing propagation target")?;
            let graph = PropagationGraph::build(c);
            *queries += 1;
            let by_hint = p.path.as_ref().is_some_and(|path| {
                path.start() == a.label
                    && path.end() == y
                    && !path.is_empty()
                    && path.lies_in(&graph)
                    && system.completion_member(path.word(), kind)
            });
            if !by_hint && !Reachability::compute(&graph, system).reachable(a.label, y, kind) {
                return Err(format!(
                    "{y} is not reachable from {} for {}",
                    a.label, node.rule
                ));
            }
            Ok(vec![Edit::of(c)
                .put(Side::Right, Labelled::new(y, (**body).clone()))
                .done()])
        }
        RuleTag::Box | RuleTag::BBox => {
            let a = one(&p.right, "principal")?;
            let x = a.label;
            let y = require_fresh(c, p)?;
            let (atom, body) = match (&a.formula, node.rule) {
                (T::Box(b), RuleTag::Box) => (RelAtom::new(x, y), b),
                (T::BBox(b), RuleTag::BBox) => (RelAtom::new(y, x), b),
                _ => return Err(format!("{a} does not match {}", node.rule)),
            };
            Ok(vec![Edit::of(c)
                .take(Side::Right, &a)?
                .put_rel(atom)
                .put(Side::Right, Labelled::new(y, (**body).clone()))
                .done()])
        }
        other => Err(format!("{other} is not a tense rule")),
    }
}

fn bi_schema(node: &Proof<BiFormula>) -> Result<Vec<LabelledSequent<BiFormula>>, String> {
    use BiFormula as B;
    let c = &node.conclusion;
    let p = &node.principal;
    let at = |l: Label, f: &B| Labelled::new(l, f.clone());
    let split = |f: &B| -> Option<(B, B)> {
        match f {
            B::And(l, r) | B::Or(l, r) | B::Imp(l, r) | B::Excl(l, r) => {
                Some(((**l).clone(), (**r).clone()))
            }
            _ => None,
        }
    };
    let shape_err = |a: &Labelled<B>| format!("{a} does not match {}", node.rule);
    match node.rule {
        RuleTag::Id => {
            let (a, b) = (
                one(&p.left, "left principal")?,
                one(&p.right, "right principal")?,
            );
            if a != b || !matches!(a.formula, B::Atom(_)) {
                return Err(format!("{a} and {b} are not the same atom at one label"));
            }
            Edit::of(c).take(Side::Left, &a)?.take(Side::Right, &b)?;
            Ok(vec![])
        }
        RuleTag::Top => {
            only_right(p)?;
            let a = one(&p.right, "principal")?;
            if a.formula != B::Top {
                return Err(shape_err(&a));
            }
            Edit::of(c).take(Side::Right, &a)?;
            Ok(vec![])
        }
        RuleTag::Bot => {
            only_left(p)?;
            let a = one(&p.left, "principal")?;
            if a.formula != B::Bot {
                return Err(shape_err(&a));
            }
            Edit::of(c).take(Side::Left, &a)?;
            Ok(vec![])
        }
        RuleTag::AndL | RuleTag::OrL | RuleTag::ImpL | RuleTag::ExclL | RuleTag::ImpLStar => {
            only_left(p)?;
            let a = one(&p.left, "principal")?;
            let x = a.label;
            let (l, r) = split(&a.formula).ok_or_else(|| shape_err(&a))?;
            let shape_ok = matches!(
                (&a.formula, node.rule),
                (B::And(..), RuleTag::AndL)
                    | (B::Or(..), RuleTag::OrL)
                    | (B::Imp(..), RuleTag::ImpL | RuleTag::ImpLStar)
                    | (B::Excl(..), RuleTag::ExclL)
            );
            if !shape_ok {
                return Err(shape_err(&a));
            }
            let rest = || Edit::of(c).take(Side::Left, &a);
            match node.rule {
                RuleTag::AndL => Ok(vec![rest()?
                    .put(Side::Left, at(x, &l))
                    .put(Side::Left, at(x, &r))
                    .done()]),
                RuleTag::OrL => Ok(vec![
                    rest()?.put(Side::Left, at(x, &l)).done(),
                    rest()?.put(Side::Left, at(x, &r)).done(),
                ]),
                RuleTag::ImpL => Ok(vec![
                    Edit::of(c).put(Side::Right, at(x, &l)).done(),
                    rest()?.put(Side::Left, at(x, &r)).done(),
                ]),
                RuleTag::ExclL => {
                    let y = require_fresh(c, p)?;
                    Ok(vec![rest()?
                        .put_rel(RelAtom::new(y, x))
                        .put(Side::Left, at(y, &l))
                        .put(Side::Right, at(y, &r))
                        .done()])
                }
                RuleTag::ImpLStar => {
                    let atom = require_rel(c, p)?;
                    if atom.from != x {
                        return Err(format!("{atom} does not leave {x}"));
                    }
                    let y = atom.to;
                    rest()?;
                    Ok(vec![
                        Edit::of(c).put(Side::Right, at(y, &l)).done(),
                        rest()?.put(Side::Left, at(y, &r)).done(),
                    ])
                }
                _ => unreachable!(),
            }
        }
        RuleTag::OrR | RuleTag::AndR | RuleTag::ImpR | RuleTag::ExclR | RuleTag::ExclRStar => {
            only_right(p)?;
            let a = one(&p.right, "principal")?;
            let x = a.label;
            let (l, r) = split(&a.formula).ok_or_else(|| shape_err(&a))?;
            let shape_ok = matches!(
                (&a.formula, node.rule),
                (B::Or(..), RuleTag::OrR)
                    | (B::And(..), RuleTag::AndR)
                    | (B::Imp(..), RuleTag::ImpR)
                    | (B::Excl(..), RuleTag::ExclR | RuleTag::ExclRStar)
            );
            if !shape_ok {
                return Err(shape_err(&a));
            }
            let rest = || Edit::of(c).take(Side::Right, &a);
            match node.rule {
                RuleTag::OrR => Ok(vec![rest()?
                    .put(Side::Right, at(x, &l))
                    .put(Side::Right, at(x, &r))
                    .done()]),
                RuleTag::AndR => Ok(vec![
                    rest()?.put(Side::Right, at(x, &l)).done(),
                    rest()?.put(Side::Right, at(x, &r)).done(),
                ]),
                RuleTag::ExclR => Ok(vec![
                    rest()?.put(Side::Right, at(x, &l)).done(),
                    Edit::of(c).put(Side::Left, at(x, &r)).done(),
                ]),
                RuleTag::ImpR => {
                    let y = require_fresh(c, p)?;
                    Ok(vec![rest()?
                        .put_rel(RelAtom::new(x, y))
                        .put(Side::Left, at(y, &l))
                        .put(Side::Right, at(y, &r))
                        .done()])
                }
                RuleTag::ExclRStar => {
                    let atom = require_rel(c, p)?;
                    if atom.to != x {
                        return Err(format!("{atom} does not enter {x}"));
                    }
                    let y = atom.from;
                    Ok(vec![
                        rest()?.put(Side::Right, at(y, &l)).done(),
                        Edit::of(c).put(Side::Left, at(y, &r)).done(),
                    ])
                }
                _ => unreachable!(),
            }
        }
        RuleTag::MonL => {
            only_left(p)?;
            let a = one(&p.left, "principal")?;
            let atom = require_rel(c, p)?;
            if atom.from != a.label || p.target.is_some_and(|t| t != atom.to) {
                return Err(format!("{atom} does not carry {a} forward"));
            }
            Edit::of(c).take(Side::Left, &a)?;
            Ok(vec![Edit::of(c)
                .put(Side::Left, at(atom.to, &a.formula))
                .done()])
        }
        RuleTag::MonR => {
            only_right(p)?;
            let a = one(&p.right, "principal")?;
            let atom = require_rel(c, p)?;
            if atom.to != a.label || p.target.is_some_and(|t| t != atom.from) {
                return Err(format!("{atom} does not carry {a} backward"));
            }
            Edit::of(c).take(Side::Right, &a)?;
            Ok(vec![Edit::of(c)
                .put(Side::Right, at(atom.from, &a.formula))
                .done()])
        }
        RuleTag::Refl => {
            let atom = one(&p.rel, "relational atom")?;
            if atom.from != atom.to {
                return Err(format!("{atom} is not reflexive"));
            }
            Ok(vec![Edit::of(c).put_rel(atom).done()])
        }
        other => Err(format!("{other} is not a bi-intuitionistic rule")),
    }
}

/// Checks a tense derivation against the calculus with axioms `system`.
/// `Hyp` leaves must match one of `assumptions`.
pub fn check_kt(
    proof: &Proof<TenseFormula>,
    system: &PathAxiomSystem,
    mode: CheckMode,
    assumptions: &[LabelledSequent<TenseFormula>],
) -> CheckReport {
    let mut w = Walker::new(Logic::Kt, mode, assumptions);
    let mut schema = |n: &Proof<TenseFormula>, q: &mut usize| tense_schema(n, system, q);
    w.walk(proof, &mut Vec::new(), &mut schema, &|f: &TenseFormula| {
        f.negate()
    });
    w.report
}

/// Checks a bi-intuitionistic derivation.
pub fn check_bi(
    proof: &Proof<BiFormula>,
    mode: CheckMode,
    assumptions: &[LabelledSequent<BiFormula>],
) -> CheckReport {
    let mut w = Walker::new(Logic::Bi, mode, assumptions);
    let mut schema = |n: &Proof<BiFormula>, _: &mut usize| bi_schema(n);
    w.walk(proof, &mut Vec::new(), &mut schema, &|f: &BiFormula| {
        f.clone()
    });
    w.report
}

/// Labels introduced by fresh-label rules, in pre-order. Used by tests to
/// confirm that every introduced label is distinct.
pub fn introduced_labels<F: Formula>(proof: &Proof<F>) -> Vec<Label> {
    proof
        .nodes()
        .iter()
        .filter(|n| n.rule.uses_fresh_label())
        .filter_map(|n| n.principal.fresh)
        .collect()
}

/// Labels that occur anywhere in a proof.
pub fn all_labels<F: Formula>(proof: &Proof<F>) -> BTreeSet<Label> {
    proof
        .nodes()
        .iter()
        .flat_map(|n| n.conclusion.labels())
        .collect()
}
