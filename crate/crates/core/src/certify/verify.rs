use std::collections::BTreeSet;

use serde::Serialize;

use crate::formula::{BiFormula, Formula, TenseFormula};
use crate::path_system::PathAxiomSystem;
use crate::proof::Proof;
use crate::sequent::LabelledSequent;

use super::check::{check_bi, check_kt, CheckFailure, CheckMode, CheckReport};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason")]
pub enum VerifyFailure {
    /// The interpolant uses variables outside the shared vocabulary.
    VariableCondition { extra: BTreeSet<String> },
    ConclusionMismatch {
        which: String,
        expected: String,
        found: String,
    },
    ProofRejected {
        which: String,
        failures: Vec<CheckFailure>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub ok: bool,
    pub failures: Vec<VerifyFailure>,
    pub reachability_queries: usize,
}

struct Claim<'a, F> {
    which: &'static str,
    goal: LabelledSequent<F>,
    proof: &'a Proof<F>,
}

fn verify<F: Formula>(
    a: &F,
    b: &F,
    c: &F,
    claims: [Claim<'_, F>; 2],
    check: impl Fn(&Proof<F>) -> CheckReport,
) -> VerifyReport {
    let mut failures = Vec::new();
    let shared: BTreeSet<String> = a.vars().intersection(&b.vars()).cloned().collect();
    let extra: BTreeSet<String> = c.vars().difference(&shared).cloned().collect();
    if !extra.is_empty() {
        failures.push(VerifyFailure::VariableCondition { extra });
    }
    let mut queries = 0;
    for claim in claims {
        if !claim.goal.same_multisets(&claim.proof.conclusion) {
            failures.push(VerifyFailure::ConclusionMismatch {
                which: claim.which.to_string(),
                expected: claim.goal.to_string(),
                found: claim.proof.conclusion.to_string(),
            });
        }
        let report = check(claim.proof);
        queries += report.reachability_queries;
        if !report.ok {
            failures.push(VerifyFailure::ProofRejected {
                which: claim.which.to_string(),
                failures: report.failures,
            });
        }
    }
    VerifyReport {
        ok: failures.is_empty(),
        failures,
        reachability_queries: queries,
    }
}

/// Checks that `c` interpolates `a -> b`: the variable condition holds,
/// `proof_ac` derives `|- x: ~a | c`, `proof_cb` derives `|- x: ~c | b`,
/// and both derivations pass the core checker under `system`.
pub fn verify_interpolant_kt(
    a: &TenseFormula,
    b: &TenseFormula,
    c: &TenseFormula,
    proof_ac: &Proof<TenseFormula>,
    proof_cb: &Proof<TenseFormula>,
    system: &PathAxiomSystem,
) -> VerifyReport {
    let claims = [
        Claim {
            which: "A -> C",
            goal: LabelledSequent::goal_right(TenseFormula::or(a.negate(), c.clone())),
            proof: proof_ac,
        },
        Claim {
            which: "C -> B",
            goal: LabelledSequent::goal_right(TenseFormula::or(c.negate(), b.clone())),
            proof: proof_cb,
        },
    ];
    verify(a, b, c, claims, |p| {
        check_kt(p, system, CheckMode::Core, &[])
    })
}

/// The bi-intuitionistic counterpart of [`verify_interpolant_kt`], with
/// goals `|- x: a -> c` and `|- x: c -> b`.
pub fn verify_interpolant_bi(
    a: &BiFormula,
    b: &BiFormula,
    c: &BiFormula,
    proof_ac: &Proof<BiFormula>,
    proof_cb: &Proof<BiFormula>,
) -> VerifyReport {
    let claims = [
        Claim {
            which: "A -> C",
            goal: LabelledSequent::goal_right(BiFormula::imp(a.clone(), c.clone())),
            proof: proof_ac,
        },
        Claim {
            which: "C -> B",
            goal: LabelledSequent::goal_right(BiFormula::imp(c.clone(), b.clone())),
            proof: proof_cb,
        },
    ];
    verify(a, b, c, claims, |p| check_bi(p, CheckMode::Core, &[]))
}
