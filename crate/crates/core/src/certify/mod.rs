//! Independent checking of derivations and interpolant bundles.
//!
//! Nothing here calls the prover: every rule instance is re-derived from its
//! conclusion, and propagation side conditions are decided again from
//! scratch.

mod check;
mod verify;

pub use check::{
    all_labels, check_bi, check_kt, introduced_labels, CheckFailure, CheckMode, CheckReport,
};
pub use verify::{verify_interpolant_bi, verify_interpolant_kt, VerifyFailure, VerifyReport};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse_bi, parse_tense, TenseFormula};
    use crate::path_system::PathAxiomSystem;
    use crate::proof::RuleTag;
    use crate::prover::{prove_bi, prove_kt, SearchConfig};
    use crate::sequent::{Label, LabelledSequent};

    fn tense(text: &str) -> TenseFormula {
        parse_tense(text).unwrap().normalize()
    }

    #[test]
    fn prover_output_checks() {
        let sys = PathAxiomSystem::parse("dd -> d", false).unwrap();
        let cfg = SearchConfig::with_bound(8).with_system(sys.clone());
        let goal = LabelledSequent::goal_right(tense("[]<>~q -> [](<>~p | <><>p)"));
        let proof = prove_kt(&goal, &cfg)
            .unwrap()
            .proof()
            .expect("provable with transitivity");
        let report = check_kt(&proof, &sys, CheckMode::Core, &[]);
        assert!(report.ok, "{:?}", report.failures);
        let dias = proof
            .nodes()
            .iter()
            .filter(|n| matches!(n.rule, RuleTag::Dia | RuleTag::BDia))
            .count();
        assert_eq!(report.reachability_queries, dias);

        let weaker = check_kt(&proof, &PathAxiomSystem::default(), CheckMode::Core, &[]);
        assert!(!weaker.ok);
        assert!(weaker.failures.iter().any(|f| f.rule == "Dia"));
    }

    #[test]
    fn bi_prover_output_checks() {
        for text in [
            "p -> p",
            "(p & q) -> p",
            "p -> (q -> p)",
            "((p -> q) & p) -> q",
            "p -> (q | (p -< q))",
        ] {
            let goal = LabelledSequent::goal_right(parse_bi(text).unwrap());
            let proof = prove_bi(&goal, &SearchConfig::default())
                .unwrap()
                .proof()
                .expect(text);
            let report = check_bi(&proof, CheckMode::Core, &[]);
            assert!(report.ok, "{text}: {:?}", report.failures);
        }
    }

    #[test]
    fn tampered_premise_is_reported_with_position() {
        let goal = LabelledSequent::goal_right(parse_bi("(p & q) -> p").unwrap());
        let mut proof = prove_bi(&goal, &SearchConfig::default())
            .unwrap()
            .proof()
            .unwrap();
        proof.premises[0].conclusion.right.clear();
        let report = check_bi(&proof, CheckMode::Core, &[]);
        assert!(!report.ok);
        assert_eq!(report.failures[0].position, Vec::<usize>::new());
    }

    #[test]
    fn hyp_needs_declared_assumption() {
        let seq = LabelledSequent::goal_right(tense("p"));
        let leaf = crate::proof::Proof::leaf(seq.clone(), RuleTag::Hyp, Default::default());
        let sys = PathAxiomSystem::default();
        assert!(!check_kt(&leaf, &sys, CheckMode::Core, &[]).ok);
        let report = check_kt(&leaf, &sys, CheckMode::Core, &[seq]);
        assert!(report.ok);
        assert_eq!(report.open_leaves, 1);
    }

    #[test]
    fn verify_worked_example_and_failures() {
        use crate::interpolate::craig_tense;
        let sys = PathAxiomSystem::parse("dd -> d", false).unwrap();
        let cfg = SearchConfig::with_bound(8).with_system(sys.clone());
        let r = craig_tense(&tense("[]<>~q"), &tense("[](<>~p | <><>p)"), &cfg).unwrap();
        assert!(verify_interpolant_kt(&r.a, &r.b, &r.c, &r.proof_ac, &r.proof_cb, &sys).ok);

        let leaky = TenseFormula::or(r.c.clone(), tense("s & ~s"));
        let report = verify_interpolant_kt(&r.a, &r.b, &leaky, &r.proof_ac, &r.proof_cb, &sys);
        assert!(report
            .failures
            .iter()
            .any(|f| matches!(f, VerifyFailure::VariableCondition { .. })));
        assert!(report
            .failures
            .iter()
            .any(|f| matches!(f, VerifyFailure::ConclusionMismatch { .. })));

        let swapped = verify_interpolant_kt(&r.a, &r.b, &r.c, &r.proof_cb, &r.proof_ac, &sys);
        assert!(matches!(
            swapped.failures[0],
            VerifyFailure::ConclusionMismatch { .. }
        ));
    }

    #[test]
    fn fresh_labels_are_distinct() {
        let goal =
            LabelledSequent::goal_right(parse_bi("(p -> q) -> ((q -> r) -> (p -> r))").unwrap());
        let proof = prove_bi(&goal, &SearchConfig::default())
            .unwrap()
            .proof()
            .unwrap();
        let fresh = introduced_labels(&proof);
        let distinct: std::collections::BTreeSet<Label> = fresh.iter().copied().collect();
        assert_eq!(fresh.len(), distinct.len());
        assert!(all_labels(&proof).contains(&Label::ROOT));
    }
}
