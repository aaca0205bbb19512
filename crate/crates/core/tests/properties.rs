//! Property tests over randomly shaped formulas and interpolants.

use std::collections::BTreeSet;

use proptest::prelude::*;

use nested_interp::formula::{BiFormula, Formula, TenseFormula};
use nested_interp::interpolate::{orthogonal, orthogonal_uncollapsed, Interpolant, Orthogonal};
use nested_interp::prover::{prove_bi, prove_kt, NotProved, Outcome, SearchConfig};
use nested_interp::sequent::{FlatSequent, Label, Labelled, LabelledSequent};
use nested_interp::serial::{interpolant_from_json, interpolant_to_json};

fn atom() -> impl Strategy<Value = String> {
    prop::sample::select(vec!["p", "q", "r"]).prop_map(str::to_string)
}

fn tense() -> impl Strategy<Value = TenseFormula> {
    let leaf = prop_oneof![
        atom().prop_map(TenseFormula::Atom),
        atom().prop_map(TenseFormula::NegAtom),
        Just(TenseFormula::Top),
        Just(TenseFormula::Bot),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| TenseFormula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| TenseFormula::or(a, b)),
            inner.clone().prop_map(TenseFormula::boxed),
            inner.clone().prop_map(TenseFormula::dia),
            inner.clone().prop_map(TenseFormula::bbox),
            inner.prop_map(TenseFormula::bdia),
        ]
    })
}

fn bi() -> impl Strategy<Value = BiFormula> {
    let leaf = prop_oneof![4 => atom().prop_map(BiFormula::Atom), 1 => Just(BiFormula::Top), 1 => Just(BiFormula::Bot)];
    leaf.prop_recursive(3, 16, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| BiFormula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| BiFormula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| BiFormula::imp(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| BiFormula::excl(a, b)),
        ]
    })
}

fn members<F: Formula + 'static>(
    occ: impl Strategy<Value = Labelled<F>> + Clone + 'static,
    two_sided: bool,
) -> impl Strategy<Value = Interpolant<F>> {
    let side = prop::collection::vec(occ, 0..3);
    let left = if two_sided {
        side.clone().boxed()
    } else {
        Just(Vec::new()).boxed()
    };
    prop::collection::vec((left, side).prop_map(|(l, r)| FlatSequent::new(l, r)), 0..4)
        .prop_map(|ms| ms.into_iter().collect())
}

fn labelled<F: Formula + 'static>(
    f: impl Strategy<Value = F> + Clone,
) -> impl Strategy<Value = Labelled<F>> + Clone {
    ((0u32..3).prop_map(Label), f).prop_map(|(l, f)| Labelled::new(l, f))
}

fn small_tense() -> impl Strategy<Value = TenseFormula> + Clone {
    prop_oneof![
        atom().prop_map(TenseFormula::Atom),
        atom().prop_map(TenseFormula::NegAtom)
    ]
}

fn small_bi() -> impl Strategy<Value = BiFormula> + Clone {
    prop_oneof![atom().prop_map(BiFormula::Atom), Just(BiFormula::Top)]
}

/// Not refuted: either proved or cut short by a limit.
fn not_refuted<F>(outcome: Outcome<F>) -> bool {
    !matches!(outcome, Outcome::NotProved(NotProved::Refuted))
}

fn distinct<F: Formula>(m: &FlatSequent<F>) -> usize {
    m.left().iter().collect::<BTreeSet<_>>().len() + m.right().iter().collect::<BTreeSet<_>>().len()
}

fn orthogonal_size_bound<F: Orthogonal>(i: &Interpolant<F>) -> Result<(), TestCaseError> {
    let bound: usize = i.iter().map(distinct).product();
    prop_assert!(orthogonal(i).len() <= bound);
    prop_assert_eq!(
        orthogonal_uncollapsed(i).len(),
        i.iter().map(FlatSequent::len).product::<usize>()
    );
    for m in orthogonal(i).iter() {
        prop_assert!(m.len() <= i.len());
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn negation_is_an_involution(f in tense()) {
        prop_assert_eq!(f.negate().negate(), f.clone());
        prop_assert_eq!(f.negate().vars(), f.vars());
    }

    #[test]
    fn tense_printing_round_trips(f in tense()) {
        prop_assert_eq!(TenseFormula::parse_canonical(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn bi_printing_round_trips(f in bi()) {
        prop_assert_eq!(BiFormula::parse_canonical(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn tense_simplify_keeps_atoms_and_meaning(f in tense()) {
        let s = f.simplify();
        prop_assert!(s.vars().is_subset(&f.vars()));
        let cfg = SearchConfig { max_steps: 20_000, ..SearchConfig::with_bound(4) };
        let there = LabelledSequent::goal_right(TenseFormula::or(f.negate(), s.clone()));
        let back = LabelledSequent::goal_right(TenseFormula::or(s.negate(), f.clone()));
        prop_assert!(not_refuted(prove_kt(&there, &cfg).unwrap()), "{} -> {}", f, s);
        prop_assert!(not_refuted(prove_kt(&back, &cfg).unwrap()), "{} -> {}", s, f);
    }

    #[test]
    fn bi_simplify_keeps_atoms_and_meaning(f in bi()) {
        let s = f.simplify();
        prop_assert!(s.vars().is_subset(&f.vars()));
        let cfg = SearchConfig { max_steps: 20_000, ..SearchConfig::with_bound(4) };
        prop_assert!(not_refuted(prove_bi(&LabelledSequent::goal_both(f.clone(), s.clone()), &cfg).unwrap()), "{} -> {}", f, s);
        prop_assert!(not_refuted(prove_bi(&LabelledSequent::goal_both(s.clone(), f.clone()), &cfg).unwrap()), "{} -> {}", s, f);
    }

    #[test]
    fn entailment_is_never_refuted(a in bi(), b in bi()) {
        prop_assert!(a.entails(&a));
        if a.entails(&b) {
            let cfg = SearchConfig { max_steps: 20_000, ..SearchConfig::with_bound(4) };
            prop_assert!(not_refuted(prove_bi(&LabelledSequent::goal_both(a.clone(), b.clone()), &cfg).unwrap()), "{} -> {}", a, b);
        }
    }

    #[test]
    fn tense_orthogonal_sizes(i in members(labelled(small_tense()), false)) {
        orthogonal_size_bound(&i)?;
    }

    #[test]
    fn bi_orthogonal_sizes(i in members(labelled(small_bi()), true)) {
        orthogonal_size_bound(&i)?;
    }

    #[test]
    fn absorption_keeps_a_minimal_cover(i in members(labelled(small_bi()), true)) {
        let a = i.absorbed();
        let within = |n: &FlatSequent<BiFormula>, m: &FlatSequent<BiFormula>| {
            n.left().iter().all(|o| m.left().contains(o)) && n.right().iter().all(|o| m.right().contains(o))
        };
        for m in i.iter() {
            prop_assert!(a.iter().any(|n| within(n, m)));
        }
        for m in a.iter() {
            prop_assert!(i.iter().any(|n| n == m));
            prop_assert!(!a.iter().any(|n| n != m && within(n, m)));
        }
    }

    #[test]
    fn interpolants_survive_json(i in members(labelled(small_bi()), true), t in members(labelled(small_tense()), false)) {
        prop_assert_eq!(interpolant_from_json::<BiFormula>(&interpolant_to_json(&i)).unwrap(), i);
        prop_assert_eq!(interpolant_from_json::<TenseFormula>(&interpolant_to_json(&t)).unwrap(), t);
    }
}
