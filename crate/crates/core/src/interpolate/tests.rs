use super::*;
use crate::certify::{check_bi, check_kt, CheckMode};
use crate::formula::{parse_bi, parse_tense, BiFormula as B, TenseFormula as T};
use crate::path_system::{DiamondKind, PathAxiomSystem};
use crate::proof::{Principal, Proof, RuleTag};
use crate::prover::{prove_bi, SearchConfig};
use crate::sequent::{FlatSequent, Label, Labelled, LabelledSequent, Part};

const X: Label = Label(0);
const Y: Label = Label(1);
const Z: Label = Label(2);
const U: Label = Label(4);
const V: Label = Label(5);

fn at<F>(l: Label, f: F) -> Labelled<F> {
    Labelled::new(l, f)
}

fn tense(text: &str) -> T {
    parse_tense(text).unwrap().normalize()
}

fn bi(text: &str) -> B {
    parse_bi(text).unwrap()
}

fn right<F: crate::formula::Formula>(items: Vec<Labelled<F>>) -> FlatSequent<F> {
    FlatSequent::right_only(items)
}

fn set<F: crate::formula::Formula>(members: Vec<FlatSequent<F>>) -> Interpolant<F> {
    members.into_iter().collect()
}

#[test]
fn tense_orthogonal_of_two_members() {
    let (a, b, c, d) = (T::atom("a"), T::atom("b"), T::atom("c"), T::atom("d"));
    let i = set(vec![
        right(vec![at(X, a.clone()), at(Y, b.clone())]),
        right(vec![at(X, c.clone()), at(Z, d.clone())]),
    ]);
    let expected = set(vec![
        right(vec![at(X, a.negate()), at(X, c.negate())]),
        right(vec![at(X, a.negate()), at(Z, d.negate())]),
        right(vec![at(Y, b.negate()), at(X, c.negate())]),
        right(vec![at(Y, b.negate()), at(Z, d.negate())]),
    ]);
    assert_eq!(orthogonal_tense(&i), expected);
}

#[test]
fn orthogonal_degenerate_cases() {
    let single = set(vec![right(vec![at(X, T::atom("p"))])]);
    assert_eq!(
        orthogonal_tense(&single),
        set(vec![right(vec![at(X, T::neg_atom("p"))])])
    );
    assert_eq!(
        orthogonal_tense(&Interpolant::empty()),
        set(vec![FlatSequent::empty()])
    );
    assert_eq!(
        orthogonal_tense(&set(vec![FlatSequent::empty()])),
        Interpolant::empty()
    );
    assert_eq!(
        orthogonal_bi(&Interpolant::empty()),
        set(vec![FlatSequent::empty()])
    );
}

#[test]
fn bi_orthogonal_moves_occurrences_across() {
    let (a, b, c, d) = (B::atom("a"), B::atom("b"), B::atom("c"), B::atom("d"));
    let i = set(vec![
        FlatSequent::new(vec![at(X, a.clone())], vec![at(Y, b.clone())]),
        FlatSequent::new(vec![], vec![at(U, c.clone()), at(V, d.clone())]),
    ]);
    let expected = set(vec![
        FlatSequent::new(vec![at(U, c.clone())], vec![at(X, a.clone())]),
        FlatSequent::new(vec![at(V, d.clone())], vec![at(X, a.clone())]),
        FlatSequent::new(vec![at(Y, b.clone()), at(U, c.clone())], vec![]),
        FlatSequent::new(vec![at(Y, b.clone()), at(V, d.clone())], vec![]),
    ]);
    assert_eq!(orthogonal_bi(&i), expected);

    let left_p = set(vec![FlatSequent::new(vec![at(X, B::atom("p"))], vec![])]);
    assert_eq!(
        orthogonal_bi(&left_p),
        set(vec![FlatSequent::new(vec![], vec![at(X, B::atom("p"))])])
    );
}

#[test]
fn uncollapsed_size_is_product_of_member_sizes() {
    let p = T::atom("p");
    let i = set(vec![
        right(vec![at(X, p.clone()), at(Y, p.clone())]),
        right(vec![at(X, p.clone()), at(Y, p.clone()), at(Z, p.clone())]),
    ]);
    assert_eq!(orthogonal_uncollapsed(&i).len(), 6);
    assert!(orthogonal(&i).len() <= 6);
}

#[test]
fn repeated_picks_collapse_within_a_member() {
    let (a, b) = (T::atom("a"), T::atom("b"));
    let i = set(vec![
        right(vec![at(X, a.clone())]),
        right(vec![at(X, a.clone()), at(Y, b.clone())]),
    ]);
    let expected = set(vec![
        right(vec![at(X, a.negate())]),
        right(vec![at(X, a.negate()), at(Y, b.negate())]),
    ]);
    assert_eq!(orthogonal(&i), expected);
    duality_checks_tense(&i);
}

#[test]
fn box_transform_examples() {
    let inner = set(vec![right(vec![at(Y, tense("<><>top"))])]);
    assert_eq!(
        box_transform(&inner, X, Y, DiamondKind::White),
        set(vec![right(vec![at(X, tense("[]<><>top"))])])
    );

    let w = Label(3);
    let bot = set(vec![right(vec![at(w, T::Bot)])]);
    assert_eq!(
        box_transform(&bot, Z, w, DiamondKind::White),
        set(vec![right(vec![at(Z, tense("[]bot"))])])
    );

    let untouched = set(vec![right(vec![at(Z, T::atom("c"))])]);
    assert_eq!(
        box_transform(&untouched, X, Y, DiamondKind::Black),
        set(vec![right(vec![
            at(Z, T::atom("c")),
            at(X, T::bbox(T::Bot))
        ])])
    );
}

#[test]
fn implication_and_exclusion_transforms() {
    let b = B::atom("b");
    let i = set(vec![FlatSequent::new(vec![], vec![at(Y, b.clone())])]);
    assert_eq!(
        imp_transform(&i, X, Y),
        set(vec![FlatSequent::new(
            vec![],
            vec![at(X, B::imp(B::Top, b))]
        )])
    );

    let a = B::atom("a");
    let i = set(vec![FlatSequent::new(vec![at(Y, a.clone())], vec![])]);
    assert_eq!(
        excl_transform(&i, X, Y),
        set(vec![FlatSequent::new(
            vec![at(X, B::excl(a, B::Bot))],
            vec![]
        )])
    );

    let e = B::atom("e");
    let i = set(vec![FlatSequent::new(vec![at(U, e.clone())], vec![])]);
    assert_eq!(
        imp_transform(&i, X, Y),
        set(vec![FlatSequent::new(
            vec![at(U, e)],
            vec![at(X, B::imp(B::Top, B::Bot))]
        )])
    );
}

#[test]
fn formula_extraction() {
    let golden = set(vec![right(vec![at(X, tense("[]<><>top"))])]);
    assert_eq!(formula_of_tense(&golden, X).unwrap(), tense("[]<><>top"));
    let i = set(vec![
        right(vec![at(X, T::atom("a")), at(X, T::atom("b"))]),
        right(vec![at(X, T::atom("c"))]),
    ]);
    assert_eq!(formula_of_tense(&i, X).unwrap(), tense("(a | b) & c"));
    assert_eq!(formula_of_tense(&Interpolant::empty(), X).unwrap(), T::Top);
    assert_eq!(
        formula_of_tense(&set(vec![FlatSequent::empty()]), X).unwrap(),
        T::Bot
    );
    let mixed = set(vec![right(vec![at(Y, T::atom("a"))])]);
    assert_eq!(
        formula_of_tense(&mixed, X),
        Err(InterpolateError::MixedLabels { expected: X })
    );

    let left_p = set(vec![FlatSequent::new(vec![at(X, bi("p"))], vec![])]);
    assert_eq!(formula_of_bi(&left_p, X).unwrap(), bi("p -> bot"));
    let right_q = set(vec![FlatSequent::new(vec![], vec![at(X, bi("q"))])]);
    assert_eq!(formula_of_bi(&right_q, X).unwrap(), bi("top -> q"));
    let two = set(vec![
        FlatSequent::new(vec![at(X, bi("p"))], vec![at(X, bi("q"))]),
        FlatSequent::new(vec![], vec![at(X, bi("r"))]),
    ]);
    assert_eq!(formula_of_bi(&two, X).unwrap(), bi("(top -> r) & (p -> q)"));
}

fn kt_id(neg: Part, pos: Part) -> Interpolant<T> {
    let seq = LabelledSequent::new(
        vec![],
        vec![],
        vec![at(X, T::neg_atom("p")), at(X, T::atom("p"))],
    );
    let principal = Principal {
        right: seq.right.clone(),
        ..Default::default()
    };
    let proof = Proof::leaf(seq, RuleTag::Id, principal);
    interpolate_kt(&proof, &SplitSpec::new(vec![neg, pos])).unwrap()
}

#[test]
fn tense_identity_leaves() {
    assert_eq!(
        kt_id(Part::One, Part::Two),
        set(vec![right(vec![at(X, T::atom("p"))])])
    );
    assert_eq!(
        kt_id(Part::Two, Part::Two),
        set(vec![right(vec![at(X, T::Top)])])
    );
    assert_eq!(
        kt_id(Part::Two, Part::One),
        set(vec![right(vec![at(X, T::neg_atom("p"))])])
    );
    assert_eq!(
        kt_id(Part::One, Part::One),
        set(vec![right(vec![at(X, T::Bot)])])
    );
}

fn bi_leaf(
    left: Vec<Labelled<B>>,
    right: Vec<Labelled<B>>,
    rule: RuleTag,
    parts: Vec<Part>,
) -> Interpolant<B> {
    let seq = LabelledSequent::new(vec![], left.clone(), right.clone());
    let proof = Proof::leaf(
        seq,
        rule,
        Principal {
            left,
            right,
            ..Default::default()
        },
    );
    interpolate_bi(
        &proof,
        &SplitSpec::new(parts),
        InterpolateOptions::default(),
    )
    .unwrap()
}

#[test]
fn bi_leaves() {
    let p = || vec![at(X, bi("p"))];
    assert_eq!(
        bi_leaf(p(), p(), RuleTag::Id, vec![Part::Two, Part::One]),
        set(vec![FlatSequent::new(vec![at(X, bi("p"))], vec![])])
    );
    assert_eq!(
        bi_leaf(p(), p(), RuleTag::Id, vec![Part::One, Part::Two]),
        set(vec![FlatSequent::new(vec![], vec![at(X, bi("p"))])])
    );
    assert_eq!(
        bi_leaf(vec![at(X, B::Bot)], vec![], RuleTag::Bot, vec![Part::Two]),
        set(vec![FlatSequent::new(vec![], vec![at(X, B::Top)])])
    );
    assert_eq!(
        bi_leaf(vec![], vec![at(X, B::Top)], RuleTag::Top, vec![Part::One]),
        set(vec![FlatSequent::new(vec![at(X, B::Top)], vec![])])
    );
}

#[test]
fn split_must_cover_conclusion() {
    let seq = LabelledSequent::goal_right(T::Top);
    let proof = Proof::leaf(
        seq.clone(),
        RuleTag::Top,
        Principal::right(seq.right[0].clone()),
    );
    assert_eq!(
        interpolate_kt(&proof, &SplitSpec::new(vec![])),
        Err(InterpolateError::SplitMismatch {
            expected: 1,
            found: 0
        })
    );
}

#[test]
fn malformed_proof_is_reported() {
    let seq = LabelledSequent::goal_right(tense("p | q"));
    let proof = Proof::leaf(
        seq.clone(),
        RuleTag::Or,
        Principal::right(seq.right[0].clone()),
    );
    assert!(matches!(
        interpolate_kt(&proof, &SplitSpec::new(vec![Part::Two])),
        Err(InterpolateError::MalformedProof { .. })
    ));
}

#[test]
fn worked_example_interpolant() {
    let sys = PathAxiomSystem::parse("dd -> d", false).unwrap();
    let cfg = SearchConfig::with_bound(8).with_system(sys.clone());
    let r = craig_tense(&tense("[]<>~q"), &tense("[](<>~p | <><>p)"), &cfg).unwrap();
    assert_eq!(r.c, tense("[]<><>top"));
    assert!(r.c.vars().is_empty());
    assert!(check_kt(&r.proof_ac, &sys, CheckMode::Core, &[]).ok);
    assert!(check_kt(&r.proof_cb, &sys, CheckMode::Core, &[]).ok);
}

#[test]
fn small_tense_pipelines() {
    let cfg = SearchConfig::default();
    let r = craig_tense(&tense("p"), &tense("p"), &cfg).unwrap();
    assert!(r.c.vars().is_subset(&["p".to_string()].into()));
    let r = craig_tense(&tense("p & q"), &tense("p | r"), &cfg).unwrap();
    assert!(r.c.vars().is_subset(&["p".to_string()].into()));
    assert!(matches!(
        craig_tense(&tense("p"), &tense("q"), &cfg),
        Err(CraigError::NotProved(_))
    ));
}

#[test]
fn small_bi_pipelines() {
    let cfg = SearchConfig::default();
    let opts = InterpolateOptions::default();
    {
        let r = craig_bi(&bi("p & q"), &bi("q | r"), &cfg, opts).unwrap();
        assert!(r.c.vars().is_subset(&["q".to_string()].into()), "{}", r.c);
        craig_bi(&bi("p"), &bi("p"), &cfg, opts).unwrap();
        craig_bi(&bi("p -< q"), &bi("p -< (q & r)"), &cfg, opts).unwrap();
        craig_bi(&bi("(p -< q) & s"), &bi("(top -< q) | t"), &cfg, opts).unwrap();
        assert!(matches!(
            craig_bi(&bi("p"), &bi("q"), &cfg, opts),
            Err(CraigError::NotProved(_))
        ));
    }
}

#[test]
fn exclr_principal_in_part1_leaks() {
    let cfg = SearchConfig::default();
    let (a, b) = (bi("p -< q"), bi("p -< (q & r)"));
    let moved = InterpolateOptions {
        exclr_principal_part1: true,
        ..Default::default()
    };
    assert!(matches!(
        craig_bi(&a, &b, &cfg, moved),
        Err(CraigError::InterpolantReproofFailed { .. })
    ));
    let r = craig_bi(&a, &b, &cfg, InterpolateOptions::default()).unwrap();
    assert!(r
        .c
        .vars()
        .is_subset(&["p".to_string(), "q".to_string()].into()));
}

fn duality_checks_tense(i: &Interpolant<T>) {
    let proof = duality_derivation(i);
    let assumptions: Vec<_> = i
        .iter()
        .chain(orthogonal(i).iter())
        .map(|m| m.with_rel(vec![]))
        .collect();
    let report = check_kt(
        &proof,
        &PathAxiomSystem::default(),
        CheckMode::Extended,
        &assumptions,
    );
    assert!(report.ok, "{i}: {:?}", report.failures);
    assert!(proof.conclusion.right.is_empty() && proof.conclusion.left.is_empty());
}

#[test]
fn duality_derivations() {
    duality_checks_tense(&set(vec![right(vec![at(X, T::atom("p"))])]));
    duality_checks_tense(&set(vec![right(vec![
        at(X, T::atom("a")),
        at(Y, T::atom("b")),
    ])]));
    duality_checks_tense(&set(vec![
        right(vec![at(X, T::atom("a")), at(Y, T::atom("b"))]),
        right(vec![at(X, T::atom("c")), at(Z, tense("[]d"))]),
    ]));
    duality_checks_tense(&Interpolant::empty());
    duality_checks_tense(&set(vec![
        FlatSequent::empty(),
        right(vec![at(X, T::atom("a"))]),
    ]));

    let i = set(vec![FlatSequent::new(vec![at(X, bi("p"))], vec![])]);
    let proof = duality_derivation(&i);
    assert_eq!(proof.rule, RuleTag::Cut2);
    let assumptions: Vec<_> = i
        .iter()
        .chain(orthogonal(&i).iter())
        .map(|m| m.with_rel(vec![]))
        .collect();
    assert!(check_bi(&proof, CheckMode::Extended, &assumptions).ok);
}

#[test]
fn interpolant_of_bi_projection_is_checked_by_reproof() {
    let goal = LabelledSequent::goal_both(bi("p & q"), bi("q"));
    let proof = prove_bi(&goal, &SearchConfig::default())
        .unwrap()
        .proof()
        .unwrap();
    let i = interpolate_bi(
        &proof,
        &SplitSpec::new(vec![Part::One, Part::Two]),
        InterpolateOptions::default(),
    )
    .unwrap();
    assert!(i.vars().is_subset(&["q".to_string()].into()));
    assert!(i.labels().iter().all(|&l| l == X));
}

#[test]
fn absorption_keeps_one_of_mutually_included_members() {
    let (q, bot) = (tense("[]q"), tense("[]bot"));
    let i = set(vec![
        right(vec![at(X, q.clone()), at(X, bot.clone())]),
        right(vec![
            at(X, q.clone()),
            at(X, bot.clone()),
            at(X, bot.clone()),
        ]),
        right(vec![
            at(X, q.clone()),
            at(X, bot.clone()),
            at(X, tense("p")),
        ]),
    ]);
    assert_eq!(i.absorbed(), set(vec![right(vec![at(X, q), at(X, bot)])]));
}
