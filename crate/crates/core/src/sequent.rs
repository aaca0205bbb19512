//! Labelled sequents, flat sequents and polarised sequents.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::formula::Formula;

/// A node name in the tree of a nested sequent.
///
/// The first six labels print as `x y z w u v`; later ones as `l6`, `l7`, ...
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(pub u32);

const NAMED: [&str; 6] = ["x", "y", "z", "w", "u", "v"];

impl Label {
    pub const ROOT: Label = Label(0);

    pub fn next(self) -> Label {
        Label(self.0 + 1)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match NAMED.get(self.0 as usize) {
            Some(name) => f.write_str(name),
            None => write!(f, "l{}", self.0),
        }
    }
}

impl FromStr for Label {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(i) = NAMED.iter().position(|n| *n == s) {
            return Ok(Label(i as u32));
        }
        s.strip_prefix('l')
            .and_then(|n| n.parse::<u32>().ok())
            .map(Label)
            .ok_or_else(|| format!("bad label `{s}` (expected one of x y z w u v or l<number>)"))
    }
}

/// The relational atom `R from to`: `to` is a child of `from`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RelAtom {
    pub from: Label,
    pub to: Label,
}

impl RelAtom {
    pub fn new(from: Label, to: Label) -> Self {
        RelAtom { from, to }
    }
}

impl fmt::Display for RelAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R{}{}", self.from, self.to)
    }
}

/// A formula placed at a label.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Labelled<F> {
    pub label: Label,
    pub formula: F,
}

impl<F> Labelled<F> {
    pub fn new(label: Label, formula: F) -> Self {
        Labelled { label, formula }
    }
}

impl<F: fmt::Display> fmt::Display for Labelled<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.label, self.formula)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left,
    Right,
}

/// Which half of a split sequent an occurrence belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Part {
    One,
    Two,
}

impl Part {
    pub fn flip(self) -> Part {
        match self {
            Part::One => Part::Two,
            Part::Two => Part::One,
        }
    }

    pub fn number(self) -> u8 {
        match self {
            Part::One => 1,
            Part::Two => 2,
        }
    }
}

/// A labelled sequent `R, left |- right`. Tense sequents are one-sided and
/// keep `left` empty.
///
/// `parts`, when present, holds one marker per occurrence: first for every
/// left occurrence in order, then for every right occurrence.
///
/// Equality is multiset equality of relational atoms and of (occurrence,
/// marker) pairs on each side.
#[derive(Clone, Debug)]
pub struct LabelledSequent<F> {
    pub rel: Vec<RelAtom>,
    pub left: Vec<Labelled<F>>,
    pub right: Vec<Labelled<F>>,
    pub parts: Option<Vec<Part>>,
}

impl<F> Default for LabelledSequent<F> {
    fn default() -> Self {
        LabelledSequent {
            rel: Vec::new(),
            left: Vec::new(),
            right: Vec::new(),
            parts: None,
        }
    }
}

type SideKey<'a, F> = Vec<(&'a Labelled<F>, Option<Part>)>;

impl<F: Formula> LabelledSequent<F> {
    pub fn new(rel: Vec<RelAtom>, left: Vec<Labelled<F>>, right: Vec<Labelled<F>>) -> Self {
        LabelledSequent {
            rel,
            left,
            right,
            parts: None,
        }
    }

    /// `|- x: f` with the root label.
    pub fn goal_right(f: F) -> Self {
        Self::new(Vec::new(), Vec::new(), vec![Labelled::new(Label::ROOT, f)])
    }

    /// `x: a |- x: b` with the root label.
    pub fn goal_both(a: F, b: F) -> Self {
        Self::new(
            Vec::new(),
            vec![Labelled::new(Label::ROOT, a)],
            vec![Labelled::new(Label::ROOT, b)],
        )
    }

    pub fn side(&self, side: Side) -> &[Labelled<F>] {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    pub fn part_of(&self, side: Side, index: usize) -> Option<Part> {
        let parts = self.parts.as_ref()?;
        match side {
            Side::Left => parts.get(index).copied(),
            Side::Right => parts.get(self.left.len() + index).copied(),
        }
    }

    /// Every label mentioned by a relational atom or an occurrence.
    pub fn labels(&self) -> BTreeSet<Label> {
        let mut out = BTreeSet::new();
        for r in &self.rel {
            out.insert(r.from);
            out.insert(r.to);
        }
        for o in self.left.iter().chain(&self.right) {
            out.insert(o.label);
        }
        out
    }

    pub fn max_label(&self) -> Option<Label> {
        self.labels().into_iter().next_back()
    }

    pub fn has_rel(&self, from: Label, to: Label) -> bool {
        self.rel.contains(&RelAtom::new(from, to))
    }

    pub fn contains(&self, side: Side, occ: &Labelled<F>) -> bool {
        self.side(side).contains(occ)
    }

    pub fn occurrence_count(&self) -> usize {
        self.left.len() + self.right.len()
    }

    fn side_key(&self, side: Side) -> SideKey<'_, F> {
        let mut key: SideKey<'_, F> = self
            .side(side)
            .iter()
            .enumerate()
            .map(|(i, o)| (o, self.part_of(side, i)))
            .collect();
        key.sort();
        key
    }

    /// Multiset equality ignoring partition markers.
    pub fn same_multisets(&self, other: &Self) -> bool {
        fn sorted<T: Ord + Clone>(v: &[T]) -> Vec<T> {
            let mut v = v.to_vec();
            v.sort();
            v
        }
        sorted(&self.rel) == sorted(&other.rel)
            && sorted(&self.left) == sorted(&other.left)
            && sorted(&self.right) == sorted(&other.right)
    }

    /// Drops the partition markers.
    pub fn unmarked(&self) -> Self {
        LabelledSequent {
            parts: None,
            ..self.clone()
        }
    }

    /// Replaces every occurrence of `y` by `x`.
    pub fn substitute_label(&self, x: Label, y: Label) -> Self {
        let sub = |l: Label| if l == y { x } else { l };
        LabelledSequent {
            rel: self
                .rel
                .iter()
                .map(|r| RelAtom::new(sub(r.from), sub(r.to)))
                .collect(),
            left: self
                .left
                .iter()
                .map(|o| Labelled::new(sub(o.label), o.formula.clone()))
                .collect(),
            right: self
                .right
                .iter()
                .map(|o| Labelled::new(sub(o.label), o.formula.clone()))
                .collect(),
            parts: self.parts.clone(),
        }
    }

    /// Forgets relational atoms.
    pub fn flatten(&self) -> FlatSequent<F> {
        FlatSequent::new(self.left.clone(), self.right.clone())
    }
}

impl<F: Formula> PartialEq for LabelledSequent<F> {
    fn eq(&self, other: &Self) -> bool {
        let mut a = self.rel.clone();
        let mut b = other.rel.clone();
        a.sort();
        b.sort();
        a == b
            && self.parts.is_some() == other.parts.is_some()
            && self.side_key(Side::Left) == other.side_key(Side::Left)
            && self.side_key(Side::Right) == other.side_key(Side::Right)
    }
}

impl<F: Formula> Eq for LabelledSequent<F> {}

impl<F: Formula> fmt::Display for LabelledSequent<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut items: Vec<String> = self.rel.iter().map(ToString::to_string).collect();
        items.extend(self.left.iter().map(ToString::to_string));
        write!(f, "{} |- ", items.join(", "))?;
        let right: Vec<String> = self.right.iter().map(ToString::to_string).collect();
        write!(f, "{}", right.join(", "))
    }
}

/// Checks that the relational atoms, together with the labels of the
/// occurrences, form a single tree when edge directions are ignored.
pub fn validate_polytree<F: Formula>(seq: &LabelledSequent<F>) -> Result<(), String> {
    let labels = seq.labels();
    if labels.is_empty() {
        return Ok(());
    }
    let mut parent: BTreeMap<Label, Label> = labels.iter().map(|&l| (l, l)).collect();
    fn find(parent: &mut BTreeMap<Label, Label>, l: Label) -> Label {
        let mut root = l;
        while parent[&root] != root {
            root = parent[&root];
        }
        parent.insert(l, root);
        root
    }
    for r in &seq.rel {
        if r.from == r.to {
            return Err(format!("self-loop {r}"));
        }
        let a = find(&mut parent, r.from);
        let b = find(&mut parent, r.to);
        if a == b {
            return Err(format!("{r} closes an undirected cycle"));
        }
        parent.insert(a, b);
    }
    let roots: BTreeSet<Label> = labels.iter().map(|&l| find(&mut parent, l)).collect();
    if roots.len() > 1 {
        return Err(format!(
            "labels fall into {} disconnected components",
            roots.len()
        ));
    }
    Ok(())
}

/// A sequent without relational atoms. Both sides are kept sorted, so the
/// derived equality and ordering are those of multisets.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FlatSequent<F> {
    left: Vec<Labelled<F>>,
    right: Vec<Labelled<F>>,
}

impl<F: Formula> FlatSequent<F> {
    pub fn new(mut left: Vec<Labelled<F>>, mut right: Vec<Labelled<F>>) -> Self {
        left.sort();
        right.sort();
        FlatSequent { left, right }
    }

    pub fn empty() -> Self {
        FlatSequent {
            left: Vec::new(),
            right: Vec::new(),
        }
    }

    pub fn right_only(right: Vec<Labelled<F>>) -> Self {
        Self::new(Vec::new(), right)
    }

    pub fn left(&self) -> &[Labelled<F>] {
        &self.left
    }

    pub fn right(&self) -> &[Labelled<F>] {
        &self.right
    }

    pub fn is_empty(&self) -> bool {
        self.left.is_empty() && self.right.is_empty()
    }

    pub fn len(&self) -> usize {
        self.left.len() + self.right.len()
    }

    pub fn labels(&self) -> BTreeSet<Label> {
        self.left
            .iter()
            .chain(&self.right)
            .map(|o| o.label)
            .collect()
    }

    pub fn with_left(&self, extra: Labelled<F>) -> Self {
        let mut left = self.left.clone();
        left.push(extra);
        Self::new(left, self.right.clone())
    }

    pub fn with_right(&self, extra: Labelled<F>) -> Self {
        let mut right = self.right.clone();
        right.push(extra);
        Self::new(self.left.clone(), right)
    }

    /// Removes every occurrence at `label`.
    pub fn without_label(&self, label: Label) -> Self {
        FlatSequent {
            left: self
                .left
                .iter()
                .filter(|o| o.label != label)
                .cloned()
                .collect(),
            right: self
                .right
                .iter()
                .filter(|o| o.label != label)
                .cloned()
                .collect(),
        }
    }

    /// Lifts to a labelled sequent with relational atoms `rel`.
    pub fn with_rel(&self, rel: Vec<RelAtom>) -> LabelledSequent<F> {
        LabelledSequent::new(rel, self.left.clone(), self.right.clone())
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for o in self.left.iter().chain(&self.right) {
            o.formula.collect_vars(&mut out);
        }
        out
    }
}

impl<F: Formula> fmt::Display for FlatSequent<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let left: Vec<String> = self.left.iter().map(ToString::to_string).collect();
        let right: Vec<String> = self.right.iter().map(ToString::to_string).collect();
        match (left.is_empty(), right.is_empty()) {
            (true, true) => f.write_str("|-"),
            (true, false) => write!(f, "|- {}", right.join(", ")),
            (false, true) => write!(f, "{} |-", left.join(", ")),
            (false, false) => write!(f, "{} |- {}", left.join(", "), right.join(", ")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Polarity {
    L,
    R,
}

impl Polarity {
    pub fn dual(self) -> Polarity {
        match self {
            Polarity::L => Polarity::R,
            Polarity::R => Polarity::L,
        }
    }
}

/// A flat sequent with its two sides merged into one multiset of polarised
/// occurrences. Kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PolarisedSequent<F> {
    items: Vec<(Labelled<F>, Polarity)>,
}

impl<F: Formula> PolarisedSequent<F> {
    pub fn new(mut items: Vec<(Labelled<F>, Polarity)>) -> Self {
        items.sort();
        PolarisedSequent { items }
    }

    pub fn items(&self) -> &[(Labelled<F>, Polarity)] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

pub fn polarise<F: Formula>(s: &FlatSequent<F>) -> PolarisedSequent<F> {
    let items = s
        .left
        .iter()
        .map(|o| (o.clone(), Polarity::L))
        .chain(s.right.iter().map(|o| (o.clone(), Polarity::R)))
        .collect();
    PolarisedSequent::new(items)
}

pub fn depolarise<F: Formula>(s: &PolarisedSequent<F>) -> FlatSequent<F> {
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (o, pol) in &s.items {
        match pol {
            Polarity::L => left.push(o.clone()),
            Polarity::R => right.push(o.clone()),
        }
    }
    FlatSequent::new(left, right)
}
