//! Context-free-language reachability by worklist saturation.
//!
//! A fact `(A, u, v)` records that some path from `u` to `v` spells a word
//! derivable from nonterminal `A`. Each fact keeps a back-pointer to the
//! facts it was built from, so a witness path can be rebuilt on demand.

use std::collections::HashMap;

use super::{nt_of, DiamondKind, Nt, Path, PathAxiomSystem, PropagationGraph};
use crate::sequent::Label;

#[derive(Clone, Copy, Debug)]
enum Origin {
    Edge(DiamondKind),
    Unit(usize),
    Join(usize, usize),
}

#[derive(Clone, Copy, Debug)]
struct Fact {
    nt: Nt,
    from: usize,
    to: usize,
    origin: Origin,
}

/// Counters from one saturation run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SaturationStats {
    pub facts: usize,
    /// Nonterminals times nodes squared: no run can exceed this.
    pub bound: usize,
}

/// The saturated fact table for one graph and one axiom system.
#[derive(Clone, Debug)]
pub struct Reachability {
    labels: Vec<Label>,
    index: HashMap<Label, usize>,
    facts: Vec<Fact>,
    known: HashMap<(Nt, usize, usize), usize>,
    nt_count: usize,
}

impl Reachability {
    pub fn compute(g: &PropagationGraph, sys: &PathAxiomSystem) -> Self {
        let grammar = sys.grammar();
        let labels: Vec<Label> = g.nodes().iter().copied().collect();
        let index: HashMap<Label, usize> =
            labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let n = labels.len();
        let nts = grammar.nt_count;

        let mut by_left: Vec<Vec<(Nt, Nt)>> = vec![Vec::new(); nts];
        let mut by_right: Vec<Vec<(Nt, Nt)>> = vec![Vec::new(); nts];
        for &(a, b, c) in &grammar.binary {
            by_left[b].push((a, c));
            by_right[c].push((a, b));
        }

        let mut table = Reachability {
            labels,
            index,
            facts: Vec::new(),
            known: HashMap::new(),
            nt_count: nts,
        };
        // Facts indexed by (nt, from) and by (nt, to).
        let mut out_of: Vec<Vec<usize>> = vec![Vec::new(); nts * n];
        let mut into: Vec<Vec<usize>> = vec![Vec::new(); nts * n];
        let mut queue: Vec<usize> = Vec::new();

        let add = |table: &mut Reachability,
                   out_of: &mut Vec<Vec<usize>>,
                   into: &mut Vec<Vec<usize>>,
                   queue: &mut Vec<usize>,
                   nt: Nt,
                   from: usize,
                   to: usize,
                   origin: Origin| {
            if table.known.contains_key(&(nt, from, to)) {
                return;
            }
            let id = table.facts.len();
            table.facts.push(Fact {
                nt,
                from,
                to,
                origin,
            });
            table.known.insert((nt, from, to), id);
            out_of[nt * n + from].push(id);
            into[nt * n + to].push(id);
            queue.push(id);
            for &a in &grammar.unit_closure[nt] {
                if a != nt && !table.known.contains_key(&(a, from, to)) {
                    let uid = table.facts.len();
                    table.facts.push(Fact {
                        nt: a,
                        from,
                        to,
                        origin: Origin::Unit(id),
                    });
                    table.known.insert((a, from, to), uid);
                    out_of[a * n + from].push(uid);
                    into[a * n + to].push(uid);
                    queue.push(uid);
                }
            }
        };

        for &(u, v, k) in g.edges() {
            let (u, v) = (table.index[&u], table.index[&v]);
            add(
                &mut table,
                &mut out_of,
                &mut into,
                &mut queue,
                nt_of(k),
                u,
                v,
                Origin::Edge(k),
            );
        }

        while let Some(id) = queue.pop() {
            let Fact {
                nt: b,
                from: u,
                to: v,
                ..
            } = table.facts[id];
            // A -> B C with this fact as B
            for &(a, c) in &by_left[b] {
                let partners = out_of[c * n + v].clone();
                for p in partners {
                    let w = table.facts[p].to;
                    add(
                        &mut table,
                        &mut out_of,
                        &mut into,
                        &mut queue,
                        a,
                        u,
                        w,
                        Origin::Join(id, p),
                    );
                }
            }
            // A -> C B with this fact as B
            for &(a, c) in &by_right[b] {
                let partners = into[c * n + u].clone();
                for p in partners {
                    let w = table.facts[p].from;
                    add(
                        &mut table,
                        &mut out_of,
                        &mut into,
                        &mut queue,
                        a,
                        w,
                        v,
                        Origin::Join(p, id),
                    );
                }
            }
        }
        table
    }

    pub fn stats(&self) -> SaturationStats {
        SaturationStats {
            facts: self.facts.len(),
            bound: self.nt_count * self.labels.len().pow(2),
        }
    }

    fn lookup(&self, x: Label, y: Label, kind: DiamondKind) -> Option<usize> {
        let (&u, &v) = (self.index.get(&x)?, self.index.get(&y)?);
        self.known.get(&(nt_of(kind), u, v)).copied()
    }

    /// Whether some path from `x` to `y` spells a word completing to `kind`.
    pub fn reachable(&self, x: Label, y: Label, kind: DiamondKind) -> bool {
        self.lookup(x, y, kind).is_some()
    }

    /// Every `y` reachable from `x` for `kind`, in label order.
    pub fn targets(&self, x: Label, kind: DiamondKind) -> Vec<Label> {
        let mut out: Vec<Label> = self
            .labels
            .iter()
            .copied()
            .filter(|&y| self.reachable(x, y, kind))
            .collect();
        out.sort();
        out
    }

    /// A path witnessing `reachable(x, y, kind)`.
    pub fn witness(&self, x: Label, y: Label, kind: DiamondKind) -> Option<Path> {
        let id = self.lookup(x, y, kind)?;
        let mut path = Path::new(x);
        let mut stack = vec![id];
        while let Some(f) = stack.pop() {
            let fact = self.facts[f];
            match fact.origin {
                Origin::Edge(k) => path.push(k, self.labels[fact.to]),
                Origin::Unit(child) => stack.push(child),
                Origin::Join(l, r) => {
                    stack.push(r);
                    stack.push(l);
                }
            }
        }
        Some(path)
    }
}

/// One-shot query: saturates and looks up.
pub fn reachable(
    x: Label,
    y: Label,
    kind: DiamondKind,
    g: &PropagationGraph,
    sys: &PathAxiomSystem,
) -> bool {
    Reachability::compute(g, sys).reachable(x, y, kind)
}

/// One-shot query returning a witness path.
pub fn find_path(
    x: Label,
    y: Label,
    kind: DiamondKind,
    g: &PropagationGraph,
    sys: &PathAxiomSystem,
) -> Option<Path> {
    Reachability::compute(g, sys).witness(x, y, kind)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::path_system::{oracle_reachable, PathAxiom};
    use crate::sequent::RelAtom;
    use proptest::prelude::*;
    use DiamondKind::{Black, White};

    const X: Label = Label(0);
    const Y: Label = Label(1);
    const Z: Label = Label(2);
    const W: Label = Label(3);

    fn chain() -> PropagationGraph {
        PropagationGraph::from_parts(
            [],
            &[RelAtom::new(X, Y), RelAtom::new(Y, Z), RelAtom::new(Z, W)],
        )
    }

    #[test]
    fn transitive_chain() {
        let sys = PathAxiomSystem::new(["dd -> d".parse().unwrap()], false);
        let r = Reachability::compute(&chain(), &sys);
        assert!(r.reachable(Y, W, White));
        let p = r.witness(Y, W, White).unwrap();
        assert_eq!(p.to_tokens(), vec!["y", "d", "z", "d", "w"]);
        assert!(!r.reachable(W, Y, White));
        assert!(!r.reachable(Y, W, Black));
    }

    #[test]
    fn base_and_negative_cases() {
        let g = PropagationGraph::from_parts([], &[RelAtom::new(X, Y)]);
        let sys = PathAxiomSystem::default();
        assert!(reachable(X, Y, White, &g, &sys));
        assert!(!reachable(X, Y, Black, &g, &sys));
        assert!(reachable(Y, X, Black, &g, &sys));
        assert!(!reachable(X, X, White, &g, &sys));
        assert!(find_path(X, Y, Black, &g, &sys).is_none());
    }

    #[test]
    fn repeated_nodes_allowed() {
        // d b -> d lets x see itself via y.
        let sys = PathAxiomSystem::new(["db -> d".parse().unwrap()], false);
        let g = PropagationGraph::from_parts([], &[RelAtom::new(X, Y)]);
        let r = Reachability::compute(&g, &sys);
        assert!(r.reachable(X, X, White));
        assert_eq!(
            r.witness(X, X, White).unwrap().to_tokens(),
            vec!["x", "d", "y", "b", "x"]
        );
    }

    fn arb_kind() -> impl Strategy<Value = DiamondKind> {
        prop_oneof![Just(White), Just(Black)]
    }

    fn arb_system() -> impl Strategy<Value = PathAxiomSystem> {
        let ax = (prop::collection::vec(arb_kind(), 1..=3), arb_kind())
            .prop_map(|(p, t)| PathAxiom::new(p, t).unwrap());
        (prop::collection::vec(ax, 0..=3), any::<bool>())
            .prop_map(|(a, inv)| PathAxiomSystem::new(a, inv))
    }

    fn arb_graph() -> impl Strategy<Value = PropagationGraph> {
        (1u32..=6).prop_flat_map(|n| {
            prop::collection::vec((0..n, 0..n), 0..=6).prop_map(move |pairs| {
                let rel: Vec<RelAtom> = pairs
                    .into_iter()
                    .map(|(a, b)| RelAtom::new(Label(a), Label(b)))
                    .collect();
                PropagationGraph::from_parts((0..n).map(Label), &rel)
            })
        })
    }

    proptest! {
        #[test]
        fn saturation_agrees_with_enumeration(g in arb_graph(), sys in arb_system()) {
            let r = Reachability::compute(&g, &sys);
            let stats = r.stats();
            prop_assert!(stats.facts <= stats.bound);
            for &x in g.nodes() {
                for &y in g.nodes() {
                    for k in [White, Black] {
                        let fast = r.reachable(x, y, k);
                        if oracle_reachable(x, y, k, &g, &sys, 6) {
                            prop_assert!(fast);
                        }
                        if let Some(p) = r.witness(x, y, k) {
                            prop_assert!(fast);
                            prop_assert!(p.lies_in(&g));
                            prop_assert_eq!((p.start(), p.end()), (x, y));
                            prop_assert!(sys.completion_member(p.word(), k));
                            if p.len() <= 6 {
                                prop_assert!(oracle_reachable(x, y, k, &g, &sys, 6));
                            }
                        } else {
                            prop_assert!(!fast);
                        }
                    }
                }
            }
        }

        #[test]
        fn white_edges_always_reachable(g in arb_graph(), sys in arb_system()) {
            let r = Reachability::compute(&g, &sys);
            for &(a, b, k) in g.edges() {
                prop_assert!(r.reachable(a, b, k));
            }
        }
    }
}
