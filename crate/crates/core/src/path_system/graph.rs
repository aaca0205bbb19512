use std::collections::BTreeSet;
use std::fmt;

use super::{DiamondKind, PathAxiomSystem};
use crate::formula::Formula;
use crate::sequent::{Label, LabelledSequent, RelAtom};

/// Labels of a sequent with a white edge along every relational atom and a
/// black edge against it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropagationGraph {
    nodes: BTreeSet<Label>,
    edges: BTreeSet<(Label, Label, DiamondKind)>,
}

impl PropagationGraph {
    pub fn from_parts(nodes: impl IntoIterator<Item = Label>, rel: &[RelAtom]) -> Self {
        let mut nodes: BTreeSet<Label> = nodes.into_iter().collect();
        let mut edges = BTreeSet::new();
        for r in rel {
            nodes.insert(r.from);
            nodes.insert(r.to);
            edges.insert((r.from, r.to, DiamondKind::White));
            edges.insert((r.to, r.from, DiamondKind::Black));
        }
        PropagationGraph { nodes, edges }
    }

    pub fn build<F: Formula>(seq: &LabelledSequent<F>) -> Self {
        Self::from_parts(seq.labels(), &seq.rel)
    }

    pub fn nodes(&self) -> &BTreeSet<Label> {
        &self.nodes
    }

    pub fn edges(&self) -> &BTreeSet<(Label, Label, DiamondKind)> {
        &self.edges
    }

    pub fn has_edge(&self, from: Label, to: Label, kind: DiamondKind) -> bool {
        self.edges.contains(&(from, to, kind))
    }

    pub fn successors(&self, from: Label) -> impl Iterator<Item = (Label, DiamondKind)> + '_ {
        self.edges
            .range((from, Label(0), DiamondKind::White)..)
            .take_while(move |e| e.0 == from)
            .map(|e| (e.1, e.2))
    }
}

/// A walk through a propagation graph with at least one edge. Nodes may
/// repeat.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    nodes: Vec<Label>,
    kinds: Vec<DiamondKind>,
}

impl Path {
    pub fn new(start: Label) -> Self {
        Path {
            nodes: vec![start],
            kinds: Vec::new(),
        }
    }

    pub fn push(&mut self, kind: DiamondKind, to: Label) {
        self.kinds.push(kind);
        self.nodes.push(to);
    }

    pub fn start(&self) -> Label {
        self.nodes[0]
    }

    pub fn end(&self) -> Label {
        *self.nodes.last().expect("a path has at least one node")
    }

    /// The string of diamonds read along the path.
    pub fn word(&self) -> &[DiamondKind] {
        &self.kinds
    }

    pub fn len(&self) -> usize {
        self.kinds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kinds.is_empty()
    }

    pub fn steps(&self) -> impl Iterator<Item = (Label, DiamondKind, Label)> + '_ {
        self.kinds
            .iter()
            .enumerate()
            .map(|(i, &k)| (self.nodes[i], k, self.nodes[i + 1]))
    }

    pub fn lies_in(&self, g: &PropagationGraph) -> bool {
        self.steps().all(|(a, k, b)| g.has_edge(a, b, k))
    }

    /// Alternating `label, letter, label, ...` tokens.
    pub fn to_tokens(&self) -> Vec<String> {
        let mut out = vec![self.nodes[0].to_string()];
        for (i, k) in self.kinds.iter().enumerate() {
            out.push(k.letter().to_string());
            out.push(self.nodes[i + 1].to_string());
        }
        out
    }

    pub fn from_tokens(tokens: &[String]) -> Result<Path, String> {
        if tokens.len().is_multiple_of(2) {
            return Err(
                "path must alternate labels and diamonds, starting and ending with a label".into(),
            );
        }
        let mut path = Path::new(tokens[0].parse()?);
        for pair in tokens[1..].chunks(2) {
            let mut chars = pair[0].chars();
            let kind = match (chars.next(), chars.next()) {
                (Some(c), None) => DiamondKind::from_letter(c),
                _ => None,
            }
            .ok_or_else(|| format!("bad diamond `{}` in path", pair[0]))?;
            path.push(kind, pair[1].parse()?);
        }
        Ok(path)
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_tokens().join(" "))
    }
}

/// Enumerates every path of 1 to `max_len` edges from `x` and tests the
/// word of each one ending in `y` for membership. Exponential; a test oracle.
pub fn oracle_reachable(
    x: Label,
    y: Label,
    kind: DiamondKind,
    g: &PropagationGraph,
    sys: &PathAxiomSystem,
    max_len: usize,
) -> bool {
    fn walk(
        at: Label,
        word: &mut Vec<DiamondKind>,
        ctx: (
            &PropagationGraph,
            &PathAxiomSystem,
            Label,
            DiamondKind,
            usize,
        ),
    ) -> bool {
        let (g, sys, y, kind, max_len) = ctx;
        if !word.is_empty() && at == y && sys.completion_member(word, kind) {
            return true;
        }
        if word.len() == max_len {
            return false;
        }
        for (next, k) in g.successors(at) {
            word.push(k);
            let found = walk(next, word, ctx);
            word.pop();
            if found {
                return true;
            }
        }
        false
    }
    walk(x, &mut Vec::new(), (g, sys, y, kind, max_len))
}
