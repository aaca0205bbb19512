//! Proof trees shared by the prover, the interpolation procedures and the
//! checker.

use std::fmt;
use std::str::FromStr;

use crate::formula::Formula;
use crate::path_system::Path;
use crate::sequent::{Label, Labelled, LabelledSequent, RelAtom};

/// Rule names as they appear in certificates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleTag {
    Id,
    Or,
    And,
    Dia,
    Box,
    BDia,
    BBox,
    Top,
    Bot,
    OrL,
    OrR,
    AndL,
    AndR,
    MonL,
    MonR,
    ImpL,
    ImpR,
    ExclL,
    ExclR,
    Ctr,
    Wk,
    Cut1,
    Cut2,
    ImpLStar,
    ExclRStar,
    Refl,
    /// An open leaf standing for a declared assumption.
    Hyp,
}

impl RuleTag {
    pub const ALL: [RuleTag; 27] = [
        RuleTag::Id,
        RuleTag::Or,
        RuleTag::And,
        RuleTag::Dia,
        RuleTag::Box,
        RuleTag::BDia,
        RuleTag::BBox,
        RuleTag::Top,
        RuleTag::Bot,
        RuleTag::OrL,
        RuleTag::OrR,
        RuleTag::AndL,
        RuleTag::AndR,
        RuleTag::MonL,
        RuleTag::MonR,
        RuleTag::ImpL,
        RuleTag::ImpR,
        RuleTag::ExclL,
        RuleTag::ExclR,
        RuleTag::Ctr,
        RuleTag::Wk,
        RuleTag::Cut1,
        RuleTag::Cut2,
        RuleTag::ImpLStar,
        RuleTag::ExclRStar,
        RuleTag::Refl,
        RuleTag::Hyp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleTag::Id => "id",
            RuleTag::Or => "Or",
            RuleTag::And => "And",
            RuleTag::Dia => "Dia",
            RuleTag::Box => "Box",
            RuleTag::BDia => "BDia",
            RuleTag::BBox => "BBox",
            RuleTag::Top => "Top",
            RuleTag::Bot => "Bot",
            RuleTag::OrL => "OrL",
            RuleTag::OrR => "OrR",
            RuleTag::AndL => "AndL",
            RuleTag::AndR => "AndR",
            RuleTag::MonL => "MonL",
            RuleTag::MonR => "MonR",
            RuleTag::ImpL => "ImpL",
            RuleTag::ImpR => "ImpR",
            RuleTag::ExclL => "ExclL",
            RuleTag::ExclR => "ExclR",
            RuleTag::Ctr => "Ctr",
            RuleTag::Wk => "Wk",
            RuleTag::Cut1 => "Cut1",
            RuleTag::Cut2 => "Cut2",
            RuleTag::ImpLStar => "ImpLStar",
            RuleTag::ExclRStar => "ExclRStar",
            RuleTag::Refl => "Refl",
            RuleTag::Hyp => "Hyp",
        }
    }

    /// Number of premises the rule takes.
    pub fn arity(self) -> usize {
        match self {
            RuleTag::Id | RuleTag::Top | RuleTag::Bot | RuleTag::Hyp => 0,
            RuleTag::And
            | RuleTag::OrL
            | RuleTag::AndR
            | RuleTag::ImpL
            | RuleTag::ExclR
            | RuleTag::Cut1
            | RuleTag::Cut2
            | RuleTag::ImpLStar
            | RuleTag::ExclRStar => 2,
            _ => 1,
        }
    }

    /// Rules whose premise introduces a label absent from the conclusion.
    pub fn uses_fresh_label(self) -> bool {
        matches!(
            self,
            RuleTag::Box | RuleTag::BBox | RuleTag::ImpR | RuleTag::ExclL
        )
    }
}

impl fmt::Display for RuleTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RuleTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RuleTag::ALL
            .iter()
            .copied()
            .find(|t| t.name() == s)
            .ok_or_else(|| format!("unknown rule `{s}`"))
    }
}

/// What a rule instance acts on. Only the fields relevant to the rule are
/// filled in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Principal<F> {
    /// Principal occurrences on the left. For weakening and contraction,
    /// the whole affected left multiset.
    pub left: Vec<Labelled<F>>,
    /// Principal occurrences on the right.
    pub right: Vec<Labelled<F>>,
    /// Relational atoms the rule depends on or acts on.
    pub rel: Vec<RelAtom>,
    /// Destination label of a propagation or monotonicity step.
    pub target: Option<Label>,
    /// Witness for the propagation side condition.
    pub path: Option<Path>,
    /// Label introduced by the rule.
    pub fresh: Option<Label>,
    /// Cut formula.
    pub cut: Option<Labelled<F>>,
}

impl<F> Default for Principal<F> {
    fn default() -> Self {
        Principal {
            left: Vec::new(),
            right: Vec::new(),
            rel: Vec::new(),
            target: None,
            path: None,
            fresh: None,
            cut: None,
        }
    }
}

impl<F> Principal<F> {
    pub fn left(occ: Labelled<F>) -> Self {
        Principal {
            left: vec![occ],
            ..Default::default()
        }
    }

    pub fn right(occ: Labelled<F>) -> Self {
        Principal {
            right: vec![occ],
            ..Default::default()
        }
    }
}

#[derive(Clone, Debug)]
pub struct Proof<F> {
    pub conclusion: LabelledSequent<F>,
    pub rule: RuleTag,
    pub principal: Principal<F>,
    pub premises: Vec<Proof<F>>,
}

impl<F: Formula> PartialEq for Proof<F> {
    fn eq(&self, other: &Self) -> bool {
        self.rule == other.rule
            && self.conclusion == other.conclusion
            && self.principal == other.principal
            && self.premises == other.premises
    }
}

impl<F: Formula> Eq for Proof<F> {}

impl<F: Formula> Proof<F> {
    pub fn leaf(conclusion: LabelledSequent<F>, rule: RuleTag, principal: Principal<F>) -> Self {
        Proof {
            conclusion,
            rule,
            principal,
            premises: Vec::new(),
        }
    }

    /// Number of rule instances.
    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Proof::size).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        1 + self.premises.iter().map(Proof::height).max().unwrap_or(0)
    }

    /// Pre-order traversal.
    pub fn nodes(&self) -> Vec<&Proof<F>> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(n) = stack.pop() {
            out.push(n);
            stack.extend(n.premises.iter().rev());
        }
        out
    }

    /// Rule tags along a pre-order traversal.
    pub fn rule_sequence(&self) -> Vec<RuleTag> {
        self.nodes().into_iter().map(|n| n.rule).collect()
    }

    /// Renders the tree, one node per line, premises indented.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(0, &mut out);
        out
    }

    fn render_into(&self, depth: usize, out: &mut String) {
        use std::fmt::Write;
        let _ = writeln!(
            out,
            "{:indent$}[{}] {}",
            "",
            self.rule,
            self.conclusion,
            indent = depth * 2
        );
        for p in &self.premises {
            p.render_into(depth + 1, out);
        }
    }
}
