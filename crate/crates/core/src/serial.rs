//! JSON certificates, interpolants and interpolation bundles.
//!
//! Sequents are written as
//! `{"rel": ["x y"], "left": ["x: f"], "right": [...], "part": [1, 2]}`
//! with formulas in canonical print form; proof nodes as
//! `{"rule", "conclusion", "principal", "premises"}`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::certify::{CheckMode, VerifyReport};
use crate::formula::{BiFormula, Formula, Logic, TenseFormula};
use crate::interpolate::Interpolant;
use crate::path_system::{Path, PathAxiomSystem};
use crate::proof::{Principal, Proof, RuleTag};
use crate::sequent::{FlatSequent, Label, Labelled, LabelledSequent, Part, RelAtom};

#[derive(Debug, Error)]
pub enum SerialError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad {what} `{text}`: {message}")]
    Field {
        what: &'static str,
        text: String,
        message: String,
    },
    #[error("document is for logic {found}, expected {expected}")]
    WrongLogic { expected: Logic, found: String },
}

fn field(what: &'static str, text: &str, message: impl ToString) -> SerialError {
    SerialError::Field {
        what,
        text: text.to_string(),
        message: message.to_string(),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SequentJson {
    pub rel: Vec<String>,
    pub left: Vec<String>,
    pub right: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub part: Option<Vec<u8>>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct PrincipalJson {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub left: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub right: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rel: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fresh: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cut: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NodeJson {
    pub rule: String,
    pub conclusion: SequentJson,
    pub principal: PrincipalJson,
    pub premises: Vec<NodeJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateJson {
    pub logic: String,
    pub axioms: Vec<String>,
    pub mode: String,
    pub assumptions: Vec<SequentJson>,
    pub proof: NodeJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MemberJson {
    pub left: Vec<String>,
    pub right: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InterpolantJson {
    pub members: Vec<MemberJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BundleJson {
    pub logic: String,
    pub axioms: Vec<String>,
    #[serde(rename = "A")]
    pub a: String,
    #[serde(rename = "B")]
    pub b: String,
    #[serde(rename = "C")]
    pub c: String,
    pub interpolant: InterpolantJson,
    #[serde(rename = "proofAC")]
    pub proof_ac: NodeJson,
    #[serde(rename = "proofCB")]
    pub proof_cb: NodeJson,
    /// Written for the reader's benefit; ignored when a bundle is checked.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<serde_json::Value>,
}

fn occ_text<F: Formula>(o: &Labelled<F>) -> String {
    o.to_string()
}

fn parse_label(text: &str) -> Result<Label, SerialError> {
    text.trim().parse().map_err(|m| field("label", text, m))
}

fn parse_occ<F: Formula>(text: &str) -> Result<Labelled<F>, SerialError> {
    let (label, formula) = text
        .split_once(':')
        .ok_or_else(|| field("labelled formula", text, "missing `:`"))?;
    let formula =
        F::parse_canonical(formula.trim()).map_err(|e| field("labelled formula", text, e))?;
    Ok(Labelled::new(parse_label(label)?, formula))
}

fn parse_occs<F: Formula>(items: &[String]) -> Result<Vec<Labelled<F>>, SerialError> {
    items.iter().map(|t| parse_occ(t)).collect()
}

fn rel_text(r: &RelAtom) -> String {
    format!("{} {}", r.from, r.to)
}

fn parse_rel(text: &str) -> Result<RelAtom, SerialError> {
    let mut it = text.split_whitespace();
    match (it.next(), it.next(), it.next()) {
        (Some(a), Some(b), None) => Ok(RelAtom::new(parse_label(a)?, parse_label(b)?)),
        _ => Err(field("relational atom", text, "expected two labels")),
    }
}

fn parse_rels(items: &[String]) -> Result<Vec<RelAtom>, SerialError> {
    items.iter().map(|t| parse_rel(t)).collect()
}

pub fn sequent_to_json<F: Formula>(s: &LabelledSequent<F>) -> SequentJson {
    SequentJson {
        rel: s.rel.iter().map(rel_text).collect(),
        left: s.left.iter().map(occ_text).collect(),
        right: s.right.iter().map(occ_text).collect(),
        part: s
            .parts
            .as_ref()
            .map(|ps| ps.iter().map(|p| p.number()).collect()),
    }
}

pub fn sequent_from_json<F: Formula>(j: &SequentJson) -> Result<LabelledSequent<F>, SerialError> {
    let mut s = LabelledSequent::new(
        parse_rels(&j.rel)?,
        parse_occs(&j.left)?,
        parse_occs(&j.right)?,
    );
    if let Some(parts) = &j.part {
        if parts.len() != s.left.len() + s.right.len() {
            return Err(field(
                "part list",
                &format!("{parts:?}"),
                "one entry per occurrence expected",
            ));
        }
        let parts = parts
            .iter()
            .map(|n| match n {
                1 => Ok(Part::One),
                2 => Ok(Part::Two),
                other => Err(field("part", &other.to_string(), "expected 1 or 2")),
            })
            .collect::<Result<Vec<_>, _>>()?;
        s.parts = Some(parts);
    }
    Ok(s)
}

fn principal_to_json<F: Formula>(p: &Principal<F>) -> PrincipalJson {
    PrincipalJson {
        left: p.left.iter().map(occ_text).collect(),
        right: p.right.iter().map(occ_text).collect(),
        rel: p.rel.iter().map(rel_text).collect(),
        target: p.target.map(|l| l.to_string()),
        path: p.path.as_ref().map(Path::to_tokens),
        fresh: p.fresh.map(|l| l.to_string()),
        cut: p.cut.as_ref().map(occ_text),
    }
}

fn principal_from_json<F: Formula>(j: &PrincipalJson) -> Result<Principal<F>, SerialError> {
    Ok(Principal {
        left: parse_occs(&j.left)?,
        right: parse_occs(&j.right)?,
        rel: parse_rels(&j.rel)?,
        target: j.target.as_deref().map(parse_label).transpose()?,
        path: j
            .path
            .as_ref()
            .map(|t| Path::from_tokens(t).map_err(|m| field("path", &t.join(" "), m)))
            .transpose()?,
        fresh: j.fresh.as_deref().map(parse_label).transpose()?,
        cut: j.cut.as_deref().map(parse_occ).transpose()?,
    })
}

pub fn proof_to_json<F: Formula>(p: &Proof<F>) -> NodeJson {
    NodeJson {
        rule: p.rule.name().to_string(),
        conclusion: sequent_to_json(&p.conclusion),
        principal: principal_to_json(&p.principal),
        premises: p.premises.iter().map(proof_to_json).collect(),
    }
}

pub fn proof_from_json<F: Formula>(j: &NodeJson) -> Result<Proof<F>, SerialError> {
    Ok(Proof {
        conclusion: sequent_from_json(&j.conclusion)?,
        rule: j
            .rule
            .parse::<RuleTag>()
            .map_err(|m| field("rule", &j.rule, m))?,
        principal: principal_from_json(&j.principal)?,
        premises: j
            .premises
            .iter()
            .map(proof_from_json)
            .collect::<Result<_, _>>()?,
    })
}

pub fn interpolant_to_json<F: Formula>(i: &Interpolant<F>) -> InterpolantJson {
    InterpolantJson {
        members: i
            .iter()
            .map(|m| MemberJson {
                left: m.left().iter().map(occ_text).collect(),
                right: m.right().iter().map(occ_text).collect(),
            })
            .collect(),
    }
}

pub fn interpolant_from_json<F: Formula>(
    j: &InterpolantJson,
) -> Result<Interpolant<F>, SerialError> {
    j.members
        .iter()
        .map(|m| {
            if F::LOGIC == Logic::Kt && !m.left.is_empty() {
                return Err(field(
                    "tense member",
                    &m.left.join(", "),
                    "tense interpolants are one-sided",
                ));
            }
            Ok(FlatSequent::new(
                parse_occs(&m.left)?,
                parse_occs(&m.right)?,
            ))
        })
        .collect()
}

/// Axiom lines with inverses written out, so that a document is
/// self-contained.
fn axiom_lines(system: &PathAxiomSystem) -> Vec<String> {
    system
        .generating_axioms()
        .iter()
        .map(ToString::to_string)
        .collect()
}

fn system_from_lines(lines: &[String]) -> Result<PathAxiomSystem, SerialError> {
    PathAxiomSystem::parse(&lines.join("\n"), false)
        .map_err(|e| field("axiom list", &lines.join("; "), e))
}

fn expect_logic<F: Formula>(found: &str) -> Result<(), SerialError> {
    if found == F::LOGIC.as_str() {
        Ok(())
    } else {
        Err(SerialError::WrongLogic {
            expected: F::LOGIC,
            found: found.to_string(),
        })
    }
}

/// A derivation with everything needed to check it.
#[derive(Clone, Debug)]
pub struct Certificate<F> {
    pub system: PathAxiomSystem,
    pub mode: CheckMode,
    pub assumptions: Vec<LabelledSequent<F>>,
    pub proof: Proof<F>,
}

impl<F: Formula> Certificate<F> {
    pub fn core(proof: Proof<F>, system: PathAxiomSystem) -> Self {
        Certificate {
            system,
            mode: CheckMode::Core,
            assumptions: Vec::new(),
            proof,
        }
    }

    pub fn to_json(&self) -> CertificateJson {
        CertificateJson {
            logic: F::LOGIC.as_str().to_string(),
            axioms: axiom_lines(&self.system),
            mode: self.mode.name().to_string(),
            assumptions: self.assumptions.iter().map(sequent_to_json).collect(),
            proof: proof_to_json(&self.proof),
        }
    }

    pub fn from_json(j: &CertificateJson) -> Result<Self, SerialError> {
        expect_logic::<F>(&j.logic)?;
        Ok(Certificate {
            system: system_from_lines(&j.axioms)?,
            mode: j.mode.parse().map_err(|m| field("mode", &j.mode, m))?,
            assumptions: j
                .assumptions
                .iter()
                .map(sequent_from_json)
                .collect::<Result<_, _>>()?,
            proof: proof_from_json(&j.proof)?,
        })
    }
}

/// An interpolant with the two derivations that justify it.
#[derive(Clone, Debug)]
pub struct Bundle<F> {
    pub system: PathAxiomSystem,
    pub a: F,
    pub b: F,
    pub c: F,
    pub interpolant: Interpolant<F>,
    pub proof_ac: Proof<F>,
    pub proof_cb: Proof<F>,
}

impl<F: Formula> Bundle<F> {
    pub fn to_json(&self, verification: Option<&VerifyReport>) -> BundleJson {
        BundleJson {
            logic: F::LOGIC.as_str().to_string(),
            axioms: axiom_lines(&self.system),
            a: self.a.to_string(),
            b: self.b.to_string(),
            c: self.c.to_string(),
            interpolant: interpolant_to_json(&self.interpolant),
            proof_ac: proof_to_json(&self.proof_ac),
            proof_cb: proof_to_json(&self.proof_cb),
            verification: verification.map(|v| serde_json::to_value(v).expect("reports serialize")),
        }
    }

    pub fn from_json(j: &BundleJson) -> Result<Self, SerialError> {
        expect_logic::<F>(&j.logic)?;
        let formula = |what: &'static str, text: &str| {
            F::parse_canonical(text).map_err(|e| field(what, text, e))
        };
        Ok(Bundle {
            system: system_from_lines(&j.axioms)?,
            a: formula("formula A", &j.a)?,
            b: formula("formula B", &j.b)?,
            c: formula("formula C", &j.c)?,
            interpolant: interpolant_from_json(&j.interpolant)?,
            proof_ac: proof_from_json(&j.proof_ac)?,
            proof_cb: proof_from_json(&j.proof_cb)?,
        })
    }
}

/// Any document the checker accepts.
#[derive(Clone, Debug)]
pub enum Document {
    KtCertificate(Certificate<TenseFormula>),
    BiCertificate(Certificate<BiFormula>),
    KtBundle(Bundle<TenseFormula>),
    BiBundle(Bundle<BiFormula>),
}

fn from_text<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, serde_json::Error> {
    let mut de = serde_json::Deserializer::from_str(text);
    de.disable_recursion_limit();
    let value = T::deserialize(&mut de)?;
    de.end()?;
    Ok(value)
}

/// Reads a certificate or a bundle, telling them apart by their fields.
pub fn parse_document(text: &str) -> Result<Document, SerialError> {
    let probe: serde_json::Map<String, serde_json::Value> = from_text(text)?;
    let logic = probe
        .get("logic")
        .and_then(|v| v.as_str())
        .unwrap_or_default()
        .to_string();
    let bundle = probe.contains_key("proofAC");
    drop(probe);
    match (logic.as_str(), bundle) {
        ("kt", false) => Ok(Document::KtCertificate(Certificate::from_json(
            &from_text(text)?,
        )?)),
        ("bi", false) => Ok(Document::BiCertificate(Certificate::from_json(
            &from_text(text)?,
        )?)),
        ("kt", true) => Ok(Document::KtBundle(Bundle::from_json(&from_text(text)?)?)),
        ("bi", true) => Ok(Document::BiBundle(Bundle::from_json(&from_text(text)?)?)),
        (other, _) => Err(field("logic", other, "expected kt or bi")),
    }
}

pub fn to_pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("documents serialize")
}
