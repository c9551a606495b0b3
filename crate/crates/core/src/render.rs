//! Text and JSON output for reports, Hodge rows, tables and verification runs.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::batch::{lattice_word, TableRow, VerifyEntry};
use crate::decompose::{
    report_witnesses, witness_for, DecomposeError, DecompositionReport, WitnessKind,
};
use crate::hodge::{HodgeRow, MultiDegree};
use crate::lattice::{Decomposition, GramLattice, LatticeInvariants};
use crate::oracle::AuditResult;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// A report together with the optional extras the command line can attach.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    #[serde(flatten)]
    pub report: DecompositionReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gram: Option<GramLattice>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub audit: Option<AuditResult>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Vec<WitnessSummary>>,
}

/// A witness vector `v` in the head block of an ambient unimodular lattice
/// `head + tail`, with the invariants of `v^perp`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessSummary {
    pub kind: WitnessKind,
    pub head: GramLattice,
    pub tail: Decomposition,
    #[serde(with = "crate::serde_big::vec")]
    pub vector: Vec<BigInt>,
    pub head_complement: GramLattice,
    pub complement: LatticeInvariants,
}

/// Builds every witness that applies to the report.
pub fn witnesses(report: &DecompositionReport) -> Result<Vec<WitnessSummary>, DecomposeError> {
    report_witnesses(report)
        .into_iter()
        .map(|kind| {
            let w = witness_for(&report.signature, kind)?;
            let complement = w.complement_invariants()?;
            Ok(WitnessSummary {
                kind,
                head: w.ambient.head,
                tail: w.ambient.tail,
                vector: w.vector,
                head_complement: w.head_complement,
                complement,
            })
        })
        .collect()
}

impl ReportDocument {
    pub fn new(report: DecompositionReport) -> Self {
        Self {
            report,
            gram: None,
            audit: None,
            witnesses: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let r = &self.report;
        let sig = &r.signature;
        let mut out = String::new();
        line(&mut out, "degrees", &r.degrees);
        line(&mut out, "dim", r.dim);
        line(&mut out, "total_degree", sig.d);
        line(&mut out, "hodge_primitive", join(&r.hodge.primitive));
        line(&mut out, "hodge", join(&r.hodge.full_row()));
        line(&mut out, "b_n", &sig.b_n);
        line(&mut out, "b_plus", &sig.b_plus);
        line(&mut out, "b_minus", &sig.b_minus);
        line(&mut out, "s", &sig.s);
        line(&mut out, "t", &sig.t);
        line(
            &mut out,
            "u",
            sig.u.as_ref().map_or("none".to_string(), BigInt::to_string),
        );
        line(&mut out, "epsilon", sig.epsilon);
        line(&mut out, "binomial", &r.parity.binomial);
        line(&mut out, "lattice", lattice_word(r));
        line(&mut out, "branch", r.branch.as_str());
        line(&mut out, "decomposition", &r.decomposition);
        for note in &r.notes {
            line(&mut out, "note", note);
        }
        if let Some(g) = &self.gram {
            line(&mut out, "gram", g.to_json());
        }
        for w in self.witnesses.iter().flatten() {
            line(
                &mut out,
                "witness",
                format!(
                    "{} v = ({}) in {} + {}; complement rank {} det {}",
                    w.kind.as_str(),
                    join(&w.vector),
                    w.head.to_json(),
                    w.tail,
                    w.complement.rank,
                    w.complement.determinant
                ),
            );
        }
        if let Some(a) = &self.audit {
            for c in &a.checks {
                let verdict = if c.pass { "pass" } else { "FAIL" };
                line(&mut out, "check", format!("{} {verdict} ({})", c.check, c.detail));
            }
            line(&mut out, "audit", if a.passed() { "pass" } else { "FAIL" });
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Json => self.to_json(),
        }
    }
}

fn line(out: &mut String, key: &str, value: impl std::fmt::Display) {
    let _ = writeln!(out, "{key}: {value}");
}

fn join(values: &[BigInt]) -> String {
    values
        .iter()
        .map(BigInt::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Serialize)]
struct HodgeDocument<'a> {
    degrees: &'a MultiDegree,
    dim: u32,
    #[serde(with = "crate::serde_big::vec")]
    primitive: Vec<BigInt>,
    #[serde(with = "crate::serde_big::vec")]
    full: Vec<BigInt>,
    #[serde(with = "crate::serde_big")]
    b_n: BigInt,
}

pub fn hodge(degrees: &MultiDegree, row: &HodgeRow, format: Format) -> String {
    match format {
        Format::Text => {
            let mut out = String::new();
            line(&mut out, "degrees", degrees);
            line(&mut out, "dim", row.n);
            for p in 0..=row.n {
                line(
                    &mut out,
                    &format!("h^{{{},{}}}", p, row.n - p),
                    format!("{} (primitive {})", row.full(p), row.primitive(p)),
                );
            }
            line(&mut out, "b_n", row.betti());
            out
        }
        Format::Json => {
            let doc = HodgeDocument {
                degrees,
                dim: row.n,
                primitive: row.primitive.clone(),
                full: row.full_row(),
                b_n: row.betti(),
            };
            serde_json::to_string_pretty(&doc).expect("hodge row serializes")
        }
    }
}

pub fn table(rows: &[TableRow], format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(rows).expect("table serializes"),
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "{:>4} {:>4}  {:<6} {:<14} {:<6} {:<9}  decomposition",
                "d", "n", "L", "branch", "A-form", "criterion"
            );
            for r in rows {
                let _ = writeln!(
                    out,
                    "{:>4} {:>4}  {:<6} {:<14} {:<6} {:<9}  {}",
                    r.d,
                    r.n,
                    r.lattice,
                    r.branch,
                    yes_no(r.a_form),
                    yes_no(r.criterion),
                    r.decomposition
                );
            }
            out
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn verify(entries: &[VerifyEntry], format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(entries).expect("entries serialize"),
        Format::Text => {
            let mut out = String::new();
            for e in entries {
                let verdict = if e.pass { "pass" } else { "FAIL" };
                let what = match (&e.branch, &e.decomposition, &e.error) {
                    (Some(b), Some(dec), _) => format!("{} {dec}", b.as_str()),
                    (_, _, Some(err)) => err.clone(),
                    _ => String::new(),
                };
                let _ = writeln!(out, "{verdict} ({}) n={}: {what}", e.degrees, e.n);
                for f in &e.failures {
                    let _ = writeln!(out, "    {}: {}", f.check, f.detail);
                }
            }
            let passed = entries.iter().filter(|e| e.pass).count();
            let _ = writeln!(out, "{passed}/{} cases pass", entries.len());
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::decompose;
    use crate::oracle::audit;

    #[test]
    fn json_roundtrip_with_extras() {
        let report = decompose(&MultiDegree::new(&[3]).unwrap(), 2).unwrap();
        let mut doc = ReportDocument::new(report.clone());
        doc.gram = Some(report.decomposition.realize(64).unwrap());
        doc.audit = Some(audit(&report));
        doc.witnesses = Some(witnesses(&report).unwrap());
        assert_eq!(doc.witnesses.as_ref().unwrap().len(), 1);
        let back = ReportDocument::from_json(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
        let bare = ReportDocument::new(report);
        assert_eq!(ReportDocument::from_json(&bare.to_json()).unwrap(), bare);
    }

    #[test]
    fn text_lines() {
        let report = decompose(&MultiDegree::new(&[3]).unwrap(), 4).unwrap();
        let text = ReportDocument::new(report).to_text();
        assert!(text.contains("hodge_primitive: 0 1 20 1 0\n"));
        assert!(text.contains("hodge: 0 1 21 1 0\n"));
        assert!(text.contains("b_plus: 21\n"));
        assert!(text.contains("branch: odd\n"));
        assert!(text.contains("decomposition: A2 + 2*E8 + 2*U\n"), "{text}");
    }

    #[test]
    fn hodge_json_has_strings() {
        let m = MultiDegree::new(&[4]).unwrap();
        let row = crate::hodge::hodge_row(&m, 2).unwrap();
        let v: serde_json::Value = serde_json::from_str(&hodge(&m, &row, Format::Json)).unwrap();
        assert_eq!(v["full"][1], "20");
        assert_eq!(v["b_n"], "22");
    }
}
