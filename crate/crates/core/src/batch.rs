//! Grids of cases: hypersurface tables and bulk verification runs.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::decompose::{decompose, Branch, DecompositionReport};
use crate::hodge::{MultiDegree, MAX_CODIM};
use crate::oracle::{audit, CheckResult};

/// All normalized multidegrees with `1..=max_codim` entries in `2..=max_entry`,
/// each listed once in non-decreasing order.
pub fn multidegree_grid(max_codim: usize, max_entry: u64) -> Vec<MultiDegree> {
    fn extend(prefix: &mut Vec<u64>, max_codim: usize, max_entry: u64, out: &mut Vec<MultiDegree>) {
        if !prefix.is_empty() {
            out.push(MultiDegree::new(prefix).expect("grid entries are valid"));
        }
        if prefix.len() == max_codim {
            return;
        }
        let start = prefix.last().copied().unwrap_or(2);
        for d in start..=max_entry {
            prefix.push(d);
            extend(prefix, max_codim, max_entry, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), max_codim.min(MAX_CODIM), max_entry, &mut out);
    out.sort();
    out
}

/// Cases of a verification run, sorted by `(multidegree, n)` and deduplicated.
pub fn verify_cases(
    max_codim: usize,
    max_entry: u64,
    dims: &[u32],
    extra: &[MultiDegree],
) -> Vec<(MultiDegree, u32)> {
    let mut degrees = multidegree_grid(max_codim, max_entry);
    degrees.extend(extra.iter().cloned());
    degrees.sort();
    degrees.dedup();
    let mut cases: Vec<(MultiDegree, u32)> = degrees
        .into_iter()
        .flat_map(|m| dims.iter().map(move |&n| (m.clone(), n)))
        .collect();
    cases.sort();
    cases.dedup();
    cases
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub d: u64,
    pub n: u32,
    /// Branch tag, or `outside` when the case is rejected.
    pub branch: String,
    pub decomposition: String,
    pub lattice: String,
    /// `A_{d-1}` form (or odd lattice for the special-cased cubic surface).
    pub a_form: bool,
    /// Closed form: `d` odd, or `4 | n`.
    pub criterion: bool,
}

impl TableRow {
    pub fn consistent(&self) -> bool {
        self.a_form == self.criterion
    }
}

pub fn hypersurface_table(max_degree: u64, dims: &[u32]) -> Vec<TableRow> {
    let cases: Vec<(u64, u32)> = (2..=max_degree)
        .flat_map(|d| dims.iter().map(move |&n| (d, n)))
        .collect();
    cases
        .par_iter()
        .map(|&(d, n)| {
            let criterion = d % 2 == 1 || n % 4 == 0;
            let degrees = MultiDegree::new(&[d]).expect("d >= 2");
            match decompose(&degrees, n) {
                Ok(r) => {
                    let a_form = match r.branch {
                        Branch::Odd => true,
                        Branch::Exceptional => !r.parity.lattice_is_even,
                        _ => false,
                    };
                    TableRow {
                        d,
                        n,
                        branch: r.branch.as_str().to_string(),
                        decomposition: r.decomposition.to_string(),
                        lattice: lattice_word(&r).to_string(),
                        a_form,
                        criterion,
                    }
                }
                Err(e) => TableRow {
                    d,
                    n,
                    branch: "outside".into(),
                    decomposition: e.to_string(),
                    lattice: String::new(),
                    a_form: false,
                    criterion,
                },
            }
        })
        .collect()
}

pub fn lattice_word(r: &DecompositionReport) -> &'static str {
    if r.parity.lattice_is_even {
        "even"
    } else {
        "odd"
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyEntry {
    pub degrees: MultiDegree,
    pub n: u32,
    pub branch: Option<Branch>,
    pub decomposition: Option<String>,
    pub pass: bool,
    pub failures: Vec<CheckResult>,
    pub error: Option<String>,
    pub notes: Vec<String>,
}

/// Decomposes and audits every case, in parallel; output order follows `cases`.
pub fn verify(cases: &[(MultiDegree, u32)]) -> Vec<VerifyEntry> {
    cases
        .par_iter()
        .map(|(m, n)| match decompose(m, *n) {
            Ok(report) => {
                let result = audit(&report);
                VerifyEntry {
                    degrees: m.clone(),
                    n: *n,
                    branch: Some(report.branch),
                    decomposition: Some(report.decomposition.to_string()),
                    pass: result.passed(),
                    failures: result.failures().cloned().collect(),
                    error: None,
                    notes: report.notes,
                }
            }
            Err(e) => VerifyEntry {
                degrees: m.clone(),
                n: *n,
                branch: None,
                decomposition: None,
                pass: false,
                failures: Vec::new(),
                error: Some(e.to_string()),
                notes: Vec::new(),
            },
        })
        .collect()
}
