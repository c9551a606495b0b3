use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::isometry::{definite_isometry, IsometryOutcome, IsometrySearchBudget};
use crate::decompose::{
    parity_class, primitive_signature, report_witnesses, signature_from_row, witness_for, Branch,
    DecompositionReport, WitnessKind,
};
use crate::hodge::euler_oracle;
use crate::lattice::{Component, Decomposition, GramLattice, LatticeInvariants, Sign, Term};

/// Decompositions up to this rank are also materialized as one Gram matrix
/// and checked against the block-wise invariants.
pub const REALIZE_LIMIT: u64 = 160;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check: String,
    pub pass: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(check: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Self {
            check: check.into(),
            pass,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditResult {
    pub checks: Vec<CheckResult>,
}

impl AuditResult {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.check == name)
    }

    fn push(&mut self, check: &str, pass: bool, detail: impl Into<String>) {
        self.checks.push(CheckResult::new(check, pass, detail));
    }
}

fn expected_branch(report: &DecompositionReport) -> Branch {
    let sig = &report.signature;
    let exceptional = (report.degrees.is(&[3]) && report.dim == 2) || report.degrees.is(&[2, 2]);
    if exceptional && report.branch == Branch::Exceptional {
        Branch::Exceptional
    } else if report.parity.lattice_is_even {
        Branch::Even
    } else if sig.b_plus >= BigInt::from(sig.d) {
        Branch::Odd
    } else {
        Branch::EightDivides
    }
}

/// The block of the primitive lattice that the witness head complement should
/// reproduce on its own.
fn head_target(kind: WitnessKind, d: u64, decomposition: &Decomposition) -> Option<Decomposition> {
    let d_big = BigInt::from(d);
    match kind {
        WitnessKind::Hyperbolic | WitnessKind::EightDivides => Some(Decomposition::new(vec![
            Term::one(Component::Rank1(-d_big), Sign::Plus),
        ])),
        WitnessKind::UnitSum => Some(Decomposition::new(vec![Term::one(
            Component::A(d as usize - 1),
            Sign::Plus,
        )])),
        WitnessKind::Anticanonical => Some(decomposition.clone()),
    }
}

fn audit_witness(
    report: &DecompositionReport,
    kind: WitnessKind,
    target: &LatticeInvariants,
    budget: &IsometrySearchBudget,
) -> CheckResult {
    let name = format!("witness:{}", kind.as_str());
    let sig = &report.signature;
    let witness = match witness_for(sig, kind) {
        Ok(w) => w,
        Err(e) => return CheckResult::new(name, false, e.to_string()),
    };
    let mut problems = Vec::new();
    let mut notes = Vec::new();

    match witness.ambient.invariants() {
        Ok(amb) => {
            if !amb.determinant.abs().is_one() {
                problems.push(format!("ambient determinant {}", amb.determinant));
            }
            let want = (sig.b_plus.clone(), sig.b_minus.clone());
            let got = (amb.signature.positive.clone(), amb.signature.negative.clone());
            if got != want {
                problems.push(format!("ambient signature {}", amb.signature));
            }
            if amb.even != report.parity.lattice_is_even {
                problems.push("ambient parity differs from the cohomology lattice".into());
            }
        }
        Err(e) => problems.push(e.to_string()),
    }

    match witness.complement_invariants() {
        Ok(inv) => {
            let diff = inv.mismatches(target);
            if !diff.is_empty() {
                problems.push(format!("complement differs in {}", diff.join(", ")));
            }
        }
        Err(e) => problems.push(e.to_string()),
    }

    let head = &witness.head_complement;
    if head.rank() <= budget.max_rank && head.signature().is_definite() {
        let expected = head_target(kind, sig.d, &report.decomposition)
            .and_then(|dec| dec.realize(budget.max_rank as u64).ok());
        if let Some(expected) = expected {
            match definite_isometry(head, &expected, budget) {
                Ok(IsometryOutcome::Isometric { .. }) => {
                    notes.push(format!("head complement isometric to {}", describe(&expected)))
                }
                Ok(IsometryOutcome::NotIsometric { reason }) => {
                    problems.push(format!("head complement not isometric: {reason}"))
                }
                Err(e) => notes.push(format!("isometry search inconclusive: {e}")),
            }
        }
    }

    let pass = problems.is_empty();
    let detail = if pass {
        let mut d = format!("v = {:?}", witness.vector.iter().map(|x| x.to_string()).collect::<Vec<_>>());
        for n in notes {
            d.push_str("; ");
            d.push_str(&n);
        }
        d
    } else {
        problems.join("; ")
    };
    CheckResult::new(name, pass, detail)
}

fn describe(g: &GramLattice) -> String {
    format!("rank {} det {}", g.rank(), g.determinant())
}

/// Runs the full invariant battery on a report. Never mutates the report.
pub fn audit(report: &DecompositionReport) -> AuditResult {
    audit_with_budget(report, &IsometrySearchBudget::default())
}

pub fn audit_with_budget(report: &DecompositionReport, budget: &IsometrySearchBudget) -> AuditResult {
    let mut out = AuditResult::default();
    let sig = &report.signature;
    let n = report.dim;
    let d = BigInt::from(sig.d);

    let row = &report.hodge;
    let symmetric = (0..=n).all(|p| row.primitive(p) == row.primitive(n - p));
    out.push("hodge_symmetry", symmetric, "h^{p,q}_o = h^{q,p}_o");

    match euler_oracle(&report.degrees, n) {
        Ok((euler, betti)) => {
            let from_series = row.betti();
            out.push(
                "euler_oracle",
                betti == from_series,
                format!("euler {euler}, b_n {betti}, series b_n {from_series}"),
            );
        }
        Err(e) => out.push("euler_oracle", false, e.to_string()),
    }

    let recomputed = signature_from_row(row, sig.d);
    out.push(
        "signature_data",
        &recomputed == sig && sig.d == report.degrees.total_degree(),
        format!("b+ {}, b- {}", sig.b_plus, sig.b_minus),
    );

    let parity = parity_class(&report.degrees, n);
    out.push(
        "parity",
        parity == report.parity,
        format!("C(n/2+e, e) = {}", parity.binomial),
    );

    let branch = expected_branch(report);
    out.push(
        "branch",
        branch == report.branch,
        format!("expected {}, report {}", branch.as_str(), report.branch.as_str()),
    );

    let residue = if report.parity.lattice_is_even {
        sig.s.mod_floor(&BigInt::from(8))
    } else {
        (&d - &sig.s).mod_floor(&BigInt::from(8))
    };
    out.push(
        "mod8",
        residue == BigInt::from(0),
        if report.parity.lattice_is_even {
            format!("s = {} = 0 mod 8", sig.s)
        } else {
            format!("d = {d} = s = {} mod 8", sig.s)
        },
    );

    let inv = match report.decomposition.invariants() {
        Ok(inv) => inv,
        Err(e) => {
            out.push("invariants", false, e.to_string());
            return out;
        }
    };

    let rank_target = sig.betti() - 1;
    out.push(
        "rank",
        inv.rank == rank_target,
        format!("{} vs b_n - 1 = {rank_target}", inv.rank),
    );
    let sig_target = primitive_signature(sig);
    out.push(
        "signature",
        sig_target == inv.signature,
        format!(
            "{} vs (b+ - 1, b-) = ({}, {})",
            inv.signature,
            &sig.b_plus - 1,
            sig.b_minus
        ),
    );
    out.push(
        "determinant",
        inv.determinant.abs() == d,
        format!("|{}| vs d = {d}", inv.determinant),
    );
    out.push("even", inv.even, "primitive lattice is even");
    let disc_ok = inv
        .discriminant
        .as_ref()
        .is_some_and(|g| g.is_cyclic_of_order(&d));
    out.push(
        "discriminant_group",
        disc_ok,
        match &inv.discriminant {
            Some(g) => format!("{g} vs Z/{d}"),
            None => "degenerate".into(),
        },
    );

    if inv.rank <= BigInt::from(REALIZE_LIMIT) {
        match report.decomposition.realize(REALIZE_LIMIT) {
            Ok(g) => {
                let full = g.invariants();
                out.push(
                    "realized_gram",
                    full == inv,
                    format!("rank {} Gram matrix", g.rank()),
                );
            }
            Err(e) => out.push("realized_gram", false, e.to_string()),
        }
    }

    for kind in report_witnesses(report) {
        out.checks.push(audit_witness(report, kind, &inv, budget));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::decompose;
    use crate::hodge::MultiDegree;

    fn report(d: &[u64], n: u32) -> DecompositionReport {
        decompose(&MultiDegree::new(d).unwrap(), n).unwrap()
    }

    #[test]
    fn clean_reports_pass() {
        for (d, n) in [(vec![3], 4), (vec![4], 2), (vec![3], 2), (vec![2, 2], 2), (vec![2, 2, 2, 2], 2)] {
            let r = audit(&report(&d, n));
            assert!(r.passed(), "{d:?} {n}: {:?}", r.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn quartic_is_even_with_s_divisible_by_eight() {
        let r = report(&[4], 2);
        assert!(r.parity.lattice_is_even);
        assert_eq!(r.signature.s, BigInt::from(-16));
        assert!(audit(&r).get("mod8").unwrap().pass);
    }

    #[test]
    fn tampered_report_fails_rank_and_signature() {
        let mut r = report(&[3], 4);
        for t in r.decomposition.terms_mut() {
            if t.component == Component::U {
                t.multiplicity -= 1;
            }
        }
        let a = audit(&r);
        assert!(!a.get("rank").unwrap().pass);
        assert!(!a.get("signature").unwrap().pass);
        assert!(a.get("determinant").unwrap().pass);
        assert!(!a.passed());
    }

    #[test]
    fn witness_checks_are_present() {
        let a = audit(&report(&[3], 2));
        let w = a.get("witness:anticanonical").unwrap();
        assert!(w.pass);
        assert!(w.detail.contains("isometric"), "{}", w.detail);
        let a = audit(&report(&[5], 4));
        assert!(a.get("witness:unit-sum").unwrap().detail.contains("isometric"));
    }
}
