//! Acceptance suite: one line per criterion, with the time it took.
//!
//! Run with `cargo test -p cilattice --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use cilattice::batch::verify_cases;
use cilattice::decompose::{hypersurface_criterion, report_witnesses, witness_for};
use cilattice::hodge::series_multi;
use cilattice::oracle::{audit, definite_isometry, IsometrySearchBudget};
use cilattice::{
    binomial, decompose, euler_oracle, hodge_row, lucas_parity, Branch, Component, GramLattice,
    MultiDegree, Sign, WitnessKind,
};
use num_bigint::BigInt;
use num_integer::Integer;

struct Outcome {
    pass: bool,
    detail: String,
    /// Failure that is recorded as a known error in the reference values.
    documented: bool,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self {
            pass,
            detail: detail.into(),
            documented: false,
        }
    }
}

fn md(d: &[u64]) -> MultiDegree {
    MultiDegree::new(d).unwrap()
}

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

fn c1() -> Outcome {
    let h = |d: &[u64], n: u32, p: u32| hodge_row(&md(d), n).unwrap().full(p);
    let mut wrong = Vec::new();
    let exact = [
        ("h^{3,1}(3)", h(&[3], 4, 3), 1),
        ("h^{3,1}(2,3)", h(&[2, 3], 4, 3), 8),
        ("h^{3,1}(2,2,2,2)", h(&[2, 2, 2, 2], 4, 3), 27),
        ("h^{4,2}(2,2,2)", h(&[2, 2, 2], 6, 4), 6),
        ("h^{1,1}(3)", h(&[3], 2, 1), 7),
        ("h^{1,1}(2,2)", h(&[2, 2], 2, 1), 6),
        ("h^{2,0}(2,2,2,2)", h(&[2, 2, 2, 2], 2, 2), 7),
    ];
    for (name, got, want) in &exact {
        if got != &big(*want) {
            wrong.push(format!("{name} = {got}, expected {want}"));
        }
    }
    let quoted = [
        ("h^{1,1}(2,3)", &[2u64, 3][..], 19),
        ("h^{1,1}(2,2,2)", &[2, 2, 2][..], 19),
    ];
    let mut k3 = Vec::new();
    for (name, d, want) in quoted {
        let row = hodge_row(&md(d), 2).unwrap();
        if row.full(1) != big(want) {
            k3.push(format!(
                "{name} = {} (primitive {}), quoted {want}",
                row.full(1),
                row.primitive(1)
            ));
        }
    }
    if !wrong.is_empty() {
        return Outcome::new(false, wrong.join("; "));
    }
    if k3.is_empty() {
        return Outcome::new(true, "all 9 values exact");
    }
    let k3_primitive_ok = quoted
        .iter()
        .all(|(_, d, want)| hodge_row(&md(d), 2).unwrap().primitive(1) == &big(*want));
    Outcome {
        pass: false,
        detail: format!(
            "7 values exact; {}; both are K3 surfaces (h^{{1,1}} = 20), so the quoted 19 is the primitive value{}",
            k3.join("; "),
            if k3_primitive_ok { ", which matches" } else { "" }
        ),
        documented: k3_primitive_ok,
    }
}

fn five_invariants(report: &cilattice::DecompositionReport) -> Result<(), String> {
    let a = audit(report);
    let needed = ["rank", "signature", "determinant", "even", "discriminant_group"];
    for name in needed {
        match a.get(name) {
            Some(c) if c.pass => {}
            Some(c) => return Err(format!("{name}: {}", c.detail)),
            None => return Err(format!("{name} missing")),
        }
    }
    if !a.passed() {
        let f: Vec<String> = a.failures().map(|c| c.check.clone()).collect();
        return Err(format!("audit failures: {}", f.join(", ")));
    }
    Ok(())
}

fn c2() -> Outcome {
    let cases: [(&[u64], u32, &str, u64, (i64, i64)); 2] = [
        (&[3], 4, "A2 + 2*E8 + 2*U", 22, (20, 2)),
        (&[4], 2, "<-4> + 2*E8(-1) + 2*U", 21, (2, 19)),
    ];
    let mut notes = Vec::new();
    for (d, n, expected, rank, (p, m)) in cases {
        let r = decompose(&md(d), n).unwrap();
        let inv = r.decomposition.invariants().unwrap();
        if r.decomposition.to_string() != expected {
            return Outcome::new(false, format!("{d:?}: got {}", r.decomposition));
        }
        if inv.rank != BigInt::from(rank) || inv.signature.positive != big(p) || inv.signature.negative != big(m) {
            return Outcome::new(false, format!("{d:?}: rank {} signature {}", inv.rank, inv.signature));
        }
        if let Err(e) = five_invariants(&r) {
            return Outcome::new(false, format!("{d:?}: {e}"));
        }
        notes.push(format!("{expected} rank {rank} sig {}", inv.signature));
    }
    Outcome::new(true, notes.join("; "))
}

fn c3() -> (Outcome, Duration) {
    let start = Instant::now();
    let r = decompose(&md(&[3]), 2).unwrap();
    if r.decomposition.to_string() != "E6(-1)" {
        return (Outcome::new(false, format!("cubic surface: {}", r.decomposition)), start.elapsed());
    }
    let w = witness_for(&r.signature, WitnessKind::Anticanonical).unwrap();
    let explicit = GramLattice::diagonal(&[1, -1, -1, -1, -1, -1, -1]);
    let h: Vec<BigInt> = [3, -1, -1, -1, -1, -1, -1].map(big).to_vec();
    let perp = explicit.orthogonal_complement(&h).unwrap();
    let e6m = Component::E6.standard_gram(Sign::Minus).unwrap();
    let iso_start = Instant::now();
    let iso = definite_isometry(&perp, &e6m, &IsometrySearchBudget::default());
    let iso_time = iso_start.elapsed();
    let certified = matches!(iso, Ok(ref o) if o.is_isometric());
    if !certified || w.ambient.head != explicit || w.vector != h {
        return (Outcome::new(false, format!("E6(-1) isometry: {iso:?}")), start.elapsed());
    }
    if iso_time > Duration::from_secs(5) {
        return (Outcome::new(false, format!("isometry search took {iso_time:?}")), start.elapsed());
    }

    let mut quadric_pairs = Vec::new();
    for n in [2, 4, 6, 8] {
        let r = decompose(&md(&[2, 2]), n).unwrap();
        let is_d = r.decomposition.terms().len() == 1
            && r.decomposition.terms()[0].component == Component::D(n as usize + 3);
        if r.branch != Branch::Exceptional || !is_d {
            return (Outcome::new(false, format!("(2,2) n={n}: {}", r.decomposition)), start.elapsed());
        }
        if let Err(e) = five_invariants(&r) {
            return (Outcome::new(false, format!("(2,2) n={n}: {e}")), start.elapsed());
        }
        quadric_pairs.push(r.decomposition.to_string());
    }

    let r = decompose(&md(&[2, 2, 2, 2]), 2).unwrap();
    let (_, b2) = euler_oracle(&md(&[2, 2, 2, 2]), 2).unwrap();
    let k = r.decomposition.multiplicity(&Component::U, Sign::Plus);
    let rank = r.decomposition.rank();
    let ok = b2 == big(78)
        && k == big(14)
        && rank == &b2 - 1
        && r.decomposition.to_string() == "<-16> + 6*E8(-1) + 14*U"
        && five_invariants(&r).is_ok();
    if !ok {
        return (
            Outcome::new(false, format!("(2,2,2,2): {} with b_2 = {b2}", r.decomposition)),
            start.elapsed(),
        );
    }
    (
        Outcome::new(
            true,
            format!(
                "E6(-1) certified in {iso_time:.2?}; {} audit-clean; \
                 four quadrics k = 14 (15 would give rank {}), b_2 = {b2} by Euler oracle",
                quadric_pairs.join(", "),
                rank + 2
            ),
        ),
        start.elapsed(),
    )
}

fn c4() -> Outcome {
    let mut count = 0;
    for d in 2..=30u64 {
        for n in (2..=20).step_by(2) {
            let got = match hypersurface_criterion(d, n) {
                Ok(b) => b,
                Err(e) => return Outcome::new(false, format!("d={d} n={n}: {e}")),
            };
            if got != (d % 2 == 1 || n % 4 == 0) {
                return Outcome::new(false, format!("d={d} n={n}: branch disagrees"));
            }
            count += 1;
        }
    }
    Outcome::new(true, format!("{count} hypersurfaces"))
}

fn grid() -> Vec<(MultiDegree, u32)> {
    verify_cases(3, 5, &[2, 4, 6, 8], &[])
}

fn c5() -> Outcome {
    let cases = grid();
    let mut realized = 0;
    for (m, n) in &cases {
        let r = match decompose(m, *n) {
            Ok(r) => r,
            Err(e) => return Outcome::new(false, format!("({m}) n={n}: {e}")),
        };
        let a = audit(&r);
        if !a.passed() {
            let f: Vec<String> = a.failures().map(|c| format!("{}: {}", c.check, c.detail)).collect();
            return Outcome::new(false, format!("({m}) n={n}: {}", f.join("; ")));
        }
        if a.get("realized_gram").is_some() {
            realized += 1;
        }
        let s = &r.signature.s;
        let d = BigInt::from(r.signature.d);
        let congruent = if r.parity.lattice_is_even {
            s.mod_floor(&big(8)) == big(0)
        } else {
            (&d - s).mod_floor(&big(8)) == big(0)
        };
        if !congruent {
            return Outcome::new(false, format!("({m}) n={n}: mod 8 fails"));
        }
    }
    for m in cilattice::batch::multidegree_grid(3, 5) {
        let s = series_multi(&m, 8).unwrap();
        if !s.dominates_yz_shift() || !s.is_symmetric() || !s.is_nonnegative() {
            return Outcome::new(false, format!("({m}): series monotonicity fails"));
        }
    }
    Outcome::new(
        true,
        format!(
            "{} points; block invariants everywhere, full Gram matrix for {realized} points of rank <= 160",
            cases.len()
        ),
    )
}

fn c6() -> Outcome {
    // the c <= 3, d_i <= 5 grid has only 16 odd points with 8 | d
    let cases = verify_cases(4, 4, &[2, 4, 6, 8], &[]);
    let kinds = [WitnessKind::Hyperbolic, WitnessKind::UnitSum, WitnessKind::EightDivides];
    let mut matched = [0usize; 3];
    let mut certified = [0usize; 3];
    for (m, n) in &cases {
        let Ok(r) = decompose(m, *n) else { continue };
        let witnesses = report_witnesses(&r);
        if witnesses.is_empty() {
            continue;
        }
        let a = audit(&r);
        for kind in witnesses {
            let Some(i) = kinds.iter().position(|&k| k == kind) else { continue };
            let check = a.get(&format!("witness:{}", kind.as_str())).unwrap();
            if !check.pass {
                return Outcome::new(false, format!("({m}) n={n} {}: {}", kind.as_str(), check.detail));
            }
            matched[i] += 1;
            if check.detail.contains("isometric to") {
                certified[i] += 1;
            }
        }
    }
    let summary: Vec<String> = kinds
        .iter()
        .enumerate()
        .map(|(i, k)| format!("{} {} ({} certified)", k.as_str(), matched[i], certified[i]))
        .collect();
    Outcome::new(matched.iter().all(|&c| c >= 20), summary.join(", "))
}

fn c7() -> Outcome {
    for (m, n) in grid() {
        let (_, b) = euler_oracle(&m, n).unwrap();
        let row = hodge_row(&m, n).unwrap();
        let series = 1 + row.primitive.iter().sum::<BigInt>();
        if b != series {
            return Outcome::new(false, format!("({m}) n={n}: {b} vs {series}"));
        }
    }
    for a in 0..=64u64 {
        for b in 0..=64u64 {
            if (lucas_parity(a, b) == 1) != binomial(a + b, b as i64).is_odd() {
                return Outcome::new(false, format!("lucas_parity({a}, {b})"));
            }
        }
    }
    Outcome::new(true, format!("{} grid points, 65 x 65 parity table", grid().len()))
}

fn timed(f: impl FnOnce() -> Outcome) -> (Outcome, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn main() -> ExitCode {
    let runs: Vec<(&str, Option<Duration>, (Outcome, Duration))> = vec![
        ("C1 Hodge values", Some(Duration::from_secs(1)), timed(c1)),
        ("C2 cubic fourfold and quartic surface", Some(Duration::from_secs(1)), timed(c2)),
        ("C3 cubic surface, two quadrics, four quadrics", None, c3()),
        ("C4 hypersurface criterion", Some(Duration::from_secs(5)), timed(c4)),
        ("C5 invariant battery", Some(Duration::from_secs(60)), timed(c5)),
        ("C6 witness agreement", None, timed(c6)),
        ("C7 oracle equivalence", None, timed(c7)),
    ];
    let mut unexpected = 0;
    let mut passed = 0;
    for (name, limit, (mut outcome, elapsed)) in runs {
        if let Some(limit) = limit {
            if elapsed > limit {
                outcome.pass = false;
                outcome.documented = false;
                outcome.detail = format!("{}; took {elapsed:.2?} > {limit:?}", outcome.detail);
            }
        }
        let verdict = match (outcome.pass, outcome.documented) {
            (true, _) => "PASS",
            (false, true) => "FAIL (documented)",
            (false, false) => "FAIL",
        };
        println!("{verdict:<17} {name} [{elapsed:.2?}]: {}", outcome.detail);
        if outcome.pass {
            passed += 1;
        } else if !outcome.documented {
            unexpected += 1;
        }
    }
    println!("{passed}/7 criteria pass, {unexpected} unexpected failures");
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
