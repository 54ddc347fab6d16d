//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::process::ExitCode;
use std::time::Instant;

use fsig_core::groebner::{Engine, Ideal};
use fsig_core::io::{bundled_fixture, payload_json};
use fsig_core::lab::{
    bertini_experiment, convergence_check, flat_extension_check, monotone_containment, perturbation_experiment,
    random_oracle_audit, BertiniParams, ExperimentReport,
};
use fsig_core::poly::Ring;
use fsig_core::rational::Exact;
use fsig_core::signature::{degeneracy_ideal, signature_estimate, DivisorSpec, RingPresentation, Rounding};
use fsig_core::Result;

const SINGULAR: [&str; 4] = ["a1", "cusp", "quadric", "a1xline"];
const ALL: [&str; 6] = ["regular", "a1", "cusp", "quadric", "a1xline", "smooth"];
const CONVERGENCE_EMAX: u32 = 4;
const BERTINI_SEED: u64 = 7;

fn fixture(name: &str, engine: &Engine) -> Result<(RingPresentation, DivisorSpec)> {
    let f = bundled_fixture(name).expect("bundled fixture");
    Ok((f.presentation(engine)?, f.divisor_spec()?))
}

fn failing(report: &ExperimentReport) -> String {
    report.verdicts.iter().filter(|v| !v.passed).map(|v| format!("{}: {}", v.name, v.detail)).collect::<Vec<_>>().join("; ")
}

fn criterion1() -> Result<(bool, String)> {
    let engine = Engine::default();
    let names = ["x", "y", "z"];
    let mut cases = 0;
    for p in [2u32, 3, 5] {
        for n in 1..=3 {
            let ring = Ring::new(p, &names[..n])?;
            let pres = RingPresentation::polynomial_ring(&ring);
            for e in 1..=3 {
                let q = (p as u64).pow(e);
                let s = signature_estimate(&pres, e, &DivisorSpec::empty(), &engine)?;
                let ideal = degeneracy_ideal(&pres, e, &DivisorSpec::empty(), Rounding::CeilQm1, &engine)?;
                let bracket = Ideal::bracket_maximal(&ring, q as u32)?;
                if s.estimate != Exact::integer(1) || s.length != q.pow(n as u32) || !ideal.same_ideal(&bracket, &engine)? {
                    return Ok((false, format!("p={p} n={n} e={e}: s_e = {}, length {}", s.estimate, s.length)));
                }
                cases += 1;
            }
        }
    }
    Ok((true, format!("{cases} cases with s_e = 1 and length q^n")))
}

fn criterion2() -> Result<(bool, String)> {
    let report = random_oracle_audit(1, 20, &Engine::default())?;
    let agree = report.find_verdict("oracle_agreement").map(|v| (v.passed, v.detail.clone()));
    Ok(match agree {
        Some((ok, detail)) => (ok, format!("20 random hypersurfaces, {detail}")),
        None => (false, "no agreement verdict".into()),
    })
}

fn criterion3() -> Result<(bool, String)> {
    let engine = Engine::default();
    let mut runs = 0;
    for name in ["regular", "a1", "cusp", "quadric"] {
        let (pres, divisor) = fixture(name, &engine)?;
        for delta in [DivisorSpec::empty(), divisor] {
            for d in 1..=2 {
                for e in 1..=2 {
                    let report = flat_extension_check(&pres, d, e, &delta, &engine)?;
                    if !report.passed() {
                        return Ok((false, format!("{name} δ={d} e={e}: {}", failing(&report))));
                    }
                    runs += 1;
                }
            }
        }
    }
    Ok((true, format!("{runs} runs: reduced bases equal and ℓ_R = q^δ·ℓ_A")))
}

fn criterion4(engine: &Engine) -> Result<(bool, String, ExperimentReport)> {
    let (pres, divisor) = fixture("a1", engine)?;
    let mut report = perturbation_experiment(&pres, &divisor, 3, engine)?;
    report.fixture = "a1".into();
    let gaps: Vec<String> = report.diagnostics.iter().map(|d| d.value.to_string()).collect();
    let ok = report.passed() && !report.incomplete;
    let detail = format!("scaled gaps |s^ceil − s^floor|·q = [{}] {}", gaps.join(", "), failing(&report));
    Ok((ok, detail, report))
}

fn criterion5(engine: &Engine) -> Result<(bool, String, Vec<ExperimentReport>)> {
    let mut ok = true;
    let mut parts = Vec::new();
    let mut reports = Vec::new();
    for name in SINGULAR {
        let (pres, _) = fixture(name, engine)?;
        let mut report = convergence_check(&pres, &DivisorSpec::empty(), CONVERGENCE_EMAX, Exact::integer(1), engine)?;
        report.fixture = name.into();
        let diffs: Vec<String> = report.diagnostics.iter().map(|d| d.value.to_string()).collect();
        let passed = report.passed() && report.diagnostics.len() >= 2;
        ok &= passed;
        parts.push(format!(
            "{name} [{}]{}",
            diffs.join(", "),
            if report.incomplete { " (incomplete)" } else { "" }
        ));
        reports.push(report);
    }
    Ok((ok, format!("|s_e − s_(e+1)|·p^e ≤ C at e=1: {}", parts.join("; ")), reports))
}

fn criterion6(engine: &Engine) -> Result<(bool, String, ExperimentReport)> {
    let (x, delta) = fixture("a1xline", engine)?;
    let (a1, _) = fixture("a1", engine)?;
    let target = signature_estimate(&a1, 2, &DivisorSpec::empty(), engine)?.estimate;
    let lambda = Exact::new(1, 3);
    let mut report = bertini_experiment(&x, &delta, &BertiniParams::new(lambda, 2, BERTINI_SEED, 10), engine)?;
    report.fixture = "a1xline".into();
    let usable: Vec<_> = report.hyperplanes.iter().filter(|h| h.status == fsig_core::lab::SliceStatus::Ok).collect();
    let singular_exact = usable.iter().flat_map(|h| &h.points).filter(|pt| pt.singular).all(|pt| pt.slice.estimate == target);
    let with_singular = usable.iter().filter(|h| h.points.iter().any(|pt| pt.singular)).count();
    let smooth_one = usable
        .iter()
        .flat_map(|h| &h.points)
        .filter(|pt| !pt.singular)
        .all(|pt| pt.slice.estimate == Exact::integer(1));
    let part1 = report.find_verdict("part1").is_some_and(|v| v.passed);
    let ok = !usable.is_empty() && singular_exact && smooth_one && part1 && lambda < target;
    let detail = format!(
        "{} of 10 slices usable, {with_singular} meet the singular line with estimate {} (A_1: {target}), smooth points at 1: {smooth_one}, part 1 at λ = {lambda}: {part1}",
        usable.len(),
        if singular_exact { target.to_string() } else { "mismatch".into() },
    );
    Ok((ok, detail, report))
}

fn criterion7() -> Result<(bool, String)> {
    let engine = Engine::default();
    for name in ALL {
        let (pres, _) = fixture(name, &engine)?;
        if !monotone_containment(&pres, 1, &engine)? {
            return Ok((false, format!("{name}: I_1^[p] ⊄ I_2")));
        }
    }
    Ok((true, format!("I_1^[p] ⊆ I_2 on {} fixtures", ALL.len())))
}

fn payloads(r4: &ExperimentReport, r5: &[ExperimentReport], r6: &ExperimentReport) -> Result<Vec<String>> {
    let mut out = vec![payload_json(r4)?];
    for r in r5 {
        out.push(payload_json(r)?);
    }
    out.push(payload_json(r6)?);
    Ok(out)
}

fn report(n: u32, started: Instant, outcome: std::result::Result<(bool, String), String>) -> bool {
    let secs = started.elapsed().as_secs_f64();
    match outcome {
        Ok((true, detail)) => {
            println!("PASS criterion {n}: {detail} [{secs:.1}s]");
            true
        }
        Ok((false, detail)) => {
            println!("FAIL criterion {n}: {detail} [{secs:.1}s]");
            false
        }
        Err(e) => {
            println!("FAIL criterion {n}: error: {e} [{secs:.1}s]");
            false
        }
    }
}

fn main() -> ExitCode {
    // `cargo test -- --list` and similar harness probes expect no work
    if std::env::args().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let mut all = true;

    let t = Instant::now();
    all &= report(1, t, criterion1().map_err(|e| e.to_string()));
    let t = Instant::now();
    all &= report(2, t, criterion2().map_err(|e| e.to_string()));
    let t = Instant::now();
    all &= report(3, t, criterion3().map_err(|e| e.to_string()));

    // criteria 4-6 run twice with fresh engines for criterion 8
    let mut first = None;
    let engine = Engine::default();
    let t = Instant::now();
    let c4 = criterion4(&engine);
    all &= report(4, t, c4.as_ref().map(|(ok, d, _)| (*ok, d.clone())).map_err(|e| e.to_string()));
    let t = Instant::now();
    let c5 = criterion5(&engine);
    all &= report(5, t, c5.as_ref().map(|(ok, d, _)| (*ok, d.clone())).map_err(|e| e.to_string()));
    let t = Instant::now();
    let c6 = criterion6(&engine);
    all &= report(6, t, c6.as_ref().map(|(ok, d, _)| (*ok, d.clone())).map_err(|e| e.to_string()));
    if let (Ok((_, _, r4)), Ok((_, _, r5)), Ok((_, _, r6))) = (&c4, &c5, &c6) {
        first = Some(payloads(r4, r5, r6));
    }

    let t = Instant::now();
    all &= report(7, t, criterion7().map_err(|e| e.to_string()));

    let t = Instant::now();
    let outcome = match first {
        None => Err("criteria 4-6 did not produce reports".to_string()),
        Some(a) => (|| -> Result<(bool, String)> {
            let a = a?;
            let engine = Engine::default();
            let b = payloads(&criterion4(&engine)?.2, &criterion5(&engine)?.2, &criterion6(&engine)?.2)?;
            let same = a == b;
            Ok((same, format!("{} payloads from criteria 4-6 byte-identical across two runs: {same}", a.len())))
        })()
        .map_err(|e| e.to_string()),
    };
    all &= report(8, t, outcome);

    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
