use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::groebner::Engine;
use crate::monomial::Monomial;
use crate::poly::{Polynomial, Ring};
use crate::rational::Exact;
use crate::signature::{
    degeneracy_ideal, exhaustive_panel, splitting_oracle, DivisorSpec, RingPresentation, Rounding,
};

use super::report::{ExperimentKind, ExperimentReport, OracleCase};

fn audit_into(
    report: &mut ExperimentReport,
    label: &str,
    p: &RingPresentation,
    delta: &DivisorSpec,
    engine: &Engine,
) -> Result<()> {
    let ideal = degeneracy_ideal(p, 1, delta, Rounding::CeilQm1, engine)?;
    for a in exhaustive_panel(p, p.p() as u64) {
        let oracle = splitting_oracle(p, 1, &a, delta)?;
        let formula = !ideal.contains(&a, engine)?;
        report.oracle_cases.push(OracleCase {
            label: label.to_string(),
            p: p.p(),
            element: a.to_string(),
            oracle,
            formula,
        });
    }
    Ok(())
}

fn finish(report: &mut ExperimentReport) {
    let total = report.oracle_cases.len();
    let agree = report.oracle_cases.iter().filter(|c| c.oracle == c.formula).count();
    let rate = if total == 0 { Exact::integer(1) } else { Exact::new(agree as i64, total as i64) };
    report.diagnostic("agreement", 1, rate);
    report.verdict("oracle_agreement", agree == total, format!("{agree} of {total} panel elements agree"));
}

/// Oracle versus colon-formula membership on every monomial with exponents `< p`.
pub fn oracle_audit(p: &RingPresentation, delta: &DivisorSpec, engine: &Engine) -> Result<ExperimentReport> {
    let mut report = ExperimentReport::new(ExperimentKind::OracleAudit, "", p.p());
    let start = std::time::Instant::now();
    audit_into(&mut report, "fixture", p, delta, engine)?;
    report.record("panel", start.elapsed());
    finish(&mut report);
    Ok(report)
}

/// A seeded hypersurface through the origin in 2 or 3 variables over `F_2` or `F_3`.
pub fn random_hypersurface(seed: u64, index: u64, engine: &Engine) -> Result<RingPresentation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let p = [2u32, 3][rng.random_range(0..2)];
    let n = rng.random_range(2..=3usize);
    let names = ["x", "y", "z"];
    let ring = Ring::new(p, &names[..n])?;
    let degree = rng.random_range(2..=4u32);
    loop {
        let mut terms = Vec::new();
        for code in 0..(degree + 1).pow(n as u32) {
            let exps: Vec<u32> = (0..n).map(|i| code / (degree + 1).pow(i as u32) % (degree + 1)).collect();
            let d: u32 = exps.iter().sum();
            if d == 0 || d > degree || !rng.random_bool(0.35) {
                continue;
            }
            terms.push((Monomial::from_exponents(&exps)?, rng.random_range(1..p)));
        }
        let f = Polynomial::from_terms(&ring, Default::default(), terms);
        if f.total_degree() >= 2 {
            return RingPresentation::from_generators(&ring, vec![f], engine);
        }
    }
}

/// The oracle audit over `count` seeded random hypersurfaces.
pub fn random_oracle_audit(seed: u64, count: usize, engine: &Engine) -> Result<ExperimentReport> {
    let mut report = ExperimentReport::new(ExperimentKind::OracleAudit, "random_hypersurfaces", 0);
    report.seed = Some(seed);
    report.parameter("samples", count);
    let start = std::time::Instant::now();
    for i in 0..count as u64 {
        let p = random_hypersurface(seed, i, engine)?;
        let label = format!("{} over F_{}", p.ideal().generators()[0], p.p());
        audit_into(&mut report, &label, &p, &DivisorSpec::empty(), engine)?;
    }
    report.record("panels", start.elapsed());
    finish(&mut report);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_hypersurfaces_are_reproducible() {
        let e = Engine::default();
        let a = random_hypersurface(11, 4, &e).unwrap();
        let b = random_hypersurface(11, 4, &e).unwrap();
        assert_eq!(a.ideal().generators(), b.ideal().generators());
        assert!(a.ideal().generators()[0].evaluate(&vec![0; a.nvars()]) == 0);
    }

    #[test]
    fn small_random_audit_agrees() {
        let e = Engine::default();
        let report = random_oracle_audit(5, 4, &e).unwrap();
        assert!(report.passed(), "{:?}", report.verdicts);
    }
}
