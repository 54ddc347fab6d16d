use crate::error::{Error, Result};
use crate::groebner::{artinian_length, frobenius_power, Engine, Ideal};
use crate::poly::Polynomial;
use crate::rational::Exact;
use crate::signature::{
    checked_q, degeneracy_ideal, signature_estimate_with, DivisorSpec, RingPresentation, Rounding,
    SignatureSample,
};

use super::report::{Counterexample, ExperimentKind, ExperimentReport, SampleTable};

const COUNTEREXAMPLE_LIMIT: usize = 5;

fn sample_from_length(p: &RingPresentation, e: u32, length: u64, rounding: Rounding) -> Result<SignatureSample> {
    let q = checked_q(p.p(), e)?;
    let rank = (p.p() as i64)
        .checked_pow(e * p.dimension() as u32)
        .ok_or_else(|| Error::Resource("rank overflows i64".into()))?;
    Ok(SignatureSample { e, q, length, estimate: Exact::new(length as i64, rank), rounding, zero: length == 0 })
}

/// `I_e^{[p]} ⊆ I_{e+1}` for the degeneracy ideals along `Δ = 0`.
pub fn monotone_containment(p: &RingPresentation, e: u32, engine: &Engine) -> Result<bool> {
    let empty = DivisorSpec::empty();
    let lower = degeneracy_ideal(p, e, &empty, Rounding::CeilQm1, engine)?;
    let upper = degeneracy_ideal(p, e + 1, &empty, Rounding::CeilQm1, engine)?;
    frobenius_power(&lower, p.p() as u64)?.is_subset_of(&upper, engine)
}

/// Estimates for `e = 1..=e_max`, one table per rounding convention.
pub fn signature_table(
    p: &RingPresentation,
    delta: &DivisorSpec,
    e_max: u32,
    roundings: &[Rounding],
    engine: &Engine,
) -> Result<ExperimentReport> {
    let kind = if delta.is_empty() { ExperimentKind::Compute } else { ExperimentKind::Pair };
    let mut report = ExperimentReport::new(kind, "", p.p());
    report.parameter("e_max", e_max);
    for &rounding in roundings {
        let mut samples = Vec::new();
        for e in 1..=e_max {
            match report.time(&format!("{}_e{e}", rounding.name()), || signature_estimate_with(p, e, delta, rounding, engine)) {
                Ok(s) => samples.push(s),
                Err(Error::Resource(msg)) => {
                    report.incomplete = true;
                    report.notes.push(format!("stopped at e = {e}: {msg}"));
                    break;
                }
                Err(err) => return Err(err),
            }
        }
        report.tables.push(SampleTable { label: rounding.name().to_string(), samples });
    }
    if delta.is_empty() {
        for e in 1..e_max {
            let ok = report.time(&format!("containment_e{e}"), || monotone_containment(p, e, engine));
            match ok {
                Ok(ok) => report.verdict(&format!("monotone_containment_e{e}"), ok, format!("I_{e}^[p] ⊆ I_{}", e + 1)),
                Err(Error::Resource(msg)) => {
                    report.incomplete = true;
                    report.notes.push(format!("containment at e = {e}: {msg}"));
                }
                Err(err) => return Err(err),
            }
        }
    }
    let in_range = report.tables.iter().flat_map(|t| &t.samples).all(|s| {
        s.estimate >= Exact::integer(0) && s.estimate <= Exact::integer(1)
    });
    report.verdict("estimates_in_unit_interval", in_range, "0 ≤ s_e ≤ 1");
    Ok(report)
}

/// Compares `R = A[w_1..w_δ]` with `A`: the ideal identity
/// `I_e(R) = I_e(A)R + (w_i^q)` and the length identity `ℓ_R = q^δ ℓ_A`.
pub fn flat_extension_check(
    p: &RingPresentation,
    delta_vars: usize,
    e: u32,
    delta: &DivisorSpec,
    engine: &Engine,
) -> Result<ExperimentReport> {
    if delta_vars == 0 {
        return Err(Error::usage("at least one variable must be adjoined"));
    }
    let q = checked_q(p.p(), e)?;
    let mut report = ExperimentReport::new(ExperimentKind::FlatExtension, "", p.p());
    report.parameter("delta", delta_vars);
    report.parameter("e", e);
    report.parameter("divisor", if delta.is_empty() { "none" } else { "given" });

    let r = p.adjoin_variables(delta_vars)?;
    let delta_r = delta.extend_to(r.ring())?;
    let ideal_a = report.time("degeneracy_a", || degeneracy_ideal(p, e, delta, Rounding::CeilQm1, engine))?;
    let ideal_r = report.time("degeneracy_r", || degeneracy_ideal(&r, e, &delta_r, Rounding::CeilQm1, engine))?;

    let n = p.nvars();
    let mut expected_gens = ideal_a.extend_to(r.ring())?.generators().to_vec();
    for i in n..r.nvars() {
        expected_gens.push(Polynomial::var(r.ring(), i).pow(q)?);
    }
    let expected = Ideal::new(r.ring(), expected_gens)?;
    let (gb_expected, gb_actual) = report.time("basis_comparison", || -> Result<_> {
        Ok((expected.groebner(engine)?.clone(), ideal_r.groebner(engine)?.clone()))
    })?;
    let ideal_ok = gb_expected == gb_actual;
    report.verdict(
        "ideal_identity",
        ideal_ok,
        format!("reduced bases with {} and {} elements", gb_expected.len(), gb_actual.len()),
    );
    if !ideal_ok {
        let only = |a: &[Polynomial], b: &[Polynomial]| -> Vec<String> {
            a.iter().filter(|g| !b.contains(g)).take(COUNTEREXAMPLE_LIMIT).map(|g| g.to_string()).collect()
        };
        report.counterexample = Some(Counterexample {
            expected: only(gb_expected.elements(), gb_actual.elements()),
            actual: only(gb_actual.elements(), gb_expected.elements()),
        });
    }

    let len_a = artinian_length(&ideal_a, engine)?;
    let len_r = artinian_length(&ideal_r, engine)?;
    let factor = q.pow(delta_vars as u32);
    let length_ok = len_r == factor * len_a;
    report.verdict("length_identity", length_ok, format!("ℓ_R = {len_r}, q^δ·ℓ_A = {factor}·{len_a}"));
    let sample_a = sample_from_length(p, e, len_a, Rounding::CeilQm1)?;
    let sample_r = sample_from_length(&r, e, len_r, Rounding::CeilQm1)?;
    report.verdict(
        "estimates_equal",
        sample_a.estimate == sample_r.estimate,
        format!("s_e(A) = {}, s_e(R) = {}", sample_a.estimate, sample_r.estimate),
    );
    report.tables.push(SampleTable { label: "A".into(), samples: vec![sample_a] });
    report.tables.push(SampleTable { label: "R".into(), samples: vec![sample_r] });
    Ok(report)
}

/// Fits the smallest `C` with `|s_e − s_{e+1}| ≤ C/p^e` over `e < e_max` and
/// checks that the scaled differences stay within `factor` times the first.
pub fn convergence_check(
    p: &RingPresentation,
    delta: &DivisorSpec,
    e_max: u32,
    factor: Exact,
    engine: &Engine,
) -> Result<ExperimentReport> {
    if e_max < 2 {
        return Err(Error::usage("convergence needs e_max ≥ 2"));
    }
    let mut report = signature_table(p, delta, e_max, &[Rounding::CeilQm1], engine)?;
    report.kind = ExperimentKind::Convergence;
    report.parameter("factor", factor);
    let samples = report.tables[0].samples.clone();
    let pe = |e: u32| Exact::integer((p.p() as i64).pow(e));
    let scaled: Vec<Exact> = samples
        .windows(2)
        .map(|w| (w[0].estimate - w[1].estimate).abs() * pe(w[0].e))
        .collect();
    for (i, c) in scaled.iter().enumerate() {
        report.diagnostic("scaled_difference", i as u32 + 1, *c);
    }
    match scaled.first() {
        None => {
            report.incomplete = true;
            report.notes.push("fewer than two estimates; no constant fitted".into());
        }
        Some(&first) => {
            let c = scaled.iter().copied().max().unwrap_or(first);
            report.decay_constant = Some(c);
            let bound = first * factor;
            let bounded = scaled.iter().all(|&v| v <= bound);
            report.verdict(
                "non_exploding",
                bounded,
                format!("max |s_e − s_(e+1)|·p^e = {c}, bound {factor}·{first} = {bound}"),
            );
        }
    }
    Ok(report)
}

/// Compares the `⌈(q−1)Δ⌉` and `⌊qΔ⌋` conventions; `|s^ceil − s^floor|·q`
/// must stay within twice its value at `e = 1`.
pub fn perturbation_experiment(
    p: &RingPresentation,
    delta: &DivisorSpec,
    e_max: u32,
    engine: &Engine,
) -> Result<ExperimentReport> {
    let mut report = signature_table(p, delta, e_max, &[Rounding::CeilQm1, Rounding::FloorQ], engine)?;
    report.kind = ExperimentKind::Perturbation;
    let ceil = report.tables[0].samples.clone();
    let floor = report.tables[1].samples.clone();
    let scaled: Vec<Exact> = ceil
        .iter()
        .zip(&floor)
        .map(|(a, b)| (a.estimate - b.estimate).abs() * Exact::integer(a.q as i64))
        .collect();
    for (i, d) in scaled.iter().enumerate() {
        report.diagnostic("scaled_rounding_gap", i as u32 + 1, *d);
    }
    if let Some(&first) = scaled.first() {
        let bound = first * Exact::integer(2);
        report.decay_constant = scaled.iter().copied().max();
        report.verdict(
            "bounded_gap",
            scaled.iter().all(|&d| d <= bound),
            format!("|s^ceil − s^floor|·q ≤ 2·{first} = {bound}"),
        );
    } else {
        report.incomplete = true;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Ring;

    fn a1() -> (RingPresentation, Engine) {
        let e = Engine::default();
        let r = Ring::new(3, &["x", "y", "z"]).unwrap();
        let v: Vec<_> = (0..3).map(|i| Polynomial::var(&r, i)).collect();
        let f = &(&v[0] * &v[1]) - &(&v[2] * &v[2]);
        (RingPresentation::from_generators(&r, vec![f], &e).unwrap(), e)
    }

    #[test]
    fn regular_flat_extension() {
        let e = Engine::default();
        let r = Ring::new(3, &["x", "y", "z"]).unwrap();
        let report = flat_extension_check(&RingPresentation::polynomial_ring(&r), 1, 1, &DivisorSpec::empty(), &e).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.table("A").unwrap().samples[0].length, 27);
        assert_eq!(report.table("R").unwrap().samples[0].length, 81);
    }

    #[test]
    fn a1_flat_extension_with_divisor() {
        let (p, e) = a1();
        let z = Polynomial::var(p.ring(), 2);
        let half = DivisorSpec::new(p.ring(), vec![(Exact::new(1, 2), z)]).unwrap();
        for d in [DivisorSpec::empty(), half] {
            let report = flat_extension_check(&p, 1, 1, &d, &e).unwrap();
            assert!(report.passed(), "{report:?}");
            let (a, r) = (&report.table("A").unwrap().samples[0], &report.table("R").unwrap().samples[0]);
            assert_eq!(r.length, 3 * a.length);
        }
    }

    #[test]
    fn convergence_of_regular_and_a1() {
        let e = Engine::default();
        let r = Ring::new(2, &["x", "y"]).unwrap();
        let reg = convergence_check(&RingPresentation::polynomial_ring(&r), &DivisorSpec::empty(), 3, Exact::integer(2), &e).unwrap();
        assert!(reg.passed());
        assert_eq!(reg.decay_constant, Some(Exact::integer(0)));

        let (p, e) = a1();
        let report = convergence_check(&p, &DivisorSpec::empty(), 3, Exact::integer(1), &e).unwrap();
        assert!(report.passed(), "{report:?}");
        // s_e = (q^2 + 1) / (2q^2), so |s_e − s_(e+1)|·3^e = 4/(9·3^e)
        assert_eq!(report.decay_constant, Some(Exact::new(4, 27)));
        assert_eq!(report.diagnostics[1].value, Exact::new(4, 81));
    }

    #[test]
    fn perturbation_with_empty_divisor_is_flat() {
        let (p, e) = a1();
        let report = perturbation_experiment(&p, &DivisorSpec::empty(), 2, &e).unwrap();
        assert!(report.passed());
        assert!(report.diagnostics.iter().all(|d| d.value == Exact::integer(0)));
    }

    #[test]
    fn containment_holds_on_a1() {
        let (p, e) = a1();
        assert!(monotone_containment(&p, 1, &e).unwrap());
    }
}
