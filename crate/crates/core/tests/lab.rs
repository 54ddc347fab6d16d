use fsig_core::groebner::Engine;
use fsig_core::io::{bundled_fixture, from_json, payload_json, to_json};
use fsig_core::lab::{
    bertini_experiment, convergence_check, hyperplane_sample, signature_table, BertiniParams, ExperimentKind,
    SliceStatus, RATIONAL_SAMPLING_CAVEAT,
};
use fsig_core::rational::Exact;
use fsig_core::signature::{DivisorSpec, Rounding};

#[test]
fn a1_table_and_decay_constant() {
    let engine = Engine::default();
    let pres = bundled_fixture("a1").unwrap().presentation(&engine).unwrap();
    let report = signature_table(&pres, &DivisorSpec::empty(), 3, &[Rounding::CeilQm1], &engine).unwrap();
    let got: Vec<Exact> = report.tables[0].samples.iter().map(|s| s.estimate).collect();
    assert_eq!(got, vec![Exact::new(5, 9), Exact::new(41, 81), Exact::new(365, 729)]);
    assert!(report.passed());

    let conv = convergence_check(&pres, &DivisorSpec::empty(), 3, Exact::integer(1), &engine).unwrap();
    assert_eq!(conv.kind, ExperimentKind::Convergence);
    assert_eq!(conv.decay_constant, Some(Exact::new(4, 27)));
    assert!(conv.passed());
}

#[test]
fn a1_pair_needs_a_larger_growth_factor() {
    // with Δ = div(z)/2 the scaled differences grow from 5/27 to 19/81
    let engine = Engine::default();
    let f = bundled_fixture("a1").unwrap();
    let pres = f.presentation(&engine).unwrap();
    let delta = f.divisor_spec().unwrap();
    let tight = convergence_check(&pres, &delta, 3, Exact::integer(1), &engine).unwrap();
    assert!(!tight.passed());
    let loose = convergence_check(&pres, &delta, 3, Exact::integer(2), &engine).unwrap();
    assert!(loose.passed());
}

#[test]
fn bertini_report_is_complete_and_round_trips() {
    let engine = Engine::default();
    let f = bundled_fixture("a1xline").unwrap();
    let pres = f.presentation(&engine).unwrap();
    let params = BertiniParams::new(Exact::new(1, 3), 1, 11, 4);
    let report = bertini_experiment(&pres, &DivisorSpec::empty(), &params, &engine).unwrap();
    assert_eq!(report.hyperplanes.len(), 4);
    assert!(report.notes.iter().any(|n| n == RATIONAL_SAMPLING_CAVEAT));
    let samples = hyperplane_sample(11, 4, 4, 3, None);
    for (h, s) in report.hyperplanes.iter().zip(&samples) {
        assert_eq!(&h.sample, s);
        if h.status == SliceStatus::Ok {
            assert!(h.points.iter().all(|pt| pt.slice.estimate <= Exact::integer(1)));
        }
    }
    let back = from_json(&to_json(&report).unwrap()).unwrap();
    assert_eq!(payload_json(&back).unwrap(), payload_json(&report).unwrap());
}
