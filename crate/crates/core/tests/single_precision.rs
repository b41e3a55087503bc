use qsearch::{run_pipeline, Answer, BooleanOracle, Gate32, GateKind, PipelineOptions, StateVector32};

#[test]
fn f32_pipeline_keeps_certainty() {
    for n in 1..=8 {
        let xs = (1u64 << n) - 1;
        let oracle = BooleanOracle::direct(n, Some(xs)).unwrap();
        let run = run_pipeline::<f32>(n, &oracle, xs, PipelineOptions::default()).unwrap();
        assert_eq!(run.outcome.answer, Answer::Yes);
        assert!((run.outcome.p_yes(xs) - 1.0).abs() < 1e-5);
    }
}

#[test]
fn f32_aliases() {
    let mut s = StateVector32::zero_state(2).unwrap();
    s.apply_to_search_qubits(&Gate32::new(GateKind::H));
    assert!((s.norm_sqr() - 1.0).abs() < 1e-6);
    assert!((s.amplitude(6).re - 0.5).abs() < 1e-6);
}
