//! The n=3, x_s=5 present-case trace, regenerated and compared against the
//! checked-in file (structure equal, numbers within 1e-12).

use qsearch::{build_trace_file, BooleanOracle, TraceFile, DEFAULT_MAX_SEARCH_QUBITS};
use serde_json::Value;

const GOLDEN: &str = include_str!("golden/trace_n3_xs5_present.json");

fn assert_close(path: &str, got: &Value, want: &Value) {
    match (got, want) {
        (Value::Number(a), Value::Number(b)) => {
            let (a, b) = (a.as_f64().unwrap(), b.as_f64().unwrap());
            assert!((a - b).abs() <= 1e-12, "{path}: {a} vs {b}");
        }
        (Value::Array(a), Value::Array(b)) => {
            assert_eq!(a.len(), b.len(), "{path}: length");
            for (k, (x, y)) in a.iter().zip(b).enumerate() {
                assert_close(&format!("{path}[{k}]"), x, y);
            }
        }
        (Value::Object(a), Value::Object(b)) => {
            let keys: Vec<_> = a.keys().collect();
            assert_eq!(keys, b.keys().collect::<Vec<_>>(), "{path}: keys");
            for (k, x) in a {
                assert_close(&format!("{path}.{k}"), x, &b[k]);
            }
        }
        _ => assert_eq!(got, want, "{path}"),
    }
}

fn regenerate() -> TraceFile {
    let oracle = BooleanOracle::direct(3, Some(5)).unwrap();
    build_trace_file(3, &oracle, 5, DEFAULT_MAX_SEARCH_QUBITS).unwrap()
}

#[test]
fn trace_matches_golden() {
    let got = serde_json::to_value(regenerate()).unwrap();
    let want: Value = serde_json::from_str(GOLDEN).unwrap();
    assert_close("$", &got, &want);
}

#[test]
fn golden_states_round_trip() {
    let file: TraceFile = serde_json::from_str(GOLDEN).unwrap();
    let states = file.states().unwrap();
    assert_eq!(states.len(), 7);
    // ψ6 = i^3 |101,0⟩ = −i |1010⟩.
    let last = &states[6];
    assert!((last.amplitude(10).im + 1.0).abs() < 1e-12);
    assert_eq!(file.measured_label, 5);
    assert!(file.max_deviation.unwrap() < 1e-12);
}
