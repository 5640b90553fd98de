use quclone_core::cazac::coeff_grid;
use quclone_core::circuits::{build_udec_circuit, counts_table, GateCounts, GateOp};
use quclone_core::protocol::{run_protocol, verify_identities, DecryptionRoute, ProtocolParams, VerifyOptions};
use quclone_core::tensor::{random_state, ComplexMatrix, Register};
use quclone_core::weyl::fourier;

#[test]
fn matrices_round_trip() {
    let f = fourier(3).unwrap();
    let text = serde_json::to_string(&f).unwrap();
    let back: ComplexMatrix = serde_json::from_str(&text).unwrap();
    assert_eq!(back, f);
}

#[test]
fn gates_round_trip() {
    let p = ProtocolParams::new(2, 2).unwrap();
    for op in build_udec_circuit(&p).unwrap().ops() {
        let text = serde_json::to_string(op).unwrap();
        let back: GateOp = serde_json::from_str(&text).unwrap();
        assert_eq!(&back, op);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        for key in ["kind", "targets", "controls", "control_levels"] {
            assert!(v.get(key).is_some(), "{key} missing in {text}");
        }
    }
}

#[test]
fn protocol_report_fields() {
    let p = ProtocolParams::new(3, 2).unwrap();
    let psi = random_state(Register::new(3, ["A"]).unwrap(), 9).unwrap();
    let r = run_protocol(&p, &psi, Some(9), DecryptionRoute::Circuit).unwrap();
    let v = serde_json::to_value(&r).unwrap();
    for key in ["d", "n", "seed", "marginals", "decryption_fidelity", "bell_residuals", "tolerances", "timings_ms"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["route"], "circuit");
    assert_eq!(v["marginals"].as_array().unwrap().len(), 2);
}

#[test]
fn identity_report_and_counts() {
    let r = verify_identities(2, &VerifyOptions { samples: 5, ..Default::default() }).unwrap();
    let v = serde_json::to_value(&r).unwrap();
    assert_eq!(v["d"], 2);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));

    let rows = counts_table(3..=3, &[2]).unwrap();
    let back: Vec<GateCounts> = serde_json::from_str(&serde_json::to_string(&rows).unwrap()).unwrap();
    assert_eq!(back, rows);
    assert_eq!(coeff_grid(2).unwrap().entries().len(), 4);
}
