use proptest::prelude::*;

use quclone_core::circuits::{build_udec_circuit, circuit_to_unitary, gate_counts, Circuit, GateOp};
use quclone_core::protocol::{run_protocol, u_enc, DecryptionRoute, ProtocolParams};
use quclone_core::tensor::{embed_apply, random_state, ComplexMatrix, Register};

fn small_protocol() -> impl Strategy<Value = (usize, usize)> {
    prop_oneof![(2usize..=4, 2usize..=3), (5usize..=6, Just(2usize))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn encryption_hides_and_decryption_restores((d, n) in small_protocol(), seed in any::<u64>(), target in 1usize..=3) {
        let p = ProtocolParams::new(d, n).unwrap().with_target(1 + (target - 1) % n).unwrap();
        let psi = random_state(Register::new(d, ["A"]).unwrap(), seed).unwrap();
        let r = run_protocol(&p, &psi, Some(seed), DecryptionRoute::Dense).unwrap();
        for m in &r.marginals {
            prop_assert!(*m <= 1e-10, "marginal {m}");
        }
        prop_assert!((r.decryption_fidelity - 1.0).abs() <= 1e-10);
        prop_assert!(r.closed_form_overlap >= 1.0 - 1e-10);
        for b in &r.bell_residuals {
            prop_assert!((b.fidelity - 1.0).abs() <= 1e-10);
        }
    }

    #[test]
    fn circuit_and_dense_decryption_agree(d in 2usize..=4, n in 1usize..=2, seed in any::<u64>()) {
        let p = ProtocolParams::new(d, n).unwrap();
        let psi = random_state(Register::new(d, ["A"]).unwrap(), seed).unwrap();
        let dense = run_protocol(&p, &psi, None, DecryptionRoute::Dense).unwrap();
        let circuit = run_protocol(&p, &psi, None, DecryptionRoute::Circuit).unwrap();
        prop_assert!((dense.decryption_fidelity - circuit.decryption_fidelity).abs() < 1e-12);
        prop_assert!((dense.closed_form_overlap - circuit.closed_form_overlap).abs() < 1e-12);
    }

    #[test]
    fn encryption_preserves_norm(d in 2usize..=4, n in 1usize..=2, seed in any::<u64>()) {
        let p = ProtocolParams::new(d, n).unwrap();
        let reg = Register::new(d, p.encryption_wires()).unwrap();
        let state = random_state(reg, seed).unwrap();
        let out = embed_apply(&state, &u_enc(&p).unwrap(), &p.encryption_wires()).unwrap();
        prop_assert!((out.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gate_count_model_shape(d in 2usize..=40, n in 1usize..=40) {
        let c = gate_counts(d, n).unwrap();
        prop_assert_eq!(c.ne2q, gate_counts(2, n).unwrap().ne2q);
        prop_assert!(c.nd1q >= c.ne1q);
        let scale = (n * d * d * d) as f64;
        let ratio = c.nd2q as f64 / scale;
        prop_assert!((4.0..=17.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn random_circuits_are_unitary_and_invertible(
        d in 2usize..=4,
        picks in proptest::collection::vec((0usize..6, 0usize..3, 0usize..3, 0usize..4, -3.0f64..3.0), 1..12),
    ) {
        let reg = Register::anonymous(d, 3).unwrap();
        let wire = |i: usize| format!("q{i}");
        let mut c = Circuit::new(reg);
        for (kind, a, b, p, phi) in picks {
            let b = if a == b { (b + 1) % 3 } else { b };
            let op = match kind {
                0 => GateOp::x_power(d, p as i64, wire(a)),
                1 => GateOp::z_power(d, p as i64, wire(a)).power_controlled(wire(b)),
                2 => GateOp::fourier(wire(a)),
                3 => GateOp::swap(wire(a), wire(b)),
                4 => GateOp::diagonal_phase((0..d).map(|k| phi * k as f64).collect(), wire(a)),
                _ => GateOp::scalar_phase(phi).level_controlled([(wire(a), p % d), (wire(b), 0)]),
            };
            c.push(op).unwrap();
        }
        let u = circuit_to_unitary(&c).unwrap();
        prop_assert!(u.is_unitary(1e-10).unitary);
        let mut round = c.clone();
        round.append(&c.dagger()).unwrap();
        let id = ComplexMatrix::identity(u.dim());
        prop_assert!(circuit_to_unitary(&round).unwrap().approx_eq(&id, 1e-10));
    }
}

#[test]
fn decryption_circuit_for_other_targets() {
    let p = ProtocolParams::new(3, 2).unwrap().with_target(2).unwrap();
    let c = build_udec_circuit(&p).unwrap();
    assert_eq!(c.register().wires(), ["S2", "N2", "N1"]);
    let u = circuit_to_unitary(&c).unwrap();
    assert!(u.approx_eq(&quclone_core::protocol::u_dec_dense(&p).unwrap(), 1e-10));
}
