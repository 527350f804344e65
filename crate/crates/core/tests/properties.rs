//! Randomized invariants for the simulation engine and the circuit layer.

use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::PI;

use qcam_core::circuits::{
    circuit_from_json, circuit_to_json, BitString, Circuit, Sequence,
};
use qcam_core::qcam::{brute_force_matches, pad_sequences};
use qcam_core::statevec::{GateOp, PucrAngles, PucrGate, QuantumState};

fn max_amp_diff(a: &QuantumState, b: &QuantumState) -> f64 {
    a.amplitudes()
        .iter()
        .zip(b.amplitudes())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Any gate over `q` qubits, adjoint wrappers included.
fn arb_gate(q: usize) -> BoxedStrategy<GateOp> {
    let qubits = move || 0..q;
    let base = prop_oneof![
        qubits().prop_map(GateOp::H),
        qubits().prop_map(GateOp::X),
        (qubits(), -PI..PI).prop_map(|(t, a)| GateOp::Ry(t, a)),
        // Index permutations supply disjoint control/target picks.
        perm(q).prop_map(|p| GateOp::Cx {
            control: p[0],
            target: p[1],
        }),
        (perm(q), 1..q).prop_map(|(p, nc)| GateOp::Mcx {
            controls: p[..nc].to_vec(),
            target: p[nc],
        }),
        (perm(q), 1..=q).prop_map(|(p, n)| GateOp::Mcz {
            qubits: p[..n].to_vec(),
        }),
        arb_pucr(q, false),
        arb_pucr(q, true),
    ];
    base.prop_recursive(1, 2, 1, |inner| {
        inner.prop_map(|g| GateOp::Adjoint(Box::new(g)))
    })
    .boxed()
}

fn perm(q: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..q).collect::<Vec<usize>>()).prop_shuffle()
}

fn arb_pucr(q: usize, controlled: bool) -> BoxedStrategy<GateOp> {
    let ctrl_slots = controlled as usize;
    let max_n = 2.min(q - 1 - ctrl_slots);
    (perm(q), 0..=max_n, 0..3usize)
        .prop_flat_map(move |(p, n, extra)| {
            let d_max = (q - ctrl_slots - n).min(2);
            let d = 1 + extra % d_max;
            let address = p[..n].to_vec();
            let data = p[n..n + d].to_vec();
            let ctrl = p[(n + d).min(q - 1)];
            (
                Just((address, data, ctrl)),
                proptest::collection::vec(-PI..PI, (1 << n) * d),
            )
        })
        .prop_map(move |((address, data, ctrl), values)| {
            let rows = 1 << address.len();
            let angles = PucrAngles::new(rows, data.len(), values).unwrap();
            let gate = PucrGate::new(address, data, angles).unwrap();
            if controlled {
                GateOp::CPucr {
                    control: ctrl,
                    gate,
                }
            } else {
                GateOp::Pucr(gate)
            }
        })
        .boxed()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    /// The norm survives every gate in a random sequence.
    #[test]
    fn norm_is_preserved_by_random_gate_sequences(
        q in 2..=6usize,
        seeds in proptest::collection::vec(any::<u32>(), 1..20),
    ) {
        let mut state = QuantumState::new(q).unwrap();
        let mut runner = proptest::test_runner::TestRunner::deterministic();
        for seed in seeds {
            let gate = arb_gate(q)
                .new_tree(&mut runner)
                .unwrap()
                .current();
            let _ = seed;
            state.apply(&gate).unwrap();
            let norm = state.norm_sqr();
            prop_assert!((norm - 1.0).abs() < 1e-10, "norm drifted to {norm}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    /// op then ADJOINT(op) restores the state, for every gate kind.
    #[test]
    fn adjoint_round_trip_restores_the_state(q in 3..=5usize, gate_pick in any::<u64>()) {
        let mut runner = proptest::test_runner::TestRunner::deterministic();
        // A non-trivial start state.
        let mut state = QuantumState::new(q).unwrap();
        for t in 0..q {
            state.apply(&GateOp::H(t)).unwrap();
            state.apply(&GateOp::Ry(t, (gate_pick % 97) as f64 / 31.0)).unwrap();
        }
        let before = state.clone();
        for _ in 0..=(gate_pick % 5) {
            let _ = arb_gate(q).new_tree(&mut runner).unwrap();
        }
        let gate = arb_gate(q).new_tree(&mut runner).unwrap().current();
        state.apply(&gate).unwrap();
        state.apply(&GateOp::Adjoint(Box::new(gate.clone()))).unwrap();
        prop_assert!(
            max_amp_diff(&state, &before) < 1e-10,
            "round trip failed for {gate:?}"
        );
    }

    /// Padding preserves the match set and never lets a pad index match.
    #[test]
    fn padding_is_sound(
        av in proptest::collection::vec(0u64..16, 1..10),
        bv in proptest::collection::vec(0u64..16, 1..10),
    ) {
        let a = Sequence::from_values(&av, 4).unwrap();
        let b = Sequence::from_values(&bv, 4).unwrap();
        let (pa, pb) = pad_sequences(&a, &b).unwrap();
        prop_assert!(pa.is_power_of_two_len() && pb.is_power_of_two_len());
        let before = brute_force_matches(&a, &b).unwrap();
        let after = brute_force_matches(&pa, &pb).unwrap();
        prop_assert_eq!(&before, &after);
        for &(i, j) in &after {
            prop_assert!(i < av.len() && j < bv.len());
        }
    }

    /// Gate-list JSON round-trips arbitrary circuits.
    #[test]
    fn circuit_json_round_trips(ops_seed in any::<u64>(), q in 3..=5usize) {
        let mut runner = proptest::test_runner::TestRunner::deterministic();
        let mut circuit = Circuit::with_registers(&[("r", q)]);
        for _ in 0..(ops_seed % 7 + 1) {
            let gate = arb_gate(q).new_tree(&mut runner).unwrap().current();
            // Export resolves adjoints, so compare against the concrete form.
            circuit.push(gate.concrete()).unwrap();
        }
        let parsed = circuit_from_json(&circuit_to_json(&circuit)).unwrap();
        prop_assert_eq!(parsed.ops(), circuit.ops());
    }

    /// Register round-trip of bit-strings is the involution it should be.
    #[test]
    fn bitstring_register_value_round_trips(value in 0u64..256, depth in 8usize..=8) {
        let b = BitString::new(value, depth).unwrap();
        let rt = BitString::from_register_value(b.register_value(), depth).unwrap();
        prop_assert_eq!(rt, b);
    }
}

#[test]
fn grover_iteration_stays_in_the_two_dim_subspace() {
    // Leakage out of span{uniform-over-misses, uniform-over-hits} stays
    // below 1e-9 through ten iterations.
    use qcam_core::circuits::{grover_iteration_ops, RegisterLayout};
    use qcam_core::qcam::plant_matches;

    let (a, b) = plant_matches(8, 8, 5, 6, 123).unwrap();
    let layout = RegisterLayout::for_sequences(&a, &b).unwrap();
    let matches = brute_force_matches(&a, &b).unwrap();
    let q = layout.total_qubits();
    let n = a.len() * b.len();

    let mut alpha = vec![Complex64::new(0.0, 0.0); 1 << q];
    let mut beta = vec![Complex64::new(0.0, 0.0); 1 << q];
    let m = matches.len();
    for i in 0..a.len() {
        for j in 0..b.len() {
            let index = i | (j << layout.n_a);
            if matches.contains(&(i, j)) {
                beta[index] = Complex64::new(1.0 / (m as f64).sqrt(), 0.0);
            } else {
                alpha[index] = Complex64::new(1.0 / ((n - m) as f64).sqrt(), 0.0);
            }
        }
    }

    let ops = grover_iteration_ops(&a, &b, &layout).unwrap();
    let mut state = QuantumState::new(q).unwrap();
    for t in layout.addr_all() {
        state.apply(&GateOp::H(t)).unwrap();
    }
    for iter in 0..10 {
        for op in &ops {
            state.apply(op).unwrap();
        }
        let project = |basis: &[Complex64]| -> Complex64 {
            basis
                .iter()
                .zip(state.amplitudes())
                .map(|(x, y)| x.conj() * y)
                .sum()
        };
        let ca = project(&alpha);
        let cb = project(&beta);
        let residual: f64 = state
            .amplitudes()
            .iter()
            .enumerate()
            .map(|(idx, amp)| (amp - ca * alpha[idx] - cb * beta[idx]).norm_sqr())
            .sum();
        assert!(
            residual.sqrt() < 1e-9,
            "leakage {} after iteration {}",
            residual.sqrt(),
            iter + 1
        );
    }
}

#[test]
fn grover_oracle_is_an_involution() {
    use qcam_core::circuits::build_grover_oracle;
    use qcam_core::qcam::plant_matches;

    for seed in 0..10u64 {
        let (a, b) = plant_matches(4, 8, 4, (seed % 5) + 1, seed).unwrap();
        let circuit = build_grover_oracle(&a, &b).unwrap();
        let q = circuit.num_qubits();
        let mut state = QuantumState::new(q).unwrap();
        for t in 0..q - 1 {
            state.apply(&GateOp::H(t)).unwrap();
        }
        let before = state.clone();
        for _ in 0..2 {
            for op in circuit.ops() {
                state.apply(op).unwrap();
            }
        }
        assert!(
            max_amp_diff(&state, &before) < 1e-9,
            "oracle squared differs from identity (seed {seed})"
        );
    }
}
