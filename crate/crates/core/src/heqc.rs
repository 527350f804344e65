//! Hardware-efficient quantum counting: estimate the Grover phase from a
//! single overlap measurement instead of phase estimation, then convert to
//! the solution count and the iteration budget.
//!
//! Two measurement circuits are provided. The squared variant sandwiches one
//! Grover oracle between Hadamard layers on the address registers and reads
//! the probability of the all-zero address string, which equals the squared
//! overlap; it is valid when the solution count is at most half the search
//! space. The Hadamard-test variant adds one control qubit and recovers the
//! signed overlap, valid unconditionally.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::circuits::{
    build_controlled_grover_oracle, build_grover_oracle, run_capped, Circuit, ControlStyle,
    RegisterLayout, Sequence,
};
use crate::error::{Error, Result};
use crate::qcam::{brute_force_matches, plant_matches};
use crate::statevec::{GateOp, DEFAULT_MAX_QUBITS};

/// Which estimator produced an overlap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Squared,
    Hadamard,
    Exact,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::Squared => write!(f, "squared"),
            Variant::Hadamard => write!(f, "hadamard"),
            Variant::Exact => write!(f, "exact"),
        }
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "squared" => Ok(Variant::Squared),
            "hadamard" => Ok(Variant::Hadamard),
            "exact" => Ok(Variant::Exact),
            other => Err(format!(
                "unknown variant {other:?}; expected squared, hadamard or exact"
            )),
        }
    }
}

/// Phase, solution-count and iteration estimate from one counting run.
#[derive(Clone, Debug, Serialize)]
pub struct HeqcEstimate {
    pub variant: Variant,
    /// Estimated overlap; for the squared variant this is +sqrt(p0).
    pub overlap: f64,
    /// Grover phase theta = arccos(overlap), radians in [0, pi].
    pub theta: f64,
    /// Estimated solution count N sin^2(theta/2); real-valued, rounding is a
    /// display concern.
    pub m_est: f64,
    /// Iteration count; `None` when theta = 0 signals no solutions.
    pub k: Option<u32>,
    /// Search-space size used for the conversion.
    pub search_space: u64,
    /// True when the raw estimate fell outside its valid range and was
    /// clamped to the boundary.
    pub clamped: bool,
    /// Shot count; 0 for the exact variant.
    pub shots: u64,
    pub seed: u64,
}

/// Squared-overlap circuit: H layer, Grover oracle, H layer on the combined
/// address register; data registers and ancilla are workspace.
pub fn heqc_squared_circuit(a: &Sequence, b: &Sequence) -> Result<Circuit> {
    let layout = RegisterLayout::for_sequences(a, b)?;
    let oracle = build_grover_oracle(a, b)?;
    let mut circuit = Circuit::with_registers(&layout.registers());
    for q in layout.addr_all() {
        circuit.push(GateOp::H(q))?;
    }
    circuit.extend(oracle.ops().iter().cloned())?;
    for q in layout.addr_all() {
        circuit.push(GateOp::H(q))?;
    }
    Ok(circuit)
}

/// Hadamard-test circuit: one control qubit above the matching layout, the
/// Grover oracle controlled on it. Controlling only the central MCZ is
/// exactly equivalent to controlling every gate, because with the control
/// off the load/XOR/X layers cancel in pairs; the fully controlled build is
/// kept for the equivalence check.
pub fn heqc_hadamard_circuit(a: &Sequence, b: &Sequence, style: ControlStyle) -> Result<Circuit> {
    let layout = RegisterLayout::for_sequences(a, b)?;
    let mut circuit = build_controlled_grover_oracle(a, b, style)?;
    let ctrl = layout.total_qubits();
    let mut ops = vec![GateOp::H(ctrl)];
    for q in layout.addr_all() {
        ops.push(GateOp::H(q));
    }
    ops.extend(circuit.ops().iter().cloned());
    for q in layout.addr_all() {
        ops.push(GateOp::H(q));
    }
    ops.push(GateOp::H(ctrl));
    circuit = Circuit::with_registers(&[
        ("addr_a", layout.n_a),
        ("addr_b", layout.n_b),
        ("data_a", layout.depth),
        ("data_b", layout.depth),
        ("anc", 1),
        ("ctrl", 1),
    ]);
    circuit.extend(ops)?;
    Ok(circuit)
}

/// Fraction of shots measuring the all-zero string on the address qubits of
/// the squared-overlap circuit.
pub fn run_heqc_squared(a: &Sequence, b: &Sequence, shots: u64, seed: u64) -> Result<f64> {
    run_heqc_squared_capped(a, b, shots, seed, DEFAULT_MAX_QUBITS)
}

pub fn run_heqc_squared_capped(
    a: &Sequence,
    b: &Sequence,
    shots: u64,
    seed: u64,
    max_qubits: usize,
) -> Result<f64> {
    let layout = RegisterLayout::for_sequences(a, b)?;
    let state = run_capped(&heqc_squared_circuit(a, b)?, max_qubits)?;
    let counts = state.sample(&layout.addr_all(), shots, seed)?;
    Ok(counts.frequency(0))
}

/// Empirical ⟨X⟩ of the control qubit of the Hadamard-test circuit, an
/// estimate of the (real) overlap.
pub fn run_heqc_hadamard(a: &Sequence, b: &Sequence, shots: u64, seed: u64) -> Result<f64> {
    run_heqc_hadamard_capped(a, b, shots, seed, DEFAULT_MAX_QUBITS)
}

pub fn run_heqc_hadamard_capped(
    a: &Sequence,
    b: &Sequence,
    shots: u64,
    seed: u64,
    max_qubits: usize,
) -> Result<f64> {
    let layout = RegisterLayout::for_sequences(a, b)?;
    let circuit = heqc_hadamard_circuit(a, b, ControlStyle::MczOnly)?;
    let state = run_capped(&circuit, max_qubits)?;
    let ctrl = layout.total_qubits();
    let counts = state.sample(&[ctrl], shots, seed)?;
    let zeros = counts.count(0) as f64;
    let ones = counts.count(1) as f64;
    Ok((zeros - ones) / shots as f64)
}

/// Exact overlap ⟨+|O_G|+⟩ on the simulator: zero shot noise.
pub fn exact_overlap(a: &Sequence, b: &Sequence) -> Result<f64> {
    exact_overlap_capped(a, b, DEFAULT_MAX_QUBITS)
}

pub fn exact_overlap_capped(a: &Sequence, b: &Sequence, max_qubits: usize) -> Result<f64> {
    let layout = RegisterLayout::for_sequences(a, b)?;
    let mut plus = crate::statevec::QuantumState::with_max(layout.total_qubits(), max_qubits)?;
    for q in layout.addr_all() {
        plus.apply(&GateOp::H(q))?;
    }
    let mut ogplus = plus.clone();
    for op in build_grover_oracle(a, b)?.ops() {
        ogplus.apply(op)?;
    }
    Ok(plus.inner_product(&ogplus)?.re)
}

/// Convert a measured overlap (or squared overlap) to the Grover phase.
/// Returns the phase and whether the input had to be clamped into range.
pub fn theta_from_overlap(measured: f64, variant: Variant) -> Result<(f64, bool)> {
    if measured.is_nan() {
        return Err(Error::NanOverlap);
    }
    match variant {
        Variant::Squared => {
            let clamped = !(0.0..=1.0).contains(&measured);
            let p0 = measured.clamp(0.0, 1.0);
            Ok((p0.sqrt().acos(), clamped))
        }
        Variant::Hadamard | Variant::Exact => {
            let clamped = !(-1.0..=1.0).contains(&measured);
            let c = measured.clamp(-1.0, 1.0);
            Ok((c.acos(), clamped))
        }
    }
}

/// Solution count implied by the phase: N sin^2(theta/2).
pub fn solutions_from_theta(theta: f64, search_space: u64) -> f64 {
    search_space as f64 * (theta / 2.0).sin().powi(2)
}

/// Iteration count ROUND((pi - theta) / (2 theta)), rounding half away from
/// zero. Guarantees success probability at least 0.5 when theta is exact.
pub fn iterations_from_theta(theta: f64) -> Result<u32> {
    if theta.is_nan() {
        return Err(Error::NanOverlap);
    }
    if theta <= 0.0 {
        return Err(Error::NoSolutions);
    }
    Ok(((std::f64::consts::PI - theta) / (2.0 * theta)).round() as u32)
}

/// Probability that measuring after k iterations yields a solution:
/// sin^2((2k+1) theta / 2).
pub fn grover_success_probability(theta: f64, k: u32) -> f64 {
    ((2 * k + 1) as f64 * theta / 2.0).sin().powi(2)
}

/// Full counting pipeline: run the chosen estimator and convert to phase,
/// solution count, and iteration count.
pub fn heqc_pipeline(
    a: &Sequence,
    b: &Sequence,
    shots: u64,
    seed: u64,
    variant: Variant,
) -> Result<HeqcEstimate> {
    heqc_pipeline_capped(a, b, shots, seed, variant, DEFAULT_MAX_QUBITS)
}

pub fn heqc_pipeline_capped(
    a: &Sequence,
    b: &Sequence,
    shots: u64,
    seed: u64,
    variant: Variant,
    max_qubits: usize,
) -> Result<HeqcEstimate> {
    let (measured, overlap, shots_used) = match variant {
        Variant::Squared => {
            let p0 = run_heqc_squared_capped(a, b, shots, seed, max_qubits)?;
            (p0, p0.clamp(0.0, 1.0).sqrt(), shots)
        }
        Variant::Hadamard => {
            let x = run_heqc_hadamard_capped(a, b, shots, seed, max_qubits)?;
            (x, x.clamp(-1.0, 1.0), shots)
        }
        Variant::Exact => {
            let c = exact_overlap_capped(a, b, max_qubits)?;
            (c, c.clamp(-1.0, 1.0), 0)
        }
    };
    let (theta, clamped) = theta_from_overlap(measured, variant)?;
    let search_space = (a.len() as u64) * (b.len() as u64);
    let m_est = solutions_from_theta(theta, search_space);
    let k = match iterations_from_theta(theta) {
        Ok(k) => Some(k),
        Err(Error::NoSolutions) => None,
        Err(e) => return Err(e),
    };
    Ok(HeqcEstimate {
        variant,
        overlap,
        theta,
        m_est,
        k,
        search_space,
        clamped,
        shots: shots_used,
        seed,
    })
}

/// Configuration for a planted phase-reconstruction sweep.
#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub len_a: usize,
    pub len_b: usize,
    pub depth: usize,
    pub m_values: Vec<u64>,
    pub repeats: u32,
    pub shots: u64,
    pub seed: u64,
    pub variant: Variant,
    pub max_qubits: usize,
}

impl SweepConfig {
    /// Desk-scale sweep: 256 address pairs, counts 1 through 8, 21 repeats
    /// of 2000 shots. Depth 5 leaves enough headroom in each value class for
    /// duplicate-free planted sequences.
    pub fn desk_scale() -> Self {
        SweepConfig {
            len_a: 16,
            len_b: 16,
            depth: 5,
            m_values: (1..=8).collect(),
            repeats: 21,
            shots: 2000,
            seed: 7,
            variant: Variant::Squared,
            max_qubits: DEFAULT_MAX_QUBITS,
        }
    }

    /// Full-scale sweep: two 32-item 8-bit sequences (1024 address pairs, a
    /// 27-qubit, 2 GiB state), counts 1 through 32.
    pub fn full_scale() -> Self {
        SweepConfig {
            len_a: 32,
            len_b: 32,
            depth: 8,
            m_values: (1..=32).collect(),
            repeats: 21,
            shots: 2000,
            seed: 7,
            variant: Variant::Squared,
            max_qubits: DEFAULT_MAX_QUBITS,
        }
    }
}

/// One trial of the sweep.
#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub m_true: u64,
    pub trial: u32,
    pub theta_hat: f64,
    pub theta_true: f64,
    pub m_est: f64,
    pub k: Option<u32>,
}

/// Per-M aggregate of sweep rows.
#[derive(Clone, Debug, Serialize)]
pub struct SweepSummary {
    pub m_true: u64,
    pub theta_true: f64,
    pub mean_theta: f64,
    pub std_theta: f64,
    pub mean_m_est: f64,
    pub trials: u32,
}

/// Plant exactly M matches per trial, reconstruct the phase, and tabulate.
/// Trials run independently (parallel across trials, one state each); rows
/// come back ordered by (M, trial).
pub fn heqc_sweep(config: &SweepConfig) -> Result<Vec<SweepRow>> {
    let n = (config.len_a as u64) * (config.len_b as u64);
    let cells: Vec<(u64, u32)> = config
        .m_values
        .iter()
        .flat_map(|&m| (0..config.repeats).map(move |t| (m, t)))
        .collect();
    cells
        .par_iter()
        .map(|&(m, trial)| {
            let trial_seed = config.seed + trial as u64;
            let (a, b) = plant_matches(config.len_a, config.len_b, config.depth, m, trial_seed)?;
            debug_assert_eq!(brute_force_matches(&a, &b)?.len() as u64, m);
            let est = heqc_pipeline_capped(
                &a,
                &b,
                config.shots,
                trial_seed,
                config.variant,
                config.max_qubits,
            )?;
            let theta_true = 2.0 * ((m as f64 / n as f64).sqrt()).asin();
            Ok(SweepRow {
                m_true: m,
                trial,
                theta_hat: est.theta,
                theta_true,
                m_est: est.m_est,
                k: est.k,
            })
        })
        .collect()
}

pub fn summarize_sweep(rows: &[SweepRow]) -> Vec<SweepSummary> {
    let mut out: Vec<SweepSummary> = Vec::new();
    let mut by_m: std::collections::BTreeMap<u64, Vec<&SweepRow>> = Default::default();
    for row in rows {
        by_m.entry(row.m_true).or_default().push(row);
    }
    for (m, group) in by_m {
        let count = group.len() as f64;
        let mean = group.iter().map(|r| r.theta_hat).sum::<f64>() / count;
        let var = group
            .iter()
            .map(|r| (r.theta_hat - mean).powi(2))
            .sum::<f64>()
            / (count - 1.0).max(1.0);
        out.push(SweepSummary {
            m_true: m,
            theta_true: group[0].theta_true,
            mean_theta: mean,
            std_theta: var.sqrt(),
            mean_m_est: group.iter().map(|r| r.m_est).sum::<f64>() / count,
            trials: group.len() as u32,
        });
    }
    out
}
