//! Dense statevector simulation engine.
//!
//! Conventions (tested, relied on by every layer above):
//! - Qubit `k` is the least-significant bit `k` of the basis-state index, so
//!   applying X to qubit 0 of |00⟩ produces basis index 1.
//! - A contiguous register starting at offset `o` with width `w` holds the
//!   integer `(index >> o) & (2^w - 1)`.
//!
//! Gate kernels update disjoint amplitude pairs and may fan out across
//! threads; the arithmetic per amplitude is identical either way, so results
//! are bitwise deterministic. Measurement sampling draws a single sequential
//! stream from the seed.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rng::SeededRng;

/// Default qubit capacity: a 28-qubit state takes 4 GiB of amplitudes.
pub const DEFAULT_MAX_QUBITS: usize = 28;

/// State dimension above which gate kernels run on the rayon pool.
const PAR_DIM: usize = 1 << 16;

/// Rotation-angle matrix for a pUCR gate: one row per address value, one
/// column per data qubit, row-major storage.
#[derive(Clone, Debug, PartialEq)]
pub struct PucrAngles {
    rows: usize,
    cols: usize,
    values: Vec<f64>,
}

impl PucrAngles {
    pub fn new(rows: usize, cols: usize, values: Vec<f64>) -> Result<Self> {
        if !rows.is_power_of_two() || cols == 0 || values.len() != rows * cols {
            return Err(Error::PucrShape {
                rows,
                cols: if rows > 0 { values.len() / rows } else { 0 },
                want_rows: rows.max(1).next_power_of_two(),
                want_cols: cols,
            });
        }
        Ok(PucrAngles { rows, cols, values })
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        Self::new(rows, cols, vec![0.0; rows * cols])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// log2 of the row count: the address-register width this matrix serves.
    pub fn address_width(&self) -> usize {
        self.rows.trailing_zeros() as usize
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, angle: f64) {
        self.values[row * self.cols + col] = angle;
    }

    /// Row-major flat view, the serialization order.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn negated(&self) -> Self {
        PucrAngles {
            rows: self.rows,
            cols: self.cols,
            values: self.values.iter().map(|a| -a).collect(),
        }
    }
}

/// A pUCR gate: for every value `i` of the address register, rotate data
/// qubit `t` by RY(angles[i][t]).
#[derive(Clone, Debug, PartialEq)]
pub struct PucrGate {
    address: Vec<usize>,
    data: Vec<usize>,
    angles: PucrAngles,
}

impl PucrGate {
    pub fn new(address: Vec<usize>, data: Vec<usize>, angles: PucrAngles) -> Result<Self> {
        if angles.rows() != 1usize << address.len() || angles.cols() != data.len() {
            return Err(Error::PucrShape {
                rows: angles.rows(),
                cols: angles.cols(),
                want_rows: 1usize << address.len(),
                want_cols: data.len(),
            });
        }
        check_distinct(address.iter().chain(data.iter()).copied())?;
        Ok(PucrGate {
            address,
            data,
            angles,
        })
    }

    pub fn address(&self) -> &[usize] {
        &self.address
    }

    pub fn data(&self) -> &[usize] {
        &self.data
    }

    pub fn angles(&self) -> &PucrAngles {
        &self.angles
    }

    pub fn negated(&self) -> Self {
        PucrGate {
            address: self.address.clone(),
            data: self.data.clone(),
            angles: self.angles.negated(),
        }
    }
}

/// One gate operation over absolute qubit indices.
#[derive(Clone, Debug, PartialEq)]
pub enum GateOp {
    H(usize),
    X(usize),
    Ry(usize, f64),
    Cx {
        control: usize,
        target: usize,
    },
    Mcx {
        controls: Vec<usize>,
        target: usize,
    },
    /// Phase -1 on the all-ones subspace of the listed qubits (symmetric in
    /// its operands, so there is no control/target split).
    Mcz {
        qubits: Vec<usize>,
    },
    Pucr(PucrGate),
    CPucr {
        control: usize,
        gate: PucrGate,
    },
    /// Inverse of the wrapped operation.
    Adjoint(Box<GateOp>),
}

impl GateOp {
    /// All qubits the operation touches.
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            GateOp::H(q) | GateOp::X(q) | GateOp::Ry(q, _) => vec![*q],
            GateOp::Cx { control, target } => vec![*control, *target],
            GateOp::Mcx { controls, target } => {
                let mut v = controls.clone();
                v.push(*target);
                v
            }
            GateOp::Mcz { qubits } => qubits.clone(),
            GateOp::Pucr(g) => g.address.iter().chain(g.data.iter()).copied().collect(),
            GateOp::CPucr { control, gate } => std::iter::once(*control)
                .chain(gate.address.iter().copied())
                .chain(gate.data.iter().copied())
                .collect(),
            GateOp::Adjoint(inner) => inner.qubits(),
        }
    }

    /// The same unitary with any ADJOINT wrapper resolved into a concrete
    /// gate (RY and pUCR adjoints negate their angles; the rest are
    /// self-inverse).
    pub fn concrete(&self) -> GateOp {
        match self {
            GateOp::Adjoint(inner) => match inner.concrete() {
                GateOp::Ry(q, theta) => GateOp::Ry(q, -theta),
                GateOp::Pucr(g) => GateOp::Pucr(g.negated()),
                GateOp::CPucr { control, gate } => GateOp::CPucr {
                    control,
                    gate: gate.negated(),
                },
                self_inverse => self_inverse,
            },
            other => other.clone(),
        }
    }

    /// Concrete gate implementing this operation's inverse.
    pub fn adjoint(&self) -> GateOp {
        GateOp::Adjoint(Box::new(self.clone())).concrete()
    }

    fn validate(&self, num_qubits: usize) -> Result<()> {
        match self {
            GateOp::Mcz { qubits } if qubits.is_empty() => {
                return Err(Error::EmptyGate);
            }
            GateOp::Adjoint(inner) => return inner.validate(num_qubits),
            _ => {}
        }
        check_distinct(self.qubits().into_iter())?;
        for q in self.qubits() {
            if q >= num_qubits {
                return Err(Error::QubitOutOfRange {
                    index: q,
                    qubits: num_qubits,
                });
            }
        }
        Ok(())
    }
}

fn check_distinct(indices: impl Iterator<Item = usize>) -> Result<()> {
    let mut seen = 0u128;
    for q in indices {
        if q < 128 {
            let bit = 1u128 << q;
            if seen & bit != 0 {
                return Err(Error::DuplicateQubit(q));
            }
            seen |= bit;
        }
    }
    Ok(())
}

/// Measurement record: occurrence counts keyed by the measured outcome.
///
/// Bit `p` of an outcome is the measured value of the `p`-th listed qubit.
/// String keys print the outcome zero-padded in binary, so the first listed
/// qubit is the rightmost character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShotCounts {
    width: usize,
    total_shots: u64,
    counts: BTreeMap<u64, u64>,
}

impl ShotCounts {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn total_shots(&self) -> u64 {
        self.total_shots
    }

    pub fn count(&self, outcome: u64) -> u64 {
        self.counts.get(&outcome).copied().unwrap_or(0)
    }

    pub fn frequency(&self, outcome: u64) -> f64 {
        self.count(outcome) as f64 / self.total_shots as f64
    }

    /// (outcome, count) pairs in ascending outcome order.
    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.counts.iter().map(|(&k, &v)| (k, v))
    }

    pub fn key_string(&self, outcome: u64) -> String {
        format!("{outcome:0width$b}", width = self.width)
    }

    pub fn as_string_counts(&self) -> BTreeMap<String, u64> {
        self.counts
            .iter()
            .map(|(&k, &v)| (self.key_string(k), v))
            .collect()
    }
}

/// Normalized vector of 2^q complex amplitudes.
#[derive(Clone, Debug)]
pub struct QuantumState {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

impl QuantumState {
    /// |0...0⟩ on `num_qubits` qubits under the default capacity.
    pub fn new(num_qubits: usize) -> Result<Self> {
        Self::with_max(num_qubits, DEFAULT_MAX_QUBITS)
    }

    /// |0...0⟩ with an explicit qubit capacity.
    pub fn with_max(num_qubits: usize, max_qubits: usize) -> Result<Self> {
        if num_qubits == 0 || num_qubits > max_qubits.min(63) {
            return Err(Error::Capacity {
                qubits: num_qubits,
                max: max_qubits.min(63),
                bytes: 16u128 << num_qubits.min(123),
            });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1usize << num_qubits];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(QuantumState { num_qubits, amps })
    }

    /// State with the given amplitude vector; the length must be a power of
    /// two. Normalization is the caller's responsibility.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        if amps.is_empty() || !amps.len().is_power_of_two() {
            return Err(Error::NotPowerOfTwo(amps.len()));
        }
        Ok(QuantumState {
            num_qubits: amps.len().trailing_zeros() as usize,
            amps,
        })
    }

    /// Computational basis state |index⟩.
    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        let mut state = Self::with_max(num_qubits, 63)?;
        if index >= state.dim() {
            return Err(Error::QubitOutOfRange {
                index,
                qubits: num_qubits,
            });
        }
        state.amps[0] = Complex64::new(0.0, 0.0);
        state.amps[index] = Complex64::new(1.0, 0.0);
        Ok(state)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    pub fn probability(&self, index: usize) -> f64 {
        self.amps[index].norm_sqr()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Probability that measuring the listed qubits yields `outcome`
    /// (bit `p` of `outcome` is the `p`-th listed qubit).
    pub fn outcome_probability(&self, qubits: &[usize], outcome: u64) -> f64 {
        self.amps
            .iter()
            .enumerate()
            .filter(|(i, _)| outcome_of(*i, qubits) == outcome)
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }

    /// ⟨self|other⟩.
    pub fn inner_product(&self, other: &QuantumState) -> Result<Complex64> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::DimensionMismatch(self.num_qubits, other.num_qubits));
        }
        Ok(self
            .amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Apply one gate operation in place.
    pub fn apply(&mut self, op: &GateOp) -> Result<()> {
        op.validate(self.num_qubits)?;
        match op {
            GateOp::H(t) => {
                let s = std::f64::consts::FRAC_1_SQRT_2;
                pair_map(&mut self.amps, *t, move |_, a, b| (s * (a + b), s * (a - b)));
            }
            GateOp::X(t) => {
                pair_map(&mut self.amps, *t, |_, a, b| (b, a));
            }
            GateOp::Ry(t, theta) => {
                let (s, c) = (theta / 2.0).sin_cos();
                pair_map(&mut self.amps, *t, move |_, a, b| {
                    (c * a - s * b, s * a + c * b)
                });
            }
            GateOp::Cx { control, target } => {
                let cmask = 1usize << control;
                pair_map(&mut self.amps, *target, move |i0, a, b| {
                    if i0 & cmask != 0 {
                        (b, a)
                    } else {
                        (a, b)
                    }
                });
            }
            GateOp::Mcx { controls, target } => {
                let cmask = bit_mask(controls);
                pair_map(&mut self.amps, *target, move |i0, a, b| {
                    if i0 & cmask == cmask {
                        (b, a)
                    } else {
                        (a, b)
                    }
                });
            }
            GateOp::Mcz { qubits } => {
                let mask = bit_mask(qubits);
                if self.amps.len() < PAR_DIM {
                    for (i, a) in self.amps.iter_mut().enumerate() {
                        if i & mask == mask {
                            *a = -*a;
                        }
                    }
                } else {
                    self.amps.par_iter_mut().enumerate().for_each(|(i, a)| {
                        if i & mask == mask {
                            *a = -*a;
                        }
                    });
                }
            }
            GateOp::Pucr(gate) => self.apply_pucr(gate, None),
            GateOp::CPucr { control, gate } => self.apply_pucr(gate, Some(*control)),
            GateOp::Adjoint(_) => {
                let concrete = op.concrete();
                self.apply(&concrete)?;
            }
        }
        Ok(())
    }

    fn apply_pucr(&mut self, gate: &PucrGate, control: Option<usize>) {
        let cmask = control.map_or(0usize, |c| 1usize << c);
        let n = gate.address.len();
        let contiguous = gate.address.windows(2).all(|w| w[1] == w[0] + 1);
        let offset = gate.address.first().copied().unwrap_or(0);
        let amask = (1usize << n) - 1;
        for (col, &target) in gate.data.iter().enumerate() {
            let table: Vec<(f64, f64)> = (0..gate.angles.rows())
                .map(|row| (gate.angles.get(row, col) / 2.0).sin_cos())
                .collect();
            let address = gate.address.clone();
            pair_map(&mut self.amps, target, move |i0, a, b| {
                if cmask != 0 && i0 & cmask != cmask {
                    return (a, b);
                }
                let row = if contiguous {
                    (i0 >> offset) & amask
                } else {
                    address
                        .iter()
                        .enumerate()
                        .fold(0usize, |acc, (r, &q)| acc | (((i0 >> q) & 1) << r))
                };
                let (s, c) = table[row];
                (c * a - s * b, s * a + c * b)
            });
        }
    }

    /// Draw `shots` i.i.d. samples of the listed qubits' joint outcome.
    ///
    /// Identical `(state, qubits, shots, seed)` always yields identical
    /// counts; the draw stream is a single sequential ChaCha12 stream.
    pub fn sample(&self, qubits: &[usize], shots: u64, seed: u64) -> Result<ShotCounts> {
        if qubits.is_empty() {
            return Err(Error::EmptyMeasurement);
        }
        if shots == 0 {
            return Err(Error::ZeroShots);
        }
        check_distinct(qubits.iter().copied())?;
        for &q in qubits {
            if q >= self.num_qubits {
                return Err(Error::QubitOutOfRange {
                    index: q,
                    qubits: self.num_qubits,
                });
            }
        }

        let mut rng = SeededRng::new(seed);
        let mut draws: Vec<f64> = (0..shots).map(|_| rng.uniform()).collect();
        draws.sort_unstable_by(f64::total_cmp);

        let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
        let mut cum = 0.0;
        let mut next = 0usize;
        let mut last_support = 0usize;
        for (i, amp) in self.amps.iter().enumerate() {
            let p = amp.norm_sqr();
            if p > 0.0 {
                last_support = i;
            }
            cum += p;
            while next < draws.len() && draws[next] < cum {
                *counts.entry(outcome_of(i, qubits)).or_insert(0) += 1;
                next += 1;
            }
        }
        // Draws past the accumulated norm (rounding of order 1e-15) land on
        // the last basis state with support.
        if next < draws.len() {
            *counts
                .entry(outcome_of(last_support, qubits))
                .or_insert(0) += (draws.len() - next) as u64;
        }

        Ok(ShotCounts {
            width: qubits.len(),
            total_shots: shots,
            counts,
        })
    }

    /// Debug dump, one line per basis state with |amplitude| >= 1e-12:
    /// `<basis index> <re> <im>`.
    pub fn dump_amplitudes(&self) -> String {
        let mut out = String::new();
        for (i, a) in self.amps.iter().enumerate() {
            if a.norm() >= 1e-12 {
                writeln!(out, "{} {} {}", i, a.re, a.im).unwrap();
            }
        }
        out
    }
}

fn bit_mask(qubits: &[usize]) -> usize {
    qubits.iter().fold(0usize, |m, &q| m | (1usize << q))
}

fn outcome_of(index: usize, qubits: &[usize]) -> u64 {
    qubits
        .iter()
        .enumerate()
        .fold(0u64, |v, (p, &q)| v | ((((index >> q) & 1) as u64) << p))
}

/// Run `f` over every amplitude pair (i0, i0 | 1<<target); `f` receives the
/// low index i0 and both amplitudes and returns their new values. Pairs are
/// disjoint, so the parallel and sequential paths are bitwise identical.
fn pair_map<F>(amps: &mut [Complex64], target: usize, f: F)
where
    F: Fn(usize, Complex64, Complex64) -> (Complex64, Complex64) + Sync,
{
    let half = 1usize << target;
    let block = half << 1;
    let dim = amps.len();
    if dim < PAR_DIM {
        for (c, chunk) in amps.chunks_mut(block).enumerate() {
            let base = c * block;
            let (lo, hi) = chunk.split_at_mut(half);
            for (k, (a, b)) in lo.iter_mut().zip(hi.iter_mut()).enumerate() {
                let (na, nb) = f(base + k, *a, *b);
                *a = na;
                *b = nb;
            }
        }
    } else if dim / block >= 2 {
        amps.par_chunks_mut(block).enumerate().for_each(|(c, chunk)| {
            let base = c * block;
            let (lo, hi) = chunk.split_at_mut(half);
            for (k, (a, b)) in lo.iter_mut().zip(hi.iter_mut()).enumerate() {
                let (na, nb) = f(base + k, *a, *b);
                *a = na;
                *b = nb;
            }
        });
    } else {
        // Target is the top qubit: a single block, so fan out across halves.
        let (lo, hi) = amps.split_at_mut(half);
        lo.par_iter_mut()
            .zip(hi.par_iter_mut())
            .enumerate()
            .for_each(|(k, (a, b))| {
                let (na, nb) = f(k, *a, *b);
                *a = na;
                *b = nb;
            });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EPS: f64 = 1e-10;

    fn max_diff(state: &QuantumState, expected: &[Complex64]) -> f64 {
        state
            .amplitudes()
            .iter()
            .zip(expected.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    #[test]
    fn new_state_is_all_zeros_ket() {
        let s = QuantumState::new(1).unwrap();
        assert_eq!(s.amplitudes(), &[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]);
        let s = QuantumState::new(2).unwrap();
        assert_eq!(s.probability(0), 1.0);
        assert!(s.amplitudes()[1..].iter().all(|a| a.norm() == 0.0));
    }

    #[test]
    fn new_state_capacity_error_names_bytes() {
        let err = QuantumState::with_max(29, 28).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("29-qubit"), "{msg}");
        assert!(msg.contains(&(16u128 << 29).to_string()), "{msg}");
        assert!(QuantumState::new(0).is_err());
    }

    #[test]
    fn qubit_zero_is_least_significant() {
        let mut s = QuantumState::new(2).unwrap();
        s.apply(&GateOp::X(0)).unwrap();
        assert_eq!(s.probability(1), 1.0);
        assert_eq!(s.probability(2), 0.0);
    }

    #[test]
    fn hadamard_on_zero_gives_plus() {
        let mut s = QuantumState::new(1).unwrap();
        s.apply(&GateOp::H(0)).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!(max_diff(&s, &[Complex64::new(r, 0.0), Complex64::new(r, 0.0)]) < EPS);
    }

    #[test]
    fn pucr_with_zero_angles_is_identity() {
        let mut s = QuantumState::new(3).unwrap();
        s.apply(&GateOp::H(0)).unwrap();
        s.apply(&GateOp::H(1)).unwrap();
        let before = s.amplitudes().to_vec();
        let gate = PucrGate::new(vec![0, 1], vec![2], PucrAngles::zeros(4, 1).unwrap()).unwrap();
        s.apply(&GateOp::Pucr(gate)).unwrap();
        assert!(max_diff(&s, &before) < EPS);
    }

    #[test]
    fn pucr_pi_angle_entangles_address_and_data() {
        // H on the address then a [[0],[pi]] pUCR yields (|00⟩ + |11⟩)/√2.
        let mut s = QuantumState::new(2).unwrap();
        s.apply(&GateOp::H(0)).unwrap();
        let angles = PucrAngles::new(2, 1, vec![0.0, std::f64::consts::PI]).unwrap();
        let gate = PucrGate::new(vec![0], vec![1], angles).unwrap();
        s.apply(&GateOp::Pucr(gate)).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let want = [
            Complex64::new(r, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(r, 0.0),
        ];
        assert!(max_diff(&s, &want) < EPS);
    }

    #[test]
    fn pucr_shape_mismatch_rejected() {
        let angles = PucrAngles::zeros(4, 2).unwrap();
        assert!(PucrGate::new(vec![0], vec![2, 3], angles).is_err());
        assert!(PucrAngles::new(3, 1, vec![0.0; 3]).is_err());
    }

    #[test]
    fn inner_product_examples() {
        let mut plus = QuantumState::new(1).unwrap();
        plus.apply(&GateOp::H(0)).unwrap();
        assert!((plus.inner_product(&plus).unwrap().re - 1.0).abs() < EPS);

        let zero = QuantumState::new(1).unwrap();
        let one = QuantumState::basis(1, 1).unwrap();
        assert!(zero.inner_product(&one).unwrap().norm() < EPS);

        let two = QuantumState::new(2).unwrap();
        assert!(matches!(
            zero.inner_product(&two),
            Err(Error::DimensionMismatch(1, 2))
        ));
    }

    #[test]
    fn sampling_basis_state_is_deterministic() {
        // |01⟩ means qubit 0 = 1, qubit 1 = 0: basis index 1.
        let s = QuantumState::basis(2, 1).unwrap();
        let counts = s.sample(&[0, 1], 100, 7).unwrap();
        assert_eq!(counts.as_string_counts().get("01"), Some(&100));
        assert_eq!(counts.total_shots(), 100);
    }

    #[test]
    fn sampling_plus_state_is_binomial() {
        let mut s = QuantumState::new(1).unwrap();
        s.apply(&GateOp::H(0)).unwrap();
        let counts = s.sample(&[0], 2000, 11).unwrap();
        let sigma = (2000.0f64 * 0.25).sqrt();
        for outcome in 0..2u64 {
            let n = counts.count(outcome) as f64;
            assert!((n - 1000.0).abs() <= 5.0 * sigma, "outcome {outcome}: {n}");
        }
    }

    #[test]
    fn same_seed_same_counts() {
        let mut s = QuantumState::new(3).unwrap();
        for q in 0..3 {
            s.apply(&GateOp::H(q)).unwrap();
        }
        let a = s.sample(&[0, 1, 2], 500, 42).unwrap();
        let b = s.sample(&[0, 1, 2], 500, 42).unwrap();
        assert_eq!(a, b);
        let c = s.sample(&[0, 1, 2], 500, 43).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn sample_argument_validation() {
        let s = QuantumState::new(2).unwrap();
        assert!(matches!(s.sample(&[], 10, 0), Err(Error::EmptyMeasurement)));
        assert!(matches!(s.sample(&[0], 0, 0), Err(Error::ZeroShots)));
        assert!(matches!(
            s.sample(&[0, 0], 10, 0),
            Err(Error::DuplicateQubit(0))
        ));
        assert!(s.sample(&[2], 10, 0).is_err());
    }

    #[test]
    fn adjoint_resolves_to_concrete_inverse() {
        let op = GateOp::Ry(0, 0.7);
        assert_eq!(op.adjoint(), GateOp::Ry(0, -0.7));
        assert_eq!(GateOp::H(1).adjoint(), GateOp::H(1));
        let double = GateOp::Adjoint(Box::new(GateOp::Adjoint(Box::new(op.clone()))));
        assert_eq!(double.concrete(), op);
    }

    #[test]
    fn mcz_flips_all_ones_only() {
        let mut s = QuantumState::new(2).unwrap();
        for q in 0..2 {
            s.apply(&GateOp::H(q)).unwrap();
        }
        s.apply(&GateOp::Mcz { qubits: vec![0, 1] }).unwrap();
        assert!(s.amplitude(3).re < 0.0);
        for i in 0..3 {
            assert!(s.amplitude(i).re > 0.0);
        }
        assert!(matches!(
            s.apply(&GateOp::Mcz { qubits: vec![] }),
            Err(Error::EmptyGate)
        ));
    }

    #[test]
    fn dump_omits_negligible_amplitudes() {
        let mut s = QuantumState::new(2).unwrap();
        s.apply(&GateOp::H(0)).unwrap();
        let dump = s.dump_amplitudes();
        let lines: Vec<&str> = dump.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[0].starts_with("0 "));
        assert!(lines[1].starts_with("1 "));
    }

    #[test]
    fn gate_operands_must_be_disjoint() {
        let mut s = QuantumState::new(3).unwrap();
        assert!(matches!(
            s.apply(&GateOp::Cx {
                control: 1,
                target: 1
            }),
            Err(Error::DuplicateQubit(1))
        ));
        assert!(matches!(
            s.apply(&GateOp::Mcx {
                controls: vec![0, 2],
                target: 2
            }),
            Err(Error::DuplicateQubit(2))
        ));
    }
}
