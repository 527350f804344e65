//! End-to-end content-addressable matching: padding, the classical
//! brute-force oracle, planted test instances, and the shot-based search
//! driver with classical verification of every measured pair.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::circuits::{build_qcam_circuit, run_capped, BitString, RegisterLayout, Sequence};
use crate::error::{Error, Result};
use crate::rng::SeededRng;
use crate::statevec::DEFAULT_MAX_QUBITS;

/// One verified measured match.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchRecord {
    pub addr_a: usize,
    pub addr_b: usize,
    pub data_a: BitString,
    pub data_b: BitString,
    /// Shot multiplicity.
    pub count: u64,
}

/// Outcome of one search run. Record counts plus `rejected` always sum to
/// `shots`; rejected shots are non-matches that survived amplification and
/// estimate the residual failure probability.
#[derive(Clone, Debug)]
pub struct QcamResult {
    pub records: Vec<MatchRecord>,
    pub rejected: u64,
    pub shots: u64,
    pub k: u32,
    pub seed: u64,
}

impl QcamResult {
    pub fn verified(&self) -> u64 {
        self.records.iter().map(|r| r.count).sum()
    }

    pub fn verified_fraction(&self) -> f64 {
        self.verified() as f64 / self.shots as f64
    }

    /// Deduplicated verified address pairs.
    pub fn matches(&self) -> BTreeSet<(usize, usize)> {
        self.records
            .iter()
            .map(|r| (r.addr_a, r.addr_b))
            .collect()
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct MatchDoc {
            i: usize,
            j: usize,
            value: String,
            count: u64,
        }
        #[derive(Serialize)]
        struct ResultDoc {
            k: u32,
            shots: u64,
            seed: u64,
            matches: Vec<MatchDoc>,
            rejected: u64,
        }
        let doc = ResultDoc {
            k: self.k,
            shots: self.shots,
            seed: self.seed,
            matches: self
                .records
                .iter()
                .map(|r| MatchDoc {
                    i: r.addr_a,
                    j: r.addr_b,
                    value: r.data_a.to_string(),
                    count: r.count,
                })
                .collect(),
            rejected: self.rejected,
        };
        serde_json::to_string_pretty(&doc).expect("result serialization cannot fail")
    }
}

/// Deduplicated verified address pairs of a run.
pub fn collect_matches(result: &QcamResult) -> BTreeSet<(usize, usize)> {
    result.matches()
}

/// Pad both sequences to power-of-two lengths without introducing matches.
///
/// If both lengths already are powers of two the inputs pass through
/// unchanged. Otherwise both sequences move to depth d+1: real items gain a
/// leading 0, pad items of `a` are 1 followed by d zeros, pad items of `b`
/// are 1 followed by d ones. Pads match no real item and the two pad values
/// differ from each other whenever d >= 1.
pub fn pad_sequences(a: &Sequence, b: &Sequence) -> Result<(Sequence, Sequence)> {
    if a.depth() != b.depth() {
        return Err(Error::DepthMismatch(a.depth(), b.depth()));
    }
    if a.is_power_of_two_len() && b.is_power_of_two_len() {
        return Ok((a.clone(), b.clone()));
    }
    let d = a.depth();
    if d == 0 {
        return Err(Error::ZeroDepthPad);
    }

    let widen_and_pad = |seq: &Sequence, pad_value: u64| -> Result<Sequence> {
        let mut items: Vec<BitString> = seq
            .items()
            .iter()
            .map(|b| b.widened())
            .collect::<Result<Vec<_>>>()?;
        let target = seq.len().next_power_of_two();
        while items.len() < target {
            items.push(BitString::new(pad_value, d + 1)?);
        }
        Sequence::new(items)
    };

    let pad_a = 1u64 << d; // 1 followed by d zeros
    let pad_b = (1u64 << (d + 1)) - 1; // 1 followed by d ones
    Ok((widen_and_pad(a, pad_a)?, widen_and_pad(b, pad_b)?))
}

/// Exact match set {(i, j) : a_i = b_j} by double loop; the ground truth the
/// quantum path is verified against.
pub fn brute_force_matches(a: &Sequence, b: &Sequence) -> Result<BTreeSet<(usize, usize)>> {
    if a.depth() != b.depth() {
        return Err(Error::DepthMismatch(a.depth(), b.depth()));
    }
    let mut matches = BTreeSet::new();
    for (i, x) in a.items().iter().enumerate() {
        for (j, y) in b.items().iter().enumerate() {
            if x == y {
                matches.insert((i, j));
            }
        }
    }
    Ok(matches)
}

/// Construct a random sequence pair with exactly `m` matching address pairs.
///
/// Values are split into two depth-classes by their leading bit; `a` draws
/// from the 0-class and `b`'s filler from the 1-class, so only deliberately
/// planted values can match.
///
/// For m <= min(len_a, len_b) with enough 0-class values for `a` to be
/// duplicate-free: `a` is a distinct random sample, and `m` of its values
/// overwrite `m` distinct positions of `b` (one pair each). Larger `m` falls
/// back to a single shared value placed at c_a x c_b positions for a factor
/// pair c_a * c_b = m.
pub fn plant_matches(
    len_a: usize,
    len_b: usize,
    depth: usize,
    m: u64,
    seed: u64,
) -> Result<(Sequence, Sequence)> {
    let infeasible = || Error::PlantingInfeasible {
        m,
        len_a,
        len_b,
        depth,
    };
    if len_a == 0 || len_b == 0 || depth < 2 || depth > 62 {
        return Err(infeasible());
    }
    if m > (len_a as u64) * (len_b as u64) {
        return Err(infeasible());
    }
    let class = 1u64 << (depth - 1);
    let mut rng = SeededRng::new(seed);

    if m <= len_a.min(len_b) as u64 && class >= len_a as u64 {
        // Distinct recipe: a duplicate-free, b filler from the other class.
        let a_vals = rng.distinct_below(class, len_a);
        let mut b_vals: Vec<u64> = (0..len_b).map(|_| class + rng.below(class)).collect();
        let mut a_positions: Vec<usize> = (0..len_a).collect();
        rng.shuffle(&mut a_positions);
        let mut b_positions: Vec<usize> = (0..len_b).collect();
        rng.shuffle(&mut b_positions);
        for t in 0..m as usize {
            b_vals[b_positions[t]] = a_vals[a_positions[t]];
        }
        return Ok((
            Sequence::from_values(&a_vals, depth)?,
            Sequence::from_values(&b_vals, depth)?,
        ));
    }

    // Factor recipe: one shared value at c_a x c_b positions.
    let (c_a, c_b) = (1..=len_a.min(m as usize) as u64)
        .find(|c| m % c == 0 && m / c <= len_b as u64)
        .map(|c| (c as usize, (m / c) as usize))
        .ok_or_else(infeasible)?;
    if class < 2 {
        return Err(infeasible());
    }
    let shared = rng.below(class);
    let other = |rng: &mut SeededRng| loop {
        let v = rng.below(class);
        if v != shared {
            break v;
        }
    };
    let mut a_vals: Vec<u64> = Vec::with_capacity(len_a);
    for _ in 0..len_a {
        a_vals.push(other(&mut rng));
    }
    let mut b_vals: Vec<u64> = (0..len_b).map(|_| class + rng.below(class)).collect();
    let mut a_positions: Vec<usize> = (0..len_a).collect();
    rng.shuffle(&mut a_positions);
    for &p in a_positions.iter().take(c_a) {
        a_vals[p] = shared;
    }
    let mut b_positions: Vec<usize> = (0..len_b).collect();
    rng.shuffle(&mut b_positions);
    for &p in b_positions.iter().take(c_b) {
        b_vals[p] = shared;
    }
    Ok((
        Sequence::from_values(&a_vals, depth)?,
        Sequence::from_values(&b_vals, depth)?,
    ))
}

/// Run the full matching circuit for `k` Grover iterations, measure all four
/// registers, and verify every shot against the input sequences. Shots whose
/// measured data disagree with the sequences at the measured addresses are
/// counted as rejected, never dropped.
pub fn run_qcam(a: &Sequence, b: &Sequence, k: u32, shots: u64, seed: u64) -> Result<QcamResult> {
    run_qcam_capped(a, b, k, shots, seed, DEFAULT_MAX_QUBITS)
}

pub fn run_qcam_capped(
    a: &Sequence,
    b: &Sequence,
    k: u32,
    shots: u64,
    seed: u64,
    max_qubits: usize,
) -> Result<QcamResult> {
    let layout = RegisterLayout::for_sequences(a, b)?;
    let circuit = build_qcam_circuit(a, b, k)?;
    let state = run_capped(&circuit, max_qubits)?;

    // Everything except the ancilla, low to high: addr_a, addr_b, data_a, data_b.
    let measured: Vec<usize> = (0..layout.n_a + layout.n_b + 2 * layout.depth).collect();
    let counts = state.sample(&measured, shots, seed)?;

    let d = layout.depth;
    let mut grouped: BTreeMap<(usize, usize), MatchRecord> = BTreeMap::new();
    let mut rejected = 0u64;
    for (outcome, count) in counts.iter() {
        let i = (outcome & ((1 << layout.n_a) - 1)) as usize;
        let j = ((outcome >> layout.n_a) & ((1 << layout.n_b) - 1)) as usize;
        let data_a =
            BitString::from_register_value((outcome >> (layout.n_a + layout.n_b)) & ((1 << d) - 1), d)?;
        let data_b = BitString::from_register_value(
            (outcome >> (layout.n_a + layout.n_b + d)) & ((1 << d) - 1),
            d,
        )?;
        let verified = a.get(i) == data_a && b.get(j) == data_b && data_a == data_b;
        if verified {
            grouped
                .entry((i, j))
                .and_modify(|r| r.count += count)
                .or_insert(MatchRecord {
                    addr_a: i,
                    addr_b: j,
                    data_a,
                    data_b,
                    count,
                });
        } else {
            rejected += count;
        }
    }

    Ok(QcamResult {
        records: grouped.into_values().collect(),
        rejected,
        shots,
        k,
        seed,
    })
}
