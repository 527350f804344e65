//! Circuit construction for sequence encoding and Grover-based matching.
//!
//! Bit order: bit 0 of a [`BitString`] is the most significant (leftmost)
//! printed bit, so a 4-mer code reads left to right. Data-register qubit `t`
//! carries bit `t`, which means the integer a data register holds is the
//! bit-reversal of the printed value; [`BitString::register_value`] and
//! [`BitString::from_register_value`] convert between the two.
//!
//! The canonical register layout for matching circuits is, from qubit 0
//! upward: `addr_a | addr_b | data_a | data_b | anc`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::statevec::{GateOp, PucrAngles, PucrGate, QuantumState, DEFAULT_MAX_QUBITS};

/// Fixed-width bit vector of `depth` bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitString {
    value: u64,
    depth: usize,
}

impl BitString {
    pub fn new(value: u64, depth: usize) -> Result<Self> {
        if depth == 0 || depth > 63 {
            return Err(Error::BadDepth(depth));
        }
        if value >> depth != 0 {
            return Err(Error::ValueTooWide { value, depth });
        }
        Ok(BitString { value, depth })
    }

    /// Integer value of the printed form (bit 0 = most significant).
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Bit `j`, where bit 0 is the leftmost printed bit.
    pub fn bit(&self, j: usize) -> u8 {
        debug_assert!(j < self.depth);
        ((self.value >> (self.depth - 1 - j)) & 1) as u8
    }

    /// Basis-register integer: bit `t` of the result is qubit `t` of a data
    /// register loaded with this bit-string.
    pub fn register_value(&self) -> u64 {
        (0..self.depth).fold(0u64, |v, t| v | ((self.bit(t) as u64) << t))
    }

    pub fn from_register_value(reg: u64, depth: usize) -> Result<Self> {
        if depth == 0 || depth > 63 {
            return Err(Error::BadDepth(depth));
        }
        if reg >> depth != 0 {
            return Err(Error::ValueTooWide { value: reg, depth });
        }
        let value = (0..depth).fold(0u64, |v, t| v | (((reg >> t) & 1) << (depth - 1 - t)));
        BitString::new(value, depth)
    }

    /// Same value at depth + 1 (a leading 0 bit).
    pub fn widened(&self) -> Result<Self> {
        BitString::new(self.value, self.depth + 1)
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:0width$b}", self.value, width = self.depth)
    }
}

/// Ordered list of equal-depth bit-strings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sequence {
    items: Vec<BitString>,
    depth: usize,
}

impl Sequence {
    pub fn new(items: Vec<BitString>) -> Result<Self> {
        let depth = items.first().ok_or(Error::EmptySequence)?.depth();
        for item in &items {
            if item.depth() != depth {
                return Err(Error::DepthMismatch(depth, item.depth()));
            }
        }
        Ok(Sequence { items, depth })
    }

    pub fn from_values(values: &[u64], depth: usize) -> Result<Self> {
        Self::new(
            values
                .iter()
                .map(|&v| BitString::new(v, depth))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn items(&self) -> &[BitString] {
        &self.items
    }

    pub fn get(&self, index: usize) -> BitString {
        self.items[index]
    }

    pub fn values(&self) -> Vec<u64> {
        self.items.iter().map(|b| b.value()).collect()
    }

    pub fn is_power_of_two_len(&self) -> bool {
        self.items.len().is_power_of_two()
    }

    /// Address-register width log2(len); the length must be a power of two.
    pub fn address_width(&self) -> Result<usize> {
        if !self.is_power_of_two_len() {
            return Err(Error::NotPowerOfTwo(self.items.len()));
        }
        Ok(self.items.len().trailing_zeros() as usize)
    }
}

/// Named contiguous qubit range.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Register {
    pub name: String,
    pub start: usize,
    pub width: usize,
}

impl Register {
    pub fn qubits(&self) -> Vec<usize> {
        (self.start..self.start + self.width).collect()
    }
}

/// Immutable ordered gate list over named registers.
#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    registers: Vec<Register>,
    ops: Vec<GateOp>,
    num_qubits: usize,
}

impl Circuit {
    /// Registers are laid out back to back from qubit 0 in the given order.
    pub fn with_registers(names_and_widths: &[(&str, usize)]) -> Self {
        let mut registers = Vec::new();
        let mut start = 0;
        for &(name, width) in names_and_widths {
            registers.push(Register {
                name: name.to_string(),
                start,
                width,
            });
            start += width;
        }
        Circuit {
            registers,
            ops: Vec::new(),
            num_qubits: start,
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn registers(&self) -> &[Register] {
        &self.registers
    }

    pub fn register(&self, name: &str) -> Option<&Register> {
        self.registers.iter().find(|r| r.name == name)
    }

    pub fn ops(&self) -> &[GateOp] {
        &self.ops
    }

    pub fn push(&mut self, op: GateOp) -> Result<()> {
        for q in op.qubits() {
            if q >= self.num_qubits {
                return Err(Error::QubitOutOfRange {
                    index: q,
                    qubits: self.num_qubits,
                });
            }
        }
        self.ops.push(op);
        Ok(())
    }

    pub fn extend(&mut self, ops: impl IntoIterator<Item = GateOp>) -> Result<()> {
        for op in ops {
            self.push(op)?;
        }
        Ok(())
    }
}

/// Qubit bookkeeping for the two-sequence matching circuits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RegisterLayout {
    pub n_a: usize,
    pub n_b: usize,
    pub depth: usize,
}

impl RegisterLayout {
    pub fn for_sequences(a: &Sequence, b: &Sequence) -> Result<Self> {
        if a.depth() != b.depth() {
            return Err(Error::DepthMismatch(a.depth(), b.depth()));
        }
        Ok(RegisterLayout {
            n_a: a.address_width()?,
            n_b: b.address_width()?,
            depth: a.depth(),
        })
    }

    pub fn total_qubits(&self) -> usize {
        self.n_a + self.n_b + 2 * self.depth + 1
    }

    pub fn addr_a(&self) -> Vec<usize> {
        (0..self.n_a).collect()
    }

    pub fn addr_b(&self) -> Vec<usize> {
        (self.n_a..self.n_a + self.n_b).collect()
    }

    /// Both address registers, low to high.
    pub fn addr_all(&self) -> Vec<usize> {
        (0..self.n_a + self.n_b).collect()
    }

    pub fn data_a(&self) -> Vec<usize> {
        let base = self.n_a + self.n_b;
        (base..base + self.depth).collect()
    }

    pub fn data_b(&self) -> Vec<usize> {
        let base = self.n_a + self.n_b + self.depth;
        (base..base + self.depth).collect()
    }

    pub fn anc(&self) -> usize {
        self.n_a + self.n_b + 2 * self.depth
    }

    pub fn registers(&self) -> Vec<(&'static str, usize)> {
        vec![
            ("addr_a", self.n_a),
            ("addr_b", self.n_b),
            ("data_a", self.depth),
            ("data_b", self.depth),
            ("anc", 1),
        ]
    }
}

/// Rotation angles encoding a sequence: row `i`, column `t` is 0 when bit `t`
/// of item `i` is 0 and pi when it is 1.
pub fn angles_from_bits(seq: &Sequence) -> Result<PucrAngles> {
    let n = seq.address_width()?;
    let mut angles = PucrAngles::zeros(1 << n, seq.depth())?;
    for (i, item) in seq.items().iter().enumerate() {
        for t in 0..seq.depth() {
            if item.bit(t) == 1 {
                angles.set(i, t, std::f64::consts::PI);
            }
        }
    }
    Ok(angles)
}

/// pUCR gate loading `seq` from the given address qubits into the given data
/// qubits.
pub fn pucr_for(seq: &Sequence, address: &[usize], data: &[usize]) -> Result<GateOp> {
    Ok(GateOp::Pucr(PucrGate::new(
        address.to_vec(),
        data.to_vec(),
        angles_from_bits(seq)?,
    )?))
}

/// Sequence-encoding circuit: Hadamards on the address register, then one
/// pUCR. Registers: `addr` (log2 len), `data` (depth).
pub fn build_qbart(seq: &Sequence) -> Result<Circuit> {
    let n = seq.address_width()?;
    let d = seq.depth();
    let mut circuit = Circuit::with_registers(&[("addr", n), ("data", d)]);
    let addr: Vec<usize> = (0..n).collect();
    let data: Vec<usize> = (n..n + d).collect();
    for &q in &addr {
        circuit.push(GateOp::H(q))?;
    }
    circuit.push(pucr_for(seq, &addr, &data)?)?;
    Ok(circuit)
}

fn matching_oracle_ops(data_a: &[usize], data_b: &[usize], anc: usize) -> Vec<GateOp> {
    let d = data_a.len();
    let mut ops = Vec::new();
    // XOR the first data register into the second.
    for t in 0..d {
        ops.push(GateOp::Cx {
            control: data_a[t],
            target: data_b[t],
        });
    }
    // Phase -1 when the XOR register is all zeros: X-conjugated phase over
    // data_b plus the ancilla, which its own X raises to |1⟩.
    for &q in data_b {
        ops.push(GateOp::X(q));
    }
    ops.push(GateOp::X(anc));
    let mut mcz: Vec<usize> = data_b.to_vec();
    mcz.push(anc);
    ops.push(GateOp::Mcz { qubits: mcz });
    for &q in data_b {
        ops.push(GateOp::X(q));
    }
    ops.push(GateOp::X(anc));
    // Uncompute the XOR (mirrored).
    for t in (0..d).rev() {
        ops.push(GateOp::Cx {
            control: data_a[t],
            target: data_b[t],
        });
    }
    ops
}

/// Matching oracle: phase -1 on |a⟩|b⟩|0⟩ exactly when a = b, ancilla
/// restored to |0⟩. Registers: `data_a`, `data_b` (width d), `anc`.
pub fn build_matching_oracle(depth: usize) -> Result<Circuit> {
    if depth == 0 {
        return Err(Error::ZeroDepthOracle);
    }
    let mut circuit =
        Circuit::with_registers(&[("data_a", depth), ("data_b", depth), ("anc", 1)]);
    let data_a: Vec<usize> = (0..depth).collect();
    let data_b: Vec<usize> = (depth..2 * depth).collect();
    let ops = matching_oracle_ops(&data_a, &data_b, 2 * depth);
    circuit.extend(ops)?;
    Ok(circuit)
}

fn diffuser_ops(addr: &[usize]) -> Vec<GateOp> {
    let mut ops = Vec::new();
    for &q in addr {
        ops.push(GateOp::H(q));
    }
    for &q in addr {
        ops.push(GateOp::X(q));
    }
    ops.push(GateOp::Mcz {
        qubits: addr.to_vec(),
    });
    for &q in addr {
        ops.push(GateOp::X(q));
    }
    for &q in addr {
        ops.push(GateOp::H(q));
    }
    // The H/X/MCZ/X/H sandwich realizes the negated reflection. Z X Z X on
    // one qubit is exactly -I, which restores the reflection 2|+⟩⟨+| - I so
    // that the iterator is a proper rotation, not its negative.
    let q = addr[0];
    ops.push(GateOp::X(q));
    ops.push(GateOp::Mcz { qubits: vec![q] });
    ops.push(GateOp::X(q));
    ops.push(GateOp::Mcz { qubits: vec![q] });
    ops
}

/// Reflection about the equal superposition over the combined address
/// register. Registers: `addr_a`, `addr_b`.
pub fn build_diffuser(n_a: usize, n_b: usize) -> Result<Circuit> {
    if n_a + n_b == 0 {
        return Err(Error::ZeroWidthDiffuser);
    }
    let mut circuit = Circuit::with_registers(&[("addr_a", n_a), ("addr_b", n_b)]);
    let addr: Vec<usize> = (0..n_a + n_b).collect();
    circuit.extend(diffuser_ops(&addr))?;
    Ok(circuit)
}

/// How a control qubit is attached to the Grover oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ControlStyle {
    /// Only the central MCZ gains the control; every surrounding layer
    /// self-cancels when the control is 0.
    MczOnly,
    /// Every gate of the oracle gains the control.
    Full,
}

fn grover_oracle_ops(
    a: &Sequence,
    b: &Sequence,
    layout: &RegisterLayout,
    control: Option<(usize, ControlStyle)>,
) -> Result<Vec<GateOp>> {
    let pucr_a = pucr_for(a, &layout.addr_a(), &layout.data_a())?;
    let pucr_b = pucr_for(b, &layout.addr_b(), &layout.data_b())?;
    let matching = matching_oracle_ops(&layout.data_a(), &layout.data_b(), layout.anc());

    let mut ops = Vec::new();
    ops.push(pucr_a.clone());
    ops.push(pucr_b.clone());
    ops.extend(matching);
    ops.push(pucr_b.adjoint());
    ops.push(pucr_a.adjoint());

    match control {
        None => Ok(ops),
        Some((ctrl, ControlStyle::MczOnly)) => Ok(ops
            .into_iter()
            .map(|op| match op {
                GateOp::Mcz { mut qubits } => {
                    qubits.push(ctrl);
                    GateOp::Mcz { qubits }
                }
                other => other,
            })
            .collect()),
        Some((ctrl, ControlStyle::Full)) => ops.into_iter().map(|op| controlled(op, ctrl)).collect(),
    }
}

/// Attach one control qubit to a gate, staying inside the gate set.
fn controlled(op: GateOp, ctrl: usize) -> Result<GateOp> {
    Ok(match op {
        GateOp::X(t) => GateOp::Cx {
            control: ctrl,
            target: t,
        },
        GateOp::Cx { control, target } => GateOp::Mcx {
            controls: vec![ctrl, control],
            target,
        },
        GateOp::Mcx {
            mut controls,
            target,
        } => {
            controls.push(ctrl);
            GateOp::Mcx { controls, target }
        }
        GateOp::Mcz { mut qubits } => {
            qubits.push(ctrl);
            GateOp::Mcz { qubits }
        }
        GateOp::Pucr(gate) => GateOp::CPucr {
            control: ctrl,
            gate,
        },
        other => {
            return Err(Error::CircuitFormat(format!(
                "no controlled form for {other:?}"
            )))
        }
    })
}

/// Grover oracle: load both sequences, flip the phase of matched data,
/// unload. Diagonal -1 exactly on address pairs (i, j) with a_i = b_j.
pub fn build_grover_oracle(a: &Sequence, b: &Sequence) -> Result<Circuit> {
    let layout = RegisterLayout::for_sequences(a, b)?;
    let mut circuit = Circuit::with_registers(&layout.registers());
    circuit.extend(grover_oracle_ops(a, b, &layout, None)?)?;
    Ok(circuit)
}

/// Grover oracle with a control qubit appended as the final `ctrl` register.
pub fn build_controlled_grover_oracle(
    a: &Sequence,
    b: &Sequence,
    style: ControlStyle,
) -> Result<Circuit> {
    let layout = RegisterLayout::for_sequences(a, b)?;
    let mut regs = layout.registers();
    regs.push(("ctrl", 1));
    let mut circuit = Circuit::with_registers(&regs);
    let ctrl = layout.total_qubits();
    circuit.extend(grover_oracle_ops(a, b, &layout, Some((ctrl, style)))?)?;
    Ok(circuit)
}

/// One Grover iteration: the oracle followed by the diffuser over the
/// combined address register.
pub fn grover_iteration_ops(
    a: &Sequence,
    b: &Sequence,
    layout: &RegisterLayout,
) -> Result<Vec<GateOp>> {
    if layout.n_a + layout.n_b == 0 {
        return Err(Error::ZeroWidthDiffuser);
    }
    let mut ops = grover_oracle_ops(a, b, layout, None)?;
    ops.extend(diffuser_ops(&layout.addr_all()));
    Ok(ops)
}

/// Full matching circuit: H on both address registers, `k` Grover
/// iterations, then one more data load of each sequence so measured data
/// registers carry the matched values alongside their addresses.
pub fn build_qcam_circuit(a: &Sequence, b: &Sequence, k: u32) -> Result<Circuit> {
    let layout = RegisterLayout::for_sequences(a, b)?;
    let mut circuit = Circuit::with_registers(&layout.registers());
    for q in layout.addr_all() {
        circuit.push(GateOp::H(q))?;
    }
    let iteration = grover_iteration_ops(a, b, &layout)?;
    for _ in 0..k {
        circuit.extend(iteration.iter().cloned())?;
    }
    circuit.push(pucr_for(a, &layout.addr_a(), &layout.data_a())?)?;
    circuit.push(pucr_for(b, &layout.addr_b(), &layout.data_b())?)?;
    Ok(circuit)
}

/// Analytic critical depth of a gate-level pUCR: ceil(2^n * d / min(n, d))
/// cycles of entangling gates. Reporting only; the simulator applies pUCR
/// semantically in one step.
pub fn pucr_critical_depth(n: u32, d: u32) -> u64 {
    assert!(n >= 1 && d >= 1);
    let work = (1u128 << n) * d as u128;
    let lanes = n.min(d) as u128;
    (work.div_ceil(lanes)) as u64
}

/// Gate-level expansion of a pUCR: for every address value, X-conjugation
/// selecting that value and a multi-controlled RY per data qubit (built from
/// two MCX and two RY half-rotations). Exponentially deep; used to
/// cross-check the semantic kernel.
pub fn decompose_pucr(gate: &PucrGate) -> Vec<GateOp> {
    let n = gate.address().len();
    let mut ops = Vec::new();
    for value in 0..(1usize << n) {
        let zero_bits: Vec<usize> = (0..n)
            .filter(|&r| (value >> r) & 1 == 0)
            .map(|r| gate.address()[r])
            .collect();
        for &q in &zero_bits {
            ops.push(GateOp::X(q));
        }
        for (col, &target) in gate.data().iter().enumerate() {
            let theta = gate.angles().get(value, col);
            if theta == 0.0 {
                continue;
            }
            if n == 0 {
                ops.push(GateOp::Ry(target, theta));
                continue;
            }
            ops.push(GateOp::Ry(target, theta / 2.0));
            ops.push(GateOp::Mcx {
                controls: gate.address().to_vec(),
                target,
            });
            ops.push(GateOp::Ry(target, -theta / 2.0));
            ops.push(GateOp::Mcx {
                controls: gate.address().to_vec(),
                target,
            });
        }
        for &q in &zero_bits {
            ops.push(GateOp::X(q));
        }
    }
    ops
}

/// Execute a circuit on |0...0⟩ under the default qubit capacity.
pub fn run(circuit: &Circuit) -> Result<QuantumState> {
    run_capped(circuit, DEFAULT_MAX_QUBITS)
}

/// Execute a circuit on |0...0⟩ with an explicit qubit capacity.
pub fn run_capped(circuit: &Circuit, max_qubits: usize) -> Result<QuantumState> {
    let mut state = QuantumState::with_max(circuit.num_qubits(), max_qubits)?;
    for op in circuit.ops() {
        state.apply(op)?;
    }
    Ok(state)
}

#[derive(Serialize, Deserialize)]
struct RegisterDoc {
    name: String,
    width: usize,
}

#[derive(Serialize, Deserialize)]
struct OpDoc {
    kind: String,
    controls: Vec<usize>,
    targets: Vec<usize>,
    params: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct CircuitDoc {
    registers: Vec<RegisterDoc>,
    ops: Vec<OpDoc>,
}

fn op_to_doc(op: &GateOp) -> OpDoc {
    match op.concrete() {
        GateOp::H(q) => OpDoc {
            kind: "h".into(),
            controls: vec![],
            targets: vec![q],
            params: vec![],
        },
        GateOp::X(q) => OpDoc {
            kind: "x".into(),
            controls: vec![],
            targets: vec![q],
            params: vec![],
        },
        GateOp::Ry(q, theta) => OpDoc {
            kind: "ry".into(),
            controls: vec![],
            targets: vec![q],
            params: vec![theta],
        },
        GateOp::Cx { control, target } => OpDoc {
            kind: "cx".into(),
            controls: vec![control],
            targets: vec![target],
            params: vec![],
        },
        GateOp::Mcx { controls, target } => OpDoc {
            kind: "mcx".into(),
            controls,
            targets: vec![target],
            params: vec![],
        },
        GateOp::Mcz { qubits } => OpDoc {
            kind: "mcz".into(),
            controls: vec![],
            targets: qubits,
            params: vec![],
        },
        GateOp::Pucr(gate) => OpDoc {
            kind: "pucr".into(),
            controls: gate.address().to_vec(),
            targets: gate.data().to_vec(),
            params: gate.angles().values().to_vec(),
        },
        GateOp::CPucr { control, gate } => OpDoc {
            kind: "cpucr".into(),
            controls: std::iter::once(control)
                .chain(gate.address().iter().copied())
                .collect(),
            targets: gate.data().to_vec(),
            params: gate.angles().values().to_vec(),
        },
        GateOp::Adjoint(_) => unreachable!("concrete() removes adjoint wrappers"),
    }
}

fn op_from_doc(doc: &OpDoc) -> Result<GateOp> {
    let one_target = || -> Result<usize> {
        if doc.targets.len() != 1 {
            return Err(Error::CircuitFormat(format!(
                "op {:?} expects exactly one target",
                doc.kind
            )));
        }
        Ok(doc.targets[0])
    };
    let pucr = |address: &[usize]| -> Result<PucrGate> {
        let angles = PucrAngles::new(1 << address.len(), doc.targets.len(), doc.params.clone())?;
        PucrGate::new(address.to_vec(), doc.targets.clone(), angles)
    };
    match doc.kind.as_str() {
        "h" => Ok(GateOp::H(one_target()?)),
        "x" => Ok(GateOp::X(one_target()?)),
        "ry" => {
            if doc.params.len() != 1 {
                return Err(Error::CircuitFormat("ry expects one angle".into()));
            }
            Ok(GateOp::Ry(one_target()?, doc.params[0]))
        }
        "cx" => {
            if doc.controls.len() != 1 {
                return Err(Error::CircuitFormat("cx expects one control".into()));
            }
            Ok(GateOp::Cx {
                control: doc.controls[0],
                target: one_target()?,
            })
        }
        "mcx" => Ok(GateOp::Mcx {
            controls: doc.controls.clone(),
            target: one_target()?,
        }),
        "mcz" => Ok(GateOp::Mcz {
            qubits: doc.targets.clone(),
        }),
        "pucr" => Ok(GateOp::Pucr(pucr(&doc.controls)?)),
        "cpucr" => {
            let (ctrl, address) = doc
                .controls
                .split_first()
                .ok_or_else(|| Error::CircuitFormat("cpucr expects a control".into()))?;
            Ok(GateOp::CPucr {
                control: *ctrl,
                gate: pucr(address)?,
            })
        }
        other => Err(Error::CircuitFormat(format!("unknown op kind {other:?}"))),
    }
}

/// Serialize a circuit to the JSON gate-list format:
/// `{registers: [{name, width}], ops: [{kind, controls, targets, params}]}`.
/// pUCR params are the row-major angle matrix; a `cpucr` lists its control
/// qubit first, then the address qubits. Adjoints are resolved to concrete
/// gates before export.
pub fn circuit_to_json(circuit: &Circuit) -> String {
    let doc = CircuitDoc {
        registers: circuit
            .registers()
            .iter()
            .map(|r| RegisterDoc {
                name: r.name.clone(),
                width: r.width,
            })
            .collect(),
        ops: circuit.ops().iter().map(op_to_doc).collect(),
    };
    serde_json::to_string_pretty(&doc).expect("circuit serialization cannot fail")
}

/// Parse a circuit from the JSON gate-list format.
pub fn circuit_from_json(text: &str) -> Result<Circuit> {
    let doc: CircuitDoc =
        serde_json::from_str(text).map_err(|e| Error::CircuitFormat(e.to_string()))?;
    let regs: Vec<(&str, usize)> = doc
        .registers
        .iter()
        .map(|r| (r.name.as_str(), r.width))
        .collect();
    let mut circuit = Circuit::with_registers(&regs);
    for op_doc in &doc.ops {
        circuit.push(op_from_doc(op_doc)?)?;
    }
    Ok(circuit)
}
