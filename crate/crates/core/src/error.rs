use thiserror::Error;

/// Errors produced by the simulator and the algorithm layers on top of it.
#[derive(Debug, Error)]
pub enum Error {
    #[error(
        "a {qubits}-qubit state needs {bytes} bytes of amplitudes, over the {max}-qubit capacity"
    )]
    Capacity {
        qubits: usize,
        max: usize,
        bytes: u128,
    },

    #[error("qubit index {index} out of range for a {qubits}-qubit state")]
    QubitOutOfRange { index: usize, qubits: usize },

    #[error("qubit {0} appears more than once in a gate operand list")]
    DuplicateQubit(usize),

    #[error("pUCR angle matrix is {rows}x{cols}; registers require {want_rows}x{want_cols}")]
    PucrShape {
        rows: usize,
        cols: usize,
        want_rows: usize,
        want_cols: usize,
    },

    #[error("states have different qubit counts ({0} vs {1})")]
    DimensionMismatch(usize, usize),

    #[error("measurement qubit list is empty")]
    EmptyMeasurement,

    #[error("gate operand list is empty")]
    EmptyGate,

    #[error("shot count must be at least 1")]
    ZeroShots,

    #[error("bit-string value {value} does not fit in depth {depth}")]
    ValueTooWide { value: u64, depth: usize },

    #[error("bit-string depth must be between 1 and 63, got {0}")]
    BadDepth(usize),

    #[error("sequence is empty")]
    EmptySequence,

    #[error("sequence length {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("sequences have different bit-depths ({0} vs {1})")]
    DepthMismatch(usize, usize),

    #[error("cannot pad depth-0 bit-strings without introducing spurious matches")]
    ZeroDepthPad,

    #[error("cannot plant {m} matching pairs into sequences of {len_a} x {len_b} items at depth {depth}")]
    PlantingInfeasible {
        m: u64,
        len_a: usize,
        len_b: usize,
        depth: usize,
    },

    #[error("matching oracle requires bit-depth of at least 1")]
    ZeroDepthOracle,

    #[error("diffuser requires a combined address register of width at least 1")]
    ZeroWidthDiffuser,

    #[error("overlap estimate is NaN")]
    NanOverlap,

    #[error("theta = 0 means the search problem has no solutions; no iteration count exists")]
    NoSolutions,

    #[error("invalid nucleotide {0:?}; expected one of A, C, G, T")]
    InvalidNucleotide(char),

    #[error("DNA strand is empty")]
    EmptyStrand,

    #[error("strand of length {len} is shorter than k = {k}")]
    StrandTooShort { len: usize, k: usize },

    #[error("k-mer length must be at least 1")]
    ZeroKmer,

    #[error("mutation rate {0} is outside [0, 1]")]
    BadMutationRate(f64),

    #[error("k-mer sets have different k ({0} vs {1})")]
    KmerLenMismatch(usize, usize),

    #[error("Jaccard similarity of two empty sets is undefined")]
    EmptyKmerSets,

    #[error("circuit format: {0}")]
    CircuitFormat(String),

    #[error("FASTA input: {0}")]
    FastaFormat(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
