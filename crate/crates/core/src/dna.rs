//! DNA layer: nucleotide and k-mer bit encodings, k-merization, random
//! strand generation with point mutations, classical Jaccard similarity, and
//! the full matching-based Jaccard pipeline.
//!
//! Nucleotides encode on two bits as A=00, T=01, G=10, C=11; a k-mer
//! concatenates its symbols' codes left to right into a 2k-bit string.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use serde::Serialize;

use crate::circuits::{BitString, Sequence};
use crate::error::{Error, Result};
use crate::heqc::{heqc_pipeline_capped, HeqcEstimate, Variant};
use crate::qcam::{collect_matches, pad_sequences, run_qcam_capped};
use crate::rng::SeededRng;
use crate::statevec::DEFAULT_MAX_QUBITS;

const ALPHABET: [char; 4] = ['A', 'C', 'G', 'T'];

fn nucleotide_code(base: char) -> Result<u64> {
    match base {
        'A' => Ok(0b00),
        'T' => Ok(0b01),
        'G' => Ok(0b10),
        'C' => Ok(0b11),
        other => Err(Error::InvalidNucleotide(other)),
    }
}

fn code_nucleotide(code: u64) -> char {
    match code {
        0b00 => 'A',
        0b01 => 'T',
        0b10 => 'G',
        _ => 'C',
    }
}

/// Validated DNA string over {A, C, G, T}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DnaStrand(String);

impl DnaStrand {
    pub fn new(bases: &str) -> Result<Self> {
        if bases.is_empty() {
            return Err(Error::EmptyStrand);
        }
        for c in bases.chars() {
            nucleotide_code(c)?;
        }
        Ok(DnaStrand(bases.to_string()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Display for DnaStrand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Encode a k-mer onto 2k bits, symbol codes concatenated left to right.
pub fn encode_kmer(kmer: &str) -> Result<BitString> {
    if kmer.is_empty() {
        return Err(Error::ZeroKmer);
    }
    let mut value = 0u64;
    for base in kmer.chars() {
        value = (value << 2) | nucleotide_code(base)?;
    }
    BitString::new(value, 2 * kmer.chars().count())
}

/// Decode a 2k-bit string back to its k-mer.
pub fn decode_kmer(bits: &BitString) -> Result<String> {
    if bits.depth() % 2 != 0 {
        return Err(Error::BadDepth(bits.depth()));
    }
    let k = bits.depth() / 2;
    let mut out = String::with_capacity(k);
    for sym in 0..k {
        let code = ((bits.bit(2 * sym) as u64) << 1) | bits.bit(2 * sym + 1) as u64;
        out.push(code_nucleotide(code));
    }
    Ok(out)
}

/// All overlapping k-mers of a strand in order, duplicates retained, encoded
/// at depth 2k.
pub fn kmerize(strand: &DnaStrand, k: usize) -> Result<Sequence> {
    if k == 0 {
        return Err(Error::ZeroKmer);
    }
    if strand.len() < k {
        return Err(Error::StrandTooShort {
            len: strand.len(),
            k,
        });
    }
    let bases = strand.as_str();
    let items = (0..=bases.len() - k)
        .map(|i| encode_kmer(&bases[i..i + k]))
        .collect::<Result<Vec<_>>>()?;
    Sequence::new(items)
}

/// Set of unique k-mers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KmerSet {
    kmers: BTreeSet<String>,
    k: usize,
}

impl KmerSet {
    pub fn new(k: usize) -> Self {
        KmerSet {
            kmers: BTreeSet::new(),
            k,
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.kmers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kmers.is_empty()
    }

    pub fn contains(&self, kmer: &str) -> bool {
        self.kmers.contains(kmer)
    }

    pub fn insert(&mut self, kmer: String) {
        debug_assert_eq!(kmer.len(), self.k);
        self.kmers.insert(kmer);
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.kmers.iter().map(String::as_str)
    }

    pub fn intersection_size(&self, other: &KmerSet) -> usize {
        self.kmers.intersection(&other.kmers).count()
    }

    pub fn is_subset(&self, other: &KmerSet) -> bool {
        self.kmers.is_subset(&other.kmers)
    }
}

/// Deduplicated k-mers of a strand.
pub fn unique_kmers(strand: &DnaStrand, k: usize) -> Result<KmerSet> {
    if k == 0 {
        return Err(Error::ZeroKmer);
    }
    if strand.len() < k {
        return Err(Error::StrandTooShort {
            len: strand.len(),
            k,
        });
    }
    let bases = strand.as_str();
    let mut set = KmerSet::new(k);
    for i in 0..=bases.len() - k {
        set.insert(bases[i..i + k].to_string());
    }
    Ok(set)
}

/// Random strand of i.i.d. uniform bases.
pub fn generate_dna(length: usize, seed: u64) -> Result<DnaStrand> {
    if length == 0 {
        return Err(Error::EmptyStrand);
    }
    let mut rng = SeededRng::new(seed);
    let bases: String = (0..length)
        .map(|_| ALPHABET[rng.below(4) as usize])
        .collect();
    DnaStrand::new(&bases)
}

/// Substitute each position independently with probability `rate` by a
/// uniformly chosen different base. Length never changes.
pub fn mutate(strand: &DnaStrand, rate: f64, seed: u64) -> Result<DnaStrand> {
    if !(0.0..=1.0).contains(&rate) || rate.is_nan() {
        return Err(Error::BadMutationRate(rate));
    }
    let mut rng = SeededRng::new(seed);
    let bases: String = strand
        .as_str()
        .chars()
        .map(|base| {
            if rng.uniform() < rate {
                let others: Vec<char> = ALPHABET.iter().copied().filter(|&c| c != base).collect();
                others[rng.below(3) as usize]
            } else {
                base
            }
        })
        .collect();
    DnaStrand::new(&bases)
}

/// Exact Jaccard similarity |A∩B| / (|A| + |B| - |A∩B|).
pub fn jaccard_classical(a: &KmerSet, b: &KmerSet) -> Result<f64> {
    if a.k() != b.k() {
        return Err(Error::KmerLenMismatch(a.k(), b.k()));
    }
    if a.is_empty() && b.is_empty() {
        return Err(Error::EmptyKmerSets);
    }
    let inter = a.intersection_size(b);
    Ok(inter as f64 / (a.len() + b.len() - inter) as f64)
}

/// Knobs for the quantum Jaccard pipeline.
#[derive(Clone, Debug)]
pub struct JaccardConfig {
    /// Shots for the counting circuit.
    pub heqc_shots: u64,
    /// Shots for the search circuit; `None` picks a coupon-collector budget
    /// max(300, ceil(50 * m_est * ln(m_est + 1))) from the counting estimate.
    pub qcam_shots: Option<u64>,
    pub seed: u64,
    /// Overlap estimator. The Hadamard test is the default because it stays
    /// valid when matches cover more than half the search space.
    pub variant: Variant,
    pub max_qubits: usize,
}

impl Default for JaccardConfig {
    fn default() -> Self {
        JaccardConfig {
            heqc_shots: 2000,
            qcam_shots: None,
            seed: 0,
            variant: Variant::Hadamard,
            max_qubits: DEFAULT_MAX_QUBITS,
        }
    }
}

/// Search-run metadata carried in a [`JaccardReport`].
#[derive(Clone, Debug, Serialize)]
pub struct QcamMeta {
    pub k: u32,
    pub shots: u64,
    pub seed: u64,
    pub verified: u64,
    pub rejected: u64,
}

/// Outcome of the quantum Jaccard pipeline.
#[derive(Clone, Debug, Serialize)]
pub struct JaccardReport {
    pub strand_a: DnaStrand,
    pub strand_b: DnaStrand,
    pub k: usize,
    pub size_a: usize,
    pub size_b: usize,
    pub size_intersection: usize,
    pub jaccard: f64,
    pub matched_kmers: KmerSet,
    pub heqc: HeqcEstimate,
    pub qcam: Option<QcamMeta>,
    /// True when the counting stage estimated zero matches and the search
    /// stage was skipped.
    pub no_matches_estimated: bool,
}

impl JaccardReport {
    /// Position-wise comparison string: matching bases as-is, differences as
    /// asterisks. Only defined for equal-length strands.
    pub fn common_string(&self) -> Option<String> {
        if self.strand_a.len() != self.strand_b.len() {
            return None;
        }
        Some(
            self.strand_a
                .as_str()
                .chars()
                .zip(self.strand_b.as_str().chars())
                .map(|(x, y)| if x == y { x } else { '*' })
                .collect(),
        )
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct ReportDoc<'a> {
            sample_a: &'a str,
            sample_b: &'a str,
            common: Option<String>,
            k: usize,
            matched_kmers: Vec<&'a str>,
            size_a: usize,
            size_b: usize,
            size_intersection: usize,
            jaccard: f64,
            heqc: &'a HeqcEstimate,
            qcam: &'a Option<QcamMeta>,
            no_matches_estimated: bool,
        }
        let doc = ReportDoc {
            sample_a: self.strand_a.as_str(),
            sample_b: self.strand_b.as_str(),
            common: self.common_string(),
            k: self.k,
            matched_kmers: self.matched_kmers.iter().collect(),
            size_a: self.size_a,
            size_b: self.size_b,
            size_intersection: self.size_intersection,
            jaccard: self.jaccard,
            heqc: &self.heqc,
            qcam: &self.qcam,
            no_matches_estimated: self.no_matches_estimated,
        };
        serde_json::to_string_pretty(&doc).expect("report serialization cannot fail")
    }
}

/// Full pipeline: k-merize both strands, pad, estimate the match count and
/// iteration budget, run the search, deduplicate matched k-mer values into
/// the intersection, and evaluate the Jaccard index with classically
/// computed set sizes.
pub fn jaccard_qcam(
    strand_a: &DnaStrand,
    strand_b: &DnaStrand,
    k: usize,
    config: &JaccardConfig,
) -> Result<JaccardReport> {
    let seq_a = kmerize(strand_a, k)?;
    let seq_b = kmerize(strand_b, k)?;
    let (pa, pb) = pad_sequences(&seq_a, &seq_b)?;

    let size_a = unique_kmers(strand_a, k)?.len();
    let size_b = unique_kmers(strand_b, k)?.len();

    let est = heqc_pipeline_capped(
        &pa,
        &pb,
        config.heqc_shots,
        config.seed,
        config.variant,
        config.max_qubits,
    )?;

    let Some(k_iter) = est.k else {
        return Ok(JaccardReport {
            strand_a: strand_a.clone(),
            strand_b: strand_b.clone(),
            k,
            size_a,
            size_b,
            size_intersection: 0,
            jaccard: 0.0,
            matched_kmers: KmerSet::new(k),
            heqc: est,
            qcam: None,
            no_matches_estimated: true,
        });
    };

    let shots = config.qcam_shots.unwrap_or_else(|| {
        (50.0 * est.m_est * (est.m_est + 1.0).ln()).ceil().max(300.0) as u64
    });
    let result = run_qcam_capped(&pa, &pb, k_iter, shots, config.seed, config.max_qubits)?;

    let mut matched = KmerSet::new(k);
    for (i, _) in collect_matches(&result) {
        let item = pa.get(i);
        let code = if item.depth() == 2 * k {
            item
        } else {
            // Padded depth 2k+1: real items carry a leading 0, so the value
            // is unchanged at the original depth.
            BitString::new(item.value(), 2 * k)?
        };
        matched.insert(decode_kmer(&code)?);
    }

    let size_intersection = matched.len();
    let jaccard = size_intersection as f64 / (size_a + size_b - size_intersection) as f64;
    Ok(JaccardReport {
        strand_a: strand_a.clone(),
        strand_b: strand_b.clone(),
        k,
        size_a,
        size_b,
        size_intersection,
        jaccard,
        matched_kmers: matched,
        heqc: est,
        qcam: Some(QcamMeta {
            k: result.k,
            shots: result.shots,
            seed: result.seed,
            verified: result.verified(),
            rejected: result.rejected,
        }),
        no_matches_estimated: false,
    })
}

/// Parse FASTA-like text: lines starting with '>' begin a new record and are
/// otherwise ignored, sequence lines are concatenated and uppercased.
pub fn parse_fasta(text: &str) -> Result<Vec<DnaStrand>> {
    let mut records: Vec<String> = Vec::new();
    let mut current: Option<String> = None;
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('>') {
            let _ = rest;
            if let Some(seq) = current.take() {
                records.push(seq);
            }
            current = Some(String::new());
        } else {
            current
                .get_or_insert_with(String::new)
                .push_str(&line.to_uppercase());
        }
    }
    if let Some(seq) = current.take() {
        records.push(seq);
    }
    if records.is_empty() {
        return Err(Error::FastaFormat("no sequence records found".into()));
    }
    records
        .iter()
        .map(|seq| {
            if seq.is_empty() {
                Err(Error::FastaFormat("record with no sequence lines".into()))
            } else {
                DnaStrand::new(seq)
            }
        })
        .collect()
}

pub fn read_fasta(path: &Path) -> Result<Vec<DnaStrand>> {
    parse_fasta(&std::fs::read_to_string(path)?)
}
