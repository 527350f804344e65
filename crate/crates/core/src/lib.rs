//! Shot-based statevector simulation of Grover-driven content-addressable
//! matching between two bit-string sequences, hardware-efficient quantum
//! counting for the iteration budget, and a DNA k-mer Jaccard similarity
//! pipeline built on both. Every quantum result is checkable against a
//! classical brute-force oracle at desk scale.

pub mod circuits;
pub mod dna;
pub mod error;
pub mod heqc;
pub mod qcam;
mod rng;
pub mod statevec;

pub use error::{Error, Result};
