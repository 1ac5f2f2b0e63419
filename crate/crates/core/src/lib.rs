//! Weighted cubelike graphs: exact spectra through the Walsh–Hadamard
//! transform, perfect state transfer at time pi/2, reconstruction of symmetric
//! matrices from a fixed orthogonal eigenbasis, and a dense quantum-walk
//! oracle that cross-checks all of it.
//!
//! Vertices are 0-based indices in `[0, 2^d)`; bit `j` of an index has weight
//! `2^j` and the group operation is XOR.

pub mod boolean;
pub mod eigenbasis;
pub mod error;
pub mod pst;
pub mod spectral;
pub mod walk;

pub use boolean::{GroupElement, HadamardEntry, MAX_DIM};
pub use eigenbasis::{
    build_q, reconstruct, select_index_set, IndexSet, OrthogonalBasis, ReconstructionResult,
};
pub use error::{CoreError, Result};
pub use pst::{classify, sigma_from_spectrum, sigma_from_weights, PstKind, PstResult, TRANSFER_TIME};
pub use spectral::{
    adjacency_from_weights, eigenvalues_from_weights, fwht, fwht_exact, structural_report,
    weights_from_adjacency, Entries, Parity, Spectrum, StructuralReport, WeightVector,
    WeightedGraph,
};
pub use walk::{
    fidelity, transition_spectral, transition_taylor, verify_result, verify_result_with,
    OracleRoutes, PairCheck, TransitionMatrix, VerificationReport,
};
