//! Hadamard-count optimization for Clifford+Rz circuits.
//!
//! A Clifford+Rz circuit is, up to a final Clifford operator, a sequence of
//! Pauli rotations. This crate re-synthesizes that sequence with a
//! diagonalization network that uses the fewest possible Hadamard gates,
//! either in total ([`synth::diagonalization_network`], [`resynth::h_opt`])
//! or between the first and last non-Clifford rotation
//! ([`synth::internal_h_minimization`], [`resynth::internal_h_opt`]).

pub mod bitmatrix;
pub mod circuit;
pub mod error;
pub mod io;
pub mod pauli;
pub mod pipeline;
pub mod resynth;
pub mod synth;
pub mod tableau;
pub mod tmerge;
pub mod verify;

pub use bitmatrix::{gf2_rank, BitMatrix};
pub use circuit::{concat, inverse, Angle, Circuit, Counts, Gate};
pub use error::{Error, Result};
pub use pauli::{commutativity_matrix, commutes, stack_xa, CommutativityMatrix, Pauli, PauliSequence};
pub use pipeline::{Pass, Pipeline};
pub use resynth::{extract_rotation_sequence, h_opt, internal_h_opt, Mode};
pub use synth::{
    clifford_synthesis, diagonalization_network, insert_rotations, internal_h_minimization, reverse_columns,
    RotationSequence,
};
pub use tableau::Tableau;
pub use tmerge::t_merge;
