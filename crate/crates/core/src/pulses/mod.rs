//! Pulse sequences, systematic error models, and the naive / BB1 / robust
//! CNOT builders.

mod builders;
mod compile;
mod dump;
mod element;
mod gates;

pub use builders::{
    bb1_angles, build_bb1, build_naive, build_naive_cnot, build_robust_cnot,
    build_robust_cnot_with, cz_from_ising, hadamard_pulses, z_rotation_pulses, BuildOptions,
    CzFromIsing, Flavor,
};
pub use compile::{compile, element_propagator, sandwich_decomposition, MINUS_Y, PLUS_Y};
pub use dump::{dump_text, ElementRecord, SequenceRecord};
pub use element::{wrap_phase, ElementKind, ErrorModel, PulseElement, PulseSequence};
pub use gates::{ideal_gate, IdealGate};
