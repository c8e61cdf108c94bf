pub mod error;
pub mod exact;
pub mod five_vertex;
pub mod grothendieck;
pub mod melting_crystal;
pub mod partitions;
pub mod phase_model;
pub mod serde_rational;
pub mod six_vertex;
pub mod suite;
