//! Flag complexes, face vectors and extremal clique-count problems for flag
//! spheres.

pub mod complex;
pub mod constructions;
pub mod extremal;
pub mod face_vectors;
pub mod graph;
pub mod harness;
pub mod json;
