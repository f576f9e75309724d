//! Combinatorial modules over the quantum toroidal algebra of gl_n type, in exact arithmetic.
pub mod characters;
pub mod coeff;
pub mod field;
pub mod fock;
pub mod macmahon;
pub mod partitions;
pub mod plane;
pub mod rep;
pub mod roots;
pub mod tensor;
pub mod vector;
pub mod zeta;
