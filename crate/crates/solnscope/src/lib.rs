//! Exact diagnostics for the solution sets of regularized least-squares
//! problems (min f(x) + 1/2 ||Ax - b||^2) and their linearly constrained
//! counterparts (min f(x) s.t. Ax = b): construct the solution set, then
//! certify existence, compactness and uniqueness with machine-checkable
//! certificates, cross-validated by independent numerical oracles.

pub mod scalar;
pub mod sym;
pub mod linalg;
pub mod sets;
pub mod atoms;
pub mod graph1d;
pub mod dualgraph;
pub mod infpost;
pub mod oracle;
pub mod least_squares;
pub mod constrained;
pub mod specfile;
pub mod report;
pub mod suite;
pub mod verify;
pub mod schema;

pub use scalar::Rat;
pub use sym::{ExtVal, SymVal};
