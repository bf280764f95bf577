//! Exact computations on real hyperplane arrangements with rational data:
//! intersection posets and characteristic polynomials, chambers and faces,
//! tangent and normal cones, metric projections onto chambers, and checks of
//! the face-count identities that tie them together. All arithmetic is exact
//! except the Monte Carlo estimates in [`mc`].

pub mod arith;
pub mod arrangement;
pub mod error;
mod exact_int;
pub mod lp;
pub mod poset;
pub mod cells;
pub mod cones;
pub mod gen;
pub mod verify;
pub mod mc;
pub mod cli;
