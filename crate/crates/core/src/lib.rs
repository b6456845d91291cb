//! Exact toric analysis of logarithmic foliations on the complex projective plane.

pub mod algebra;
pub mod blowup;
pub mod laurent;
pub mod local;
pub mod polytope;
pub mod projective;
pub mod report;
