//! Exact-arithmetic workbench for fusion rings with a maximal-rank subring.

pub mod chartab;
pub mod corpus;
pub mod doc;
pub mod matrix;
pub mod mr;
pub mod obstruction;
pub mod premodular;
pub mod report;
pub mod ring;
pub mod scalar;
