//! Exact-arithmetic engine for inertia actions on torsion modules of abelian
//! varieties: integer/rational normal forms, cyclotomic integrality checks,
//! symplectic level structures, lattice saturation, and the worked example
//! certificates, all over big integers with zero floating point.

pub mod cyclotomic;
pub mod scenario_file;
pub mod scenarios;
pub mod verify;
pub mod error;
pub mod lattice;
pub mod linalg;
pub mod torsion;

pub use error::Error;
