//! Exact computations for the topological modular forms of level three:
//! Weierstrass curves with a 3-torsion point, their level structures and
//! transfer maps, q-expansions, and the descent spectral sequence.

pub mod exact_arith;
pub mod funfield;
pub mod levelmaps;
pub mod linalg;
pub mod polyring;
pub mod qexp;
pub mod report;
pub mod ring;
pub mod sseq;
pub mod verify;
pub mod weierstrass;
