//! Degreewise finite graded linear algebra over `F_2`.
//!
//! Structures are stored as tables of structure constants up to a
//! truncation degree, and every axiom is checked rather than assumed.

pub mod algebroid;
pub mod f2;
pub mod fixtures;
pub mod graded;
pub mod io;
pub mod milnor_moore;
pub mod structures;

pub use algebroid::{cor22_pipeline, right_unit_descends, AlgebroidData, Cor22Input, RingComodule};
pub use graded::{Basis, Chain, GradedSpace, StructureMap, TensorBasis};
pub use milnor_moore::{mm_split, primitives, MmSplit};
pub use structures::{validate_comodule, validate_hopf, Algebra, ComoduleData, HopfData, Report};
