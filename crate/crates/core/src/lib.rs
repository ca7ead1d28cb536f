//! Harmonic analysis on finite groups and SU(2) in the language of group
//! algebras: convolution, Peter–Weyl transforms, quantum states on the group
//! algebra, convolution-type operators, Clebsch–Gordan coupling and
//! Pontryagin duality.

pub mod algebra;
pub mod duality;
pub mod error;
pub mod group;
pub mod hplus;
pub mod io;
pub mod linalg;
pub mod matrix_model;
pub mod quantum;
pub mod repr;
pub mod spectral;
pub mod su2;

pub use algebra::{AlgebraElement, GroupAlgebra, UnitalizedElement};
pub use duality::{DualFunction, DualGroup};
pub use error::{Error, Result, StateViolation};
pub use group::{GroupSpec, GroupTable};
pub use hplus::{axiom_violations, AxiomViolations, HPlusAlgebra};
pub use linalg::{CMatrix, C64};
pub use matrix_model::UnitarySpace;
pub use quantum::{DensityState, FunctionOperator, Observable, PairFunction};
pub use repr::{character_of, check_irreducible, irreps_of, Character, Irrep};
pub use spectral::{PeterWeyl, SpectralBlocks, SpectrumEntry};
pub use su2::{BandlimitedFunction, CGTable, Euler, Spin};
