//! Homological invariants of finite-dimensional bound-quiver algebras over prime fields.
//!
//! Layers, bottom-up:
//! - [`linalg`]: exact dense linear algebra over GF(p);
//! - [`algebra`]: validated basic algebras and their opposites;
//! - [`modules`]: matrix representations, Hom spaces, lattices, isomorphism;
//! - [`homology`]: resolutions, `Ext^i(-, Λ)`, transpose, evaluation maps, grades;
//! - [`gorenstein`]: Gorenstein profiles and the theorem verifiers.

pub mod algebra;
pub mod extent;
pub mod fixtures;
pub mod gorenstein;
pub mod homology;
pub mod linalg;
pub mod modules;

pub use algebra::{Algebra, AlgebraError};
pub use extent::Extent;
pub use linalg::{Fp, Mat, Subspace};
pub use modules::{Module, ModuleError, ModuleMap};
