//! Exact computation of Hilbert–Samuel coefficients, homological degrees and
//! homological torsions of graded modules over polynomial rings, together
//! with checkers for the inequalities and equivalences relating them.

pub mod cache;
pub mod context;
pub mod error;
pub mod examples;
pub mod field;
pub mod groebner;
pub mod hdeg;
pub mod hilbert_series;
pub mod linalg;
pub mod module;
pub mod ops;
pub mod order;
pub mod parse;
pub mod poly;
pub mod projection;
pub mod rational;
pub mod resolution;
pub mod ring;
pub mod samuel;
pub mod sequences;
pub mod theorems;
pub mod vector;

pub use context::{Context, Settings};
pub use error::{Error, Result};
pub use module::{FreeModule, ModuleElement, ModulePresentation, Submodule};
pub use poly::Polynomial;
pub use rational::Rat;
pub use ring::{Monomial, Ring};
