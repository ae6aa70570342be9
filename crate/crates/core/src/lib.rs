//! Multi-expert ("special") fuzzy and neutrosophic matrix algebra.
//!
//! A special matrix is an ordered union `M_1 ∪ … ∪ M_n` of independent component
//! matrices, one per expert. Every operation acts component by component.

pub mod dynamics;
pub mod error;
pub mod exec;
pub mod fre;
pub mod matrix;
pub mod models;
pub mod norms;
pub mod special;
pub mod text;
pub mod trace;
pub mod value;

pub use dynamics::{HiddenPattern, Outcome, RunOptions, State};
pub use error::{Error, Result};
pub use exec::Exec;
pub use matrix::Matrix;
pub use models::{Model, ModelClass};
pub use special::{ComponentTag, SpecialMatrix, SpecialStateVector};
pub use value::{OrderPolicy, Scalar, ThresholdMode, ValueDomain};
