//! Semi-infinite Ext for finite-dimensional graded algebras with a
//! triangular decomposition, computed with exact linear algebra.

#![allow(clippy::type_complexity)]

pub mod algebra;
pub mod complex;
pub mod coring;
pub mod error;
pub mod field;
pub mod format;
pub mod graded;
pub mod matrix;
pub mod hom;
pub mod module;
pub mod random;
pub mod resolution;
pub mod ring;
pub mod semiinf;
pub mod setup;
pub mod sharp;
pub mod tensor;

pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
