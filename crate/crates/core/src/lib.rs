//! Permutation group actions, wreath products, stable families, exact
//! polynomial arithmetic and Galois groups of integer polynomials, with
//! height censuses over boxes of monic polynomials.

pub mod action;
pub mod catalog;
pub mod census;
pub mod error;
pub mod families;
pub mod galois;
pub mod group;
pub mod iso;
pub mod perm;
pub mod poly;
pub mod wreath;

pub use error::{Error, Result};
