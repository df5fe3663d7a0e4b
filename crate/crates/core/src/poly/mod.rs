//! Exact integer polynomials, boxes of monic polynomials, certified complex
//! roots, heights and factorization over the integers.

pub mod ball;
pub mod boxes;
pub mod factor;
pub mod height;
pub mod intpoly;
pub mod modp;
pub mod recognize;
pub mod roots;

pub use intpoly::IntPoly;
pub use ball::{Ball, IntegerTest};
pub use boxes::{box_count, box_iterate, BoxMode};
pub use factor::{factor_squarefree, is_irreducible};
pub use height::{mahler_check, weil_height, AlgebraicInteger, MahlerReport};
pub use recognize::integer_recognize;
pub use roots::{complex_roots, RootSet};
