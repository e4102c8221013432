pub mod algebra;
pub mod error;
pub mod field;
pub mod linalg;
pub mod poly;

pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub mod check;
pub mod freeness;
pub mod harness;
pub mod independence;
pub mod koszul;
pub mod linkage;
pub mod module;
