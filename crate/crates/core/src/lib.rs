//! Exact partition weight enumerators of MDS codes, averaged binary-image
//! enumerators, MacWilliams duality, and bounded-distance and
//! maximum-likelihood decoder error probabilities.

pub mod binary_avg;
pub mod cli;
pub mod codespec;
pub mod combinatorics;
pub mod duality;
pub mod error;
pub mod errorprob;
pub mod gf;
pub mod linear_code;
pub mod mds_enum;
pub mod poly;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
pub use gf::{Field, FieldElement};
pub use linear_code::{Budget, LinearCode, Partition, PweTable};
pub use mds_enum::{MdsEnumerator, MdsParams};
