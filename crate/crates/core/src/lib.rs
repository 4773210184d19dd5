//! Locally recoverable codes built from polynomials that are constant on the
//! blocks of a partition of the evaluation set.

pub mod algebra;
pub mod bounds;
pub mod code;
pub mod codespec;
pub mod error;
pub mod general;
pub mod generate;
pub mod gf;
pub mod goodpoly;
pub mod linalg;
pub mod multiset;
pub mod oracle;
pub mod poly;
pub mod report;
pub mod textio;

pub use code::{Block, EvaluationCode, LrcCode, LrcParams};
pub use codespec::{AnyCode, CodeSpecFile};
pub use error::{Error, Result};
pub use generate::{generate, Construction, GenRequest};
pub use gf::{Field, FieldElement, FieldSpec};
pub use poly::Polynomial;
