//! Dimension of Hilbert-scheme components of determinantal subvarieties of
//! projective space: exact closed forms, and brute-force finite-field
//! oracles that check them on small instances.

pub mod corpus;
pub mod degree;
pub mod exact;
pub mod field;
pub mod formula;
pub mod linalg;
pub mod matrix;
pub mod oracle;
pub mod poly;
pub mod sheaf;
pub mod verify;

pub use degree::{ConditionFailure, DegreeData, DegreeError, DerivedInvariants};
pub use exact::ExactInt;
pub use field::PrimeField;
pub use formula::{dim_y, DimensionReport};
pub use matrix::{GradedIdeal, PolyMatrix};
pub use poly::HomogeneousPoly;
pub use verify::{verify, VerificationRecord, VerifyConfig, VerifyError};
