//! Exact computations for the Hecke pair `(P_K, P_O)` of `ax+b` groups over
//! `Q` and the imaginary quadratic fields of class number one: the symbolic
//! Hecke algebra, a brute-force convolution model, KMS states, Dedekind zeta
//! partition functions and the geometric/Galois symmetry comparison.

pub mod arith;
pub mod cyclo;
pub mod error;
pub mod hecke;
pub mod kms;
pub mod numberfield;
pub mod oracle;
pub mod pairing;
pub mod parse;
pub mod symmetry;
pub mod torsion;

pub use error::{HeckeError, Result};
pub use numberfield::{FieldCtx, FieldElem, PrincipalIdeal, Rat};
