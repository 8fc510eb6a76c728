//! Galois self-orthogonal generalized Reed–Solomon codes.
//!
//! The crate is layered bottom-up:
//!
//! - [`gf`]: table-driven arithmetic in `F_{p^m}`, Frobenius powers, the
//!   subgroup `H = <w^{p^e+1}>` and its root extraction.
//! - [`linalg`]: dense vectors and matrices over a field context.
//! - [`poly`]: univariate polynomials over `F_q`.
//! - [`codes`]: (extended) GRS specifications, generic linear codes and
//!   exact minimum-distance checks.
//! - [`orth`]: e-Galois Gram matrices, hull dimensions and the λ-polynomial
//!   criteria for self-orthogonality.
//! - [`construct`]: the constructions of self-orthogonal MDS codes and the
//!   parameter tables built from them.
//! - [`quantum`]: hull propagation rules and entanglement-assisted quantum
//!   code parameters.

pub mod codes;
pub mod construct;
pub mod gf;
pub mod linalg;
pub mod orth;
pub mod poly;
pub mod quantum;

pub use codes::{CertifiedCode, GrsSpec, LinearCode, MdsStatus};
pub use construct::{Method, ParamRow};
pub use gf::{FieldCtx, Fe, SubgroupH};
pub use linalg::FMatrix;
pub use quantum::{HullCode, HullTarget, QuantumParams};
