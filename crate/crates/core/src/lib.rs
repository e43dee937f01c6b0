//! Derivations of semirings of monotone chain endomorphisms: run-length
//! endomorphisms of finite chains, simplices and their types, local Jordan
//! derivations, Toeplitz matrices over idempotent semirings, and a verifier
//! that replays the known results as machine-checked claims.

pub mod chain;
pub mod count;
pub mod error;
pub mod jordan;
pub mod simplex;
pub mod toeplitz;
pub mod verifier;

pub use chain::{ChainEndo, RunLengthForm};
pub use error::{Error, Result};
pub use jordan::{JordanMap, Verdict};
pub use simplex::{SimplexSpec, TypeVector};
pub use toeplitz::{IdempotentSemiring, SemiringSelector, ToeplitzMatrix};
