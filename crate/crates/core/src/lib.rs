//! Exact arithmetic for quasi-symmetric functions, permutations and the
//! character group of the quasi-symmetric Hopf algebra.

pub mod characters;
pub mod composition;
pub mod error;
pub mod exactnum;
pub mod exec;
pub mod identities;
pub mod permutation;
pub mod qsym;

pub use composition::{Composition, CompositionStats};
pub use error::{Error, Result};
pub use exactnum::{BigInt, Rational};
pub use exec::Exec;
pub use permutation::{Permutation, SSymElement};
pub use qsym::{Basis, QSymElement, TensorElement};
pub use characters::{ClosedFormCharacter, TruncatedCharacter};
pub use identities::{CheckReport, Checker, Depth, IdentityId};
