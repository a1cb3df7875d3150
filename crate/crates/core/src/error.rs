use thiserror::Error;

/// Errors raised by the algebra, character and identity layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid composition `{input}`: {reason}")]
    InvalidComposition { input: String, reason: String },

    #[error("invalid permutation `{input}`: {reason}")]
    InvalidPermutation { input: String, reason: String },

    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("lattice path ends at ({path_p},{path_q}) but compositions have lengths ({p},{q})")]
    PathMismatch {
        path_p: usize,
        path_q: usize,
        p: usize,
        q: usize,
    },

    #[error("basis mismatch: {left} vs {right}")]
    BasisMismatch { left: char, right: char },

    #[error("truncation degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("functional is not unital: value on the empty composition is {0}")]
    NotUnital(String),

    #[error("2-adic valuation of zero is undefined")]
    ZeroValuation,

    #[error("permutations of {n} exceed the enumeration bound {bound}")]
    PermutationBound { n: usize, bound: usize },

    #[error("character `{0}` has no permutation-level formula")]
    UnsupportedCharacter(String),

    #[error("unknown character id: {0}")]
    UnknownCharacter(String),

    #[error("H+ is only defined on compositions of even weight, got weight {0}")]
    OddWeight(usize),

    #[error("unknown identity id `{0}`")]
    UnknownIdentity(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
