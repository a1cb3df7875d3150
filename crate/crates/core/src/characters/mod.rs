//! Characters of QSym: closed-form canonical characters, truncated
//! characters under convolution, and the H refinement sums.

mod closed;
mod hsums;
mod truncated;

pub use closed::ClosedFormCharacter;
pub use hsums::{
    h_minus, h_minus_closed, h_minus_with, h_plus, h_plus_closed, h_plus_with, CatalanFn,
};
pub use truncated::{TruncatedCharacter, MAX_TRUNCATION};
