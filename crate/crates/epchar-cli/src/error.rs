//! Domain errors surfaced by the command-line layer. Every message starts
//! with the typed error name so scripts can match on the first token of the
//! diagnostic line; library errors already follow the same convention and
//! pass through unchanged.

use epchar::characters::CharactersError;
use epchar::exppoly::{ExpPolyError, ScalarBase};
use epchar::semiinvariants::SemiInvariantsError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Lexical or grammatical error in an `--expr` argument.
    #[error("SyntaxError: {msg} (at position {pos})")]
    Syntax { pos: usize, msg: String },

    /// `delta(r)` somewhere other than a factor of the top-level product.
    #[error("NestedDelta: delta(r) may only appear as a factor of the top-level product")]
    NestedDelta,

    /// More than one `delta(r)` factor (or a delta raised to a power).
    #[error("MultipleDelta: at most one delta(r) factor is allowed")]
    MultipleDelta,

    /// A product of exponentials that cannot be folded into one base.
    #[error("MixedBaseArithmetic: cannot multiply exp({0}) by exp({1}) with a symbolic base")]
    MixedBaseArithmetic(ScalarBase, ScalarBase),

    /// The two character routes disagreed under `--cross-check`.
    #[error("CrossCheckMismatch: {0}")]
    CrossCheckMismatch(String),

    #[error(transparent)]
    ExpPoly(#[from] ExpPolyError),

    #[error(transparent)]
    SemiInvariants(#[from] SemiInvariantsError),

    #[error(transparent)]
    Characters(#[from] CharactersError),
}
