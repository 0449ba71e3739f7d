//! Translations between FU1, DL_FU1 and DLR_reg without star and number restrictions.
//!
//! Every translation here is checked against the semantics of both sides by the test
//! suites; none of the rewrites is trusted on its own.

mod dlr0;
mod dnf;
mod fu1_dl;

use thiserror::Error;

use crate::dl::DlError;
use crate::dlr::DlrError;
use crate::fragments::Diagnostic;

pub use dlr0::{dlr0_to_fu1, eliminate_comp_union};
pub use dnf::{to_dnf_block, Disjunct, DnfBlock, Literal};
pub use fu1_dl::{dl_to_fu1, fu1_to_dl};

/// A construct that the target logic cannot express.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gate {
    Star,
    AtMost,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error("input is outside the source fragment:\n{0}")]
    Fragment(Diagnostic),
    #[error("{}", match .0 {
        Gate::Star => "Kleene star has no counterpart in FU1 or DL_FU1",
        Gate::AtMost => "number restrictions have no counterpart in FU1 or DL_FU1",
    })]
    Gate(Gate),
    #[error("formula has {0} free variables; at most one is allowed")]
    TooManyFreeVariables(usize),
    #[error("expected an existential quantifier block")]
    NotABlock,
    #[error("block is not uniform: {0}")]
    NotUniform(String),
    #[error("normal form exceeds {0} disjuncts")]
    TooLarge(usize),
    #[error(transparent)]
    Dl(#[from] DlError),
    #[error(transparent)]
    Dlr(#[from] DlrError),
}

impl TranslateError {
    /// True for refusals caused by the input lying outside what the translation accepts,
    /// as opposed to malformed input.
    pub fn is_gate(&self) -> bool {
        matches!(
            self,
            TranslateError::Fragment(_)
                | TranslateError::Gate(_)
                | TranslateError::TooManyFreeVariables(_)
                | TranslateError::NotUniform(_)
        )
    }
}
