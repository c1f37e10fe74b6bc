//! Sturmian and modulo-recurrent words under sliding-window cellular automata.

pub mod analysis;
pub mod error;
pub mod generators;
pub mod harness;
pub mod index;
pub mod palindromes;
pub mod rule;
pub mod word;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/words.md")]
    mod words {}
    #[doc = include_str!("../../../book/src/generators.md")]
    mod generators {}
    #[doc = include_str!("../../../book/src/rules.md")]
    mod rules {}
    #[doc = include_str!("../../../book/src/complexity.md")]
    mod complexity {}
    #[doc = include_str!("../../../book/src/verdicts.md")]
    mod verdicts {}
}
