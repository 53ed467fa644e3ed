//! The guide's code blocks, compiled and run by `cargo test --doc`.
//!
//! mdbook cannot link the library when testing snippets itself, so each
//! chapter is included as a module doc here instead; rustdoc extracts
//! and runs the fenced Rust blocks, keeping the book in sync with the
//! code. One module per chapter makes a failing snippet easy to locate.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/getting-started.md")]
pub mod getting_started {}

#[doc = include_str!("../../../book/src/formulas.md")]
pub mod formulas {}

#[doc = include_str!("../../../book/src/propagation.md")]
pub mod propagation {}

#[doc = include_str!("../../../book/src/search.md")]
pub mod search {}

#[doc = include_str!("../../../book/src/phase-selection.md")]
pub mod phase_selection {}

#[doc = include_str!("../../../book/src/classifier.md")]
pub mod classifier {}

#[doc = include_str!("../../../book/src/benchmarking.md")]
pub mod benchmarking {}
