//! Toolkit for finitely presented groups: doubles, HNN extensions, split
//! extensions by free groups and Rips groups, their embeddings into direct
//! products, and word-problem, distortion and area machinery.

pub mod area;
pub mod cli;
mod automaton;
pub mod error;
pub mod growth;
pub mod homomorphisms;
pub mod presentations;
pub mod smallcanc;
pub mod solvers;
pub mod words;

pub use error::{Error, Result};
pub use presentations::{Presentation, Relator, SubgroupSpec};
pub use words::{Alphabet, Letter, Word};
