//! Deciding and witnessing 3-permutability of finite algebras.
//!
//! The crate is organised bottom-up:
//!
//! - [`relcore`]: binary relations as bit matrices and their calculus.
//! - [`algebra`]: finite algebras, terms, homomorphisms, congruences.
//! - [`permutability`]: permutability, modularity, the Shifting Lemma and
//!   the relational characterisations of 3-permutability.
//! - [`termsynth`]: clone generation and Mal'tsev / Hagemann–Mitschke term search.
//! - [`diagrams`]: points, split-epi squares, cubes, `β_!` and Beck–Chevalley.
//! - [`reflection`]: reflectors into subvarieties and Galois pregroupoids.
//! - [`cli`]: file formats, reports and command dispatch.

pub mod algebra;
pub mod cli;
pub mod diagrams;
pub mod error;
pub mod permutability;
pub mod reflection;
pub mod relcore;
pub mod termsynth;
pub mod tuples;
pub mod verdict;
pub mod zoo;

pub use error::{Error, Result};
pub use verdict::{Status, Verdict};
