//! Exact combinatorics for minimal affinizations of simply-laced type.
//!
//! The crate is layered bottom-up: [`dynkin`] provides diagrams, roots and
//! weights; [`kostant`] and [`charcalc`] count weight multiplicities two
//! independent ways; [`lweight`] is the monomial algebra of ℓ-weights;
//! [`minclass`] classifies Drinfeld data; [`krtensor`] builds on all of the
//! above to replay the multiplicity comparison between coherent and
//! incoherent data.

pub mod charcalc;
pub mod cli;
pub mod dynkin;
pub mod error;
pub mod kostant;
pub mod krtensor;
pub mod lweight;
pub mod minclass;

pub use charcalc::{BigCharacter, Character64};
pub use dynkin::{Diagram, DiagramKind, Node, RootVector, Subdiagram, Weight};
pub use error::{Error, Result};
pub use lweight::{DrinfeldSpec, KrString, LMonomial};

