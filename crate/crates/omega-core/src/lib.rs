//! Automata over infinite words, Büchi transducers, and continuity analysis
//! of the functions those transducers realize.
//!
//! The crate provides:
//! - lasso words (ultimately periodic infinite words) as universal test points,
//! - nondeterministic/deterministic Büchi and deterministic Muller acceptors
//!   with the usual boolean and topological operations (trim, emptiness,
//!   membership, product, union, complement, closure, density, isolated points),
//! - Büchi transducers with evaluation, domain/image projection and
//!   functionality checks,
//! - computation of the continuity set of a synchronous functional transducer,
//! - constructions realizing a given acceptor as the continuity set of a
//!   synchronous function, dense partitions of Muller languages, and
//! - Post correspondence gadgets whose continuity points encode solutions.

pub mod alphabet;
pub mod complement;
pub mod constructions;
pub mod continuity;
pub mod error;
mod graph;
mod isolated;
pub mod lasso;
pub mod muller;
pub mod nba;
pub mod pcp;
pub mod prefix;
mod ramsey;
mod reduce;
pub mod text;
pub mod transducer;

/// Index of a state inside an automaton or transducer.
pub type StateId = usize;
/// Index of a symbol inside an [`Alphabet`].
pub type SymbolId = usize;

pub use alphabet::Alphabet;
pub use complement::{Equivalence, Inclusion};
pub use continuity::DiscontinuityWitness;
pub use error::Error;
pub use lasso::{Divergence, LassoWord};
pub use muller::DetMuller;
pub use nba::{Dba, Nba};
pub use pcp::{Approximant, Falsification, IndexSequence, PcpInstance};
pub use prefix::PrefixDfa;
pub use text::{AnyTransducer, Automaton};
pub use transducer::{BuchiTransducer, Functionality, Rule, RunWitness, SyncTransducer};

pub type Result<T> = std::result::Result<T, Error>;
