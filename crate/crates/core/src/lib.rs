//! Exact surgery calculus for framed links in S³.
//!
//! Surgery presentations are reduced to combinatorial data (knot tags,
//! rational slopes, linking numbers). Kirby and Rolfsen moves act on that
//! data with full bookkeeping, move scripts are replayed and checked against
//! first homology, and the family of links whose surgery yields S³ is
//! generated and certified.

pub mod cli;
pub mod error;
pub mod family;
pub mod homology;
pub mod moves;
pub mod presentation;
pub mod script;
pub mod twobridge;

pub use error::{Error, Result};
pub use family::{certify, distinct_links, FamilyCertificate, FamilyParams};
pub use homology::{first_homology, HomologyClass, IntMatrix, SmithDecomposition};
pub use moves::KirbyMove;
pub use presentation::{Component, ComponentId, FramedLinkingMatrix, KnotTag, Slope, SurgeryPresentation};
pub use script::{verify_script, MoveScript, VerificationReport};
pub use twobridge::{NegContinuedFraction, TwoBridgeClass};
