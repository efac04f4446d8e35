//! Fusion rings, pointed Drinfeld centers, symmetry hypergroups,
//! Temperley-Lieb diagrams and the verdicts that tie them to spin chains.

pub mod catalog;
pub mod center;
pub mod channels;
pub mod error;
pub mod fusion_ring;
pub mod lsm;
pub mod spin_chain;
pub mod temperley_lieb;

pub use catalog::CatalogEntry;
pub use center::{AbelianGroup, CenterAutomorphism, FiniteGroup, Lagrangian, MetricGroup, Subgroup};
pub use channels::{ChannelCombo, SymmetryHypergroup};
pub use error::{Error, Result};
pub use fusion_ring::{DimensionVector, FiberFunctorFlag, FusionRing, VerificationReport};
pub use lsm::{FiberFunctorVerdict, RealizabilityReport, StateVerdict};
pub use temperley_lieb::{TLDiagram, TLElement};
