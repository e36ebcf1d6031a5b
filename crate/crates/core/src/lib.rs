//! Computational group theory kernels for certifying facts about quotients of
//! the braid commutator subgroup `B'_n`:
//!
//! * [`word`]: reduced free-group words,
//! * [`braid`]: braid words, band generators and Garside normal forms,
//! * [`perm`]: permutations and permutation groups,
//! * [`fpres`]: finite presentations and abelianization,
//! * [`cosets`]: Todd–Coxeter coset enumeration,
//! * [`harness`]: the check registry and report types behind the `bql` CLI.

pub mod braid;
pub mod cosets;
pub mod fpres;
pub mod harness;
pub mod perm;
pub mod word;

pub use braid::{ArcSide, BraidError, BraidWord, GarsideNormalForm, NamedElement, OrbitTarget};
pub use cosets::{Budget, CosetTable, EnumerationResult, NormalGeneration, Outcome};
pub use fpres::{artin_presentation, AbelianInvariants, Presentation, PresentationFile};
pub use harness::{
    orbit_stabilizer_bound, pipeline, run_check, BoundLedger, CheckId, CheckReport, Status, Summary,
};
pub use perm::{Parity, PermGroup, Permutation};
pub use word::{Letter, Word};
