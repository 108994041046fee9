//! Group and groupoid extensions acting on chords.
//!
//! The crate builds simply transitive actions of extension groups
//! `1 → Z → G → H → 1` on chords labelled `n_t` (root `n`, type `t`), recovers
//! the T/I and PLR transformations from the left and right actions of the
//! dihedral group of order 24, and generalizes the construction to groupoid
//! extensions whose morphisms are partial transformations between chord
//! types. Generalized inversions give those partial transformations a
//! tone-by-tone reading.

pub mod action;
pub mod dsl;
pub mod error;
pub mod extension;
pub mod geninv;
pub mod group;
pub mod groupoid;
pub mod groupoid_action;
pub mod neo_riemannian;
pub mod pcs;
pub mod system;

pub use action::{ChiBijection, Side};
pub use dsl::{
    parse_sequence, parse_system, serialize_system, ChordSequence, ParseError, SystemSpec,
};
pub use error::{ActionError, AlgebraError, GenInvError, GroupoidError, PcsError};
pub use extension::{Cocycle2, ExtensionElement, ExtensionGroup, GroupAction};
pub use geninv::{enumerate_geninvs, geninv_from_morphism, GeneralizedInversion};
pub use group::{CayleyTable, FiniteGroup, GroupReport};
pub use groupoid::{
    build_major_minor_groupoid, build_malphabeta, ActionFunctor, FormalInversionGroupoid,
    GroupoidCocycle, GroupoidExtension, GroupoidMorphism, HMorphism, ObjectId,
    TranspositionGroupoid,
};
pub use groupoid_action::{ContextualReport, GroupoidChi, Variance};
pub use neo_riemannian::{build_d24, NeoRiemannian, Plr, TiName};
pub use pcs::{ChordLabel, PcSetType, PitchClass, TiOperator, TypeRegistry};
pub use system::{System, VerifyReport};
