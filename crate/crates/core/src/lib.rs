//! Decision procedures for fundamental groups of finite graphs of finitely
//! generated free abelian groups (vGBS groups): the word problem, translation
//! lengths in the Bass–Serre tree, equations over vertex groups, centralizers
//! and moduli of hyperbolic elements, and multiple conjugacy.

pub mod cli;
pub mod conjugacy;
pub mod equations;
pub mod error;
pub mod fixtures;
pub mod gbs;
pub mod graph;
pub mod group;
pub mod linalg;
pub mod modulus;
pub mod normal_form;
pub mod tree;
pub mod word;

pub use conjugacy::{Centralizer, ConjugacyAnswer, HyperbolicChoice, NotConjugateReason, PolycyclicReduction};
pub use equations::{EquationFactor, ScaledVertexTerm, SyllableEquation};
pub use error::{Error, Result};
pub use gbs::{EllipticExponentForm, ReachabilityInstance, ReachabilityResult, VASState, VASTransition};
pub use graph::{build_presentation, validate_graph, AdaptedPresentation, GraphSpec, VGBSGraph};
pub use group::Group;
pub use modulus::{Direction, HalfLineFixation, IntersectionShape, Modulus};
pub use normal_form::{LoopForm, PathForm, ReducedForm};
pub use tree::{Axis, Hull, ProfileKind, TranslationProfile, TreeEdge, TreePath, TreeVertex};
pub use word::{Syllable, Word};
