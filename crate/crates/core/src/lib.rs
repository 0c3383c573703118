//! Tamari lattices, rotations of binary trees and the symmetric Thompson
//! monoid: words acting on trees, subword reversing, tree-pair elements of
//! Thompson's group F, Polish normal forms and rotation distances.

pub mod error;
pub mod group;
pub mod metrics;
pub mod polish_nf;
pub mod reversing;
pub mod tamari;
pub mod trees;
pub mod words;

pub use error::{Result, TamariError};
pub use group::{Dyadic, DyadicPLMap, GroupElement};
pub use reversing::ReversalOutcome;
pub use tamari::CoveringRelation;
pub use trees::{Address, PolishLetter, PolishWord, Side, Substitution, Tree};
pub use words::{HatLetter, Sign, SignedWord, XWord};
