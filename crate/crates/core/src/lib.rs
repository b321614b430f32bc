//! Finite groups, exact character tables, monomiality searches and
//! π-partial characters.

pub mod charops;
pub mod chartable;
pub mod cycint;
pub mod error;
pub mod group;
pub mod modp;
pub mod monomial;
pub mod numbers;
pub mod pi;
pub mod workbench;

pub use error::{CharacterError, GroupError, PiError};
pub use group::{AutomorphismAction, ConjugacyClasses, Element, Generators, Group, SubgroupRef};
