//! Exact computations in PBW-type algebras: straightening, localization at
//! σ-normal elements, Lie superalgebra tables and degree-bounded centralizers.

pub mod builtins;
pub mod centralizer;
pub mod confluence;
pub mod element;
pub mod error;
pub mod expr;
pub mod frac;
pub mod lie;
pub mod localization;
pub mod presentation;
pub mod reference;
pub mod scalar;

pub use element::{Element, Monomial};
pub use error::{Error, Result};
pub use presentation::{
    BracketKind, GeneratorInfo, Letter, Parity, Presentation, PresentationBuilder, RewriteRule,
};
pub use scalar::Scalar;
