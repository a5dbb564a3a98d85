//! May spectral sequence machinery for the mod-p Steenrod algebra, p odd.
//!
//! The layers build on each other: [`may_core`] is the E1 algebra,
//! [`may_diff`] computes d1 and E2 cell by cell, [`adams_certify`] turns E2
//! data into statements about Ext, [`les_dims`] pushes those through the long
//! exact sequences for the Moore spectrum, the cofiber of alpha_1 and V(1),
//! and [`greek_bp`] does the Brown-Peterson side degree bookkeeping.

pub mod adams_certify;
pub mod error;
pub mod greek_bp;
pub mod les_dims;
pub mod linalg;
pub mod may_core;
pub mod may_diff;
pub mod prime;

pub use error::{CertifyError, ContextError, GreekError, LesError, TextError};
pub use may_core::{Element, Generator, Monomial, TriDegree};
pub use may_diff::{E2Report, MayEngine};
pub use prime::{GeneratorOrder, PrimeContext};
