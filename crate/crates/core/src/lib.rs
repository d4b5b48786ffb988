//! Jeu de taquin on finite posets.
//!
//! The crate builds finite posets from cover lists, slides bubbles out of
//! bi-numberings, decides the jdt property at three levels of reduction,
//! checks the d-complete axioms, runs the collision/repair engine behind the
//! simultaneous property, and enumerates small posets up to isomorphism to
//! classify them in bulk.

pub mod canonical;
pub mod dcomplete;
pub mod elements;
pub mod enumeration;
pub mod error;
pub mod exec;
pub mod extensions;
pub mod families;
pub mod io;
pub mod jdt;
pub mod poset;
pub mod simultaneous;
pub mod sliding;
pub mod structure;

pub use canonical::{canonical_form, CanonicalForm};
pub use elements::ElementSet;
pub use error::{Error, Result};
pub use extensions::{linear_extensions, linear_extensions_count, Numbering};
pub use poset::Poset;
pub use sliding::{BiNumbering, BubbleId, Cell, Snapshot, TestOrder};
