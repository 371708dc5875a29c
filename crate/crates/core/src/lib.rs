//! Finite posets, their regular open completions, regular suborders and
//! projection maps, two infinite games solved exactly on finite algebras,
//! and finite truncations of a handful of forcing posets.
//!
//! ```
//! use posetforge::{completion, FinitePoset};
//!
//! // Two incomparable elements under a common top.
//! let p = FinitePoset::new(3, &[(0, 2), (1, 2)])?;
//! let ro = completion(&p);
//! assert_eq!(ro.atom_count(), 2);
//! assert_eq!(ro.size(), Some(4));
//! # Ok::<(), posetforge::Error>(())
//! ```
//!
//! The guide in `book/` walks through each module with runnable snippets.

pub mod boolean;
pub mod embeddings;
pub mod error;
pub mod format;
pub mod games;
pub mod order;
pub mod random;
pub mod report;
pub mod zoo;

pub use boolean::{completion, FiniteBooleanAlgebra, PartitionSubalgebra, RegularOpenAlgebra};
pub use embeddings::{check_projection_map, is_regular_suborder, ProjectionMap, ProjectionScope, Route};
pub use error::{Error, Result};
pub use order::{FinitePoset, Order, Suborder};
pub use report::{CheckReport, Status};

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/intro.md")]
pub mod book_intro {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/posets.md")]
pub mod book_posets {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/algebras.md")]
pub mod book_algebras {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/regularity.md")]
pub mod book_regularity {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/projections.md")]
pub mod book_projections {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/games.md")]
pub mod book_games {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/zoo.md")]
pub mod book_zoo {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
pub mod book_cli {}

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
pub mod readme {}
