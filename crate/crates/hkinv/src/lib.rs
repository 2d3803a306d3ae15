//! Exact-arithmetic toolkit for quaternionic (hyperkähler) structures on
//! Euclidean R^{4n} and their invariance Lie algebras.
//!
//! The crate builds the standard block-diagonal structures, solves the
//! infinitesimal invariance equation `[X, J_α] = Σ_β M_{αβ} J_β` over the
//! exact field Q(i,√2), and identifies the resulting algebra as
//! su(2) ⊕ sp(n) through Killing forms, Cartan subalgebras, and root
//! systems. All computations are exact; no tolerances appear anywhere.
//!
//! ```
//! use hkinv::invariance::solve_invariance;
//! use hkinv::structures::build_structure;
//!
//! let j = build_structure(&[1, -1]).unwrap();
//! let sol = solve_invariance(&j).unwrap();
//! assert_eq!(sol.full_basis.len(), 13);
//! assert_eq!(sol.strong_part.len(), 10);
//! ```

pub mod cartan;
pub mod error;
pub mod invariance;
pub mod lie;
pub mod linalg;
pub mod matrix;
pub mod reduction;
pub mod report;
pub mod scalar;
pub mod structures;

pub use error::{Error, Result};

// Runs every code block in the guide as a doc-test, one module per
// chapter so a failure names its chapter.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/scalars.md")]
    mod scalars {}
    #[doc = include_str!("../../../book/src/structures.md")]
    mod structures {}
    #[doc = include_str!("../../../book/src/orientation.md")]
    mod orientation {}
    #[doc = include_str!("../../../book/src/invariance.md")]
    mod invariance {}
    #[doc = include_str!("../../../book/src/killing.md")]
    mod killing {}
    #[doc = include_str!("../../../book/src/roots.md")]
    mod roots {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
