//! Exact desk-scale computation in the theory of forbidden configurations
//! of r-matrices.
//!
//! A matrix over `{0,..,r-1}` is *simple* when no column repeats; a pattern
//! `F` is a *configuration* of `A` (written `F ≺ A`) when some submatrix of
//! `A` is a row and column permutation of `F`. This crate decides
//! containment with an explicit witness, computes the extremal function
//! (the largest simple matrix avoiding a family, optionally with a fixed
//! ones-count per column, or maximized over row counts), generates the
//! named matrix families, mechanizes the constructive steps used to reason
//! about them (row decompositions, square templates, monochromatic-clique
//! extraction, the branching recurrence), and runs growth experiments with
//! exponent fits.
//!
//! Everything is exact and deterministic. The `examples/` directory walks
//! through each capability; the `forbcfg` binary exposes them as
//! subcommands.
//!
//! ```
//! use forbcfg::patterns::{contains, famspec};
//! use forbcfg::forb::{forb_exact, SearchConfig};
//!
//! let family = famspec::parse_family("Fabcd(0,1,1,0)").unwrap();
//! let res = forb_exact(4, 2, &family, &SearchConfig::default()).unwrap();
//! assert_eq!(res.value, 5);
//!
//! let identity = famspec::parse_matrix("I(2,1,0)").unwrap();
//! assert!(contains(&res.extremal, &identity).is_none());
//! ```

pub mod cache;
pub mod cli;
pub mod error;
pub mod forb;
pub mod growth;
pub mod matrix;
pub mod naive;
pub mod patterns;
pub mod prooflab;

pub use error::{Error, Result};
pub use forb::{forb_exact, forb_k_exact, forbmax, validate_result, ForbResult, SearchConfig};
pub use matrix::{ones_count, ColumnId, RMatrix};
pub use patterns::{avoids, canonical_config, config_equal, contains, ConfigFamily, Witness};
