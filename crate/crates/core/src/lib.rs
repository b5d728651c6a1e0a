//! Finite k-fold monoidal categories, categories enriched over them, and a
//! checker that replays the delooping construction `V ↦ V-Cat` on concrete
//! tables.
//!
//! Everything is finite and explicit: a [`fincat::FinCategory`] is a pair of
//! lookup tables, and a diagram commutes when both legs resolve to the same
//! morphism id. Checkers return a [`report::DiagramReport`] listing each
//! diagram family, how many instances were evaluated, and a witness for
//! every failure.
//!
//! ```
//! use itermon::{corpus, monoidal::check_kfold, report::CheckOptions};
//!
//! let sign = corpus::sign_kfold(3);
//! let report = check_kfold(&sign, &CheckOptions::default());
//! assert!(report.passed());
//! ```

pub mod cli;
pub mod corpus;
pub mod deloop;
pub mod doc;
pub mod enrich;
pub mod error;
pub mod fincat;
pub mod monoidal;
pub mod report;

pub use error::{Error, Result};
