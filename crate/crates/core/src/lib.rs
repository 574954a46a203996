//! Word meaning as relative information gain (RIG) over subject categories.
//!
//! A corpus of category-labeled texts is reduced to presence counts
//! ([`corpus`]), every (word, category) pair gets a RIG value
//! ([`infogain`]), and the resulting words × categories matrix is analyzed
//! by principal components with Kaiser, broken-stick and condition-number
//! selection ([`pca`]). [`report`] writes the tables behind word clouds,
//! scree plots and loading groups.
//!
//! ```
//! use rigspace::corpus::{CorpusIndex, Document};
//! use rigspace::infogain::{build_rig_matrix, rank_by_rig};
//!
//! let docs = vec![
//!     Document::new("1", ["graph", "proof"], ["Mathematics"]).unwrap(),
//!     Document::new("2", ["proof", "lemma"], ["Mathematics"]).unwrap(),
//!     Document::new("3", ["cell", "protein"], ["Biology"]).unwrap(),
//!     Document::new("4", ["protein", "graph"], ["Biology"]).unwrap(),
//! ];
//! let index = CorpusIndex::from_documents(&docs, 1).unwrap();
//! let matrix = build_rig_matrix(&index).unwrap();
//! let top = rank_by_rig(&matrix, "Mathematics", 1).unwrap();
//! assert_eq!(top[0].word, "proof");
//! ```

pub mod cli;
pub mod corpus;
pub mod error;
pub mod infogain;
pub mod pca;
pub mod report;
pub mod synthetic;

pub use error::{Error, Result};
