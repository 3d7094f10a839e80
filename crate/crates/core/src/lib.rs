//! Ontology-based query expansion with relation- and class-constrained
//! spreading activation, a tf.idf vector-space retrieval engine, and the
//! evaluation tooling (AP, 11-point curves, MAP, Fisher randomization test)
//! used to compare expansion strategies.
//!
//! ```
//! use rcsa::pipeline::{Engine, Strategy};
//!
//! let engine = Engine::fixture().unwrap();
//! let x = engine.expand("What is the capital of Italy?", Strategy::Rcsa, None).unwrap();
//! assert_eq!(x.query.or_string(), "capital OR italy OR rome");
//! ```

pub mod activation;
pub mod error;
pub mod eval;
pub mod fixtures;
pub mod kb;
pub mod pipeline;
pub mod query;
pub mod retrieval;
pub mod significance;
pub mod stem;
pub mod synthetic;
pub mod text;
pub mod trec;
mod tsv;

pub use error::{Error, Result};
