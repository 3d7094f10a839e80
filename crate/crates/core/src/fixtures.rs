//! Bundled fixture data: a small knowledge base covering the Thailand
//! neighbourhood and the four worked questions, plus lexicons, stopwords,
//! a demo corpus and an evaluation set.
//!
//! The files are compiled in, so everything here works without a checkout.
//! [`data_dir`] points at the on-disk copies for tools that want paths.

use std::path::PathBuf;

use crate::kb::KnowledgeBase;
use crate::query::{ClassLexicon, PhraseDictionary};
use crate::retrieval::Document;
use crate::Result;

pub const CLASSES: &str = include_str!("../data/kb/classes.tsv");
pub const ENTITIES: &str = include_str!("../data/kb/entities.tsv");
pub const RELATIONS: &str = include_str!("../data/kb/relations.tsv");
pub const FACTS: &str = include_str!("../data/kb/facts.tsv");
pub const PHRASES: &str = include_str!("../data/phrases.tsv");
pub const CLASS_LEXICON: &str = include_str!("../data/class_lexicon.tsv");
pub const CORPUS: &str = include_str!("../data/corpus.jsonl");
pub const EVAL_CORPUS: &str = include_str!("../data/eval/corpus.jsonl");
pub const EVAL_QUERIES: &str = include_str!("../data/eval/queries.tsv");
pub const EVAL_QRELS: &str = include_str!("../data/eval/qrels.txt");

/// Directory holding the data files in the source tree.
pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data")
}

pub fn knowledge_base() -> Result<KnowledgeBase> {
    KnowledgeBase::from_tsv(CLASSES, ENTITIES, RELATIONS, FACTS)
}

pub fn phrases(kb: &KnowledgeBase) -> Result<PhraseDictionary> {
    PhraseDictionary::parse("phrases.tsv", PHRASES, kb)
}

pub fn class_lexicon(kb: &KnowledgeBase) -> Result<ClassLexicon> {
    ClassLexicon::parse("class_lexicon.tsv", CLASS_LEXICON, kb)
}

pub fn corpus() -> Result<Vec<Document>> {
    crate::retrieval::parse_corpus("corpus.jsonl", CORPUS)
}

pub fn eval_corpus() -> Result<Vec<Document>> {
    crate::retrieval::parse_corpus("eval/corpus.jsonl", EVAL_CORPUS)
}

/// `(query id, text)` pairs of the evaluation set.
pub fn eval_queries() -> Result<Vec<(String, String)>> {
    crate::pipeline::parse_queries("eval/queries.tsv", EVAL_QUERIES)
}
