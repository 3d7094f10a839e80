//! TREC-style qrels and run files.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, IoContext, Origin};
use crate::retrieval::ScoredDoc;
use crate::Result;

/// Relevance judgments: query id → relevant doc ids. A query judged only
/// with relevance 0 is present with an empty set.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Qrels {
    judgments: BTreeMap<String, BTreeSet<String>>,
}

impl Qrels {
    /// `query_id 0 doc_id relevance` per line.
    pub fn parse(source: &str, content: &str) -> Result<Self> {
        let mut judgments: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
        for (i, line) in content.lines().enumerate() {
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.is_empty() {
                continue;
            }
            let at = Origin::line(source, i + 1);
            let [qid, _iter, doc, rel] = fields[..] else {
                return Err(Error::Parse {
                    at,
                    message: format!("expected 4 fields, found {}", fields.len()),
                });
            };
            let rel: i64 = rel.parse().map_err(|_| Error::Parse {
                at,
                message: format!("relevance `{rel}` is not an integer"),
            })?;
            let set = judgments.entry(qid.to_string()).or_default();
            if rel > 0 {
                set.insert(doc.to_string());
            }
        }
        Ok(Qrels { judgments })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let content = std::fs::read_to_string(path).io_context(path)?;
        Self::parse(&path.display().to_string(), &content)
    }

    pub fn insert(&mut self, query: &str, relevant: impl IntoIterator<Item = String>) {
        self.judgments
            .entry(query.to_string())
            .or_default()
            .extend(relevant);
    }

    pub fn relevant(&self, query: &str) -> Option<&BTreeSet<String>> {
        self.judgments.get(query)
    }

    pub fn queries(&self) -> impl Iterator<Item = (&str, &BTreeSet<String>)> {
        self.judgments.iter().map(|(q, r)| (q.as_str(), r))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunEntry {
    pub doc: String,
    pub rank: usize,
    pub score: f64,
}

/// A system's ranked lists, per query, ordered by rank.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Run {
    pub tag: String,
    rankings: BTreeMap<String, Vec<RunEntry>>,
}

impl Run {
    pub fn new(tag: &str) -> Self {
        Run {
            tag: tag.to_string(),
            rankings: BTreeMap::new(),
        }
    }

    /// `query_id Q0 doc_id rank score run_tag` per line.
    pub fn parse(source: &str, content: &str) -> Result<Self> {
        let mut run = Run::default();
        for (i, line) in content.lines().enumerate() {
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.is_empty() {
                continue;
            }
            let at = Origin::line(source, i + 1);
            let [qid, _q0, doc, rank, score, tag] = fields[..] else {
                return Err(Error::Parse {
                    at,
                    message: format!("expected 6 fields, found {}", fields.len()),
                });
            };
            let rank: usize = rank.parse().map_err(|_| Error::Parse {
                at: at.clone(),
                message: format!("rank `{rank}` is not a non-negative integer"),
            })?;
            let score: f64 = score.parse().map_err(|_| Error::Parse {
                at: at.clone(),
                message: format!("score `{score}` is not a number"),
            })?;
            if run.tag.is_empty() {
                run.tag = tag.to_string();
            }
            run.rankings.entry(qid.to_string()).or_default().push(RunEntry {
                doc: doc.to_string(),
                rank,
                score,
            });
        }
        for entries in run.rankings.values_mut() {
            entries.sort_by_key(|e| e.rank);
        }
        Ok(run)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let content = std::fs::read_to_string(path).io_context(path)?;
        Self::parse(&path.display().to_string(), &content)
    }

    /// Record a ranked result list; ranks start at 1.
    pub fn insert(&mut self, query: &str, results: &[ScoredDoc]) {
        let entries = results
            .iter()
            .enumerate()
            .map(|(i, d)| RunEntry {
                doc: d.id.clone(),
                rank: i + 1,
                score: d.score,
            })
            .collect();
        self.rankings.insert(query.to_string(), entries);
    }

    pub fn ranking(&self, query: &str) -> Option<Vec<&str>> {
        self.rankings
            .get(query)
            .map(|es| es.iter().map(|e| e.doc.as_str()).collect())
    }

    pub fn queries(&self) -> impl Iterator<Item = &str> {
        self.rankings.keys().map(String::as_str)
    }

    pub fn to_trec(&self) -> String {
        let mut out = String::new();
        for (q, entries) in &self.rankings {
            for e in entries {
                let _ = writeln!(out, "{}", format_line(q, &e.doc, e.rank, e.score, &self.tag));
            }
        }
        out
    }
}

pub fn format_line(query: &str, doc: &str, rank: usize, score: f64, tag: &str) -> String {
    format!("{query} Q0 {doc} {rank} {score:.6} {tag}")
}
