//! End-to-end query handling: analyze, activate, expand, rank.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::activation::{
    distance_constrained_spread, expand, relation_constrained_spread, ActivationResult, ExpandedQuery,
};
use crate::error::Error;
use crate::kb::KnowledgeBase;
use crate::query::{ClassLexicon, PhraseDictionary, QueryAnalysis, QueryAnalyzer};
use crate::retrieval::{InvertedIndex, ScoredDoc};
use crate::text::TextPipeline;
use crate::trec::Run;
use crate::{fixtures, tsv, Result};

/// The three compared models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    /// Keywords only.
    Lexical,
    /// Keywords plus every direct neighbour of every query entity.
    Csa,
    /// Keywords plus entities satisfying the query's relation patterns.
    Rcsa,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [Strategy::Lexical, Strategy::Csa, Strategy::Rcsa];

    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::Lexical => "lexical",
            Strategy::Csa => "csa",
            Strategy::Rcsa => "rcsa",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lexical" => Ok(Strategy::Lexical),
            "csa" => Ok(Strategy::Csa),
            "rcsa" => Ok(Strategy::Rcsa),
            other => Err(format!(
                "unknown strategy `{other}` (expected lexical, csa or rcsa)"
            )),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Expansion {
    pub strategy: Strategy,
    pub analysis: QueryAnalysis,
    /// `None` for the lexical strategy.
    pub activation: Option<ActivationResult>,
    pub query: ExpandedQuery,
}

/// Knowledge base, lexicons and text pipeline.
#[derive(Debug, Clone)]
pub struct Engine {
    pub kb: KnowledgeBase,
    pub phrases: PhraseDictionary,
    pub lexicon: ClassLexicon,
    pub text: TextPipeline,
}

impl Engine {
    pub fn new(
        kb: KnowledgeBase,
        phrases: PhraseDictionary,
        lexicon: ClassLexicon,
        text: TextPipeline,
    ) -> Self {
        Engine {
            kb,
            phrases,
            lexicon,
            text,
        }
    }

    /// Everything from the bundled fixtures.
    pub fn fixture() -> Result<Self> {
        let kb = fixtures::knowledge_base()?;
        let phrases = fixtures::phrases(&kb)?;
        let lexicon = fixtures::class_lexicon(&kb)?;
        Ok(Engine::new(kb, phrases, lexicon, TextPipeline::default()))
    }

    pub fn analyzer(&self) -> QueryAnalyzer<'_> {
        QueryAnalyzer::new(&self.kb, &self.phrases, &self.lexicon)
    }

    /// `max_added` caps the activated entities (in id order) before their
    /// names are added.
    pub fn expand(&self, text: &str, strategy: Strategy, max_added: Option<usize>) -> Result<Expansion> {
        let analysis = self.analyzer().analyze(text);
        let original = self.text.keywords(text);
        let activation = match strategy {
            Strategy::Lexical => None,
            Strategy::Csa => Some(distance_constrained_spread(&self.kb, &analysis.seed_entities())?),
            Strategy::Rcsa => Some(relation_constrained_spread(&self.kb, &analysis.patterns)?),
        };
        let activation = match (activation, max_added) {
            (Some(a), Some(max)) => Some(a.truncated(max)),
            (a, _) => a,
        };
        let query = match &activation {
            Some(a) => expand(&original, a, &self.kb, &self.text)?,
            None => ExpandedQuery::unexpanded(original),
        };
        Ok(Expansion {
            strategy,
            analysis,
            activation,
            query,
        })
    }

    pub fn search(
        &self,
        index: &InvertedIndex,
        text: &str,
        strategy: Strategy,
        k: usize,
        max_added: Option<usize>,
    ) -> Result<(Expansion, Vec<ScoredDoc>)> {
        let expansion = self.expand(text, strategy, max_added)?;
        let results = index.rank(&expansion.query.index_terms(), k)?;
        Ok((expansion, results))
    }

    /// Rank every query; the run is keyed by query id.
    pub fn run(
        &self,
        index: &InvertedIndex,
        queries: &[(String, String)],
        strategy: Strategy,
        k: usize,
        max_added: Option<usize>,
    ) -> Result<Run> {
        use rayon::prelude::*;
        let ranked: Vec<(String, Vec<ScoredDoc>)> = queries
            .par_iter()
            .map(|(qid, text)| {
                self.search(index, text, strategy, k, max_added)
                    .map(|(_, docs)| (qid.clone(), docs))
            })
            .collect::<Result<_>>()?;
        let mut run = Run::new(strategy.as_str());
        for (qid, docs) in &ranked {
            run.insert(qid, docs);
        }
        Ok(run)
    }
}

/// `query_id<TAB>text` per line; `#` comment lines allowed.
pub fn parse_queries(source: &str, content: &str) -> Result<Vec<(String, String)>> {
    let mut out: Vec<(String, String)> = Vec::new();
    for rec in tsv::records(source, content, 2) {
        let rec = rec?;
        if out.iter().any(|(q, _)| q == rec.fields[0]) {
            return Err(Error::Duplicate {
                what: "query",
                id: rec.fields[0].to_string(),
                at: rec.at,
            });
        }
        out.push((rec.fields[0].to_string(), rec.fields[1].to_string()));
    }
    Ok(out)
}

pub fn read_queries(path: &std::path::Path) -> Result<Vec<(String, String)>> {
    use crate::error::IoContext;
    let content = std::fs::read_to_string(path).io_context(path)?;
    parse_queries(&path.display().to_string(), &content)
}
