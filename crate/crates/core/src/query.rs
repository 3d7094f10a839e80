//! Query analysis: relation phrases, entity mentions, class mentions, and
//! their assembly into I-R-C / C-R-I relation patterns.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, IoContext, Origin};
use crate::kb::{ClassId, EntityId, KnowledgeBase, RelationId, Role};
use crate::text::{normalize_surface, stem, tokenize, Token};
use crate::tsv;
use crate::Result;

/// Gapped relation phrases must fit in this many tokens.
pub const PHRASE_WINDOW: usize = 8;

/// Separator between token groups of a gapped phrase.
pub const GAP: char = '…';

/// Half-open token range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start < end);
        Span { start, end }
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end <= self.start
    }

    pub fn overlaps(&self, other: &Span) -> bool {
        self.start < other.end && other.start < self.end
    }

    pub fn contains(&self, pos: usize) -> bool {
        self.start <= pos && pos < self.end
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})", self.start, self.end)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationPhraseEntry {
    /// Stemmed token groups; more than one group means a gapped phrase.
    pub groups: Vec<Vec<String>>,
    pub phrase: String,
    pub relation: RelationId,
    /// The side of the relation the question asks about.
    pub unknown_side: Role,
}

impl RelationPhraseEntry {
    pub fn token_count(&self) -> usize {
        self.groups.iter().map(Vec::len).sum()
    }
}

#[derive(Debug, Clone, Default)]
pub struct PhraseDictionary {
    entries: Vec<RelationPhraseEntry>,
}

impl PhraseDictionary {
    /// `phrase<TAB>relation_id<TAB>subject|object`, relations checked
    /// against `kb`.
    pub fn parse(source: &str, content: &str, kb: &KnowledgeBase) -> Result<Self> {
        let mut entries = Vec::new();
        for rec in tsv::records(source, content, 3) {
            let rec = rec?;
            let groups: Vec<Vec<String>> = rec.fields[0]
                .split(GAP)
                .map(|g| tokenize(g).iter().map(|t| stem(&t.lower)).collect::<Vec<_>>())
                .filter(|g: &Vec<String>| !g.is_empty())
                .collect();
            if groups.is_empty() {
                return Err(Error::Parse {
                    at: rec.at,
                    message: "empty relation phrase".into(),
                });
            }
            let relation = rec.fields[1];
            if kb.relation(relation).is_none() {
                return Err(Error::UnknownRelation {
                    id: relation.to_string(),
                    at: rec.at,
                });
            }
            let unknown_side = rec.fields[2].parse::<Role>().map_err(|message| Error::Parse {
                at: rec.at.clone(),
                message,
            })?;
            entries.push(RelationPhraseEntry {
                groups,
                phrase: normalize_surface(rec.fields[0]),
                relation: relation.into(),
                unknown_side,
            });
        }
        Ok(PhraseDictionary { entries })
    }

    pub fn load(path: &Path, kb: &KnowledgeBase) -> Result<Self> {
        let content = std::fs::read_to_string(path).io_context(path)?;
        Self::parse(&path.display().to_string(), &content, kb)
    }

    pub fn entries(&self) -> &[RelationPhraseEntry] {
        &self.entries
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationMention {
    pub span: Span,
    /// Token positions actually matched (a gapped phrase skips some).
    pub matched: Vec<usize>,
    pub entry: RelationPhraseEntry,
}

/// Match every dictionary phrase against the stemmed query tokens.
///
/// Each phrase matches as an ordered subsequence of contiguous token
/// groups inside [`PHRASE_WINDOW`] tokens, taking the earliest completion
/// for each start. Where matches share a token, the one with more phrase
/// tokens wins, then the tighter span, then the leftmost.
pub fn detect_relation_mentions(tokens: &[Token], dictionary: &PhraseDictionary) -> Vec<RelationMention> {
    let stems: Vec<String> = tokens.iter().map(|t| stem(&t.lower)).collect();
    let mut candidates = Vec::new();
    for entry in dictionary.entries() {
        for start in 0..stems.len() {
            if let Some(matched) = match_gapped(&stems, start, &entry.groups) {
                let span = Span::new(matched[0], matched[matched.len() - 1] + 1);
                candidates.push(RelationMention {
                    span,
                    matched,
                    entry: entry.clone(),
                });
            }
        }
    }
    candidates.sort_by(|a, b| {
        b.entry
            .token_count()
            .cmp(&a.entry.token_count())
            .then(a.span.len().cmp(&b.span.len()))
            .then(a.span.start.cmp(&b.span.start))
            .then(a.entry.relation.cmp(&b.entry.relation))
    });
    let mut taken = BTreeSet::new();
    let mut accepted = Vec::new();
    for c in candidates {
        if c.matched.iter().any(|p| taken.contains(p)) {
            continue;
        }
        taken.extend(c.matched.iter().copied());
        accepted.push(c);
    }
    accepted.sort_by_key(|m| (m.span.start, m.span.end));
    accepted
}

fn match_gapped(stems: &[String], start: usize, groups: &[Vec<String>]) -> Option<Vec<usize>> {
    let first = &groups[0];
    if !group_at(stems, start, first) {
        return None;
    }
    let limit = (start + PHRASE_WINDOW).min(stems.len());
    let mut matched: Vec<usize> = (start..start + first.len()).collect();
    let mut pos = start + first.len();
    for group in &groups[1..] {
        let at = (pos..limit).find(|&i| i + group.len() <= limit && group_at(stems, i, group))?;
        matched.extend(at..at + group.len());
        pos = at + group.len();
    }
    (pos <= limit).then_some(matched)
}

fn group_at(stems: &[String], at: usize, group: &[String]) -> bool {
    at + group.len() <= stems.len() && stems[at..at + group.len()] == *group
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EntityMention {
    pub span: Span,
    pub surface: String,
    pub entity: EntityId,
}

/// Greedy left-to-right longest alias match. An alias shared by several
/// entities yields one mention per entity on the same span.
pub fn detect_entity_mentions(tokens: &[Token], kb: &KnowledgeBase) -> Vec<EntityMention> {
    let lower: Vec<&str> = tokens.iter().map(|t| t.lower.as_str()).collect();
    let mut mentions = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        let longest = (1..=kb.max_alias_tokens().min(tokens.len() - i))
            .rev()
            .find_map(|n| {
                let hits = kb.entities_by_alias_tokens(&lower[i..i + n]);
                (!hits.is_empty()).then_some((n, hits))
            });
        match longest {
            Some((n, hits)) => {
                let span = Span::new(i, i + n);
                let surface = surface_text(tokens, span);
                for entity in hits {
                    mentions.push(EntityMention {
                        span,
                        surface: surface.clone(),
                        entity: entity.clone(),
                    });
                }
                i += n;
            }
            None => i += 1,
        }
    }
    mentions
}

/// Original tokens of `span` joined by single spaces.
pub fn surface_text(tokens: &[Token], span: Span) -> String {
    tokens[span.start..span.end]
        .iter()
        .map(|t| t.text.as_str())
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassSource {
    WhWord,
    ClassNoun,
}

impl fmt::Display for ClassSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassSource::WhWord => "wh-word",
            ClassSource::ClassNoun => "class-noun",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassMention {
    pub span: Span,
    pub class_id: ClassId,
    pub source: ClassSource,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct ClassRule {
    stems: Vec<String>,
    class_id: ClassId,
    source: ClassSource,
}

/// Surface → class rules for question words and class nouns.
#[derive(Debug, Clone, Default)]
pub struct ClassLexicon {
    rules: Vec<ClassRule>,
}

impl ClassLexicon {
    /// `surface<TAB>class_id<TAB>wh|noun`, classes checked against `kb`.
    pub fn parse(source: &str, content: &str, kb: &KnowledgeBase) -> Result<Self> {
        let mut rules = Vec::new();
        for rec in tsv::records(source, content, 3) {
            let rec = rec?;
            let stems: Vec<String> = tokenize(rec.fields[0]).iter().map(|t| stem(&t.lower)).collect();
            if stems.is_empty() {
                return Err(Error::Parse {
                    at: rec.at,
                    message: "empty class surface".into(),
                });
            }
            let class = rec.fields[1];
            if kb.class(class).is_none() {
                return Err(Error::UnknownClass {
                    id: class.to_string(),
                    at: rec.at,
                });
            }
            let source = match rec.fields[2] {
                "wh" => ClassSource::WhWord,
                "noun" => ClassSource::ClassNoun,
                other => {
                    return Err(Error::Parse {
                        at: rec.at,
                        message: format!("expected `wh` or `noun`, found `{other}`"),
                    })
                }
            };
            let rule = ClassRule {
                stems,
                class_id: class.into(),
                source,
            };
            // `city` and `cities` stem alike; keep one.
            if !rules.contains(&rule) {
                rules.push(rule);
            }
        }
        Ok(ClassLexicon { rules })
    }

    pub fn load(path: &Path, kb: &KnowledgeBase) -> Result<Self> {
        let content = std::fs::read_to_string(path).io_context(path)?;
        Self::parse(&path.display().to_string(), &content, kb)
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }
}

/// One mention per rule match, ordered by position.
pub fn detect_class_mentions(tokens: &[Token], lexicon: &ClassLexicon) -> Vec<ClassMention> {
    let stems: Vec<String> = tokens.iter().map(|t| stem(&t.lower)).collect();
    let mut out = Vec::new();
    for rule in &lexicon.rules {
        for start in 0..stems.len() {
            if group_at(&stems, start, &rule.stems) {
                out.push(ClassMention {
                    span: Span::new(start, start + rule.stems.len()),
                    class_id: rule.class_id.clone(),
                    source: rule.source,
                });
            }
        }
    }
    out.sort_by(|a, b| (a.span, &a.class_id, a.source).cmp(&(b.span, &b.class_id, b.source)));
    out.dedup();
    out
}

/// A relation with one side bound to a known entity and the other open,
/// constrained to a class.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct RelationPattern {
    pub anchor: EntityId,
    pub relation: RelationId,
    pub target_class: ClassId,
    pub anchor_role: Role,
}

impl RelationPattern {
    /// The anchor's class fits its side of the relation, and the target
    /// class is above or below the class of the open side.
    pub fn is_compatible(&self, kb: &KnowledgeBase) -> Result<bool> {
        let rel = kb
            .relation(self.relation.as_str())
            .ok_or_else(|| Error::UnknownRelation {
                id: self.relation.to_string(),
                at: Origin::default(),
            })?;
        let (anchor_side, open_side) = match self.anchor_role {
            Role::Subject => (&rel.domain, &rel.range),
            Role::Object => (&rel.range, &rel.domain),
        };
        let anchor_class = kb.class_of(self.anchor.as_str())?;
        Ok(kb.is_subclass(anchor_class.as_str(), anchor_side.as_str())?
            && kb.classes_compatible(self.target_class.as_str(), open_side.as_str())?)
    }
}

impl fmt::Display for RelationPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.anchor_role {
            Role::Subject => write!(
                f,
                "[I: {}]-(R: {})-[C: {}]",
                self.anchor, self.relation, self.target_class
            ),
            Role::Object => write!(
                f,
                "[C: {}]-(R: {})-[I: {}]",
                self.target_class, self.relation, self.anchor
            ),
        }
    }
}

/// Token distance between a span and a set of matched positions; zero
/// when they share a token.
fn distance(span: Span, matched: &[usize]) -> usize {
    matched
        .iter()
        .map(|&p| {
            if span.contains(p) {
                0
            } else if p < span.start {
                span.start - p
            } else {
                p + 1 - span.end
            }
        })
        .min()
        .unwrap_or(usize::MAX)
}

/// Pair each relation mention with its nearest entity mention (anchor) and
/// nearest class mention (target), ties going to the leftmost. Patterns
/// that fail [`RelationPattern::is_compatible`] are dropped. Returns the
/// patterns and a trace of notable decisions.
pub fn build_patterns(
    relations: &[RelationMention],
    entities: &[EntityMention],
    classes: &[ClassMention],
    kb: &KnowledgeBase,
) -> (Vec<RelationPattern>, Vec<String>) {
    let mut patterns = Vec::new();
    let mut trace = Vec::new();
    for rm in relations {
        let label = format!("`{}` {} -> {}", rm.entry.phrase, rm.span, rm.entry.relation);

        let Some(anchor_span) = nearest(
            entities.iter().map(|e| e.span),
            &rm.matched,
            &mut trace,
            &label,
            "entity",
        ) else {
            trace.push(format!("{label}: no entity mention to anchor, no pattern"));
            continue;
        };
        let Some(class_span) = nearest(
            classes.iter().map(|c| c.span),
            &rm.matched,
            &mut trace,
            &label,
            "class",
        ) else {
            trace.push(format!("{label}: no class mention for the open side, no pattern"));
            continue;
        };
        let anchor_role = rm.entry.unknown_side.other();
        for em in entities.iter().filter(|e| e.span == anchor_span) {
            for cm in classes.iter().filter(|c| c.span == class_span) {
                let pattern = RelationPattern {
                    anchor: em.entity.clone(),
                    relation: rm.entry.relation.clone(),
                    target_class: cm.class_id.clone(),
                    anchor_role,
                };
                match pattern.is_compatible(kb) {
                    Ok(true) => {
                        if !patterns.contains(&pattern) {
                            patterns.push(pattern);
                        }
                    }
                    Ok(false) => trace.push(format!("{label}: dropped {pattern}: class constraints not met")),
                    Err(e) => trace.push(format!("{label}: dropped {pattern}: {e}")),
                }
            }
        }
    }
    (patterns, trace)
}

fn nearest(
    spans: impl Iterator<Item = Span>,
    matched: &[usize],
    trace: &mut Vec<String>,
    label: &str,
    what: &str,
) -> Option<Span> {
    let mut ranked: Vec<(usize, Span)> = spans.map(|s| (distance(s, matched), s)).collect();
    ranked.sort();
    ranked.dedup();
    let (best_d, best) = *ranked.first()?;
    if ranked.iter().skip(1).any(|&(d, s)| d == best_d && s != best) {
        trace.push(format!(
            "{label}: {what} mentions tied at distance {best_d}, took leftmost {best}"
        ));
    }
    Some(best)
}

/// Everything extracted from one query.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QueryAnalysis {
    pub raw: String,
    #[serde(skip)]
    pub tokens: Vec<Token>,
    pub relation_mentions: Vec<RelationMention>,
    pub entity_mentions: Vec<EntityMention>,
    pub class_mentions: Vec<ClassMention>,
    pub patterns: Vec<RelationPattern>,
    pub trace: Vec<String>,
}

impl QueryAnalysis {
    /// Distinct entities mentioned in the query, the seeds for activation.
    pub fn seed_entities(&self) -> BTreeSet<EntityId> {
        self.entity_mentions.iter().map(|m| m.entity.clone()).collect()
    }
}

/// Bundles the knowledge base with the two lexicons.
#[derive(Debug, Clone, Copy)]
pub struct QueryAnalyzer<'a> {
    pub kb: &'a KnowledgeBase,
    pub phrases: &'a PhraseDictionary,
    pub lexicon: &'a ClassLexicon,
}

impl<'a> QueryAnalyzer<'a> {
    pub fn new(kb: &'a KnowledgeBase, phrases: &'a PhraseDictionary, lexicon: &'a ClassLexicon) -> Self {
        QueryAnalyzer { kb, phrases, lexicon }
    }

    pub fn analyze(&self, text: &str) -> QueryAnalysis {
        let tokens = tokenize(text);
        let relation_mentions = detect_relation_mentions(&tokens, self.phrases);
        let entity_mentions = detect_entity_mentions(&tokens, self.kb);
        let mut trace = Vec::new();
        // A class noun inside an entity name ("City" in "Mexico City") is
        // part of the name.
        let class_mentions: Vec<ClassMention> = detect_class_mentions(&tokens, self.lexicon)
            .into_iter()
            .filter(|c| {
                let inside = entity_mentions.iter().any(|e| e.span.overlaps(&c.span));
                if inside {
                    trace.push(format!(
                        "class mention {} {} ignored: inside an entity mention",
                        c.class_id, c.span
                    ));
                }
                !inside
            })
            .collect();
        let (patterns, pattern_trace) =
            build_patterns(&relation_mentions, &entity_mentions, &class_mentions, self.kb);
        trace.extend(pattern_trace);
        QueryAnalysis {
            raw: text.to_string(),
            tokens,
            relation_mentions,
            entity_mentions,
            class_mentions,
            patterns,
            trace,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    struct Fx {
        kb: KnowledgeBase,
        phrases: PhraseDictionary,
        lexicon: ClassLexicon,
    }

    fn fx() -> Fx {
        let kb = fixtures::knowledge_base().unwrap();
        let phrases = fixtures::phrases(&kb).unwrap();
        let lexicon = fixtures::class_lexicon(&kb).unwrap();
        Fx { kb, phrases, lexicon }
    }

    const QUERY_A: &str = "What is the capital of Italy?";
    const QUERY_B: &str = "How many moons does Jupiter have?";
    const QUERY_C: &str = "Where is the actress, Marion Davies, buried?";
    const QUERY_D: &str = "What famous communist leader died in Mexico City?";

    #[test]
    fn relation_mentions_on_worked_queries() {
        let f = fx();
        let rm = detect_relation_mentions(&tokenize(QUERY_C), &f.phrases);
        assert_eq!(rm.len(), 1);
        assert_eq!(rm[0].entry.relation.as_str(), "buriedIn");
        assert_eq!(rm[0].entry.unknown_side, Role::Object);
        assert_eq!(rm[0].matched, [0, 6]);

        let rm = detect_relation_mentions(&tokenize(QUERY_A), &f.phrases);
        assert_eq!(rm.len(), 1);
        assert_eq!(rm[0].entry.relation.as_str(), "capitalOf");
        assert_eq!(rm[0].entry.unknown_side, Role::Subject);

        assert!(detect_relation_mentions(&tokenize("Hello world"), &f.phrases).is_empty());
    }

    #[test]
    fn gapped_phrase_respects_window() {
        let f = fx();
        // where(0) ... buried(9): ten tokens, past the window.
        let q = "Where is it that the famous old actress was buried";
        assert!(detect_relation_mentions(&tokenize(q), &f.phrases)
            .iter()
            .all(|m| m.entry.relation.as_str() != "buriedIn"));
        let q = "Where is that old actress buried";
        assert_eq!(detect_relation_mentions(&tokenize(q), &f.phrases).len(), 1);
    }

    #[test]
    fn longest_phrase_wins_on_shared_tokens() {
        let kb = fixtures::knowledge_base().unwrap();
        let dict = PhraseDictionary::parse(
            "p",
            "destinations of\tlocatedIn\tsubject\ntourist destinations of\ttouristDestinationOf\tsubject\n",
            &kb,
        )
        .unwrap();
        let rm = detect_relation_mentions(&tokenize("tourist destinations of Thailand"), &dict);
        assert_eq!(rm.len(), 1);
        assert_eq!(rm[0].entry.relation.as_str(), "touristDestinationOf");
    }

    #[test]
    fn entity_mentions() {
        let f = fx();
        let em = detect_entity_mentions(&tokenize(QUERY_D), &f.kb);
        assert_eq!(em.len(), 1);
        assert_eq!(em[0].entity.as_str(), "#Mexico_City");
        assert_eq!(em[0].surface, "Mexico City");

        let em = detect_entity_mentions(&tokenize("capital of Italy"), &f.kb);
        assert_eq!(em.len(), 1);
        assert_eq!(em[0].entity.as_str(), "#Italy");

        assert!(detect_entity_mentions(&tokenize("nothing to see"), &f.kb).is_empty());
    }

    #[test]
    fn ambiguous_alias_yields_one_mention_per_entity() {
        let kb = KnowledgeBase::builder()
            .class("Thing", None)
            .entity("#Paris_France", "Paris", "Thing", &[])
            .entity("#Paris_Texas", "Paris", "Thing", &[])
            .build()
            .unwrap();
        let em = detect_entity_mentions(&tokenize("flights to Paris"), &kb);
        assert_eq!(em.len(), 2);
        assert_eq!(em[0].span, em[1].span);
    }

    #[test]
    fn class_mentions() {
        let f = fx();
        let cm = detect_class_mentions(&tokenize(QUERY_C), &f.lexicon);
        assert_eq!(cm.len(), 1);
        assert_eq!(cm[0].class_id.as_str(), "Location");
        assert_eq!(cm[0].source, ClassSource::WhWord);

        let cm = detect_class_mentions(&tokenize(QUERY_B), &f.lexicon);
        assert_eq!(cm.len(), 1);
        assert_eq!(cm[0].class_id.as_str(), "Number");

        let cm = detect_class_mentions(&tokenize(QUERY_D), &f.lexicon);
        assert_eq!(cm[0].class_id.as_str(), "Leader");
        assert_eq!(cm[0].source, ClassSource::ClassNoun);
    }

    fn pattern(anchor: &str, rel: &str, class: &str, role: Role) -> RelationPattern {
        RelationPattern {
            anchor: anchor.into(),
            relation: rel.into(),
            target_class: class.into(),
            anchor_role: role,
        }
    }

    #[test]
    fn patterns_for_worked_queries() {
        let f = fx();
        let an = QueryAnalyzer::new(&f.kb, &f.phrases, &f.lexicon);
        assert_eq!(
            an.analyze(QUERY_C).patterns,
            [pattern("#Marion_Davies", "buriedIn", "Location", Role::Subject)]
        );
        assert_eq!(
            an.analyze(QUERY_A).patterns,
            [pattern("#Italy", "capitalOf", "Capital", Role::Object)]
        );
        assert_eq!(
            an.analyze(QUERY_B).patterns,
            [pattern("#Jupiter", "moonQuantity", "Number", Role::Subject)]
        );
        assert_eq!(
            an.analyze(QUERY_D).patterns,
            [pattern("#Mexico_City", "diedIn", "Leader", Role::Object)]
        );
        assert_eq!(
            an.analyze("cities that are tourist destinations of Thailand")
                .patterns,
            [pattern("#Thailand", "touristDestinationOf", "City", Role::Object)]
        );
    }

    #[test]
    fn no_entity_no_pattern() {
        let f = fx();
        let an = QueryAnalyzer::new(&f.kb, &f.phrases, &f.lexicon);
        let a = an.analyze("Where is the actress buried?");
        assert_eq!(a.relation_mentions.len(), 1);
        assert!(a.patterns.is_empty());
        assert!(a.trace.iter().any(|t| t.contains("no entity mention")));
    }

    #[test]
    fn incompatible_pattern_is_dropped() {
        let f = fx();
        let an = QueryAnalyzer::new(&f.kb, &f.phrases, &f.lexicon);
        // Jupiter is a Planet, not a Capital: capitalOf cannot anchor on it.
        let a = an.analyze("What is the capital of Jupiter?");
        assert!(a.patterns.is_empty());
        assert!(a.trace.iter().any(|t| t.contains("dropped")));
    }

    #[test]
    fn analysis_is_deterministic() {
        let f = fx();
        let an = QueryAnalyzer::new(&f.kb, &f.phrases, &f.lexicon);
        for q in [QUERY_A, QUERY_B, QUERY_C, QUERY_D] {
            assert_eq!(an.analyze(q), an.analyze(q));
        }
    }
}
