//! Spreading activation over the fact graph: free (depth-bounded, all
//! relations), distance-1 constrained, and relation+class constrained.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Origin};
use crate::kb::{EntityId, Fact, KnowledgeBase, Role};
use crate::query::RelationPattern;
use crate::text::TextPipeline;
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpreadKind {
    Free,
    DistanceCsa,
    RCsa,
}

impl SpreadKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SpreadKind::Free => "free",
            SpreadKind::DistanceCsa => "distance-csa",
            SpreadKind::RCsa => "r-csa",
        }
    }
}

impl fmt::Display for SpreadKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Why an entity was activated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceEntry {
    pub entity: EntityId,
    /// The seed whose spread reached the entity, or the pattern anchor.
    pub origin: EntityId,
    /// The entity on the near side of `fact`; equals `origin` at one hop.
    pub via: EntityId,
    pub fact: Fact,
    /// Side of `fact` occupied by `via`.
    pub via_role: Role,
    pub pattern: Option<RelationPattern>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ActivationResult {
    pub strategy: SpreadKind,
    pub activated: BTreeSet<EntityId>,
    /// One justification per activated entity.
    pub trace: BTreeMap<EntityId, TraceEntry>,
}

impl ActivationResult {
    pub fn empty(strategy: SpreadKind) -> Self {
        ActivationResult {
            strategy,
            activated: BTreeSet::new(),
            trace: BTreeMap::new(),
        }
    }

    fn activate(&mut self, entry: TraceEntry) {
        if self.activated.insert(entry.entity.clone()) {
            self.trace.insert(entry.entity.clone(), entry);
        }
    }

    /// Keep the first `max` activated entities in id order.
    pub fn truncated(mut self, max: usize) -> Self {
        let keep: BTreeSet<EntityId> = self.activated.iter().take(max).cloned().collect();
        self.trace.retain(|k, _| keep.contains(k));
        self.activated = keep;
        self
    }

    /// `entity<TAB>strategy<TAB>seed_or_anchor<TAB>relation<TAB>direction`,
    /// one line per activated entity. Direction is the role of the near
    /// entity in the traversed fact.
    pub fn trace_lines(&self) -> Vec<String> {
        self.trace
            .values()
            .map(|t| {
                format!(
                    "{}\t{}\t{}\t{}\t{}",
                    t.entity, self.strategy, t.via, t.fact.relation, t.via_role
                )
            })
            .collect()
    }
}

fn check_seeds<'a>(kb: &KnowledgeBase, seeds: impl IntoIterator<Item = &'a EntityId>) -> Result<()> {
    for s in seeds {
        if kb.entity(s.as_str()).is_none() {
            return Err(Error::UnknownEntity {
                id: s.to_string(),
                at: Origin::default(),
            });
        }
    }
    Ok(())
}

/// Breadth-first closure over facts in both directions, all relations, up
/// to `depth` hops from any seed. Seeds are never activated.
pub fn free_spread(kb: &KnowledgeBase, seeds: &BTreeSet<EntityId>, depth: usize) -> Result<ActivationResult> {
    if depth == 0 {
        return Err(Error::InvalidArgument("spread depth must be at least 1".into()));
    }
    check_seeds(kb, seeds)?;
    spread(kb, seeds, depth, SpreadKind::Free)
}

/// Every direct neighbour of every seed, any relation, no class filter.
pub fn distance_constrained_spread(
    kb: &KnowledgeBase,
    seeds: &BTreeSet<EntityId>,
) -> Result<ActivationResult> {
    check_seeds(kb, seeds)?;
    spread(kb, seeds, 1, SpreadKind::DistanceCsa)
}

fn spread(
    kb: &KnowledgeBase,
    seeds: &BTreeSet<EntityId>,
    depth: usize,
    kind: SpreadKind,
) -> Result<ActivationResult> {
    let mut result = ActivationResult::empty(kind);
    // entity -> seed it was reached from
    let mut reached: BTreeMap<EntityId, EntityId> = seeds.iter().map(|s| (s.clone(), s.clone())).collect();
    let mut frontier: BTreeSet<EntityId> = seeds.clone();
    for _ in 0..depth {
        let mut next = BTreeSet::new();
        for near in &frontier {
            let origin = reached[near].clone();
            for fact in kb.facts_touching(near.as_str())? {
                let via_role = if &fact.subject == near {
                    Role::Subject
                } else {
                    Role::Object
                };
                let far = fact.end(via_role.other());
                if reached.contains_key(far) {
                    continue;
                }
                reached.insert(far.clone(), origin.clone());
                next.insert(far.clone());
                result.activate(TraceEntry {
                    entity: far.clone(),
                    origin: origin.clone(),
                    via: near.clone(),
                    fact: fact.clone(),
                    via_role,
                    pattern: None,
                });
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(result)
}

/// For each pattern, the anchor's neighbours through the pattern relation
/// whose class is the target class or one of its subclasses. One hop.
/// Anchors themselves are never activated.
pub fn relation_constrained_spread(
    kb: &KnowledgeBase,
    patterns: &[RelationPattern],
) -> Result<ActivationResult> {
    let mut result = ActivationResult::empty(SpreadKind::RCsa);
    let anchors: BTreeSet<&EntityId> = patterns.iter().map(|p| &p.anchor).collect();
    for p in patterns {
        for x in kb.neighbors(p.anchor.as_str(), p.relation.as_str(), p.anchor_role)? {
            if anchors.contains(x) {
                continue;
            }
            let class = kb.class_of(x.as_str())?;
            if !kb.is_subclass(class.as_str(), p.target_class.as_str())? {
                continue;
            }
            let fact = match p.anchor_role {
                Role::Subject => Fact {
                    subject: p.anchor.clone(),
                    relation: p.relation.clone(),
                    object: x.clone(),
                },
                Role::Object => Fact {
                    subject: x.clone(),
                    relation: p.relation.clone(),
                    object: p.anchor.clone(),
                },
            };
            result.activate(TraceEntry {
                entity: x.clone(),
                origin: p.anchor.clone(),
                via: p.anchor.clone(),
                fact,
                via_role: p.anchor_role,
                pattern: Some(p.clone()),
            });
        }
    }
    Ok(result)
}

/// Original keywords plus the primary names of activated entities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpandedQuery {
    pub original_terms: Vec<String>,
    pub added_terms: Vec<String>,
}

impl ExpandedQuery {
    pub fn unexpanded(original_terms: Vec<String>) -> Self {
        ExpandedQuery {
            original_terms,
            added_terms: Vec::new(),
        }
    }

    /// Original followed by added terms, deduplicated, order kept.
    pub fn terms(&self) -> Vec<String> {
        let mut seen = BTreeSet::new();
        self.original_terms
            .iter()
            .chain(&self.added_terms)
            .filter(|t| seen.insert(t.as_str()))
            .cloned()
            .collect()
    }

    /// Stemmed, deduplicated terms ready for ranking; each has tf 1.
    pub fn index_terms(&self) -> Vec<String> {
        let mut seen = BTreeSet::new();
        self.terms()
            .iter()
            .map(|t| crate::text::stem(t))
            .filter(|t| seen.insert(t.clone()))
            .collect()
    }

    /// `capital OR italy OR rome`
    pub fn or_string(&self) -> String {
        self.terms().join(" OR ")
    }
}

/// Append the keywords of each activated entity's primary name, in entity
/// id order, skipping any term already present.
pub fn expand(
    original_terms: &[String],
    activation: &ActivationResult,
    kb: &KnowledgeBase,
    text: &TextPipeline,
) -> Result<ExpandedQuery> {
    let mut seen: BTreeSet<String> = original_terms.iter().cloned().collect();
    let mut added = Vec::new();
    for id in &activation.activated {
        let entity = kb.entity(id.as_str()).ok_or_else(|| Error::UnknownEntity {
            id: id.to_string(),
            at: Origin::default(),
        })?;
        for term in text.keywords(&entity.primary_name) {
            if seen.insert(term.clone()) {
                added.push(term);
            }
        }
    }
    Ok(ExpandedQuery {
        original_terms: original_terms.to_vec(),
        added_terms: added,
    })
}
