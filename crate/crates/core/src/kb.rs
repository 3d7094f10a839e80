//! Entity ontology (class tree, named entities, aliases) joined with a fact
//! ontology (typed relation triples), validated and indexed at load time.

use std::borrow::Borrow;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, IoContext, Origin, Violation};
use crate::text::{normalize_surface, tokenize};
use crate::tsv;
use crate::Result;

macro_rules! id_type {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(String);

        impl $name {
            pub fn new(id: impl Into<String>) -> Self {
                $name(id.into())
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl Borrow<str> for $name {
            fn borrow(&self) -> &str {
                &self.0
            }
        }

        impl From<&str> for $name {
            fn from(s: &str) -> Self {
                $name(s.to_string())
            }
        }
    };
}

id_type!(
    /// Ontology class identifier, e.g. `Capital`.
    ClassId
);
id_type!(
    /// Named-entity identifier, `#`-prefixed, e.g. `#Rome`.
    EntityId
);
id_type!(
    /// Relation identifier, e.g. `capitalOf`.
    RelationId
);

/// Which side of a fact a given entity occupies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Subject,
    Object,
}

impl Role {
    pub fn other(self) -> Role {
        match self {
            Role::Subject => Role::Object,
            Role::Object => Role::Subject,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Role::Subject => "subject",
            Role::Object => "object",
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Role {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "subject" => Ok(Role::Subject),
            "object" => Ok(Role::Object),
            other => Err(format!("expected `subject` or `object`, found `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OntologyClass {
    pub id: ClassId,
    pub parent: Option<ClassId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedEntity {
    pub id: EntityId,
    pub primary_name: String,
    pub class_id: ClassId,
    /// Always contains `primary_name`.
    pub aliases: BTreeSet<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationType {
    pub id: RelationId,
    pub domain: ClassId,
    pub range: ClassId,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Fact {
    pub subject: EntityId,
    pub relation: RelationId,
    pub object: EntityId,
}

impl Fact {
    pub fn new(subject: &str, relation: &str, object: &str) -> Self {
        Fact {
            subject: subject.into(),
            relation: relation.into(),
            object: object.into(),
        }
    }

    /// The entity filling `role`.
    pub fn end(&self, role: Role) -> &EntityId {
        match role {
            Role::Subject => &self.subject,
            Role::Object => &self.object,
        }
    }
}

impl fmt::Display for Fact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.subject, self.relation, self.object)
    }
}

static EMPTY: BTreeSet<EntityId> = BTreeSet::new();

/// Immutable, validated knowledge base.
#[derive(Debug, Clone)]
pub struct KnowledgeBase {
    classes: BTreeMap<ClassId, OntologyClass>,
    root: ClassId,
    entities: BTreeMap<EntityId, NamedEntity>,
    relations: BTreeMap<RelationId, RelationType>,
    facts: Vec<Fact>,
    alias_index: BTreeMap<String, BTreeSet<EntityId>>,
    /// Aliases keyed by their lowercase token sequence joined with spaces;
    /// this is what the gazetteer matches query tokens against.
    token_alias_index: BTreeMap<String, BTreeSet<EntityId>>,
    max_alias_tokens: usize,
    sp_index: BTreeMap<(EntityId, RelationId), BTreeSet<EntityId>>,
    po_index: BTreeMap<(RelationId, EntityId), BTreeSet<EntityId>>,
    /// Fact positions touching each entity, either side.
    incident: BTreeMap<EntityId, Vec<usize>>,
}

impl KnowledgeBase {
    /// Load the four TSV files. Each is validated against the ones before it.
    pub fn load(
        class_path: &Path,
        entity_path: &Path,
        relation_path: &Path,
        fact_path: &Path,
    ) -> Result<Self> {
        let read = |p: &Path| std::fs::read_to_string(p).io_context(p);
        let classes = read(class_path)?;
        let entities = read(entity_path)?;
        let relations = read(relation_path)?;
        let facts = read(fact_path)?;
        let name = |p: &Path| p.display().to_string();
        let mut b = KbBuilder::default();
        b.parse_classes(&name(class_path), &classes)?;
        b.parse_entities(&name(entity_path), &entities)?;
        b.parse_relations(&name(relation_path), &relations)?;
        b.parse_facts(&name(fact_path), &facts)?;
        b.build()
    }

    /// Load `classes.tsv`, `entities.tsv`, `relations.tsv` and `facts.tsv`
    /// from one directory.
    pub fn load_dir(dir: &Path) -> Result<Self> {
        Self::load(
            &dir.join("classes.tsv"),
            &dir.join("entities.tsv"),
            &dir.join("relations.tsv"),
            &dir.join("facts.tsv"),
        )
    }

    pub fn from_tsv(classes: &str, entities: &str, relations: &str, facts: &str) -> Result<Self> {
        let mut b = KbBuilder::default();
        b.parse_classes("classes.tsv", classes)?;
        b.parse_entities("entities.tsv", entities)?;
        b.parse_relations("relations.tsv", relations)?;
        b.parse_facts("facts.tsv", facts)?;
        b.build()
    }

    pub fn builder() -> KbBuilder {
        KbBuilder::default()
    }

    pub fn root(&self) -> &ClassId {
        &self.root
    }

    pub fn classes(&self) -> impl Iterator<Item = &OntologyClass> {
        self.classes.values()
    }

    pub fn entities(&self) -> impl Iterator<Item = &NamedEntity> {
        self.entities.values()
    }

    pub fn relations(&self) -> impl Iterator<Item = &RelationType> {
        self.relations.values()
    }

    /// Facts in (subject, relation, object) order.
    pub fn facts(&self) -> &[Fact] {
        &self.facts
    }

    pub fn class(&self, id: &str) -> Option<&OntologyClass> {
        self.classes.get(id)
    }

    pub fn entity(&self, id: &str) -> Option<&NamedEntity> {
        self.entities.get(id)
    }

    pub fn relation(&self, id: &str) -> Option<&RelationType> {
        self.relations.get(id)
    }

    pub fn contains_fact(&self, fact: &Fact) -> bool {
        self.facts.binary_search(fact).is_ok()
    }

    pub fn class_of(&self, entity: &str) -> Result<&ClassId> {
        self.entities
            .get(entity)
            .map(|e| &e.class_id)
            .ok_or_else(|| unknown_entity(entity))
    }

    /// Reflexive-transitive subclass test over parent links.
    pub fn is_subclass(&self, sub: &str, sup: &str) -> Result<bool> {
        if !self.classes.contains_key(sup) {
            return Err(unknown_class(sup));
        }
        let mut cur = self.classes.get(sub).ok_or_else(|| unknown_class(sub))?;
        loop {
            if cur.id.as_str() == sup {
                return Ok(true);
            }
            match &cur.parent {
                Some(p) => cur = &self.classes[p],
                None => return Ok(false),
            }
        }
    }

    /// Either class is a subclass of the other.
    pub fn classes_compatible(&self, a: &str, b: &str) -> Result<bool> {
        Ok(self.is_subclass(a, b)? || self.is_subclass(b, a)?)
    }

    /// Entities related to `anchor` by `relation`, where `anchor_role` is
    /// the side the anchor occupies.
    pub fn neighbors(&self, anchor: &str, relation: &str, anchor_role: Role) -> Result<&BTreeSet<EntityId>> {
        let anchor = self
            .entities
            .get_key_value(anchor)
            .ok_or_else(|| unknown_entity(anchor))?
            .0;
        let relation = self
            .relations
            .get_key_value(relation)
            .ok_or_else(|| unknown_relation(relation))?
            .0;
        let found = match anchor_role {
            Role::Subject => self.sp_index.get(&(anchor.clone(), relation.clone())),
            Role::Object => self.po_index.get(&(relation.clone(), anchor.clone())),
        };
        Ok(found.unwrap_or(&EMPTY))
    }

    /// Facts in which `entity` appears on either side.
    pub fn facts_touching(&self, entity: &str) -> Result<impl Iterator<Item = &Fact>> {
        if !self.entities.contains_key(entity) {
            return Err(unknown_entity(entity));
        }
        let positions = self.incident.get(entity).map(Vec::as_slice).unwrap_or(&[]);
        Ok(positions.iter().map(move |&i| &self.facts[i]))
    }

    /// Case-insensitive, whitespace-collapsed alias lookup.
    pub fn entities_by_alias(&self, surface: &str) -> &BTreeSet<EntityId> {
        self.alias_index
            .get(&normalize_surface(surface))
            .unwrap_or(&EMPTY)
    }

    /// Lookup by lowercase token sequence, as produced by [`tokenize`].
    pub fn entities_by_alias_tokens(&self, lower_tokens: &[&str]) -> &BTreeSet<EntityId> {
        self.token_alias_index
            .get(&lower_tokens.join(" "))
            .unwrap_or(&EMPTY)
    }

    /// Longest alias, in tokens.
    pub fn max_alias_tokens(&self) -> usize {
        self.max_alias_tokens
    }

    pub fn alias_index(&self) -> &BTreeMap<String, BTreeSet<EntityId>> {
        &self.alias_index
    }

    pub fn sp_index(&self) -> &BTreeMap<(EntityId, RelationId), BTreeSet<EntityId>> {
        &self.sp_index
    }

    pub fn po_index(&self) -> &BTreeMap<(RelationId, EntityId), BTreeSet<EntityId>> {
        &self.po_index
    }

    /// Serialize back to the four TSV formats.
    pub fn to_tsv(&self) -> KbTsv {
        let mut classes = String::new();
        for c in self.classes.values() {
            let parent = c.parent.as_ref().map(ClassId::as_str).unwrap_or("");
            classes.push_str(&format!("{}\t{}\n", c.id, parent));
        }
        let mut entities = String::new();
        for e in self.entities.values() {
            let aliases: Vec<&str> = e.aliases.iter().map(String::as_str).collect();
            entities.push_str(&format!(
                "{}\t{}\t{}\t{}\n",
                e.id,
                e.primary_name,
                e.class_id,
                aliases.join("|")
            ));
        }
        let mut relations = String::new();
        for r in self.relations.values() {
            relations.push_str(&format!("{}\t{}\t{}\n", r.id, r.domain, r.range));
        }
        let mut facts = String::new();
        for f in &self.facts {
            facts.push_str(&format!("{}\t{}\t{}\n", f.subject, f.relation, f.object));
        }
        KbTsv {
            classes,
            entities,
            relations,
            facts,
        }
    }

    pub fn write_dir(&self, dir: &Path) -> Result<()> {
        let tsv = self.to_tsv();
        for (name, body) in [
            ("classes.tsv", &tsv.classes),
            ("entities.tsv", &tsv.entities),
            ("relations.tsv", &tsv.relations),
            ("facts.tsv", &tsv.facts),
        ] {
            let path = dir.join(name);
            std::fs::write(&path, body).io_context(&path)?;
        }
        Ok(())
    }
}

/// The four serialized files of a knowledge base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KbTsv {
    pub classes: String,
    pub entities: String,
    pub relations: String,
    pub facts: String,
}

fn unknown_entity(id: &str) -> Error {
    Error::UnknownEntity {
        id: id.to_string(),
        at: Origin::default(),
    }
}

fn unknown_class(id: &str) -> Error {
    Error::UnknownClass {
        id: id.to_string(),
        at: Origin::default(),
    }
}

fn unknown_relation(id: &str) -> Error {
    Error::UnknownRelation {
        id: id.to_string(),
        at: Origin::default(),
    }
}

/// Accumulates declarations, then validates everything in [`KbBuilder::build`].
#[derive(Debug, Default)]
pub struct KbBuilder {
    classes: Vec<(OntologyClass, Origin)>,
    entities: Vec<(NamedEntity, Origin)>,
    relations: Vec<(RelationType, Origin)>,
    facts: Vec<(Fact, Origin)>,
}

impl KbBuilder {
    pub fn class(&mut self, id: &str, parent: Option<&str>) -> &mut Self {
        self.push_class(id, parent, Origin::default())
    }

    fn push_class(&mut self, id: &str, parent: Option<&str>, at: Origin) -> &mut Self {
        self.classes.push((
            OntologyClass {
                id: id.into(),
                parent: parent.map(ClassId::from),
            },
            at,
        ));
        self
    }

    /// `aliases` need not repeat the primary name.
    pub fn entity(&mut self, id: &str, primary_name: &str, class: &str, aliases: &[&str]) -> &mut Self {
        self.push_entity(id, primary_name, class, aliases, Origin::default())
    }

    fn push_entity(
        &mut self,
        id: &str,
        primary_name: &str,
        class: &str,
        aliases: &[&str],
        at: Origin,
    ) -> &mut Self {
        let mut set: BTreeSet<String> = aliases
            .iter()
            .map(|a| a.trim())
            .filter(|a| !a.is_empty())
            .map(str::to_string)
            .collect();
        set.insert(primary_name.to_string());
        self.entities.push((
            NamedEntity {
                id: id.into(),
                primary_name: primary_name.to_string(),
                class_id: class.into(),
                aliases: set,
            },
            at,
        ));
        self
    }

    pub fn relation(&mut self, id: &str, domain: &str, range: &str) -> &mut Self {
        self.relations.push((
            RelationType {
                id: id.into(),
                domain: domain.into(),
                range: range.into(),
            },
            Origin::default(),
        ));
        self
    }

    pub fn fact(&mut self, subject: &str, relation: &str, object: &str) -> &mut Self {
        self.facts
            .push((Fact::new(subject, relation, object), Origin::default()));
        self
    }

    pub fn parse_classes(&mut self, source: &str, content: &str) -> Result<&mut Self> {
        for rec in tsv::records(source, content, 2) {
            let rec = rec?;
            let id = non_empty(rec.fields[0], "class id", &rec.at)?;
            let parent = Some(rec.fields[1]).filter(|p| !p.is_empty());
            self.push_class(id, parent, rec.at);
        }
        Ok(self)
    }

    pub fn parse_entities(&mut self, source: &str, content: &str) -> Result<&mut Self> {
        for rec in tsv::records(source, content, 4) {
            let rec = rec?;
            let id = non_empty(rec.fields[0], "entity id", &rec.at)?;
            if !id.starts_with('#') || id.len() < 2 {
                return Err(Error::Parse {
                    at: rec.at,
                    message: format!("entity id `{id}` must start with `#`"),
                });
            }
            let name = non_empty(rec.fields[1], "primary name", &rec.at)?;
            let class = non_empty(rec.fields[2], "class id", &rec.at)?;
            let aliases: Vec<&str> = rec.fields[3].split('|').collect();
            self.push_entity(id, name, class, &aliases, rec.at);
        }
        Ok(self)
    }

    pub fn parse_relations(&mut self, source: &str, content: &str) -> Result<&mut Self> {
        for rec in tsv::records(source, content, 3) {
            let rec = rec?;
            let id = non_empty(rec.fields[0], "relation id", &rec.at)?;
            let domain = non_empty(rec.fields[1], "domain class", &rec.at)?;
            let range = non_empty(rec.fields[2], "range class", &rec.at)?;
            self.relations.push((
                RelationType {
                    id: id.into(),
                    domain: domain.into(),
                    range: range.into(),
                },
                rec.at,
            ));
        }
        Ok(self)
    }

    pub fn parse_facts(&mut self, source: &str, content: &str) -> Result<&mut Self> {
        for rec in tsv::records(source, content, 3) {
            let rec = rec?;
            let s = non_empty(rec.fields[0], "subject", &rec.at)?;
            let r = non_empty(rec.fields[1], "relation", &rec.at)?;
            let o = non_empty(rec.fields[2], "object", &rec.at)?;
            self.facts.push((Fact::new(s, r, o), rec.at));
        }
        Ok(self)
    }

    pub fn build(&self) -> Result<KnowledgeBase> {
        let classes = self.build_classes()?;
        let root = find_root(&classes)?;

        let mut entities = BTreeMap::new();
        for (e, at) in &self.entities {
            if !classes.contains_key(&e.class_id) {
                return Err(Error::UnknownClass {
                    id: e.class_id.to_string(),
                    at: at.clone(),
                });
            }
            if entities.insert(e.id.clone(), e.clone()).is_some() {
                return Err(dup("entity", e.id.as_str(), at));
            }
        }

        let mut relations = BTreeMap::new();
        for (r, at) in &self.relations {
            for c in [&r.domain, &r.range] {
                if !classes.contains_key(c) {
                    return Err(Error::UnknownClass {
                        id: c.to_string(),
                        at: at.clone(),
                    });
                }
            }
            if relations.insert(r.id.clone(), r.clone()).is_some() {
                return Err(dup("relation", r.id.as_str(), at));
            }
        }

        // Partially built so that subclass checks can run over the tree.
        let mut kb = KnowledgeBase {
            classes,
            root,
            entities,
            relations,
            facts: Vec::new(),
            alias_index: BTreeMap::new(),
            token_alias_index: BTreeMap::new(),
            max_alias_tokens: 0,
            sp_index: BTreeMap::new(),
            po_index: BTreeMap::new(),
            incident: BTreeMap::new(),
        };

        let mut seen = BTreeSet::new();
        for (f, at) in &self.facts {
            let rel = kb
                .relations
                .get(&f.relation)
                .ok_or_else(|| Error::UnknownRelation {
                    id: f.relation.to_string(),
                    at: at.clone(),
                })?;
            for (end, expected, is_domain) in
                [(&f.subject, &rel.domain, true), (&f.object, &rel.range, false)]
            {
                let ent = kb.entities.get(end).ok_or_else(|| Error::UnknownEntity {
                    id: end.to_string(),
                    at: at.clone(),
                })?;
                if !kb.is_subclass(ent.class_id.as_str(), expected.as_str())? {
                    let v = Box::new(Violation {
                        entity: end.to_string(),
                        class: ent.class_id.to_string(),
                        relation: rel.id.to_string(),
                        expected: expected.to_string(),
                        at: at.clone(),
                    });
                    return Err(if is_domain {
                        Error::DomainViolation(v)
                    } else {
                        Error::RangeViolation(v)
                    });
                }
            }
            if !seen.insert(f.clone()) {
                return Err(dup("fact", &f.to_string(), at));
            }
        }
        kb.facts = seen.into_iter().collect();

        kb.index();
        Ok(kb)
    }

    fn build_classes(&self) -> Result<BTreeMap<ClassId, OntologyClass>> {
        let mut classes = BTreeMap::new();
        for (c, at) in &self.classes {
            if classes.insert(c.id.clone(), c.clone()).is_some() {
                return Err(dup("class", c.id.as_str(), at));
            }
        }
        for (c, at) in &self.classes {
            if let Some(p) = &c.parent {
                if !classes.contains_key(p) {
                    return Err(Error::UnknownClass {
                        id: p.to_string(),
                        at: at.clone(),
                    });
                }
            }
        }
        // Every chain must terminate within |classes| steps.
        for start in classes.keys() {
            let mut cur = start;
            let mut steps = 0;
            while let Some(p) = &classes[cur].parent {
                steps += 1;
                if steps > classes.len() {
                    return Err(Error::HierarchyCycle(start.to_string()));
                }
                cur = p;
            }
        }
        Ok(classes)
    }
}

fn find_root(classes: &BTreeMap<ClassId, OntologyClass>) -> Result<ClassId> {
    let roots: Vec<&ClassId> = classes
        .values()
        .filter(|c| c.parent.is_none())
        .map(|c| &c.id)
        .collect();
    match roots.as_slice() {
        [root] => Ok((*root).clone()),
        _ => Err(Error::RootCount(roots.iter().map(|r| r.to_string()).collect())),
    }
}

impl KnowledgeBase {
    fn index(&mut self) {
        for e in self.entities.values() {
            for alias in &e.aliases {
                self.alias_index
                    .entry(normalize_surface(alias))
                    .or_default()
                    .insert(e.id.clone());
                let toks: Vec<String> = tokenize(alias).into_iter().map(|t| t.lower).collect();
                if toks.is_empty() {
                    continue;
                }
                self.max_alias_tokens = self.max_alias_tokens.max(toks.len());
                self.token_alias_index
                    .entry(toks.join(" "))
                    .or_default()
                    .insert(e.id.clone());
            }
        }
        for (i, f) in self.facts.iter().enumerate() {
            self.sp_index
                .entry((f.subject.clone(), f.relation.clone()))
                .or_default()
                .insert(f.object.clone());
            self.po_index
                .entry((f.relation.clone(), f.object.clone()))
                .or_default()
                .insert(f.subject.clone());
            self.incident.entry(f.subject.clone()).or_default().push(i);
            if f.object != f.subject {
                self.incident.entry(f.object.clone()).or_default().push(i);
            }
        }
    }
}

fn non_empty<'a>(field: &'a str, what: &str, at: &Origin) -> Result<&'a str> {
    if field.is_empty() {
        Err(Error::Parse {
            at: at.clone(),
            message: format!("empty {what}"),
        })
    } else {
        Ok(field)
    }
}

fn dup(what: &'static str, id: &str, at: &Origin) -> Error {
    Error::Duplicate {
        what,
        id: id.to_string(),
        at: at.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn kb() -> KnowledgeBase {
        fixtures::knowledge_base().unwrap()
    }

    fn ids(set: &BTreeSet<EntityId>) -> Vec<&str> {
        set.iter().map(EntityId::as_str).collect()
    }

    #[test]
    fn fixture_counts_match_data_lines() {
        let kb = kb();
        let data_lines = |s: &str| {
            s.lines()
                .filter(|l| !l.trim().is_empty() && !tsv::is_comment(l))
                .count()
        };
        assert_eq!(kb.entities().count(), data_lines(fixtures::ENTITIES));
        assert_eq!(kb.relations().count(), data_lines(fixtures::RELATIONS));
        assert_eq!(kb.facts().len(), data_lines(fixtures::FACTS));
        assert_eq!(kb.entities().count(), 26);
        assert_eq!(kb.relations().count(), 10);
        assert_eq!(kb.facts().len(), 21);
    }

    #[test]
    fn subclass_examples() {
        let kb = kb();
        assert!(kb.is_subclass("Capital", "Location").unwrap());
        assert!(!kb.is_subclass("Location", "Capital").unwrap());
        for c in kb.classes() {
            assert!(kb.is_subclass(c.id.as_str(), c.id.as_str()).unwrap());
        }
        assert!(matches!(
            kb.is_subclass("Nope", "Location"),
            Err(Error::UnknownClass { .. })
        ));
    }

    #[test]
    fn neighbor_examples() {
        let kb = kb();
        assert_eq!(
            ids(kb.neighbors("#Italy", "capitalOf", Role::Object).unwrap()),
            ["#Rome"]
        );
        assert_eq!(
            ids(kb.neighbors("#Marion_Davies", "buriedIn", Role::Subject).unwrap()),
            ["#Hollywood_Cemetery"]
        );
        assert!(kb
            .neighbors("#Rome", "buriedIn", Role::Subject)
            .unwrap()
            .is_empty());
        assert!(matches!(
            kb.neighbors("#Atlantis", "buriedIn", Role::Subject),
            Err(Error::UnknownEntity { .. })
        ));
        assert!(matches!(
            kb.neighbors("#Rome", "orbits", Role::Subject),
            Err(Error::UnknownRelation { .. })
        ));
    }

    #[test]
    fn alias_lookup() {
        let kb = kb();
        assert_eq!(ids(kb.entities_by_alias("Marion Davies")), ["#Marion_Davies"]);
        assert_eq!(ids(kb.entities_by_alias("marion   davies")), ["#Marion_Davies"]);
        assert!(kb.entities_by_alias("Zanzibar").is_empty());
    }

    #[test]
    fn empty_fact_file() {
        let kb =
            KnowledgeBase::from_tsv(fixtures::CLASSES, fixtures::ENTITIES, fixtures::RELATIONS, "").unwrap();
        assert!(kb.facts().is_empty());
        assert!(kb
            .neighbors("#Italy", "capitalOf", Role::Object)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn domain_violation_is_a_load_error() {
        let facts = "#Rome\tcapitalOf\t#Rome\n";
        let err = KnowledgeBase::from_tsv(fixtures::CLASSES, fixtures::ENTITIES, fixtures::RELATIONS, facts)
            .unwrap_err();
        // The subject side is fine (Capital ⊑ Capital); the object is not a Country.
        assert!(matches!(err, Error::RangeViolation(_)), "{err}");

        let facts = "#Italy\tcapitalOf\t#Italy\n";
        let err = KnowledgeBase::from_tsv(fixtures::CLASSES, fixtures::ENTITIES, fixtures::RELATIONS, facts)
            .unwrap_err();
        assert!(matches!(err, Error::DomainViolation(_)), "{err}");
    }

    #[test]
    fn distinct_error_kinds() {
        let classes = "Thing\t\nA\tThing\n";
        let err = KnowledgeBase::from_tsv("Thing\t\nA\tB\nB\tA\n", "", "", "").unwrap_err();
        assert!(matches!(err, Error::HierarchyCycle(_)), "{err}");

        let err = KnowledgeBase::from_tsv("Thing\t\nOther\t\n", "", "", "").unwrap_err();
        assert!(matches!(err, Error::RootCount(_)), "{err}");

        let err = KnowledgeBase::from_tsv(classes, "#x\tX\tMissing\tX\n", "", "").unwrap_err();
        assert!(matches!(err, Error::UnknownClass { .. }), "{err}");

        let err = KnowledgeBase::from_tsv(classes, "#x\tX\tA\tX\n", "r\tA\tA\n", "#x\tr\t#y\n").unwrap_err();
        assert!(matches!(err, Error::UnknownEntity { .. }), "{err}");

        let err = KnowledgeBase::from_tsv(classes, "#x\tX\tA\tX\n", "", "#x\tr\t#x\n").unwrap_err();
        assert!(matches!(err, Error::UnknownRelation { .. }), "{err}");

        let err = KnowledgeBase::from_tsv(classes, "#x\tX\tA\n", "", "").unwrap_err();
        match err {
            Error::Parse { at, .. } => assert_eq!(at.line, Some(1)),
            other => panic!("{other}"),
        }

        let err = KnowledgeBase::from_tsv(classes, "#x\tX\tA\tX\n", "r\tA\tA\n", "#x\tr\t#x\n#x\tr\t#x\n")
            .unwrap_err();
        assert!(matches!(err, Error::Duplicate { what: "fact", .. }), "{err}");
    }

    #[test]
    fn tsv_round_trip_reproduces_indexes() {
        let kb = kb();
        let tsv = kb.to_tsv();
        let again = KnowledgeBase::from_tsv(&tsv.classes, &tsv.entities, &tsv.relations, &tsv.facts).unwrap();
        assert_eq!(kb.alias_index(), again.alias_index());
        assert_eq!(kb.sp_index(), again.sp_index());
        assert_eq!(kb.po_index(), again.po_index());
        assert_eq!(kb.facts(), again.facts());
        assert_eq!(again.to_tsv(), tsv);
    }

    #[test]
    fn indexes_are_projections_of_facts() {
        let kb = kb();
        let mut sp: BTreeMap<(EntityId, RelationId), BTreeSet<EntityId>> = BTreeMap::new();
        let mut po: BTreeMap<(RelationId, EntityId), BTreeSet<EntityId>> = BTreeMap::new();
        for f in kb.facts() {
            sp.entry((f.subject.clone(), f.relation.clone()))
                .or_default()
                .insert(f.object.clone());
            po.entry((f.relation.clone(), f.object.clone()))
                .or_default()
                .insert(f.subject.clone());
        }
        assert_eq!(&sp, kb.sp_index());
        assert_eq!(&po, kb.po_index());
        for e in kb.entities() {
            for a in &e.aliases {
                assert!(kb.entities_by_alias(a).contains(&e.id));
            }
        }
    }

    #[test]
    fn builder_api() {
        let kb = KnowledgeBase::builder()
            .class("Thing", None)
            .class("Place", Some("Thing"))
            .entity("#a", "Alpha", "Place", &["A"])
            .entity("#b", "Beta", "Place", &[])
            .relation("near", "Place", "Place")
            .fact("#a", "near", "#b")
            .build()
            .unwrap();
        assert_eq!(ids(kb.neighbors("#b", "near", Role::Object).unwrap()), ["#a"]);
        assert!(kb.entity("#a").unwrap().aliases.contains("Alpha"));
    }
}
