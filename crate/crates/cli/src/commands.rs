use std::fmt::Write as _;
use std::io::{BufRead, Write};

use anyhow::Context;
use rcsa::eval::{compare, evaluate, format_comparison, format_report};
use rcsa::pipeline::{read_queries, Engine, Expansion};
use rcsa::retrieval::{InvertedIndex, ScoredDoc};
use rcsa::significance::PermutationMode;
use rcsa::trec::{Qrels, Run};
use serde::Serialize;

use crate::config::Settings;
use crate::{Command, GlobalArgs, UsageError};

pub fn run(global: GlobalArgs, command: Command) -> anyhow::Result<()> {
    let settings = Settings::resolve(&global)?;
    let mut out = std::io::stdout().lock();
    match command {
        Command::Index { out: path } => {
            let text = settings.text_pipeline()?;
            let index = InvertedIndex::build(settings.corpus()?, &text)?;
            index.save(&path)?;
            writeln!(
                out,
                "indexed N={} documents, {} terms -> {}",
                index.doc_count(),
                index.vocabulary_size(),
                path.display()
            )?;
        }
        Command::Expand { query, explain, json } => {
            let engine = settings.engine()?;
            let expansion = engine.expand(&query, settings.strategy, settings.max_added)?;
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&expansion)?)?;
            } else {
                out.write_all(render_expansion(&expansion, explain).as_bytes())?;
            }
        }
        Command::Search {
            query,
            queries,
            out: out_path,
            json,
        } => {
            let engine = settings.engine()?;
            let index = settings.index(&engine.text)?;
            match (query, queries) {
                (Some(q), None) => {
                    let (expansion, results) =
                        engine.search(&index, &q, settings.strategy, settings.k, settings.max_added)?;
                    if json {
                        let value = SearchOutput {
                            expansion: &expansion,
                            results: &results,
                        };
                        writeln!(out, "{}", serde_json::to_string_pretty(&value)?)?;
                    } else {
                        out.write_all(render_results(&expansion, &results).as_bytes())?;
                    }
                }
                (None, Some(path)) => {
                    let qs = read_queries(&path)?;
                    let run = engine.run(&index, &qs, settings.strategy, settings.k, settings.max_added)?;
                    match out_path {
                        Some(p) => std::fs::write(&p, run.to_trec())
                            .with_context(|| format!("writing {}", p.display()))?,
                        None => out.write_all(run.to_trec().as_bytes())?,
                    }
                }
                _ => return Err(UsageError("search needs a query or --queries FILE".into()).into()),
            }
        }
        Command::Eval {
            run_a,
            run_b,
            exhaustive,
            json,
        } => {
            let qrels_path = settings
                .qrels
                .as_ref()
                .ok_or_else(|| UsageError("eval needs --qrels FILE".into()))?;
            let qrels = Qrels::load(qrels_path)?;
            let a = Run::load(&run_a)?;
            match run_b {
                None => {
                    let report = evaluate(&a, &qrels)?;
                    if json {
                        writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
                    } else {
                        out.write_all(format_report(&report).as_bytes())?;
                    }
                }
                Some(run_b) => {
                    let b = Run::load(&run_b)?;
                    let mode = if exhaustive {
                        PermutationMode::Exhaustive
                    } else {
                        PermutationMode::Sampled
                    };
                    let c = compare(&a, &b, &qrels, mode, settings.permutations, settings.seed)?;
                    if json {
                        writeln!(out, "{}", serde_json::to_string_pretty(&c)?)?;
                    } else {
                        out.write_all(format_comparison(&c).as_bytes())?;
                    }
                }
            }
        }
        Command::Repl => {
            let engine = settings.engine()?;
            let index = settings.index(&engine.text)?;
            repl(&engine, &index, &settings, &mut out)?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct SearchOutput<'a> {
    expansion: &'a Expansion,
    results: &'a [ScoredDoc],
}

fn terms_or_none(terms: &[String]) -> String {
    if terms.is_empty() {
        "(none)".to_string()
    } else {
        terms.join(" ")
    }
}

pub fn render_expansion(x: &Expansion, explain: bool) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "query: {}", x.analysis.raw);
    let _ = writeln!(s, "strategy: {}", x.strategy);
    let _ = writeln!(s, "keywords: {}", terms_or_none(&x.query.original_terms));
    let _ = writeln!(s, "added: {}", terms_or_none(&x.query.added_terms));
    let _ = writeln!(s, "expanded: {}", x.query.or_string());
    if !explain {
        return s;
    }
    let a = &x.analysis;
    let _ = writeln!(s, "relation mentions:");
    for m in &a.relation_mentions {
        let _ = writeln!(
            s,
            "  \"{}\" -> {} (unknown {})",
            m.entry.phrase, m.entry.relation, m.entry.unknown_side
        );
    }
    let _ = writeln!(s, "entity mentions:");
    for m in &a.entity_mentions {
        let _ = writeln!(s, "  \"{}\" -> {}", m.surface, m.entity);
    }
    let _ = writeln!(s, "class mentions:");
    for m in &a.class_mentions {
        let surface = rcsa::query::surface_text(&a.tokens, m.span);
        let _ = writeln!(s, "  \"{}\" -> {} ({:?})", surface, m.class_id, m.source);
    }
    let _ = writeln!(s, "patterns:");
    for p in &a.patterns {
        let _ = writeln!(s, "  {p}");
    }
    if !a.trace.is_empty() {
        let _ = writeln!(s, "notes:");
        for t in &a.trace {
            let _ = writeln!(s, "  {t}");
        }
    }
    if let Some(act) = &x.activation {
        let _ = writeln!(s, "activation (entity, strategy, via, relation, via role):");
        for line in act.trace_lines() {
            let _ = writeln!(s, "  {line}");
        }
    }
    s
}

fn render_results(x: &Expansion, results: &[ScoredDoc]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# {} | {}", x.strategy, x.query.or_string());
    for (i, d) in results.iter().enumerate() {
        let _ = writeln!(s, "{}\t{}\t{:.6}", i + 1, d.id, d.score);
    }
    s
}

fn repl(
    engine: &Engine,
    index: &InvertedIndex,
    settings: &Settings,
    out: &mut impl Write,
) -> anyhow::Result<()> {
    writeln!(
        out,
        "{} documents indexed; strategy {}; empty line or EOF quits",
        index.doc_count(),
        settings.strategy
    )?;
    for line in std::io::stdin().lock().lines() {
        let line = line?;
        let q = line.trim();
        if q.is_empty() {
            break;
        }
        let (x, results) = engine.search(index, q, settings.strategy, settings.k, settings.max_added)?;
        out.write_all(render_expansion(&x, false).as_bytes())?;
        out.write_all(render_results(&x, &results).as_bytes())?;
        out.flush()?;
    }
    Ok(())
}
