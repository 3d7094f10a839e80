//! Line reader for the tab-separated data files.
//!
//! Entity ids start with `#`, so a comment is a line whose first character
//! is `#` followed by whitespace or nothing at all. `#Rome\t...` is data.

use crate::error::{Error, Origin};
use crate::Result;

pub(crate) struct Record<'a> {
    pub fields: Vec<&'a str>,
    pub at: Origin,
}

pub(crate) fn is_comment(line: &str) -> bool {
    match line.strip_prefix('#') {
        Some(rest) => rest.is_empty() || rest.starts_with(char::is_whitespace),
        None => false,
    }
}

/// Yield data records with exactly `arity` fields.
pub(crate) fn records<'a>(
    source: &'a str,
    content: &'a str,
    arity: usize,
) -> impl Iterator<Item = Result<Record<'a>>> + 'a {
    content.lines().enumerate().filter_map(move |(i, line)| {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || is_comment(line) {
            return None;
        }
        let at = Origin::line(source, i + 1);
        let fields: Vec<&str> = line.split('\t').map(str::trim).collect();
        if fields.len() != arity {
            return Some(Err(Error::Parse {
                at,
                message: format!("expected {arity} tab-separated fields, found {}", fields.len()),
            }));
        }
        Some(Ok(Record { fields, at }))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_versus_entity_ids() {
        assert!(is_comment("#"));
        assert!(is_comment("# note"));
        assert!(is_comment("#\tnote"));
        assert!(!is_comment("#Rome\tcapitalOf\t#Italy"));
    }

    #[test]
    fn reports_line_numbers() {
        let content = "# header\na\tb\n\nonly-one\n";
        let out: Vec<_> = records("f.tsv", content, 2).collect();
        assert_eq!(out.len(), 2);
        assert!(out[0].is_ok());
        match &out[1] {
            Err(Error::Parse { at, .. }) => assert_eq!(at.line, Some(4)),
            other => panic!("unexpected {other:?}", other = other.as_ref().err()),
        }
    }
}
