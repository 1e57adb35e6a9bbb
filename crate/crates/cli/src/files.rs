//! Line-oriented relation and universe files.
//!
//! A relation file holds one entry per line, `index :: lhs ~ rhs`, plus
//! `DELTA` lines: bare `DELTA` adds the diagonal at every index, `DELTA
//! <index>` at one index, and `DELTA <universe-file>` the pairs `(t, t)`
//! for every listed term. A universe file lists one `[index ::] term` per
//! line. Blank lines and `#` comments are skipped.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use thiserror::Error;
use workbench_core::kernel::{Diagonal, IndexedRelation};

use crate::lang::Lang;
use crate::lex::{ParseError, Parser};

#[derive(Debug, Error)]
pub enum InputError {
    #[error("{path}:{source}")]
    Parse { path: String, source: ParseError },
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Invalid(String),
}

impl InputError {
    pub fn parse(path: &str, source: ParseError) -> Self {
        InputError::Parse {
            path: path.to_string(),
            source,
        }
    }
}

pub struct RelationFile<L: Lang> {
    pub relation: IndexedRelation<L::Index, L::Term>,
    /// Explicit pairs in file order, without the implicit diagonal.
    pub pairs: Vec<(L::Index, L::Term, L::Term)>,
    /// Every term mentioned, per index, in order of first appearance.
    pub universe: BTreeMap<L::Index, Vec<L::Term>>,
}

impl<L: Lang> RelationFile<L> {
    fn new() -> Self {
        RelationFile {
            relation: IndexedRelation::new(),
            pairs: Vec::new(),
            universe: BTreeMap::new(),
        }
    }

    fn mention(&mut self, idx: &L::Index, t: &L::Term) {
        let terms = self.universe.entry(idx.clone()).or_default();
        if !terms.contains(t) {
            terms.push(t.clone());
        }
    }
}

fn read(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|source| InputError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Non-blank, non-comment lines with their 1-based numbers.
fn lines(src: &str) -> impl Iterator<Item = (usize, &str)> {
    src.lines().enumerate().filter_map(|(i, l)| {
        let t = l.trim();
        (!t.is_empty() && !t.starts_with('#')).then_some((i + 1, l))
    })
}

fn entry<L: Lang>(
    line: &str,
    number: usize,
    arity: usize,
) -> Result<(L::Index, Vec<L::Term>), ParseError> {
    let mut p = Parser::new(line, number)?;
    L::entry(&mut p, arity)
}

pub fn parse_universe<L: Lang>(
    src: &str,
    name: &str,
) -> Result<Vec<(L::Index, L::Term)>, InputError> {
    let mut out = Vec::new();
    for (n, line) in lines(src) {
        let (idx, mut ts) = entry::<L>(line, n, 1).map_err(|e| InputError::parse(name, e))?;
        out.push((idx, ts.pop().expect("one term")));
    }
    Ok(out)
}

pub fn read_universe<L: Lang>(path: &Path) -> Result<Vec<(L::Index, L::Term)>, InputError> {
    parse_universe::<L>(&read(path)?, &path.display().to_string())
}

/// Groups universe entries per index, dropping repeats.
pub fn group<L: Lang>(entries: &[(L::Index, L::Term)]) -> BTreeMap<L::Index, Vec<L::Term>> {
    let mut out: BTreeMap<L::Index, Vec<L::Term>> = BTreeMap::new();
    for (i, t) in entries {
        let terms = out.entry(i.clone()).or_default();
        if !terms.contains(t) {
            terms.push(t.clone());
        }
    }
    out
}

/// Parses a relation file; `base` resolves `DELTA <universe-file>` paths.
pub fn parse_relation<L: Lang>(
    src: &str,
    name: &str,
    base: &Path,
) -> Result<RelationFile<L>, InputError> {
    let mut out = RelationFile::<L>::new();
    let mut all = false;
    for (n, line) in lines(src) {
        let trimmed = line.trim();
        if let Some(rest) = trimmed.strip_prefix("DELTA") {
            if !(rest.is_empty() || rest.starts_with(char::is_whitespace)) {
                return Err(InputError::Invalid(format!(
                    "{name}:{n}: expected whitespace after DELTA"
                )));
            }
            let rest = rest.trim();
            if rest.is_empty() {
                all = true;
            } else if let Some(idx) = L::delta_index(rest) {
                out.relation.add_diagonal_at(idx);
            } else {
                let path: PathBuf = base.join(rest);
                for (idx, t) in read_universe::<L>(&path)? {
                    out.mention(&idx, &t);
                    out.relation.insert(idx, t.clone(), t);
                }
            }
            continue;
        }
        let (idx, ts) = entry::<L>(line, n, 2).map_err(|e| InputError::parse(name, e))?;
        let [a, b]: [L::Term; 2] = ts.try_into().expect("two terms");
        out.mention(&idx, &a);
        out.mention(&idx, &b);
        out.relation.insert(idx.clone(), a.clone(), b.clone());
        out.pairs.push((idx, a, b));
    }
    if all {
        out.relation.set_diagonal(Diagonal::All);
    }
    Ok(out)
}

pub fn read_relation<L: Lang>(path: &Path) -> Result<RelationFile<L>, InputError> {
    let base = path.parent().unwrap_or(Path::new("."));
    parse_relation::<L>(&read(path)?, &path.display().to_string(), base)
}
