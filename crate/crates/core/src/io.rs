//! Text formats.
//!
//! * Edge list: one `<src> <dst>` pair per line, whitespace separated,
//!   non-negative decimal ids, `#` starts a comment line.
//! * Pattern matrix: `n` lines of `n` characters from `{0, x}`; character
//!   `j` of line `i` is `x` when entry `(i, j)` is a free parameter.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::LoopDigraph;
use crate::pattern::PatternMatrix;

/// A parsed edge list.
#[derive(Clone, Debug)]
pub struct EdgeListFile {
    pub graph: LoopDigraph,
    /// Repeated edges dropped while loading.
    pub duplicates: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InputFormat {
    Matrix,
    Edges,
}

impl InputFormat {
    /// Matrix files have single-token lines made of `0`/`x`; edge lists have
    /// two tokens per line. Decided by the first non-comment, non-blank line.
    pub fn detect(text: &str) -> Self {
        let first = text
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty() && !l.starts_with('#'));
        match first {
            Some(line) if line.split_whitespace().count() == 1 && line.chars().all(|c| matches!(c, '0' | 'x' | 'X')) => {
                InputFormat::Matrix
            }
            _ => InputFormat::Edges,
        }
    }
}

pub fn parse_edge_list(text: &str, n_hint: Option<usize>) -> Result<EdgeListFile> {
    let mut edges = Vec::new();
    let mut max_id: Option<usize> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::Parse {
                line: idx + 1,
                message: format!("expected \"<src> <dst>\", found {} tokens", tokens.len()),
            });
        }
        let mut ids = [0usize; 2];
        for (slot, token) in ids.iter_mut().zip(&tokens) {
            *slot = token.parse::<usize>().map_err(|_| Error::Parse {
                line: idx + 1,
                message: format!("vertex id {token:?} is not a non-negative integer"),
            })?;
        }
        max_id = max_id.max(Some(ids[0].max(ids[1])));
        edges.push((ids[0], ids[1]));
    }
    let n = max_id.map_or(0, |m| m + 1).max(n_hint.unwrap_or(0));
    let (graph, duplicates) = LoopDigraph::from_edges(n, edges)?;
    Ok(EdgeListFile { graph, duplicates })
}

pub fn write_edge_list(g: &LoopDigraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {} vertices, {} edges", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn parse_matrix_text(text: &str) -> Result<PatternMatrix> {
    let mut rows = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row = line
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                'x' | 'X' => Ok(true),
                other => Err(Error::Parse {
                    line: idx + 1,
                    message: format!("unexpected character {other:?} in pattern row"),
                }),
            })
            .collect::<Result<Vec<bool>>>()?;
        rows.push((idx + 1, row));
    }
    let n = rows.len();
    if n == 0 {
        return Err(Error::Parse { line: 1, message: "empty pattern matrix".into() });
    }
    if let Some((line, row)) = rows.iter().find(|(_, r)| r.len() != n) {
        return Err(Error::Parse {
            line: *line,
            message: format!("row has {} entries, expected {n}", row.len()),
        });
    }
    PatternMatrix::from_rows(&rows.into_iter().map(|(_, r)| r).collect::<Vec<_>>())
}

pub fn write_matrix_text(a: &PatternMatrix) -> String {
    let mut out = String::with_capacity(a.dim() * (a.dim() + 1));
    for row in a.rows() {
        out.extend(row.iter().map(|&s| if s { 'x' } else { '0' }));
        out.push('\n');
    }
    out
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

pub fn read_edge_list(path: &Path, n_hint: Option<usize>) -> Result<EdgeListFile> {
    parse_edge_list(&read_text(path)?, n_hint)
}

pub fn read_matrix(path: &Path) -> Result<PatternMatrix> {
    parse_matrix_text(&read_text(path)?)
}

/// Loads a state pattern from either supported format. Edge lists are turned
/// into the pattern whose graph they describe.
pub fn read_pattern(path: &Path, format: Option<InputFormat>, n_hint: Option<usize>) -> Result<(PatternMatrix, usize)> {
    let text = read_text(path)?;
    match format.unwrap_or_else(|| InputFormat::detect(&text)) {
        InputFormat::Matrix => Ok((parse_matrix_text(&text)?, 0)),
        InputFormat::Edges => {
            let file = parse_edge_list(&text, n_hint)?;
            if file.graph.vertex_count() == 0 {
                return Err(Error::Parse { line: 1, message: "edge list has no vertices".into() });
            }
            Ok((PatternMatrix::from_graph(&file.graph)?, file.duplicates))
        }
    }
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

/// Extracts the branch list of a MATPOWER case file as directed
/// `from -> to` edges. Bus numbers are mapped to 0-based ids in the order the
/// buses appear in `mpc.bus`.
pub fn parse_matpower_branches(text: &str) -> Result<LoopDigraph> {
    fn block<'a>(text: &'a str, name: &str) -> Option<Vec<(usize, &'a str)>> {
        let mut lines = text.lines().enumerate();
        lines.find(|(_, l)| {
            let l = l.trim_start();
            l.starts_with(name) && l[name.len()..].trim_start().starts_with('=')
        })?;
        let mut rows = Vec::new();
        for (idx, line) in lines {
            let body = line.split('%').next().unwrap_or("").trim();
            if body.starts_with("];") || body == "]" {
                return Some(rows);
            }
            let body = body.trim_end_matches(';').trim();
            if !body.is_empty() {
                rows.push((idx + 1, body));
            }
        }
        Some(rows)
    }
    fn first_fields(line: usize, row: &str, count: usize) -> Result<Vec<usize>> {
        let fields: Vec<&str> = row.split_whitespace().take(count).collect();
        if fields.len() < count {
            return Err(Error::Parse { line, message: "too few columns".into() });
        }
        fields
            .iter()
            .map(|f| {
                f.parse::<f64>()
                    .ok()
                    .filter(|x| *x >= 0.0 && x.fract() == 0.0)
                    .map(|x| x as usize)
                    .ok_or_else(|| Error::Parse { line, message: format!("bad bus number {f:?}") })
            })
            .collect()
    }

    let buses = block(text, "mpc.bus").ok_or(Error::Parse { line: 1, message: "no mpc.bus block".into() })?;
    let branches =
        block(text, "mpc.branch").ok_or(Error::Parse { line: 1, message: "no mpc.branch block".into() })?;
    let mut index = std::collections::HashMap::new();
    for (line, row) in &buses {
        let bus = first_fields(*line, row, 1)?[0];
        let next = index.len();
        index.entry(bus).or_insert(next);
    }
    let mut edges = Vec::new();
    for (line, row) in &branches {
        let f = first_fields(*line, row, 2)?;
        let lookup = |b: usize| {
            index.get(&b).copied().ok_or_else(|| Error::Parse {
                line: *line,
                message: format!("branch refers to unknown bus {b}"),
            })
        };
        edges.push((lookup(f[0])?, lookup(f[1])?));
    }
    Ok(LoopDigraph::from_edges(index.len(), edges)?.0)
}
