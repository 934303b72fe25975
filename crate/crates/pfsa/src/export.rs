//! Rendering and serialization: DOT graphs, comparison reports, and the
//! line-oriented automaton file format.
//!
//! DOT output follows the figure conventions: delimiter arcs appear as a
//! `!^freq` annotation on their source node rather than as edges back to
//! state 0 (a debug flag restores the edges), frequencies ride on a `^`
//! superscript marker, and low-frequency arcs can be pruned. All output is
//! byte-deterministic.

use std::fmt::Write as _;

use thiserror::Error;

use crate::automaton::{Arc, AutomatonError, Pfsa};
use crate::corpus::{SymbolTable, DELIMITER, DELIMITER_SPELLING};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExportError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
}

/// Options for [`to_dot`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DotOptions {
    /// Arcs with a frequency below this are omitted; 0 prunes nothing. The
    /// figures' convention is 10.
    pub prune_threshold: u64,
    /// Append `^freq` markers to labels.
    pub show_frequencies: bool,
    /// Debug rendering: draw delimiter arcs as edges to state 0 instead of
    /// node annotations.
    pub delimiter_as_edges: bool,
}

impl Default for DotOptions {
    fn default() -> Self {
        DotOptions {
            prune_threshold: 0,
            show_frequencies: true,
            delimiter_as_edges: false,
        }
    }
}

fn escape_label(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Renders an automaton (or a pruned view of it) as a DOT digraph.
///
/// Nodes appear in ascending id order, edges sorted by (from, symbol, to),
/// so output is identical across runs and platforms. The automaton itself is
/// never modified; pruning happens on a copy.
pub fn to_dot(p: &Pfsa, opts: &DotOptions) -> String {
    let view = p.prune(opts.prune_threshold);
    let mut out = String::from("digraph pfsa {\n  rankdir=LR;\n");

    for j in 0..view.state_count() {
        let mut label = j.to_string();
        if !opts.delimiter_as_edges {
            if let Some(arc) = view.arcs_from(j).iter().find(|a| a.symbol == DELIMITER) {
                label.push(' ');
                label.push_str(DELIMITER_SPELLING);
                if opts.show_frequencies {
                    let _ = write!(label, "^{}", arc.freq);
                }
            }
        }
        let _ = writeln!(out, "  {j} [label=\"{}\"];", escape_label(&label));
    }

    for arc in view.arcs() {
        if arc.symbol == DELIMITER && !opts.delimiter_as_edges {
            continue;
        }
        let spelling = view
            .symbols()
            .spelling_of(arc.symbol)
            .expect("arc symbols are in the table");
        let mut label = escape_label(spelling);
        if opts.show_frequencies {
            let _ = write!(label, "^{}", arc.freq);
        }
        let _ = writeln!(out, "  {} -> {} [label=\"{label}\"];", arc.from, arc.to);
    }

    out.push_str("}\n");
    out
}

/// Serializes an automaton to the versioned line-oriented text format:
/// a `pfsa 1` header, state and alphabet counts, one `arc` line per arc in
/// (from, symbol, to) order, then the symbol table in id order.
pub fn write_pfsa(p: &Pfsa) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "pfsa 1");
    let _ = writeln!(out, "states {}", p.state_count());
    let _ = writeln!(out, "alphabet {}", p.symbols().len());
    for a in p.arcs() {
        let _ = writeln!(out, "arc {} {} {} {}", a.from, a.symbol, a.to, a.freq);
    }
    for (id, spelling) in p.symbols().spellings().enumerate() {
        let _ = writeln!(out, "sym {id} {spelling}");
    }
    out
}

/// Parses the format written by [`write_pfsa`], revalidating every automaton
/// invariant; tampered files that describe an unscoreable automaton are
/// rejected.
pub fn read_pfsa(text: &str) -> Result<Pfsa, ExportError> {
    let malformed = |line: usize, message: &str| ExportError::Malformed {
        line,
        message: message.to_owned(),
    };

    let mut states: Option<u32> = None;
    let mut alphabet: Option<usize> = None;
    let mut arcs: Vec<Arc> = Vec::new();
    let mut spellings: Vec<(usize, String)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let row = raw.strip_suffix('\r').unwrap_or(raw);
        if row.trim().is_empty() {
            continue;
        }
        if line == 1 {
            if row != "pfsa 1" {
                return Err(malformed(line, "expected header \"pfsa 1\""));
            }
            continue;
        }
        let (keyword, rest) = row.split_once(' ').unwrap_or((row, ""));
        match keyword {
            "states" => {
                states = Some(
                    rest.parse()
                        .map_err(|_| malformed(line, "invalid state count"))?,
                );
            }
            "alphabet" => {
                alphabet = Some(
                    rest.parse()
                        .map_err(|_| malformed(line, "invalid alphabet size"))?,
                );
            }
            "arc" => {
                let fields: Vec<&str> = rest.split(' ').collect();
                if fields.len() != 4 {
                    return Err(malformed(line, "expected: arc FROM SYMBOL TO FREQ"));
                }
                let id = |s: &str| {
                    s.parse::<u32>()
                        .map_err(|_| malformed(line, "invalid arc field"))
                };
                arcs.push(Arc {
                    from: id(fields[0])?,
                    symbol: id(fields[1])?,
                    to: id(fields[2])?,
                    freq: fields[3]
                        .parse::<u64>()
                        .map_err(|_| malformed(line, "invalid arc field"))?,
                });
            }
            "sym" => {
                let (id, spelling) = rest
                    .split_once(' ')
                    .ok_or_else(|| malformed(line, "expected: sym ID SPELLING"))?;
                let id: usize = id.parse().map_err(|_| malformed(line, "invalid symbol id"))?;
                spellings.push((id, spelling.to_owned()));
            }
            _ => return Err(malformed(line, "unknown keyword")),
        }
    }

    let states = states.ok_or_else(|| malformed(1, "missing states line"))?;
    let alphabet = alphabet.ok_or_else(|| malformed(1, "missing alphabet line"))?;
    if spellings.len() != alphabet {
        return Err(malformed(
            1,
            &format!(
                "alphabet declares {alphabet} symbols but {} sym lines found",
                spellings.len()
            ),
        ));
    }
    for (pos, (id, spelling)) in spellings.iter().enumerate() {
        if *id != pos {
            return Err(malformed(1, "sym lines must appear in id order 0, 1, ..."));
        }
        if pos == 0 && spelling != DELIMITER_SPELLING {
            return Err(malformed(1, "symbol 0 must be the delimiter \"!\""));
        }
    }
    let table = SymbolTable::from_spellings(spellings.iter().skip(1).map(|(_, s)| s.as_str()));
    if table.len() != alphabet {
        return Err(malformed(1, "duplicate symbol spellings"));
    }
    Ok(Pfsa::try_new(states, arcs, table)?)
}

/// One table cell: an automaton's cost and size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReportCell {
    pub mml_bits: f64,
    pub states: u32,
    /// Non-delimiter arc count (for a canonical trie this is N − 1).
    pub arcs: u64,
}

/// One table row: a measurement mode across all languages.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub label: String,
    pub cells: Vec<ReportCell>,
}

/// Input of [`render_report`]: canonical and reduced measurements for each
/// language under each measurement mode.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub languages: Vec<String>,
    pub canonical: Vec<ReportRow>,
    pub reduced: Vec<ReportRow>,
}

/// Formats one cell as `X.XX bits (N states, A arcs)`.
pub fn format_cell(cell: &ReportCell) -> String {
    format!(
        "{:.2} bits ({} states, {} arcs)",
        cell.mml_bits, cell.states, cell.arcs
    )
}

/// Renders the two plain-text tables (canonical, then reduced), languages as
/// columns and measurement modes as rows.
pub fn render_report(report: &ComparisonReport) -> String {
    let mut out = String::new();
    let tables = [
        ("Canonical automata", &report.canonical),
        ("Reduced automata", &report.reduced),
    ];
    for (index, (title, rows)) in tables.into_iter().enumerate() {
        if index > 0 {
            out.push('\n');
        }
        let _ = writeln!(out, "{title}");
        let _ = writeln!(out, "{}", "-".repeat(title.len()));

        let label_width = rows
            .iter()
            .map(|r| r.label.len())
            .max()
            .unwrap_or(0)
            .max(8);
        let rendered: Vec<Vec<String>> = rows
            .iter()
            .map(|r| r.cells.iter().map(format_cell).collect())
            .collect();
        let col_widths: Vec<usize> = report
            .languages
            .iter()
            .enumerate()
            .map(|(c, name)| {
                rendered
                    .iter()
                    .filter_map(|row| row.get(c).map(String::len))
                    .max()
                    .unwrap_or(0)
                    .max(name.len())
            })
            .collect();

        let mut header = format!("{:label_width$}", "");
        for (c, name) in report.languages.iter().enumerate() {
            let _ = write!(header, "  {:width$}", name, width = col_widths[c]);
        }
        let _ = writeln!(out, "{}", header.trim_end());

        for (row, cells) in rows.iter().zip(&rendered) {
            let mut line = format!("{:label_width$}", row.label);
            for (c, cell) in cells.iter().enumerate() {
                let _ = write!(line, "  {:width$}", cell, width = col_widths[c]);
            }
            let _ = writeln!(out, "{}", line.trim_end());
        }
    }
    out
}
