//! Rule-derivation corpora.
//!
//! A corpus records, one line per word, the ordered sequence of named rules
//! that derives a daughter-language form from its parent-language form. Rule
//! sequences use a colon-terminated token syntax: `NAME:` for an ordinary
//! application, `[NAME]:` for an exceptional application and `[!NAME]:` for a
//! rule whose environment was met but which did not apply. Bracketed tokens
//! are distinct symbols in their own right, not variants of the bare name.
//!
//! Parsing produces [`Derivation`]s; [`encode`] turns them into dense integer
//! symbol sequences (delimiter-terminated) ready for automaton construction.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// Reserved spelling of the end-of-derivation delimiter symbol.
pub const DELIMITER_SPELLING: &str = "!";

/// Symbol id of the delimiter. Always 0.
pub const DELIMITER: SymbolId = 0;

/// Dense integer id of a token spelling. Id 0 is the delimiter.
pub type SymbolId = u32;

/// How a rule figured in a derivation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RuleKind {
    /// Ordinary application: `name:`.
    Normal,
    /// Exceptional application: `[name]:`.
    Exceptional,
    /// Environment met but rule did not apply: `[!name]:`.
    NonApplication,
}

/// One rule application within a derivation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RuleToken {
    name: String,
    kind: RuleKind,
}

impl RuleToken {
    /// Builds a token, rejecting names that collide with the sequence syntax.
    pub fn new(name: &str, kind: RuleKind) -> Result<Self, SequenceError> {
        if name.is_empty() {
            return Err(SequenceError {
                offset: 0,
                kind: SequenceErrorKind::EmptyName,
            });
        }
        if let Some(c) = name.chars().find(|c| !is_name_char(*c)) {
            return Err(SequenceError {
                offset: 0,
                kind: SequenceErrorKind::IllegalChar(c),
            });
        }
        Ok(RuleToken {
            name: name.to_owned(),
            kind,
        })
    }

    /// The bare rule name, without exception brackets.
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> RuleKind {
        self.kind
    }

    /// The token as it appears in corpus text: `name`, `[name]` or `[!name]`.
    pub fn spelling(&self) -> String {
        match self.kind {
            RuleKind::Normal => self.name.clone(),
            RuleKind::Exceptional => format!("[{}]", self.name),
            RuleKind::NonApplication => format!("[!{}]", self.name),
        }
    }
}

impl fmt::Display for RuleToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.spelling())
    }
}

/// One word's derivation: metadata plus the ordered rule sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub id: String,
    pub gloss: String,
    pub parent_form: String,
    pub daughter_form: String,
    pub rules: Vec<RuleToken>,
}

/// Classification of a rule for the two complexity measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleClass {
    Diachronic,
    Allophonic,
}

/// Rule-name to class mapping. Unlisted names are diachronic.
#[derive(Debug, Clone, Default)]
pub struct RuleClassification {
    map: HashMap<String, RuleClass>,
}

impl RuleClassification {
    pub fn class_of(&self, name: &str) -> RuleClass {
        self.map.get(name).copied().unwrap_or(RuleClass::Diachronic)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

/// Bidirectional spelling/id mapping. Id 0 is reserved for the delimiter `!`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolTable {
    spellings: Vec<String>,
    ids: HashMap<String, SymbolId>,
}

impl SymbolTable {
    /// A table holding only the delimiter.
    pub fn new() -> Self {
        let mut table = SymbolTable {
            spellings: Vec::new(),
            ids: HashMap::new(),
        };
        table.intern(DELIMITER_SPELLING);
        table
    }

    /// Builds a table from non-delimiter spellings, assigning ids 1, 2, ... in
    /// the order given. Duplicates keep their first id.
    pub fn from_spellings<S: AsRef<str>, I: IntoIterator<Item = S>>(spellings: I) -> Self {
        let mut table = SymbolTable::new();
        for s in spellings {
            table.intern(s.as_ref());
        }
        table
    }

    fn intern(&mut self, spelling: &str) -> SymbolId {
        if let Some(&id) = self.ids.get(spelling) {
            return id;
        }
        let id = self.spellings.len() as SymbolId;
        self.spellings.push(spelling.to_owned());
        self.ids.insert(spelling.to_owned(), id);
        id
    }

    pub fn id_of(&self, spelling: &str) -> Option<SymbolId> {
        self.ids.get(spelling).copied()
    }

    pub fn spelling_of(&self, id: SymbolId) -> Option<&str> {
        self.spellings.get(id as usize).map(String::as_str)
    }

    /// Alphabet cardinality V, delimiter included.
    pub fn len(&self) -> usize {
        self.spellings.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Spellings in id order, starting with the delimiter.
    pub fn spellings(&self) -> impl Iterator<Item = &str> {
        self.spellings.iter().map(String::as_str)
    }
}

impl Default for SymbolTable {
    fn default() -> Self {
        SymbolTable::new()
    }
}

/// Error in a single rule-sequence string, with the byte offset it occurred at.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at byte {offset}")]
pub struct SequenceError {
    pub offset: usize,
    pub kind: SequenceErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SequenceErrorKind {
    /// A token was not terminated by `:`.
    MissingTerminator,
    /// `[` or `[!` without a closing `]`.
    UnclosedBracket,
    /// A token with no name characters.
    EmptyName,
    /// A character that may not appear in a rule name.
    IllegalChar(char),
}

impl fmt::Display for SequenceErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceErrorKind::MissingTerminator => write!(f, "expected ':' after token"),
            SequenceErrorKind::UnclosedBracket => write!(f, "expected ']' to close bracket"),
            SequenceErrorKind::EmptyName => write!(f, "empty rule name"),
            SequenceErrorKind::IllegalChar(c) => write!(f, "illegal character {c:?} in rule name"),
        }
    }
}

/// Error in a corpus or classification file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("line {line}: expected 5 tab-separated fields, found {fields}")]
    MalformedRecord { line: usize, fields: usize },
    #[error("line {line}: malformed rule sequence: {source}")]
    MalformedSequence {
        line: usize,
        #[source]
        source: SequenceError,
    },
    #[error("line {line}: rule {name:?} classified twice")]
    DuplicateRule { line: usize, name: String },
    #[error("line {line}: unknown class {value:?} (expected \"diachronic\" or \"allophonic\")")]
    UnknownClass { line: usize, value: String },
    #[error("line {line}: expected rule name and class separated by a tab, found {fields} fields")]
    MalformedClassRecord { line: usize, fields: usize },
}

fn is_name_char(c: char) -> bool {
    !(c == ':' || c == '[' || c == ']' || c == '!' || c.is_whitespace() || c.is_control())
}

/// Parses a colon-terminated rule sequence such as `a-front:[u-round]:`.
///
/// The empty string is a valid (empty) sequence. Every token, including the
/// last, must be terminated by `:`.
pub fn parse_rule_sequence(text: &str) -> Result<Vec<RuleToken>, SequenceError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut pos = 0;

    while pos < bytes.len() {
        let (token, after) = parse_token(text, pos)?;
        if after >= bytes.len() || bytes[after] != b':' {
            return Err(SequenceError {
                offset: after,
                kind: SequenceErrorKind::MissingTerminator,
            });
        }
        tokens.push(token);
        pos = after + 1;
    }
    Ok(tokens)
}

fn parse_token(text: &str, start: usize) -> Result<(RuleToken, usize), SequenceError> {
    let bytes = text.as_bytes();
    if bytes[start] == b'[' {
        let (kind, name_start) = if start + 1 < bytes.len() && bytes[start + 1] == b'!' {
            (RuleKind::NonApplication, start + 2)
        } else {
            (RuleKind::Exceptional, start + 1)
        };
        let (name, end) = parse_name(text, name_start)?;
        if end >= bytes.len() || bytes[end] != b']' {
            return Err(SequenceError {
                offset: end,
                kind: SequenceErrorKind::UnclosedBracket,
            });
        }
        Ok((token_at(name, kind, name_start)?, end + 1))
    } else {
        let (name, end) = parse_name(text, start)?;
        Ok((token_at(name, RuleKind::Normal, start)?, end))
    }
}

fn token_at(name: &str, kind: RuleKind, offset: usize) -> Result<RuleToken, SequenceError> {
    RuleToken::new(name, kind).map_err(|e| SequenceError {
        offset: offset + e.offset,
        kind: e.kind,
    })
}

fn parse_name(text: &str, start: usize) -> Result<(&str, usize), SequenceError> {
    let rest = &text[start..];
    let len = rest
        .char_indices()
        .find(|(_, c)| !is_name_char(*c))
        .map_or(rest.len(), |(i, _)| i);
    if len == 0 {
        // Either we hit a non-name character immediately or the text ended.
        if let Some(c) = rest.chars().next() {
            if c != ':' && c != ']' {
                return Err(SequenceError {
                    offset: start,
                    kind: SequenceErrorKind::IllegalChar(c),
                });
            }
        }
        return Err(SequenceError {
            offset: start,
            kind: SequenceErrorKind::EmptyName,
        });
    }
    Ok((&rest[..len], start + len))
}

/// Renders tokens back to the colon-terminated source syntax.
pub fn render_rule_sequence(tokens: &[RuleToken]) -> String {
    let mut out = String::new();
    for t in tokens {
        out.push_str(&t.spelling());
        out.push(':');
    }
    out
}

fn is_comment_or_blank(line: &str) -> bool {
    let trimmed = line.trim_start();
    trimmed.is_empty() || trimmed.starts_with('#')
}

/// Parses a corpus file: one tab-separated record per line, fields
/// `id`, `gloss`, `parent_form`, `daughter_form`, `rule_sequence`.
///
/// Blank lines and lines starting with `#` are skipped. Ids need not be
/// unique; duplicate readings of one word are legitimate records.
pub fn parse_corpus(text: &str) -> Result<Vec<Derivation>, CorpusError> {
    let mut derivations = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let row = raw.strip_suffix('\r').unwrap_or(raw);
        if is_comment_or_blank(row) {
            continue;
        }
        let fields: Vec<&str> = row.split('\t').collect();
        if fields.len() != 5 {
            return Err(CorpusError::MalformedRecord {
                line,
                fields: fields.len(),
            });
        }
        let rules = parse_rule_sequence(fields[4])
            .map_err(|source| CorpusError::MalformedSequence { line, source })?;
        derivations.push(Derivation {
            id: fields[0].to_owned(),
            gloss: fields[1].to_owned(),
            parent_form: fields[2].to_owned(),
            daughter_form: fields[3].to_owned(),
            rules,
        });
    }
    Ok(derivations)
}

/// Parses a classification file: `rule_name TAB diachronic|allophonic` per line.
pub fn parse_classification(text: &str) -> Result<RuleClassification, CorpusError> {
    let mut map = HashMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let row = raw.strip_suffix('\r').unwrap_or(raw);
        if is_comment_or_blank(row) {
            continue;
        }
        let fields: Vec<&str> = row.split('\t').collect();
        if fields.len() != 2 {
            return Err(CorpusError::MalformedClassRecord {
                line,
                fields: fields.len(),
            });
        }
        let class = match fields[1] {
            "diachronic" => RuleClass::Diachronic,
            "allophonic" => RuleClass::Allophonic,
            other => {
                return Err(CorpusError::UnknownClass {
                    line,
                    value: other.to_owned(),
                })
            }
        };
        if map.insert(fields[0].to_owned(), class).is_some() {
            return Err(CorpusError::DuplicateRule {
                line,
                name: fields[0].to_owned(),
            });
        }
    }
    Ok(RuleClassification { map })
}

/// Drops ordinary applications of allophonic rules from every derivation.
///
/// Exceptional and non-application tokens are kept whatever their base name's
/// class: an exception to an allophonic rule carries diachronic information.
pub fn filter_allophonic(
    derivations: &[Derivation],
    classes: &RuleClassification,
) -> Vec<Derivation> {
    derivations
        .iter()
        .map(|d| {
            let rules = d
                .rules
                .iter()
                .filter(|t| {
                    t.kind() != RuleKind::Normal
                        || classes.class_of(t.name()) == RuleClass::Diachronic
                })
                .cloned()
                .collect();
            Derivation {
                rules,
                ..d.clone()
            }
        })
        .collect()
}

/// Encodes derivations as symbol-id sequences, delimiter appended to each.
///
/// Ids are assigned in first-appearance order starting at 1; the table covers
/// exactly the spellings seen plus the delimiter.
pub fn encode(derivations: &[Derivation]) -> (Vec<Vec<SymbolId>>, SymbolTable) {
    let mut table = SymbolTable::new();
    let sequences = derivations
        .iter()
        .map(|d| {
            let mut seq: Vec<SymbolId> = d
                .rules
                .iter()
                .map(|t| table.intern(&t.spelling()))
                .collect();
            seq.push(DELIMITER);
            seq
        })
        .collect();
    (sequences, table)
}
