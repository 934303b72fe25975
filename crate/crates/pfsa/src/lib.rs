//! Induction and minimization of probabilistic finite state automata over
//! corpora of rule-derivation sequences.
//!
//! The pipeline: parse a corpus of per-word rule sequences ([`corpus`]),
//! build the canonical prefix-tree automaton ([`automaton`]), score it in
//! bits by minimum message length ([`mml`]), shrink it by sk-strings merging
//! and MML-guided beam search ([`reduce`]), and render reports, DOT graphs,
//! or automaton files ([`export`]). A lower message length means the corpus
//! is explained by a more regular rule system, so comparing totals across
//! languages compares the complexity of their derivational histories.
//!
//! Every operation is deterministic: identical inputs give bit-identical
//! results whatever the thread count, with or without the `parallel`
//! feature.
//!
//! ```
//! use pfsa::{build_canonical, encode, mml, parse_corpus};
//!
//! let records = "w1\tone\t*ta\tto\tback-o:\nw2\ttwo\t*ki\tki\t";
//! let derivations = parse_corpus(records)?;
//! let (sequences, symbols) = encode(&derivations);
//! let trie = build_canonical(&sequences, symbols)?;
//! assert!(mml(&trie)?.total_bits > 0.0);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod automaton;
pub mod corpus;
pub mod export;
pub mod mml;
mod parallel;
pub mod reduce;

pub use automaton::{build_canonical, Arc, AutomatonError, Pfsa, StateId, StateStats};
pub use corpus::{
    encode, filter_allophonic, parse_classification, parse_corpus, parse_rule_sequence,
    CorpusError, Derivation, RuleClass, RuleClassification, RuleKind, RuleToken, SequenceError,
    SymbolId, SymbolTable, DELIMITER,
};
pub use export::{
    format_cell, read_pfsa, render_report, to_dot, write_pfsa, ComparisonReport, DotOptions,
    ExportError, ReportCell, ReportRow,
};
pub use mml::{log2_factorial, mml, MmlBreakdown, MmlError, StateCost};
pub use reduce::{
    beam_reduce, reduce_pipeline, sk_reduce, sk_strings_of_state, sk_sweep, BeamParams,
    ReduceError, ReductionTrace, SkParams, SkStringSet, TraceEntry,
};
