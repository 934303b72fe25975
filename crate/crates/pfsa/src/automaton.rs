//! The probabilistic finite state automaton model.
//!
//! A [`Pfsa`] is a set of states with frequency-weighted, symbol-labeled
//! arcs. State 0 is the start state; every derivation is a path that leaves
//! state 0 and eventually takes an arc on the delimiter symbol, which by
//! convention always returns to state 0. Arc frequencies count corpus
//! traversals, so the canonical automaton built by [`build_canonical`] is a
//! prefix tree whose weights record exactly how often each rule sequence
//! prefix occurred.
//!
//! Automata are immutable: [`Pfsa::merge_states`] and [`Pfsa::prune`] return
//! new values. Merging may make the automaton nondeterministic; that is
//! expected and handled by the scoring and reduction code.

use std::collections::HashMap;

use thiserror::Error;

use crate::corpus::{SymbolId, SymbolTable, DELIMITER};

/// Dense state identifier. The start state is always 0.
pub type StateId = u32;

/// Shared handle to a symbol table; automata derived from one another
/// (merges, prunes) share the same table.
pub type SymbolsRef = std::sync::Arc<SymbolTable>;

/// One weighted transition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arc {
    pub from: StateId,
    pub symbol: SymbolId,
    pub to: StateId,
    /// Number of times this arc was traversed. Always ≥ 1.
    pub freq: u64,
}

/// Per-state quantities consumed by the message-length formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateStats {
    /// Visits: the sum of outgoing arc frequencies. Every visit departs via
    /// exactly one arc (delimiter visits return to 0 and the next sequence
    /// departs from 0 again), so this equals the visit count for all states.
    pub t: u64,
    /// Number of distinct outgoing arcs.
    pub m: usize,
    /// Number of distinct outgoing arcs on non-delimiter symbols.
    pub m_prime: usize,
    /// Outgoing arc frequencies, in arc order (symbol, then target).
    pub freqs: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomatonError {
    #[error("corpus contains no sequences")]
    EmptyCorpus,
    #[error("sequence {index}: delimiter must appear exactly once, at the end")]
    DelimiterMisplaced { index: usize },
    #[error("sequence {index}: symbol {symbol} is not in the alphabet (V = {alphabet})")]
    SymbolOutOfRange {
        index: usize,
        symbol: SymbolId,
        alphabet: usize,
    },
    #[error("cannot merge state {state} with itself")]
    SameState { state: StateId },
    #[error("automaton has no states")]
    NoStates,
    #[error("arc {from} -> {to} on symbol {symbol} leaves the state range 0..{states}")]
    ArcOutOfRange {
        from: StateId,
        symbol: SymbolId,
        to: StateId,
        states: u32,
    },
    #[error("arc {from} -> {to} on symbol {symbol} has zero frequency")]
    ZeroFrequency {
        from: StateId,
        symbol: SymbolId,
        to: StateId,
    },
    #[error("arc {from} -> {to} carries symbol {symbol} outside the alphabet (V = {alphabet})")]
    ArcSymbolOutOfRange {
        from: StateId,
        to: StateId,
        symbol: SymbolId,
        alphabet: usize,
    },
    #[error("delimiter arc from state {from} targets state {to} instead of the start state")]
    DelimiterTarget { from: StateId, to: StateId },
    #[error("state {state} is unreachable from the start state")]
    Unreachable { state: StateId },
    #[error("state {state} has no outgoing arc")]
    NoOutgoing { state: StateId },
}

/// A probabilistic finite state automaton.
///
/// Values built by [`Pfsa::try_new`], [`build_canonical`] or
/// [`Pfsa::merge_states`] satisfy all structural invariants: arc endpoints in
/// range, frequencies positive, delimiter arcs returning to state 0, every
/// state reachable from 0 with at least one outgoing arc. Values returned by
/// [`Pfsa::prune`] are visualization views and may violate the reachability
/// and outgoing-arc invariants; scoring rejects them.
#[derive(Debug, Clone, PartialEq)]
pub struct Pfsa {
    state_count: u32,
    /// Sorted by (from, symbol, to); at most one arc per triple.
    arcs: Vec<Arc>,
    /// CSR row index: arcs of state j are `arcs[row[j]..row[j + 1]]`.
    row: Vec<usize>,
    symbols: SymbolsRef,
}

impl Pfsa {
    /// Builds an automaton from raw arcs, folding parallel arcs that share
    /// (from, symbol, to) by summing their frequencies, and validating every
    /// structural invariant.
    pub fn try_new<S: Into<SymbolsRef>>(
        state_count: u32,
        arcs: Vec<Arc>,
        symbols: S,
    ) -> Result<Self, AutomatonError> {
        let symbols = symbols.into();
        if state_count == 0 {
            return Err(AutomatonError::NoStates);
        }
        let arcs = fold_arcs(arcs);
        let alphabet = symbols.len();
        for arc in &arcs {
            if arc.from >= state_count || arc.to >= state_count {
                return Err(AutomatonError::ArcOutOfRange {
                    from: arc.from,
                    symbol: arc.symbol,
                    to: arc.to,
                    states: state_count,
                });
            }
            if arc.freq == 0 {
                return Err(AutomatonError::ZeroFrequency {
                    from: arc.from,
                    symbol: arc.symbol,
                    to: arc.to,
                });
            }
            if arc.symbol as usize >= alphabet {
                return Err(AutomatonError::ArcSymbolOutOfRange {
                    from: arc.from,
                    to: arc.to,
                    symbol: arc.symbol,
                    alphabet,
                });
            }
            if arc.symbol == DELIMITER && arc.to != 0 {
                return Err(AutomatonError::DelimiterTarget {
                    from: arc.from,
                    to: arc.to,
                });
            }
        }
        let pfsa = Pfsa::from_parts_unchecked(state_count, arcs, symbols);
        for j in 0..state_count {
            if pfsa.arcs_from(j).is_empty() {
                return Err(AutomatonError::NoOutgoing { state: j });
            }
        }
        if let Some(state) = pfsa.first_unreachable() {
            return Err(AutomatonError::Unreachable { state });
        }
        Ok(pfsa)
    }

    /// Arcs must already be folded and sorted by (from, symbol, to).
    fn from_parts_unchecked(state_count: u32, arcs: Vec<Arc>, symbols: SymbolsRef) -> Self {
        let mut row = vec![0usize; state_count as usize + 1];
        for arc in &arcs {
            row[arc.from as usize + 1] += 1;
        }
        for j in 0..state_count as usize {
            row[j + 1] += row[j];
        }
        Pfsa {
            state_count,
            arcs,
            row,
            symbols,
        }
    }

    fn first_unreachable(&self) -> Option<StateId> {
        let n = self.state_count as usize;
        let mut seen = vec![false; n];
        let mut queue = vec![0 as StateId];
        seen[0] = true;
        while let Some(j) = queue.pop() {
            for arc in self.arcs_from(j) {
                if !seen[arc.to as usize] {
                    seen[arc.to as usize] = true;
                    queue.push(arc.to);
                }
            }
        }
        seen.iter().position(|v| !v).map(|j| j as StateId)
    }

    /// Number of states N.
    pub fn state_count(&self) -> u32 {
        self.state_count
    }

    /// All arcs, sorted by (from, symbol, to).
    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// Outgoing arcs of one state, sorted by (symbol, to).
    ///
    /// # Panics
    /// If `j` is out of range.
    pub fn arcs_from(&self, j: StateId) -> &[Arc] {
        &self.arcs[self.row[j as usize]..self.row[j as usize + 1]]
    }

    pub fn symbols(&self) -> &SymbolTable {
        &self.symbols
    }

    pub fn symbols_ref(&self) -> SymbolsRef {
        SymbolsRef::clone(&self.symbols)
    }

    /// Number of arcs on non-delimiter symbols. This is the arc count quoted
    /// in reports; for a canonical trie it equals N − 1.
    pub fn non_delimiter_arc_count(&self) -> usize {
        self.arcs.iter().filter(|a| a.symbol != DELIMITER).count()
    }

    /// Sum of all arc frequencies. Conserved by merging.
    pub fn total_frequency(&self) -> u64 {
        self.arcs.iter().map(|a| a.freq).sum()
    }

    /// The quantities t, m, m' and the frequency list for state `j`.
    ///
    /// # Panics
    /// If `j` is out of range.
    pub fn state_stats(&self, j: StateId) -> StateStats {
        let arcs = self.arcs_from(j);
        let freqs: Vec<u64> = arcs.iter().map(|a| a.freq).collect();
        let t = freqs.iter().sum();
        let m = freqs.len();
        let delimiters = arcs.iter().filter(|a| a.symbol == DELIMITER).count();
        StateStats {
            t,
            m,
            m_prime: m - delimiters,
            freqs,
        }
    }

    /// Folds state `b` into state `a` and renumbers densely.
    ///
    /// Arcs into or out of `b` are redirected to `a`; arcs that coincide in
    /// (from, symbol, to) after redirection are folded by summing
    /// frequencies. If either state is 0 the surviving state is 0 (the start
    /// state keeps its id). Total arc frequency is conserved. The result may
    /// be nondeterministic.
    ///
    /// # Panics
    /// If `a` or `b` is out of range.
    pub fn merge_states(&self, a: StateId, b: StateId) -> Result<Pfsa, AutomatonError> {
        if a == b {
            return Err(AutomatonError::SameState { state: a });
        }
        let n = self.state_count;
        assert!(a < n && b < n, "state id out of range");
        let (target, removed) = if a == 0 {
            (0, b)
        } else if b == 0 {
            (0, a)
        } else {
            (a, b)
        };
        let map = |s: StateId| -> StateId {
            let s = if s == removed { target } else { s };
            if s > removed {
                s - 1
            } else {
                s
            }
        };
        let arcs = self
            .arcs
            .iter()
            .map(|arc| Arc {
                from: map(arc.from),
                symbol: arc.symbol,
                to: map(arc.to),
                freq: arc.freq,
            })
            .collect();
        Pfsa::try_new(n - 1, arcs, self.symbols_ref())
    }

    /// True iff some path from state 0 consumes the whole sequence, each step
    /// on an existing arc, and ends at state 0. Merged automata may be
    /// nondeterministic, so this is a subset simulation.
    pub fn replay(&self, sequence: &[SymbolId]) -> bool {
        let n = self.state_count as usize;
        let mut current = vec![false; n];
        current[0] = true;
        for &symbol in sequence {
            let mut next = vec![false; n];
            let mut any = false;
            for j in 0..n {
                if !current[j] {
                    continue;
                }
                for arc in self.arcs_from(j as StateId) {
                    if arc.symbol == symbol {
                        next[arc.to as usize] = true;
                        any = true;
                    }
                }
            }
            if !any {
                return false;
            }
            current = next;
        }
        current[0]
    }

    /// Drops all arcs with frequency below `threshold`, keeping every state.
    ///
    /// This is a visualization view: states can lose their incoming or their
    /// last outgoing arc, so the result may violate the reachability
    /// invariants and is rejected by scoring. A threshold of 0 removes
    /// nothing.
    pub fn prune(&self, threshold: u64) -> Pfsa {
        let arcs: Vec<Arc> = self
            .arcs
            .iter()
            .filter(|a| a.freq >= threshold)
            .copied()
            .collect();
        Pfsa::from_parts_unchecked(self.state_count, arcs, self.symbols_ref())
    }

    /// Checks every structural invariant; used by scoring to reject views.
    pub(crate) fn validate(&self) -> Result<(), AutomatonError> {
        // Cheap revalidation: reconstruct through the checked constructor.
        Pfsa::try_new(self.state_count, self.arcs.clone(), self.symbols_ref())?;
        Ok(())
    }
}

fn fold_arcs(mut arcs: Vec<Arc>) -> Vec<Arc> {
    arcs.sort_unstable();
    let mut folded: Vec<Arc> = Vec::with_capacity(arcs.len());
    for arc in arcs {
        match folded.last_mut() {
            Some(last) if (last.from, last.symbol, last.to) == (arc.from, arc.symbol, arc.to) => {
                last.freq += arc.freq;
            }
            _ => folded.push(arc),
        }
    }
    folded
}

/// Builds the canonical prefix-tree automaton of an encoded corpus.
///
/// State 0 is the root; each distinct proper prefix of a sequence (delimiter
/// excluded) gets a unique state, numbered in first-appearance order; each
/// sequence increments the frequency of every arc along its path; the final
/// delimiter transition is an arc back to state 0. The result is
/// deterministic: no state has two arcs on one symbol.
pub fn build_canonical<S: Into<SymbolsRef>>(
    sequences: &[Vec<SymbolId>],
    symbols: S,
) -> Result<Pfsa, AutomatonError> {
    let symbols = symbols.into();
    if sequences.is_empty() {
        return Err(AutomatonError::EmptyCorpus);
    }
    for (index, seq) in sequences.iter().enumerate() {
        if seq.last() != Some(&DELIMITER) || seq[..seq.len() - 1].contains(&DELIMITER) {
            return Err(AutomatonError::DelimiterMisplaced { index });
        }
        if let Some(&symbol) = seq.iter().find(|&&s| s as usize >= symbols.len()) {
            return Err(AutomatonError::SymbolOutOfRange {
                index,
                symbol,
                alphabet: symbols.len(),
            });
        }
    }

    let mut child: HashMap<(StateId, SymbolId), StateId> = HashMap::new();
    let mut freq: HashMap<(StateId, SymbolId, StateId), u64> = HashMap::new();
    let mut state_count: u32 = 1;
    for seq in sequences {
        let mut cur: StateId = 0;
        for &symbol in &seq[..seq.len() - 1] {
            let next = *child.entry((cur, symbol)).or_insert_with(|| {
                let id = state_count;
                state_count += 1;
                id
            });
            *freq.entry((cur, symbol, next)).or_insert(0) += 1;
            cur = next;
        }
        *freq.entry((cur, DELIMITER, 0)).or_insert(0) += 1;
    }

    let arcs = freq
        .into_iter()
        .map(|((from, symbol, to), freq)| Arc {
            from,
            symbol,
            to,
            freq,
        })
        .collect();
    Pfsa::try_new(state_count, arcs, symbols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// A table with V symbols total: the delimiter plus r1..r(V-1).
    pub(crate) fn table(v: usize) -> SymbolTable {
        SymbolTable::from_spellings((1..v).map(|i| format!("r{i}")))
    }

    pub(crate) fn trie(sequences: &[Vec<SymbolId>]) -> Pfsa {
        let v = sequences.iter().flatten().max().unwrap() + 1;
        build_canonical(sequences, table(v as usize)).unwrap()
    }

    fn arc(from: StateId, symbol: SymbolId, to: StateId, freq: u64) -> Arc {
        Arc {
            from,
            symbol,
            to,
            freq,
        }
    }

    #[test]
    fn repeated_word_builds_two_state_loop() {
        let p = trie(&[vec![1, 0], vec![1, 0]]);
        assert_eq!(p.state_count(), 2);
        assert_eq!(p.arcs(), &[arc(0, 1, 1, 2), arc(1, 0, 0, 2)]);
    }

    #[test]
    fn branching_corpus_builds_four_state_trie() {
        let p = trie(&[vec![1, 2, 0], vec![1, 3, 0]]);
        assert_eq!(p.state_count(), 4);
        assert_eq!(
            p.arcs(),
            &[
                arc(0, 1, 1, 2),
                arc(1, 2, 2, 1),
                arc(1, 3, 3, 1),
                arc(2, 0, 0, 1),
                arc(3, 0, 0, 1),
            ]
        );
    }

    #[test]
    fn empty_corpus_rejected() {
        assert_eq!(
            build_canonical(&[], table(1)).unwrap_err(),
            AutomatonError::EmptyCorpus
        );
    }

    #[test]
    fn misplaced_delimiter_rejected() {
        let err = build_canonical(&[vec![1, 0], vec![1]], table(2)).unwrap_err();
        assert_eq!(err, AutomatonError::DelimiterMisplaced { index: 1 });

        let err = build_canonical(&[vec![0, 1, 0]], table(2)).unwrap_err();
        assert_eq!(err, AutomatonError::DelimiterMisplaced { index: 0 });

        let err = build_canonical(&[vec![]], table(1)).unwrap_err();
        assert_eq!(err, AutomatonError::DelimiterMisplaced { index: 0 });
    }

    #[test]
    fn out_of_alphabet_symbol_rejected() {
        let err = build_canonical(&[vec![5, 0]], table(2)).unwrap_err();
        assert_eq!(
            err,
            AutomatonError::SymbolOutOfRange {
                index: 0,
                symbol: 5,
                alphabet: 2
            }
        );
    }

    #[test]
    fn stats_of_root_and_branch_states() {
        let p = trie(&[vec![1, 0], vec![1, 0]]);
        let s = p.state_stats(0);
        assert_eq!((s.t, s.m, s.m_prime), (2, 1, 1));
        assert_eq!(s.freqs, vec![2]);

        let p = trie(&[vec![1, 2, 0], vec![1, 3, 0]]);
        let s = p.state_stats(1);
        assert_eq!((s.t, s.m, s.m_prime), (2, 2, 2));

        // A leaf whose only arc is the delimiter.
        let p = Pfsa::try_new(
            2,
            vec![arc(0, 1, 1, 5), arc(1, 0, 0, 5)],
            table(2),
        )
        .unwrap();
        let s = p.state_stats(1);
        assert_eq!((s.t, s.m, s.m_prime), (5, 1, 0));
    }

    #[test]
    fn parallel_arcs_fold_on_construction() {
        let p = Pfsa::try_new(
            2,
            vec![arc(0, 1, 1, 2), arc(0, 1, 1, 3), arc(1, 0, 0, 5)],
            table(2),
        )
        .unwrap();
        assert_eq!(p.arcs(), &[arc(0, 1, 1, 5), arc(1, 0, 0, 5)]);
    }

    #[test]
    fn construction_rejects_invariant_violations() {
        let t = table(3);
        let err = Pfsa::try_new(1, vec![arc(0, 1, 2, 1)], t.clone()).unwrap_err();
        assert!(matches!(err, AutomatonError::ArcOutOfRange { .. }));

        let err = Pfsa::try_new(1, vec![arc(0, 1, 0, 0)], t.clone()).unwrap_err();
        assert!(matches!(err, AutomatonError::ZeroFrequency { .. }));

        let err = Pfsa::try_new(
            2,
            vec![arc(0, 0, 1, 1), arc(1, 0, 0, 1)],
            t.clone(),
        )
        .unwrap_err();
        assert_eq!(err, AutomatonError::DelimiterTarget { from: 0, to: 1 });

        // State 1 has an outgoing arc but nothing reaches it.
        let err = Pfsa::try_new(
            2,
            vec![arc(0, 0, 0, 1), arc(1, 0, 0, 1)],
            t.clone(),
        )
        .unwrap_err();
        assert_eq!(err, AutomatonError::Unreachable { state: 1 });

        let err = Pfsa::try_new(2, vec![arc(0, 1, 1, 1)], t.clone()).unwrap_err();
        assert_eq!(err, AutomatonError::NoOutgoing { state: 1 });

        let err = Pfsa::try_new(1, vec![arc(0, 2, 0, 1)], table(2)).unwrap_err();
        assert!(matches!(err, AutomatonError::ArcSymbolOutOfRange { .. }));

        assert_eq!(
            Pfsa::try_new(0, vec![], t).unwrap_err(),
            AutomatonError::NoStates
        );
    }

    #[test]
    fn merging_leaves_folds_delimiter_arcs() {
        let p = trie(&[vec![1, 2, 0], vec![1, 3, 0]]);
        let merged = p.merge_states(2, 3).unwrap();
        assert_eq!(merged.state_count(), 3);
        assert_eq!(
            merged.arcs(),
            &[
                arc(0, 1, 1, 2),
                arc(1, 2, 2, 1),
                arc(1, 3, 2, 1),
                arc(2, 0, 0, 2),
            ]
        );
    }

    #[test]
    fn merge_with_self_rejected() {
        let p = trie(&[vec![1, 0]]);
        assert_eq!(
            p.merge_states(1, 1).unwrap_err(),
            AutomatonError::SameState { state: 1 }
        );
    }

    #[test]
    fn merge_with_start_keeps_state_zero() {
        let p = trie(&[vec![1, 2, 0], vec![1, 3, 0]]);
        for (a, b) in [(0, 1), (1, 0)] {
            let merged = p.merge_states(a, b).unwrap();
            assert_eq!(merged.state_count(), 3);
            // The union state keeps id 0, so the former state-1 arcs now
            // leave the start state.
            assert_eq!(
                merged.arcs(),
                &[
                    arc(0, 1, 0, 2),
                    arc(0, 2, 1, 1),
                    arc(0, 3, 2, 1),
                    arc(1, 0, 0, 1),
                    arc(2, 0, 0, 1),
                ]
            );
        }
    }

    #[test]
    fn merge_conserves_total_frequency() {
        let p = trie(&[vec![1, 2, 0], vec![1, 3, 0], vec![2, 2, 1, 0]]);
        let total = p.total_frequency();
        for a in 0..p.state_count() {
            for b in 0..p.state_count() {
                if a != b {
                    assert_eq!(p.merge_states(a, b).unwrap().total_frequency(), total);
                }
            }
        }
    }

    #[test]
    fn replay_accepts_training_and_rejects_unknown() {
        let seqs = vec![vec![1, 2, 0], vec![1, 3, 0]];
        let p = trie(&seqs);
        for s in &seqs {
            assert!(p.replay(s));
        }
        assert!(!p.replay(&[2, 0]));
        assert!(!p.replay(&[1, 0]));
        assert!(!p.replay(&[1, 2, 3, 0]));
    }

    #[test]
    fn replay_survives_any_merge() {
        let seqs = vec![vec![1, 2, 0], vec![1, 3, 0], vec![2, 2, 1, 0], vec![3, 0]];
        let p = trie(&seqs);
        for a in 0..p.state_count() {
            for b in (a + 1)..p.state_count() {
                let merged = p.merge_states(a, b).unwrap();
                for s in &seqs {
                    assert!(merged.replay(s), "merge ({a},{b}) lost sequence {s:?}");
                }
            }
        }
    }

    #[test]
    fn prune_is_a_frequency_filter() {
        let p = Pfsa::try_new(
            3,
            vec![
                arc(0, 1, 1, 3),
                arc(0, 2, 2, 25),
                arc(1, 0, 0, 10),
                arc(2, 0, 0, 25),
            ],
            table(3),
        )
        .unwrap();
        assert_eq!(p.prune(1).arcs(), p.arcs());
        let pruned = p.prune(10);
        let freqs: Vec<u64> = pruned.arcs().iter().map(|a| a.freq).collect();
        assert_eq!(freqs, vec![25, 10, 25]);
        assert_eq!(pruned.state_count(), 3);
        // The view violates invariants (state 1 lost its incoming arc) and
        // must fail revalidation.
        assert!(pruned.validate().is_err());
        assert!(p.validate().is_ok());
    }

    fn random_sequences(rng: &mut ChaCha8Rng) -> Vec<Vec<SymbolId>> {
        let alphabet = rng.gen_range(2..=12) as SymbolId;
        let count = rng.gen_range(1..=100);
        (0..count)
            .map(|_| {
                let len = rng.gen_range(0..=8);
                let mut seq: Vec<SymbolId> =
                    (0..len).map(|_| rng.gen_range(1..alphabet)).collect();
                seq.push(DELIMITER);
                seq
            })
            .collect()
    }

    #[test]
    fn canonical_trie_properties_hold_on_random_corpora() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let seqs = random_sequences(&mut rng);
            let v = seqs.iter().flatten().max().unwrap() + 1;
            let p = build_canonical(&seqs, table(v as usize)).unwrap();

            // Determinism: distinct outgoing symbols per state.
            for j in 0..p.state_count() {
                let arcs = p.arcs_from(j);
                for w in arcs.windows(2) {
                    assert_ne!(w[0].symbol, w[1].symbol);
                }
            }
            // Tree property and delimiter bookkeeping.
            assert_eq!(p.non_delimiter_arc_count(), p.state_count() as usize - 1);
            let delim_total: u64 = p
                .arcs()
                .iter()
                .filter(|a| a.symbol == DELIMITER)
                .map(|a| a.freq)
                .sum();
            assert_eq!(delim_total, seqs.len() as u64);
            assert_eq!(p.state_stats(0).t, seqs.len() as u64);
            for s in &seqs {
                assert!(p.replay(s));
            }
        }
    }
}
