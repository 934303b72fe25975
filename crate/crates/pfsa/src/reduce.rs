//! Automaton minimization.
//!
//! Two stages, both driven by the message length. The sk-strings stage merges
//! states that are indistinguishable by their top s% most probable output
//! strings of length ≤ k, sweeping the whole (k, s) grid and keeping the
//! cheapest result. The beam stage then searches over single-pair merges,
//! keeping the best `width` candidates per step and returning the best
//! automaton ever seen.
//!
//! Everything here is deterministic: candidate scoring may run in parallel,
//! but selection applies a total order (bits, state count, merged pair), so
//! results are independent of thread count and of the `parallel` feature.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap, HashMap, HashSet};
use std::hash::{Hash, Hasher};
use std::ops::RangeInclusive;

use thiserror::Error;

use crate::automaton::{Arc, Pfsa, StateId};
use crate::corpus::{SymbolId, DELIMITER};
use crate::mml::mml;
use crate::parallel::*;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error("{name} = {value} is outside {min}..={max}")]
    ParamOutOfRange {
        name: &'static str,
        value: u32,
        min: u32,
        max: u32,
    },
    #[error("empty {name} range")]
    EmptyRange { name: &'static str },
    #[error("beam width must be at least 1")]
    ZeroWidth,
}

/// sk-strings parameters: string length bound k and agreement percentage s.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SkParams {
    k: u32,
    s: u32,
}

impl SkParams {
    pub const K_BOUNDS: RangeInclusive<u32> = 1..=10;
    pub const S_BOUNDS: RangeInclusive<u32> = 1..=100;

    pub fn new(k: u32, s: u32) -> Result<Self, ReduceError> {
        check_bounds("k", k, Self::K_BOUNDS)?;
        check_bounds("s", s, Self::S_BOUNDS)?;
        Ok(SkParams { k, s })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn s(&self) -> u32 {
        self.s
    }
}

fn check_bounds(
    name: &'static str,
    value: u32,
    bounds: RangeInclusive<u32>,
) -> Result<(), ReduceError> {
    if bounds.contains(&value) {
        Ok(())
    } else {
        Err(ReduceError::ParamOutOfRange {
            name,
            value,
            min: *bounds.start(),
            max: *bounds.end(),
        })
    }
}

/// Beam-search parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BeamParams {
    width: usize,
    max_merges: Option<usize>,
}

impl BeamParams {
    pub fn new(width: usize, max_merges: Option<usize>) -> Result<Self, ReduceError> {
        if width == 0 {
            return Err(ReduceError::ZeroWidth);
        }
        Ok(BeamParams { width, max_merges })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn max_merges(&self) -> Option<usize> {
        self.max_merges
    }
}

impl Default for BeamParams {
    /// Width 200, no merge cap.
    fn default() -> Self {
        BeamParams {
            width: 200,
            max_merges: None,
        }
    }
}

/// The top-s% output strings of one state. Equality ignores probabilities.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SkStringSet {
    strings: BTreeSet<Vec<SymbolId>>,
}

impl SkStringSet {
    pub fn strings(&self) -> impl Iterator<Item = &[SymbolId]> {
        self.strings.iter().map(Vec::as_slice)
    }

    pub fn contains(&self, string: &[SymbolId]) -> bool {
        self.strings.contains(string)
    }

    pub fn len(&self) -> usize {
        self.strings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strings.is_empty()
    }
}

/// One recorded minimization step.
#[derive(Debug, Clone)]
pub struct TraceEntry {
    pub description: String,
    /// State count of the recorded automaton.
    pub states: u32,
    /// Its total message length.
    pub mml_bits: f64,
    /// The automaton itself, so traces can be audited and replayed.
    pub automaton: Pfsa,
}

pub type ReductionTrace = Vec<TraceEntry>;

/// Enumerates the output strings of state `j`: every path of up to k symbols,
/// ending early on a delimiter arc, with probabilities multiplied along arcs
/// (arc frequency over source-state visits) and summed over nondeterministic
/// paths. Returns the shortest probability-ranked prefix whose cumulative
/// probability reaches s%, ties broken lexicographically.
pub fn sk_strings_of_state(p: &Pfsa, j: StateId, params: SkParams) -> SkStringSet {
    let visits: Vec<f64> = (0..p.state_count())
        .map(|s| p.arcs_from(s).iter().map(|a| a.freq as f64).sum())
        .collect();
    sk_strings_with_visits(p, j, params, &visits)
}

fn sk_strings_with_visits(p: &Pfsa, j: StateId, params: SkParams, visits: &[f64]) -> SkStringSet {
    let ranked = ranked_to_threshold(p, visits, j, params.k as usize, threshold_of(params.s));
    SkStringSet {
        strings: ranked.into_iter().map(|(string, _)| string).collect(),
    }
}

fn threshold_of(s: u32) -> f64 {
    s as f64 / 100.0 - 1e-12
}

/// An unexpanded prefix (no delimiter, length < k) together with its residual
/// probability mass, split per reachable state. Ordered so a max-heap pops
/// the largest mass first, with ties going to the lexicographically smallest
/// prefix.
struct OpenPrefix {
    mass: f64,
    prefix: Vec<SymbolId>,
    /// (state, mass at that state), ascending by state id.
    states: Vec<(StateId, f64)>,
}

impl PartialEq for OpenPrefix {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for OpenPrefix {}
impl PartialOrd for OpenPrefix {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for OpenPrefix {
    fn cmp(&self, other: &Self) -> Ordering {
        self.mass
            .total_cmp(&other.mass)
            .then_with(|| other.prefix.cmp(&self.prefix))
    }
}

/// A finished string. The `BTreeSet` minimum is the ranking front: highest
/// probability first, ties by lexicographically smaller string.
struct RankedString {
    prob: f64,
    string: Vec<SymbolId>,
}

impl PartialEq for RankedString {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for RankedString {}
impl PartialOrd for RankedString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for RankedString {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .prob
            .total_cmp(&self.prob)
            .then_with(|| self.string.cmp(&other.string))
    }
}

/// Ranks output strings of `j` (probability descending, ties lexicographic)
/// and returns the shortest prefix of the ranking whose cumulative
/// probability reaches `threshold` — the whole ranking if it never does.
///
/// Best-first enumeration: prefixes are expanded in order of residual mass. A
/// finished string is confirmed as the next ranking entry once no unexpanded
/// prefix could yield a string that outranks it; a string never outranks a
/// finished one with more probability than the string's own prefix mass, and
/// a tie is lost to a finished string that is lexicographically no greater
/// than the prefix (every extension of a prefix is lexicographically greater
/// than strings ≤ that prefix). This visits only what the threshold needs:
/// low agreement percentages stay cheap even on dense automata, where full
/// enumeration of length-≤-k strings is exponential in k.
fn ranked_to_threshold(
    p: &Pfsa,
    visits: &[f64],
    j: StateId,
    k: usize,
    threshold: f64,
) -> Vec<(Vec<SymbolId>, f64)> {
    let mut open: BinaryHeap<OpenPrefix> = BinaryHeap::new();
    let mut pending: BTreeSet<RankedString> = BTreeSet::new();
    let mut out: Vec<(Vec<SymbolId>, f64)> = Vec::new();
    let mut cumulative = 0.0;
    open.push(OpenPrefix {
        mass: 1.0,
        prefix: Vec::new(),
        states: vec![(j, 1.0)],
    });

    loop {
        // Confirm every pending string that nothing on the heap can outrank.
        while let Some(front) = pending.first() {
            let confirmed = match open.peek() {
                None => true,
                Some(top) => match front.prob.total_cmp(&top.mass) {
                    Ordering::Greater => true,
                    // Heap prefixes contain no delimiter and are shorter than
                    // k, so they never equal a finished string; `<` covers
                    // both lexicographic order and the prefix case.
                    Ordering::Equal => front.string < top.prefix,
                    Ordering::Less => false,
                },
            };
            if !confirmed {
                break;
            }
            let front = pending.pop_first().expect("front exists");
            cumulative += front.prob;
            out.push((front.string, front.prob));
            if cumulative >= threshold {
                return out;
            }
        }

        let Some(top) = open.pop() else {
            // Everything is enumerated; the remaining ranking is final.
            for front in pending {
                cumulative += front.prob;
                out.push((front.string, front.prob));
                if cumulative >= threshold {
                    break;
                }
            }
            return out;
        };

        // Expand: group continuations per symbol, each split per target
        // state. Ordered maps fix the float accumulation order, so results
        // are independent of thread count and feature flags.
        let mut delimiter_mass = 0.0;
        let mut children: BTreeMap<SymbolId, BTreeMap<StateId, f64>> = BTreeMap::new();
        for &(state, mass) in &top.states {
            for arc in p.arcs_from(state) {
                let pr = mass * arc.freq as f64 / visits[state as usize];
                if arc.symbol == DELIMITER {
                    delimiter_mass += pr;
                } else {
                    *children
                        .entry(arc.symbol)
                        .or_default()
                        .entry(arc.to)
                        .or_insert(0.0) += pr;
                }
            }
        }
        if delimiter_mass > 0.0 {
            let mut string = top.prefix.clone();
            string.push(DELIMITER);
            pending.insert(RankedString {
                prob: delimiter_mass,
                string,
            });
        }
        for (symbol, states) in children {
            let mut prefix = top.prefix.clone();
            prefix.push(symbol);
            let mass: f64 = states.values().sum();
            if prefix.len() == k {
                // Truncated at the length bound: finished without delimiter.
                pending.insert(RankedString {
                    prob: mass,
                    string: prefix,
                });
            } else {
                open.push(OpenPrefix {
                    mass,
                    prefix,
                    states: states.into_iter().collect(),
                });
            }
        }
    }
}

/// The lexicographically lowest pair (a, b), a < b, with identical sets.
fn lowest_equal_pair(sets: &[SkStringSet]) -> Option<(StateId, StateId)> {
    let mut firsts: HashMap<&SkStringSet, (StateId, Option<StateId>)> = HashMap::new();
    for (j, set) in sets.iter().enumerate() {
        let j = j as StateId;
        match firsts.get_mut(set) {
            None => {
                firsts.insert(set, (j, None));
            }
            Some((_, second @ None)) => *second = Some(j),
            Some(_) => {}
        }
    }
    firsts
        .values()
        .filter_map(|&(a, b)| b.map(|b| (a, b)))
        .min()
}

/// States whose output strings of length ≤ radius+1 can traverse `center`'s
/// outgoing arcs: the reverse ball of the given radius over non-delimiter
/// arcs (strings stop at delimiters, so delimiter arcs carry no dependency).
fn reverse_ball(p: &Pfsa, center: StateId, radius: u32) -> Vec<StateId> {
    let n = p.state_count() as usize;
    let mut predecessors: Vec<Vec<StateId>> = vec![Vec::new(); n];
    for arc in p.arcs() {
        if arc.symbol != DELIMITER {
            predecessors[arc.to as usize].push(arc.from);
        }
    }
    let mut seen = vec![false; n];
    seen[center as usize] = true;
    let mut frontier = vec![center];
    for _ in 0..radius {
        let mut next = Vec::new();
        for &s in &frontier {
            for &q in &predecessors[s as usize] {
                if !seen[q as usize] {
                    seen[q as usize] = true;
                    next.push(q);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    (0..n as StateId).filter(|&j| seen[j as usize]).collect()
}

fn sk_trace_entry(params: SkParams, a: StateId, b: StateId, merged: &Pfsa) -> TraceEntry {
    let bits = mml(merged).expect("merge preserves validity").total_bits;
    TraceEntry {
        description: format!(
            "sk-strings k={} s={}: merged states {a} and {b}",
            params.k, params.s
        ),
        states: merged.state_count(),
        mml_bits: bits,
        automaton: merged.clone(),
    }
}

/// Successively merges the lowest-numbered pair of states with identical
/// string sets, recomputing sets after every merge, until no pair agrees.
/// State 0 participates like any other state.
pub fn sk_reduce(p: &Pfsa, params: SkParams) -> (Pfsa, ReductionTrace) {
    let mut current = p.clone();
    let mut trace = Vec::new();
    let mut sets: Vec<SkStringSet> = all_sets(&current, params);

    while let Some((a, b)) = lowest_equal_pair(&sets) {
        let merged = current.merge_states(a, b).expect("states are distinct");
        trace.push(sk_trace_entry(params, a, b, &merged));

        // Incremental recomputation, observably identical to recomputing
        // every set: b folds into a (a < b, so a keeps its id after dense
        // renumbering), and the only sets that can change are those of
        // states whose strings reach the merged state's outgoing arcs —
        // the reverse ball of radius k−1 around a. Everything else keeps
        // its set, shifted down one slot past b.
        sets.remove(b as usize);
        let visits: Vec<f64> = (0..merged.state_count())
            .map(|s| merged.arcs_from(s).iter().map(|x| x.freq as f64).sum())
            .collect();
        for j in reverse_ball(&merged, a, params.k - 1) {
            sets[j as usize] = sk_strings_with_visits(&merged, j, params, &visits);
        }
        current = merged;
    }
    (current, trace)
}

fn all_sets(p: &Pfsa, params: SkParams) -> Vec<SkStringSet> {
    let visits: Vec<f64> = (0..p.state_count())
        .map(|s| p.arcs_from(s).iter().map(|a| a.freq as f64).sum())
        .collect();
    (0..p.state_count())
        .map(|j| sk_strings_with_visits(p, j, params, &visits))
        .collect()
}

/// Runs [`sk_reduce`] for every (k, s) in the given ranges and returns the
/// cheapest result. Ties go to fewer states, then to the lexicographically
/// smaller (k, s).
pub fn sk_sweep(
    p: &Pfsa,
    k_range: RangeInclusive<u32>,
    s_range: RangeInclusive<u32>,
) -> Result<(Pfsa, SkParams, ReductionTrace), ReduceError> {
    for (name, range, bounds) in [
        ("k", &k_range, SkParams::K_BOUNDS),
        ("s", &s_range, SkParams::S_BOUNDS),
    ] {
        if range.is_empty() {
            return Err(ReduceError::EmptyRange { name });
        }
        check_bounds(name, *range.start(), bounds.clone())?;
        check_bounds(name, *range.end(), bounds)?;
    }

    // Score the whole grid first, keeping only (bits, states) summaries; the
    // winner is then re-run to obtain its automaton and trace. sk_reduce is
    // deterministic, so the re-run reproduces the scored result exactly.
    //
    // For a fixed k, runs at different thresholds follow identical merge
    // sequences until the first iteration where their chosen pairs differ,
    // so each k is walked as a tree of automata with every s value descending
    // to its own fixpoint, instead of s-many independent runs.
    let ks: Vec<u32> = k_range.clone().collect();
    let s_values: Vec<u32> = s_range.clone().collect();
    let per_k: Vec<Vec<(f64, u32)>> = ks
        .par_iter()
        .map(|&k| {
            let mut out = vec![(f64::INFINITY, 0u32); s_values.len()];
            sweep_k(p, k, &s_values, *s_range.start(), &mut out);
            out
        })
        .collect();

    let grid: Vec<SkParams> = ks
        .iter()
        .flat_map(|&k| s_values.iter().map(move |&s| SkParams { k, s }))
        .collect();
    let summaries: Vec<(f64, u32)> = per_k.into_iter().flatten().collect();

    let mut best = 0;
    for i in 1..grid.len() {
        let (bits, n) = summaries[i];
        let (best_bits, best_n) = summaries[best];
        if bits < best_bits || (bits == best_bits && n < best_n) {
            best = i;
        }
    }
    let params = grid[best];
    let (reduced, trace) = sk_reduce(p, params);
    Ok((reduced, params, trace))
}

/// One node of the shared-trajectory walk for a fixed k: decides the next
/// merge for every threshold in `group`, recursing on each distinct decision.
/// `out` collects (bits, states) at each threshold's fixpoint, indexed by
/// s − s_start.
fn sweep_k(p: &Pfsa, k: u32, group: &[u32], s_start: u32, out: &mut [(f64, u32)]) {
    let max_s = *group.last().expect("groups are never empty");
    let visits: Vec<f64> = (0..p.state_count())
        .map(|s| p.arcs_from(s).iter().map(|a| a.freq as f64).sum())
        .collect();

    struct StateRanking {
        strings: Vec<Vec<SymbolId>>,
        /// Cumulative probability after each string.
        cums: Vec<f64>,
        /// Order-insensitive hash of the string set after each string.
        hashes: Vec<u64>,
    }
    let rankings: Vec<StateRanking> = (0..p.state_count())
        .map(|j| {
            let ranked = ranked_to_threshold(p, &visits, j, k as usize, threshold_of(max_s));
            let mut cums = Vec::with_capacity(ranked.len());
            let mut hashes = Vec::with_capacity(ranked.len());
            let mut cum = 0.0;
            let mut hash = 0u64;
            let mut strings = Vec::with_capacity(ranked.len());
            for (string, prob) in ranked {
                cum += prob;
                let mut h = std::collections::hash_map::DefaultHasher::new();
                string.hash(&mut h);
                hash = hash.wrapping_add(h.finish());
                cums.push(cum);
                hashes.push(hash);
                strings.push(string);
            }
            StateRanking {
                strings,
                cums,
                hashes,
            }
        })
        .collect();

    // The cut for threshold s is a prefix of the ranking, so a state's set is
    // identified by (length, set hash); equal sets imply equal keys, so the
    // lowest key-equal pair is the lowest set-equal pair once verified.
    let cut_len = |j: usize, s: u32| -> usize {
        let cums = &rankings[j].cums;
        let idx = cums.partition_point(|&c| c < threshold_of(s));
        (idx + 1).min(cums.len())
    };
    let sorted_cut = |j: usize, len: usize| -> Vec<&[SymbolId]> {
        let mut cut: Vec<&[SymbolId]> = rankings[j].strings[..len]
            .iter()
            .map(|v| v.as_slice())
            .collect();
        cut.sort_unstable();
        cut
    };

    let mut decisions: BTreeMap<Option<(StateId, StateId)>, Vec<u32>> = BTreeMap::new();
    for &s in group {
        let keys: Vec<(usize, u64)> = (0..p.state_count() as usize)
            .map(|j| {
                let len = cut_len(j, s);
                (len, rankings[j].hashes[len - 1])
            })
            .collect();
        let mut firsts: HashMap<(usize, u64), (StateId, Option<StateId>)> = HashMap::new();
        for (j, &key) in keys.iter().enumerate() {
            let j = j as StateId;
            match firsts.get_mut(&key) {
                None => {
                    firsts.insert(key, (j, None));
                }
                Some((_, second @ None)) => *second = Some(j),
                Some(_) => {}
            }
        }
        let mut pair = firsts
            .values()
            .filter_map(|&(a, b)| b.map(|b| (a, b)))
            .min();
        if let Some((a, b)) = pair {
            let len = keys[a as usize].0;
            if sorted_cut(a as usize, len) != sorted_cut(b as usize, len) {
                // A hash collision paired unequal sets (never observed, but
                // guarded): fall back to exact sets for this threshold.
                let sets: Vec<SkStringSet> = (0..p.state_count() as usize)
                    .map(|j| SkStringSet {
                        strings: rankings[j].strings[..cut_len(j, s)]
                            .iter()
                            .cloned()
                            .collect(),
                    })
                    .collect();
                pair = lowest_equal_pair(&sets);
            }
        }
        decisions.entry(pair).or_default().push(s);
    }

    drop(rankings); // keep memory at one node's rankings along any path

    for (pair, subgroup) in decisions {
        match pair {
            None => {
                let bits = mml(p).expect("reduction preserves validity").total_bits;
                for s in subgroup {
                    out[(s - s_start) as usize] = (bits, p.state_count());
                }
            }
            Some((a, b)) => {
                let merged = p.merge_states(a, b).expect("states are distinct");
                sweep_k(&merged, k, &subgroup, s_start, out);
            }
        }
    }
}

/// Canonical form for frontier deduplication: state ids renumbered in
/// breadth-first order from state 0, arcs sorted.
fn canonical_key(p: &Pfsa) -> (u32, Vec<Arc>) {
    let n = p.state_count() as usize;
    let mut renumber: Vec<Option<StateId>> = vec![None; n];
    renumber[0] = Some(0);
    let mut next_id: StateId = 1;
    let mut queue = std::collections::VecDeque::from([0 as StateId]);
    while let Some(j) = queue.pop_front() {
        for arc in p.arcs_from(j) {
            if renumber[arc.to as usize].is_none() {
                renumber[arc.to as usize] = Some(next_id);
                next_id += 1;
                queue.push_back(arc.to);
            }
        }
    }
    let mut arcs: Vec<Arc> = p
        .arcs()
        .iter()
        .map(|a| Arc {
            from: renumber[a.from as usize].expect("all states reachable"),
            symbol: a.symbol,
            to: renumber[a.to as usize].expect("all states reachable"),
            freq: a.freq,
        })
        .collect();
    arcs.sort_unstable();
    (p.state_count(), arcs)
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Candidate {
    bits: f64,
    states: u32,
    pair: (StateId, StateId),
    parent: usize,
}

/// Best-first beam search over single-pair merges.
///
/// Each step expands every frontier automaton into all C(N, 2) merges,
/// scores them, and keeps the best `width` distinct automata (ties by fewer
/// states, then by merged pair). The search runs until no merges remain or
/// `max_merges` steps have run — it does not stop at a local minimum, since
/// a merge that raises the cost can open up better merges later. The best
/// automaton ever seen is returned, so the result never scores worse than
/// the input; with unlimited width this enumerates every reachable merge
/// closure, so the result is the global optimum.
pub fn beam_reduce(p: &Pfsa, params: BeamParams) -> (Pfsa, ReductionTrace) {
    let mut incumbent = p.clone();
    let mut incumbent_bits = mml(&incumbent)
        .expect("beam_reduce requires a valid automaton")
        .total_bits;
    let mut trace: ReductionTrace = Vec::new();
    let mut frontier: Vec<Pfsa> = vec![p.clone()];
    let mut steps = 0usize;

    loop {
        if params.max_merges.is_some_and(|cap| steps >= cap) {
            break;
        }
        let tasks: Vec<(usize, StateId, StateId)> = frontier
            .iter()
            .enumerate()
            .flat_map(|(parent, q)| {
                let n = q.state_count();
                (0..n).flat_map(move |a| ((a + 1)..n).map(move |b| (parent, a, b)))
            })
            .collect();
        if tasks.is_empty() {
            break;
        }

        // Score all candidates (in parallel when enabled), keeping only
        // summaries; the few survivors are rebuilt below. Selection uses a
        // total order, so the outcome is independent of scoring order.
        let mut candidates: Vec<Candidate> = tasks
            .into_par_iter()
            .map(|(parent, a, b)| {
                let merged = frontier[parent]
                    .merge_states(a, b)
                    .expect("states are distinct");
                let bits = mml(&merged).expect("merge preserves validity").total_bits;
                Candidate {
                    bits,
                    states: merged.state_count(),
                    pair: (a, b),
                    parent,
                }
            })
            .collect();
        candidates.sort_by(|x, y| {
            x.bits
                .total_cmp(&y.bits)
                .then(x.states.cmp(&y.states))
                .then(x.pair.cmp(&y.pair))
                .then(x.parent.cmp(&y.parent))
        });

        let mut next: Vec<Pfsa> = Vec::with_capacity(params.width);
        let mut seen: HashSet<(u32, Vec<Arc>)> = HashSet::new();
        let mut best: Option<Candidate> = None;
        for c in &candidates {
            if next.len() >= params.width {
                break;
            }
            let merged = frontier[c.parent]
                .merge_states(c.pair.0, c.pair.1)
                .expect("states are distinct");
            if seen.insert(canonical_key(&merged)) {
                if best.is_none() {
                    best = Some(*c);
                }
                next.push(merged);
            }
        }
        let best = best.expect("candidates are non-empty");

        if best.bits < incumbent_bits {
            incumbent = next[0].clone();
            incumbent_bits = best.bits;
            trace.push(TraceEntry {
                description: format!(
                    "beam step {}: merged states {} and {}",
                    steps + 1,
                    best.pair.0,
                    best.pair.1
                ),
                states: best.states,
                mml_bits: best.bits,
                automaton: next[0].clone(),
            });
        }
        frontier = next;
        steps += 1;
    }
    (incumbent, trace)
}

/// The full minimization: sk-strings sweep, then beam search on the sweep's
/// winner. If the searched result somehow costs more than the input, the
/// input is kept, so the pipeline never raises the message length.
pub fn reduce_pipeline(
    p: &Pfsa,
    k_range: RangeInclusive<u32>,
    s_range: RangeInclusive<u32>,
    beam: BeamParams,
) -> Result<(Pfsa, ReductionTrace), ReduceError> {
    let input_bits = mml(p)
        .expect("reduce_pipeline requires a valid automaton")
        .total_bits;
    let (after_sk, _, mut trace) = sk_sweep(p, k_range, s_range)?;
    let (reduced, beam_trace) = beam_reduce(&after_sk, beam);
    trace.extend(beam_trace);

    let reduced_bits = mml(&reduced).expect("reduction preserves validity").total_bits;
    if reduced_bits <= input_bits {
        Ok((reduced, trace))
    } else {
        trace.push(TraceEntry {
            description: "pipeline: kept the input automaton (no merge lowered the cost)".into(),
            states: p.state_count(),
            mml_bits: input_bits,
            automaton: p.clone(),
        });
        Ok((p.clone(), trace))
    }
}
