//! Minimum message length of an automaton.
//!
//! The score is the length in bits of a two-part message: first the
//! automaton, then the corpus given the automaton. Sending state j costs
//! m_j bits for its arc count (a 2^-m prior), a multinomial arrangement term
//! log2((t_j−1)!/((m_j−1)!·Π(n_ij−1)!)) for the arc frequencies, m_j·log2 V
//! for the arc symbols and m_j'·log2 N for the arc targets — delimiter arcs
//! always return to state 0, so their targets are free. States other than
//! the start can be sent in any order, so log2((N−1)!) is refunded. Lower is
//! better: a more regular hypothesis compresses the corpus further.
//!
//! All logarithms are base 2 and all terms are exposed per state in
//! [`MmlBreakdown`] so reductions can be audited.

use std::sync::OnceLock;

use thiserror::Error;

use crate::automaton::{AutomatonError, Pfsa, StateId};
use crate::parallel::*;

/// Largest n whose log2(n!) is served from the exact summation table.
const TABLE_LIMIT: usize = 1024;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MmlError {
    /// The automaton violates a structural invariant (for example a pruned
    /// view whose states lost their arcs) and cannot be scored.
    #[error("automaton is not scoreable: {source}")]
    NotScoreable {
        #[source]
        source: AutomatonError,
    },
}

/// Cost terms for one state, all in bits.
#[derive(Debug, Clone, PartialEq)]
pub struct StateCost {
    pub state: StateId,
    /// m_j — the arc-count prior.
    pub structure_bits: f64,
    /// log2((t_j−1)! / ((m_j−1)! · Π_i (n_ij−1)!)).
    pub arrangement_bits: f64,
    /// m_j · log2 V.
    pub symbol_bits: f64,
    /// m_j' · log2 N; delimiter targets cost nothing.
    pub target_bits: f64,
}

impl StateCost {
    pub fn total(&self) -> f64 {
        self.structure_bits + self.arrangement_bits + self.symbol_bits + self.target_bits
    }
}

/// Per-state cost terms and the total message length.
#[derive(Debug, Clone, PartialEq)]
pub struct MmlBreakdown {
    pub per_state: Vec<StateCost>,
    /// log2((N−1)!), refunded because state order carries no information.
    pub permutation_discount_bits: f64,
    pub total_bits: f64,
}

/// log2(n!), exact summation for n ≤ 1024, Stirling series above.
///
/// Accurate to better than 1e-9 relative everywhere.
pub fn log2_factorial(n: u64) -> f64 {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let mut t = Vec::with_capacity(TABLE_LIMIT + 1);
        t.push(0.0);
        for i in 1..=TABLE_LIMIT {
            t.push(t[i - 1] + (i as f64).log2());
        }
        t
    });
    if n as usize <= TABLE_LIMIT {
        return table[n as usize];
    }
    // Stirling's series for ln n!; the truncation error at n > 1024 is far
    // below f64 resolution.
    let x = n as f64;
    let ln = (x + 0.5) * x.ln() - x
        + 0.5 * (2.0 * std::f64::consts::PI).ln()
        + 1.0 / (12.0 * x)
        - 1.0 / (360.0 * x.powi(3))
        + 1.0 / (1260.0 * x.powi(5));
    ln / std::f64::consts::LN_2
}

/// Scores an automaton, rejecting values that violate the structural
/// invariants (pruned views in particular).
pub fn mml(p: &Pfsa) -> Result<MmlBreakdown, MmlError> {
    p.validate()
        .map_err(|source| MmlError::NotScoreable { source })?;

    let n = p.state_count();
    let log2_v = (p.symbols().len() as f64).log2();
    let log2_n = (n as f64).log2();

    // Parallel map into an ordered Vec, then a sequential sum: totals are
    // bit-identical whatever the thread count or feature set.
    let per_state: Vec<StateCost> = (0..n)
        .into_par_iter()
        .map(|j| {
            let stats = p.state_stats(j);
            let arrangement = log2_factorial(stats.t - 1)
                - log2_factorial(stats.m as u64 - 1)
                - stats
                    .freqs
                    .iter()
                    .map(|&f| log2_factorial(f - 1))
                    .sum::<f64>();
            StateCost {
                state: j,
                structure_bits: stats.m as f64,
                arrangement_bits: arrangement,
                symbol_bits: stats.m as f64 * log2_v,
                target_bits: stats.m_prime as f64 * log2_n,
            }
        })
        .collect();

    let permutation_discount_bits = log2_factorial(n as u64 - 1);
    let total_bits =
        per_state.iter().map(StateCost::total).sum::<f64>() - permutation_discount_bits;
    Ok(MmlBreakdown {
        per_state,
        permutation_discount_bits,
        total_bits,
    })
}
