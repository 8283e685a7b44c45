//! Decision procedures and searches over tiles and spectra.

mod hadamard;
mod spectrum;
mod tiling;
mod universal;

pub use hadamard::{is_log_hadamard, RationalMatrix};
pub use spectrum::{find_spectrum, is_spectrum, lagarias_condition};
pub use tiling::{
    can_tile, coset_representatives, is_tiling, tile_subgroup, tiles_subgroup,
    tiling_fourier_criterion, NonTileReason, TileOutcome,
};
pub use universal::{universal_obstruction, ObstructionReport};

/// Default node budget for every backtracking search.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Maximum number of search nodes before a search gives up as inconclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Default for Budget {
    fn default() -> Self {
        Budget(DEFAULT_BUDGET)
    }
}

impl Budget {
    pub const UNLIMITED: Budget = Budget(u64::MAX);
}

/// Result of a budgeted search. `Exhausted` is a proof that nothing exists;
/// `Inconclusive` only says the budget ran out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Search<T> {
    Found { value: T, nodes: u64 },
    Exhausted { nodes: u64 },
    Inconclusive { nodes: u64 },
}

impl<T> Search<T> {
    pub fn found(&self) -> Option<&T> {
        match self {
            Search::Found { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn nodes(&self) -> u64 {
        match self {
            Search::Found { nodes, .. }
            | Search::Exhausted { nodes }
            | Search::Inconclusive { nodes } => *nodes,
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Search<U> {
        match self {
            Search::Found { value, nodes } => Search::Found {
                value: f(value),
                nodes,
            },
            Search::Exhausted { nodes } => Search::Exhausted { nodes },
            Search::Inconclusive { nodes } => Search::Inconclusive { nodes },
        }
    }
}

/// Node counter shared by the recursive searches.
pub(crate) struct NodeCounter {
    pub(crate) nodes: u64,
    limit: u64,
}

impl NodeCounter {
    pub(crate) fn new(budget: Budget) -> Self {
        NodeCounter {
            nodes: 0,
            limit: budget.0,
        }
    }

    /// Counts one node; `false` once the budget is spent.
    pub(crate) fn tick(&mut self) -> bool {
        self.nodes += 1;
        self.nodes <= self.limit
    }
}
