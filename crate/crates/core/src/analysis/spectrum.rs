use crate::analysis::{Budget, NodeCounter, Search};
use crate::error::Result;
use crate::fourier::{zero_set, IndicatorTransform};
use crate::groups::{difference_set, GroupSubset};

/// Dual-group orders up to this size are searched without a node budget.
pub const EXHAUSTIVE_LIMIT: usize = 10_000;

/// `Λ` is a spectrum of `A`: `|Λ| = |A|` and `χ̂_A` vanishes on every nonzero difference of `Λ`.
pub fn is_spectrum(a: &GroupSubset, lambda: &GroupSubset) -> Result<bool> {
    a.ensure_same_group(lambda)?;
    if a.len() != lambda.len() || a.is_empty() {
        return Ok(false);
    }
    let ft = IndicatorTransform::new(a);
    let diffs = difference_set(lambda)?;
    Ok(diffs
        .indices()
        .iter()
        .filter(|&&d| d != 0)
        .all(|&d| ft.at_index(d).is_zero()))
}

/// Sufficient condition for a universal spectrum of the tiling complements of `T′`:
/// `|L|·|T′| = |G|` and `χ̂_{T′}` is nonzero on all of `L − L`.
pub fn lagarias_condition(t_prime: &GroupSubset, l: &GroupSubset) -> Result<bool> {
    t_prime.ensure_same_group(l)?;
    if l.len() * t_prime.len() != t_prime.group().order() {
        return Ok(false);
    }
    let ft = IndicatorTransform::new(t_prime);
    let diffs = difference_set(l)?;
    Ok(diffs.indices().iter().all(|&d| !ft.at_index(d).is_zero()))
}

/// Searches for a spectrum of `A` containing `0`.
///
/// Cliques of size `|A|` are grown in the graph on `Z_A ∪ {0}` whose edges
/// join `ξ, η` with `ξ − η ∈ Z_A`. Candidates are tried in increasing index
/// order, so the first spectrum returned is the lexicographically smallest.
/// Dual groups of order at most [`EXHAUSTIVE_LIMIT`] ignore the budget.
pub fn find_spectrum(a: &GroupSubset, budget: Budget) -> Result<Search<GroupSubset>> {
    a.ensure_nonempty()?;
    let g = a.group();
    let budget = if g.order() <= EXHAUSTIVE_LIMIT {
        Budget::UNLIMITED
    } else {
        budget
    };
    let zeros = zero_set(a)?;
    let mut search = CliqueSearch {
        zeros: &zeros,
        target: a.len(),
        clique: vec![0],
        counter: NodeCounter::new(budget),
    };
    let candidates = zeros.indices().to_vec();
    let outcome = search.extend(&candidates);
    let nodes = search.counter.nodes;
    Ok(match outcome {
        Some(true) => Search::Found {
            value: GroupSubset::from_indices(g.clone(), search.clique)?,
            nodes,
        },
        Some(false) => Search::Exhausted { nodes },
        None => Search::Inconclusive { nodes },
    })
}

struct CliqueSearch<'a> {
    zeros: &'a GroupSubset,
    target: usize,
    clique: Vec<usize>,
    counter: NodeCounter,
}

impl CliqueSearch<'_> {
    fn extend(&mut self, candidates: &[usize]) -> Option<bool> {
        if self.clique.len() >= self.target {
            return Some(true);
        }
        let g = self.zeros.group().clone();
        for (i, &v) in candidates.iter().enumerate() {
            if self.clique.len() + candidates.len() - i < self.target {
                break;
            }
            if !self.counter.tick() {
                return None;
            }
            let next: Vec<usize> = candidates[i + 1..]
                .iter()
                .copied()
                .filter(|&u| self.zeros.contains_index(g.sub_index(u, v)))
                .collect();
            self.clique.push(v);
            match self.extend(&next) {
                Some(false) => {
                    self.clique.pop();
                }
                other => return other,
            }
        }
        Some(false)
    }
}
