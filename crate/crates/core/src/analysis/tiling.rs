use crate::analysis::{Budget, NodeCounter, Search};
use crate::error::{Error, Result};
use crate::fourier::zero_set;
use crate::groups::{subgroup_generated, Elem, GroupSubset};

/// Multiplicity of every group element in the multiset `A + T`.
fn coverage(a: &GroupSubset, t: &GroupSubset) -> Vec<u32> {
    let g = a.group();
    let mut counts = vec![0u32; g.order()];
    for &x in a.indices() {
        for &y in t.indices() {
            counts[g.add_index(x, y)] += 1;
        }
    }
    counts
}

/// `A + T = ℓ·G`: every element is hit exactly `level` times.
pub fn is_tiling(a: &GroupSubset, t: &GroupSubset, level: u32) -> Result<bool> {
    a.ensure_same_group(t)?;
    if a.len() * t.len() != level as usize * a.group().order() {
        return Ok(false);
    }
    Ok(coverage(a, t).iter().all(|&c| c == level))
}

/// `A + T = H` as a direct sum, for a subgroup `H` of the ambient group.
pub fn tiles_subgroup(a: &GroupSubset, t: &GroupSubset, h: &GroupSubset) -> Result<bool> {
    a.ensure_same_group(t)?;
    a.ensure_same_group(h)?;
    Ok(coverage(a, t)
        .iter()
        .zip(h.bitmap())
        .all(|(&c, &inside)| c == u32::from(inside)))
}

/// Level-one tiling test through transforms: `Z_A ∪ Z_T ∪ {0}` must be the whole dual.
pub fn tiling_fourier_criterion(a: &GroupSubset, t: &GroupSubset) -> Result<bool> {
    a.ensure_same_group(t)?;
    let order = a.group().order();
    if a.len() * t.len() != order {
        return Err(Error::CardinalityMismatch {
            product: a.len() * t.len(),
            order,
        });
    }
    let za = zero_set(a)?;
    let zt = zero_set(t)?;
    Ok((1..order).all(|xi| za.contains_index(xi) || zt.contains_index(xi)))
}

/// Why a set was proven not to tile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NonTileReason {
    /// `|A|` does not divide `|G|`.
    OrderDivisibility { set_size: usize, group_order: usize },
    /// `|A|` does not divide `|⟨A⟩|`; a tile of `G` tiles the subgroup it generates.
    SubgroupDivisibility {
        set_size: usize,
        subgroup_order: usize,
    },
    /// The exact-cover search of `⟨A⟩` finished without a solution.
    SearchExhausted { subgroup_order: usize, nodes: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TileOutcome {
    Tiles {
        complement: GroupSubset,
        /// Translation applied to bring `0` into the set, if any.
        translation: Option<Elem>,
        subgroup_order: usize,
        nodes: u64,
    },
    NotTile(NonTileReason),
    Inconclusive { subgroup_order: usize, nodes: u64 },
}

impl TileOutcome {
    pub fn complement(&self) -> Option<&GroupSubset> {
        match self {
            TileOutcome::Tiles { complement, .. } => Some(complement),
            _ => None,
        }
    }
}

/// Decides whether `A` tiles its ambient group, returning a complement when it does.
///
/// The search runs inside `⟨A⟩` and the complement found there is extended
/// by one representative per coset of `⟨A⟩`.
pub fn can_tile(a: &GroupSubset, budget: Budget) -> Result<TileOutcome> {
    a.ensure_nonempty()?;
    let g = a.group();
    let (shifted, translation) = if a.contains_index(0) {
        (a.clone(), None)
    } else {
        let first = g.element(a.indices()[0]);
        let shift = g.neg(&first);
        (a.translate(&shift), Some(shift))
    };
    if g.order() % a.len() != 0 {
        return Ok(TileOutcome::NotTile(NonTileReason::OrderDivisibility {
            set_size: a.len(),
            group_order: g.order(),
        }));
    }
    let span = subgroup_generated(&shifted)?;
    let subgroup_order = span.len();
    if subgroup_order % a.len() != 0 {
        return Ok(TileOutcome::NotTile(NonTileReason::SubgroupDivisibility {
            set_size: a.len(),
            subgroup_order,
        }));
    }
    Ok(match tile_subgroup(&shifted, &span, budget)? {
        Search::Found { value, nodes } => {
            let reps = coset_representatives(&span);
            let mut indices = Vec::with_capacity(value.len() * reps.len());
            for &r in &reps {
                indices.extend(value.indices().iter().map(|&t| g.add_index(t, r)));
            }
            let complement = GroupSubset::from_indices(g.clone(), indices)?;
            debug_assert!(is_tiling(a, &complement, 1)?);
            TileOutcome::Tiles {
                complement,
                translation,
                subgroup_order,
                nodes,
            }
        }
        Search::Exhausted { nodes } => TileOutcome::NotTile(NonTileReason::SearchExhausted {
            subgroup_order,
            nodes,
        }),
        Search::Inconclusive { nodes } => TileOutcome::Inconclusive {
            subgroup_order,
            nodes,
        },
    })
}

/// Smallest element of each coset of the subgroup `S`, in increasing order.
pub fn coset_representatives(s: &GroupSubset) -> Vec<usize> {
    let g = s.group();
    let mut seen = vec![false; g.order()];
    let mut reps = Vec::with_capacity(g.order() / s.len().max(1));
    for x in 0..g.order() {
        if seen[x] {
            continue;
        }
        reps.push(x);
        for &h in s.indices() {
            seen[g.add_index(x, h)] = true;
        }
    }
    reps
}

/// Exact-cover search for `T ⊆ S` with `A + T = S`, where `S` is a subgroup containing `A`.
///
/// Items are the elements of `S`, options are the translates `t + A`. The
/// uncovered element with the fewest live options is branched on first; ties
/// and option order follow element index.
pub fn tile_subgroup(a: &GroupSubset, s: &GroupSubset, budget: Budget) -> Result<Search<GroupSubset>> {
    a.ensure_same_group(s)?;
    a.ensure_nonempty()?;
    if !a.is_subset_of(s) {
        return Err(Error::Precondition("set is not contained in the subgroup".into()));
    }
    if !s.is_subgroup() {
        return Err(Error::NotSubgroup);
    }
    if s.len() % a.len() != 0 {
        return Ok(Search::Exhausted { nodes: 0 });
    }
    let mut cover = TranslateCover::new(a, s);
    let mut counter = NodeCounter::new(budget);
    Ok(match cover.solve(&mut counter) {
        Some(true) => {
            let g = s.group();
            let chosen = cover.chosen.iter().map(|&t| s.indices()[t]);
            Search::Found {
                value: GroupSubset::from_indices(g.clone(), chosen)?,
                nodes: counter.nodes,
            }
        }
        Some(false) => Search::Exhausted {
            nodes: counter.nodes,
        },
        None => Search::Inconclusive {
            nodes: counter.nodes,
        },
    })
}

/// Algorithm X state over local indices of `S` (position in its sorted member list).
struct TranslateCover {
    k: usize,
    /// `cells[t*k + i]` = local index of `s_t + a_i`.
    cells: Vec<usize>,
    /// `covering[c*k + i]` = local index of `s_c − a_i`, sorted per cell.
    covering: Vec<usize>,
    covered: Vec<bool>,
    /// Number of covered cells inside each translate; a translate is live at 0.
    blocked: Vec<u32>,
    /// Number of live translates covering each cell.
    options: Vec<u32>,
    remaining: usize,
    chosen: Vec<usize>,
}

impl TranslateCover {
    fn new(a: &GroupSubset, s: &GroupSubset) -> Self {
        let g = s.group();
        let n = s.len();
        let k = a.len();
        let mut local = vec![usize::MAX; g.order()];
        for (l, &x) in s.indices().iter().enumerate() {
            local[x] = l;
        }
        let mut cells = Vec::with_capacity(n * k);
        let mut covering = Vec::with_capacity(n * k);
        for &x in s.indices() {
            cells.extend(a.indices().iter().map(|&y| local[g.add_index(x, y)]));
            let start = covering.len();
            covering.extend(a.indices().iter().map(|&y| local[g.sub_index(x, y)]));
            covering[start..].sort_unstable();
        }
        TranslateCover {
            k,
            cells,
            covering,
            covered: vec![false; n],
            blocked: vec![0; n],
            options: vec![k as u32; n],
            remaining: n,
            chosen: Vec::with_capacity(n / k),
        }
    }

    fn place(&mut self, t: usize) {
        let k = self.k;
        for i in 0..k {
            let c = self.cells[t * k + i];
            self.covered[c] = true;
            self.remaining -= 1;
            for j in 0..k {
                let u = self.covering[c * k + j];
                self.blocked[u] += 1;
                if self.blocked[u] == 1 {
                    for m in 0..k {
                        self.options[self.cells[u * k + m]] -= 1;
                    }
                }
            }
        }
        self.chosen.push(t);
    }

    fn unplace(&mut self, t: usize) {
        let k = self.k;
        for i in (0..k).rev() {
            let c = self.cells[t * k + i];
            for j in (0..k).rev() {
                let u = self.covering[c * k + j];
                if self.blocked[u] == 1 {
                    for m in 0..k {
                        self.options[self.cells[u * k + m]] += 1;
                    }
                }
                self.blocked[u] -= 1;
            }
            self.covered[c] = false;
            self.remaining += 1;
        }
        self.chosen.pop();
    }

    /// `Some(true)` solved, `Some(false)` no solution below this node, `None` out of budget.
    fn solve(&mut self, counter: &mut NodeCounter) -> Option<bool> {
        if self.remaining == 0 {
            return Some(true);
        }
        let mut best = usize::MAX;
        let mut best_options = u32::MAX;
        for (c, (&cov, &opt)) in self.covered.iter().zip(&self.options).enumerate() {
            if !cov && opt < best_options {
                best = c;
                best_options = opt;
                if opt == 0 {
                    break;
                }
            }
        }
        if best_options == 0 {
            return Some(false);
        }
        let k = self.k;
        for j in 0..k {
            let t = self.covering[best * k + j];
            if self.blocked[t] != 0 {
                continue;
            }
            if !counter.tick() {
                return None;
            }
            self.place(t);
            match self.solve(counter) {
                Some(false) => self.unplace(t),
                other => return other,
            }
        }
        Some(false)
    }
}
