//! Exact maximum clique by branch and bound.
//!
//! Used for the dimension of a complex (largest pairwise-crossing wall
//! family). Graphs here are small and sparse, so a plain candidate-set
//! recursion with a greedy colouring bound is plenty.

use fixedbitset::FixedBitSet;

/// Returns a maximum clique of the graph given by `adjacency` (symmetric,
/// no loops), sorted ascending.
pub fn max_clique(adjacency: &[FixedBitSet]) -> Vec<usize> {
    let n = adjacency.len();
    if n == 0 {
        return Vec::new();
    }
    let mut best = vec![0];
    let mut current = Vec::new();
    let mut candidates = FixedBitSet::with_capacity(n);
    candidates.insert_range(..);
    expand(adjacency, &mut current, candidates, &mut best);
    best.sort_unstable();
    best
}

fn expand(adjacency: &[FixedBitSet], current: &mut Vec<usize>, mut candidates: FixedBitSet, best: &mut Vec<usize>) {
    if candidates.is_clear() {
        if current.len() > best.len() {
            *best = current.clone();
        }
        return;
    }
    if current.len() + colour_bound(adjacency, &candidates) <= best.len() {
        return;
    }
    while let Some(v) = candidates.minimum() {
        if current.len() + candidates.count_ones(..) <= best.len() {
            return;
        }
        candidates.remove(v);
        let mut next = candidates.clone();
        next.intersect_with(&adjacency[v]);
        current.push(v);
        expand(adjacency, current, next, best);
        current.pop();
    }
}

/// Greedy colouring of the candidate set; the colour count bounds any clique in it.
fn colour_bound(adjacency: &[FixedBitSet], candidates: &FixedBitSet) -> usize {
    let mut uncoloured = candidates.clone();
    let mut colours = 0;
    while !uncoloured.is_clear() {
        colours += 1;
        let mut available = uncoloured.clone();
        while let Some(v) = available.minimum() {
            available.remove(v);
            available.difference_with(&adjacency[v]);
            uncoloured.remove(v);
        }
    }
    colours
}
