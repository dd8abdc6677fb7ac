//! Relations between pairs and triples of walls: crossing, nesting, facing
//! triples, separation degree (number of common crossers) and
//! well-separation degree (largest facing-triple-free family of common
//! crossers).

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::complex::{CubeComplex, Side, WallId};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Crossing,
    Disjoint,
}

impl Relation {
    pub fn as_str(self) -> &'static str {
        match self {
            Relation::Crossing => "crossing",
            Relation::Disjoint => "disjoint",
        }
    }
}

/// Well-separation degree of a disjoint pair with a witness family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WsepReport {
    pub degree: usize,
    /// A maximum facing-triple-free subfamily of the common crossers.
    pub witness: Vec<WallId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallPairReport {
    pub pair: (WallId, WallId),
    pub relation: Relation,
    pub crossers: Vec<WallId>,
    pub sep_degree: usize,
    /// Present only for disjoint pairs.
    pub wsep: Option<WsepReport>,
}

impl CubeComplex {
    /// Side of `reference` containing the wall `wall`. Meaningful only when
    /// the two walls are disjoint; every edge dual to `wall` has both ends
    /// on the same side of any other wall.
    pub fn side_containing(&self, wall: WallId, reference: WallId) -> Side {
        let (a, _) = self.wall(wall).edges()[0];
        self.wall(reference).side_of(a)
    }

    /// Whether `middle` separates `a` from `c`: each of `a`, `c` is disjoint
    /// from `middle` and they lie in opposite halfspaces of it.
    pub fn wall_separates(&self, middle: WallId, a: WallId, c: WallId) -> bool {
        if middle == a || middle == c || a == c {
            return false;
        }
        if self.walls_cross(middle, a) || self.walls_cross(middle, c) {
            return false;
        }
        self.side_containing(a, middle) != self.side_containing(c, middle)
    }

    fn facing_unchecked(&self, a: WallId, b: WallId, c: WallId) -> bool {
        !self.walls_cross(a, b)
            && !self.walls_cross(a, c)
            && !self.walls_cross(b, c)
            && !self.wall_separates(a, b, c)
            && !self.wall_separates(b, a, c)
            && !self.wall_separates(c, a, b)
    }

    /// Three pairwise disjoint walls, none separating the other two.
    pub fn is_facing_triple(&self, a: WallId, b: WallId, c: WallId) -> Result<bool> {
        for w in [a, b, c] {
            self.check_wall(w)?;
        }
        if a == b || b == c || a == c {
            return Err(Error::Input(format!(
                "facing triple needs distinct walls, got {a} {b} {c}"
            )));
        }
        Ok(self.facing_unchecked(a, b, c))
    }

    /// Walls crossing both `a` and `b`, ascending.
    pub fn crossers(&self, a: WallId, b: WallId) -> Vec<WallId> {
        self.crossing_set(a).intersection(self.crossing_set(b)).collect()
    }

    /// Number of walls crossing both (the Charney–Sultan separation degree).
    pub fn sep_degree(&self, a: WallId, b: WallId) -> usize {
        self.crossing_set(a).intersection_count(self.crossing_set(b))
    }

    /// Exact well-separation degree of a disjoint pair.
    pub fn wsep_degree(&self, a: WallId, b: WallId) -> Result<WsepReport> {
        if self.crosses(a, b)? {
            return Err(Error::Precondition(format!(
                "walls {a} and {b} cross; well-separation is defined for disjoint walls"
            )));
        }
        let crossers = self.crossers(a, b);
        let witness = max_facing_free(self, &crossers);
        Ok(WsepReport {
            degree: witness.len(),
            witness,
        })
    }

    pub fn wall_pair_report(&self, a: WallId, b: WallId) -> Result<WallPairReport> {
        let crossing = self.crosses(a, b)?;
        let crossers = self.crossers(a, b);
        let wsep = if crossing { None } else { Some(self.wsep_degree(a, b)?) };
        Ok(WallPairReport {
            pair: (a, b),
            relation: if crossing {
                Relation::Crossing
            } else {
                Relation::Disjoint
            },
            sep_degree: crossers.len(),
            crossers,
            wsep,
        })
    }

    /// A longest chain (nested family) among `walls`, outermost first.
    pub fn longest_chain(&self, walls: &[WallId]) -> Result<Vec<WallId>> {
        for &w in walls {
            self.check_wall(w)?;
        }
        let mut walls = walls.to_vec();
        walls.sort_unstable();
        walls.dedup();
        if walls.is_empty() {
            return Ok(Vec::new());
        }
        // Nodes are oriented halfspaces; an edge runs from a halfspace to
        // each strictly smaller halfspace (of another wall) it contains.
        let mut nodes: Vec<(WallId, Side, usize)> = walls
            .iter()
            .flat_map(|&w| [Side::Minus, Side::Plus].into_iter().map(move |s| (w, s, 0usize)))
            .map(|(w, s, _)| (w, s, self.wall(w).halfspace(s).count_ones(..)))
            .collect();
        nodes.sort_by(|x, y| y.2.cmp(&x.2).then(x.0.cmp(&y.0)).then(x.1.cmp(&y.1)));
        let mut length = vec![1usize; nodes.len()];
        let mut parent = vec![usize::MAX; nodes.len()];
        for j in 0..nodes.len() {
            let (wj, sj, _) = nodes[j];
            let inner = self.wall(wj).halfspace(sj);
            for i in 0..j {
                let (wi, si, size_i) = nodes[i];
                if wi != wj
                    && size_i > nodes[j].2
                    && inner.is_subset(self.wall(wi).halfspace(si))
                    && length[i] + 1 > length[j]
                {
                    length[j] = length[i] + 1;
                    parent[j] = i;
                }
            }
        }
        let mut end = 0;
        for j in 1..nodes.len() {
            if length[j] > length[end] {
                end = j;
            }
        }
        let mut chain = Vec::with_capacity(length[end]);
        let mut cur = end;
        loop {
            chain.push(nodes[cur].0);
            if parent[cur] == usize::MAX {
                break;
            }
            cur = parent[cur];
        }
        chain.reverse();
        Ok(chain)
    }
}

/// Maximum subfamily of `walls` containing no facing triple, by branch and
/// bound. Elements in few facing triples are tried first, which also gives
/// the greedy incumbent.
fn max_facing_free(complex: &CubeComplex, walls: &[WallId]) -> Vec<WallId> {
    let s = walls.len();
    if s <= 2 {
        return walls.to_vec();
    }
    // conflict[i * s + j] = positions k completing a facing triple with i, j.
    let mut conflict = vec![FixedBitSet::with_capacity(s); s * s];
    let mut degree = vec![0usize; s];
    for i in 0..s {
        for j in i + 1..s {
            if complex.walls_cross(walls[i], walls[j]) {
                continue;
            }
            for k in j + 1..s {
                if complex.facing_unchecked(walls[i], walls[j], walls[k]) {
                    for (x, y, z) in [(i, j, k), (i, k, j), (j, k, i)] {
                        conflict[x * s + y].insert(z);
                        conflict[y * s + x].insert(z);
                    }
                    degree[i] += 1;
                    degree[j] += 1;
                    degree[k] += 1;
                }
            }
        }
    }
    if degree.iter().all(|&d| d == 0) {
        return walls.to_vec();
    }

    let mut order: Vec<usize> = (0..s).collect();
    order.sort_by_key(|&i| (degree[i], i));
    // Re-index conflicts by position in `order`.
    let mut rank = vec![0; s];
    for (pos, &i) in order.iter().enumerate() {
        rank[i] = pos;
    }
    let mut ranked = vec![FixedBitSet::with_capacity(s); s * s];
    for i in 0..s {
        for j in 0..s {
            for k in conflict[i * s + j].ones() {
                ranked[rank[i] * s + rank[j]].insert(rank[k]);
            }
        }
    }

    let mut best = greedy(&ranked, s);
    let mut allowed = FixedBitSet::with_capacity(s);
    allowed.insert_range(..);
    let mut chosen = Vec::new();
    branch(&ranked, s, &mut chosen, allowed, &mut best);

    let mut result: Vec<WallId> = best.into_iter().map(|p| walls[order[p]]).collect();
    result.sort_unstable();
    result
}

fn greedy(conflict: &[FixedBitSet], s: usize) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    for v in 0..s {
        let clash = chosen
            .iter()
            .enumerate()
            .any(|(i, &a)| chosen[i + 1..].iter().any(|&b| conflict[a * s + b].contains(v)));
        if !clash {
            chosen.push(v);
        }
    }
    chosen
}

fn branch(
    conflict: &[FixedBitSet],
    s: usize,
    chosen: &mut Vec<usize>,
    mut allowed: FixedBitSet,
    best: &mut Vec<usize>,
) {
    loop {
        if chosen.len() + allowed.count_ones(..) <= best.len() {
            return;
        }
        let Some(v) = allowed.minimum() else {
            *best = chosen.clone();
            return;
        };
        allowed.remove(v);
        let mut next = allowed.clone();
        for &a in chosen.iter() {
            next.difference_with(&conflict[a * s + v]);
        }
        chosen.push(v);
        branch(conflict, s, chosen, next, best);
        chosen.pop();
    }
}

/// Well-separation degrees for every disjoint wall pair, computed once.
#[derive(Clone, Debug)]
pub struct SeparationTable {
    walls: usize,
    wsep: Vec<Option<u32>>,
}

impl SeparationTable {
    pub fn new(complex: &CubeComplex) -> Self {
        let m = complex.wall_count();
        let rows: Vec<Vec<Option<u32>>> = (0..m)
            .into_par_iter()
            .map(|a| {
                (0..m)
                    .map(|b| {
                        if b <= a || complex.walls_cross(a, b) {
                            None
                        } else {
                            let crossers = complex.crossers(a, b);
                            Some(max_facing_free(complex, &crossers).len() as u32)
                        }
                    })
                    .collect()
            })
            .collect();
        let mut wsep = vec![None; m * m];
        for a in 0..m {
            for b in a + 1..m {
                wsep[a * m + b] = rows[a][b];
                wsep[b * m + a] = rows[a][b];
            }
        }
        SeparationTable { walls: m, wsep }
    }

    /// Degree for a disjoint pair, `None` for crossing or identical walls.
    pub fn wsep(&self, a: WallId, b: WallId) -> Option<usize> {
        self.wsep[a * self.walls + b].map(|d| d as usize)
    }

    pub fn is_well_separated(&self, a: WallId, b: WallId, k: usize) -> bool {
        self.wsep(a, b).is_some_and(|d| d <= k)
    }
}
