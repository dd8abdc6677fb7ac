//! Reference implementations used by the integration tests. They work from
//! the 1-skeleton and halfspace sets directly and avoid the library's
//! derived tables.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};

use cubewell_core::{CubeComplex, Side, VertexId, WallId};

pub fn bfs_distances(c: &CubeComplex) -> Vec<Vec<usize>> {
    let n = c.vertex_count();
    (0..n)
        .map(|s| {
            let mut dist = vec![usize::MAX; n];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in c.neighbors(v) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        queue.push_back(w);
                    }
                }
            }
            dist
        })
        .collect()
}

pub fn plus(c: &CubeComplex, w: WallId, v: VertexId) -> bool {
    c.wall(w).halfspace(Side::Plus).contains(v)
}

pub fn separates(c: &CubeComplex, w: WallId, u: VertexId, v: VertexId) -> bool {
    plus(c, w, u) != plus(c, w, v)
}

/// All four quadrants of the two walls are nonempty.
pub fn crosses(c: &CubeComplex, a: WallId, b: WallId) -> bool {
    if a == b {
        return false;
    }
    let mut seen = [false; 4];
    for v in 0..c.vertex_count() {
        seen[plus(c, a, v) as usize * 2 + plus(c, b, v) as usize] = true;
    }
    seen.iter().all(|&s| s)
}

fn edge_vertices(c: &CubeComplex, w: WallId) -> Vec<VertexId> {
    c.wall(w).edges().iter().flat_map(|&(x, y)| [x, y]).collect()
}

/// `mid` separates the walls `a` and `b`: all three pairwise disjoint and
/// the carriers of `a` and `b` on opposite sides of `mid`.
pub fn wall_between(c: &CubeComplex, mid: WallId, a: WallId, b: WallId) -> bool {
    if mid == a || mid == b || a == b || crosses(c, mid, a) || crosses(c, mid, b) || crosses(c, a, b) {
        return false;
    }
    let side_a = plus(c, mid, edge_vertices(c, a)[0]);
    let side_b = plus(c, mid, edge_vertices(c, b)[0]);
    side_a != side_b
}

pub fn facing(c: &CubeComplex, a: WallId, b: WallId, d: WallId) -> bool {
    if crosses(c, a, b) || crosses(c, a, d) || crosses(c, b, d) {
        return false;
    }
    !wall_between(c, a, b, d) && !wall_between(c, b, a, d) && !wall_between(c, d, a, b)
}

/// Well-separation degrees by exhaustive search over subsets of common
/// crossers, memoized per complex.
pub struct WsepOracle<'a> {
    c: &'a CubeComplex,
    cache: HashMap<(WallId, WallId), usize>,
}

impl<'a> WsepOracle<'a> {
    pub fn new(c: &'a CubeComplex) -> Self {
        WsepOracle {
            c,
            cache: HashMap::new(),
        }
    }

    pub fn wsep(&mut self, a: WallId, b: WallId) -> usize {
        let key = (a.min(b), a.max(b));
        if let Some(&d) = self.cache.get(&key) {
            return d;
        }
        let c = self.c;
        let crossers: Vec<WallId> = (0..c.wall_count())
            .filter(|&w| crosses(c, w, a) && crosses(c, w, b))
            .collect();
        assert!(crossers.len() <= 20, "too many crossers for the subset oracle");
        let m = crossers.len();
        let mut facing_triples = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                for l in j + 1..m {
                    if facing(c, crossers[i], crossers[j], crossers[l]) {
                        facing_triples.push((1u32 << i) | (1 << j) | (1 << l));
                    }
                }
            }
        }
        let best = (0u32..1 << m)
            .filter(|s| facing_triples.iter().all(|t| s & t != *t))
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap_or(0);
        self.cache.insert(key, best);
        best
    }
}

/// Maximum clique size by Bron–Kerbosch over bitmask adjacency.
pub fn max_clique(adj: &[u64]) -> usize {
    fn bk(adj: &[u64], r: usize, p: u64, x: u64, best: &mut usize) {
        if p == 0 && x == 0 {
            *best = (*best).max(r);
            return;
        }
        if r + p.count_ones() as usize <= *best {
            return;
        }
        let mut p = p;
        let mut x = x;
        while p != 0 {
            let v = p.trailing_zeros() as usize;
            bk(adj, r + 1, p & adj[v], x & adj[v], best);
            p &= !(1 << v);
            x |= 1 << v;
        }
    }
    assert!(adj.len() <= 64);
    let all = if adj.len() == 64 {
        u64::MAX
    } else {
        (1u64 << adj.len()) - 1
    };
    let mut best = 0;
    bk(adj, 0, all, 0, &mut best);
    best
}

/// The unique vertex on geodesics between each pair, if exactly one exists.
pub fn median_oracle(dist: &[Vec<usize>], x: VertexId, y: VertexId, z: VertexId) -> Option<VertexId> {
    let on = |a: VertexId, b: VertexId, m: VertexId| dist[a][m] + dist[m][b] == dist[a][b];
    let mut found = (0..dist.len()).filter(|&m| on(x, y, m) && on(y, z, m) && on(x, z, m));
    let first = found.next()?;
    found.next().is_none().then_some(first)
}

/// Walls in `path` crossing order, maximum pairwise disjoint subfamily.
pub fn max_disjoint_family(c: &CubeComplex, walls: &[WallId]) -> usize {
    let adj: Vec<u64> = walls
        .iter()
        .map(|&a| {
            walls
                .iter()
                .enumerate()
                .filter(|&(_, &b)| a != b && !crosses(c, a, b))
                .fold(0u64, |m, (j, _)| m | (1 << j))
        })
        .collect();
    max_clique(&adj)
}

/// Letters are `2 * generator + inverse`.
pub type Letters = Vec<u8>;

/// Whether a word is trivial in the right-angled Artin group, by exhausting
/// commutations of adjacent letters and free cancellations.
pub fn is_trivial(word: &[u8], commute: &dyn Fn(u8, u8) -> bool) -> bool {
    let mut seen: HashSet<Letters> = HashSet::new();
    let mut queue = VecDeque::from([word.to_vec()]);
    while let Some(w) = queue.pop_front() {
        if w.is_empty() {
            return true;
        }
        if !seen.insert(w.clone()) {
            continue;
        }
        for i in 0..w.len().saturating_sub(1) {
            let (x, y) = (w[i], w[i + 1]);
            if x ^ 1 == y {
                let mut next = w.clone();
                next.drain(i..i + 2);
                queue.push_back(next);
            } else if commute(x / 2, y / 2) {
                let mut next = w.clone();
                next.swap(i, i + 1);
                queue.push_back(next);
            }
        }
    }
    false
}

pub fn inverse_word(w: &[u8]) -> Letters {
    w.iter().rev().map(|&x| x ^ 1).collect()
}

/// Ball sizes for radii `0..=max_radius` by counting word classes.
pub fn rewriting_ball_sizes(generators: u8, commute: &dyn Fn(u8, u8) -> bool, max_radius: usize) -> Vec<usize> {
    let mut reps: Vec<Letters> = vec![Vec::new()];
    let mut sizes = vec![1];
    let mut layer: Vec<Letters> = vec![Vec::new()];
    for _ in 0..max_radius {
        let mut next = Vec::new();
        for w in &layer {
            for x in 0..2 * generators {
                let mut v = w.clone();
                v.push(x);
                next.push(v);
            }
        }
        for w in &next {
            let new = reps.iter().all(|r| {
                let mut q = w.clone();
                q.extend(inverse_word(r));
                !is_trivial(&q, commute)
            });
            if new {
                reps.push(w.clone());
            }
        }
        sizes.push(reps.len());
        layer = next;
    }
    sizes
}
