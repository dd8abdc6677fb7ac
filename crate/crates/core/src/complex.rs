//! Finite CAT(0) cube complexes, stored as their 1-skeleton (a median graph).
//!
//! Cubes are never enumerated. Everything downstream depends only on the
//! hyperplanes (walls), which are recovered as the classes of the
//! transitive closure of the "opposite edges of a square" relation.

use std::collections::{HashMap, VecDeque};

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::clique::max_clique;
use crate::error::{Error, Result};

pub type VertexId = usize;
pub type WallId = usize;

/// One of the two halfspaces bounded by a wall.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Minus,
    Plus,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Minus => Side::Plus,
            Side::Plus => Side::Minus,
        }
    }
}

/// A wall: an equivalence class of parallel edges together with the two
/// halfspaces its removal produces. The minus side always contains vertex 0.
#[derive(Clone, Debug)]
pub struct Hyperplane {
    id: WallId,
    edges: Vec<(VertexId, VertexId)>,
    minus: FixedBitSet,
    plus: FixedBitSet,
}

impl Hyperplane {
    pub fn id(&self) -> WallId {
        self.id
    }

    /// Edges dual to this wall, each as `(low, high)` and sorted.
    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn halfspace(&self, side: Side) -> &FixedBitSet {
        match side {
            Side::Minus => &self.minus,
            Side::Plus => &self.plus,
        }
    }

    pub fn side_of(&self, v: VertexId) -> Side {
        if self.plus.contains(v) {
            Side::Plus
        } else {
            Side::Minus
        }
    }

    pub fn halfspace_vertices(&self, side: Side) -> Vec<VertexId> {
        self.halfspace(side).ones().collect()
    }
}

/// A choice of halfspace for every wall. Bit `w` set means the plus side of `w`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexOrientation {
    plus: FixedBitSet,
}

impl VertexOrientation {
    pub fn from_sides(sides: &[Side]) -> Self {
        let mut plus = FixedBitSet::with_capacity(sides.len());
        for (w, s) in sides.iter().enumerate() {
            plus.set(w, *s == Side::Plus);
        }
        VertexOrientation { plus }
    }

    pub fn side(&self, wall: WallId) -> Side {
        if self.plus.contains(wall) {
            Side::Plus
        } else {
            Side::Minus
        }
    }

    pub fn len(&self) -> usize {
        self.plus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.plus.len() == 0
    }
}

/// A combinatorial geodesic. Crossing `(w, t)` means wall `w` is crossed by
/// the edge from `vertices[t - 1]` to `vertices[t]`, so times run `1..=len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeodesicPath {
    vertices: Vec<VertexId>,
    crossings: Vec<(WallId, usize)>,
}

impl GeodesicPath {
    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn crossings(&self) -> &[(WallId, usize)] {
        &self.crossings
    }

    /// Walls in crossing order.
    pub fn walls(&self) -> Vec<WallId> {
        self.crossings.iter().map(|&(w, _)| w).collect()
    }

    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn start(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn end(&self) -> VertexId {
        *self.vertices.last().expect("geodesic has at least one vertex")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MedianValidation {
    Pass,
    /// A triple of distinct vertices whose three pairwise intervals meet in
    /// `medians` vertices (0 or at least 2).
    Fail {
        triple: (VertexId, VertexId, VertexId),
        medians: usize,
    },
}

impl MedianValidation {
    pub fn is_pass(&self) -> bool {
        matches!(self, MedianValidation::Pass)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HellyOutcome {
    /// Pairwise intersecting and the total intersection contains `witness`.
    Pass { witness: VertexId },
    /// Some pair of sets is disjoint, so the property holds vacuously.
    Vacuous { disjoint_pair: (usize, usize) },
    /// Pairwise intersecting but with empty total intersection.
    Fail,
}

/// Checked simple graph: sorted adjacency lists and lexicographically sorted edges.
struct Skeleton {
    adjacency: Vec<Vec<VertexId>>,
    edges: Vec<(VertexId, VertexId)>,
}

impl Skeleton {
    fn new(vertex_count: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::Empty);
        }
        let mut normalized = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            for v in [a, b] {
                if v >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        id: v,
                        count: vertex_count,
                    });
                }
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            normalized.push((a.min(b), a.max(b)));
        }
        normalized.sort_unstable();
        if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        let mut adjacency = vec![Vec::new(); vertex_count];
        for &(a, b) in &normalized {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Skeleton {
            adjacency,
            edges: normalized,
        })
    }

    fn bfs(&self, source: VertexId) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.adjacency.len()];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adjacency[v] {
                if dist[w] == u32::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    fn all_pairs(&self) -> Result<Vec<Vec<u32>>> {
        let n = self.adjacency.len();
        let first = self.bfs(0);
        if let Some(v) = first.iter().position(|&d| d == u32::MAX) {
            return Err(Error::Disconnected(v));
        }
        let mut table: Vec<Vec<u32>> = (1..n).into_par_iter().map(|s| self.bfs(s)).collect();
        table.insert(0, first);
        Ok(table)
    }
}

/// Median check by brute force over all triples of distinct vertices, using
/// interval bitsets.
fn median_triples(dist: &[Vec<u32>]) -> MedianValidation {
    let n = dist.len();
    let interval = |x: usize, y: usize| {
        let mut set = FixedBitSet::with_capacity(n);
        let dxy = dist[x][y];
        for w in 0..n {
            if dist[x][w] + dist[w][y] == dxy {
                set.insert(w);
            }
        }
        set
    };
    let intervals: Vec<Vec<FixedBitSet>> = (0..n)
        .into_par_iter()
        .map(|x| {
            (0..n)
                .map(|y| if y > x { interval(x, y) } else { FixedBitSet::new() })
                .collect()
        })
        .collect();
    let failure = (0..n).into_par_iter().find_map_first(|x| {
        for y in x + 1..n {
            let ixy = intervals[x][y].as_slice();
            for z in y + 1..n {
                let ixz = intervals[x][z].as_slice();
                let iyz = intervals[y][z].as_slice();
                let count: u32 = ixy
                    .iter()
                    .zip(ixz)
                    .zip(iyz)
                    .map(|((a, b), c)| (a & b & c).count_ones())
                    .sum();
                if count != 1 {
                    return Some(MedianValidation::Fail {
                        triple: (x, y, z),
                        medians: count as usize,
                    });
                }
            }
        }
        None
    });
    failure.unwrap_or(MedianValidation::Pass)
}

/// Checks that a connected simple graph is a median graph: every triple has
/// exactly one vertex lying in all three pairwise intervals.
pub fn validate_median(vertex_count: usize, edges: &[(VertexId, VertexId)]) -> Result<MedianValidation> {
    let skeleton = Skeleton::new(vertex_count, edges)?;
    let dist = skeleton.all_pairs()?;
    Ok(median_triples(&dist))
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.0[root] != root {
            root = self.0[root];
        }
        let mut cur = x;
        while self.0[cur] != root {
            let next = self.0[cur];
            self.0[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// A validated finite median graph with its derived wall structure.
#[derive(Clone, Debug)]
pub struct CubeComplex {
    adjacency: Vec<Vec<VertexId>>,
    edges: Vec<(VertexId, VertexId)>,
    edge_wall: HashMap<(VertexId, VertexId), WallId>,
    walls: Vec<Hyperplane>,
    orientations: Vec<FixedBitSet>,
    orientation_index: HashMap<FixedBitSet, VertexId>,
    dist: Vec<Vec<u32>>,
    crossing: Vec<FixedBitSet>,
    dimension: usize,
}

impl CubeComplex {
    /// Builds a complex from its 1-skeleton. Fails unless the graph is a
    /// connected simple median graph.
    pub fn new(vertex_count: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let skeleton = Skeleton::new(vertex_count, edges)?;
        let dist = skeleton.all_pairs()?;
        if let MedianValidation::Fail { triple, medians } = median_triples(&dist) {
            return Err(Error::NotMedian(triple.0, triple.1, triple.2, medians));
        }
        let Skeleton { adjacency, edges } = skeleton;
        let walls = derive_walls(&adjacency, &edges)?;
        Ok(Self::assemble(adjacency, edges, walls, dist))
    }

    /// The one-vertex complex.
    pub fn point() -> Self {
        Self::new(1, &[]).expect("a single vertex is a median graph")
    }

    fn assemble(
        adjacency: Vec<Vec<VertexId>>,
        edges: Vec<(VertexId, VertexId)>,
        walls: Vec<Hyperplane>,
        dist: Vec<Vec<u32>>,
    ) -> Self {
        let n = adjacency.len();
        let m = walls.len();
        let mut edge_wall = HashMap::with_capacity(edges.len());
        for wall in &walls {
            for &e in &wall.edges {
                edge_wall.insert(e, wall.id);
            }
        }
        let mut orientations = vec![FixedBitSet::with_capacity(m); n];
        for wall in &walls {
            for v in wall.plus.ones() {
                orientations[v].insert(wall.id);
            }
        }
        let orientation_index = orientations.iter().enumerate().map(|(v, o)| (o.clone(), v)).collect();
        let mut crossing = vec![FixedBitSet::with_capacity(m); m];
        for a in 0..m {
            for b in a + 1..m {
                if quadrants_nonempty(&walls[a], &walls[b]) {
                    crossing[a].insert(b);
                    crossing[b].insert(a);
                }
            }
        }
        let dimension = if m == 0 { 0 } else { max_clique(&crossing).len() };
        CubeComplex {
            adjacency,
            edges,
            edge_wall,
            walls,
            orientations,
            orientation_index,
            dist,
            crossing,
            dimension,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn wall_count(&self) -> usize {
        self.walls.len()
    }

    /// Largest number of pairwise crossing walls (0 for a single vertex).
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn diameter(&self) -> usize {
        self.dist.iter().flat_map(|row| row.iter()).copied().max().unwrap_or(0) as usize
    }

    /// Edges as `(low, high)`, lexicographically sorted.
    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adjacency[v]
    }

    pub fn walls(&self) -> &[Hyperplane] {
        &self.walls
    }

    pub fn wall(&self, id: WallId) -> &Hyperplane {
        &self.walls[id]
    }

    pub fn wall_of_edge(&self, a: VertexId, b: VertexId) -> Option<WallId> {
        self.edge_wall.get(&(a.min(b), a.max(b))).copied()
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                id: v,
                count: self.vertex_count(),
            })
        }
    }

    pub fn check_wall(&self, w: WallId) -> Result<()> {
        if w < self.wall_count() {
            Ok(())
        } else {
            Err(Error::WallOutOfRange {
                id: w,
                count: self.wall_count(),
            })
        }
    }

    /// Graph distance. Panics on out-of-range ids; see [`CubeComplex::dist1`].
    pub fn distance(&self, u: VertexId, v: VertexId) -> usize {
        self.dist[u][v] as usize
    }

    /// Distance row from `u` (BFS distances in edge units).
    pub fn distances_from(&self, u: VertexId) -> &[u32] {
        &self.dist[u]
    }

    pub fn dist1(&self, u: VertexId, v: VertexId) -> Result<usize> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(self.distance(u, v))
    }

    /// Walls with `u` and `v` on opposite sides, ascending by id.
    pub fn separating_set(&self, u: VertexId, v: VertexId) -> Result<Vec<WallId>> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(self.orientations[u]
            .symmetric_difference(&self.orientations[v])
            .collect())
    }

    pub fn separates(&self, wall: WallId, u: VertexId, v: VertexId) -> bool {
        self.orientations[u].contains(wall) != self.orientations[v].contains(wall)
    }

    pub fn orientation(&self, v: VertexId) -> VertexOrientation {
        VertexOrientation {
            plus: self.orientations[v].clone(),
        }
    }

    pub fn orientation_bits(&self, v: VertexId) -> &FixedBitSet {
        &self.orientations[v]
    }

    /// Whether the chosen halfspaces pairwise intersect.
    pub fn is_consistent(&self, orientation: &VertexOrientation) -> bool {
        let m = self.wall_count();
        if orientation.len() != m {
            return false;
        }
        (0..m).all(|a| {
            let ha = self.walls[a].halfspace(orientation.side(a));
            (a + 1..m).all(|b| !ha.is_disjoint(self.walls[b].halfspace(orientation.side(b))))
        })
    }

    /// The vertex realizing an orientation, if any.
    pub fn realize(&self, orientation: &VertexOrientation) -> Option<VertexId> {
        self.orientation_index.get(&orientation.plus).copied()
    }

    /// The vertex on the majority side of every wall.
    pub fn median(&self, x: VertexId, y: VertexId, z: VertexId) -> Result<VertexId> {
        for v in [x, y, z] {
            self.check_vertex(v)?;
        }
        let (a, b, c) = (&self.orientations[x], &self.orientations[y], &self.orientations[z]);
        let mut majority = FixedBitSet::with_capacity(self.wall_count());
        for w in 0..self.wall_count() {
            let votes = a.contains(w) as u8 + b.contains(w) as u8 + c.contains(w) as u8;
            majority.set(w, votes >= 2);
        }
        Ok(self
            .orientation_index
            .get(&majority)
            .copied()
            .expect("median graphs realize every majority orientation"))
    }

    fn interval_bits(&self, u: VertexId, v: VertexId) -> FixedBitSet {
        let n = self.vertex_count();
        let (du, dv) = (&self.dist[u], &self.dist[v]);
        let d = du[v];
        let mut set = FixedBitSet::with_capacity(n);
        for w in 0..n {
            if du[w] + dv[w] == d {
                set.insert(w);
            }
        }
        set
    }

    /// `{ w : d(u,w) + d(w,v) = d(u,v) }`, ascending.
    pub fn interval(&self, u: VertexId, v: VertexId) -> Result<Vec<VertexId>> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(self.interval_bits(u, v).ones().collect())
    }

    /// The geodesic from `u` to `v` that always steps to the lowest-id
    /// neighbour one step closer to `v`.
    pub fn geodesic(&self, u: VertexId, v: VertexId) -> Result<GeodesicPath> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let to_target = &self.dist[v];
        let mut vertices = vec![u];
        let mut crossings = Vec::new();
        let mut cur = u;
        while cur != v {
            let next = self.adjacency[cur]
                .iter()
                .copied()
                .find(|&w| to_target[w] + 1 == to_target[cur])
                .expect("a closer neighbour exists in a connected graph");
            let wall = self.wall_of_edge(cur, next).expect("every edge has a wall");
            vertices.push(next);
            crossings.push((wall, vertices.len() - 1));
            cur = next;
        }
        Ok(GeodesicPath { vertices, crossings })
    }

    /// Wraps an arbitrary vertex sequence as a geodesic after checking it is one.
    pub fn path_from_vertices(&self, vertices: Vec<VertexId>) -> Result<GeodesicPath> {
        if vertices.is_empty() {
            return Err(Error::Input("empty path".into()));
        }
        for &v in &vertices {
            self.check_vertex(v)?;
        }
        let mut crossings = Vec::with_capacity(vertices.len() - 1);
        for (t, pair) in vertices.windows(2).enumerate() {
            let wall = self
                .wall_of_edge(pair[0], pair[1])
                .ok_or_else(|| Error::Input(format!("{} and {} are not adjacent", pair[0], pair[1])))?;
            crossings.push((wall, t + 1));
        }
        let (first, last) = (vertices[0], vertices[vertices.len() - 1]);
        if self.distance(first, last) != vertices.len() - 1 {
            return Err(Error::Input(format!(
                "path of length {} between vertices at distance {} is not geodesic",
                vertices.len() - 1,
                self.distance(first, last)
            )));
        }
        Ok(GeodesicPath { vertices, crossings })
    }

    fn to_bits(&self, set: &[VertexId]) -> Result<FixedBitSet> {
        let mut bits = FixedBitSet::with_capacity(self.vertex_count());
        for &v in set {
            self.check_vertex(v)?;
            bits.insert(v);
        }
        Ok(bits)
    }

    /// Smallest interval-closed superset, by closing under intervals until
    /// nothing new appears.
    pub fn hull(&self, set: &[VertexId]) -> Result<Vec<VertexId>> {
        if set.is_empty() {
            return Err(Error::Precondition("hull of an empty set".into()));
        }
        let mut members = self.to_bits(set)?;
        let mut order: Vec<VertexId> = members.ones().collect();
        let mut next = 0;
        while next < order.len() {
            let w = order[next];
            for i in 0..next {
                let u = order[i];
                for x in self.interval_bits(u, w).ones() {
                    if !members.put(x) {
                        order.push(x);
                    }
                }
            }
            next += 1;
        }
        Ok(members.ones().collect())
    }

    /// Intersection of all halfspaces containing the set.
    pub fn halfspace_hull(&self, set: &[VertexId]) -> Result<Vec<VertexId>> {
        if set.is_empty() {
            return Err(Error::Precondition("hull of an empty set".into()));
        }
        let bits = self.to_bits(set)?;
        let mut result = FixedBitSet::with_capacity(self.vertex_count());
        result.insert_range(..);
        for wall in &self.walls {
            for side in [Side::Minus, Side::Plus] {
                if bits.is_subset(wall.halfspace(side)) {
                    result.intersect_with(wall.halfspace(side));
                }
            }
        }
        Ok(result.ones().collect())
    }

    pub fn is_convex(&self, set: &[VertexId]) -> Result<bool> {
        if set.is_empty() {
            return Ok(true);
        }
        let bits = self.to_bits(set)?;
        Ok(self.hull(set)?.len() == bits.count_ones(..))
    }

    /// Nearest-point projection onto a convex set.
    pub fn gate(&self, x: VertexId, set: &[VertexId]) -> Result<VertexId> {
        self.check_vertex(x)?;
        if set.is_empty() || !self.is_convex(set)? {
            return Err(Error::Precondition("gate target must be a nonempty convex set".into()));
        }
        let row = &self.dist[x];
        let best = set.iter().map(|&v| row[v]).min().expect("nonempty");
        let mut nearest = set.iter().copied().filter(|&v| row[v] == best);
        let gate = nearest.next().expect("nonempty");
        debug_assert!(nearest.all(|v| v == gate), "gates of convex sets are unique");
        Ok(gate)
    }

    /// Helly property for a family of convex sets.
    pub fn helly_check(&self, subsets: &[Vec<VertexId>]) -> Result<HellyOutcome> {
        let mut bits = Vec::with_capacity(subsets.len());
        for s in subsets {
            if !self.is_convex(s)? {
                return Err(Error::Precondition("helly_check needs convex sets".into()));
            }
            bits.push(self.to_bits(s)?);
        }
        for i in 0..bits.len() {
            for j in i + 1..bits.len() {
                if bits[i].is_disjoint(&bits[j]) {
                    return Ok(HellyOutcome::Vacuous { disjoint_pair: (i, j) });
                }
            }
        }
        let mut total = FixedBitSet::with_capacity(self.vertex_count());
        total.insert_range(..);
        for b in &bits {
            total.intersect_with(b);
        }
        Ok(match total.minimum() {
            Some(witness) => HellyOutcome::Pass { witness },
            None => HellyOutcome::Fail,
        })
    }

    /// Whether all four quadrants of the two walls are nonempty.
    pub fn crosses(&self, a: WallId, b: WallId) -> Result<bool> {
        self.check_wall(a)?;
        self.check_wall(b)?;
        if a == b {
            return Err(Error::Input(format!("wall {a} compared with itself")));
        }
        Ok(self.crossing[a].contains(b))
    }

    /// Unchecked crossing test for distinct valid walls.
    pub fn walls_cross(&self, a: WallId, b: WallId) -> bool {
        self.crossing[a].contains(b)
    }

    /// Walls crossing `w`.
    pub fn crossing_set(&self, w: WallId) -> &FixedBitSet {
        &self.crossing[w]
    }
}

fn quadrants_nonempty(a: &Hyperplane, b: &Hyperplane) -> bool {
    [Side::Minus, Side::Plus].iter().all(|&sa| {
        [Side::Minus, Side::Plus]
            .iter()
            .all(|&sb| !a.halfspace(sa).is_disjoint(b.halfspace(sb)))
    })
}

/// Recovers walls as classes of the square-opposite relation and checks
/// that each class cuts the graph into exactly two halfspaces.
fn derive_walls(adjacency: &[Vec<VertexId>], edges: &[(VertexId, VertexId)]) -> Result<Vec<Hyperplane>> {
    let n = adjacency.len();
    let index: HashMap<(VertexId, VertexId), usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let edge_id = |a: VertexId, b: VertexId| index[&(a.min(b), a.max(b))];
    let mut uf = UnionFind((0..edges.len()).collect());
    for a in 0..n {
        let nbrs = &adjacency[a];
        for (i, &b) in nbrs.iter().enumerate() {
            for &c in &nbrs[i + 1..] {
                // Squares a-b-d-c with d a common neighbour of b and c other than a.
                for &d in &adjacency[b] {
                    if d != a && adjacency[c].binary_search(&d).is_ok() {
                        uf.union(edge_id(a, b), edge_id(c, d));
                        uf.union(edge_id(a, c), edge_id(b, d));
                    }
                }
            }
        }
    }

    let mut class_of_root: HashMap<usize, usize> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for e in 0..edges.len() {
        let root = uf.find(e);
        let id = *class_of_root.entry(root).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[id].push(e);
    }

    let mut walls = Vec::with_capacity(classes.len());
    let mut removed = vec![false; edges.len()];
    for (id, class) in classes.into_iter().enumerate() {
        for &e in &class {
            removed[e] = true;
        }
        let mut component = vec![usize::MAX; n];
        let mut count = 0;
        for start in 0..n {
            if component[start] != usize::MAX {
                continue;
            }
            component[start] = count;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &w in &adjacency[v] {
                    if component[w] == usize::MAX && !removed[edge_id(v, w)] {
                        component[w] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        let (ea, eb) = edges[class[0]];
        let splits = count == 2
            && class.iter().all(|&e| {
                let (a, b) = edges[e];
                component[a] != component[b]
            });
        if !splits {
            return Err(Error::Structural(ea, eb));
        }
        for &e in &class {
            removed[e] = false;
        }
        let mut minus = FixedBitSet::with_capacity(n);
        let mut plus = FixedBitSet::with_capacity(n);
        for (v, &c) in component.iter().enumerate() {
            if c == component[0] {
                minus.insert(v);
            } else {
                plus.insert(v);
            }
        }
        walls.push(Hyperplane {
            id,
            edges: class.iter().map(|&e| edges[e]).collect(),
            minus,
            plus,
        });
    }
    Ok(walls)
}
