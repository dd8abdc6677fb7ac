//! The well-separation distance `d_k` on vertices.
//!
//! `d_k(u, v)` is the size of a largest family of separating walls that are
//! pairwise k-well-separated. Such a family is pairwise disjoint, and
//! disjoint walls separating `u` from `v` are nested, so it is a chain in
//! the order the walls are crossed along any geodesic from `u` to `v`. When
//! `h2` separates `h1` from `h3`, every common crosser of `h1` and `h3` also
//! crosses `h2`, hence consecutive k-well-separation along the chain implies
//! pairwise. The largest family is therefore a longest path in the DAG on
//! separating walls (in crossing order) whose arcs are the k-well-separated
//! pairs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::complex::{CubeComplex, GeodesicPath, VertexId, WallId};
use crate::error::Result;
use crate::separation::SeparationTable;

/// A maximum pairwise k-well-separated family of walls separating the endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WellSepCertificate {
    pub k: usize,
    pub endpoints: (VertexId, VertexId),
    /// Walls in the order a geodesic from the first endpoint crosses them.
    pub chain: Vec<WallId>,
    /// Well-separation degree of each consecutive pair of `chain`.
    pub pair_degrees: Vec<usize>,
}

impl WellSepCertificate {
    pub fn distance(&self) -> usize {
        self.chain.len()
    }
}

/// A complex together with its precomputed wall-pair degrees.
#[derive(Clone, Debug)]
pub struct WellSepSpace<'a> {
    complex: &'a CubeComplex,
    table: SeparationTable,
}

impl<'a> WellSepSpace<'a> {
    pub fn new(complex: &'a CubeComplex) -> Self {
        WellSepSpace {
            complex,
            table: SeparationTable::new(complex),
        }
    }

    pub fn complex(&self) -> &'a CubeComplex {
        self.complex
    }

    pub fn table(&self) -> &SeparationTable {
        &self.table
    }

    fn longest_chain(&self, walls: &[WallId], k: usize) -> Vec<WallId> {
        if walls.is_empty() {
            return Vec::new();
        }
        let mut length = vec![1usize; walls.len()];
        let mut parent = vec![usize::MAX; walls.len()];
        for j in 0..walls.len() {
            for i in 0..j {
                if length[i] + 1 > length[j] && self.table.is_well_separated(walls[i], walls[j], k) {
                    length[j] = length[i] + 1;
                    parent[j] = i;
                }
            }
        }
        let mut end = 0;
        for j in 1..walls.len() {
            if length[j] > length[end] {
                end = j;
            }
        }
        let mut chain = Vec::with_capacity(length[end]);
        let mut cur = end;
        while cur != usize::MAX {
            chain.push(walls[cur]);
            cur = parent[cur];
        }
        chain.reverse();
        chain
    }

    /// `d_k(u, v)` with a certificate chain.
    pub fn dk(&self, u: VertexId, v: VertexId, k: usize) -> Result<WellSepCertificate> {
        let path = self.complex.geodesic(u, v)?;
        let chain = self.longest_chain(&path.walls(), k);
        let pair_degrees = chain
            .windows(2)
            .map(|p| self.table.wsep(p[0], p[1]).expect("chain pairs are disjoint"))
            .collect();
        Ok(WellSepCertificate {
            k,
            endpoints: (u, v),
            chain,
            pair_degrees,
        })
    }

    /// Re-checks a certificate from scratch against the complex.
    pub fn certificate_holds(&self, cert: &WellSepCertificate) -> bool {
        let (u, v) = cert.endpoints;
        let separating = cert.chain.iter().all(|&w| self.complex.separates(w, u, v));
        let pairwise = cert.chain.iter().enumerate().all(|(i, &a)| {
            cert.chain[i + 1..]
                .iter()
                .all(|&b| self.table.is_well_separated(a, b, cert.k))
        });
        let nested = cert
            .chain
            .windows(3)
            .all(|t| self.complex.wall_separates(t[1], t[0], t[2]));
        separating && pairwise && nested && cert.pair_degrees.iter().all(|&d| d <= cert.k)
    }

    /// All-pairs `d_k`.
    pub fn dk_matrix(&self, k: usize) -> DkMatrix {
        let n = self.complex.vertex_count();
        let rows: Vec<Vec<u32>> = (0..n)
            .into_par_iter()
            .map(|u| {
                (0..n)
                    .map(|v| {
                        if v <= u {
                            0
                        } else {
                            let path = self.complex.geodesic(u, v).expect("valid vertices");
                            self.longest_chain(&path.walls(), k).len() as u32
                        }
                    })
                    .collect()
            })
            .collect();
        let mut data = vec![0u32; n * n];
        for u in 0..n {
            for v in u + 1..n {
                data[u * n + v] = rows[u][v];
                data[v * n + u] = rows[u][v];
            }
        }
        DkMatrix { k, n, data }
    }
}

/// All-pairs table of `d_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DkMatrix {
    k: usize,
    n: usize,
    data: Vec<u32>,
}

impl DkMatrix {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: VertexId, v: VertexId) -> usize {
        self.data[u * self.n + v] as usize
    }

    pub fn max_entry(&self) -> usize {
        self.data.iter().copied().max().unwrap_or(0) as usize
    }
}

/// Largest additivity defect `d(x,y) + d(y,z) - d(x,z)` over points
/// `x, y, z` met in that order along a path.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProjectionDefect {
    pub defect: usize,
    /// Path positions `(i, j, l)`, `i <= j <= l`, attaining the defect.
    pub witness: (usize, usize, usize),
}

pub fn geodesic_projection_defect(dk: &DkMatrix, path: &GeodesicPath) -> ProjectionDefect {
    let pts = path.vertices();
    let mut best = ProjectionDefect {
        defect: 0,
        witness: (0, 0, 0),
    };
    for i in 0..pts.len() {
        for j in i..pts.len() {
            let dij = dk.get(pts[i], pts[j]);
            for l in j..pts.len() {
                let defect = (dij + dk.get(pts[j], pts[l])).saturating_sub(dk.get(pts[i], pts[l]));
                if defect > best.defect {
                    best = ProjectionDefect {
                        defect,
                        witness: (i, j, l),
                    };
                }
            }
        }
    }
    best
}

/// How quadruples are chosen for the four-point estimate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadrupleSample {
    /// Every 4-subset of distinct vertices.
    Exhaustive,
    /// `count` uniformly random ordered quadruples from a seeded stream.
    Random { seed: u64, count: u64 },
}

impl QuadrupleSample {
    /// Exhaustive up to 30 vertices, random beyond.
    pub fn auto(vertex_count: usize, seed: u64, count: u64) -> Self {
        if vertex_count <= 30 {
            QuadrupleSample::Exhaustive
        } else {
            QuadrupleSample::Random { seed, count }
        }
    }
}

/// Four-point hyperbolicity estimate for `d_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaReport {
    pub k: usize,
    pub sampled_quadruples: u64,
    /// Twice the defect: for pair sums `a >= b >= c`, this is `a - b`.
    pub max_defect_twice: u64,
    /// The bound `9(k + 2)`.
    pub bound: u64,
    pub witness: Option<[VertexId; 4]>,
}

impl DeltaReport {
    pub fn max_defect(&self) -> f64 {
        self.max_defect_twice as f64 / 2.0
    }

    pub fn violated(&self) -> bool {
        self.max_defect_twice > 2 * self.bound
    }
}

/// Twice the four-point defect of a quadruple.
pub fn four_point_defect_twice(dk: &DkMatrix, q: [VertexId; 4]) -> u64 {
    let [x, y, z, w] = q;
    let mut sums = [
        dk.get(x, y) + dk.get(z, w),
        dk.get(x, z) + dk.get(y, w),
        dk.get(x, w) + dk.get(y, z),
    ];
    sums.sort_unstable();
    (sums[2] - sums[1]) as u64
}

const SAMPLE_STREAMS: u64 = 64;

pub fn four_point_delta(dk: &DkMatrix, sample: QuadrupleSample) -> DeltaReport {
    let n = dk.vertex_count();
    let mut report = DeltaReport {
        k: dk.k(),
        sampled_quadruples: 0,
        max_defect_twice: 0,
        bound: 9 * (dk.k() as u64 + 2),
        witness: None,
    };
    // Per-chunk (count, best defect, witness), folded in chunk order so the
    // reported witness does not depend on scheduling.
    let chunks: Vec<(u64, u64, Option<[VertexId; 4]>)> = match sample {
        QuadrupleSample::Exhaustive => (0..n)
            .into_par_iter()
            .map(|a| {
                let mut count = 0;
                let mut best = (0, None);
                for b in a + 1..n {
                    for c in b + 1..n {
                        for d in c + 1..n {
                            count += 1;
                            let q = [a, b, c, d];
                            let defect = four_point_defect_twice(dk, q);
                            if defect > best.0 || best.1.is_none() {
                                best = (defect, Some(q));
                            }
                        }
                    }
                }
                (count, best.0, best.1)
            })
            .collect(),
        QuadrupleSample::Random { seed, count } => {
            if n == 0 {
                Vec::new()
            } else {
                (0..SAMPLE_STREAMS)
                    .into_par_iter()
                    .map(|stream| {
                        let share = count / SAMPLE_STREAMS + u64::from(stream < count % SAMPLE_STREAMS);
                        let mut rng = ChaCha8Rng::seed_from_u64(seed);
                        rng.set_stream(stream);
                        let mut best = (0, None);
                        for _ in 0..share {
                            let q = [
                                rng.gen_range(0..n),
                                rng.gen_range(0..n),
                                rng.gen_range(0..n),
                                rng.gen_range(0..n),
                            ];
                            let defect = four_point_defect_twice(dk, q);
                            if defect > best.0 || best.1.is_none() {
                                best = (defect, Some(q));
                            }
                        }
                        (share, best.0, best.1)
                    })
                    .collect()
            }
        }
    };
    for (count, defect, witness) in chunks {
        report.sampled_quadruples += count;
        if witness.is_some() && (defect > report.max_defect_twice || report.witness.is_none()) {
            report.max_defect_twice = defect;
            report.witness = witness;
        }
    }
    report
}
