//! The well-separation graph: same vertices as the complex, with an edge
//! whenever `d_k <= 10k + 4`. Its path metric is bilipschitz to `d_k`.

use std::collections::VecDeque;
use std::fmt::Write;

use rayon::prelude::*;

use crate::complex::{CubeComplex, VertexId};
use crate::error::{Error, Result};
use crate::wellsep::DkMatrix;

/// Edge threshold `10k + 4`.
pub fn gamma_threshold(k: usize) -> usize {
    10 * k + 4
}

#[derive(Clone, Debug)]
pub struct GammaGraph {
    k: usize,
    adjacency: Vec<Vec<VertexId>>,
    dist: Vec<u32>,
}

pub fn build_gamma(dk: &DkMatrix) -> GammaGraph {
    let n = dk.vertex_count();
    let threshold = gamma_threshold(dk.k());
    let adjacency: Vec<Vec<VertexId>> = (0..n)
        .into_par_iter()
        .map(|u| (0..n).filter(|&v| v != u && dk.get(u, v) <= threshold).collect())
        .collect();
    let rows: Vec<Vec<u32>> = (0..n)
        .into_par_iter()
        .map(|s| {
            let mut dist = vec![u32::MAX; n];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &adjacency[v] {
                    if dist[w] == u32::MAX {
                        dist[w] = dist[v] + 1;
                        queue.push_back(w);
                    }
                }
            }
            dist
        })
        .collect();
    GammaGraph {
        k: dk.k(),
        adjacency,
        dist: rows.concat(),
    }
}

impl GammaGraph {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adjacency[v]
    }

    /// Edges `(u, v)` with `u < v`, lexicographic.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
            .collect()
    }

    /// Path distance, `None` if disconnected.
    pub fn distance(&self, u: VertexId, v: VertexId) -> Option<usize> {
        let d = self.dist[u * self.vertex_count() + v];
        (d != u32::MAX).then_some(d as usize)
    }

    pub fn diameter(&self) -> Option<usize> {
        self.dist
            .iter()
            .try_fold(0usize, |acc, &d| (d != u32::MAX).then(|| acc.max(d as usize)))
    }

    pub fn to_dot(&self) -> String {
        dot(self.vertex_count(), &self.edges())
    }
}

/// DOT for the 1-skeleton of a complex.
pub fn complex_dot(complex: &CubeComplex) -> String {
    dot(complex.vertex_count(), complex.edges())
}

fn dot(n: usize, edges: &[(VertexId, VertexId)]) -> String {
    let mut out = String::from("graph {\n");
    for v in 0..n {
        let _ = writeln!(out, "  {v};");
    }
    for &(u, v) in edges {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BilipschitzOutcome {
    Pass,
    /// A pair breaking `d_gamma <= d_k <= (10k+4) d_gamma`.
    Fail {
        pair: (VertexId, VertexId),
        dk: usize,
        d_gamma: Option<usize>,
    },
}

impl BilipschitzOutcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, BilipschitzOutcome::Pass)
    }
}

/// Checks both sandwich inequalities for every pair, in exact integers.
pub fn bilipschitz_check(gamma: &GammaGraph, dk: &DkMatrix) -> Result<BilipschitzOutcome> {
    if gamma.k() != dk.k() || gamma.vertex_count() != dk.vertex_count() {
        return Err(Error::Input("graph and distance table disagree on k or size".into()));
    }
    let n = gamma.vertex_count();
    let factor = gamma_threshold(gamma.k());
    let failure = (0..n).into_par_iter().find_map_first(|u| {
        (u + 1..n).find_map(|v| {
            let d = dk.get(u, v);
            let ok = match gamma.distance(u, v) {
                Some(g) => g <= d && d <= factor * g,
                None => false,
            };
            (!ok).then(|| BilipschitzOutcome::Fail {
                pair: (u, v),
                dk: d,
                d_gamma: gamma.distance(u, v),
            })
        })
    });
    Ok(failure.unwrap_or(BilipschitzOutcome::Pass))
}

/// Fit of a vertex sequence in the graph against unit speed.
#[derive(Clone, Debug, PartialEq)]
pub struct QuasiGeodesicFit {
    /// Smallest `L` with `d(q_a, q_b) <= L |a - b|` (additive constant 0).
    pub multiplicative: f64,
    /// Smallest `C` with `| d(q_a, q_b) - |a - b| | <= C` (multiplicative constant 1).
    pub additive: usize,
}

/// Image of a path of the complex in the well-separation graph.
#[derive(Clone, Debug, PartialEq)]
pub struct PathProjection {
    /// The same vertices: the graph shares the vertex set of the complex.
    pub vertices: Vec<VertexId>,
    /// `d_gamma(p_0, p_i)` for every prefix.
    pub progress: Vec<usize>,
    /// Largest `d(p_i,p_j) + d(p_j,p_l) - d(p_i,p_l)` over `i <= j <= l`.
    pub additivity_defect: usize,
    /// Path positions where the progress first reaches 0, 1, 2, ...; a
    /// monotone reparameterization collapsing the steps that make no progress.
    pub reparameterization: Vec<usize>,
    pub fit: QuasiGeodesicFit,
}

impl PathProjection {
    /// Diameter of the image in the graph metric.
    pub fn image_diameter(&self, gamma: &GammaGraph) -> usize {
        let mut diameter = 0;
        for &a in &self.vertices {
            for &b in &self.vertices {
                diameter = diameter.max(gamma.distance(a, b).unwrap_or(usize::MAX));
            }
        }
        diameter
    }
}

pub fn project_path(gamma: &GammaGraph, path: &[VertexId]) -> Result<PathProjection> {
    if path.is_empty() {
        return Err(Error::Input("empty path".into()));
    }
    let n = gamma.vertex_count();
    if let Some(&v) = path.iter().find(|&&v| v >= n) {
        return Err(Error::VertexOutOfRange { id: v, count: n });
    }
    let d = |a: VertexId, b: VertexId| {
        gamma
            .distance(a, b)
            .ok_or_else(|| Error::Precondition(format!("{a} and {b} are disconnected in the graph")))
    };
    let progress = path.iter().map(|&v| d(path[0], v)).collect::<Result<Vec<_>>>()?;

    let mut additivity_defect = 0;
    for i in 0..path.len() {
        for j in i..path.len() {
            let dij = d(path[i], path[j])?;
            for l in j..path.len() {
                let defect = (dij + d(path[j], path[l])?).saturating_sub(d(path[i], path[l])?);
                additivity_defect = additivity_defect.max(defect);
            }
        }
    }

    let max_progress = progress.iter().copied().max().unwrap_or(0);
    let reparameterization: Vec<usize> = (0..=max_progress)
        .map(|level| progress.iter().position(|&p| p >= level).expect("level reached"))
        .collect();
    let mut multiplicative: f64 = 1.0;
    let mut additive = 0;
    for a in 0..reparameterization.len() {
        for b in a + 1..reparameterization.len() {
            let dist = d(path[reparameterization[a]], path[reparameterization[b]])?;
            let steps = b - a;
            multiplicative = multiplicative.max(dist as f64 / steps as f64);
            additive = additive.max(dist.abs_diff(steps));
        }
    }
    Ok(PathProjection {
        vertices: path.to_vec(),
        progress,
        additivity_defect,
        reparameterization,
        fit: QuasiGeodesicFit {
            multiplicative,
            additive,
        },
    })
}
