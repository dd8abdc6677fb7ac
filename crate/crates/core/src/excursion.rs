//! Excursion walls along a geodesic segment, Gromov products, membership
//! in the basic sets of the hyperplane topology, and an l¹ contraction
//! diagnostic.
//!
//! A segment of length `T` crosses walls at times `1..=T`. An excursion
//! sequence with constant `c` is a nonempty subsequence `(h_i, t_i)` of those
//! crossings with consecutive walls disjoint and
//!
//! ```text
//! t_1                               <= c κ(t_1)
//! t_{i+1} - t_i, wsep(h_i, h_{i+1}) <= c κ(t_{i+1})
//! T - t_last                        <= c κ(T)
//! ```

use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::complex::{CubeComplex, GeodesicPath, VertexId, WallId};
use crate::error::{Error, Result};
use crate::gauge::SublinearGauge;
use crate::separation::SeparationTable;

/// One element of an excursion sequence and the constraint that admits it.
/// For the first element `gap` is measured from the start of the segment
/// and `wsep` is `None`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExcursionStep {
    pub wall: WallId,
    pub time: usize,
    pub gap: usize,
    pub wsep: Option<usize>,
    /// `c κ(t)` at this step.
    pub bound: BigRational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExcursionReport {
    pub segment: GeodesicPath,
    pub gauge: SublinearGauge,
    pub best_constant: BigRational,
    pub steps: Vec<ExcursionStep>,
    /// `T - t_last` and its bound `c κ(T)`.
    pub tail: (usize, BigRational),
}

impl ExcursionReport {
    /// `(h_i, t_i)` in order.
    pub fn sequence(&self) -> Vec<(WallId, usize)> {
        self.steps.iter().map(|s| (s.wall, s.time)).collect()
    }

    /// Re-checks the witness against the complex, recomputing every
    /// well-separation degree.
    pub fn validate(&self, complex: &CubeComplex) -> Result<()> {
        let fail = |msg: String| Err(Error::Precondition(msg));
        let c = &self.best_constant;
        let crossings = self.segment.crossings();
        let total = self.segment.len();
        if self.steps.is_empty() {
            return fail("empty excursion sequence".into());
        }
        let mut previous: Option<&ExcursionStep> = None;
        for step in &self.steps {
            if step.time == 0 || step.time > total || crossings[step.time - 1].0 != step.wall {
                return fail(format!("wall {} is not crossed at time {}", step.wall, step.time));
            }
            let bound = c * self.gauge.eval(step.time as u64);
            if step.bound != bound {
                return fail(format!("recorded bound at time {} is wrong", step.time));
            }
            let (gap, wsep) = match previous {
                None => (step.time, None),
                Some(prev) => {
                    if prev.time >= step.time {
                        return fail("times are not increasing".into());
                    }
                    let report = complex.wsep_degree(prev.wall, step.wall)?;
                    (step.time - prev.time, Some(report.degree))
                }
            };
            if step.gap != gap || step.wsep != wsep {
                return fail(format!("recorded gap or degree at time {} is wrong", step.time));
            }
            if BigRational::from_integer(gap.into()) > bound
                || wsep.is_some_and(|w| BigRational::from_integer(w.into()) > bound)
            {
                return fail(format!("constraint broken at time {}", step.time));
            }
            previous = Some(step);
        }
        let last = self.steps.last().expect("nonempty").time;
        let tail_bound = c * self.gauge.eval(total as u64);
        if self.tail != (total - last, tail_bound.clone()) {
            return fail("recorded tail is wrong".into());
        }
        if BigRational::from_integer((total - last).into()) > tail_bound {
            return fail("tail constraint broken".into());
        }
        Ok(())
    }
}

/// Minimal excursion constant along `path`, with a witness sequence.
pub fn excursion_scan(complex: &CubeComplex, path: &GeodesicPath, gauge: &SublinearGauge) -> Result<ExcursionReport> {
    scan(complex, path, gauge, |a, b| {
        complex.wsep_degree(a, b).map(|r| r.degree).unwrap_or(0)
    })
}

/// As [`excursion_scan`], reading degrees from a precomputed table.
pub fn excursion_scan_with_table(
    complex: &CubeComplex,
    table: &SeparationTable,
    path: &GeodesicPath,
    gauge: &SublinearGauge,
) -> Result<ExcursionReport> {
    scan(complex, path, gauge, |a, b| table.wsep(a, b).unwrap_or(0))
}

fn ratio(numerator: usize, denominator: &BigRational) -> BigRational {
    BigRational::from_integer(numerator.into()) / denominator
}

fn scan(
    complex: &CubeComplex,
    path: &GeodesicPath,
    gauge: &SublinearGauge,
    wsep: impl Fn(WallId, WallId) -> usize + Sync,
) -> Result<ExcursionReport> {
    if path.is_empty() {
        return Err(Error::Input(
            "excursion scan needs a path with at least one edge".into(),
        ));
    }
    let crossings = path.crossings();
    let total = path.len();
    let kappa: Vec<BigRational> = (0..=total).map(|t| gauge.eval(t as u64)).collect();

    // Arc weights: entry, transitions (disjoint pairs only), exit.
    let entry: Vec<BigRational> = (1..=total).map(|t| ratio(t, &kappa[t])).collect();
    let exit: Vec<BigRational> = (1..=total).map(|t| ratio(total - t, &kappa[total])).collect();
    let transitions: Vec<Vec<(usize, usize, BigRational)>> = (0..total)
        .into_par_iter()
        .map(|j| {
            let (wj, tj) = crossings[j];
            (0..j)
                .filter(|&i| !complex.walls_cross(crossings[i].0, wj))
                .map(|i| {
                    let gap = tj - crossings[i].1;
                    let degree = wsep(crossings[i].0, wj);
                    (i, degree, ratio(gap.max(degree), &kappa[tj]))
                })
                .collect()
        })
        .collect();

    let mut candidates: Vec<&BigRational> = entry
        .iter()
        .chain(&exit)
        .chain(transitions.iter().flatten().map(|(_, _, w)| w))
        .collect();
    candidates.sort();
    candidates.dedup();

    let feasible = |c: &BigRational| reach(c, &entry, &exit, &transitions).is_some();
    let (mut lo, mut hi) = (0, candidates.len() - 1);
    debug_assert!(feasible(candidates[hi]));
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let best = candidates[lo].clone();
    let chosen = reach(&best, &entry, &exit, &transitions).expect("best constant is feasible");

    let mut steps = Vec::with_capacity(chosen.len());
    let mut previous: Option<usize> = None;
    for &j in &chosen {
        let (wall, time) = crossings[j];
        let (gap, degree) = match previous {
            None => (time, None),
            Some(i) => {
                let degree = transitions[j].iter().find(|arc| arc.0 == i).expect("arc exists").1;
                (time - crossings[i].1, Some(degree))
            }
        };
        steps.push(ExcursionStep {
            wall,
            time,
            gap,
            wsep: degree,
            bound: &best * &kappa[time],
        });
        previous = Some(j);
    }
    let last = steps.last().expect("nonempty").time;
    Ok(ExcursionReport {
        segment: path.clone(),
        gauge: gauge.clone(),
        tail: (total - last, &best * &kappa[total]),
        best_constant: best,
        steps,
    })
}

/// Forward reachability using arcs of weight at most `c`. Returns the
/// crossing indices of a sequence reaching the exit, each step taking the
/// lowest-index admissible predecessor.
fn reach(
    c: &BigRational,
    entry: &[BigRational],
    exit: &[BigRational],
    transitions: &[Vec<(usize, usize, BigRational)>],
) -> Option<Vec<usize>> {
    let n = entry.len();
    let mut parent: Vec<Option<Option<usize>>> = vec![None; n];
    for j in 0..n {
        if entry[j] <= *c {
            parent[j] = Some(None);
            continue;
        }
        parent[j] = transitions[j]
            .iter()
            .find(|(i, _, w)| parent[*i].is_some() && w <= c)
            .map(|(i, _, _)| Some(*i));
    }
    let end = (0..n).find(|&j| parent[j].is_some() && exit[j] <= *c)?;
    let mut chain = vec![end];
    let mut at = end;
    while let Some(Some(prev)) = parent[at] {
        chain.push(prev);
        at = prev;
    }
    chain.reverse();
    Some(chain)
}

/// `[x|y]_o`: walls separating `o` from both `x` and `y`.
pub fn gromov_product(complex: &CubeComplex, o: VertexId, x: VertexId, y: VertexId) -> Result<usize> {
    for v in [o, x, y] {
        complex.check_vertex(v)?;
    }
    let bo = complex.orientation_bits(o);
    let mut from_x = bo.clone();
    from_x.symmetric_difference_with(complex.orientation_bits(x));
    let mut from_y = bo.clone();
    from_y.symmetric_difference_with(complex.orientation_bits(y));
    from_x.intersect_with(&from_y);
    Ok(from_x.count_ones(..))
}

/// Whether every listed wall separates `o` from `x`.
pub fn hyp_basis_member(complex: &CubeComplex, o: VertexId, targets: &[WallId], x: VertexId) -> Result<bool> {
    complex.check_vertex(o)?;
    complex.check_vertex(x)?;
    for &w in targets {
        complex.check_wall(w)?;
    }
    Ok(targets.iter().all(|&w| complex.separates(w, o, x)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ContractionSample {
    pub sample: VertexId,
    pub distance: usize,
    /// Path vertices at minimal distance from the sample.
    pub nearest: Vec<VertexId>,
    pub diameter: usize,
    /// `diameter / κ(dist1(start, sample))`.
    pub ratio: f64,
}

pub fn contraction_profile(
    complex: &CubeComplex,
    path: &GeodesicPath,
    gauge: &SublinearGauge,
    samples: &[VertexId],
) -> Result<Vec<ContractionSample>> {
    for &x in samples {
        complex.check_vertex(x)?;
        if path.vertices().contains(&x) {
            return Err(Error::Precondition(format!("sample {x} lies on the path")));
        }
    }
    Ok(samples
        .par_iter()
        .map(|&x| {
            let distance = path
                .vertices()
                .iter()
                .map(|&p| complex.distance(x, p))
                .min()
                .expect("path is nonempty");
            let nearest: Vec<VertexId> = path
                .vertices()
                .iter()
                .copied()
                .filter(|&p| complex.distance(x, p) == distance)
                .collect();
            let diameter = nearest
                .iter()
                .flat_map(|&a| nearest.iter().map(move |&b| (a, b)))
                .map(|(a, b)| complex.distance(a, b))
                .max()
                .unwrap_or(0);
            let scale = gauge.eval(complex.distance(path.start(), x) as u64);
            let ratio = ratio(diameter, &scale).to_f64().unwrap_or(f64::NAN);
            ContractionSample {
                sample: x,
                distance,
                nearest,
                diameter,
                ratio,
            }
        })
        .collect())
}

/// Minimal excursion constant by bottleneck dynamic programming; used to
/// cross-check the candidate search.
#[cfg(test)]
fn bottleneck_oracle(complex: &CubeComplex, path: &GeodesicPath, gauge: &SublinearGauge) -> BigRational {
    let crossings = path.crossings();
    let total = path.len();
    let k = |t: usize| gauge.eval(t as u64);
    let mut best: Vec<BigRational> = Vec::with_capacity(total);
    for j in 0..total {
        let (wj, tj) = crossings[j];
        let mut value = ratio(tj, &k(tj));
        for i in 0..j {
            let (wi, ti) = crossings[i];
            if complex.walls_cross(wi, wj) {
                continue;
            }
            let degree = complex.wsep_degree(wi, wj).unwrap().degree;
            let arc = ratio((tj - ti).max(degree), &k(tj));
            let through = if arc > best[i] { arc } else { best[i].clone() };
            if through < value {
                value = through;
            }
        }
        best.push(value);
    }
    (0..total)
        .map(|j| {
            let out = ratio(total - crossings[j].1, &k(total));
            if out > best[j] {
                out
            } else {
                best[j].clone()
            }
        })
        .min()
        .unwrap_or_else(<BigRational as num_traits::Zero>::zero)
}
