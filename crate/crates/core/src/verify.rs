//! Runs the exact metric checks over a set of instances.
//!
//! Each check produces one line
//! `CHECK <id> k=<k> <instance> PASS|FAIL <detail>`; checks that do not
//! depend on a level print `k=-`.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{CubeComplex, GeodesicPath, HellyOutcome};
use crate::error::{Error, Result};
use crate::excursion::gromov_product;
use crate::gamma::{bilipschitz_check, build_gamma, BilipschitzOutcome};
use crate::separation::SeparationTable;
use crate::suite::{sample_geodesics, Instance};
use crate::wellsep::{four_point_delta, geodesic_projection_defect, DkMatrix, QuadrupleSample, WellSepSpace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CheckId {
    /// Distance equals the number of separating walls, all pairs.
    DistEqWalls,
    /// Pairwise intersecting convex families have a common point.
    Helly,
    /// A geodesic crossing `dim * k` walls crosses a chain of `k`.
    ChainInGeodesic,
    /// `d_k` reverse triangle defect along geodesics is at most `k + 3`.
    ProjectionDefect,
    /// `d_gamma <= d_k <= (10k + 4) d_gamma`.
    Bilipschitz,
    /// Four-point defect of `d_k` is at most `9(k + 2)`.
    FourPoint,
    /// `wsep(h1, h3) <= min(wsep(h1, h2), wsep(h2, h3))` when `h2` separates.
    WsepMonotone,
    /// `[x|y]_o = dist(o, median(o, x, y))`.
    GromovMedian,
}

impl CheckId {
    pub const ALL: [CheckId; 8] = [
        CheckId::DistEqWalls,
        CheckId::Helly,
        CheckId::ChainInGeodesic,
        CheckId::ProjectionDefect,
        CheckId::Bilipschitz,
        CheckId::FourPoint,
        CheckId::WsepMonotone,
        CheckId::GromovMedian,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckId::DistEqWalls => "L2-dist-eq-walls",
            CheckId::Helly => "HELLY",
            CheckId::ChainInGeodesic => "C3-chain-in-geodesic",
            CheckId::ProjectionDefect => "L6-projection-defect",
            CheckId::Bilipschitz => "L6-bilipschitz",
            CheckId::FourPoint => "P6-fourpoint-9k2",
            CheckId::WsepMonotone => "WSEP-monotone",
            CheckId::GromovMedian => "GROMOV-median",
        }
    }

    pub fn uses_level(self) -> bool {
        matches!(
            self,
            CheckId::ProjectionDefect | CheckId::Bilipschitz | CheckId::FourPoint
        )
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckId::ALL
            .into_iter()
            .find(|c| c.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Input(format!("unknown check {s:?}")))
    }
}

#[derive(Clone, Debug)]
pub struct VerifyPlan {
    pub instances: Vec<Instance>,
    pub levels: Vec<usize>,
    pub checks: Vec<CheckId>,
    pub seed: u64,
    /// Random geodesics per instance, on top of one diametral geodesic.
    pub geodesic_budget: usize,
    /// Random quadruples for instances above 30 vertices.
    pub quadruple_budget: u64,
    /// Random convex families per instance for the Helly check.
    pub helly_budget: usize,
}

impl VerifyPlan {
    pub fn new(instances: Vec<Instance>, levels: Vec<usize>, checks: Vec<CheckId>) -> Self {
        VerifyPlan {
            instances,
            levels,
            checks,
            seed: 0,
            geodesic_budget: 24,
            quadruple_budget: 100_000,
            helly_budget: 200,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.instances.is_empty() {
            return Err(Error::Input("verify plan has no instances".into()));
        }
        if self.checks.is_empty() {
            return Err(Error::Input("verify plan has no checks".into()));
        }
        if self.levels.is_empty() && self.checks.iter().any(|c| c.uses_level()) {
            return Err(Error::Input("verify plan has level checks but no levels".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub check: CheckId,
    pub k: Option<usize>,
    pub instance: String,
    pub pass: bool,
    pub detail: String,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.k.map_or_else(|| "-".to_string(), |k| k.to_string());
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        write!(
            f,
            "CHECK {} k={k} {} {verdict} {}",
            self.check, self.instance, self.detail
        )
    }
}

/// Lazily computed data shared by the checks of one instance.
struct Context<'a> {
    complex: &'a CubeComplex,
    seed: u64,
    geodesic_budget: usize,
    space: Option<WellSepSpace<'a>>,
    geodesics: Option<Vec<GeodesicPath>>,
    matrices: Vec<(usize, DkMatrix)>,
}

impl<'a> Context<'a> {
    fn space(&mut self) -> &WellSepSpace<'a> {
        let complex = self.complex;
        self.space.get_or_insert_with(|| WellSepSpace::new(complex))
    }

    fn table(&mut self) -> &SeparationTable {
        self.space().table()
    }

    fn geodesics(&mut self) -> Result<&[GeodesicPath]> {
        if self.geodesics.is_none() {
            self.geodesics = Some(sample_geodesics(self.complex, self.seed, self.geodesic_budget)?);
        }
        Ok(self.geodesics.as_deref().expect("just set"))
    }

    fn dk(&mut self, k: usize) -> &DkMatrix {
        if let Some(i) = self.matrices.iter().position(|(level, _)| *level == k) {
            return &self.matrices[i].1;
        }
        let matrix = self.space().dk_matrix(k);
        self.matrices.push((k, matrix));
        &self.matrices.last().expect("just pushed").1
    }
}

pub fn run_verify(plan: &VerifyPlan) -> Result<Vec<CheckOutcome>> {
    plan.validate()?;
    let mut outcomes = Vec::new();
    for instance in &plan.instances {
        let mut cx = Context {
            complex: &instance.complex,
            seed: plan.seed,
            geodesic_budget: plan.geodesic_budget,
            space: None,
            geodesics: None,
            matrices: Vec::new(),
        };
        for &check in &plan.checks {
            let levels: Vec<Option<usize>> = if check.uses_level() {
                plan.levels.iter().copied().map(Some).collect()
            } else {
                vec![None]
            };
            for k in levels {
                let (pass, detail) = run_check(check, k, &mut cx, plan)?;
                outcomes.push(CheckOutcome {
                    check,
                    k,
                    instance: instance.name.clone(),
                    pass,
                    detail,
                });
            }
        }
    }
    Ok(outcomes)
}

fn run_check(check: CheckId, k: Option<usize>, cx: &mut Context<'_>, plan: &VerifyPlan) -> Result<(bool, String)> {
    let complex = cx.complex;
    let n = complex.vertex_count();
    let level = k.unwrap_or(0);
    Ok(match check {
        CheckId::DistEqWalls => {
            for u in 0..n {
                for v in u + 1..n {
                    let walls = complex.separating_set(u, v)?.len();
                    let dist = complex.distance(u, v);
                    if walls != dist {
                        return Ok((false, format!("pair={u},{v} dist={dist} walls={walls}")));
                    }
                }
            }
            (true, format!("pairs={}", n * (n - 1) / 2))
        }
        CheckId::Helly => helly(complex, plan.seed, plan.helly_budget)?,
        CheckId::ChainInGeodesic => {
            let dim = complex.dimension();
            let paths = cx.geodesics()?;
            let mut min_slack: Option<isize> = None;
            for path in paths {
                if dim == 0 {
                    continue;
                }
                let needed = path.len() / dim;
                let chain = complex.longest_chain(&path.walls())?;
                let slack = chain.len() as isize - needed as isize;
                min_slack = Some(min_slack.map_or(slack, |s| s.min(slack)));
                if slack < 0 {
                    return Ok((
                        false,
                        format!(
                            "path={}->{} length={} chain={}",
                            path.start(),
                            path.end(),
                            path.len(),
                            chain.len()
                        ),
                    ));
                }
            }
            let slack = min_slack.map_or_else(|| "-".to_string(), |s| s.to_string());
            (true, format!("geodesics={} min_slack={slack}", paths.len()))
        }
        CheckId::ProjectionDefect => {
            let paths = cx.geodesics()?.to_vec();
            let dk = cx.dk(level);
            let mut worst = 0;
            for path in &paths {
                let defect = geodesic_projection_defect(dk, path);
                worst = worst.max(defect.defect);
                if defect.defect > level + 3 {
                    let (i, j, l) = defect.witness;
                    let p = path.vertices();
                    return Ok((
                        false,
                        format!(
                            "triple={},{},{} defect={} bound={}",
                            p[i],
                            p[j],
                            p[l],
                            defect.defect,
                            level + 3
                        ),
                    ));
                }
            }
            (
                true,
                format!("geodesics={} max_defect={worst} bound={}", paths.len(), level + 3),
            )
        }
        CheckId::Bilipschitz => {
            let dk = cx.dk(level);
            let gamma = build_gamma(dk);
            match bilipschitz_check(&gamma, dk)? {
                BilipschitzOutcome::Pass => (true, format!("pairs={} edges={}", n * (n - 1) / 2, gamma.edge_count())),
                BilipschitzOutcome::Fail { pair, dk, d_gamma } => {
                    let g = d_gamma.map_or_else(|| "inf".to_string(), |d| d.to_string());
                    (false, format!("pair={},{} dk={dk} d_gamma={g}", pair.0, pair.1))
                }
            }
        }
        CheckId::FourPoint => {
            let sample = QuadrupleSample::auto(n, plan.seed, plan.quadruple_budget);
            let report = four_point_delta(cx.dk(level), sample);
            let mode = if matches!(sample, QuadrupleSample::Exhaustive) {
                "exhaustive"
            } else {
                "sampled"
            };
            (
                !report.violated(),
                format!(
                    "{mode} quadruples={} max_defect={} bound={}",
                    report.sampled_quadruples,
                    report.max_defect(),
                    report.bound
                ),
            )
        }
        CheckId::WsepMonotone => {
            let m = complex.wall_count();
            let table = cx.table().clone();
            let mut triples = 0usize;
            for h2 in 0..m {
                for h1 in 0..m {
                    for h3 in h1 + 1..m {
                        if !complex.wall_separates(h2, h1, h3) {
                            continue;
                        }
                        triples += 1;
                        let outer = table.wsep(h1, h3).expect("separated walls are disjoint");
                        let left = table.wsep(h1, h2).expect("disjoint");
                        let right = table.wsep(h2, h3).expect("disjoint");
                        if outer > left.min(right) {
                            return Ok((
                                false,
                                format!("walls={h1},{h2},{h3} outer={outer} inner={left},{right}"),
                            ));
                        }
                    }
                }
            }
            (true, format!("nested_triples={triples}"))
        }
        CheckId::GromovMedian => {
            let triples: Vec<[usize; 3]> = if n <= 64 {
                (0..n)
                    .flat_map(|o| (0..n).flat_map(move |x| (0..n).map(move |y| [o, x, y])))
                    .collect()
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
                (0..50_000)
                    .map(|_| [rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)])
                    .collect()
            };
            for &[o, x, y] in &triples {
                let product = gromov_product(complex, o, x, y)?;
                let expected = complex.distance(o, complex.median(o, x, y)?);
                if product != expected {
                    return Ok((
                        false,
                        format!("triple={o},{x},{y} product={product} median_distance={expected}"),
                    ));
                }
            }
            (true, format!("triples={}", triples.len()))
        }
    })
}

/// Random families of three convex sets, each an interval or a halfspace.
fn helly(complex: &CubeComplex, seed: u64, budget: usize) -> Result<(bool, String)> {
    let n = complex.vertex_count();
    let m = complex.wall_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut intersecting = 0;
    for _ in 0..budget {
        let family: Vec<Vec<usize>> = (0..3)
            .map(|_| {
                if m > 0 && rng.gen_bool(0.5) {
                    let side = if rng.gen_bool(0.5) {
                        crate::Side::Plus
                    } else {
                        crate::Side::Minus
                    };
                    Ok(complex.wall(rng.gen_range(0..m)).halfspace_vertices(side))
                } else {
                    complex.interval(rng.gen_range(0..n), rng.gen_range(0..n))
                }
            })
            .collect::<Result<_>>()?;
        match complex.helly_check(&family)? {
            HellyOutcome::Pass { .. } => intersecting += 1,
            HellyOutcome::Vacuous { .. } => {}
            HellyOutcome::Fail => {
                return Ok((
                    false,
                    format!("family_sizes={:?}", family.iter().map(Vec::len).collect::<Vec<_>>()),
                ))
            }
        }
    }
    Ok((true, format!("families={budget} pairwise_intersecting={intersecting}")))
}
