//! Acceptance criteria 1-10. Runs without the test harness so that every
//! criterion prints one PASS/FAIL line; exits nonzero if any fails.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use cubewell_core::excursion::excursion_scan;
use cubewell_core::gamma::{build_gamma, gamma_threshold};
use cubewell_core::generators::{gen_grid, gen_random_median, gen_tree, TreeShape};
use cubewell_core::suite::{sample_geodesics, standard_suite, Instance};
use cubewell_core::wellsep::{four_point_delta, QuadrupleSample};
use cubewell_core::{
    emit_cxc, parse_cxc, validate_median, CubeComplex, GeodesicPath, RaagPresentation, SublinearGauge, WellSepSpace,
};

type Outcome = Result<String, String>;
type Criterion<'a> = (usize, &'static str, Option<Duration>, Box<dyn Fn() -> Outcome + 'a>);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

struct Suite {
    instances: Vec<Instance>,
}

impl Suite {
    fn up_to(&self, max_vertices: usize) -> impl Iterator<Item = &Instance> {
        self.instances
            .iter()
            .filter(move |i| i.complex.vertex_count() <= max_vertices)
    }
}

/// Geodesics used by criteria 2 and 7: per instance, one diametral geodesic
/// and ten seeded random ones.
fn suite_geodesics(suite: &Suite) -> Vec<(usize, GeodesicPath)> {
    suite
        .instances
        .iter()
        .enumerate()
        .flat_map(|(i, inst)| {
            sample_geodesics(&inst.complex, 17 + i as u64, 10)
                .expect("valid instance")
                .into_iter()
                .map(move |p| (i, p))
        })
        .collect()
}

fn is_geodesic(c: &CubeComplex, dist: &[Vec<usize>], p: &GeodesicPath) -> bool {
    let v = p.vertices();
    v.windows(2).all(|e| c.neighbors(e[0]).contains(&e[1])) && dist[p.start()][p.end()] == p.len()
}

fn criterion_1(suite: &Suite) -> Outcome {
    let mut pairs = 0usize;
    for inst in &suite.instances {
        let c = &inst.complex;
        let dist = bfs_distances(c);
        for w in 0..c.wall_count() {
            // Removing the wall's edges leaves exactly its two halfspaces.
            let cut: std::collections::HashSet<(usize, usize)> =
                c.wall(w).edges().iter().flat_map(|&(a, b)| [(a, b), (b, a)]).collect();
            for &(a, b) in c.edges() {
                ensure!(
                    cut.contains(&(a, b)) == separates(c, w, a, b),
                    "{}: wall {w} edge {a}-{b}",
                    inst.name
                );
            }
        }
        for u in 0..c.vertex_count() {
            for v in u + 1..c.vertex_count() {
                let walls = c.separating_set(u, v).map_err(|e| e.to_string())?;
                let oracle = (0..c.wall_count()).filter(|&w| separates(c, w, u, v)).count();
                ensure!(
                    walls.len() == dist[u][v] && oracle == dist[u][v],
                    "{}: pair {u},{v} dist {} walls {} oracle {oracle}",
                    inst.name,
                    dist[u][v],
                    walls.len()
                );
                pairs += 1;
            }
        }
    }
    Ok(format!("{} instances, {pairs} pairs", suite.instances.len()))
}

fn criterion_2(suite: &Suite, geodesics: &[(usize, GeodesicPath)]) -> Outcome {
    ensure!(geodesics.len() >= 200, "only {} geodesics", geodesics.len());
    let mut worst = [0usize; 4];
    let mut triples = 0u64;
    for (i, inst) in suite.instances.iter().enumerate() {
        let c = &inst.complex;
        let dist = bfs_distances(c);
        let space = WellSepSpace::new(c);
        let mats: Vec<_> = (0..4).map(|k| space.dk_matrix(k)).collect();
        for (_, path) in geodesics.iter().filter(|(j, _)| *j == i) {
            ensure!(
                is_geodesic(c, &dist, path),
                "{}: sampled path is not a geodesic",
                inst.name
            );
            let v = path.vertices();
            for (k, dk) in mats.iter().enumerate() {
                for a in 0..v.len() {
                    for b in a..v.len() {
                        for d in b..v.len() {
                            let defect = (dk.get(v[a], v[b]) + dk.get(v[b], v[d])) as i64 - dk.get(v[a], v[d]) as i64;
                            triples += 1;
                            worst[k] = worst[k].max(defect.max(0) as usize);
                            ensure!(
                                defect <= k as i64 + 3,
                                "{}: k={k} triple {},{},{} defect {defect}",
                                inst.name,
                                v[a],
                                v[b],
                                v[d]
                            );
                        }
                    }
                }
            }
        }
    }
    Ok(format!(
        "{} geodesics, {triples} ordered triples, max defect per k {worst:?}",
        geodesics.len()
    ))
}

fn criterion_3(suite: &Suite) -> Outcome {
    let mut pairs = 0usize;
    let mut path_check = None;
    for inst in suite.up_to(400) {
        let c = &inst.complex;
        let n = c.vertex_count();
        let space = WellSepSpace::new(c);
        for k in 0..=1 {
            let dk = space.dk_matrix(k);
            let threshold = gamma_threshold(k);
            ensure!(threshold == 10 * k + 4, "threshold");
            let mut dg = vec![vec![usize::MAX; n]; n];
            for s in 0..n {
                dg[s][s] = 0;
                let mut queue = std::collections::VecDeque::from([s]);
                while let Some(x) = queue.pop_front() {
                    for y in 0..n {
                        if y != x && dk.get(x, y) <= threshold && dg[s][y] == usize::MAX {
                            dg[s][y] = dg[s][x] + 1;
                            queue.push_back(y);
                        }
                    }
                }
            }
            let gamma = build_gamma(&dk);
            for u in 0..n {
                for v in u + 1..n {
                    let d = dk.get(u, v);
                    let g = dg[u][v];
                    ensure!(
                        gamma.distance(u, v) == Some(g),
                        "{}: k={k} graph distance {u},{v}",
                        inst.name
                    );
                    ensure!(
                        g <= d && d <= threshold * g,
                        "{}: k={k} pair {u},{v} dk {d} d_gamma {g}",
                        inst.name
                    );
                    pairs += 1;
                }
            }
            if inst.name == "path-20" && k == 0 {
                path_check = Some((dk.get(0, 20), dg[0][20]));
            }
        }
    }
    ensure!(path_check == Some((20, 5)), "path-20 ends: {path_check:?}");
    Ok(format!("{pairs} pair checks; 20-edge path d_0 = 20, d_gamma = 5"))
}

fn defect_twice(d: &dyn Fn(usize, usize) -> usize, q: [usize; 4]) -> usize {
    let [x, y, z, w] = q;
    let mut s = [d(x, y) + d(z, w), d(x, z) + d(y, w), d(x, w) + d(y, z)];
    s.sort_unstable();
    s[2] - s[1]
}

fn criterion_4(suite: &Suite) -> Outcome {
    let mut exhaustive = 0u64;
    let mut sampled = 0u64;
    let mut worst = [0usize; 3];
    for inst in &suite.instances {
        let c = &inst.complex;
        let n = c.vertex_count();
        if n < 4 {
            continue;
        }
        let is_tree = c.edge_count() + 1 == n;
        let space = WellSepSpace::new(c);
        for k in 0..=2 {
            let dk = space.dk_matrix(k);
            let d = |a: usize, b: usize| dk.get(a, b);
            let mut max = 0;
            if n <= 30 {
                for a in 0..n {
                    for b in a + 1..n {
                        for e in b + 1..n {
                            for f in e + 1..n {
                                max = max.max(defect_twice(&d, [a, b, e, f]));
                                exhaustive += 1;
                            }
                        }
                    }
                }
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(1000 + k as u64);
                for _ in 0..100_000 {
                    let q = [0; 4].map(|_| rng.gen_range(0..n));
                    max = max.max(defect_twice(&d, q));
                }
                sampled += 100_000;
                let report = four_point_delta(
                    &dk,
                    QuadrupleSample::Random {
                        seed: 5,
                        count: 100_000,
                    },
                );
                ensure!(
                    report.sampled_quadruples >= 100_000 && !report.violated(),
                    "{}: library sample",
                    inst.name
                );
            }
            ensure!(
                max <= 2 * 9 * (k + 2),
                "{}: k={k} defect {}",
                inst.name,
                max as f64 / 2.0
            );
            if is_tree && k == 0 {
                ensure!(max == 0, "{}: tree defect {}", inst.name, max as f64 / 2.0);
            }
            worst[k] = worst[k].max(max);
        }
    }
    let worst: Vec<f64> = worst.iter().map(|&w| w as f64 / 2.0).collect();
    Ok(format!(
        "{exhaustive} exhaustive + {sampled} sampled quadruples, max defect per k {worst:?}"
    ))
}

fn criterion_5(suite: &Suite) -> Outcome {
    let mut checked = 0usize;
    for inst in &suite.instances {
        let c = &inst.complex;
        let n = c.vertex_count();
        let space = WellSepSpace::new(c);
        let mut oracle = WsepOracle::new(c);
        for k in 0..=3 {
            let dk = space.dk_matrix(k);
            for u in 0..n {
                for v in u + 1..n {
                    let sep: Vec<usize> = (0..c.wall_count()).filter(|&w| separates(c, w, u, v)).collect();
                    if sep.len() > 15 {
                        continue;
                    }
                    let adj: Vec<u64> = sep
                        .iter()
                        .map(|&a| {
                            sep.iter().enumerate().fold(0u64, |m, (j, &b)| {
                                if a != b && !crosses(c, a, b) && oracle.wsep(a, b) <= k {
                                    m | (1 << j)
                                } else {
                                    m
                                }
                            })
                        })
                        .collect();
                    let brute = max_clique(&adj);
                    ensure!(
                        dk.get(u, v) == brute,
                        "{}: k={k} pair {u},{v} dp {} brute {brute}",
                        inst.name,
                        dk.get(u, v)
                    );
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} (pair, k) checks"))
}

fn criterion_6(suite: &Suite) -> Outcome {
    let mut triples = 0usize;
    for inst in &suite.instances {
        let c = &inst.complex;
        let m = c.wall_count();
        let table = cubewell_core::SeparationTable::new(c);
        let mut oracle = WsepOracle::new(c);
        for h1 in 0..m {
            for h3 in h1 + 1..m {
                if crosses(c, h1, h3) {
                    continue;
                }
                let outer = oracle.wsep(h1, h3);
                ensure!(table.wsep(h1, h3) == Some(outer), "{}: table wsep {h1},{h3}", inst.name);
                for h2 in 0..m {
                    if !wall_between(c, h2, h1, h3) {
                        continue;
                    }
                    let inner = oracle.wsep(h1, h2).min(oracle.wsep(h2, h3));
                    ensure!(outer <= inner, "{}: walls {h1},{h2},{h3}: {outer} > {inner}", inst.name);
                    triples += 1;
                }
            }
        }
    }
    Ok(format!("{triples} nested triples"))
}

fn criterion_7(suite: &Suite, geodesics: &[(usize, GeodesicPath)]) -> Outcome {
    let mut applicable = 0usize;
    for (i, path) in geodesics {
        let c = &suite.instances[*i].complex;
        let dim = c.dimension();
        if dim == 0 {
            continue;
        }
        let walls = path.walls();
        let oracle = max_disjoint_family(c, &walls);
        let chain = c.longest_chain(&walls).map_err(|e| e.to_string())?;
        ensure!(
            chain.len() == oracle,
            "{}: chain {} oracle {oracle}",
            suite.instances[*i].name,
            chain.len()
        );
        for t in chain.windows(3) {
            ensure!(wall_between(c, t[1], t[0], t[2]), "chain not nested");
        }
        let k = walls.len() / dim;
        ensure!(
            oracle >= k,
            "{}: {} walls, dimension {dim}, chain {oracle}",
            suite.instances[*i].name,
            walls.len()
        );
        applicable += k;
    }
    Ok(format!(
        "{} geodesics, {applicable} (geodesic, k) instances",
        geodesics.len()
    ))
}

/// Minimal constant for `κ ≡ 1` by bottleneck dynamic programming.
fn unit_excursion_oracle(c: &CubeComplex, path: &GeodesicPath, oracle: &mut WsepOracle) -> usize {
    let cr = path.crossings();
    let total = path.len();
    let mut best = vec![usize::MAX; cr.len()];
    for j in 0..cr.len() {
        best[j] = cr[j].1;
        for i in 0..j {
            if crosses(c, cr[i].0, cr[j].0) {
                continue;
            }
            let arc = (cr[j].1 - cr[i].1).max(oracle.wsep(cr[i].0, cr[j].0));
            best[j] = best[j].min(best[i].max(arc));
        }
    }
    (0..cr.len())
        .map(|j| best[j].max(total - cr[j].1))
        .min()
        .expect("nonempty path")
}

fn criterion_8(suite: &Suite) -> Outcome {
    let unit = SublinearGauge::unit();
    let int = |n: usize| BigRational::from_integer(BigInt::from(n));
    let mut tree_geodesics = 0;
    for inst in &suite.instances {
        let c = &inst.complex;
        let n = c.vertex_count();
        if c.edge_count() + 1 != n {
            continue;
        }
        let mut oracle = WsepOracle::new(c);
        for u in 0..n {
            for v in 0..n {
                if c.distance(u, v) < 5 {
                    continue;
                }
                let path = c.geodesic(u, v).map_err(|e| e.to_string())?;
                let report = excursion_scan(c, &path, &unit).map_err(|e| e.to_string())?;
                ensure!(
                    report.best_constant == int(1),
                    "{}: {u}->{v} c = {}",
                    inst.name,
                    report.best_constant
                );
                ensure!(unit_excursion_oracle(c, &path, &mut oracle) == 1, "oracle disagrees");
                report.validate(c).map_err(|e| e.to_string())?;
                tree_geodesics += 1;
            }
        }
    }
    let mut grid = Vec::new();
    for m in 4..=6 {
        let c = gen_grid(&[m, m]).map_err(|e| e.to_string())?;
        let path = c.geodesic(0, m * m - 1).map_err(|e| e.to_string())?;
        let report = excursion_scan(&c, &path, &unit).map_err(|e| e.to_string())?;
        let oracle = unit_excursion_oracle(&c, &path, &mut WsepOracle::new(&c));
        ensure!(
            report.best_constant == int(oracle),
            "grid {m}: scan {} oracle {oracle}",
            report.best_constant
        );
        ensure!(
            report.best_constant >= int(m - 1),
            "grid {m}: c = {}",
            report.best_constant
        );
        grid.push(report.best_constant.to_string());
    }
    Ok(format!(
        "{tree_geodesics} tree geodesics with c = 1; grid corner c for m = 4,5,6: {}",
        grid.join(",")
    ))
}

fn criterion_9(suite: &Suite) -> Outcome {
    let mut triples = 0usize;
    for inst in suite.up_to(40) {
        let c = &inst.complex;
        let n = c.vertex_count();
        let dist = bfs_distances(c);
        for o in 0..n {
            for x in 0..n {
                for y in 0..n {
                    let product = cubewell_core::gromov_product(c, o, x, y).map_err(|e| e.to_string())?;
                    let counted = (0..c.wall_count())
                        .filter(|&w| separates(c, w, o, x) && separates(c, w, o, y))
                        .count();
                    let m = median_oracle(&dist, o, x, y).ok_or("median not unique")?;
                    ensure!(c.median(o, x, y).ok() == Some(m), "{}: median {o},{x},{y}", inst.name);
                    ensure!(
                        product == counted && product == dist[o][m],
                        "{}: [{x}|{y}]_{o} = {product}, counted {counted}, dist to median {}",
                        inst.name,
                        dist[o][m]
                    );
                    triples += 1;
                }
            }
        }
    }
    Ok(format!("{triples} triples"))
}

fn criterion_10(suite: &Suite) -> Outcome {
    let free = RaagPresentation::free(2).map_err(|e| e.to_string())?;
    let z2 = RaagPresentation::abelian(2).map_err(|e| e.to_string())?;
    let mixed = RaagPresentation::parse("a-b", &["c".to_string()]).map_err(|e| e.to_string())?;
    let cases: [(&str, &RaagPresentation, Option<[usize; 4]>); 3] = [
        ("free2", &free, Some([1, 5, 17, 53])),
        ("z2", &z2, Some([1, 5, 13, 25])),
        ("z2*z", &mixed, None),
    ];
    let mut sizes = Vec::new();
    for (name, p, expected) in cases {
        let commute = |a: u8, b: u8| p.commutes(a as usize, b as usize);
        let oracle = rewriting_ball_sizes(p.generator_count() as u8, &commute, 3);
        let library: Vec<usize> = (0..=3).map(|r| p.ball(r).len()).collect();
        ensure!(library == oracle, "{name}: library {library:?} oracle {oracle:?}");
        if let Some(e) = expected {
            ensure!(oracle == e, "{name}: oracle {oracle:?}");
        }
        sizes.push(format!("{name} {oracle:?}"));
    }

    let mut generated: Vec<(String, CubeComplex)> = suite
        .instances
        .iter()
        .map(|i| (i.name.clone(), i.complex.clone()))
        .collect();
    for seed in 0..10 {
        generated.push((
            format!("random {seed}"),
            gen_random_median(seed, 40).map_err(|e| e.to_string())?,
        ));
        generated.push((
            format!("tree {seed}"),
            gen_tree(&TreeShape::Random { size: 25, seed }).map_err(|e| e.to_string())?,
        ));
    }
    for (name, c) in &generated {
        let n = c.vertex_count();
        ensure!(
            validate_median(n, c.edges()).map_err(|e| e.to_string())?.is_pass(),
            "{name}: validate_median"
        );
        let dist = bfs_distances(c);
        if n <= 64 {
            for x in 0..n {
                for y in x..n {
                    for z in y..n {
                        ensure!(median_oracle(&dist, x, y, z).is_some(), "{name}: triple {x},{y},{z}");
                    }
                }
            }
        }
        let text = emit_cxc(c);
        let back = parse_cxc(&text).map_err(|e| e.to_string())?;
        ensure!(
            back.vertex_count() == n && back.edges() == c.edges(),
            "{name}: round trip"
        );
        ensure!(emit_cxc(&back) == text, "{name}: emitted bytes differ");
    }
    Ok(format!(
        "{}; {} generated instances median and round-trip checked",
        sizes.join("; "),
        generated.len()
    ))
}

fn main() -> ExitCode {
    let suite = Suite {
        instances: standard_suite().expect("standard suite builds"),
    };
    let geodesics = suite_geodesics(&suite);
    let criteria: Vec<Criterion<'_>> = vec![
        (
            1,
            "distance equals separating walls",
            Some(Duration::from_secs(60)),
            Box::new(|| criterion_1(&suite)),
        ),
        (
            2,
            "projection defect <= k+3",
            Some(Duration::from_secs(300)),
            Box::new(|| criterion_2(&suite, &geodesics)),
        ),
        (3, "bilipschitz sandwich", None, Box::new(|| criterion_3(&suite))),
        (4, "four-point bound 9(k+2)", None, Box::new(|| criterion_4(&suite))),
        (5, "d_k equals brute force", None, Box::new(|| criterion_5(&suite))),
        (6, "wsep monotone under nesting", None, Box::new(|| criterion_6(&suite))),
        (
            7,
            "chains in long geodesics",
            None,
            Box::new(|| criterion_7(&suite, &geodesics)),
        ),
        (8, "excursion contrast", None, Box::new(|| criterion_8(&suite))),
        (
            9,
            "gromov product is distance to median",
            None,
            Box::new(|| criterion_9(&suite)),
        ),
        (10, "generator correctness", None, Box::new(|| criterion_10(&suite))),
    ];
    let mut failed = 0;
    for (id, title, limit, run) in &criteria {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let result = match (result, limit) {
            (Ok(_), Some(limit)) if elapsed > *limit => Err(format!("took {elapsed:.1?}, limit {limit:?}")),
            (r, _) => r,
        };
        match result {
            Ok(detail) => println!("criterion {id:>2} PASS  {title}: {detail} [{elapsed:.2?}]"),
            Err(detail) => {
                failed += 1;
                println!("criterion {id:>2} FAIL  {title}: {detail} [{elapsed:.2?}]");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
