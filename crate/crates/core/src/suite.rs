//! Named instances and geodesic sampling for the verification suite.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{CubeComplex, GeodesicPath, VertexId};
use crate::error::{Error, Result};
use crate::generators::{gen_grid, gen_product, gen_random_median, gen_tree, TreeShape};
use crate::raag::{raag_hull, RaagPresentation};

#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub complex: CubeComplex,
}

impl Instance {
    pub fn new(name: impl Into<String>, complex: CubeComplex) -> Self {
        Instance {
            name: name.into(),
            complex,
        }
    }
}

/// Grids up to 6x6, trees up to 60 vertices, RAAG hulls of radius at most 2
/// and five seeded random median graphs of at most 40 vertices.
pub fn standard_suite() -> Result<Vec<Instance>> {
    let mut suite = vec![Instance::new("point", CubeComplex::point())];
    for widths in [
        &[2, 2][..],
        &[3, 3],
        &[4, 4],
        &[5, 5],
        &[6, 6],
        &[3, 5],
        &[2, 2, 2],
        &[3, 3, 3],
    ] {
        let name = widths.iter().map(usize::to_string).collect::<Vec<_>>().join("x");
        suite.push(Instance::new(format!("grid-{name}"), gen_grid(widths)?));
    }
    suite.push(Instance::new("path-20", gen_grid(&[21])?));
    let trees = [
        ("tree-star-3", TreeShape::Star { leaves: 3 }),
        ("tree-star-12", TreeShape::Star { leaves: 12 }),
        ("tree-binary-4", TreeShape::Balanced { arity: 2, depth: 4 }),
        ("tree-ternary-3", TreeShape::Balanced { arity: 3, depth: 3 }),
        ("tree-random-30", TreeShape::Random { size: 30, seed: 7 }),
        ("tree-random-60", TreeShape::Random { size: 60, seed: 8 }),
    ];
    for (name, shape) in trees {
        suite.push(Instance::new(name, gen_tree(&shape)?));
    }
    let path3 = gen_grid(&[3])?;
    for leaves in [3, 4] {
        let star = gen_tree(&TreeShape::Star { leaves })?;
        suite.push(Instance::new(
            format!("star-{leaves}-x-path-3"),
            gen_product(&star, &path3)?,
        ));
    }
    let presentations = [
        ("free2", RaagPresentation::free(2)?),
        ("z2", RaagPresentation::abelian(2)?),
        ("z2-free-z", RaagPresentation::parse("a-b", &["c".to_string()])?),
    ];
    for (name, p) in &presentations {
        for radius in 1..=2 {
            suite.push(Instance::new(
                format!("raag-{name}-r{radius}"),
                raag_hull(p, radius)?.complex,
            ));
        }
    }
    for seed in 1..=5 {
        suite.push(Instance::new(format!("random-s{seed}"), gen_random_median(seed, 32)?));
    }
    Ok(suite)
}

/// A geodesic from `u` to `v` choosing uniformly among the neighbours one
/// step closer to `v` at every step.
pub fn random_geodesic(complex: &CubeComplex, u: VertexId, v: VertexId, rng: &mut impl Rng) -> Result<GeodesicPath> {
    complex.check_vertex(u)?;
    complex.check_vertex(v)?;
    let mut vertices = vec![u];
    let mut at = u;
    while at != v {
        let target = complex.distance(at, v) - 1;
        let closer: Vec<VertexId> = complex
            .neighbors(at)
            .iter()
            .copied()
            .filter(|&w| complex.distance(w, v) == target)
            .collect();
        at = *closer.choose(rng).expect("a closer neighbour exists");
        vertices.push(at);
    }
    complex.path_from_vertices(vertices)
}

/// Deterministic geodesic sample: the canonical geodesic between the first
/// diametral pair, then `budget` seeded random geodesics between random
/// pairs. Empty for a single vertex.
pub fn sample_geodesics(complex: &CubeComplex, seed: u64, budget: usize) -> Result<Vec<GeodesicPath>> {
    let n = complex.vertex_count();
    if n < 2 {
        return Ok(Vec::new());
    }
    let (a, b) = diametral_pair(complex);
    let mut paths = vec![complex.geodesic(a, b)?];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while paths.len() < budget + 1 {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v {
            paths.push(random_geodesic(complex, u, v, &mut rng)?);
        }
    }
    Ok(paths)
}

/// The lexicographically first pair realizing the diameter.
pub fn diametral_pair(complex: &CubeComplex) -> (VertexId, VertexId) {
    let d = complex.diameter();
    let n = complex.vertex_count();
    (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .find(|&(u, v)| complex.distance(u, v) == d)
        .expect("some pair realizes the diameter")
}

/// Looks up an instance of the standard suite by name.
pub fn suite_instance(name: &str) -> Result<Instance> {
    standard_suite()?
        .into_iter()
        .find(|i| i.name == name)
        .ok_or_else(|| Error::Input(format!("unknown suite instance {name:?}")))
}
