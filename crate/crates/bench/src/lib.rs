//! Fixtures shared by the benchmarks.
use cubewell_core::generators::{gen_grid, gen_random_median, gen_tree, TreeShape};
use cubewell_core::{raag_hull, CubeComplex, RaagPresentation};

/// Named complexes of increasing size.
pub fn fixtures() -> Vec<(&'static str, CubeComplex)> {
    let z2_free_z = RaagPresentation::parse("a-b", &["c".to_string()]).unwrap();
    vec![
        ("grid-6x6", gen_grid(&[6, 6]).unwrap()),
        ("grid-3x3x3", gen_grid(&[3, 3, 3]).unwrap()),
        ("tree-60", gen_tree(&TreeShape::Random { size: 60, seed: 8 }).unwrap()),
        ("random-40", gen_random_median(5, 40).unwrap()),
        ("raag-z2-free-z-r2", raag_hull(&z2_free_z, 2).unwrap().complex),
    ]
}
