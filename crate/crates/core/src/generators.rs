//! Instance generators: grids, trees, box products and random median graphs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{CubeComplex, Side, VertexId};
use crate::error::{Error, Result};

/// Product of paths with `widths[i]` vertices along axis `i`. Vertex ids are
/// mixed-radix with the first axis varying fastest.
pub fn gen_grid(widths: &[usize]) -> Result<CubeComplex> {
    if widths.is_empty() {
        return Err(Error::Input("grid needs at least one width".into()));
    }
    if let Some(&w) = widths.iter().find(|&&w| w == 0) {
        return Err(Error::Input(format!("grid width must be positive, got {w}")));
    }
    let mut complex = CubeComplex::point();
    for &w in widths {
        complex = gen_product(&complex, &path(w)?)?;
    }
    Ok(complex)
}

fn path(vertices: usize) -> Result<CubeComplex> {
    let edges: Vec<_> = (1..vertices).map(|i| (i - 1, i)).collect();
    CubeComplex::new(vertices, &edges)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TreeShape {
    /// Complete `arity`-ary tree with `depth` levels below the root; depth 0
    /// is a single vertex.
    Balanced { arity: usize, depth: usize },
    /// Random recursive tree: vertex `i` attaches to a uniform earlier vertex.
    Random { size: usize, seed: u64 },
    /// Centre 0 joined to `leaves` leaves.
    Star { leaves: usize },
}

pub fn gen_tree(shape: &TreeShape) -> Result<CubeComplex> {
    let (n, edges) = match *shape {
        TreeShape::Balanced { arity, depth } => {
            if arity == 0 {
                return Err(Error::Input("tree arity must be positive".into()));
            }
            let mut edges = Vec::new();
            let mut level = vec![0usize];
            let mut next_id = 1;
            for _ in 0..depth {
                let mut next_level = Vec::with_capacity(level.len() * arity);
                for &parent in &level {
                    for _ in 0..arity {
                        edges.push((parent, next_id));
                        next_level.push(next_id);
                        next_id += 1;
                    }
                }
                level = next_level;
            }
            (next_id, edges)
        }
        TreeShape::Random { size, seed } => {
            if size == 0 {
                return Err(Error::Input("tree size must be positive".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let edges = (1..size).map(|i| (rng.gen_range(0..i), i)).collect();
            (size, edges)
        }
        TreeShape::Star { leaves } => (leaves + 1, (1..=leaves).map(|i| (0, i)).collect()),
    };
    CubeComplex::new(n, &edges)
}

/// Box product of the 1-skeleta. Vertex `(i, j)` gets id `i + |a| * j`.
pub fn gen_product(a: &CubeComplex, b: &CubeComplex) -> Result<CubeComplex> {
    let na = a.vertex_count();
    let nb = b.vertex_count();
    let mut edges = Vec::with_capacity(a.edge_count() * nb + b.edge_count() * na);
    for j in 0..nb {
        for &(x, y) in a.edges() {
            edges.push((x + na * j, y + na * j));
        }
    }
    for &(x, y) in b.edges() {
        for i in 0..na {
            edges.push((i + na * x, i + na * y));
        }
    }
    CubeComplex::new(na * nb, &edges)
}

/// Random median graph grown from a point by peripheral convex expansions.
///
/// Each step picks a wall `h`, a side `s`, a vertex `u` in that halfspace
/// and a vertex `v`, and duplicates the convex set `C = h^s ∩ I(u, v)`:
/// every vertex of `C` gets a new twin adjacent to it, and twins of
/// adjacent vertices are adjacent. On the one-vertex start `C = {0}`.
pub fn gen_random_median(seed: u64, target_size: usize) -> Result<CubeComplex> {
    if target_size == 0 {
        return Err(Error::Input("target size must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut complex = CubeComplex::point();
    while complex.vertex_count() < target_size {
        let n = complex.vertex_count();
        let convex: Vec<VertexId> = if complex.wall_count() == 0 {
            vec![0]
        } else {
            let wall = complex.wall(rng.gen_range(0..complex.wall_count()));
            let side = if rng.gen_bool(0.5) { Side::Plus } else { Side::Minus };
            let halfspace = wall.halfspace_vertices(side);
            let u = *halfspace.choose(&mut rng).expect("halfspaces are nonempty");
            let v = rng.gen_range(0..n);
            complex
                .interval(u, v)?
                .into_iter()
                .filter(|&x| wall.side_of(x) == side)
                .collect()
        };
        complex = expand(&complex, &convex)?;
    }
    Ok(complex)
}

fn expand(complex: &CubeComplex, convex: &[VertexId]) -> Result<CubeComplex> {
    let n = complex.vertex_count();
    let mut twin = vec![usize::MAX; n];
    for (i, &v) in convex.iter().enumerate() {
        twin[v] = n + i;
    }
    let mut edges = complex.edges().to_vec();
    for &v in convex {
        edges.push((v, twin[v]));
    }
    for &(a, b) in complex.edges() {
        if twin[a] != usize::MAX && twin[b] != usize::MAX {
            edges.push((twin[a], twin[b]));
        }
    }
    CubeComplex::new(n + convex.len(), &edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::validate_median;
    use crate::cxc::emit_cxc;

    #[test]
    fn grids() {
        let g = gen_grid(&[4, 4]).unwrap();
        assert_eq!((g.vertex_count(), g.wall_count()), (16, 6));
        let p = gen_grid(&[7]).unwrap();
        assert_eq!((p.vertex_count(), p.wall_count()), (7, 6));
        let cube = gen_grid(&[2, 2, 2]).unwrap();
        assert_eq!((cube.vertex_count(), cube.dimension()), (8, 3));
        assert!(gen_grid(&[]).is_err());
        assert!(gen_grid(&[3, 0]).is_err());
        assert_eq!(gen_grid(&[1]).unwrap().vertex_count(), 1);
    }

    #[test]
    fn trees() {
        let b = gen_tree(&TreeShape::Balanced { arity: 2, depth: 3 }).unwrap();
        assert_eq!(b.vertex_count(), 15);
        let r = gen_tree(&TreeShape::Random { size: 50, seed: 9 }).unwrap();
        assert_eq!((r.vertex_count(), r.wall_count()), (50, 49));
        let star = gen_tree(&TreeShape::Star { leaves: 3 }).unwrap();
        assert_eq!((star.vertex_count(), star.wall_count()), (4, 3));
        assert!(gen_tree(&TreeShape::Random { size: 0, seed: 1 }).is_err());
    }

    #[test]
    fn products() {
        let p4 = gen_grid(&[4]).unwrap();
        let prod = gen_product(&p4, &p4).unwrap();
        assert_eq!(prod.edges(), gen_grid(&[4, 4]).unwrap().edges());
        let tripod = gen_tree(&TreeShape::Star { leaves: 3 }).unwrap();
        let same = gen_product(&tripod, &CubeComplex::point()).unwrap();
        assert_eq!(same.edges(), tripod.edges());
        let p3 = gen_grid(&[3]).unwrap();
        let tp = gen_product(&tripod, &p3).unwrap();
        assert_eq!((tp.vertex_count(), tp.wall_count()), (12, 5));
        let star4 = gen_tree(&TreeShape::Star { leaves: 4 }).unwrap();
        let sp = gen_product(&star4, &p3).unwrap();
        assert_eq!((sp.vertex_count(), sp.wall_count()), (15, 6));
        // Cross-factor wall pairs always cross.
        let star_walls: Vec<_> = (0..sp.wall_count())
            .filter(|&w| sp.wall(w).edges().len() == 3)
            .collect();
        let path_walls: Vec<_> = (0..sp.wall_count())
            .filter(|&w| sp.wall(w).edges().len() == 5)
            .collect();
        assert_eq!((star_walls.len(), path_walls.len()), (4, 2));
        for &a in &star_walls {
            for &b in &path_walls {
                assert!(sp.crosses(a, b).unwrap());
            }
        }
    }

    #[test]
    fn random_median_graphs() {
        assert_eq!(gen_random_median(5, 1).unwrap().vertex_count(), 1);
        for seed in 0..8 {
            let g = gen_random_median(seed, 30).unwrap();
            assert!(g.vertex_count() >= 30);
            assert!(validate_median(g.vertex_count(), g.edges()).unwrap().is_pass());
        }
        let a = emit_cxc(&gen_random_median(42, 30).unwrap());
        let b = emit_cxc(&gen_random_median(42, 30).unwrap());
        assert_eq!(a, b);
    }
}
