//! Right-angled Artin groups: normal forms, Cayley balls and convex hulls of
//! balls in the universal cover of the Salvetti complex.
//!
//! Elements are stored as reduced words in lexicographic normal form: among
//! all reduced words for the element (which differ only by swapping adjacent
//! commuting letters) the lexicographically least one. Letters order by
//! generator index, positive before inverse.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use fixedbitset::FixedBitSet;

use crate::clique::max_clique;
use crate::complex::CubeComplex;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn inv(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }
}

/// A group element as its normal-form word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    /// Word length, which is the distance to the identity in the Cayley graph.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Defining graph of a right-angled Artin group: generators and the pairs
/// that commute.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RaagPresentation {
    names: Vec<String>,
    commuting: BTreeSet<(usize, usize)>,
}

impl RaagPresentation {
    pub fn new(names: Vec<String>, commuting: &[(usize, usize)]) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::Input("presentation needs at least one generator".into()));
        }
        let mut seen = BTreeSet::new();
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(Error::Input(format!("duplicate generator name {name}")));
            }
        }
        let mut set = BTreeSet::new();
        for &(a, b) in commuting {
            if a >= n || b >= n {
                return Err(Error::Input(format!("commutation {a}-{b} names a missing generator")));
            }
            if a == b {
                return Err(Error::Input(format!("commutation graph has a loop at {a}")));
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(RaagPresentation { names, commuting: set })
    }

    /// Free group on generators `a`, `b`, ...
    pub fn free(rank: usize) -> Result<Self> {
        Self::new(default_names(rank), &[])
    }

    /// Free abelian group: every pair commutes.
    pub fn abelian(rank: usize) -> Result<Self> {
        let pairs: Vec<_> = (0..rank).flat_map(|a| (a + 1..rank).map(move |b| (a, b))).collect();
        Self::new(default_names(rank), &pairs)
    }

    /// Parses a defining graph like `"a-b,b-c"` plus isolated generators.
    /// Generators are numbered in sorted name order.
    pub fn parse(graph: &str, extra: &[String]) -> Result<Self> {
        let mut names = BTreeSet::new();
        let mut pairs = Vec::new();
        for token in graph
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
        {
            match token.split_once('-') {
                Some((a, b)) if !a.is_empty() && !b.is_empty() => {
                    names.insert(a.to_string());
                    names.insert(b.to_string());
                    pairs.push((a.to_string(), b.to_string()));
                }
                None => {
                    names.insert(token.to_string());
                }
                _ => return Err(Error::Input(format!("malformed graph edge {token:?}"))),
            }
        }
        for e in extra {
            names.insert(e.clone());
        }
        let names: Vec<String> = names.into_iter().collect();
        let index: HashMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        let commuting: Vec<_> = pairs
            .iter()
            .map(|(a, b)| (index[a.as_str()], index[b.as_str()]))
            .collect();
        Self::new(names, &commuting)
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Whether two distinct generators commute.
    pub fn commutes(&self, a: usize, b: usize) -> bool {
        a != b && self.commuting.contains(&(a.min(b), a.max(b)))
    }

    /// Largest family of pairwise commuting generators: the dimension of the
    /// Salvetti complex.
    pub fn dimension(&self) -> usize {
        let n = self.generator_count();
        let mut adj = vec![FixedBitSet::with_capacity(n); n];
        for &(a, b) in &self.commuting {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        max_clique(&adj).len()
    }

    fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.generator_count()).flat_map(|g| [Letter::new(g, false), Letter::new(g, true)])
    }

    /// Appends a letter to a reduced word, cancelling against the last
    /// occurrence of its inverse if everything after it commutes with it.
    fn push_reduced(&self, word: &mut Vec<Letter>, x: Letter) {
        for i in (0..word.len()).rev() {
            let y = word[i];
            if y.generator == x.generator {
                if y.inverse != x.inverse {
                    word.remove(i);
                    return;
                }
                break;
            }
            if !self.commutes(y.generator, x.generator) {
                break;
            }
        }
        word.push(x);
    }

    /// Lexicographically least word in the commutation class of a reduced word.
    fn lex_normal(&self, mut word: Vec<Letter>) -> Word {
        let mut out = Vec::with_capacity(word.len());
        while !word.is_empty() {
            let mut pick = 0;
            for i in 0..word.len() {
                let movable = word[..i].iter().all(|y| self.commutes(y.generator, word[i].generator));
                if movable && word[i] < word[pick] {
                    pick = i;
                }
            }
            out.push(word.remove(pick));
        }
        Word(out)
    }

    /// Normal form of an arbitrary word.
    pub fn normal_form(&self, letters: &[Letter]) -> Result<Word> {
        let mut reduced = Vec::with_capacity(letters.len());
        for &x in letters {
            if x.generator >= self.generator_count() {
                return Err(Error::Input(format!("unknown generator index {}", x.generator)));
            }
            self.push_reduced(&mut reduced, x);
        }
        Ok(self.lex_normal(reduced))
    }

    pub fn multiply(&self, g: &Word, h: &Word) -> Word {
        let mut reduced = g.0.clone();
        for &x in &h.0 {
            self.push_reduced(&mut reduced, x);
        }
        self.lex_normal(reduced)
    }

    pub fn inverse(&self, g: &Word) -> Word {
        let letters: Vec<Letter> = g.0.iter().rev().map(|l| l.inv()).collect();
        self.lex_normal(letters)
    }

    /// Cayley-graph distance `|g^-1 h|`.
    pub fn distance(&self, g: &Word, h: &Word) -> usize {
        self.multiply(&self.inverse(g), h).len()
    }

    /// All elements of word length at most `radius`, ordered by length then
    /// normal form.
    pub fn ball(&self, radius: usize) -> Vec<Word> {
        let mut seen: HashSet<Word> = HashSet::from([Word::identity()]);
        let mut frontier = vec![Word::identity()];
        let mut all = vec![Word::identity()];
        for _ in 0..radius {
            let mut next = Vec::new();
            for g in &frontier {
                for x in self.letters() {
                    let h = self.multiply(g, &Word(vec![x]));
                    if h.len() == g.len() + 1 && seen.insert(h.clone()) {
                        next.push(h);
                    }
                }
            }
            next.sort();
            all.extend(next.iter().cloned());
            frontier = next;
        }
        all
    }

    pub fn format_word(&self, word: &Word) -> String {
        if word.is_empty() {
            return "e".to_string();
        }
        word.0
            .iter()
            .map(|l| {
                if l.inverse {
                    format!("{}^-1", self.names[l.generator])
                } else {
                    self.names[l.generator].clone()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn default_names(rank: usize) -> Vec<String> {
    (0..rank)
        .map(|i| {
            if i < 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("g{i}")
            }
        })
        .collect()
}

/// Convex hull of a Cayley ball, with the group element of every vertex.
#[derive(Clone, Debug)]
pub struct RaagHull {
    pub complex: CubeComplex,
    pub words: Vec<Word>,
}

/// Convex hull of the radius-`radius` ball around the identity.
///
/// The closure is computed inside the ball of radius `dimension * radius + 1`;
/// if it ever picks up an element on that outer shell the result could be
/// truncated and [`Error::Enlargement`] is returned instead.
pub fn raag_hull(presentation: &RaagPresentation, radius: usize) -> Result<RaagHull> {
    let ambient_radius = presentation.dimension().max(1) * radius + 1;
    raag_hull_within(presentation, radius, ambient_radius)
}

/// [`raag_hull`] with an explicit ambient radius.
pub fn raag_hull_within(presentation: &RaagPresentation, radius: usize, ambient_radius: usize) -> Result<RaagHull> {
    if radius == 0 {
        return Err(Error::Input("hull radius must be at least 1".into()));
    }
    if ambient_radius < radius {
        return Err(Error::Input("ambient radius smaller than hull radius".into()));
    }
    let ambient = presentation.ball(ambient_radius);
    let index: HashMap<&Word, usize> = ambient.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let n = ambient.len();
    let mut adjacency = vec![Vec::new(); n];
    for (i, g) in ambient.iter().enumerate() {
        for x in presentation.letters() {
            let h = presentation.multiply(g, &Word(vec![x]));
            if let Some(&j) = index.get(&h) {
                adjacency[i].push(j);
            }
        }
    }
    let bfs = |source: usize| {
        let mut dist = vec![u32::MAX; n];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            for &w in &adjacency[v] {
                if dist[w] == u32::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    };

    let mut members = FixedBitSet::with_capacity(n);
    let mut order: Vec<usize> = (0..n).filter(|&i| ambient[i].len() <= radius).collect();
    for &i in &order {
        members.insert(i);
    }
    let mut rows: Vec<Vec<u32>> = Vec::with_capacity(order.len());
    let mut next = 0;
    while next < order.len() {
        let w = order[next];
        rows.push(bfs(w));
        for i in 0..next {
            let (du, dw) = (&rows[i], &rows[next]);
            let d = du[w];
            for x in 0..n {
                if du[x] + dw[x] == d && !members.put(x) {
                    if ambient[x].len() >= ambient_radius {
                        return Err(Error::Enlargement(ambient_radius));
                    }
                    order.push(x);
                }
            }
        }
        next += 1;
    }

    let vertices: Vec<usize> = members.ones().collect();
    let local: HashMap<usize, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut edges = Vec::new();
    for (i, &v) in vertices.iter().enumerate() {
        for &w in &adjacency[v] {
            if let Some(&j) = local.get(&w) {
                if i < j {
                    edges.push((i, j));
                }
            }
        }
    }
    let complex = CubeComplex::new(vertices.len(), &edges)?;
    let words = vertices.iter().map(|&v| ambient[v].clone()).collect();
    Ok(RaagHull { complex, words })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    /// Independent word-problem oracle: explore every word reachable by
    /// swapping adjacent commuting letters and cancelling adjacent inverse
    /// pairs; the canonical form is the least word of minimal length.
    fn rewrite_canonical(p: &RaagPresentation, word: Vec<Letter>) -> Vec<Letter> {
        let mut seen = HashSet::new();
        let mut queue = VecDeque::from([word.clone()]);
        seen.insert(word);
        while let Some(w) = queue.pop_front() {
            for i in 0..w.len().saturating_sub(1) {
                let (x, y) = (w[i], w[i + 1]);
                let mut next = w.clone();
                if x == y.inv() {
                    next.drain(i..i + 2);
                } else if p.commutes(x.generator, y.generator) {
                    next.swap(i, i + 1);
                } else {
                    continue;
                }
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        seen.into_iter()
            .min_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)))
            .unwrap()
    }

    fn oracle_ball_sizes(p: &RaagPresentation, max_radius: usize) -> Vec<usize> {
        let letters: Vec<Letter> = p.letters().collect();
        let mut words: Vec<Vec<Letter>> = vec![Vec::new()];
        let mut all = vec![Vec::new()];
        for _ in 0..max_radius {
            words = words
                .iter()
                .flat_map(|w| {
                    letters.iter().map(move |&x| {
                        let mut v = w.clone();
                        v.push(x);
                        v
                    })
                })
                .collect();
            all.extend(words.iter().cloned());
        }
        let canon: Vec<Vec<Letter>> = all.into_iter().map(|w| rewrite_canonical(p, w)).collect();
        (0..=max_radius)
            .map(|r| canon.iter().filter(|w| w.len() <= r).collect::<HashSet<_>>().len())
            .collect()
    }

    fn z2_star_z() -> RaagPresentation {
        RaagPresentation::parse("a-b", &["c".to_string()]).unwrap()
    }

    #[test]
    fn ball_sizes_match_rewriting_oracle() {
        let free = RaagPresentation::free(2).unwrap();
        let z2 = RaagPresentation::abelian(2).unwrap();
        let mixed = z2_star_z();
        let sizes = |p: &RaagPresentation| (0..=3).map(|r| p.ball(r).len()).collect::<Vec<_>>();
        assert_eq!(sizes(&free), vec![1, 5, 17, 53]);
        assert_eq!(oracle_ball_sizes(&free, 3), vec![1, 5, 17, 53]);
        assert_eq!(sizes(&z2), vec![1, 5, 13, 25]);
        assert_eq!(oracle_ball_sizes(&z2, 3), vec![1, 5, 13, 25]);
        assert_eq!(sizes(&mixed), oracle_ball_sizes(&mixed, 3));
    }

    #[test]
    fn normal_forms_agree_with_oracle() {
        let p = RaagPresentation::parse("a-b,b-c", &[]).unwrap();
        let letters: Vec<Letter> = p.letters().collect();
        // All words of length 4 over a path-graph RAAG.
        for code in 0..letters.len().pow(4) {
            let mut c = code;
            let word: Vec<Letter> = (0..4)
                .map(|_| {
                    let l = letters[c % letters.len()];
                    c /= letters.len();
                    l
                })
                .collect();
            let nf = p.normal_form(&word).unwrap();
            assert_eq!(nf.letters(), &rewrite_canonical(&p, word)[..]);
        }
    }

    #[test]
    fn parse_and_dimension() {
        let p = z2_star_z();
        assert_eq!(p.names(), &["a", "b", "c"]);
        assert!(p.commutes(0, 1));
        assert!(!p.commutes(0, 2));
        assert_eq!(p.dimension(), 2);
        assert_eq!(RaagPresentation::free(3).unwrap().dimension(), 1);
        assert!(RaagPresentation::parse("a-a", &[]).is_err());
        assert!(RaagPresentation::parse("a-", &[]).is_err());
    }

    #[test]
    fn free_group_hull_is_the_ball() {
        let hull = raag_hull(&RaagPresentation::free(2).unwrap(), 2).unwrap();
        assert_eq!(hull.complex.vertex_count(), 17);
        assert_eq!(hull.complex.wall_count(), 16);
    }

    #[test]
    fn z2_hull_is_a_square() {
        let hull = raag_hull(&RaagPresentation::abelian(2).unwrap(), 2).unwrap();
        assert_eq!(hull.complex.vertex_count(), 25);
        assert_eq!(hull.complex.wall_count(), 8);
        assert_eq!(hull.complex.dimension(), 2);
    }

    #[test]
    fn z2_star_z_radius_one() {
        let p = z2_star_z();
        assert_eq!(p.ball(1).len(), 7);
        // The a,b-square corners ab, ab^-1, ... lie in intervals between
        // ball points, so the hull is a 3x3 square plus the two c-edges.
        let hull = raag_hull(&p, 1).unwrap();
        assert_eq!(hull.complex.vertex_count(), 11);
    }

    #[test]
    fn truncated_ambient_ball_is_detected() {
        let z2 = RaagPresentation::abelian(2).unwrap();
        assert_eq!(raag_hull_within(&z2, 2, 3).unwrap_err(), Error::Enlargement(3));
        assert!(raag_hull_within(&z2, 2, 5).is_ok());
    }

    #[test]
    fn c_walls_across_an_a_edge_are_zero_well_separated() {
        let p = z2_star_z();
        let hull = raag_hull(&p, 2).unwrap();
        let idx = |letters: &[Letter]| {
            let w = p.normal_form(letters).unwrap();
            hull.words.iter().position(|x| *x == w).unwrap()
        };
        let a = Letter::new(0, false);
        let c = Letter::new(2, false);
        let c_at_e = hull.complex.wall_of_edge(idx(&[]), idx(&[c])).unwrap();
        let c_at_a = hull.complex.wall_of_edge(idx(&[a]), idx(&[a, c])).unwrap();
        let a_edge = hull.complex.wall_of_edge(idx(&[]), idx(&[a])).unwrap();
        assert!(hull.complex.wall_separates(a_edge, c_at_e, c_at_a));
        assert_eq!(hull.complex.wsep_degree(c_at_e, c_at_a).unwrap().degree, 0);
    }
}
