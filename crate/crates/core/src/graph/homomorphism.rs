//! The order `H ≤ G` (a homomorphism between complements) and the randomized
//! covering of a vertex-transitive graph by copies of an induced subgraph.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::Rng;

use super::{products::strong_product, Graph, Label};
use crate::error::{Error, Result};

/// A total map from the vertices of a source graph to those of a target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexMap {
    map: Vec<usize>,
    target_order: usize,
}

impl VertexMap {
    pub fn new(map: Vec<usize>, target_order: usize) -> Result<Self> {
        if let Some(&bad) = map.iter().find(|&&v| v >= target_order) {
            return Err(Error::VertexOutOfRange {
                vertex: bad,
                order: target_order,
            });
        }
        Ok(VertexMap { map, target_order })
    }

    pub fn identity(n: usize) -> Self {
        VertexMap {
            map: (0..n).collect(),
            target_order: n,
        }
    }

    /// Inclusion of `G[S]` into `G`.
    pub fn inclusion(subset: &[usize], target_order: usize) -> Result<Self> {
        Self::new(subset.to_vec(), target_order)
    }

    pub fn source_order(&self) -> usize {
        self.map.len()
    }

    pub fn target_order(&self) -> usize {
        self.target_order
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, v: usize) -> usize {
        self.map[v]
    }
}

/// Whether `phi` is a homomorphism `H̄ → Ḡ`: distinct non-adjacent vertices of
/// `h` go to distinct non-adjacent vertices of `g`.
pub fn is_cohomomorphism(phi: &VertexMap, h: &Graph, g: &Graph) -> bool {
    if phi.source_order() != h.order() || phi.target_order() != g.order() {
        return false;
    }
    let n = h.order();
    for u in 0..n {
        for v in (u + 1)..n {
            if !h.has_edge(u, v) {
                let (a, b) = (phi.apply(u), phi.apply(v));
                if g.adjacent_or_equal(a, b) {
                    return false;
                }
            }
        }
    }
    true
}

const COHOM_GUARD: usize = 12;

/// Exhaustive search for a witness of `H ≤ G` (both graphs ≤ 12 vertices).
pub fn exists_cohomomorphism(h: &Graph, g: &Graph) -> Result<Option<VertexMap>> {
    exists_cohomomorphism_with_guard(h, g, COHOM_GUARD)
}

pub fn exists_cohomomorphism_with_guard(
    h: &Graph,
    g: &Graph,
    guard: usize,
) -> Result<Option<VertexMap>> {
    for (what, size) in [("cohomomorphism source", h.order()), ("cohomomorphism target", g.order())] {
        if size > guard {
            return Err(Error::SizeGuard {
                what,
                size,
                limit: guard,
            });
        }
    }
    let mut assignment = Vec::with_capacity(h.order());
    if backtrack(h, g, &mut assignment) {
        Ok(Some(VertexMap {
            map: assignment,
            target_order: g.order(),
        }))
    } else {
        Ok(None)
    }
}

fn backtrack(h: &Graph, g: &Graph, assignment: &mut Vec<usize>) -> bool {
    let v = assignment.len();
    if v == h.order() {
        return true;
    }
    for target in 0..g.order() {
        let consistent = (0..v).all(|u| {
            h.has_edge(u, v) || !g.adjacent_or_equal(assignment[u], target)
        });
        if consistent {
            assignment.push(target);
            if backtrack(h, g, assignment) {
                return true;
            }
            assignment.pop();
        }
    }
    false
}

/// Uniform sampler over a group of automorphisms acting transitively.
pub trait AutomorphismSampler {
    /// A permutation `pi` of `V(H)`, with `pi[v]` the image of `v`.
    fn sample(&self, rng: &mut dyn rand::RngCore) -> Vec<usize>;
}

/// Uniform sampling from an explicit list of permutations (e.g. a small
/// automorphism group such as the dihedral group of a cycle).
#[derive(Clone, Debug)]
pub struct ExplicitGroup {
    elements: Vec<Vec<usize>>,
}

impl ExplicitGroup {
    pub fn new(elements: Vec<Vec<usize>>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::Sampler("group has no elements".into()));
        }
        Ok(ExplicitGroup { elements })
    }

    /// All of `S_n`; the automorphism group of `K_n` and `K̄_n`.
    pub fn symmetric(n: usize) -> Self {
        let mut elements = Vec::new();
        let mut p: Vec<usize> = (0..n).collect();
        permutations(&mut p, 0, &mut elements);
        ExplicitGroup { elements }
    }

    /// Rotations and reflections of the cycle `0-1-...-(n-1)-0`.
    pub fn dihedral(n: usize) -> Self {
        let mut elements = Vec::with_capacity(2 * n);
        for r in 0..n {
            elements.push((0..n).map(|v| (v + r) % n).collect());
            elements.push((0..n).map(|v| (r + n - v) % n).collect());
        }
        ExplicitGroup { elements }
    }
}

fn permutations(p: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == p.len() {
        out.push(p.clone());
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, out);
        p.swap(k, i);
    }
}

impl AutomorphismSampler for ExplicitGroup {
    fn sample(&self, rng: &mut dyn rand::RngCore) -> Vec<usize> {
        self.elements[rng.gen_range(0..self.elements.len())].clone()
    }
}

/// `S_n` acting on sequence-labeled vertices by permuting coordinates. This
/// is transitive on every type class.
#[derive(Clone, Debug)]
pub struct CoordinatePermutations {
    sequences: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    length: usize,
}

impl CoordinatePermutations {
    pub fn new(graph: &Graph) -> Result<Self> {
        let sequences = graph
            .labels()
            .iter()
            .map(|l| {
                l.as_seq()
                    .map(<[u32]>::to_vec)
                    .ok_or_else(|| Error::Sampler(format!("label {l} is not a sequence")))
            })
            .collect::<Result<Vec<_>>>()?;
        let length = sequences.first().map_or(0, Vec::len);
        if sequences.iter().any(|s| s.len() != length) {
            return Err(Error::Sampler("sequences of different lengths".into()));
        }
        let index = sequences
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        Ok(CoordinatePermutations {
            sequences,
            index,
            length,
        })
    }
}

impl AutomorphismSampler for CoordinatePermutations {
    fn sample(&self, rng: &mut dyn rand::RngCore) -> Vec<usize> {
        let mut sigma: Vec<usize> = (0..self.length).collect();
        sigma.shuffle(rng);
        self.sequences
            .iter()
            .map(|s| {
                let image: Vec<u32> = sigma.iter().map(|&i| s[i]).collect();
                self.index[&image]
            })
            .collect()
    }
}

/// `S_n × S_n` acting independently on both factors of a product of two
/// sequence-labeled graphs (labels `Pair(Seq, Seq)`).
#[derive(Clone, Debug)]
pub struct ProductCoordinatePermutations {
    pairs: Vec<(Vec<u32>, Vec<u32>)>,
    index: HashMap<(Vec<u32>, Vec<u32>), usize>,
    lengths: (usize, usize),
}

impl ProductCoordinatePermutations {
    pub fn new(graph: &Graph) -> Result<Self> {
        let pairs = graph
            .labels()
            .iter()
            .map(|l| match l {
                Label::Pair(a, b) => match (a.as_seq(), b.as_seq()) {
                    (Some(a), Some(b)) => Ok((a.to_vec(), b.to_vec())),
                    _ => Err(Error::Sampler(format!("label {l} is not a pair of sequences"))),
                },
                _ => Err(Error::Sampler(format!("label {l} is not a pair"))),
            })
            .collect::<Result<Vec<_>>>()?;
        let lengths = pairs.first().map_or((0, 0), |(a, b)| (a.len(), b.len()));
        let index = pairs.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        Ok(ProductCoordinatePermutations {
            pairs,
            index,
            lengths,
        })
    }
}

impl AutomorphismSampler for ProductCoordinatePermutations {
    fn sample(&self, rng: &mut dyn rand::RngCore) -> Vec<usize> {
        let mut s1: Vec<usize> = (0..self.lengths.0).collect();
        let mut s2: Vec<usize> = (0..self.lengths.1).collect();
        s1.shuffle(rng);
        s2.shuffle(rng);
        self.pairs
            .iter()
            .map(|(a, b)| {
                let key = (
                    s1.iter().map(|&i| a[i]).collect(),
                    s2.iter().map(|&i| b[i]).collect(),
                );
                self.index[&key]
            })
            .collect()
    }
}

/// Result of covering a vertex-transitive `H` by `N` copies of `H[S]`.
#[derive(Clone, Debug)]
pub struct TransitiveCover {
    /// Number of copies, `⌊(|V(H)|/|S|)·ln|V(H)|⌋ + 1`.
    pub copies: usize,
    /// Homomorphism `H̄ → complement(K̄_N ⊠ H[S])`.
    pub map: VertexMap,
    /// `K̄_N ⊠ H[S]`.
    pub target: Graph,
    /// Number of permutation draws until the cover was surjective.
    pub attempts: usize,
}

/// `⌊(n/s)·ln n⌋ + 1`, with the natural logarithm as written.
pub fn transitive_cover_size(n: usize, s: usize) -> usize {
    ((n as f64 / s as f64) * (n as f64).ln()).floor() as usize + 1
}

const MAX_COVER_ATTEMPTS: usize = 10_000;

/// Witnesses `H ≤ K̄_N ⊠ H[S]` for vertex-transitive `H`.
///
/// Draws `N` automorphisms `π_i` until every vertex `v` has some `i` with
/// `π_i(v) ∈ S`, then maps `v` to `(i, π_i(v))` for the first such `i`. The
/// result is checked with [`is_cohomomorphism`] before it is returned.
pub fn transitive_cover<R: Rng>(
    h: &Graph,
    subset: &[usize],
    sampler: &dyn AutomorphismSampler,
    rng: &mut R,
) -> Result<TransitiveCover> {
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    let induced = h.induced_subgraph(subset)?;
    let n = h.order();
    let copies = transitive_cover_size(n, subset.len());
    let mut position = vec![None; n];
    for (i, &v) in subset.iter().enumerate() {
        position[v] = Some(i);
    }
    let target = strong_product(&Graph::empty(copies), &induced);

    for attempt in 1..=MAX_COVER_ATTEMPTS {
        let perms: Vec<Vec<usize>> = (0..copies).map(|_| sampler.sample(rng)).collect();
        if let Some(p) = perms.iter().find(|p| !h.is_automorphism(p)) {
            return Err(Error::Sampler(format!("sampled permutation {p:?} is not an automorphism")));
        }
        let map: Option<Vec<usize>> = (0..n)
            .map(|v| {
                perms
                    .iter()
                    .enumerate()
                    .find_map(|(i, p)| position[p[v]].map(|j| i * subset.len() + j))
            })
            .collect();
        if let Some(map) = map {
            let map = VertexMap::new(map, target.order())?;
            if !is_cohomomorphism(&map, h, &target) {
                return Err(Error::Sampler(
                    "cover is not a homomorphism of complements; is H vertex-transitive under the sampler?".into(),
                ));
            }
            return Ok(TransitiveCover {
                copies,
                map,
                target,
                attempts: attempt,
            });
        }
    }
    Err(Error::Sampler(format!(
        "no surjective cover after {MAX_COVER_ATTEMPTS} attempts"
    )))
}
