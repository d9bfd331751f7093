use num::{BigRational, BigUint, ToPrimitive, Zero};
use rayon::prelude::*;

use super::distribution::ExactDist;
use super::ntype::{enumerate_ntypes, type_class_size, NType};
use crate::error::{Error, Result};
use crate::graph::{Graph, Label};

/// Default bound on the number of sequences a type graph may materialize.
pub const DEFAULT_CAP: usize = 2_000_000;

/// The cap in force: `SPECTRUM_CAP` if set and parseable, else [`DEFAULT_CAP`].
pub fn materialization_cap() -> usize {
    std::env::var("SPECTRUM_CAP")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_CAP)
}

/// Which sequences of `V(G)^n` to keep.
#[derive(Clone, Debug, PartialEq)]
pub enum TypeTarget {
    /// A single type class.
    Exact(NType),
    /// All sequences whose type lies in the open total-variation ball.
    Ball { center: ExactDist, eps: BigRational },
}

#[derive(Clone, Debug)]
pub struct TypeGraphSpec {
    pub base: Graph,
    pub n: u64,
    pub target: TypeTarget,
}

impl TypeGraphSpec {
    /// `G^{⊠n}[T^n_P]` with `n` the type's denominator.
    pub fn exact(base: Graph, p: NType) -> Result<Self> {
        if p.alphabet_size() != base.order() {
            return Err(Error::Shape(format!(
                "type on {} symbols for a graph on {} vertices",
                p.alphabet_size(),
                base.order()
            )));
        }
        Ok(TypeGraphSpec {
            base,
            n: p.n(),
            target: TypeTarget::Exact(p),
        })
    }

    pub fn ball(base: Graph, n: u64, center: ExactDist, eps: BigRational) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("type graph power must be at least 1".into()));
        }
        if eps < BigRational::zero() {
            return Err(Error::Domain("negative ball radius".into()));
        }
        if center.len() != base.order() {
            return Err(Error::Shape(format!(
                "distribution on {} points for a graph on {} vertices",
                center.len(),
                base.order()
            )));
        }
        Ok(TypeGraphSpec {
            base,
            n,
            target: TypeTarget::Ball { center, eps },
        })
    }

    /// The `n`-types selected by the target.
    pub fn types(&self) -> Vec<NType> {
        match &self.target {
            TypeTarget::Exact(p) => vec![p.clone()],
            TypeTarget::Ball { center, eps } => {
                let labels: Vec<Label> = (0..self.base.order()).map(Label::Index).collect();
                enumerate_ntypes(&labels, self.n)
                    .into_iter()
                    .filter(|t| {
                        let d = ExactDist::indexed(t.to_distribution().weights().to_vec())
                            .expect("type is a distribution");
                        let c = ExactDist::indexed(center.weights().to_vec())
                            .expect("center is a distribution");
                        d.total_variation(&c).expect("same support") < *eps
                    })
                    .collect()
            }
        }
    }

    /// Exact number of vertices the type graph would have.
    pub fn vertex_count(&self) -> BigUint {
        self.types().iter().map(type_class_size).sum()
    }
}

/// All sequences with the given symbol counts, in lexicographic order.
pub fn type_class_sequences(counts: &[u64]) -> Vec<Vec<u32>> {
    let n: u64 = counts.iter().sum();
    let mut left = counts.to_vec();
    let mut seq = Vec::with_capacity(n as usize);
    let mut out = Vec::new();
    fill(&mut left, &mut seq, n as usize, &mut out);
    out
}

fn fill(left: &mut [u64], seq: &mut Vec<u32>, n: usize, out: &mut Vec<Vec<u32>>) {
    if seq.len() == n {
        out.push(seq.clone());
        return;
    }
    for x in 0..left.len() {
        if left[x] > 0 {
            left[x] -= 1;
            seq.push(x as u32);
            fill(left, seq, n, out);
            seq.pop();
            left[x] += 1;
        }
    }
}

/// Materializes `G^{⊠n}[T]`. Vertices are labeled by their sequences and
/// ordered lexicographically; two distinct sequences are adjacent when they
/// are coordinatewise adjacent-or-equal in `G`. An empty selection yields the
/// empty graph.
pub fn type_graph(spec: &TypeGraphSpec) -> Result<Graph> {
    type_graph_with_cap(spec, materialization_cap())
}

pub fn type_graph_with_cap(spec: &TypeGraphSpec, cap: usize) -> Result<Graph> {
    let count = spec.vertex_count();
    if count > BigUint::from(cap) {
        return Err(Error::CapExceeded {
            requested: count.to_u128().unwrap_or(u128::MAX),
            cap,
        });
    }
    let mut sequences: Vec<Vec<u32>> = spec
        .types()
        .iter()
        .flat_map(|t| type_class_sequences(t.counts()))
        .collect();
    sequences.sort_unstable();
    let g = &spec.base;
    let adjacent = |s: &[u32], t: &[u32]| {
        s != t
            && s.iter()
                .zip(t)
                .all(|(&a, &b)| g.adjacent_or_equal(a as usize, b as usize))
    };
    let neighbors: Vec<Vec<usize>> = (0..sequences.len())
        .into_par_iter()
        .map(|i| {
            ((i + 1)..sequences.len())
                .filter(|&j| adjacent(&sequences[i], &sequences[j]))
                .collect()
        })
        .collect();
    let labels = sequences.into_iter().map(Label::Seq).collect();
    let mut out = Graph::with_labels(labels);
    for (i, row) in neighbors.into_iter().enumerate() {
        for j in row {
            out.set_edge(i, j, true);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigInt;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn binary_empty_graph_type_class() {
        let spec = TypeGraphSpec::exact(Graph::empty(2), NType::indexed(vec![2, 2]).unwrap()).unwrap();
        let t = type_graph(&spec).unwrap();
        assert_eq!(t.order(), 6);
        assert_eq!(t.edge_count(), 0);
        assert_eq!(t.label(0), &Label::Seq(vec![0, 0, 1, 1]));
    }

    #[test]
    fn c5_pair_type_is_an_edge() {
        let spec =
            TypeGraphSpec::exact(Graph::cycle(5), NType::indexed(vec![1, 1, 0, 0, 0]).unwrap())
                .unwrap();
        let t = type_graph(&spec).unwrap();
        assert_eq!(t.order(), 2);
        assert_eq!(t.edge_count(), 1);
        assert_eq!(t.labels(), &[Label::Seq(vec![0, 1]), Label::Seq(vec![1, 0])]);
    }

    #[test]
    fn first_power_is_induced_subgraph() {
        let g = Graph::petersen();
        let delta = NType::indexed((0..10).map(|v| u64::from(v == 3)).collect()).unwrap();
        let spec = TypeGraphSpec::exact(g.clone(), delta).unwrap();
        assert_eq!(type_graph(&spec).unwrap().labels(), &[Label::Seq(vec![3])]);
        let uniform = ExactDist::indexed(vec![q(1, 10); 10]).unwrap();
        let spec = TypeGraphSpec::ball(g.clone(), 1, uniform, q(1, 1)).unwrap();
        let t = type_graph(&spec).unwrap();
        assert_eq!(t.with_index_labels(), g);
    }

    #[test]
    fn ball_is_union_of_type_classes() {
        let center = ExactDist::indexed(vec![q(1, 2), q(1, 2)]).unwrap();
        let spec = TypeGraphSpec::ball(Graph::complete(2), 4, center.clone(), q(1, 4)).unwrap();
        // types (2,2) at distance 0, (3,1)/(1,3) at exactly 1/4: excluded
        assert_eq!(spec.types().len(), 1);
        let spec = TypeGraphSpec::ball(Graph::complete(2), 4, center.clone(), q(3, 10)).unwrap();
        assert_eq!(spec.types().len(), 3);
        let t = type_graph(&spec).unwrap();
        assert_eq!(t.order(), 14);
        let far = ExactDist::indexed(vec![q(1, 1), q(0, 1)]).unwrap();
        let spec = TypeGraphSpec::ball(Graph::complete(2), 4, far, q(0, 1)).unwrap();
        assert_eq!(type_graph(&spec).unwrap().order(), 0);
    }

    #[test]
    fn cap_is_enforced() {
        let spec =
            TypeGraphSpec::exact(Graph::cycle(5), NType::indexed(vec![2; 5]).unwrap()).unwrap();
        match type_graph_with_cap(&spec, 1000) {
            Err(Error::CapExceeded { requested, cap }) => {
                assert_eq!(requested, 113_400);
                assert_eq!(cap, 1000);
            }
            other => panic!("expected cap error, got {other:?}"),
        }
    }

    #[test]
    fn sequences_are_lexicographic() {
        let s = type_class_sequences(&[1, 2]);
        assert_eq!(s, vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]);
    }
}
