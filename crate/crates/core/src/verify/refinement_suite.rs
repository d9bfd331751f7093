//! Properties of corner-based refinements `F(G, P)` for `χ̄_f` and `ϑ`,
//! their type-graph estimates, and the combinatorial lemmas behind them.

use num::BigUint;
use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::json;

use super::{check, each, expect, random_distribution, rng_for, Check, Corpus, Entry};
use crate::corners::{entropy, ConvexCorner};
use crate::error::{Error, Result};
use crate::graph::{
    disjoint_union, exists_cohomomorphism, is_cohomomorphism, join, strong_product, transitive_cover,
    transitive_cover_size, CoordinatePermutations, ExplicitGroup, Graph, Label, VertexMap,
};
use crate::params::{FractionalCliqueCover, SpectralPoint, Theta};
use crate::refinement::{
    capacity_within_type_lower, continuity_bound, fekete_estimate, maximize_refinement, CornerRefinement,
};
use crate::types::{
    binary_entropy, entropy_bits, enumerate_ntypes, type_class_bounds_hold, type_class_size, type_graph, NType,
    TypeGraphSpec,
};

fn corner(f: &dyn SpectralPoint, g: &Graph) -> Result<ConvexCorner> {
    f.corner(g)
        .ok_or_else(|| Error::Unsupported(format!("{} has no corner", f.name())))?
}

/// `F(G, P)` in bits, unclamped.
fn refine(f: &dyn SpectralPoint, g: &Graph, p: &[f64]) -> Result<f64> {
    Ok(entropy(&corner(f, g)?, p)?.bits)
}

fn pushforward(map: &[usize], p: &[f64], target: usize) -> Vec<f64> {
    let mut q = vec![0.0; target];
    for (x, &y) in map.iter().enumerate() {
        q[y] += p[x];
    }
    q
}

fn mix(lambda: f64, p: &[f64], q: &[f64]) -> Vec<f64> {
    p.iter().zip(q).map(|(a, b)| lambda * a + (1.0 - lambda) * b).collect()
}

fn random_graph<R: Rng>(rng: &mut R, n: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|_| rng.gen_bool(0.5))
        .collect();
    Graph::from_edges(n, &edges).expect("valid edges")
}

/// Nonempty corpus graphs.
fn graphs(corpus: &Corpus) -> Vec<Entry> {
    corpus.all().filter(|e| e.graph.order() > 0).cloned().collect()
}

/// `count` pairs of distinct nonempty small graphs, drawn with the seed.
fn sampled_pairs(corpus: &Corpus, seed: u64, salt: &str, count: usize, max_order: usize) -> Vec<(Entry, Entry)> {
    let pool: Vec<&Entry> = corpus
        .small
        .iter()
        .filter(|e| (1..=max_order).contains(&e.graph.order()))
        .collect();
    let mut all: Vec<(Entry, Entry)> = pool
        .iter()
        .flat_map(|a| pool.iter().map(move |b| ((*a).clone(), (*b).clone())))
        .collect();
    let mut rng = rng_for(seed, salt, 0);
    all.shuffle(&mut rng);
    all.truncate(count);
    all
}

fn per_point(f: &dyn SpectralPoint, corpus: &Corpus, seed: u64) -> Result<Vec<Check>> {
    let name = f.name();
    let gs = graphs(corpus);
    let id = |anchor: &str| format!("refinement.{anchor}.{name}");

    let range = each(&gs, |i, e| {
        let mut rng = rng_for(seed, &id("range"), i);
        let mut worst = None;
        for _ in 0..3 {
            let p = random_distribution(&mut rng, e.graph.order());
            let v = refine(f, &e.graph, &p)?;
            let h = entropy_bits(&p);
            if !(-1e-9..=h + 1e-9).contains(&v) {
                worst.get_or_insert(json!({"G": e.id, "P": p, "F": v, "H": h}));
            }
        }
        Ok(worst)
    });

    let concave = each(&gs, |i, e| {
        let mut rng = rng_for(seed, &id("P1"), i);
        let n = e.graph.order();
        let (p, q) = (random_distribution(&mut rng, n), random_distribution(&mut rng, n));
        let (fp, fq) = (refine(f, &e.graph, &p)?, refine(f, &e.graph, &q)?);
        for lambda in [0.25, 0.5, 0.75] {
            let m = mix(lambda, &p, &q);
            let fm = refine(f, &e.graph, &m)?;
            let chord = lambda * fp + (1.0 - lambda) * fq;
            let h_chord = lambda * (entropy_bits(&p) - fp) + (1.0 - lambda) * (entropy_bits(&q) - fq);
            if fm < chord - 1e-6 || entropy_bits(&m) - fm < h_chord - 1e-6 {
                return Ok(Some(json!({"G": e.id, "P": p, "Q": q, "lambda": lambda, "F(mix)": fm, "chord": chord})));
            }
        }
        Ok(None)
    });

    let continuity = each(&gs, |i, e| {
        let mut rng = rng_for(seed, &id("continuity"), i);
        let n = e.graph.order();
        let p = random_distribution(&mut rng, n);
        // one far pair and one near pair
        let near = mix(0.9, &p, &random_distribution(&mut rng, n));
        for q in [random_distribution(&mut rng, n), near] {
            let l1: f64 = p.iter().zip(&q).map(|(a, b)| (a - b).abs()).sum();
            let diff = (refine(f, &e.graph, &p)? - refine(f, &e.graph, &q)?).abs();
            let bound = continuity_bound(n, l1.min(2.0))?;
            if diff > bound + 1e-6 {
                return Ok(Some(json!({"G": e.id, "P": p, "Q": q, "difference": diff, "bound": bound})));
            }
        }
        Ok(None)
    });

    let complementary = each(&gs, |i, e| {
        let mut rng = rng_for(seed, &id("complementary"), i);
        let p = random_distribution(&mut rng, e.graph.order());
        let fs = entropy_bits(&p) - refine(f, &e.graph.complement(), &p)?;
        let fv = refine(f, &e.graph, &p)?;
        Ok(expect(fs <= fv + 1e-6, || json!({"G": e.id, "P": p, "F*": fs, "F": fv})))
    });

    let mut rng = rng_for(seed, &id("subadditivity"), 0);
    let same_order: Vec<(Graph, Graph)> = (0..24)
        .map(|i| {
            let n = 3 + i % 4;
            (random_graph(&mut rng, n), random_graph(&mut rng, n))
        })
        .collect();
    let mut subadditive = each(&same_order, |i, (g, h)| {
        let mut rng = rng_for(seed, &id("subadditivity.pairs"), i);
        let p = random_distribution(&mut rng, g.order());
        let meet = refine(f, &g.intersection(h)?, &p)?;
        let (fg, fh) = (refine(f, g, &p)?, refine(f, h, &p)?);
        Ok(expect(meet <= fg + fh + 1e-5, || {
            json!({"G": crate::graph::to_graph6(g), "H": crate::graph::to_graph6(h), "P": p, "F(G∩H)": meet, "F(G)+F(H)": fg + fh})
        }))
    });
    subadditive.extend(each(&gs, |i, e| {
        let mut rng = rng_for(seed, &id("subadditivity.complement"), i);
        let p = random_distribution(&mut rng, e.graph.order());
        let both = refine(f, &e.graph, &p)? + refine(f, &e.graph.complement(), &p)?;
        let h = entropy_bits(&p);
        Ok(expect(h <= both + 1e-5, || json!({"G": e.id, "P": p, "H": h, "F(G)+F(Ḡ)": both})))
    }));

    // Disjoint union adds h(p), join does not.
    let pairs = sampled_pairs(corpus, seed, &id("P3"), 40, 5);
    let union_join = each(&pairs, |i, (a, b)| {
        let mut rng = rng_for(seed, &id("P3"), i);
        let p = random_distribution(&mut rng, a.graph.order());
        let q = random_distribution(&mut rng, b.graph.order());
        let t: f64 = rng.gen_range(0.05..0.95);
        let joint: Vec<f64> = p.iter().map(|x| t * x).chain(q.iter().map(|x| (1.0 - t) * x)).collect();
        let base = t * refine(f, &a.graph, &p)? + (1.0 - t) * refine(f, &b.graph, &q)?;
        let u = refine(f, &disjoint_union(&a.graph, &b.graph), &joint)?;
        let j = refine(f, &join(&a.graph, &b.graph), &joint)?;
        let h = binary_entropy(t);
        Ok(expect((u - base - h).abs() <= 1e-5 && (j - base).abs() <= 1e-5, || {
            json!({"G": a.id, "H": b.id, "p": t, "F(G⊔H)": u, "F(G+H)": j, "pF+(1-p)F": base, "h(p)": h})
        }))
    });

    let example = each(&[()], |_, _| {
        let (c5, k3) = (Graph::cycle(5), Graph::complete(3));
        let mut rng = rng_for(seed, &id("P3.example"), 0);
        let (p, q) = (random_distribution(&mut rng, 5), random_distribution(&mut rng, 3));
        let t = 1.0 / 3.0;
        let joint: Vec<f64> = p.iter().map(|x| t * x).chain(q.iter().map(|x| (1.0 - t) * x)).collect();
        let lhs = refine(f, &disjoint_union(&c5, &k3), &joint)?;
        let rhs = t * refine(f, &c5, &p)? + (1.0 - t) * refine(f, &k3, &q)? + binary_entropy(t);
        Ok(expect((lhs - rhs).abs() <= 1e-6, || json!({"G": "C5 ⊔ K3", "p": t, "lhs": lhs, "rhs": rhs})))
    });

    // Monotonicity along cohomomorphisms, including C5[{0,1,2}] ≤ C5.
    let mut related: Vec<(String, Graph, String, Graph, VertexMap)> = vec![{
        let c5 = Graph::cycle(5);
        (
            "C5[{0,1,2}]".to_string(),
            c5.induced_subgraph(&[0, 1, 2])?,
            "C5".to_string(),
            c5,
            VertexMap::inclusion(&[0, 1, 2], 5)?,
        )
    }];
    for (h, g) in sampled_pairs(corpus, seed, &id("P4"), 400, 5) {
        if related.len() > 40 {
            break;
        }
        if let Some(phi) = exists_cohomomorphism(&h.graph, &g.graph)? {
            related.push((h.id, h.graph, g.id, g.graph, phi));
        }
    }
    let monotone = each(&related, |i, (hid, h, gid, g, phi)| {
        let mut rng = rng_for(seed, &id("P4"), i);
        let p = random_distribution(&mut rng, h.order());
        let fh = refine(f, h, &p)?;
        let fg = refine(f, g, &pushforward(phi.as_slice(), &p, g.order()))?;
        Ok(expect(fh <= fg + 1e-5, || json!({"H": hid, "G": gid, "map": phi.as_slice(), "P": p, "F(H,P)": fh, "F(G,φP)": fg})))
    });

    // Strong products of graphs on at most three vertices.
    let pairs = sampled_pairs(corpus, seed, &id("P2"), 64, 3);
    let sandwich = each(&pairs, |i, (a, b)| {
        let mut rng = rng_for(seed, &id("P2"), i);
        let (n, m) = (a.graph.order(), b.graph.order());
        let p = random_distribution(&mut rng, n * m);
        let pa: Vec<f64> = (0..n).map(|x| (0..m).map(|y| p[x * m + y]).sum()).collect();
        let pb: Vec<f64> = (0..m).map(|y| (0..n).map(|x| p[x * m + y]).sum()).collect();
        let info = entropy_bits(&pa) + entropy_bits(&pb) - entropy_bits(&p);
        let prod = refine(f, &strong_product(&a.graph, &b.graph), &p)?;
        let sum = refine(f, &a.graph, &pa)? + refine(f, &b.graph, &pb)?;
        Ok(expect(prod <= sum + 1e-4 && sum <= prod + info + 1e-4, || {
            json!({"G": a.id, "H": b.id, "P": p, "F(G⊠H)": prod, "F(G)+F(H)": sum, "I": info})
        }))
    });

    let fekete = each(&fekete_instances()?, |_, (label, g, t, k_max)| {
        let est = fekete_estimate(f, g, t, *k_max)?;
        let value = refine(f, g, &t.probabilities())?;
        let tr = &est.trace;
        let running_max = tr.windows(2).all(|w| w[1].best >= w[0].best);
        // a_{jk} ≥ j·a_k for the unnormalized sequence
        let superadditive = tr
            .iter()
            .all(|a| tr.iter().filter(|b| b.k % a.k == 0).all(|b| b.bits >= a.bits - 1e-4));
        Ok(expect(running_max && superadditive && est.bits <= value + 1e-4, || {
            json!({"G": label, "type": t.counts(), "trace": tr.iter().map(|p| p.bits).collect::<Vec<_>>(), "corner": value})
        }))
    });

    let maximum_graphs: Vec<Entry> = if name == "theta" {
        gs.iter().filter(|e| e.graph.order() >= 4).step_by(4).cloned().collect()
    } else {
        gs.clone()
    };
    let maximum = each(&maximum_graphs, |_, e| {
        let r = CornerRefinement {
            corner: corner(f, &e.graph)?,
        };
        let m = maximize_refinement(&r, seed)?;
        let exact = f.evaluate(&e.graph)?.to_f64().log2();
        Ok(expect((m.bits - exact).abs() <= 1e-4 && m.upper_bits >= exact - 1e-4, || {
            json!({"G": e.id, "max_P F": m.bits, "certificate": m.upper_bits, "log f(G)": exact})
        }))
    });

    let mut checks = vec![
        check(&id("range"), "range", 1e-9, range),
        check(&id("P1"), "P1", 1e-6, concave),
        check(&id("continuity"), "continuity", 1e-6, continuity),
        check(&id("complementary"), "complementary", 1e-6, complementary),
        check(&id("subadditivity"), "subadditivity", 1e-5, subadditive),
        check(&id("P3"), "P3", 1e-5, union_join),
        check(&id("P3.c5-k3"), "P3", 1e-6, example),
        check(&id("P4"), "P4", 1e-5, monotone),
        check(&id("P2"), "P2", 1e-4, sandwich),
        check(&id("fekete"), "fekete", 1e-4, fekete),
        check(&id("maximum"), "maximum", 1e-4, maximum),
    ];
    if name == "theta" {
        let marton = each(&gs, |i, e| {
            let mut rng = rng_for(seed, &id("marton"), i);
            let n = e.graph.order();
            let p = if i == 0 { vec![1.0 / n as f64; n] } else { random_distribution(&mut rng, n) };
            let both = refine(f, &e.graph, &p)? + refine(f, &e.graph.complement(), &p)?;
            let h = entropy_bits(&p);
            Ok(expect((both - h).abs() <= 1e-4, || json!({"G": e.id, "P": p, "F(G)+F(Ḡ)": both, "H": h})))
        });
        checks.push(check(&id("marton"), "marton", 1e-4, marton));
    }
    Ok(checks)
}

/// Small type-graph instances: label, graph, type, largest multiplier.
fn fekete_instances() -> Result<Vec<(String, Graph, NType, u64)>> {
    let k2_k1 = Graph::from_edges(3, &[(0, 1)])?;
    Ok(vec![
        ("Kbar2".into(), Graph::empty(2), NType::indexed(vec![1, 1])?, 3),
        ("K2".into(), Graph::complete(2), NType::indexed(vec![1, 1])?, 3),
        ("P3".into(), Graph::path(3), NType::indexed(vec![1, 1, 1])?, 2),
        ("K2 ⊔ K1".into(), k2_k1, NType::indexed(vec![1, 1, 1])?, 2),
        ("C5".into(), Graph::cycle(5), NType::indexed(vec![1, 1, 1, 0, 0])?, 2),
        ("C5".into(), Graph::cycle(5), NType::indexed(vec![1, 1, 1, 1, 1])?, 1),
    ])
}

fn lemma_checks(seed: u64) -> Result<Vec<Check>> {
    // Independence bounds within a type class never exceed either corner.
    let capacity = each(&fekete_instances()?, |_, (label, g, t, _)| {
        let c = capacity_within_type_lower(g, t, 1)?;
        let p = t.probabilities();
        let chibar = refine(&FractionalCliqueCover, g, &p)?;
        let theta = refine(&Theta, g, &p)?;
        Ok(expect(c <= chibar + 1e-9 && c <= theta + 1e-6, || {
            json!({"G": label, "type": t.counts(), "capacity lower": c, "chibar_f": chibar, "theta": theta})
        }))
    });

    // Coordinate permutations act transitively on every type class of C5.
    let c5 = Graph::cycle(5);
    let mut instances: Vec<(String, Graph, Vec<usize>, bool)> = vec![("C5".into(), c5.clone(), vec![0, 1], false)];
    for counts in [vec![1, 1, 1, 0, 0], vec![2, 1, 1, 0, 0], vec![1, 1, 1, 1, 1]] {
        let t = type_graph(&TypeGraphSpec::exact(c5.clone(), NType::indexed(counts.clone())?)?)?;
        let first = t.label(0).as_seq().map(|s| s[0]);
        let subset: Vec<usize> = (0..t.order())
            .filter(|&v| t.label(v).as_seq().map(|s| s[0]) == first)
            .collect();
        instances.push((format!("C5 type {counts:?}"), t, subset, true));
    }
    let runs: Vec<(usize, u64)> = (0..100).map(|r| (r % instances.len(), r as u64)).collect();
    let covers = each(&runs, |_, &(which, run)| {
        let (label, h, subset, coordinates) = &instances[which];
        let mut rng = rng_for(seed, "transitive-cover", run as usize);
        let cover = if *coordinates {
            transitive_cover(h, subset, &CoordinatePermutations::new(h)?, &mut rng)?
        } else {
            transitive_cover(h, subset, &ExplicitGroup::dihedral(h.order()), &mut rng)?
        };
        let want = transitive_cover_size(h.order(), subset.len());
        Ok(expect(cover.copies == want && is_cohomomorphism(&cover.map, h, &cover.target), || {
            json!({"H": label, "run": run, "copies": cover.copies, "expected": want})
        }))
    });

    let sizes: Vec<(usize, u64)> = (1..=4).flat_map(|d| (1..=10).map(move |n| (d, n))).collect();
    let bounds = each(&sizes, |_, &(d, n)| {
        let labels: Vec<Label> = (0..d).map(Label::Index).collect();
        let types = enumerate_ntypes(&labels, n);
        let bad = types.iter().find(|t| !type_class_bounds_hold(t));
        let total: BigUint = types.iter().map(type_class_size).sum();
        let partition = total == num::pow(BigUint::from(d), n as usize);
        Ok(expect(bad.is_none() && partition, || {
            json!({"alphabet": d, "n": n, "violating type": bad.map(|t| t.counts().to_vec()), "partition": partition})
        }))
    });

    Ok(vec![
        check("refinement.capacity-within-type", "capacity-within-type", 1e-6, capacity),
        check("refinement.transitive-cover", "transitive-cover", 0.0, covers),
        check("refinement.type-class-size", "type-class-size", 0.0, bounds),
    ])
}

/// Refinement properties for `χ̄_f` and `ϑ`, then the lemmas.
pub fn run_refinement_suite(corpus: &Corpus, seed: u64) -> Vec<Check> {
    let mut checks = Vec::new();
    for (f, salt) in [(&FractionalCliqueCover as &dyn SpectralPoint, "refinement.chibar_f"), (&Theta, "refinement.theta")] {
        match per_point(f, corpus, seed) {
            Ok(c) => checks.extend(c),
            Err(e) => checks.push(check(salt, "range", 0.0, vec![Err(e)])),
        }
    }
    match lemma_checks(seed) {
        Ok(c) => checks.extend(c),
        Err(e) => checks.push(check("refinement.lemmas", "transitive-cover", 0.0, vec![Err(e)])),
    }
    checks
}
