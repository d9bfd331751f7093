//! The convex-corner calculus on graph corners: the four corner axioms,
//! entropy identities, antiblocker duality and reconstruction.

use num::{BigRational, One};
use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::json;

use super::{check, each, expect, random_distribution, rng_for, Check, Corpus, Entry};
use crate::corners::{
    antiblocker, contains, contains_exact, corner_from_entropy, direct_sum, entropy, halton_directions,
    hausdorff_distance, pullback, support, tensor_product, theta_body, vertex_packing, ConvexCorner,
};
use crate::error::Result;
use crate::graph::{
    disjoint_union, exists_cohomomorphism, is_perfect, strong_product, to_graph6, Graph, Label, VertexMap,
};
use crate::types::{binary_entropy, entropy_bits};

/// `C_χ̄f(G) = VP(Ḡ)`.
fn vp_corner(g: &Graph) -> Result<ConvexCorner> {
    vertex_packing(&g.complement())
}

fn bits(c: &ConvexCorner, p: &[f64]) -> Result<f64> {
    Ok(entropy(c, p)?.bits)
}

fn subset_exact(a: &ConvexCorner, b: &ConvexCorner) -> Result<bool> {
    for g in a.generators().unwrap_or(&[]) {
        if !contains_exact(b, g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn sorted_generators(c: &ConvexCorner) -> Vec<Vec<BigRational>> {
    let mut g = c.generators().unwrap_or(&[]).to_vec();
    g.sort();
    g
}

fn nonempty(corpus: &Corpus, max_order: usize) -> Vec<Entry> {
    corpus
        .small
        .iter()
        .filter(|e| (1..=max_order).contains(&e.graph.order()))
        .cloned()
        .collect()
}

fn pairs(corpus: &Corpus, seed: u64, salt: &str, count: usize, max_order: usize) -> Vec<(Entry, Entry)> {
    let pool = nonempty(corpus, max_order);
    let mut all: Vec<(Entry, Entry)> = pool
        .iter()
        .flat_map(|a| pool.iter().map(move |b| (a.clone(), b.clone())))
        .collect();
    all.shuffle(&mut rng_for(seed, salt, 0));
    all.truncate(count);
    all
}

fn random_graph<R: Rng>(rng: &mut R, n: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|_| rng.gen_bool(0.5))
        .collect();
    Graph::from_edges(n, &edges).expect("valid edges")
}

fn axioms(corpus: &Corpus, seed: u64) -> Vec<Check> {
    // C1 for both constructions.
    let k1 = Graph::complete(1);
    let c1 = each(&["chibar_f", "theta"], |_, &name| {
        let ok = if name == "chibar_f" {
            sorted_generators(&vp_corner(&k1)?) == vec![vec![BigRational::one()]]
        } else {
            let th = theta_body(&k1.complement())?;
            let (s, _) = support(&th, &[1.0])?;
            (s - 1.0).abs() <= 1e-7 && contains(&th, &[1.0], 0.0)? && !contains(&th, &[1.001], 0.0)?
        };
        Ok(expect(ok, || json!({"construction": name})))
    });

    // C2 on products of graphs with at most three vertices.
    let c2 = each(&pairs(corpus, seed, "C2", 64, 3), |_, (a, b)| {
        let (ca, cb) = (vp_corner(&a.graph)?, vp_corner(&b.graph)?);
        let cp = vp_corner(&strong_product(&a.graph, &b.graph))?;
        let inner = subset_exact(&tensor_product(&ca, &cb)?, &cp)?;
        let outer_corner = antiblocker(&tensor_product(&antiblocker(&ca)?, &antiblocker(&cb)?)?)?;
        let outer = subset_exact(&cp, &outer_corner)?;
        Ok(expect(inner && outer, || json!({"G": a.id, "H": b.id, "inner": inner, "outer": outer})))
    });

    // C3 as generator-set equality.
    let c3 = each(&pairs(corpus, seed, "C3", 200, 5), |_, (a, b)| {
        let sum = direct_sum(&vp_corner(&a.graph)?, &vp_corner(&b.graph)?)?;
        let union = vp_corner(&disjoint_union(&a.graph, &b.graph))?;
        Ok(expect(sorted_generators(&sum) == sorted_generators(&union), || json!({"G": a.id, "H": b.id})))
    });

    // C4 along cohomomorphisms, for both constructions.
    let mut related: Vec<(Entry, Entry, VertexMap)> = Vec::new();
    for (h, g) in pairs(corpus, seed, "C4", 600, 5) {
        if related.len() >= 30 {
            break;
        }
        if let Ok(Some(phi)) = exists_cohomomorphism(&h.graph, &g.graph) {
            related.push((h, g, phi));
        }
    }
    let c4 = each(&related, |_, (h, g, phi)| {
        let labels = h.graph.labels().to_vec();
        let back = pullback(phi.as_slice(), labels.clone(), &vp_corner(&g.graph)?)?;
        let vp_ok = subset_exact(&back, &vp_corner(&h.graph)?)?;
        let th_back = pullback(phi.as_slice(), labels, &theta_body(&g.graph.complement())?)?;
        let th_h = theta_body(&h.graph.complement())?;
        let mut th_ok = true;
        for w in halton_directions(h.graph.order(), 12) {
            let (_, point) = support(&th_back, &w)?;
            th_ok &= contains(&th_h, &point, 1e-6)?;
        }
        Ok(expect(vp_ok && th_ok, || json!({"H": h.id, "G": g.id, "map": phi.as_slice(), "VP": vp_ok, "TH": th_ok})))
    });

    vec![
        check("corners.C1", "C1", 1e-7, c1),
        check("corners.C2.chibar_f", "C2", 0.0, c2),
        check("corners.C3.chibar_f", "C3", 0.0, c3),
        check("corners.C4", "C4", 1e-6, c4),
    ]
}

fn entropy_identities(corpus: &Corpus, seed: u64) -> Vec<Check> {
    let small = nonempty(corpus, 5);

    let vp_duality = each(&small, |i, e| {
        let a = vertex_packing(&e.graph)?;
        let dual = antiblocker(&a)?;
        let mut rng = rng_for(seed, "duality.vp", i);
        for _ in 0..20 {
            let p = random_distribution(&mut rng, e.graph.order());
            let (ha, hd, h) = (bits(&a, &p)?, bits(&dual, &p)?, entropy_bits(&p));
            if (ha + hd - h).abs() > 1e-5 {
                return Ok(Some(json!({"G": e.id, "P": p, "H_A": ha, "H_A*": hd, "H": h})));
            }
        }
        Ok(None)
    });

    let mut rng = rng_for(seed, "duality.th", 0);
    let random: Vec<Graph> = (0..20).map(|i| random_graph(&mut rng, 3 + i % 4)).collect();
    let th_duality = each(&random, |i, g| {
        let a = theta_body(g)?;
        let dual = antiblocker(&a)?;
        let mut rng = rng_for(seed, "duality.th", i + 1);
        for _ in 0..3 {
            let p = random_distribution(&mut rng, g.order());
            let (ha, hd, h) = (bits(&a, &p)?, bits(&dual, &p)?, entropy_bits(&p));
            if (ha + hd - h).abs() > 1e-5 {
                return Ok(Some(json!({"G": to_graph6(g), "P": p, "H_A": ha, "H_A*": hd, "H": h})));
            }
        }
        Ok(None)
    });

    let involution = each(&small, |_, e| {
        let a = vertex_packing(&e.graph)?;
        let d = hausdorff_distance(&antiblocker(&antiblocker(&a)?)?, &a, 1000)?;
        Ok(expect(d <= 1e-6, || json!({"G": e.id, "hausdorff": d})))
    });

    // Deleting an edge enlarges the packing polytope.
    let with_edges: Vec<Entry> = small.iter().filter(|e| e.graph.edge_count() > 0).cloned().collect();
    let subcorner = each(&with_edges, |i, e| {
        let edges = e.graph.edges();
        let fewer = Graph::from_edges(e.graph.order(), &edges[1..])?;
        let (a, b) = (vertex_packing(&e.graph)?, vertex_packing(&fewer)?);
        if !subset_exact(&a, &b)? {
            return Ok(Some(json!({"A": e.id, "B": to_graph6(&fewer), "inclusion": false})));
        }
        let mut rng = rng_for(seed, "subcorner", i);
        for _ in 0..5 {
            let p = random_distribution(&mut rng, e.graph.order());
            let (ha, hb) = (bits(&a, &p)?, bits(&b, &p)?);
            if ha < hb - 1e-6 {
                return Ok(Some(json!({"A": e.id, "B": to_graph6(&fewer), "P": p, "H_A": ha, "H_B": hb})));
            }
        }
        Ok(None)
    });

    // The tensor-product sandwich on VP(P3) ⊗ VP(K2).
    let (a, b) = (vertex_packing(&Graph::path(3)), vertex_packing(&Graph::complete(2)));
    let draws: Vec<usize> = (0..100).collect();
    let product = each(&draws, |i, _| {
        let (a, b) = (a.clone()?, b.clone()?);
        let c = tensor_product(&a, &b)?;
        let mut rng = rng_for(seed, "corner-product", i);
        let p = random_distribution(&mut rng, 6);
        let px: Vec<f64> = (0..3).map(|x| p[2 * x] + p[2 * x + 1]).collect();
        let py: Vec<f64> = (0..2).map(|y| (0..3).map(|x| p[2 * x + y]).sum()).collect();
        let info = entropy_bits(&px) + entropy_bits(&py) - entropy_bits(&p);
        let (hc, sum) = (bits(&c, &p)?, bits(&a, &px)? + bits(&b, &py)?);
        Ok(expect(hc <= sum + 1e-4 && sum <= hc + info + 1e-4, || {
            json!({"P": p, "H_C": hc, "H_A+H_B": sum, "I": info})
        }))
    });

    let sums = each(&pairs(corpus, seed, "corner-sum", 40, 5), |i, (g, h)| {
        let (a, b) = (vertex_packing(&g.graph)?, vertex_packing(&h.graph)?);
        let s = direct_sum(&a, &b)?;
        let mut rng = rng_for(seed, "corner-sum", i);
        let (p, q) = (random_distribution(&mut rng, a.dim()), random_distribution(&mut rng, b.dim()));
        let t: f64 = rng.gen_range(0.05..0.95);
        let joint: Vec<f64> = p.iter().map(|x| t * x).chain(q.iter().map(|x| (1.0 - t) * x)).collect();
        let lhs = bits(&s, &joint)?;
        let rhs = t * bits(&a, &p)? + (1.0 - t) * bits(&b, &q)? + binary_entropy(t);
        Ok(expect((lhs - rhs).abs() <= 1e-5, || json!({"A": g.id, "B": h.id, "p": t, "lhs": lhs, "rhs": rhs})))
    });

    // Pullbacks along random maps, into packing polytopes and theta bodies.
    let maps: Vec<usize> = (0..50).collect();
    let pullbacks = each(&maps, |i, _| {
        let mut rng = rng_for(seed, "corner-pullback", i);
        let n = rng.gen_range(2..=5);
        let m = rng.gen_range(1..=6);
        let g = random_graph(&mut rng, n);
        let map: Vec<usize> = (0..m).map(|_| rng.gen_range(0..n)).collect();
        let b = if i % 5 == 4 { theta_body(&g)? } else { vertex_packing(&g)? };
        let labels = (0..m).map(Label::Index).collect();
        let back = pullback(&map, labels, &b)?;
        let p = random_distribution(&mut rng, m);
        let mut q = vec![0.0; n];
        for (x, &y) in map.iter().enumerate() {
            q[y] += p[x];
        }
        let (lhs, rhs) = (bits(&back, &p)?, bits(&b, &q)?);
        Ok(expect((lhs - rhs).abs() <= 1e-6, || {
            json!({"B": to_graph6(&g), "theta": i % 5 == 4, "map": map, "P": p, "H_f*B(P)": lhs, "H_B(f_*P)": rhs})
        }))
    });

    let concave = each(&small, |i, e| {
        let a = vertex_packing(&e.graph)?;
        let mut rng = rng_for(seed, "corner-concavity", i);
        let n = e.graph.order();
        let (p, q) = (random_distribution(&mut rng, n), random_distribution(&mut rng, n));
        let (hp, hq) = (bits(&a, &p)?, bits(&a, &q)?);
        for t in [0.25, 0.5, 0.75] {
            let m: Vec<f64> = p.iter().zip(&q).map(|(x, y)| t * x + (1.0 - t) * y).collect();
            let hm = bits(&a, &m)?;
            if hm < t * hp + (1.0 - t) * hq - 1e-6 {
                return Ok(Some(json!({"G": e.id, "P": p, "Q": q, "lambda": t, "H(mix)": hm})));
            }
        }
        Ok(None)
    });

    vec![
        check("corners.duality.vp", "duality", 1e-5, vp_duality),
        check("corners.duality.theta", "duality", 1e-5, th_duality),
        check("corners.involution", "involution", 1e-6, involution),
        check("corners.subcorner", "subcorner", 1e-6, subcorner),
        check("corners.corner-product", "corner-product", 1e-4, product),
        check("corners.corner-sum", "corner-sum", 1e-5, sums),
        check("corners.corner-pullback", "corner-pullback", 1e-6, pullbacks),
        check("corners.concavity", "corner-concavity", 1e-6, concave),
    ]
}

fn special_corners(corpus: &Corpus) -> Vec<Check> {
    let perfect: Vec<Entry> = nonempty(corpus, 5)
        .into_iter()
        .filter(|e| is_perfect(&e.graph).unwrap_or(false))
        .collect();
    let perfect_check = each(&perfect, |_, e| {
        let (vp, th) = (vertex_packing(&e.graph)?, theta_body(&e.graph)?);
        let mut gap: f64 = 0.0;
        for w in halton_directions(e.graph.order(), 50) {
            gap = gap.max((support(&vp, &w)?.0 - support(&th, &w)?.0).abs());
        }
        let dual = hausdorff_distance(&antiblocker(&vp)?, &vertex_packing(&e.graph.complement())?, 1000)?;
        Ok(expect(gap <= 1e-4 && dual <= 1e-6, || json!({"G": e.id, "TH vs VP": gap, "VP* vs VP(Ḡ)": dual})))
    });

    let marton = each(&[()], |_, _| {
        let c5 = Graph::cycle(5);
        let u = [0.2; 5];
        let a = bits(&theta_body(&c5)?, &u)?;
        let b = bits(&theta_body(&c5.complement())?, &u)?;
        let log5 = 5f64.log2();
        Ok(expect((a + b - log5).abs() <= 1e-4 && (b - 0.5 * log5).abs() <= 1e-4, || {
            json!({"H_TH(C5)": a, "H_TH(C5bar)": b, "log 5": log5})
        }))
    });

    let targets: Vec<(&str, f64)> = vec![("unit corner", 0.02), ("unit cube", 0.02), ("VP(P3)", 0.05)];
    let reconstruction = each(&targets, |_, &(name, tol)| {
        let (target, recovered) = match name {
            "unit corner" => (
                ConvexCorner::unit_corner(2),
                corner_from_entropy(vec![Label::Index(0), Label::Index(1)], |p| Ok(entropy_bits(p)), 64)?,
            ),
            "unit cube" => (
                ConvexCorner::unit_cube(2),
                corner_from_entropy(vec![Label::Index(0), Label::Index(1)], |_| Ok(0.0), 64)?,
            ),
            _ => {
                let vp = vertex_packing(&Graph::path(3))?;
                let f = |p: &[f64]| bits(&vp, p);
                let r = corner_from_entropy(vp.ground().to_vec(), f, 64)?;
                (vp, r)
            }
        };
        let d = hausdorff_distance(&target, &recovered, 1000)?;
        Ok(expect(d <= tol, || json!({"target": name, "hausdorff": d, "tolerance": tol})))
    });

    vec![
        check("corners.perfect", "perfect", 1e-4, perfect_check),
        check("corners.marton.c5", "marton", 1e-4, marton),
        check("corners.reconstruction", "reconstruction", 0.05, reconstruction),
    ]
}

pub fn run_corner_suite(corpus: &Corpus, seed: u64) -> Vec<Check> {
    let mut checks = axioms(corpus, seed);
    checks.extend(entropy_identities(corpus, seed));
    checks.extend(special_corners(corpus));
    checks
}
