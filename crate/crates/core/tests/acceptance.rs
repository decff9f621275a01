//! Acceptance suite: one PASS/FAIL line per criterion, exact comparisons only.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use conn_core::branchdec::{
    branch_width, decompose_over, exactify_traced, trisection_upper_bound, AtomFamily, DirectedDecomposition,
};
use conn_core::canonical::{canonical_decomposition, canonicity_test, check_nested_for};
use conn_core::corpus::{connected_graphs_up_to, graphs_up_to};
use conn_core::duality::{branch_width_via_tangles, duality_check};
use conn_core::fixtures::{
    bowtie_graph, complete_graph, cutrank_graph, cycle_graph, exadec2_graph, exadec_graph, h0, linked_triangles_graph, path_graph,
    rankdec_decomposition, star_graph, vector_decomposition_narrow, vector_decomposition_wide, vector_family,
};
use conn_core::graphbridge::{branchdec_to_treedec, kappa_vertex_trisection, mu_branchdec_from_kappa, treedec_to_branchdec, treewidth};
use conn_core::instances::{
    cut_matrix, cut_rank, edge_connectivity, hypergraph_cover_function, matching_connectivity, polymatroid_connectivity,
    vector_connectivity, vertex_connectivity, Graph,
};
use conn_core::io::canonical_json;
use conn_core::props::Property;
use conn_core::subset::{elements, is_subset, size, submasks, Mask, Universe};
use conn_core::tangles::{
    all_graph_separations, all_tangles, g_tangle_from_kappa, g_tangle_from_touching, g_tangle_of_edge, is_g_tangle, is_well_linked,
    kappa_tangle_from_g, maximal_tangles, minimum_cover, tangle_violation, touching_from_g_tangle, ExceptionCase, GTangle, Tangle,
};
use conn_core::{check_properties, ConnectivitySystem, Evaluate, Limits, SetFunction};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

fn graph_systems(g: &Graph) -> [(&'static str, ConnectivitySystem); 4] {
    [("nu", edge_connectivity(g)), ("kappa", vertex_connectivity(g)), ("mu", matching_connectivity(g)), ("rho", cut_rank(g))]
}

fn edges_str(g: &Graph) -> String {
    format!("{} vertices, edges {:?}", g.n(), g.edges())
}

// ---------------------------------------------------------------- 1

fn worked_fixtures() -> Outcome {
    let vsys = vector_connectivity(&vector_family());
    let bw = ok(branch_width(&vsys, 14), "vector bw")?.value;
    ensure!(bw == 1, "vector family bw = {bw}");
    ensure!(vector_decomposition_narrow().width(&vsys) == 1, "first decomposition width");
    let w2 = vector_decomposition_wide().width(&vsys);
    ensure!(w2 == 2, "second decomposition width = {w2}");

    let g = cutrank_graph();
    let x = ok(g.vertex_universe().mask_of(&["a", "b", "c"]), "labels")?;
    let m = cut_matrix(&g, x).to_dense();
    ensure!(m == vec![vec![1, 1, 1, 0], vec![1, 0, 0, 1], vec![0, 1, 1, 1]], "cut matrix {m:?}");
    ensure!(cut_rank(&g).eval(x) == 2, "rho(abc) = {}", cut_rank(&g).eval(x));

    let d = rankdec_decomposition();
    let widths = (d.width(&edge_connectivity(&g)), d.width(&matching_connectivity(&g)), d.width(&cut_rank(&g)));
    ensure!(widths == (8, 3, 2), "rankdec widths {widths:?}");

    for n in 1..=7 {
        let k = complete_graph(n);
        let (nu, mu, rho) = (edge_connectivity(&k), matching_connectivity(&k), cut_rank(&k));
        for x in submasks(k.all_vertices()) {
            let (a, b) = (size(x) as i64, (n - size(x)) as i64);
            let r = i64::from(a > 0 && b > 0);
            ensure!(nu.eval(x) == a * b && mu.eval(x) == a.min(b) && rho.eval(x) == r, "K{n} closed form at {x:#x}");
        }
    }

    let f = hypergraph_cover_function(&h0());
    let rep = ok(check_properties(&f, &Limits::default()), "H0 properties")?;
    let v = rep.violations.iter().find(|v| v.property == Property::Submodular).ok_or("H0 reported submodular")?;
    let u = f.universe();
    let (x, y) = (ok(u.mask_of(&["1", "4"]), "labels")?, ok(u.mask_of(&["2", "4"]), "labels")?);
    ensure!(v.x == x && v.y == Some(y), "H0 counterexample {:#x} {:?}", v.x, v.y);
    let vals = (f.eval(x), f.eval(y), f.eval(x & y), f.eval(x | y));
    ensure!(vals == (1, 1, 1, 2), "H0 values {vals:?}");
    Ok("vector bw 1/1/2, cut-rank matrix, rankdec (8,3,2), K1..K7 closed forms, H0 (1,1,1,2)".into())
}

// ---------------------------------------------------------------- 2

fn duality_suite() -> Outcome {
    let corpus = graphs_up_to(5);
    let mut checks = 0;
    for g in &corpus {
        for (name, sys) in graph_systems(g) {
            let bw = ok(branch_width(&sys, 14), "dp")?.value;
            let bt = ok(branch_width_via_tangles(&sys), "tangles")?;
            ensure!(bw == bt, "{name} on {}: dp {bw} vs tangles {bt}", edges_str(g));
            for k in 1..=bw + 1 {
                let v = ok(duality_check(&sys, &AtomFamily::Singletons, k), &format!("{name} k={k} on {}", edges_str(g)))?;
                ensure!(v.has_tangle() == (k <= bw), "{name} k={k}: wrong side on {}", edges_str(g));
                checks += 1;
            }
        }
    }
    Ok(format!("{} graphs x 4 systems, {checks} duality checks", corpus.len()))
}

// ---------------------------------------------------------------- 3

fn optimal_kappa_decomposition(g: &Graph, kappa: &ConnectivitySystem) -> Result<(i64, DirectedDecomposition), String> {
    let bw = ok(branch_width_via_tangles(kappa), "kappa bw")?;
    let d = ok(decompose_over(kappa, &AtomFamily::Singletons, bw + 1), "decompose")?
        .ok_or_else(|| format!("no decomposition of width {bw} for {}", edges_str(g)))?;
    ensure!(ok(decompose_over(kappa, &AtomFamily::Singletons, bw), "decompose")?.is_none(), "width below bw on {}", edges_str(g));
    ensure!(d.is_branch_decomposition() && d.width(kappa) == bw, "bad optimal decomposition on {}", edges_str(g));
    Ok((bw, d))
}

fn inequality_suite() -> Outcome {
    let corpus = connected_graphs_up_to(7);
    let mut deg2 = 0;
    for g in &corpus {
        let [(_, nu), (_, kappa), (_, mu), (_, rho)] = graph_systems(g);
        for x in submasks(g.all_vertices()) {
            ensure!(rho.eval(x) <= mu.eval(x) && mu.eval(x) <= nu.eval(x), "rho <= mu <= nu fails at {x:#x} on {}", edges_str(g));
        }
        let (tw, td) = ok(treewidth(g, 12), "treewidth")?;
        let bw_mu = ok(branch_width(&mu, 14), "mu bw")?.value;
        let n = g.n() as i64;
        let tri = ok(trisection_upper_bound(&mu), "mu trisection")?.value;
        ensure!(tri <= (n + 2) / 3, "mu trisection {tri} on {}", edges_str(g));
        let tri = ok(trisection_upper_bound(&rho), "rho trisection")?.value;
        ensure!(tri <= (n + 2) / 3, "rho trisection {tri} on {}", edges_str(g));
        if g.m() == 0 {
            ensure!(tw == 0, "single vertex treewidth");
            continue;
        }
        let tri = ok(kappa_vertex_trisection(g), "kappa trisection")?;
        ensure!(tri.value <= (2 * n + 2) / 3, "kappa vertex trisection {} on {}", tri.value, edges_str(g));
        let (bw, d) = optimal_kappa_decomposition(g, &kappa)?;
        // tw -> bw converter: width at most tw + 1.
        let bd = ok(treedec_to_branchdec(g, &td), "tw2bw")?;
        ensure!(bd.width(&kappa) <= tw + 1 && bw <= tw + 1, "bw {bw} > tw+1 = {} on {}", tw + 1, edges_str(g));
        // bw -> tw converter: width + 1 at most max(3/2 bw, 2).
        let back = ok(branchdec_to_treedec(g, &ok(d.to_undirected(), "undirected")?), "bw2tw")?;
        ok(back.validate(g), "bw2tw output")?;
        ensure!(2 * (back.width() + 1) <= (3 * bw).max(4), "bw2tw width {} for bw {bw} on {}", back.width(), edges_str(g));
        ensure!(2 * (tw + 1) <= (3 * bw).max(4), "tw+1 > max(3/2 bw, 2) on {}", edges_str(g));
        if (0..g.n()).any(|v| g.degree(v) == 2) {
            deg2 += 1;
            ensure!(bw_mu <= bw && bw <= 2 * bw_mu, "bw(mu) {bw_mu} vs bw(kappa) {bw} on {}", edges_str(g));
            let md = ok(mu_branchdec_from_kappa(g, &d), "mu from kappa")?;
            ensure!(md.is_branch_decomposition() && md.width(&mu) <= bw.max(1), "mu-from-kappa width on {}", edges_str(g));
        }
    }
    Ok(format!("{} connected graphs, {deg2} with a degree-2 vertex", corpus.len()))
}

// ---------------------------------------------------------------- 4

fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut es = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                es.push((u, v));
            }
        }
    }
    Graph::indexed(n, &es).expect("simple")
}

/// `κ_π` for a random coverage function `π(X) = |⋃_{x∈X} A_x|`.
fn random_coverage_system(rng: &mut ChaCha8Rng, n: usize) -> ConnectivitySystem {
    let sets: Vec<u32> = (0..n).map(|_| rng.gen_range(0..1u32 << 6)).collect();
    let pi = SetFunction::new(Universe::indexed(n), move |x: Mask| elements(x).fold(0u32, |a, i| a | sets[i]).count_ones() as i64);
    polymatroid_connectivity(&pi, &Limits::default()).expect("coverage functions are polymatroids")
}

fn random_system(rng: &mut ChaCha8Rng) -> ConnectivitySystem {
    match rng.gen_range(0..3) {
        0 => {
            let n = rng.gen_range(2..=8);
            random_coverage_system(rng, n)
        }
        1 => {
            let n = rng.gen_range(2..=8);
            let g = random_graph(rng, n, 0.5);
            match rng.gen_range(0..3) {
                0 => edge_connectivity(&g),
                1 => matching_connectivity(&g),
                _ => cut_rank(&g),
            }
        }
        _ => {
            let g = random_graph(rng, 5, 0.6);
            if g.m() >= 2 && g.m() <= 8 {
                vertex_connectivity(&g)
            } else {
                random_coverage_system(rng, 6)
            }
        }
    }
}

/// Random rooted binary tree whose children's cones cover the parent's.
fn random_pre_decomposition(rng: &mut ChaCha8Rng, full: Mask) -> DirectedDecomposition {
    let mut children: Vec<Option<(usize, usize)>> = vec![None];
    let mut cones = vec![full];
    let mut t = 0;
    while t < cones.len() {
        if cones.len() < 15 && (t == 0 || rng.gen_bool(0.55)) {
            let x = cones[t];
            let (mut a, mut b) = (0, 0);
            for i in elements(full) {
                let m = 1 << i;
                if x & m != 0 {
                    match rng.gen_range(0..3) {
                        0 => a |= m,
                        1 => b |= m,
                        _ => {
                            a |= m;
                            b |= m;
                        }
                    }
                } else if rng.gen_bool(0.2) {
                    if rng.gen_bool(0.5) {
                        a |= m
                    } else {
                        b |= m
                    }
                }
            }
            children[t] = Some((cones.len(), cones.len() + 1));
            cones.extend([a, b]);
            children.extend([None, None]);
        }
        t += 1;
    }
    DirectedDecomposition::from_parts(full, 0, children, cones).expect("covering cones")
}

fn exactness_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut steps_total, mut runs) = (0, 0);
    while runs < 1000 {
        let sys = random_system(&mut rng);
        let rep = ok(check_properties(&sys, sys.limits()), "properties")?;
        ensure!(rep.is_connectivity_function(), "random system {} is not a connectivity function", sys.name());
        for _ in 0..10 {
            let d = random_pre_decomposition(&mut rng, sys.full());
            let (e, steps) = ok(exactify_traced(&d, &sys), "exactify")?;
            ensure!(e.is_exact(), "output not exact");
            ensure!(e.width(&sys) <= d.width(&sys), "width grew from {} to {}", d.width(&sys), e.width(&sys));
            ensure!(d.leaves().into_iter().all(|t| is_subset(e.cone(t), d.cone(t))), "a leaf cone grew");
            let start: (i64, usize) = (d.cones().iter().map(|&c| sys.eval(c)).sum(), d.cones().iter().map(|&c| size(c)).sum());
            let mut last = start;
            for s in &steps {
                ensure!(s.measure < last, "measure did not decrease at node {}", s.node);
                last = s.measure;
            }
            steps_total += steps.len();
            runs += 1;
        }
    }
    Ok(format!("{runs} pre-decompositions, {steps_total} exactify steps"))
}

// ---------------------------------------------------------------- 5

fn check_tangle_axioms(sys: &ConnectivitySystem, t: &Tangle, kappa_graph: Option<&Graph>) -> Result<(), String> {
    let k = t.order();
    let full = sys.full();
    if let Some(v) = ok(tangle_violation(sys, t), "violation")? {
        return Err(format!("enumerated tangle fails {v}"));
    }
    for &x in t.members() {
        for y in submasks(full & !x) {
            let z = x | y;
            ensure!(sys.eval(z) >= k || t.contains(z), "closure: superset {z:#x} of {x:#x} missing");
        }
        for &y in t.members() {
            ensure!(sys.eval(x & y) >= k || t.contains(x & y), "closure: intersection of {x:#x} and {y:#x} missing");
        }
    }
    for x in submasks(full) {
        if submasks(x).all(|y| sys.eval(y) < k) {
            ensure!(t.contains(full & !x), "small set {x:#x}: complement not a member");
        }
        if let Some(g) = kappa_graph {
            if (size(g.vertices_of(x)) as i64) < k {
                ensure!(t.contains(full & !x), "few vertices {x:#x}: complement not a member");
            }
        }
    }
    let s = ok(minimum_cover(sys, t), "minimum cover")?;
    let c = size(s) as i64;
    ensure!(c * sys.valence() >= k && c <= k, "cover size {c} outside [k/val, k] for k={k}");
    ensure!(ok(is_well_linked(sys, s), "well-linked")?, "minimum cover {s:#x} is not well-linked");
    Ok(())
}

fn tangle_suite() -> Outcome {
    let mut count = 0;
    let mut systems: Vec<(ConnectivitySystem, Option<Graph>)> = Vec::new();
    for g in graphs_up_to(5) {
        for (name, sys) in graph_systems(&g) {
            if sys.n() <= 8 {
                systems.push((sys, (name == "kappa").then(|| g.clone())));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in 2..=8 {
        for _ in 0..4 {
            systems.push((random_coverage_system(&mut rng, n), None));
        }
    }
    for (sys, g) in &systems {
        for level in ok(all_tangles(sys), "enumerate")? {
            for t in &level {
                check_tangle_axioms(sys, t, g.as_ref()).map_err(|e| format!("{} (n={}): {e}", sys.name(), sys.n()))?;
                count += 1;
            }
        }
    }
    Ok(format!("{} systems, {count} tangles", systems.len()))
}

// ---------------------------------------------------------------- 6

fn canonical_suite() -> Outcome {
    let mut corpus: Vec<(String, Graph)> = Vec::new();
    for n in 2..=5 {
        corpus.push((format!("P{n}"), path_graph(n)));
    }
    for n in 3..=6 {
        corpus.push((format!("C{n}"), cycle_graph(n)));
    }
    corpus.push(("K4".into(), complete_graph(4)));
    corpus.push(("K5".into(), complete_graph(5)));
    corpus.push(("bowtie".into(), bowtie_graph()));
    corpus.push(("linked triangles".into(), linked_triangles_graph()));
    corpus.push(("exadec".into(), exadec_graph()));
    corpus.push(("exadec2".into(), exadec2_graph()));
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut trials = 0;
    for (name, g) in &corpus {
        let sys = vertex_connectivity(g);
        let c = ok(canonical_decomposition(&sys, None), name)?;
        let fam = maximal_tangles(&ok(all_tangles(&sys), name)?);
        ok(check_nested_for(&sys, &fam, &c.nested), &format!("{name} TN1/TN2"))?;
        ok(c.tree.verify(&sys), &format!("{name} TD"))?;
        ensure!(c.tree.tangles == fam, "{name}: tree tangles differ from the maximal tangles");
        if sys.n() >= 2 {
            ensure!(fam.len() < sys.n(), "{name}: {} maximal tangles for n = {}", fam.len(), sys.n());
        }
        let again = ok(canonical_decomposition(&sys, None), name)?;
        ensure!(again == c && canonical_json(&sys, &again).to_string() == canonical_json(&sys, &c).to_string(), "{name}: rerun differs");
        for _ in 0..100 {
            let mut perm: Vec<usize> = (0..sys.n()).collect();
            perm.shuffle(&mut rng);
            ensure!(ok(canonicity_test(&sys, &perm, None), name)?, "{name}: relabelling {perm:?} breaks canonicity");
            trials += 1;
        }
    }
    Ok(format!("{} instances, {trials} relabellings", corpus.len()))
}

// ---------------------------------------------------------------- 7

fn isolated_vertex_tangle(g: &Graph, v: usize) -> Result<GTangle, String> {
    let seps = ok(all_graph_separations(g, 1), "separations")?;
    Ok(GTangle::new(1, seps.into_iter().filter(|s| s.b_vertices & !s.a_vertices & (1 << v) != 0).collect()))
}

fn isolated_edge_tangle(g: &Graph, e: usize) -> Result<GTangle, String> {
    let seps = ok(all_graph_separations(g, 1), "separations")?;
    Ok(GTangle::new(1, seps.into_iter().filter(|s| s.b_edges & (1 << e) != 0).collect()))
}

fn reed_round_trip(g: &Graph, s: &GTangle) -> Result<(), String> {
    let h = ok(touching_from_g_tangle(g, s), "touching family")?;
    let back = ok(g_tangle_from_touching(g, &h, s.order()), "tangle from touching family")?;
    ensure!(&back == s, "Reed round trip changed an order-{} tangle on {}", s.order(), edges_str(g));
    Ok(())
}

fn graph_tangle_suite() -> Outcome {
    let (mut trips, mut exceptions) = (0, [0usize; 3]);
    let mut corpus = graphs_up_to(5);
    // Dedicated fixtures for the three exceptional cases.
    let iso_vertex = Graph::indexed(3, &[(0, 1)]).map_err(|e| e.to_string())?;
    corpus.extend([iso_vertex.clone(), path_graph(2), star_graph(3)]);
    for g in &corpus {
        let kappa = vertex_connectivity(g);
        let levels = ok(all_tangles(&kappa), "kappa tangles")?;
        for t in levels.iter().flatten().filter(|t| t.order() >= 1) {
            let s = ok(g_tangle_from_kappa(g, t), "to graph tangle")?;
            if let Some(v) = ok(is_g_tangle(g, &s), "graph tangle check")? {
                return Err(format!("image of an order-{} tangle fails {v} on {}", t.order(), edges_str(g)));
            }
            ensure!(ok(kappa_tangle_from_g(g, &s), "back")? == Ok(t.clone()), "round trip changed a tangle on {}", edges_str(g));
            reed_round_trip(g, &s)?;
            trips += 1;
        }
        for e in 0..g.m() {
            let s = ok(g_tangle_of_edge(g, e), "edge tangle")?;
            if let Some(v) = ok(is_g_tangle(g, &s), "edge tangle check")? {
                return Err(format!("edge tangle fails {v} on {}", edges_str(g)));
            }
            let (u, w) = g.edge(e);
            let short = g.degree(u) == 1 || g.degree(w) == 1;
            match ok(kappa_tangle_from_g(g, &s), "edge tangle back")? {
                Err(ExceptionCase::ShortEdge(f)) => {
                    ensure!(short && f == e, "edge {e} wrongly exceptional on {}", edges_str(g));
                    exceptions[2] += 1;
                }
                Err(other) => return Err(format!("unexpected exception {other:?}")),
                Ok(t) => {
                    ensure!(!short, "pendant edge {e} gave a kappa tangle on {}", edges_str(g));
                    ensure!(levels.get(2).is_some_and(|l| l.contains(&t)), "edge {e} tangle is not a kappa tangle");
                }
            }
            reed_round_trip(g, &s)?;
            if g.degree(u) == 1 && g.degree(w) == 1 {
                let s1 = isolated_edge_tangle(g, e)?;
                ensure!(ok(is_g_tangle(g, &s1), "check")?.is_none(), "isolated edge tangle invalid");
                ensure!(ok(kappa_tangle_from_g(g, &s1), "back")? == Err(ExceptionCase::IsolatedEdge(e)), "isolated edge not exceptional");
                exceptions[1] += 1;
            }
        }
        for v in (0..g.n()).filter(|&v| g.degree(v) == 0) {
            let s = isolated_vertex_tangle(g, v)?;
            ensure!(ok(is_g_tangle(g, &s), "check")?.is_none(), "isolated vertex tangle invalid on {}", edges_str(g));
            ensure!(
                ok(kappa_tangle_from_g(g, &s), "back")? == Err(ExceptionCase::IsolatedVertex(v)),
                "isolated vertex not exceptional on {}",
                edges_str(g)
            );
            exceptions[0] += 1;
        }
    }
    ensure!(exceptions.iter().all(|&c| c > 0), "an exceptional case was not exercised: {exceptions:?}");
    Ok(format!(
        "{} graphs, {trips} round trips, exceptions (vertex, edge, pendant) = {exceptions:?}",
        corpus.len()
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("worked-example fixtures", worked_fixtures),
        ("duality suite", duality_suite),
        ("inequality suite", inequality_suite),
        ("exactness suite", exactness_suite),
        ("tangle-axiom suite", tangle_suite),
        ("canonical suite", canonical_suite),
        ("graph-tangle correspondence", graph_tangle_suite),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = t0.elapsed().as_secs_f64();
        match r {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail} ({secs:.2}s)", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {e} ({secs:.2}s)", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
