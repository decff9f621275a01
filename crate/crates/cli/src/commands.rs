//! One function per subcommand. Each returns the full stdout text so runs
//! are byte-for-byte reproducible.

use std::fmt::Write;

use conn_core::branchdec::{branch_width, decompose_over, AtomFamily, Decomposition, WidthCertificate};
use conn_core::canonical::{canonical_decomposition, canonicity_test};
use conn_core::duality::{branch_width_via_tangles, duality_check, DualityWitness};
use conn_core::error::check_limit;
use conn_core::graphbridge::{branchdec_to_treedec, mu_branchdec_from_kappa, treedec_to_branchdec, treewidth};
use conn_core::instances::{matching_connectivity, vertex_connectivity};
use conn_core::io::{
    canonical_dot, canonical_json, decomposition_dot, decomposition_json, duality_json, graph_treedec_dot, graph_treedec_json,
    property_report_json, tangles_json, undirected_dot, undirected_json, width_json, SCHEMA,
};
use conn_core::subset::{elements, hex, Mask};
use conn_core::tangles::{enumerate_tangles, greedy_cover, minimum_cover};
use conn_core::{check_properties, ConnectivitySystem, Evaluate, Limits, Universe};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::load::{load, Loaded};
use crate::{CliError, Command, Common, ConvertMode, ExportFormat, Format, Outcome};

fn ok(stdout: String) -> Result<Outcome, CliError> {
    Ok(Outcome { stdout, code: 0 })
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialisable");
    s.push('\n');
    s
}

fn no_dot(cmd: &str) -> CliError {
    CliError::Usage(format!("{cmd} has no dot output"))
}

pub fn run(cmd: &Command, common: &Common, limits: Limits) -> Result<Outcome, CliError> {
    let fmt = common.format;
    match cmd {
        Command::Props { input } => props(&load(input, common.selector, limits)?, fmt, &limits),
        Command::Bw { input } => {
            let l = load(input, common.selector, limits)?;
            let sys = l.system(&limits)?;
            let cert = optimal(&sys)?;
            match fmt {
                Format::Text => ok(format!("{}\n", cert.value)),
                Format::Json => ok(pretty(&width_json(&sys, &cert))),
                Format::Dot => ok(match &cert.witness {
                    Decomposition::Directed(d) => decomposition_dot(&sys, d),
                    Decomposition::Undirected(d) => undirected_dot(&sys, d),
                }),
            }
        }
        Command::Tangles { input, k } => {
            let sys = load(input, common.selector, limits)?.system(&limits)?;
            let ts = enumerate_tangles(&sys, *k)?;
            match fmt {
                Format::Json => ok(pretty(&tangles_json(&sys, *k, &ts))),
                Format::Dot => Err(no_dot("tangles")),
                Format::Text => {
                    let u = sys.universe();
                    let mut s = format!("{} tangle(s) of order {k}\n", ts.len());
                    for (i, t) in ts.iter().enumerate() {
                        let mins: Vec<String> = t.minimal_members().into_iter().map(|x| u.format(x)).collect();
                        let _ = writeln!(s, "tangle {i}: {} members, minimal {}", t.len(), mins.join(" "));
                    }
                    ok(s)
                }
            }
        }
        Command::Cover { input, k } => cover(&load(input, common.selector, limits)?.system(&limits)?, *k, fmt),
        Command::Duality { input, k, atoms } => {
            let sys = load(input, common.selector, limits)?.system(&limits)?;
            let family = atom_family(sys.universe(), atoms)?;
            let v = duality_check(&sys, &family, *k)?;
            match fmt {
                Format::Json => ok(pretty(&duality_json(&sys, &v))),
                Format::Dot => match &v.witness {
                    DualityWitness::Decomposition(d) => ok(decomposition_dot(&sys, d)),
                    DualityWitness::Tangle(_) => Err(no_dot("a tangle witness")),
                },
                Format::Text => ok(match &v.witness {
                    DualityWitness::Decomposition(d) => format!("decomposition of width {} < {k} over {}\n", d.width(&sys), v.family),
                    DualityWitness::Tangle(t) => format!("tangle of order {k} avoiding {} ({} members)\n", v.family, t.len()),
                }),
            }
        }
        Command::Canonical { input, kmax, relabel } => {
            let sys = load(input, common.selector, limits)?.system(&limits)?;
            canonical(&sys, *kmax, *relabel, common.seed, fmt)
        }
        Command::Convert { mode, input } => convert(*mode, &load(input, common.selector, limits)?, &limits, fmt),
        Command::Export { to, input } => export(*to, &load(input, common.selector, limits)?, &limits),
    }
}

/// Exact branch width with a witness. Small universes go through the subset
/// dynamic programme; larger systems with a structural separation list use
/// the largest tangle order and a matching decomposition.
fn optimal(sys: &ConnectivitySystem) -> Result<WidthCertificate, CliError> {
    if sys.n() <= sys.limits().dp || !sys.has_structural_separations() {
        return Ok(branch_width(sys, sys.limits().dp)?);
    }
    let bw = branch_width_via_tangles(sys)?;
    let d = decompose_over(sys, &AtomFamily::Singletons, bw + 1)?
        .ok_or_else(|| conn_core::Error::Inconsistent(format!("no decomposition of width {bw}")))?;
    Ok(WidthCertificate { value: bw, witness: Decomposition::Directed(d) })
}

fn props(l: &Loaded, fmt: Format, limits: &Limits) -> Result<Outcome, CliError> {
    let f = l.function();
    let r = check_properties(&f, limits)?;
    let code = if r.is_connectivity_function() { 0 } else { 1 };
    let stdout = match fmt {
        Format::Json => pretty(&property_report_json(&f, &r)),
        Format::Dot => return Err(no_dot("props")),
        Format::Text => {
            let yn = |b: bool| if b { "yes" } else { "no" };
            let mut s = String::new();
            for (name, b) in [
                ("normalised", r.normalised),
                ("nonnegative", r.nonnegative),
                ("symmetric", r.symmetric),
                ("submodular", r.submodular),
                ("posimodular", r.posimodular),
            ] {
                let _ = writeln!(s, "{name}: {}", yn(b));
            }
            let _ = writeln!(s, "valence: {}", r.valence);
            let u = f.universe();
            for v in &r.violations {
                let y = v.y.map(|y| format!(" {}", u.format(y))).unwrap_or_default();
                let _ = writeln!(s, "violation {}: {}{y}", json!(v.property).as_str().unwrap_or("?"), u.format(v.x));
            }
            s
        }
    };
    Ok(Outcome { stdout, code })
}

fn cover(sys: &ConnectivitySystem, k: i64, fmt: Format) -> Result<Outcome, CliError> {
    let u = sys.universe();
    let ts = enumerate_tangles(sys, k)?;
    let mut rows = Vec::new();
    for t in &ts {
        let g = greedy_cover(sys, t);
        let m = minimum_cover(sys, t)?;
        rows.push((g, m));
    }
    match fmt {
        Format::Dot => Err(no_dot("cover")),
        Format::Json => {
            let list: Vec<Value> = rows
                .iter()
                .enumerate()
                .map(|(i, &(g, m))| {
                    json!({
                        "tangle": i,
                        "greedy": hex(g),
                        "greedy_elements": labels(u, g),
                        "minimum": hex(m),
                        "minimum_elements": labels(u, m),
                        "minimum_size": m.count_ones(),
                    })
                })
                .collect();
            ok(pretty(&json!({ "schema": SCHEMA, "kind": "covers", "universe": u.labels(), "k": k, "covers": list })))
        }
        Format::Text => {
            let mut s = format!("{} tangle(s) of order {k}\n", ts.len());
            for (i, &(g, m)) in rows.iter().enumerate() {
                let _ = writeln!(s, "tangle {i}: greedy {} minimum {} (size {})", u.format(g), u.format(m), m.count_ones());
            }
            ok(s)
        }
    }
}

fn labels(u: &Universe, x: Mask) -> Vec<&str> {
    elements(x).map(|i| u.label(i)).collect()
}

fn atom_family(u: &Universe, atoms: &[String]) -> Result<AtomFamily, CliError> {
    if atoms.is_empty() {
        return Ok(AtomFamily::Singletons);
    }
    let mut masks = Vec::new();
    for a in atoms {
        let parts: Vec<&str> = a.split(',').map(str::trim).filter(|p| !p.is_empty()).collect();
        masks.push(u.mask_of(&parts)?);
    }
    Ok(AtomFamily::generated_by(masks))
}

fn canonical(sys: &ConnectivitySystem, kmax: Option<i64>, relabel: usize, seed: u64, fmt: Format) -> Result<Outcome, CliError> {
    let c = canonical_decomposition(sys, kmax)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    for _ in 0..relabel {
        let mut perm: Vec<usize> = (0..sys.n()).collect();
        perm.shuffle(&mut rng);
        if !canonicity_test(sys, &perm, kmax)? {
            failures += 1;
        }
    }
    let mut out = match fmt {
        Format::Json => {
            let mut v = canonical_json(sys, &c);
            if relabel > 0 {
                v["relabellings"] = json!({ "seed": seed, "count": relabel, "failures": failures });
            }
            pretty(&v)
        }
        Format::Dot => canonical_dot(sys, &c),
        Format::Text => {
            let u = sys.universe();
            let tr = &c.tree;
            let mut s = format!("{} node(s), {} maximal tangle(s), {} nested separation(s)\n", tr.tree.len(), tr.tangles.len(), c.nested.len());
            for t in 0..tr.tree.len() {
                let parent = tr.tree.parent(t).map(|p| p.to_string()).unwrap_or_else(|| "-".into());
                let what = match tr.tangle_at(t) {
                    Some(i) => format!("tangle {i} of order {}", tr.tangles[i].order()),
                    None => "hub".into(),
                };
                let _ = writeln!(s, "node {t} parent {parent}: {what}, bag {}", u.format(tr.tree.bag(t)));
            }
            if relabel > 0 {
                let _ = writeln!(s, "relabellings: {relabel}, failures: {failures}");
            }
            s
        }
    };
    if fmt == Format::Dot && relabel > 0 {
        out.push_str(&format!("// relabellings: {relabel}, failures: {failures}\n"));
    }
    Ok(Outcome { stdout: out, code: if failures > 0 { 1 } else { 0 } })
}

fn convert(mode: ConvertMode, l: &Loaded, limits: &Limits, fmt: Format) -> Result<Outcome, CliError> {
    let g = l.graph().ok_or_else(|| CliError::Usage("convert needs graph input".into()))?;
    let kappa = vertex_connectivity(g).with_limits(*limits);
    let kappa_dec = || -> Result<_, CliError> {
        match optimal(&kappa)?.witness {
            Decomposition::Directed(d) => Ok(d),
            Decomposition::Undirected(d) => Ok(d.to_directed(None)?),
        }
    };
    match mode {
        ConvertMode::Tw2bw => {
            let (tw, td) = treewidth(g, limits.treewidth)?;
            let bd = treedec_to_branchdec(g, &td)?;
            match fmt {
                Format::Text => ok(format!("treewidth {tw}, branch decomposition of width {}\n", bd.width(&kappa))),
                Format::Json => {
                    let mut v = undirected_json(&kappa, &bd);
                    v["treewidth"] = json!(tw);
                    ok(pretty(&v))
                }
                Format::Dot => ok(undirected_dot(&kappa, &bd)),
            }
        }
        ConvertMode::Bw2tw => {
            let d = kappa_dec()?;
            let bw = d.width(&kappa);
            let td = branchdec_to_treedec(g, &d.to_undirected()?)?;
            match fmt {
                Format::Text => ok(format!("branch width {bw}, tree decomposition of width {}\n", td.width())),
                Format::Json => {
                    let mut v = graph_treedec_json(g, &td);
                    v["branch_width"] = json!(bw);
                    ok(pretty(&v))
                }
                Format::Dot => ok(graph_treedec_dot(g, &td)),
            }
        }
        ConvertMode::MuFromKappa => {
            let d = kappa_dec()?;
            let mu = matching_connectivity(g).with_limits(*limits);
            let md = mu_branchdec_from_kappa(g, &d)?;
            match fmt {
                Format::Text => ok(format!("kappa width {}, mu decomposition of width {}\n", d.width(&kappa), md.width(&mu))),
                Format::Json => ok(pretty(&decomposition_json(&mu, &md))),
                Format::Dot => ok(decomposition_dot(&mu, &md)),
            }
        }
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn export(to: ExportFormat, l: &Loaded, limits: &Limits) -> Result<Outcome, CliError> {
    let f = l.function();
    let u = f.universe();
    match to {
        ExportFormat::Json => {
            check_limit("export", u.len(), limits.exhaustive)?;
            let values: Vec<i64> = (0..=u.full()).map(|x| f.eval(x)).collect();
            let mut v = json!({
                "schema": SCHEMA,
                "kind": "system",
                "selector": l.selector.to_string(),
                "input": l.input.kind(),
                "universe": u.labels(),
                "values": values,
            });
            if let Some(g) = l.graph() {
                let edges: Vec<[&str; 2]> = g.edges().iter().map(|&(a, b)| [g.label(a), g.label(b)]).collect();
                v["graph"] = json!({ "vertices": g.vertex_universe().labels(), "edges": edges });
            }
            if let Some(h) = l.hypergraph() {
                let edges: Vec<Vec<&str>> = h.edges().iter().map(|&e| labels(h.vertices(), e)).collect();
                v["hypergraph"] = json!({ "vertices": h.vertices().labels(), "edge_labels": h.edge_universe().labels(), "edges": edges });
            }
            ok(pretty(&v))
        }
        ExportFormat::Dot => {
            let mut s = String::new();
            if let Some(g) = l.graph() {
                s.push_str("graph G {\n");
                for v in 0..g.n() {
                    let _ = writeln!(s, "  {};", quote(g.label(v)));
                }
                for (i, &(a, b)) in g.edges().iter().enumerate() {
                    let _ = writeln!(s, "  {} -- {} [label={}];", quote(g.label(a)), quote(g.label(b)), quote(&g.edge_label(i)));
                }
            } else if let Some(h) = l.hypergraph() {
                s.push_str("graph H {\n  node [shape=circle];\n");
                for v in h.vertices().labels() {
                    let _ = writeln!(s, "  {};", quote(v));
                }
                for (i, &e) in h.edges().iter().enumerate() {
                    let name = h.edge_universe().label(i);
                    let _ = writeln!(s, "  {} [shape=box];", quote(&format!("edge {name}")));
                    for v in elements(e) {
                        let _ = writeln!(s, "  {} -- {};", quote(&format!("edge {name}")), quote(h.vertices().label(v)));
                    }
                }
            } else {
                s.push_str("graph U {\n");
                for lab in u.labels() {
                    let _ = writeln!(s, "  {};", quote(lab));
                }
            }
            s.push_str("}\n");
            ok(s)
        }
    }
}
