//! Bridges between graph invariants and connectivity systems: tree width,
//! and decompositions and tangles of `κ_G` versus `μ_G`.

mod treedec;

use crate::branchdec::{blockwise_decomposition, exactify, prune_empty_leaves, Decomposition, DirectedDecomposition, Shape, WidthCertificate};
use crate::error::{check_limit, Error, Result};
use crate::instances::{matching_connectivity, vertex_connectivity, Graph};
use crate::subset::{bit, elements, size, submasks, Mask};
use crate::system::{Evaluate, Limits};
use crate::tangles::{tangle_violation, Tangle};

pub use treedec::{branchdec_to_treedec, from_elimination_order, treedec_to_branchdec, treewidth, GraphTreeDecomposition};

/// Branch decomposition of `μ_G` from a branch decomposition of `κ_G`.
///
/// Width is at most `max(1, width)` of the input. Isolated vertices are
/// left out of the construction and hung off a new root at the end.
pub fn mu_branchdec_from_kappa(g: &Graph, bd: &DirectedDecomposition) -> Result<DirectedDecomposition> {
    bd.validate()?;
    if g.m() == 0 {
        return Err(Error::pre("graph has no edges"));
    }
    if bd.universe_mask() != g.all_edges() || !bd.is_complete() {
        return Err(Error::pre("not a complete decomposition of the edge set"));
    }
    let kappa_width = bd.width(&crate::instances::vertex_connectivity(g));
    let keep = g.vertices_of(g.all_edges());
    let gp = g.induced(keep);
    let mu = matching_connectivity(&gp);

    let cones: Vec<Mask> = bd.cones().iter().map(|&c| gp.vertices_of(c)).collect();
    let children: Vec<Option<(usize, usize)>> = (0..bd.len()).map(|t| bd.children(t)).collect();
    let lifted = DirectedDecomposition::from_parts(gp.all_vertices(), bd.root(), children, cones)?;
    let exact = exactify(&lifted, &mu)?;

    // Split two-element leaves.
    let mut children: Vec<Option<(usize, usize)>> = (0..exact.len()).map(|t| exact.children(t)).collect();
    let mut cones = exact.cones().to_vec();
    for t in exact.leaves() {
        if size(cones[t]) == 2 {
            let mut it = elements(cones[t]);
            let (a, b) = (it.next().expect("two"), it.next().expect("two"));
            children[t] = Some((cones.len(), cones.len() + 1));
            cones.push(bit(a));
            cones.push(bit(b));
            children.push(None);
            children.push(None);
        }
    }
    let split = DirectedDecomposition::from_parts(gp.all_vertices(), exact.root(), children, cones)?;
    let pruned = prune_empty_leaves(&split)?;
    if !pruned.is_branch_decomposition() {
        return Err(Error::Inconsistent("μ decomposition is not a branch decomposition".into()));
    }
    let width = pruned.width(&mu);
    if width > kappa_width.max(1) {
        return Err(Error::Inconsistent(format!("μ width {width} exceeds max(1, {kappa_width})")));
    }

    // Back to the vertex indices of `g`.
    let old: Vec<usize> = elements(keep).collect();
    let lift = |x: Mask| elements(x).fold(0, |acc, i| acc | bit(old[i]));
    let mut shape = to_shape(&pruned, pruned.root(), &lift);
    for v in elements(g.all_vertices() & !keep) {
        shape = Shape::node(shape, Shape::elem(v));
    }
    DirectedDecomposition::from_shape(&shape, g.all_vertices())
}

fn to_shape(d: &DirectedDecomposition, t: usize, lift: &dyn Fn(Mask) -> Mask) -> Shape {
    match d.children(t) {
        None => Shape::Leaf(lift(d.cone(t))),
        Some((a, b)) => Shape::node(to_shape(d, a, lift), to_shape(d, b, lift)),
    }
}

/// Branch decomposition of `κ_G` from three balanced vertex blocks
/// `V_1, V_2, V_3` by index. Block `E_i` holds the edges inside `V_i` and
/// those between `V_i` and `V_{i+1 mod 3}`, so every cone has its boundary
/// inside two vertex blocks.
pub fn kappa_vertex_trisection(g: &Graph) -> Result<WidthCertificate> {
    let n = g.n();
    let block_of: Vec<usize> = (0..n).map(|v| (0..3).find(|&i| v < bound(n, i)).expect("last bound is n")).collect();
    let mut blocks = [0 as Mask; 3];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let (a, b) = (block_of[u], block_of[v]);
        let i = if a == b || b == (a + 1) % 3 { a } else { b };
        blocks[i] |= bit(e);
    }
    let d = blockwise_decomposition(g.all_edges(), &blocks)?;
    let value = d.width(&vertex_connectivity(g));
    Ok(WidthCertificate { value, witness: Decomposition::Directed(d) })
}

/// Exclusive end of vertex block `i` when `n` vertices are cut into three
/// blocks whose sizes differ by at most one.
fn bound(n: usize, i: usize) -> usize {
    (0..=i).map(|j| n / 3 + usize::from(j < n % 3)).sum()
}

/// Lexicographically least minimum vertex cover of the edges `E(X, X̄)`.
pub fn canonical_cut_cover(g: &Graph, x: Mask) -> Mask {
    let cut = g.edges_between(x, g.all_vertices() & !x);
    let touched: Vec<usize> = elements(g.vertices_of(cut)).collect();
    let covers = |s: Mask| elements(cut).all(|e| {
        let (u, v) = g.edge(e);
        s & (bit(u) | bit(v)) != 0
    });
    for c in 0..=touched.len() {
        let mut pick = Vec::with_capacity(c);
        if let Some(s) = first_cover(&touched, c, 0, &mut pick, &covers) {
            return s;
        }
    }
    unreachable!("all touched vertices form a cover")
}

/// First `c`-subset of `pool[from..]` in lexicographic order that covers.
fn first_cover(pool: &[usize], c: usize, from: usize, pick: &mut Vec<usize>, covers: &dyn Fn(Mask) -> bool) -> Option<Mask> {
    if pick.len() == c {
        let s = pick.iter().fold(0, |acc, &v| acc | bit(v));
        return covers(s).then_some(s);
    }
    for i in from..pool.len() {
        if pool.len() - i < c - pick.len() {
            break;
        }
        pick.push(pool[i]);
        let r = first_cover(pool, c, i + 1, pick, covers);
        pick.pop();
        if r.is_some() {
            return r;
        }
    }
    None
}

/// `μ_G`-tangle of order `k+1` from a `κ_G`-tangle of order `2k+1`.
pub fn mu_tangle_from_kappa_tangle(g: &Graph, t: &Tangle) -> Result<Tangle> {
    let kappa = crate::instances::vertex_connectivity(g);
    if let Some(v) = tangle_violation(&kappa, t)? {
        return Err(Error::pre(format!("not a κ_G-tangle: {v}")));
    }
    if t.order() % 2 == 0 {
        return Err(Error::pre(format!("order {} is not of the form 2k+1", t.order())));
    }
    let k = (t.order() - 1) / 2;
    check_limit("mu_tangle_from_kappa_tangle", g.n(), Limits::default().exhaustive)?;
    let mu = matching_connectivity(g);
    let all = g.all_vertices();
    let members: Vec<Mask> = submasks(all)
        .filter(|&x| mu.eval(x) <= k)
        .filter(|&x| {
            let s = canonical_cut_cover(g, x);
            let y = g.edges_within(x) | g.edges_between(x, s & !x);
            t.contains(y)
        })
        .collect();
    let out = Tangle::new(k + 1, members);
    if let Some(v) = tangle_violation(&mu, &out)? {
        return Err(Error::Inconsistent(format!("constructed μ_G family is not a tangle: {v}")));
    }
    Ok(out)
}
