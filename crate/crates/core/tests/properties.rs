//! Randomised checks of the structural invariants on small systems.

use conn_core::branchdec::{branch_width, decompose_over, exactify, AtomFamily, Decomposition, DirectedDecomposition};
use conn_core::canonical::{canonical_decomposition, canonicity_test, treedec_from_nested, NestedSeparationSet};
use conn_core::duality::{branch_width_via_tangles, decomposition_from_no_well_linked, duality_check};
use conn_core::instances::{cut_rank, edge_connectivity, matching_connectivity, polymatroid_connectivity, vertex_connectivity, Graph};
use conn_core::subset::{elements, full, is_subset, size, submasks, Mask};
use conn_core::tangles::{enumerate_tangles, is_tangle, is_well_linked};
use conn_core::{check_properties, leftmost_min_separation, ConnectivitySystem, Evaluate, Limits, SetFunction, Universe};
use proptest::prelude::*;

#[derive(Debug, Clone)]
enum Recipe {
    Graph { kind: u8, n: usize, edges: Vec<bool> },
    Coverage(Vec<u32>),
}

fn graph_of(n: usize, edges: &[bool]) -> Graph {
    let mut es = Vec::new();
    let mut i = 0;
    for a in 0..n {
        for b in a + 1..n {
            if edges[i] {
                es.push((a, b));
            }
            i += 1;
        }
    }
    Graph::indexed(n, &es).unwrap()
}

impl Recipe {
    fn build(&self) -> ConnectivitySystem {
        match self {
            Recipe::Graph { kind, n, edges } => {
                let g = graph_of(*n, edges);
                match kind {
                    0 => edge_connectivity(&g),
                    1 => matching_connectivity(&g),
                    2 => cut_rank(&g),
                    _ => vertex_connectivity(&g),
                }
            }
            Recipe::Coverage(sets) => {
                let sets = sets.clone();
                let pi = SetFunction::new(Universe::indexed(sets.len()), move |x: Mask| elements(x).fold(0u32, |a, i| a | sets[i]).count_ones() as i64);
                polymatroid_connectivity(&pi, &Limits::default()).unwrap()
            }
        }
    }
}

/// Vertex-set systems on up to `max_n` vertices, κ on at most `max_m`
/// edges, and coverage systems on up to `max_n` elements.
fn systems(max_n: usize, max_m: usize) -> impl Strategy<Value = Recipe> {
    let graph = (2..=max_n).prop_flat_map(|n| (0u8..4, Just(n), proptest::collection::vec(any::<bool>(), n * (n - 1) / 2)));
    let graph = graph.prop_filter_map("kappa needs a small nonempty edge set", move |(kind, n, edges)| {
        let m = edges.iter().filter(|&&b| b).count();
        (kind < 3 || (1..=max_m).contains(&m)).then_some(Recipe::Graph { kind, n, edges })
    });
    let coverage = proptest::collection::vec(0u32..64, 2..=max_n).prop_map(Recipe::Coverage);
    prop_oneof![graph, coverage]
}

/// Rooted binary tree whose children's cones cover the parent's cone.
fn pre_decomposition(full: Mask, choices: &[(u8, u64)]) -> DirectedDecomposition {
    let mut children: Vec<Option<(usize, usize)>> = vec![None];
    let mut cones = vec![full];
    let mut t = 0;
    let mut c = choices.iter().cycle();
    while t < cones.len() {
        let &(split, bits) = c.next().unwrap();
        if cones.len() < 13 && (t == 0 || split % 2 == 0) {
            let x = cones[t];
            let (mut a, mut b) = (0, 0);
            for (j, i) in elements(full).enumerate() {
                let m = 1 << i;
                let r = (bits >> (2 * j)) & 3;
                if x & m != 0 {
                    match r {
                        0 => a |= m,
                        1 => b |= m,
                        _ => {
                            a |= m;
                            b |= m;
                        }
                    }
                } else if r == 3 {
                    if split & 4 == 0 { a |= m } else { b |= m }
                }
            }
            children[t] = Some((cones.len(), cones.len() + 1));
            cones.extend([a, b]);
            children.extend([None, None]);
        }
        t += 1;
    }
    DirectedDecomposition::from_parts(full, 0, children, cones).unwrap()
}

fn config() -> ProptestConfig {
    ProptestConfig { cases: 64, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn built_systems_are_connectivity_functions(recipe in systems(8, 10)) {
        let sys = recipe.build();
        let a = check_properties(&sys, sys.limits()).unwrap();
        prop_assert!(a.is_connectivity_function() && a.posimodular && a.nonnegative);
        prop_assert_eq!(a, check_properties(&sys, sys.limits()).unwrap());
    }

    #[test]
    fn rho_mu_nu_order(n in 2usize..=8, edges in proptest::collection::vec(any::<bool>(), 28)) {
        let g = graph_of(n, &edges[..n * (n - 1) / 2]);
        let (nu, mu, rho) = (edge_connectivity(&g), matching_connectivity(&g), cut_rank(&g));
        for x in submasks(g.all_vertices()) {
            prop_assert!(rho.eval(x) <= mu.eval(x) && mu.eval(x) <= nu.eval(x));
        }
    }

    #[test]
    fn leftmost_min_separation_is_below_every_minimum(recipe in systems(7, 7), a in any::<u64>(), b in any::<u64>()) {
        let sys = recipe.build();
        let full = sys.full();
        let (x, y) = (a & full, b & full & !a);
        let z = leftmost_min_separation(&sys, x, y, sys.limits()).unwrap();
        let best = sys.eval(z);
        for s in submasks(full & !x & !y) {
            let w = x | s;
            prop_assert!(sys.eval(w) >= best);
            if sys.eval(w) == best {
                prop_assert!(is_subset(z, w));
            }
        }
    }

    #[test]
    fn exactify_keeps_width_and_shrinks_leaves(recipe in systems(8, 9), choices in proptest::collection::vec((any::<u8>(), any::<u64>()), 1..20)) {
        let sys = recipe.build();
        let d = pre_decomposition(sys.full(), &choices);
        let e = exactify(&d, &sys).unwrap();
        prop_assert!(e.is_exact());
        prop_assert!(e.width(&sys) <= d.width(&sys));
        for t in d.leaves() {
            prop_assert!(is_subset(e.cone(t), d.cone(t)));
        }
    }

    #[test]
    fn width_certificates_and_undirected_form(recipe in systems(7, 8)) {
        let sys = recipe.build();
        let cert = branch_width(&sys, 14).unwrap();
        cert.check(&sys).unwrap();
        let bw = cert.value;
        prop_assert!(decompose_over(&sys, &AtomFamily::Singletons, bw).unwrap().is_none());
        let d = decompose_over(&sys, &AtomFamily::Singletons, bw + 1).unwrap().unwrap();
        prop_assert!(d.width(&sys) <= bw);
        let u = d.to_undirected().unwrap();
        prop_assert_eq!(u.separations(), d.separations());
        prop_assert_eq!(u.atoms(), d.atoms());
        if let Decomposition::Directed(w) = &cert.witness {
            prop_assert_eq!(w.to_undirected().unwrap().separations(), w.separations());
        }
        prop_assert_eq!(branch_width_via_tangles(&sys).unwrap(), bw);
    }

    #[test]
    fn duality_exclusive_or(recipe in systems(6, 7), gens in proptest::collection::vec(any::<u64>(), 0..3), k in 1i64..5) {
        let sys = recipe.build();
        let gens: Vec<Mask> = gens.into_iter().map(|g| g & sys.full()).collect();
        let fam = AtomFamily::generated_by(gens);
        // duality_check itself errors unless exactly one side exists.
        let v = duality_check(&sys, &fam, k).unwrap();
        v.validate(&sys, &fam).unwrap();
    }

    #[test]
    fn enumerated_tangles_truncate(recipe in systems(6, 7), k in 1i64..5) {
        let sys = recipe.build();
        let lower = enumerate_tangles(&sys, k).unwrap();
        let val = sys.valence();
        for t in enumerate_tangles(&sys, k + 1).unwrap() {
            prop_assert!(is_tangle(&sys, &t).unwrap());
            prop_assert!(lower.contains(&t.truncate(&sys, k).unwrap()));
            // Small sets lie on the small side.
            for x in submasks(sys.full()) {
                if (size(x) as i64) * val < k + 1 && sys.eval(x) < k + 1 {
                    prop_assert!(t.contains(sys.full() & !x));
                }
            }
        }
    }

    #[test]
    fn leaf_splitting_below_the_well_linked_bound(recipe in systems(6, 7)) {
        let sys = recipe.build();
        let val = sys.valence();
        prop_assume!(val > 0);
        let largest = submasks(sys.full()).filter(|&w| is_well_linked(&sys, w).unwrap()).map(size).max().unwrap_or(0) as i64;
        let k = (largest + 1) * val;
        let d = decomposition_from_no_well_linked(&sys, k).unwrap();
        prop_assert!(d.is_branch_decomposition() && d.width(&sys) <= k);
    }

    #[test]
    fn canonical_is_nested_deterministic_and_commutes(recipe in systems(6, 7), seed in any::<u64>()) {
        let sys = recipe.build();
        let a = canonical_decomposition(&sys, None).unwrap();
        a.nested.validate(sys.full()).unwrap();
        prop_assert_eq!(&a, &canonical_decomposition(&sys, None).unwrap());
        let n = sys.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        prop_assert!(canonicity_test(&sys, &perm, None).unwrap());
    }

    #[test]
    fn laminar_families_give_their_tree(n in 1usize..=8, sets in proptest::collection::vec(any::<u64>(), 0..6)) {
        let u = full(n);
        // Keep only sets that nest with everything kept so far.
        let mut kept: Vec<Mask> = Vec::new();
        for x in sets.into_iter().map(|x| x & u) {
            let ok = kept.iter().all(|&y| {
                let (xc, yc) = (u & !x, u & !y);
                x & y == 0 || x & yc == 0 || xc & y == 0 || xc & yc == 0
            });
            if ok {
                kept.push(x);
            }
        }
        let s = NestedSeparationSet::closure(u, kept);
        let sys = SetFunction::new(Universe::indexed(n), |_| 0);
        let td = treedec_from_nested(&sys, &s).unwrap();
        td.validate(u).unwrap();
        prop_assert_eq!(td.separations().into_iter().collect::<Vec<_>>(), s.members().to_vec());
    }
}
