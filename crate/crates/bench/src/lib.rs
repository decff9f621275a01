//! Workloads shared by the benches.

use conn_core::fixtures::{complete_graph, cycle_graph, exadec_graph, grid_graph};
use conn_core::instances::{cut_rank, edge_connectivity, matching_connectivity, vertex_connectivity};
use conn_core::ConnectivitySystem;

/// Systems for the branch width dynamic programme, smallest first.
pub fn dp_inputs() -> Vec<(String, ConnectivitySystem)> {
    vec![
        ("rho/K8".into(), cut_rank(&complete_graph(8))),
        ("nu/grid3x4".into(), edge_connectivity(&grid_graph(3, 4))),
        ("mu/C12".into(), matching_connectivity(&cycle_graph(12))),
        ("kappa/grid3x3".into(), vertex_connectivity(&grid_graph(3, 3))),
    ]
}

/// Systems for tangle enumeration with the order to enumerate.
pub fn tangle_inputs() -> Vec<(String, ConnectivitySystem, i64)> {
    vec![
        ("kappa/grid3x3".into(), vertex_connectivity(&grid_graph(3, 3)), 3),
        ("kappa/exadec".into(), vertex_connectivity(&exadec_graph()), 3),
        ("nu/K6".into(), edge_connectivity(&complete_graph(6)), 5),
    ]
}

pub fn exadec_kappa() -> ConnectivitySystem {
    vertex_connectivity(&exadec_graph())
}
