//! Reading an input file and building the system named by the selector.

use std::fmt;

use clap::ValueEnum;
use conn_core::instances::{
    cut_rank, edge_connectivity, hypergraph_connectivities, hypergraph_cover_function, matching_connectivity, polymatroid_connectivity,
    vector_connectivity, vector_rank, vertex_connectivity, Graph, Hypergraph,
};
use conn_core::io::{parse_input, Input};
use conn_core::{check_properties, ConnectivitySystem, Evaluate, Limits, SetFunction};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Selector {
    Nu,
    Kappa,
    Mu,
    Rho,
    Vector,
    Matroid,
    Oracle,
    HypergraphNu,
    HypergraphKappa,
    HypergraphCover,
}

impl fmt::Display for Selector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.to_possible_value().expect("no skipped variants");
        f.write_str(v.get_name())
    }
}

/// The function to work on, and the instance it came from.
pub struct Loaded {
    pub selector: Selector,
    pub input: Input,
    /// Set when the selector gives a function that is not a connectivity
    /// function by construction.
    raw: Option<SetFunction>,
    sys: Option<ConnectivitySystem>,
}

fn default_selector(input: &Input) -> Selector {
    match input {
        Input::Oracle(_) => Selector::Oracle,
        Input::Graph(_) => Selector::Kappa,
        Input::Hypergraph(_) => Selector::HypergraphNu,
        Input::Vectors(_) => Selector::Vector,
    }
}

pub fn load(path: &str, selector: Option<Selector>, limits: Limits) -> Result<Loaded, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))?;
    let input = parse_input(&text)?;
    let selector = selector.unwrap_or_else(|| default_selector(&input));
    let mismatch = || CliError::Usage(format!("selector {selector} does not apply to {} input", input.kind()));
    let (raw, sys) = match (&input, selector) {
        (Input::Graph(g), Selector::Nu) => (None, Some(edge_connectivity(g))),
        (Input::Graph(g), Selector::Kappa) => (None, Some(vertex_connectivity(g))),
        (Input::Graph(g), Selector::Mu) => (None, Some(matching_connectivity(g))),
        (Input::Graph(g), Selector::Rho) => (None, Some(cut_rank(g))),
        (Input::Hypergraph(h), Selector::HypergraphNu) => (None, Some(hypergraph_connectivities(h).0)),
        (Input::Hypergraph(h), Selector::HypergraphKappa) => (None, Some(hypergraph_connectivities(h).1)),
        (Input::Hypergraph(h), Selector::HypergraphCover) => (Some(hypergraph_cover_function(h)), None),
        (Input::Vectors(v), Selector::Vector) => (None, Some(vector_connectivity(v))),
        (Input::Vectors(v), Selector::Matroid) => (None, Some(polymatroid_connectivity(&vector_rank(v), &limits)?)),
        (Input::Oracle(f), Selector::Oracle) => (Some(f.clone()), None),
        (Input::Oracle(f), Selector::Matroid) => (None, Some(polymatroid_connectivity(f, &limits)?)),
        _ => return Err(mismatch()),
    };
    let sys = sys.map(|s| s.with_limits(limits));
    Ok(Loaded { selector, input, raw, sys })
}

impl Loaded {
    pub fn graph(&self) -> Option<&Graph> {
        match &self.input {
            Input::Graph(g) => Some(g),
            _ => None,
        }
    }

    pub fn hypergraph(&self) -> Option<&Hypergraph> {
        match &self.input {
            Input::Hypergraph(h) => Some(h),
            _ => None,
        }
    }

    /// The function as given, without any property check.
    pub fn function(&self) -> SetFunction {
        match (&self.raw, &self.sys) {
            (Some(f), _) => f.clone(),
            (None, Some(s)) => s.function().clone(),
            (None, None) => unreachable!("loaded input has a function"),
        }
    }

    /// The connectivity system; a user-supplied function must pass the
    /// property check first.
    pub fn system(&self, limits: &Limits) -> Result<ConnectivitySystem, CliError> {
        if let Some(s) = &self.sys {
            return Ok(s.clone());
        }
        let f = self.function();
        let report = check_properties(&f, limits)?;
        if let Some(v) = report.counterexample() {
            let u = f.universe();
            let y = v.y.map(|y| format!(" and {}", u.format(y))).unwrap_or_default();
            return Err(CliError::Violation(format!("not a connectivity function: {} fails at {}{y}", format!("{:?}", v.property).to_lowercase(), u.format(v.x))));
        }
        Ok(ConnectivitySystem::from_function(f).named(self.selector.to_string()).with_limits(*limits))
    }
}
