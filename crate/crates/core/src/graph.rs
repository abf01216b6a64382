//! Entanglement and dependency graphs, layering and DOT export.

use std::collections::BTreeMap;
use std::fmt::Write;

use petgraph::algo::toposort;
use petgraph::graph::{DiGraph, NodeIndex, UnGraph};

use crate::command::Command;
use crate::error::AnalysisError;
use crate::notation;
use crate::pattern::Pattern;
use crate::qubit::QubitId;

/// Vertices `V`, one edge per distinct entangled pair.
#[derive(Clone, Debug)]
pub struct EntanglementGraph {
    pub graph: UnGraph<QubitId, ()>,
}

impl EntanglementGraph {
    pub fn vertex_count(&self) -> usize {
        self.graph.node_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn has_edge(&self, i: &QubitId, j: &QubitId) -> bool {
        let find = |q: &QubitId| self.graph.node_indices().find(|&n| &self.graph[n] == q);
        match (find(i), find(j)) {
            (Some(a), Some(b)) => self.graph.contains_edge(a, b),
            _ => false,
        }
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph entanglement {\n");
        for n in self.graph.node_indices() {
            let _ = writeln!(out, "  n{} [label=\"{}\"];", n.index(), self.graph[n]);
        }
        for e in self.graph.edge_indices() {
            let (a, b) = self.graph.edge_endpoints(e).expect("edge exists");
            let _ = writeln!(out, "  n{} -- n{};", a.index(), b.index());
        }
        out.push_str("}\n");
        out
    }
}

pub fn entanglement_graph(p: &Pattern) -> EntanglementGraph {
    let mut graph = UnGraph::new_undirected();
    let nodes: BTreeMap<&QubitId, NodeIndex> = p.space().iter().map(|q| (q, graph.add_node(q.clone()))).collect();
    for c in p.commands() {
        if let Command::E(i, j) = c {
            let (a, b) = (nodes[i], nodes[j]);
            if !graph.contains_edge(a, b) {
                graph.add_edge(a, b, ());
            }
        }
    }
    EntanglementGraph { graph }
}

/// Measurement and correction commands, with an edge from the measurement
/// of `i` to every command reading `s_i`. Node weights are indices into
/// the command sequence.
#[derive(Clone, Debug)]
pub struct DependencyGraph {
    pub graph: DiGraph<usize, ()>,
    labels: Vec<String>,
}

impl DependencyGraph {
    /// Layer of every node; a node sits one layer after the deepest
    /// measurement it reads.
    pub fn layers(&self) -> Vec<usize> {
        let order = toposort(&self.graph, None).expect("dependencies are acyclic");
        let mut layer = vec![0usize; self.graph.node_count()];
        for n in order {
            let l = self
                .graph
                .neighbors_directed(n, petgraph::Direction::Incoming)
                .map(|m| layer[m.index()])
                .max()
                .unwrap_or(0);
            layer[n.index()] = l + 1;
        }
        layer
    }

    pub fn depth(&self) -> usize {
        self.layers().into_iter().max().unwrap_or(0)
    }

    pub fn to_dot(&self) -> String {
        let layers = self.layers();
        let mut out = String::from("digraph dependency {\n  rankdir=LR;\n");
        for n in self.graph.node_indices() {
            let _ = writeln!(
                out,
                "  n{} [label=\"{}\", layer={}];",
                n.index(),
                self.labels[n.index()].replace('"', "\\\""),
                layers[n.index()]
            );
        }
        for e in self.graph.edge_indices() {
            let (a, b) = self.graph.edge_endpoints(e).expect("edge exists");
            let _ = writeln!(out, "  n{} -> n{};", a.index(), b.index());
        }
        out.push_str("}\n");
        out
    }
}

pub fn dependency_graph(p: &Pattern) -> Result<DependencyGraph, AnalysisError> {
    if !p.is_emc() {
        return Err(AnalysisError::NotStandard);
    }
    let mut graph = DiGraph::new();
    let mut labels = Vec::new();
    let mut measured: BTreeMap<&QubitId, NodeIndex> = BTreeMap::new();
    for (k, c) in p.commands().iter().enumerate() {
        if matches!(c, Command::E(..)) {
            continue;
        }
        let n = graph.add_node(k);
        labels.push(notation::command(c));
        for q in c.dependencies() {
            if let Some(&m) = measured.get(q) {
                if !graph.contains_edge(m, n) {
                    graph.add_edge(m, n, ());
                }
            }
        }
        if let Command::M(m) = c {
            measured.insert(&m.qubit, n);
        }
    }
    Ok(DependencyGraph { graph, labels })
}

/// Number of measurement/correction rounds of a standard pattern.
pub fn depth(p: &Pattern) -> Result<usize, AnalysisError> {
    Ok(dependency_graph(p)?.depth())
}
