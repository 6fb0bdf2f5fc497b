//! File formats: triangulation input and lattice export.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polygon::{validate, OrientedTriangulation, Triangulation};
use crate::repr::SubmoduleRank;
use crate::snake::{CoverLattice, SnakeGraph};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriangulationFile {
    pub vertices: usize,
    pub arcs: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<[usize; 2]>,
}

impl TriangulationFile {
    pub fn parse(text: &str) -> Result<TriangulationFile> {
        serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))
    }

    pub fn triangulation(&self) -> Result<Triangulation> {
        let arcs: Vec<(usize, usize)> = self.arcs.iter().map(|a| (a[0], a[1])).collect();
        validate(self.vertices, &arcs, self.gamma.map(|g| (g[0], g[1])))
    }

    /// Arcs in label order with the longest arc made explicit.
    pub fn of(t: &Triangulation) -> TriangulationFile {
        let (s, e) = t.gamma();
        TriangulationFile {
            vertices: t.vertices(),
            arcs: t.arcs().iter().map(|&(p, q)| [p, q]).collect(),
            gamma: Some([s, e]),
        }
    }
}

pub fn read_triangulation(text: &str) -> Result<OrientedTriangulation> {
    Ok(TriangulationFile::parse(text)?.triangulation()?.orient())
}

/// Graded poset as nodes plus labelled cover relations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphExport<N> {
    pub nodes: Vec<N>,
    pub edges: Vec<[usize; 3]>,
}

pub type CoverNode = Vec<(usize, char, u32)>;

pub fn cover_lattice_export(g: &SnakeGraph, lattice: &CoverLattice) -> GraphExport<CoverNode> {
    GraphExport {
        nodes: lattice.nodes.iter().map(|c| g.encode(c)).collect(),
        edges: lattice.edges.iter().map(|&(a, b, f)| [a, b, f]).collect(),
    }
}

pub fn submodule_lattice_export(
    nodes: &[SubmoduleRank],
    edges: &[(usize, usize, usize)],
) -> GraphExport<Vec<u32>> {
    GraphExport {
        nodes: nodes.iter().map(|n| n.rank.clone()).collect(),
        edges: edges.iter().map(|&(a, b, v)| [a, b, v]).collect(),
    }
}

impl<N: Serialize> GraphExport<N> {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    /// Graphviz digraph with nodes labelled by `label`.
    pub fn to_dot(&self, label: impl Fn(&N) -> String) -> String {
        let mut out = String::from("digraph lattice {\n  rankdir=BT;\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", label(n).replace('"', "\\\""));
        }
        for [a, b, f] in &self.edges {
            let _ = writeln!(out, "  n{a} -> n{b} [label=\"{f}\"];");
        }
        out.push_str("}\n");
        out
    }
}

pub fn cover_label(c: &[(usize, char, u32)]) -> String {
    c.iter()
        .map(|(t, s, m)| format!("{}{s}{}", t + 1, if *m > 1 { format!("x{m}") } else { String::new() }))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn rank_label(r: &[u32]) -> String {
    r.iter().map(u32::to_string).collect::<Vec<_>>().join("")
}
