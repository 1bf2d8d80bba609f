//! Simple undirected graphs in compressed adjacency form.
//!
//! Every graph is immutable once built. Node ids are dense and 0-based; the
//! original integer ids from an input file are kept as labels so results can be
//! reported in the user's numbering.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::io::BufRead;

use crate::error::{Error, Result};

/// Dense 0-based vertex index into a [`Graph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for NodeId {
    fn from(i: usize) -> Self {
        NodeId(i as u32)
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Sorted, duplicate-free set of nodes belonging to one graph.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct NodeSet {
    members: Vec<NodeId>,
}

impl NodeSet {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Validates every member against a graph of `n` nodes and sorts them.
    pub fn new(n: usize, members: impl IntoIterator<Item = NodeId>) -> Result<Self> {
        let mut members: Vec<NodeId> = members.into_iter().collect();
        members.sort_unstable();
        for w in members.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateNode(w[0].index()));
            }
        }
        if let Some(last) = members.last() {
            if last.index() >= n {
                return Err(Error::NodeOutOfRange {
                    index: last.index(),
                    n,
                });
            }
        }
        Ok(Self { members })
    }

    pub fn from_indices(n: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        Self::new(n, indices.into_iter().map(NodeId::from))
    }

    /// The full vertex set of `g`.
    pub fn all(g: &Graph) -> Self {
        Self {
            members: g.nodes().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.members.iter().copied()
    }

    pub fn as_slice(&self) -> &[NodeId] {
        &self.members
    }

    /// Membership bitmap of length `n`.
    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for v in &self.members {
            mask[v.index()] = true;
        }
        mask
    }

    pub fn union(&self, other: &NodeSet) -> NodeSet {
        let mut members: Vec<NodeId> = self.members.iter().chain(&other.members).copied().collect();
        members.sort_unstable();
        members.dedup();
        NodeSet { members }
    }
}

/// Counts of input lines dropped while cleaning an edge list.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CleanReport {
    pub self_loops: usize,
    pub duplicates: usize,
}

impl CleanReport {
    pub fn is_clean(&self) -> bool {
        self.self_loops == 0 && self.duplicates == 0
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct LoadOptions {
    /// Input ids start at 1; a `0` token is rejected.
    pub one_indexed: bool,
    /// Skip lines starting with `#` (or `%`).
    pub allow_comments: bool,
}

#[derive(Debug, Clone)]
pub struct LoadedGraph {
    pub graph: Graph,
    pub report: CleanReport,
}

/// Immutable simple undirected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
    labels: Vec<i64>,
}

impl Graph {
    /// Builds a graph on `n` nodes labelled `0..n`. Self-loops and repeated edges
    /// are dropped.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        Self::from_edges_with_report(n, edges).map(|(g, _)| g)
    }

    pub fn from_edges_with_report(
        n: usize,
        edges: &[(usize, usize)],
    ) -> Result<(Graph, CleanReport)> {
        for &(u, v) in edges {
            let bad = u.max(v);
            if bad >= n {
                return Err(Error::NodeOutOfRange { index: bad, n });
            }
        }
        Ok(Self::build(
            n,
            edges.iter().copied(),
            (0..n as i64).collect(),
        ))
    }

    fn build(
        n: usize,
        edges: impl Iterator<Item = (usize, usize)>,
        labels: Vec<i64>,
    ) -> (Graph, CleanReport) {
        let mut report = CleanReport::default();
        let mut pairs: Vec<(u32, u32)> = Vec::new();
        for (u, v) in edges {
            if u == v {
                report.self_loops += 1;
                continue;
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            pairs.push((a as u32, b as u32));
        }
        pairs.sort_unstable();
        let before = pairs.len();
        pairs.dedup();
        report.duplicates = before - pairs.len();

        let mut degree = vec![0usize; n];
        for &(a, b) in &pairs {
            degree[a as usize] += 1;
            degree[b as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut cursor = offsets[..n].to_vec();
        let mut neighbors = vec![0u32; offsets[n]];
        for &(a, b) in &pairs {
            neighbors[cursor[a as usize]] = b;
            cursor[a as usize] += 1;
            neighbors[cursor[b as usize]] = a;
            cursor[b as usize] += 1;
        }
        for v in 0..n {
            neighbors[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        (
            Graph {
                offsets,
                neighbors,
                labels,
            },
            report,
        )
    }

    /// Reads a whitespace-separated edge list. Ids are compacted to dense indices in
    /// ascending order of their original value. Extra tokens after the first two on
    /// a line are ignored (weights, timestamps).
    pub fn load_edge_list<R: BufRead>(source: R, opts: LoadOptions) -> Result<LoadedGraph> {
        let mut raw: Vec<(i64, i64)> = Vec::new();
        for (lineno, line) in source.lines().enumerate() {
            let line = line?;
            let lineno = lineno + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            if opts.allow_comments && (trimmed.starts_with('#') || trimmed.starts_with('%')) {
                continue;
            }
            let mut tokens = trimmed.split_whitespace();
            let mut next_id = || -> Result<i64> {
                let tok = tokens.next().ok_or_else(|| Error::Parse {
                    line: lineno,
                    message: "expected two node ids".into(),
                })?;
                let id: i64 = tok.parse().map_err(|_| Error::Parse {
                    line: lineno,
                    message: format!("invalid node id {tok:?}"),
                })?;
                if opts.one_indexed && id < 1 {
                    return Err(Error::Parse {
                        line: lineno,
                        message: format!("node id {id} is not valid in one-indexed input"),
                    });
                }
                Ok(id)
            };
            let u = next_id()?;
            let v = next_id()?;
            raw.push((u, v));
        }
        if raw.is_empty() {
            return Err(Error::EmptyInput);
        }

        let mut index: BTreeMap<i64, usize> = BTreeMap::new();
        for &(u, v) in &raw {
            index.insert(u, 0);
            index.insert(v, 0);
        }
        let mut labels = Vec::with_capacity(index.len());
        for (i, (label, slot)) in index.iter_mut().enumerate() {
            *slot = i;
            labels.push(*label);
        }
        let n = labels.len();
        let (graph, report) = Self::build(n, raw.iter().map(|(u, v)| (index[u], index[v])), labels);
        if !report.is_clean() {
            log::warn!(
                "dropped {} self-loop(s) and {} duplicate edge(s) while loading",
                report.self_loops,
                report.duplicates
            );
        }
        Ok(LoadedGraph { graph, report })
    }

    pub fn parse_edge_list(text: &str, opts: LoadOptions) -> Result<LoadedGraph> {
        Self::load_edge_list(text.as_bytes(), opts)
    }

    /// Edge-list text in original labels, one `u v` line per edge with `u < v`.
    /// Isolated nodes are written as a self-loop line so that reloading keeps them.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for v in self.nodes() {
            let nbrs = self.neighbors(v);
            if nbrs.is_empty() {
                let l = self.label(v);
                writeln!(out, "{l} {l}").unwrap();
            }
            for &u in nbrs.iter().filter(|&&u| u > v.0) {
                writeln!(out, "{} {}", self.label(v), self.labels[u as usize]).unwrap();
            }
        }
        out
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn m(&self) -> usize {
        self.neighbors.len() / 2
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.n() as u32).map(NodeId)
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.nodes().flat_map(move |v| {
            self.neighbors(v)
                .iter()
                .filter(move |&&u| u > v.0)
                .map(move |&u| (v, NodeId(u)))
        })
    }

    #[inline]
    pub fn neighbors(&self, v: NodeId) -> &[u32] {
        &self.neighbors[self.offsets[v.index()]..self.offsets[v.index() + 1]]
    }

    #[inline]
    pub fn degree(&self, v: NodeId) -> usize {
        self.offsets[v.index() + 1] - self.offsets[v.index()]
    }

    pub fn max_degree(&self) -> usize {
        self.nodes().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.neighbors(u).binary_search(&v.0).is_ok()
    }

    pub fn label(&self, v: NodeId) -> i64 {
        self.labels[v.index()]
    }

    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    pub fn node_by_label(&self, label: i64) -> Option<NodeId> {
        // Labels are strictly increasing for loaded graphs, and equal to the index
        // for constructed ones.
        self.labels.binary_search(&label).ok().map(NodeId::from)
    }

    pub fn check_node(&self, v: NodeId) -> Result<()> {
        if v.index() < self.n() {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange {
                index: v.index(),
                n: self.n(),
            })
        }
    }

    /// Induced subgraph on `V \ removed`, renumbered densely.
    pub fn remove_nodes(&self, removed: &NodeSet) -> Subgraph {
        let mask = removed.mask(self.n());
        self.remove_masked(&mask)
    }

    pub(crate) fn remove_masked(&self, removed: &[bool]) -> Subgraph {
        let mut new_index = vec![u32::MAX; self.n()];
        let mut parent = Vec::with_capacity(self.n());
        for v in self.nodes() {
            if !removed[v.index()] {
                new_index[v.index()] = parent.len() as u32;
                parent.push(v);
            }
        }
        let mut offsets = Vec::with_capacity(parent.len() + 1);
        offsets.push(0);
        let mut neighbors = Vec::new();
        let mut labels = Vec::with_capacity(parent.len());
        for &v in &parent {
            // Parent lists are sorted and the renumbering is monotone, so the
            // child lists come out sorted too.
            neighbors.extend(
                self.neighbors(v)
                    .iter()
                    .map(|&u| new_index[u as usize])
                    .filter(|&u| u != u32::MAX),
            );
            offsets.push(neighbors.len());
            labels.push(self.label(v));
        }
        Subgraph {
            graph: Graph {
                offsets,
                neighbors,
                labels,
            },
            parent,
        }
    }
}

/// Result of a node removal: the remaining graph plus each node's id in the parent.
#[derive(Debug, Clone)]
pub struct Subgraph {
    pub graph: Graph,
    pub parent: Vec<NodeId>,
}

impl Subgraph {
    pub fn to_parent(&self, v: NodeId) -> NodeId {
        self.parent[v.index()]
    }

    /// Child id of a parent node, if it survived the removal.
    pub fn from_parent(&self, v: NodeId) -> Option<NodeId> {
        self.parent.binary_search(&v).ok().map(NodeId::from)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn star() -> Graph {
        Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap()
    }

    #[test]
    fn path_from_text() {
        let g = Graph::parse_edge_list("0 1\n1 2\n", LoadOptions::default())
            .unwrap()
            .graph;
        assert_eq!((g.n(), g.m()), (3, 2));
        assert_eq!(g.degree(NodeId(1)), 2);
    }

    #[test]
    fn duplicates_and_self_loops_are_counted() {
        let loaded = Graph::parse_edge_list("1 2\n2 1\n1 1\n", LoadOptions::default()).unwrap();
        assert_eq!((loaded.graph.n(), loaded.graph.m()), (2, 1));
        assert_eq!(
            loaded.report,
            CleanReport {
                self_loops: 1,
                duplicates: 1
            }
        );
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = Graph::parse_edge_list("0 1\n1 x\n", LoadOptions::default()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = Graph::parse_edge_list("0 1\n7\n", LoadOptions::default()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = Graph::parse_edge_list("# c\n0 1\n", LoadOptions::default()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn comments_and_blank_lines() {
        let opts = LoadOptions {
            allow_comments: true,
            ..Default::default()
        };
        let g = Graph::parse_edge_list("# header\n\n10 20\n% konect\n20 30\n", opts)
            .unwrap()
            .graph;
        assert_eq!((g.n(), g.m()), (3, 2));
        assert_eq!(g.labels(), &[10, 20, 30]);
        assert_eq!(g.node_by_label(30), Some(NodeId(2)));
    }

    #[test]
    fn empty_input_is_an_error() {
        assert!(matches!(
            Graph::parse_edge_list("", LoadOptions::default()),
            Err(Error::EmptyInput)
        ));
        let opts = LoadOptions {
            allow_comments: true,
            ..Default::default()
        };
        assert!(matches!(
            Graph::parse_edge_list("# nothing\n", opts),
            Err(Error::EmptyInput)
        ));
    }

    #[test]
    fn one_indexed_rejects_zero() {
        let opts = LoadOptions {
            one_indexed: true,
            ..Default::default()
        };
        let g = Graph::parse_edge_list("1 2\n2 3\n", opts).unwrap().graph;
        assert_eq!(g.labels(), &[1, 2, 3]);
        assert!(Graph::parse_edge_list("0 1\n", opts).is_err());
    }

    #[test]
    fn remove_vertex_from_triangle() {
        let g = triangle();
        let sub = g.remove_nodes(&NodeSet::from_indices(3, [1]).unwrap());
        assert_eq!((sub.graph.n(), sub.graph.m()), (2, 1));
        assert_eq!(sub.parent, vec![NodeId(0), NodeId(2)]);
        assert_eq!(sub.graph.labels(), &[0, 2]);
    }

    #[test]
    fn remove_nothing_is_identity() {
        let g = triangle();
        assert_eq!(g.remove_nodes(&NodeSet::empty()).graph, g);
    }

    #[test]
    fn remove_star_center() {
        let sub = star().remove_nodes(&NodeSet::from_indices(4, [0]).unwrap());
        assert_eq!((sub.graph.n(), sub.graph.m()), (3, 0));
    }

    #[test]
    fn degrees() {
        let g = triangle();
        assert!(g.nodes().all(|v| g.degree(v) == 2));
        assert_eq!(star().degree(NodeId(0)), 3);
        let g = Graph::from_edges(2, &[]).unwrap();
        assert_eq!(g.degree(NodeId(1)), 0);
    }

    #[test]
    fn node_set_validation() {
        assert!(matches!(
            NodeSet::from_indices(3, [0, 3]),
            Err(Error::NodeOutOfRange { index: 3, n: 3 })
        ));
        assert!(matches!(
            NodeSet::from_indices(3, [1, 1]),
            Err(Error::DuplicateNode(1))
        ));
        let s = NodeSet::from_indices(5, [4, 0, 2]).unwrap();
        assert_eq!(s.as_slice(), &[NodeId(0), NodeId(2), NodeId(4)]);
    }

    #[test]
    fn edge_list_round_trip_keeps_isolated_nodes() {
        let g = Graph::parse_edge_list("5 6\n7 7\n", LoadOptions::default())
            .unwrap()
            .graph;
        assert_eq!(g.n(), 3);
        let again = Graph::parse_edge_list(&g.to_edge_list(), LoadOptions::default())
            .unwrap()
            .graph;
        assert_eq!(again, g);
    }
}
