//! Graphs of free abelian groups, their validation, and adapted presentations.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::linalg::{to_int_vec, IntMatrix, RatMatrix};

/// Raw vertex data as it appears in a graph file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSpec {
    pub id: String,
    pub rank: usize,
}

/// Raw oriented edge data; both orientations of every edge are listed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeSpec {
    pub id: String,
    pub from: String,
    pub to: String,
    pub rank: usize,
    pub inj_initial: IntMatrix,
    pub inj_terminal: IntMatrix,
    pub reverse: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GraphSpec {
    pub vertices: Vec<VertexSpec>,
    pub edges: Vec<EdgeSpec>,
}

impl GraphSpec {
    pub fn vertex(&mut self, id: &str, rank: usize) -> &mut Self {
        self.vertices.push(VertexSpec { id: id.to_string(), rank });
        self
    }

    /// Adds an edge `id: from -> to` together with its reverse `rev`.
    pub fn edge_pair(
        &mut self,
        id: &str,
        rev: &str,
        from: &str,
        to: &str,
        inj_initial: IntMatrix,
        inj_terminal: IntMatrix,
    ) -> &mut Self {
        let rank = inj_initial.cols();
        self.edges.push(EdgeSpec {
            id: id.to_string(),
            from: from.to_string(),
            to: to.to_string(),
            rank,
            inj_initial: inj_initial.clone(),
            inj_terminal: inj_terminal.clone(),
            reverse: rev.to_string(),
        });
        self.edges.push(EdgeSpec {
            id: rev.to_string(),
            from: to.to_string(),
            to: from.to_string(),
            rank,
            inj_initial: inj_terminal,
            inj_terminal: inj_initial,
            reverse: id.to_string(),
        });
        self
    }
}

/// One problem found by [`validate_graph`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Id of the offending vertex or edge, empty for graph-wide problems.
    pub subject: String,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.subject.is_empty() {
            write!(f, "{}", self.message)
        } else {
            write!(f, "{}: {}", self.subject, self.message)
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, subject: &str, message: impl Into<String>) {
        self.violations.push(Violation { subject: subject.to_string(), message: message.into() });
    }
}

/// Checks every structural requirement on a graph of groups.
pub fn validate_graph(spec: &GraphSpec) -> ValidationReport {
    let mut rep = ValidationReport::default();
    if spec.vertices.is_empty() {
        rep.push("", "graph has no vertices");
        return rep;
    }
    let mut seen = BTreeSet::new();
    for v in &spec.vertices {
        if !seen.insert(v.id.as_str()) {
            rep.push(&v.id, "duplicate vertex id");
        }
    }
    let rank_of = |id: &str| spec.vertices.iter().find(|v| v.id == id).map(|v| v.rank);
    let mut edge_ids = BTreeSet::new();
    for e in &spec.edges {
        if !edge_ids.insert(e.id.as_str()) {
            rep.push(&e.id, "duplicate edge id");
        }
    }
    for e in &spec.edges {
        let rf = rank_of(&e.from);
        let rt = rank_of(&e.to);
        if rf.is_none() {
            rep.push(&e.id, format!("unknown initial vertex `{}`", e.from));
        }
        if rt.is_none() {
            rep.push(&e.id, format!("unknown terminal vertex `{}`", e.to));
        }
        if let Some(rf) = rf {
            check_injection(&mut rep, &e.id, "inj_initial", &e.inj_initial, rf, e.rank);
        }
        if let Some(rt) = rt {
            check_injection(&mut rep, &e.id, "inj_terminal", &e.inj_terminal, rt, e.rank);
        }
        match spec.edges.iter().find(|r| r.id == e.reverse) {
            None => rep.push(&e.id, format!("reverse edge `{}` does not exist", e.reverse)),
            Some(r) => {
                if r.id == e.id {
                    rep.push(&e.id, "edge is its own reverse");
                } else if r.reverse != e.id {
                    rep.push(&e.id, format!("reverse of `{}` is not `{}`", r.id, e.id));
                } else if r.from != e.to || r.to != e.from {
                    rep.push(&e.id, format!("reverse `{}` has mismatched endpoints", r.id));
                } else if r.rank != e.rank || r.inj_initial != e.inj_terminal || r.inj_terminal != e.inj_initial {
                    rep.push(&e.id, format!("reverse `{}` does not swap the injections", r.id));
                }
            }
        }
    }
    // connectivity
    let n = spec.vertices.len();
    let idx = |id: &str| spec.vertices.iter().position(|v| v.id == id);
    let mut reached = vec![false; n];
    reached[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        for e in &spec.edges {
            if let (Some(a), Some(b)) = (idx(&e.from), idx(&e.to)) {
                for (x, y) in [(a, b), (b, a)] {
                    if x == u && !reached[y] {
                        reached[y] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
    }
    if reached.iter().any(|r| !r) {
        let missing: Vec<&str> =
            spec.vertices.iter().zip(&reached).filter(|(_, r)| !**r).map(|(v, _)| v.id.as_str()).collect();
        rep.push("", format!("graph is disconnected; unreachable: {}", missing.join(", ")));
    }
    rep
}

fn check_injection(rep: &mut ValidationReport, id: &str, which: &str, m: &IntMatrix, rows: usize, cols: usize) {
    if m.rows() != rows || m.cols() != cols {
        rep.push(id, format!("{which} is {}x{}, expected {rows}x{cols}", m.rows(), m.cols()));
    } else if !m.has_full_column_rank() {
        rep.push(id, format!("{which} is not injective"));
    }
}

#[derive(Clone, Debug)]
pub struct Vertex {
    pub id: String,
    pub rank: usize,
}

#[derive(Clone, Debug)]
pub struct Edge {
    pub id: String,
    pub from: usize,
    pub to: usize,
    pub rank: usize,
    pub inj_initial: IntMatrix,
    pub inj_terminal: IntMatrix,
    pub reverse: usize,
}

/// Left inverse of an injective integer matrix, used for exact preimages.
#[derive(Clone, Debug)]
struct Preimage {
    rows: Vec<usize>,
    inverse: RatMatrix,
}

impl Preimage {
    fn new(a: &IntMatrix) -> Self {
        let r = a.cols();
        let mut rows = Vec::new();
        let mut picked: Vec<Vec<BigInt>> = Vec::new();
        for i in 0..a.rows() {
            if rows.len() == r {
                break;
            }
            let mut trial = picked.clone();
            trial.push(a.row(i));
            if IntMatrix::from_rows(trial.len(), r, &trial).rank() == trial.len() {
                picked = trial;
                rows.push(i);
            }
        }
        let square = IntMatrix::from_rows(r, r, &picked).to_rat();
        let inverse = square.inverse().expect("injective matrix has invertible row selection");
        Preimage { rows, inverse }
    }

    /// Rational left inverse as a full `r × n` matrix.
    fn left_inverse(&self, n: usize) -> RatMatrix {
        let r = self.rows.len();
        let mut out = RatMatrix::zeros(r, n);
        for i in 0..r {
            for (j, &row) in self.rows.iter().enumerate() {
                out.set(i, row, self.inverse.get(i, j).clone());
            }
        }
        out
    }

    fn apply(&self, a: &IntMatrix, x: &[BigInt]) -> Option<Vec<BigInt>> {
        let sub: Vec<BigRational> = self.rows.iter().map(|&i| BigRational::from_integer(x[i].clone())).collect();
        let k = to_int_vec(&self.inverse.mul_vec(&sub))?;
        (a.mul_vec(&k) == x).then_some(k)
    }
}

/// A validated graph of free abelian groups.
#[derive(Clone, Debug)]
pub struct VGBSGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    preimages: Vec<Preimage>,
    spec: GraphSpec,
}

impl VGBSGraph {
    pub fn new(spec: GraphSpec) -> Result<Self> {
        let report = validate_graph(&spec);
        if !report.is_valid() {
            let msgs: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
            return Err(Error::InvalidGraph(msgs.join("; ")));
        }
        let vertices: Vec<Vertex> = spec.vertices.iter().map(|v| Vertex { id: v.id.clone(), rank: v.rank }).collect();
        let vidx = |id: &str| vertices.iter().position(|v| v.id == id).unwrap();
        let eidx = |id: &str| spec.edges.iter().position(|e| e.id == id).unwrap();
        let edges: Vec<Edge> = spec
            .edges
            .iter()
            .map(|e| Edge {
                id: e.id.clone(),
                from: vidx(&e.from),
                to: vidx(&e.to),
                rank: e.rank,
                inj_initial: e.inj_initial.clone(),
                inj_terminal: e.inj_terminal.clone(),
                reverse: eidx(&e.reverse),
            })
            .collect();
        let preimages = edges.iter().map(|e| Preimage::new(&e.inj_initial)).collect();
        Ok(VGBSGraph { vertices, edges, preimages, spec })
    }

    pub fn spec(&self) -> &GraphSpec {
        &self.spec
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex(&self, v: usize) -> &Vertex {
        &self.vertices[v]
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn rank(&self, v: usize) -> usize {
        self.vertices[v].rank
    }

    pub fn reverse(&self, e: usize) -> usize {
        self.edges[e].reverse
    }

    pub fn vertex_index(&self, id: &str) -> Result<usize> {
        self.vertices.iter().position(|v| v.id == id).ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn edge_index(&self, id: &str) -> Result<usize> {
        self.edges.iter().position(|e| e.id == id).ok_or_else(|| Error::UnknownEdge(id.to_string()))
    }

    /// True when every vertex and edge group is infinite cyclic.
    pub fn is_rank_one(&self) -> bool {
        self.vertices.iter().all(|v| v.rank == 1) && self.edges.iter().all(|e| e.rank == 1)
    }

    /// The unique `k` with `inj_initial(e)·k = x`, if it exists.
    pub fn edge_membership(&self, e: usize, x: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
        let edge = &self.edges[e];
        if x.len() != self.rank(edge.from) {
            return Err(Error::Dimension(format!(
                "vector of length {} at the initial vertex of `{}` (rank {})",
                x.len(),
                edge.id,
                self.rank(edge.from)
            )));
        }
        Ok(self.preimages[e].apply(&edge.inj_initial, x))
    }

    pub(crate) fn preimage_initial(&self, e: usize, x: &[BigInt]) -> Option<Vec<BigInt>> {
        self.preimages[e].apply(&self.edges[e].inj_initial, x)
    }

    pub(crate) fn preimage_terminal(&self, e: usize, x: &[BigInt]) -> Option<Vec<BigInt>> {
        self.preimage_initial(self.edges[e].reverse, x)
    }

    /// `inj_initial(e) ∘ L` where `L` is the fixed rational left inverse of
    /// `inj_terminal(e)`; moves a term across a backtracking pair.
    pub(crate) fn transport_matrix(&self, e: usize) -> RatMatrix {
        let edge = &self.edges[e];
        let rev = edge.reverse;
        let left = self.preimages[rev].left_inverse(self.rank(edge.to));
        edge.inj_initial.to_rat().mul(&left)
    }
}

/// Data of a presentation adapted to the graph: base vertex and spanning tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdaptedPresentation {
    pub base_vertex: usize,
    /// Tree edges, in the orientation they were discovered (parent to child).
    pub tree_edges: Vec<usize>,
    /// True for both orientations of every tree edge.
    pub trivial_letter: Vec<bool>,
    /// Edge from the parent, for every non-base vertex.
    pub parent_edge: Vec<Option<usize>>,
}

impl AdaptedPresentation {
    /// Tree edges from the base vertex to `v`.
    pub fn path_from_base(&self, graph: &VGBSGraph, v: usize) -> Vec<usize> {
        let mut path = Vec::new();
        let mut cur = v;
        while let Some(e) = self.parent_edge[cur] {
            path.push(e);
            cur = graph.edge(e).from;
        }
        path.reverse();
        path
    }

    pub fn is_tree_edge(&self, e: usize) -> bool {
        self.trivial_letter[e]
    }
}

/// Breadth-first spanning tree from `base`; edges explored in id order.
pub fn build_presentation(graph: &VGBSGraph, base: usize) -> Result<AdaptedPresentation> {
    if base >= graph.vertices().len() {
        return Err(Error::UnknownVertex(format!("#{base}")));
    }
    let n = graph.vertices().len();
    let mut order: Vec<usize> = (0..graph.edges().len()).collect();
    order.sort_by(|&a, &b| graph.edge(a).id.cmp(&graph.edge(b).id));
    let mut parent_edge = vec![None; n];
    let mut seen = vec![false; n];
    let mut trivial_letter = vec![false; graph.edges().len()];
    let mut tree_edges = Vec::new();
    seen[base] = true;
    let mut queue = VecDeque::from([base]);
    while let Some(u) = queue.pop_front() {
        for &e in &order {
            let edge = graph.edge(e);
            if edge.from != u || seen[edge.to] {
                continue;
            }
            seen[edge.to] = true;
            parent_edge[edge.to] = Some(e);
            trivial_letter[e] = true;
            trivial_letter[edge.reverse] = true;
            tree_edges.push(e);
            queue.push_back(edge.to);
        }
    }
    Ok(AdaptedPresentation { base_vertex: base, tree_edges, trivial_letter, parent_edge })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int_vec;

    fn m(x: i64) -> IntMatrix {
        IntMatrix::from_i64_rows(&[&[x]], 1)
    }

    #[test]
    fn non_injective_edge_is_reported() {
        let mut s = GraphSpec::default();
        s.vertex("v0", 1).edge_pair("e", "f", "v0", "v0", m(0), m(1));
        let rep = validate_graph(&s);
        assert!(!rep.is_valid());
        assert!(rep.violations.iter().any(|v| v.subject == "e" && v.message.contains("not injective")));
    }

    #[test]
    fn disconnected_graph_is_reported() {
        let mut s = GraphSpec::default();
        s.vertex("v0", 1).vertex("v1", 1);
        let rep = validate_graph(&s);
        assert!(rep.violations.iter().any(|v| v.message.contains("disconnected")));
    }

    #[test]
    fn broken_reverse_is_reported() {
        let mut s = GraphSpec::default();
        s.vertex("v0", 1).edge_pair("e", "f", "v0", "v0", m(1), m(2));
        s.edges[1].inj_initial = m(3);
        assert!(!validate_graph(&s).is_valid());
    }

    #[test]
    fn spanning_tree_has_one_edge_of_two_parallel_pairs() {
        let mut s = GraphSpec::default();
        s.vertex("u", 1).vertex("w", 1).edge_pair("e1", "e1r", "u", "w", m(1), m(1)).edge_pair(
            "e2",
            "e2r",
            "u",
            "w",
            m(2),
            m(3),
        );
        let g = VGBSGraph::new(s).unwrap();
        let p = build_presentation(&g, 0).unwrap();
        assert_eq!(p.tree_edges, vec![g.edge_index("e1").unwrap()]);
        assert_eq!(p.trivial_letter.iter().filter(|t| **t).count(), 2);
        assert_eq!(p.path_from_base(&g, 1), vec![0]);
    }

    #[test]
    fn membership_is_exact() {
        let mut s = GraphSpec::default();
        s.vertex("v0", 1).edge_pair("e", "f", "v0", "v0", m(2), m(3));
        let g = VGBSGraph::new(s).unwrap();
        assert_eq!(g.edge_membership(0, &int_vec(&[4])).unwrap(), Some(int_vec(&[2])));
        assert_eq!(g.edge_membership(0, &int_vec(&[3])).unwrap(), None);
        assert!(g.edge_membership(0, &int_vec(&[1, 1])).is_err());
        assert_eq!(g.edge_membership(1, &int_vec(&[3])).unwrap(), Some(int_vec(&[1])));
    }
}
