use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::shape::RelativeShape;
use crate::error::{Error, Result};
use crate::exactalg::Side;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    pub genus: u32,
    pub side: Side,
    pub component: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub ends: [usize; 2],
    pub degree: u32,
}

impl Edge {
    pub fn touches(&self, v: usize) -> bool {
        self.ends[0] == v || self.ends[1] == v
    }

    pub fn other(&self, v: usize) -> usize {
        if self.ends[0] == v {
            self.ends[1]
        } else {
            self.ends[0]
        }
    }
}

/// A refinement of profile `profile_index`: its side, and for each
/// component `i` the vertex receiving each part of `μʲ[i]`, listed in the
/// order of the (weakly decreasing) parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Refinement {
    pub profile_index: usize,
    pub side: Side,
    pub distribution: Vec<Vec<usize>>,
}

/// A decorated bipartite graph indexing a torus-fixed locus.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct LocalizationGraph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    /// Marking label to vertex.
    pub markings: BTreeMap<u32, usize>,
    pub refinements: Vec<Refinement>,
}

#[derive(Serialize, Deserialize)]
struct VertexRepr {
    id: usize,
    genus: u32,
    side: Side,
    component: usize,
}

#[derive(Serialize, Deserialize)]
struct EdgeRepr {
    id: usize,
    ends: [usize; 2],
    degree: u32,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    vertices: Vec<VertexRepr>,
    edges: Vec<EdgeRepr>,
    markings: BTreeMap<String, usize>,
    refinements: Vec<Refinement>,
}

impl From<LocalizationGraph> for GraphRepr {
    fn from(g: LocalizationGraph) -> Self {
        GraphRepr {
            vertices: g
                .vertices
                .iter()
                .enumerate()
                .map(|(id, v)| VertexRepr { id, genus: v.genus, side: v.side, component: v.component })
                .collect(),
            edges: g.edges.iter().enumerate().map(|(id, e)| EdgeRepr { id, ends: e.ends, degree: e.degree }).collect(),
            markings: g.markings.iter().map(|(k, v)| (format!("{k}"), *v)).collect(),
            refinements: g.refinements,
        }
    }
}

impl TryFrom<GraphRepr> for LocalizationGraph {
    type Error = Error;

    fn try_from(r: GraphRepr) -> Result<Self> {
        let bad_id = |what: &str| Error::InvalidShape(format!("{what} ids must be 0, 1, 2, ... in order"));
        if r.vertices.iter().enumerate().any(|(i, v)| v.id != i) {
            return Err(bad_id("vertex"));
        }
        if r.edges.iter().enumerate().any(|(i, e)| e.id != i) {
            return Err(bad_id("edge"));
        }
        let mut markings = BTreeMap::new();
        for (k, v) in r.markings {
            let label: u32 = k.parse().map_err(|_| Error::InvalidShape(format!("bad marking label {k:?}")))?;
            markings.insert(label, v);
        }
        Ok(LocalizationGraph {
            vertices: r
                .vertices
                .into_iter()
                .map(|v| Vertex { genus: v.genus, side: v.side, component: v.component })
                .collect(),
            edges: r.edges.into_iter().map(|e| Edge { ends: e.ends, degree: e.degree }).collect(),
            markings,
            refinements: r.refinements,
        })
    }
}

/// Which group of conditions a violation belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ViolationKind {
    Structural,
    Marking,
    Refinement,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Validation {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

impl LocalizationGraph {
    pub fn incident_edges(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().enumerate().filter(move |(_, e)| e.touches(v)).map(|(i, _)| i)
    }

    /// Number of incident edges.
    pub fn edge_valence(&self, v: usize) -> usize {
        self.incident_edges(v).count()
    }

    pub fn markings_at(&self, v: usize) -> Vec<u32> {
        self.markings.iter().filter(|&(_, &w)| w == v).map(|(&k, _)| k).collect()
    }

    /// Incident edges plus incident markings.
    pub fn valence(&self, v: usize) -> usize {
        self.edge_valence(v) + self.markings_at(v).len()
    }

    pub fn incident_degree(&self, v: usize) -> u32 {
        self.incident_edges(v).map(|e| self.edges[e].degree).sum()
    }

    pub fn vertices_on(&self, side: Side) -> impl Iterator<Item = usize> + '_ {
        self.vertices.iter().enumerate().filter(move |(_, v)| v.side == side).map(|(i, _)| i)
    }

    pub fn refinements_on(&self, side: Side) -> impl Iterator<Item = &Refinement> + '_ {
        self.refinements.iter().filter(move |r| r.side == side)
    }

    pub fn edge_degree_product(&self) -> u64 {
        self.edges.iter().map(|e| e.degree as u64).product()
    }

    /// Applies a relabeling: old vertex `v` becomes `vertex_map[v]` and old
    /// edge `e` becomes `edge_map[e]`.
    pub fn relabeled(&self, vertex_map: &[usize], edge_map: &[usize]) -> Result<LocalizationGraph> {
        if !is_permutation(vertex_map, self.vertices.len()) || !is_permutation(edge_map, self.edges.len()) {
            return Err(Error::InvalidShape("relabeling is not a permutation".into()));
        }
        let mut vertices = self.vertices.clone();
        for (old, &new) in vertex_map.iter().enumerate() {
            vertices[new] = self.vertices[old];
        }
        let mut edges = self.edges.clone();
        for (old, &new) in edge_map.iter().enumerate() {
            let e = self.edges[old];
            edges[new] = Edge { ends: [vertex_map[e.ends[0]], vertex_map[e.ends[1]]], degree: e.degree };
        }
        let markings = self.markings.iter().map(|(&k, &v)| (k, vertex_map[v])).collect();
        let refinements = self
            .refinements
            .iter()
            .map(|r| Refinement {
                profile_index: r.profile_index,
                side: r.side,
                distribution: r.distribution.iter().map(|d| d.iter().map(|&v| vertex_map[v]).collect()).collect(),
            })
            .collect();
        Ok(LocalizationGraph { vertices, edges, markings, refinements })
    }
}

fn is_permutation(map: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    map.len() == n && map.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
}

/// Checks the structural conditions: sides and components of edges,
/// connectivity of each component, genus and degree bookkeeping.
pub(crate) fn structural_violations(g: &LocalizationGraph, shape: &RelativeShape) -> Vec<String> {
    let mut out = Vec::new();
    let c = shape.components();
    let nv = g.vertices.len();
    for (i, v) in g.vertices.iter().enumerate() {
        if v.component >= c {
            out.push(format!("vertex {i} lies on component {} of {c}", v.component));
        }
    }
    if !out.is_empty() {
        return out;
    }
    for (i, e) in g.edges.iter().enumerate() {
        if e.ends.iter().any(|&v| v >= nv) {
            out.push(format!("edge {i} has an end outside the vertex set"));
            continue;
        }
        let [a, b] = e.ends;
        if g.vertices[a].side == g.vertices[b].side {
            out.push(format!("edge {i} joins two vertices over {}", g.vertices[a].side));
        }
        if g.vertices[a].component != g.vertices[b].component {
            out.push(format!("edge {i} joins different components"));
        }
        if e.degree == 0 {
            out.push(format!("edge {i} has degree 0"));
        }
    }
    if !out.is_empty() {
        return out;
    }
    for comp in 0..c {
        let verts: Vec<usize> = (0..nv).filter(|&v| g.vertices[v].component == comp).collect();
        let edges: Vec<&Edge> = g.edges.iter().filter(|e| g.vertices[e.ends[0]].component == comp).collect();
        if verts.is_empty() {
            out.push(format!("component {comp} has no vertices"));
            continue;
        }
        if !connected(&verts, &edges) {
            out.push(format!("component {comp} is not connected"));
        }
        let degree: u32 = edges.iter().map(|e| e.degree).sum();
        if degree != shape.degrees()[comp] {
            out.push(format!("component {comp} has edge degree sum {degree}, expected {}", shape.degrees()[comp]));
        }
        let h1 = edges.len() as i64 - verts.len() as i64 + 1;
        let genus = verts.iter().map(|&v| g.vertices[v].genus as i64).sum::<i64>() + h1;
        if genus != shape.genera()[comp] as i64 {
            out.push(format!("component {comp} has genus {genus}, expected {}", shape.genera()[comp]));
        }
    }
    out
}

fn connected(verts: &[usize], edges: &[&Edge]) -> bool {
    let mut reached = vec![verts[0]];
    let mut stack = vec![verts[0]];
    while let Some(v) = stack.pop() {
        for e in edges {
            if e.touches(v) {
                let w = e.other(v);
                if !reached.contains(&w) {
                    reached.push(w);
                    stack.push(w);
                }
            }
        }
    }
    reached.len() == verts.len()
}

pub(crate) fn marking_violations(g: &LocalizationGraph, shape: &RelativeShape) -> Vec<String> {
    let mut out = Vec::new();
    let n = shape.markings();
    if g.markings.keys().copied().ne(1..=n) {
        out.push(format!("markings must be exactly 1..{n}"));
        return out;
    }
    for (&label, &v) in &g.markings {
        match g.vertices.get(v) {
            None => out.push(format!("marking {label} is on a missing vertex")),
            Some(vert) => {
                if shape.component_of_marking(label) != Some(vert.component) {
                    out.push(format!("marking {label} lies on component {}", vert.component));
                }
            }
        }
    }
    out
}

pub(crate) fn refinement_violations(g: &LocalizationGraph, shape: &RelativeShape) -> Vec<String> {
    let mut out = Vec::new();
    if g.refinements.len() != shape.profiles().len() {
        out.push(format!("{} refinements for {} profiles", g.refinements.len(), shape.profiles().len()));
        return out;
    }
    for (j, r) in g.refinements.iter().enumerate() {
        out.extend(single_refinement_violations(g, shape, j, r));
    }
    out
}

/// Violations of a single refinement, taken as the `j`-th one.
pub(crate) fn single_refinement_violations(
    g: &LocalizationGraph,
    shape: &RelativeShape,
    j: usize,
    r: &Refinement,
) -> Vec<String> {
    let mut out = Vec::new();
    if r.profile_index != j {
        out.push(format!("refinement {j} refers to profile {}", r.profile_index));
        return out;
    }
    let mu = &shape.profiles()[j];
    if r.distribution.len() != mu.len() {
        out.push(format!("refinement {j} has {} blocks", r.distribution.len()));
        return out;
    }
    let mut received = vec![0u32; g.vertices.len()];
    for (i, (block, parts)) in r.distribution.iter().zip(mu).enumerate() {
        if block.len() != parts.len() {
            out.push(format!(
                "refinement {j} places {} parts over component {i}, profile has {}",
                block.len(),
                parts.len()
            ));
            return out;
        }
        for (&v, &part) in block.iter().zip(parts.parts()) {
            match g.vertices.get(v) {
                None => out.push(format!("refinement {j} uses a missing vertex {v}")),
                Some(vert) if vert.side != r.side => {
                    out.push(format!("refinement {j} puts a part on vertex {v} over {}", vert.side))
                }
                Some(vert) if vert.component != i => {
                    out.push(format!("refinement {j} puts a part of component {i} on component {}", vert.component))
                }
                Some(_) => received[v] += part,
            }
        }
    }
    for v in g.vertices_on(r.side) {
        let need = g.incident_degree(v);
        if received[v] != need {
            out.push(format!("refinement {j} gives vertex {v} parts summing to {}, edges sum to {need}", received[v]));
        }
    }
    out
}

/// Checks all localization graph conditions against `shape`.
pub fn validate_graph(g: &LocalizationGraph, shape: &RelativeShape) -> Validation {
    let mut violations: Vec<Violation> = structural_violations(g, shape)
        .into_iter()
        .map(|message| Violation { kind: ViolationKind::Structural, message })
        .collect();
    if violations.is_empty() {
        violations.extend(
            marking_violations(g, shape).into_iter().map(|message| Violation { kind: ViolationKind::Marking, message }),
        );
        violations.extend(
            refinement_violations(g, shape)
                .into_iter()
                .map(|message| Violation { kind: ViolationKind::Refinement, message }),
        );
    }
    Validation { valid: violations.is_empty(), violations }
}
