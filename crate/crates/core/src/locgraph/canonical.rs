//! Canonical labeling and brute-force automorphism counts.
//!
//! Vertices are first sorted by an isomorphism-invariant key; the canonical
//! labeling is then the lexicographically smallest encoding over all
//! orderings that permute vertices only within blocks of equal key.

use std::collections::BTreeMap;

use super::graph::{Edge, LocalizationGraph, Refinement, Vertex};
use crate::error::{Error, Result};
use crate::exactalg::Side;

/// Largest vertex count accepted by the brute-force routines.
pub const MAX_VERTICES: usize = 12;

type VertexKey = (usize, Side, u32, Vec<u32>, Vec<(usize, usize, usize)>, Vec<u32>);

/// Complete description of a graph under a vertex ordering; equal
/// encodings mean equal labeled graphs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Encoding {
    vertices: Vec<(usize, Side, u32)>,
    edges: Vec<(usize, usize, u32)>,
    markings: Vec<usize>,
    refinements: Vec<(Side, Vec<Vec<usize>>)>,
}

fn vertex_key(g: &LocalizationGraph, v: usize) -> VertexKey {
    let vert = g.vertices[v];
    let mut parts = Vec::new();
    for (j, r) in g.refinements.iter().enumerate() {
        for (i, block) in r.distribution.iter().enumerate() {
            for (k, &w) in block.iter().enumerate() {
                if w == v {
                    parts.push((j, i, k));
                }
            }
        }
    }
    let mut degrees: Vec<u32> = g.incident_edges(v).map(|e| g.edges[e].degree).collect();
    degrees.sort_unstable();
    (vert.component, vert.side, vert.genus, g.markings_at(v), parts, degrees)
}

fn encode(g: &LocalizationGraph, new_of_old: &[usize], order: &[usize]) -> Encoding {
    let vertices = order.iter().map(|&v| {
        let x = g.vertices[v];
        (x.component, x.side, x.genus)
    });
    let mut edges: Vec<(usize, usize, u32)> = g
        .edges
        .iter()
        .map(|e| {
            let (a, b) = (new_of_old[e.ends[0]], new_of_old[e.ends[1]]);
            (a.min(b), a.max(b), e.degree)
        })
        .collect();
    edges.sort_unstable();
    Encoding {
        vertices: vertices.collect(),
        edges,
        markings: g.markings.values().map(|&v| new_of_old[v]).collect(),
        refinements: g
            .refinements
            .iter()
            .map(|r| (r.side, r.distribution.iter().map(|b| b.iter().map(|&v| new_of_old[v]).collect()).collect()))
            .collect(),
    }
}

fn check_size(g: &LocalizationGraph) -> Result<()> {
    if g.vertices.len() > MAX_VERTICES {
        return Err(Error::EnumerationBoundExceeded(format!(
            "{} vertices, brute force handles at most {MAX_VERTICES}",
            g.vertices.len()
        )));
    }
    Ok(())
}

/// Calls `visit(order)` for every vertex ordering that keeps the blocks of
/// equal invariant key in key order.
fn for_each_block_order(g: &LocalizationGraph, mut visit: impl FnMut(&[usize])) {
    let mut keyed: Vec<(VertexKey, usize)> = (0..g.vertices.len()).map(|v| (vertex_key(g, v), v)).collect();
    keyed.sort();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for (i, (key, v)) in keyed.iter().enumerate() {
        if i > 0 && keyed[i - 1].0 == *key {
            blocks.last_mut().expect("nonempty").push(*v);
        } else {
            blocks.push(vec![*v]);
        }
    }
    let mut order = Vec::with_capacity(g.vertices.len());
    blocks_rec(&mut blocks, 0, &mut order, &mut visit);
}

fn blocks_rec(blocks: &mut [Vec<usize>], b: usize, order: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    if b == blocks.len() {
        visit(order);
        return;
    }
    let len = blocks[b].len();
    permute_rec(blocks, b, 0, len, order, visit);
}

fn permute_rec(
    blocks: &mut [Vec<usize>],
    b: usize,
    k: usize,
    len: usize,
    order: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    if k == len {
        let start = order.len();
        order.extend_from_slice(&blocks[b]);
        blocks_rec(blocks, b + 1, order, visit);
        order.truncate(start);
        return;
    }
    for i in k..len {
        blocks[b].swap(k, i);
        permute_rec(blocks, b, k + 1, len, order, visit);
        blocks[b].swap(k, i);
    }
}

fn inverse(order: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; order.len()];
    for (new, &old) in order.iter().enumerate() {
        inv[old] = new;
    }
    inv
}

/// The minimal encoding together with the number of orderings attaining it,
/// which is the number of vertex automorphisms.
fn minimal(g: &LocalizationGraph) -> Result<(Encoding, Vec<usize>, u64)> {
    check_size(g)?;
    let mut best: Option<(Encoding, Vec<usize>, u64)> = None;
    for_each_block_order(g, |order| {
        let enc = encode(g, &inverse(order), order);
        match &mut best {
            Some((b, _, count)) if enc == *b => *count += 1,
            Some((b, _, _)) if enc > *b => {}
            _ => best = Some((enc, order.to_vec(), 1)),
        }
    });
    Ok(best.unwrap_or_else(|| (encode(g, &[], &[]), Vec::new(), 1)))
}

pub fn encoding(g: &LocalizationGraph) -> Result<Encoding> {
    Ok(minimal(g)?.0)
}

/// The canonical representative of the isomorphism class of `g`: vertices
/// in canonical order, edges sorted with ends `[low, high]`.
pub fn canonical_form(g: &LocalizationGraph) -> Result<LocalizationGraph> {
    let (enc, order, _) = minimal(g)?;
    let new_of_old = inverse(&order);
    let vertices: Vec<Vertex> = order.iter().map(|&v| g.vertices[v]).collect();
    let edges = enc.edges.iter().map(|&(a, b, degree)| Edge { ends: [a, b], degree }).collect();
    let markings = g.markings.iter().map(|(&k, &v)| (k, new_of_old[v])).collect::<BTreeMap<_, _>>();
    let refinements = g
        .refinements
        .iter()
        .map(|r| Refinement {
            profile_index: r.profile_index,
            side: r.side,
            distribution: r.distribution.iter().map(|b| b.iter().map(|&v| new_of_old[v]).collect()).collect(),
        })
        .collect();
    Ok(LocalizationGraph { vertices, edges, markings, refinements })
}

/// `|Aut(Γ)|`: vertex permutations preserving all decorations, times the
/// permutations of parallel edges of equal degree.
pub fn graph_automorphisms(g: &LocalizationGraph) -> Result<u64> {
    let (_, _, vertex_autos) = minimal(g)?;
    let mut classes: BTreeMap<(usize, usize, u32), u64> = BTreeMap::new();
    for e in &g.edges {
        let (a, b) = (e.ends[0].min(e.ends[1]), e.ends[0].max(e.ends[1]));
        *classes.entry((a, b, e.degree)).or_default() += 1;
    }
    let parallel: u64 = classes.values().map(|&m| (1..=m).product::<u64>()).product();
    Ok(vertex_autos * parallel)
}

/// `|A_Γ| = Π_e δ(e) · |Aut(Γ)|`.
pub fn aut_group_order(g: &LocalizationGraph) -> Result<u64> {
    Ok(g.edge_degree_product() * graph_automorphisms(g)?)
}
