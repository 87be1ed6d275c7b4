//! Exhaustive enumeration of localization graphs for a shape.
//!
//! Each component is built independently (side counts, edge multiset,
//! genus distribution, markings) and reduced to isomorphism classes; the
//! components are then combined and every refinement choice is attached.
//! A final canonical pass removes graphs identified by automorphisms.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::canonical::{canonical_form, encoding, Encoding};
use super::graph::{Edge, LocalizationGraph, Refinement, Vertex};
use super::shape::RelativeShape;
use crate::error::{Error, Result};
use crate::exactalg::Side;

/// Limits past which enumeration refuses instead of truncating.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EnumerationBounds {
    pub max_degree: u32,
    pub max_genus: u32,
    pub max_profiles: usize,
    pub max_markings: u32,
}

impl Default for EnumerationBounds {
    fn default() -> Self {
        EnumerationBounds { max_degree: 4, max_genus: 3, max_profiles: 3, max_markings: 4 }
    }
}

impl EnumerationBounds {
    pub fn check(&self, shape: &RelativeShape) -> Result<()> {
        let over = |what: &str, got: u64, max: u64| {
            Error::EnumerationBoundExceeded(format!("{what} {got} exceeds the enumeration bound {max}"))
        };
        if shape.total_degree() > self.max_degree {
            return Err(over("total degree", shape.total_degree().into(), self.max_degree.into()));
        }
        if shape.total_genus() > self.max_genus {
            return Err(over("total genus", shape.total_genus().into(), self.max_genus.into()));
        }
        if shape.profiles().len() > self.max_profiles {
            return Err(over("profile count", shape.profiles().len() as u64, self.max_profiles as u64));
        }
        if shape.markings() > self.max_markings {
            return Err(over("marking count", shape.markings().into(), self.max_markings.into()));
        }
        if !shape.parameterized() {
            return Err(Error::InvalidShape("graphs are enumerated for the parameterized target only".into()));
        }
        if shape.extra_markings() > 0 {
            return Err(Error::InvalidShape("extra markings only enter dimension bookkeeping".into()));
        }
        Ok(())
    }
}

/// All graphs for `shape` under the default bounds.
pub fn enumerate_graphs(shape: &RelativeShape) -> Result<Vec<LocalizationGraph>> {
    enumerate_graphs_within(shape, &EnumerationBounds::default())
}

/// All graphs for `shape`, one canonical representative per isomorphism
/// class, sorted by canonical encoding.
pub fn enumerate_graphs_within(shape: &RelativeShape, bounds: &EnumerationBounds) -> Result<Vec<LocalizationGraph>> {
    bounds.check(shape)?;
    let per_component = (0..shape.components())
        .map(|i| component_structures(shape.degrees()[i], shape.genera()[i], &shape.marking_sets()[i], i))
        .collect::<Result<Vec<_>>>()?;
    let mut seen: BTreeMap<Encoding, LocalizationGraph> = BTreeMap::new();
    let mut choice = vec![0usize; per_component.len()];
    loop {
        let parts: Vec<&LocalizationGraph> = choice.iter().zip(&per_component).map(|(&k, list)| &list[k]).collect();
        let base = disjoint_union(&parts);
        for refinements in refinement_choices(&base, shape) {
            let g = LocalizationGraph { refinements, ..base.clone() };
            let enc = encoding(&g)?;
            if let std::collections::btree_map::Entry::Vacant(e) = seen.entry(enc) {
                e.insert(canonical_form(&g)?);
            }
        }
        if !advance(&mut choice, per_component.iter().map(Vec::len)) {
            break;
        }
    }
    Ok(seen.into_values().collect())
}

/// Mixed-radix increment; false once every combination has been visited.
fn advance(choice: &mut [usize], radices: impl Iterator<Item = usize>) -> bool {
    for (c, r) in choice.iter_mut().zip(radices) {
        *c += 1;
        if *c < r {
            return true;
        }
        *c = 0;
    }
    false
}

fn disjoint_union(parts: &[&LocalizationGraph]) -> LocalizationGraph {
    let mut g = LocalizationGraph { vertices: vec![], edges: vec![], markings: BTreeMap::new(), refinements: vec![] };
    for p in parts {
        let off = g.vertices.len();
        g.vertices.extend_from_slice(&p.vertices);
        g.edges.extend(p.edges.iter().map(|e| Edge { ends: [e.ends[0] + off, e.ends[1] + off], degree: e.degree }));
        g.markings.extend(p.markings.iter().map(|(&k, &v)| (k, v + off)));
    }
    g
}

/// Isomorphism classes of connected decorated graphs of degree `d` and
/// genus `g` carrying the given markings, without refinements.
fn component_structures(d: u32, g: u32, labels: &[u32], component: usize) -> Result<Vec<LocalizationGraph>> {
    let mut seen: BTreeMap<Encoding, LocalizationGraph> = BTreeMap::new();
    for a in 1..=d as usize {
        for b in 1..=(d as usize + 1 - a) {
            for edges in edge_multisets(a, b, d) {
                let nv = a + b;
                let h1 = edges.len() as i64 - nv as i64 + 1;
                if h1 > g as i64 || !spans_connected(nv, &edges) {
                    continue;
                }
                for genera in weak_compositions(g - h1 as u32, nv) {
                    let vertices: Vec<Vertex> = genera
                        .iter()
                        .enumerate()
                        .map(|(v, &genus)| Vertex {
                            genus,
                            side: if v < a { Side::Zero } else { Side::Infinity },
                            component,
                        })
                        .collect();
                    let mut place = vec![0usize; labels.len()];
                    loop {
                        let graph = LocalizationGraph {
                            vertices: vertices.clone(),
                            edges: edges.clone(),
                            markings: labels.iter().copied().zip(place.iter().copied()).collect(),
                            refinements: vec![],
                        };
                        let enc = encoding(&graph)?;
                        if let std::collections::btree_map::Entry::Vacant(e) = seen.entry(enc) {
                            e.insert(canonical_form(&graph)?);
                        }
                        if !advance(&mut place, std::iter::repeat(nv)) {
                            break;
                        }
                    }
                }
            }
        }
    }
    Ok(seen.into_values().collect())
}

/// Nondecreasing lists of edges `(u, a + w, δ)` with `u < a`, `w < b`,
/// total degree `d`, touching every vertex.
fn edge_multisets(a: usize, b: usize, d: u32) -> Vec<Vec<Edge>> {
    let mut kinds = Vec::new();
    for u in 0..a {
        for w in 0..b {
            for delta in 1..=d {
                kinds.push(Edge { ends: [u, a + w], degree: delta });
            }
        }
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    multiset_rec(&kinds, 0, d, &mut cur, &mut out);
    out.retain(|es| (0..a + b).all(|v| es.iter().any(|e| e.touches(v))));
    out
}

fn multiset_rec(kinds: &[Edge], from: usize, left: u32, cur: &mut Vec<Edge>, out: &mut Vec<Vec<Edge>>) {
    if left == 0 {
        out.push(cur.clone());
        return;
    }
    for (k, e) in kinds.iter().enumerate().skip(from) {
        if e.degree <= left {
            cur.push(*e);
            multiset_rec(kinds, k, left - e.degree, cur, out);
            cur.pop();
        }
    }
}

fn spans_connected(nv: usize, edges: &[Edge]) -> bool {
    let mut reached = vec![false; nv];
    let mut stack = vec![0];
    reached[0] = true;
    while let Some(v) = stack.pop() {
        for e in edges.iter().filter(|e| e.touches(v)) {
            let w = e.other(v);
            if !reached[w] {
                reached[w] = true;
                stack.push(w);
            }
        }
    }
    reached.into_iter().all(|r| r)
}

fn weak_compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in weak_compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every tuple of refinements compatible with the edges of `g`.
fn refinement_choices(g: &LocalizationGraph, shape: &RelativeShape) -> Vec<Vec<Refinement>> {
    let mut per_profile: Vec<Vec<Refinement>> = Vec::new();
    for (j, mu) in shape.profiles().iter().enumerate() {
        let mut options = Vec::new();
        for side in [Side::Zero, Side::Infinity] {
            let mut blocks: Vec<Vec<Vec<usize>>> = vec![vec![]];
            for (i, part) in mu.iter().enumerate() {
                let targets: Vec<usize> = g.vertices_on(side).filter(|&v| g.vertices[v].component == i).collect();
                let mut room: Vec<u32> = targets.iter().map(|&v| g.incident_degree(v)).collect();
                let mut found = Vec::new();
                distribute(part.parts(), &targets, &mut room, &mut Vec::new(), &mut found);
                blocks = blocks
                    .into_iter()
                    .flat_map(|prefix| {
                        found.iter().map(move |block| {
                            let mut next = prefix.clone();
                            next.push(block.clone());
                            next
                        })
                    })
                    .collect();
            }
            options.extend(blocks.into_iter().map(|distribution| Refinement { profile_index: j, side, distribution }));
        }
        per_profile.push(options);
    }
    let mut out: Vec<Vec<Refinement>> = vec![vec![]];
    for options in per_profile {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                options.iter().map(move |r| {
                    let mut next = prefix.clone();
                    next.push(r.clone());
                    next
                })
            })
            .collect();
    }
    out
}

/// Assigns each part to a target so that every target is filled exactly.
fn distribute(parts: &[u32], targets: &[usize], room: &mut [u32], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let Some((&p, rest)) = parts.split_first() else {
        if room.iter().all(|&r| r == 0) {
            out.push(cur.clone());
        }
        return;
    };
    for t in 0..targets.len() {
        if room[t] >= p {
            room[t] -= p;
            cur.push(targets[t]);
            distribute(rest, targets, room, cur, out);
            cur.pop();
            room[t] += p;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::locgraph::graph::validate_graph;
    use crate::partitions::Partition;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn degree_one() {
        let one = RelativeShape::connected(0, 0, 1, vec![p(&[1])]).unwrap();
        assert_eq!(enumerate_graphs(&one).unwrap().len(), 2);
        let two = RelativeShape::connected(0, 0, 1, vec![p(&[1]), p(&[1])]).unwrap();
        assert_eq!(enumerate_graphs(&two).unwrap().len(), 4);
    }

    #[test]
    fn all_valid_and_distinct() {
        let s = RelativeShape::connected(1, 1, 2, vec![p(&[1, 1])]).unwrap();
        let gs = enumerate_graphs(&s).unwrap();
        assert!(!gs.is_empty());
        let mut encs = std::collections::BTreeSet::new();
        for g in &gs {
            assert!(validate_graph(g, &s).valid);
            assert!(encs.insert(encoding(g).unwrap()));
        }
    }

    #[test]
    fn genus_never_exceeded() {
        let s = RelativeShape::connected(1, 0, 2, vec![p(&[2])]).unwrap();
        for g in enumerate_graphs(&s).unwrap() {
            let h1 = g.edges.len() + 1 - g.vertices.len();
            assert_eq!(g.vertices.iter().map(|v| v.genus as usize).sum::<usize>() + h1, 1);
        }
    }

    #[test]
    fn disconnected() {
        let s =
            RelativeShape::new(vec![0, 0], vec![vec![1], vec![]], vec![1, 1], vec![vec![p(&[1]), p(&[1])]], true, 0)
                .unwrap();
        let gs = enumerate_graphs(&s).unwrap();
        // marking on either vertex of component 0, refinement on either side
        assert_eq!(gs.len(), 4);
        assert!(gs.iter().all(|g| validate_graph(g, &s).valid));
    }

    #[test]
    fn bounds() {
        let s = RelativeShape::connected(0, 0, 5, vec![p(&[5])]).unwrap();
        assert!(matches!(enumerate_graphs(&s), Err(Error::EnumerationBoundExceeded(_))));
        let wide = EnumerationBounds { max_degree: 5, ..Default::default() };
        assert!(enumerate_graphs_within(&s, &wide).is_ok());
        let u = RelativeShape::connected(0, 0, 1, vec![p(&[1]), p(&[1])]).unwrap().with_parameterized(false).unwrap();
        assert!(matches!(enumerate_graphs(&u), Err(Error::InvalidShape(_))));
    }
}
