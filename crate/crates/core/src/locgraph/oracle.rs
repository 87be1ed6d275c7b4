//! Brute-force reference enumeration: generate every decorated multigraph
//! within size bounds and keep the ones the validator accepts.
//!
//! Shares nothing with the constructive enumerator except the validator
//! and the canonical encoding, so agreement between the two is evidence
//! for both. Only practical for very small shapes.

use std::collections::BTreeMap;

use super::canonical::{canonical_form, encoding, Encoding};
use super::graph::{
    marking_violations, single_refinement_violations, structural_violations, Edge, LocalizationGraph, Refinement,
    Vertex,
};
use super::shape::RelativeShape;
use crate::error::{Error, Result};
use crate::exactalg::Side;

/// Largest total degree the oracle accepts.
pub const ORACLE_MAX_DEGREE: u32 = 3;

pub fn oracle_graphs(shape: &RelativeShape) -> Result<Vec<LocalizationGraph>> {
    let d = shape.total_degree();
    if d > ORACLE_MAX_DEGREE {
        return Err(Error::EnumerationBoundExceeded(format!("oracle handles total degree up to {ORACLE_MAX_DEGREE}")));
    }
    let c = shape.components();
    let g_max = *shape.genera().iter().max().unwrap_or(&0);
    let mut kinds = Vec::new();
    for component in 0..c {
        for side in [Side::Zero, Side::Infinity] {
            for genus in 0..=g_max {
                kinds.push(Vertex { genus, side, component });
            }
        }
    }
    // a connected component with e edges has at most e + 1 vertices
    let max_vertices = d as usize + c;
    let mut seen: BTreeMap<Encoding, LocalizationGraph> = BTreeMap::new();
    for nv in 1..=max_vertices {
        for picks in nondecreasing(kinds.len(), nv) {
            let vertices: Vec<Vertex> = picks.iter().map(|&k| kinds[k]).collect();
            for edges in edge_lists(nv, d) {
                let bare = LocalizationGraph {
                    vertices: vertices.clone(),
                    edges,
                    markings: BTreeMap::new(),
                    refinements: vec![],
                };
                if !structural_violations(&bare, shape).is_empty() {
                    continue;
                }
                for marked in markings(&bare, shape) {
                    for refinements in refinements(&marked, shape) {
                        let g = LocalizationGraph { refinements, ..marked.clone() };
                        let enc = encoding(&g)?;
                        if let std::collections::btree_map::Entry::Vacant(e) = seen.entry(enc) {
                            e.insert(canonical_form(&g)?);
                        }
                    }
                }
            }
        }
    }
    Ok(seen.into_values().collect())
}

fn nondecreasing(kinds: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(kinds: usize, len: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for k in from..kinds {
            cur.push(k);
            rec(kinds, len, k, cur, out);
            cur.pop();
        }
    }
    rec(kinds, len, 0, &mut cur, &mut out);
    out
}

/// All multisets of edges between distinct vertices with total degree `d`.
fn edge_lists(nv: usize, d: u32) -> Vec<Vec<Edge>> {
    let mut kinds = Vec::new();
    for a in 0..nv {
        for b in a + 1..nv {
            for degree in 1..=d {
                kinds.push(Edge { ends: [a, b], degree });
            }
        }
    }
    let mut out = Vec::new();
    fn rec(kinds: &[Edge], from: usize, left: u32, cur: &mut Vec<Edge>, out: &mut Vec<Vec<Edge>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for k in from..kinds.len() {
            if kinds[k].degree <= left {
                cur.push(kinds[k]);
                rec(kinds, k, left - kinds[k].degree, cur, out);
                cur.pop();
            }
        }
    }
    rec(&kinds, 0, d, &mut Vec::new(), &mut out);
    out
}

fn markings(g: &LocalizationGraph, shape: &RelativeShape) -> Vec<LocalizationGraph> {
    let n = shape.markings() as usize;
    let nv = g.vertices.len();
    let mut out = Vec::new();
    let mut place = vec![0usize; n];
    loop {
        let h = LocalizationGraph { markings: (1..=n as u32).zip(place.iter().copied()).collect(), ..g.clone() };
        if marking_violations(&h, shape).is_empty() {
            out.push(h);
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            place[i] += 1;
            if place[i] < nv {
                break;
            }
            place[i] = 0;
            i += 1;
        }
    }
}

/// Every side and every assignment of parts to arbitrary vertices, kept
/// when the validator accepts the refinement.
fn refinements(g: &LocalizationGraph, shape: &RelativeShape) -> Vec<Vec<Refinement>> {
    let nv = g.vertices.len();
    let mut out: Vec<Vec<Refinement>> = vec![vec![]];
    for (j, mu) in shape.profiles().iter().enumerate() {
        let sizes: Vec<usize> = mu.iter().map(|p| p.len()).collect();
        let total: usize = sizes.iter().sum();
        let mut valid = Vec::new();
        for side in [Side::Zero, Side::Infinity] {
            let mut flat = vec![0usize; total];
            loop {
                let mut distribution = Vec::new();
                let mut at = 0;
                for &s in &sizes {
                    distribution.push(flat[at..at + s].to_vec());
                    at += s;
                }
                let r = Refinement { profile_index: j, side, distribution };
                if single_refinement_violations(g, shape, j, &r).is_empty() {
                    valid.push(r);
                }
                let mut i = 0;
                while i < total {
                    flat[i] += 1;
                    if flat[i] < nv {
                        break;
                    }
                    flat[i] = 0;
                    i += 1;
                }
                if i == total {
                    break;
                }
            }
        }
        out = out
            .into_iter()
            .flat_map(|prefix| {
                valid.iter().map(move |r| {
                    let mut next = prefix.clone();
                    next.push(r.clone());
                    next
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::locgraph::enumerate::enumerate_graphs;
    use crate::partitions::Partition;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn agrees_on_small_shapes() {
        for (g, n, d, mus) in [
            (0, 0, 1, vec![p(&[1])]),
            (0, 0, 2, vec![p(&[1, 1])]),
            (1, 1, 2, vec![p(&[2])]),
            (0, 1, 2, vec![p(&[2]), p(&[1, 1])]),
        ] {
            let s = RelativeShape::connected(g, n, d, mus).unwrap();
            assert_eq!(oracle_graphs(&s).unwrap(), enumerate_graphs(&s).unwrap(), "{s:?}");
        }
    }

    #[test]
    fn refuses_large() {
        let s = RelativeShape::connected(0, 0, 4, vec![p(&[4])]).unwrap();
        assert!(oracle_graphs(&s).is_err());
    }
}
