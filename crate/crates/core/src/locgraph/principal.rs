//! Recognition of the star-shaped graphs whose contributions are the
//! principal terms of a relation, and the POP they are indexed by.

use serde::{Deserialize, Serialize};

use super::graph::LocalizationGraph;
use super::shape::RelativeShape;
use crate::error::Result;
use crate::exactalg::Side;
use crate::partitions::{MultiPop, MultiShape, Partition, Pop};

/// How the markings of a relation split per component: ordered markings
/// `nᵢ`, middle markings matching the parts of `α″[i]`, and extra markings
/// `n′ᵢ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PrincipalLayout {
    pub ordered: Vec<Vec<u32>>,
    pub middle: Vec<Vec<u32>>,
    pub extra: Vec<Vec<u32>>,
}

impl PrincipalLayout {
    /// Ordered markings from `alpha`, then the middle markings of every
    /// component, then `extra[i]` further markings per component.
    pub fn for_alpha(alpha: &MultiPop, extra: &[u32]) -> PrincipalLayout {
        let ordered = alpha.marking_sets().to_vec();
        let mut next = ordered.iter().map(Vec::len).sum::<usize>() as u32 + 1;
        let mut take = |count: u32| {
            let block: Vec<u32> = (next..next + count).collect();
            next += count;
            block
        };
        let middle = alpha.components().iter().map(|p| take(p.double_prime().len() as u32)).collect();
        let extra = extra.iter().map(|&e| take(e)).collect();
        PrincipalLayout { ordered, middle, extra }
    }

    pub fn components(&self) -> usize {
        self.ordered.len()
    }

    /// The relation's shape: all three kinds of markings on each component.
    pub fn relation_shape(
        &self,
        genera: Vec<u32>,
        degrees: Vec<u32>,
        profiles: Vec<Vec<Partition>>,
    ) -> Result<RelativeShape> {
        let sets = (0..self.components())
            .map(|i| {
                let mut s = self.ordered[i].clone();
                s.extend(&self.middle[i]);
                s.extend(self.extra.get(i).into_iter().flatten());
                s
            })
            .collect();
        RelativeShape::new(genera, sets, degrees, profiles, true, 0)
    }
}

/// The type `β̄` of `g` when `g` is a principal graph for `layout`:
/// one side-0 vertex of genus `gᵢ` per component, every side-∞ vertex on a
/// single edge, ordered markings on distinct side-∞ vertices giving `β[i]`
/// in marking order, middle markings on further distinct side-∞ vertices,
/// extra markings on the side-0 vertex, and all refinements over 0.
pub fn classify_principal(g: &LocalizationGraph, layout: &PrincipalLayout, shape: &RelativeShape) -> Option<MultiPop> {
    if g.refinements.iter().any(|r| r.side != Side::Zero) {
        return None;
    }
    let c = layout.components();
    if shape.components() != c {
        return None;
    }
    let mut centers = vec![None; c];
    for v in g.vertices_on(Side::Zero) {
        let comp = g.vertices[v].component;
        if comp >= c || centers[comp].replace(v).is_some() || g.vertices[v].genus != shape.genera()[comp] {
            return None;
        }
    }
    let centers: Vec<usize> = centers.into_iter().collect::<Option<_>>()?;
    let at_inf: Vec<usize> = g.vertices_on(Side::Infinity).collect();
    if at_inf.iter().any(|&v| g.vertices[v].genus != 0 || g.edge_valence(v) != 1) {
        return None;
    }
    let degree_at = |v: usize| g.incident_degree(v);
    let mut components = Vec::with_capacity(c);
    for (i, &center) in centers.iter().enumerate() {
        let mut used = Vec::new();
        let mut beta = Vec::new();
        for label in layout.ordered[i].iter().chain(&layout.middle[i]) {
            let &v = g.markings.get(label)?;
            if g.vertices[v].side != Side::Infinity || g.vertices[v].component != i || used.contains(&v) {
                return None;
            }
            used.push(v);
            if layout.ordered[i].contains(label) {
                beta.push(degree_at(v));
            }
        }
        if layout.extra.get(i).into_iter().flatten().any(|l| g.markings.get(l) != Some(&center)) {
            return None;
        }
        let rest: Vec<u32> = at_inf
            .iter()
            .filter(|&&v| g.vertices[v].component == i && !used[..beta.len()].contains(&v))
            .map(|&v| degree_at(v))
            .collect();
        components.push(Pop::new(shape.degrees()[i], beta, Partition::new(rest).ok()?).ok()?);
    }
    let pop_shape = MultiShape::new(shape.degrees().to_vec(), layout.ordered.clone()).ok()?;
    MultiPop::new(&pop_shape, components).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::locgraph::enumerate::enumerate_graphs;
    use crate::partitions::{enumerate_pop_multi, LengthBound};

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn layout() {
        let ms = MultiShape::with_sizes(vec![3, 2], &[1, 1]).unwrap();
        let alpha =
            MultiPop::new(&ms, vec![Pop::from_parts(3, &[1], &[2]).unwrap(), Pop::from_parts(2, &[1], &[1]).unwrap()])
                .unwrap();
        let l = PrincipalLayout::for_alpha(&alpha, &[0, 1]);
        assert_eq!(l.ordered, vec![vec![1], vec![2]]);
        assert_eq!(l.middle, vec![vec![3], vec![]]);
        assert_eq!(l.extra, vec![vec![], vec![4]]);
    }

    /// Every principal type of a small relation appears among the
    /// enumerated graphs, and each recognized graph has the star shape.
    #[test]
    fn principal_graphs_cover_pi() {
        let ms = MultiShape::connected(2, 1).unwrap();
        let alpha = MultiPop::new(&ms, vec![Pop::from_parts(2, &[1], &[1]).unwrap()]).unwrap();
        let layout = PrincipalLayout::for_alpha(&alpha, &[1]);
        let shape = layout.relation_shape(vec![1], vec![2], vec![vec![p(&[2])]]).unwrap();
        let mut found = std::collections::BTreeSet::new();
        for g in enumerate_graphs(&shape).unwrap() {
            if let Some(beta) = classify_principal(&g, &layout, &shape) {
                let mut degs: Vec<u32> = g.edges.iter().map(|e| e.degree).collect();
                degs.sort_unstable();
                let mut parts: Vec<u32> = beta.components()[0].ordered().to_vec();
                parts.extend(beta.components()[0].unordered().parts());
                parts.sort_unstable();
                assert_eq!(degs, parts);
                assert!(g.vertices_on(Side::Infinity).all(|v| g.vertices[v].genus == 0 && g.edge_valence(v) == 1));
                found.insert(beta);
            }
        }
        let all: std::collections::BTreeSet<MultiPop> =
            enumerate_pop_multi(&ms, LengthBound::Infinite).unwrap().into_iter().collect();
        assert_eq!(found, all);
    }

    #[test]
    fn rejections() {
        let ms = MultiShape::connected(1, 1).unwrap();
        let alpha = MultiPop::new(&ms, vec![Pop::from_parts(1, &[1], &[]).unwrap()]).unwrap();
        let layout = PrincipalLayout::for_alpha(&alpha, &[0]);
        let shape = layout.relation_shape(vec![1], vec![1], vec![vec![p(&[1])]]).unwrap();
        let graphs = enumerate_graphs(&shape).unwrap();
        let principal: Vec<_> = graphs.iter().filter_map(|g| classify_principal(g, &layout, &shape)).collect();
        assert_eq!(principal.len(), 1);
        for g in &graphs {
            if g.refinements.iter().any(|r| r.side == Side::Infinity) {
                assert!(classify_principal(g, &layout, &shape).is_none());
            }
        }
    }
}
