//! Case classification, degeneracy, multiplicities and inverse Euler
//! classes of the virtual normal bundle for localization graphs.

use num_traits::One;
use serde::Serialize;

use super::canonical::aut_group_order;
use super::dimension::vdim;
use super::graph::{validate_graph, LocalizationGraph};
use super::shape::RelativeShape;
use crate::error::{Error, Result};
use crate::exactalg::{factorial, Factor, FormalClass, Generator, LaurentT, Rational, Side};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Case {
    /// Refinements on both sides.
    I,
    /// Refinements over 0 only.
    II,
    /// Refinements over ∞ only.
    III,
}

pub fn classify_case(g: &LocalizationGraph) -> Case {
    let at_zero = g.refinements.iter().any(|r| r.side == Side::Zero);
    let at_inf = g.refinements.iter().any(|r| r.side == Side::Infinity);
    match (at_zero, at_inf) {
        (true, true) => Case::I,
        (true, false) => Case::II,
        _ => Case::III,
    }
}

/// All vertices over `side` have genus 0 and valence 1, and exactly one
/// refinement lies there, giving each vertex exactly one part.
pub fn degenerate_over(g: &LocalizationGraph, side: Side) -> bool {
    let verts: Vec<usize> = g.vertices_on(side).collect();
    if verts.iter().any(|&v| g.vertices[v].genus != 0 || g.valence(v) != 1) {
        return false;
    }
    let mut on_side = g.refinements_on(side);
    let (Some(r), None) = (on_side.next(), on_side.next()) else {
        return false;
    };
    let mut received = vec![0usize; g.vertices.len()];
    for &v in r.distribution.iter().flatten() {
        received[v] += 1;
    }
    verts.iter().all(|&v| received[v] == 1)
}

/// `m(Γ)`, and whether the value rests on an extrapolated rule: a Case I
/// graph degenerate on one side with several refinements on the other, or
/// a degenerate Case II/III graph.
pub fn multiplicity(g: &LocalizationGraph) -> (u64, bool) {
    let prod = g.edge_degree_product();
    let d0 = degenerate_over(g, Side::Zero);
    let dinf = degenerate_over(g, Side::Infinity);
    match classify_case(g) {
        Case::I => match (d0, dinf) {
            (false, false) => (prod * prod, false),
            (true, true) => (1, false),
            (true, false) => (prod, g.refinements_on(Side::Infinity).count() > 1),
            (false, true) => (prod, g.refinements_on(Side::Zero).count() > 1),
        },
        Case::II => (prod, d0),
        Case::III => (prod, dinf),
    }
}

fn t_power(c: Rational, exponent: i32) -> LaurentT {
    LaurentT::monomial(c, exponent)
}

/// The equivariant weight at `side`: `t` over 0, `−t` over ∞.
fn weight(side: Side) -> Rational {
    match side {
        Side::Zero => Rational::one(),
        Side::Infinity => -Rational::one(),
    }
}

/// Truncation bound for the node cotangent class on the rubber factor over
/// `side`: the virtual dimension of that factor, clamped at 0.
pub fn rubber_bound(g: &LocalizationGraph, side: Side) -> u32 {
    let verts: Vec<usize> = g.vertices_on(side).collect();
    let genus = verts.iter().map(|&v| g.vertices[v].genus as i64).sum::<i64>() - verts.len() as i64 + 1;
    let degree: u32 = g.edges.iter().map(|e| e.degree).sum();
    let markings = verts.iter().map(|&v| g.markings_at(v).len() as u32).sum();
    let mut lengths: Vec<usize> = g.refinements_on(side).map(|r| r.distribution.iter().map(Vec::len).sum()).collect();
    lengths.push(g.edges.len());
    vdim(genus, degree, markings, &lengths, false).max(0) as u32
}

/// `1/(w(w − ψ_q))` on the rubber factor over `side`, or `1/w` when that
/// side is degenerate.
fn rubber_factor(g: &LocalizationGraph, side: Side, degenerate: bool) -> Result<FormalClass> {
    let w = t_power(weight(side), 1);
    let inv_w = FormalClass::constant(w.inverse()?);
    if degenerate {
        return Ok(inv_w);
    }
    let bound = rubber_bound(g, side);
    Ok(inv_w.mul(&FormalClass::geom_expand(&w, Generator::NodePsi(side), bound)?))
}

/// `1/N(v)` for a vertex on the side without refinements, with weight
/// `−t` over ∞ and `t` over 0.
pub fn vertex_term(g: &LocalizationGraph, v: usize) -> Result<FormalClass> {
    let vert = g.vertices[v];
    let sign = weight(vert.side);
    let w = t_power(sign.clone(), 1);
    let inv_w = w.inverse()?;
    let edges: Vec<usize> = g.incident_edges(v).collect();
    let marks = g.markings_at(v).len();
    let val = edges.len() + marks;
    let stable = 2 * vert.genus as i64 - 2 + val as i64 > 0;
    if stable {
        let bound = (3 * vert.genus as i64 - 3 + val as i64) as u32;
        let mut out = FormalClass::constant(inv_w).with_bound(Factor::Vertex(v), bound);
        for &e in &edges {
            let delta = Rational::from_integer(g.edges[e].degree.into());
            let we = t_power(&sign / &delta, 1);
            out = out.mul(&FormalClass::geom_expand(&we, Generator::Psi { vertex: v, edge: e }, bound)?);
        }
        let mut hodge = FormalClass::zero().with_bound(Factor::Vertex(v), bound);
        for j in 0..=vert.genus {
            let c = LaurentT::monomial(if j % 2 == 0 { Rational::one() } else { -Rational::one() }, 0)
                * w.powi(vert.genus - j);
            let lambda = if j == 0 {
                FormalClass::one()
            } else {
                FormalClass::generator(Generator::Lambda { vertex: v, index: j })
            };
            hodge = hodge.add(&lambda.scale(&c));
        }
        return Ok(out.mul(&hodge));
    }
    let delta = |e: usize| Rational::from_integer(g.edges[e].degree.into());
    match (vert.genus, edges.len(), marks) {
        (0, 2, 0) => {
            let sum = t_power(&sign / &delta(edges[0]) + &sign / &delta(edges[1]), 1);
            Ok(FormalClass::constant(inv_w * sum.inverse()?))
        }
        (0, 1, 1) => Ok(FormalClass::constant(inv_w)),
        (0, 1, 0) => Ok(FormalClass::constant(LaurentT::constant(delta(edges[0]).recip()))),
        _ => Err(Error::InvalidVertex(format!(
            "vertex {v}: genus {}, {} edges and {marks} markings",
            vert.genus,
            edges.len()
        ))),
    }
}

/// `w / (w^δ δ!/δ^δ) = (δ^δ/δ!) w^{1−δ}`.
fn edge_factor(delta: u32, side: Side) -> LaurentT {
    let pow = num_traits::pow(num_bigint::BigInt::from(delta), delta as usize);
    let mut c = Rational::new(pow, factorial(delta));
    if (delta - 1) % 2 == 1 && side == Side::Infinity {
        c = -c;
    }
    t_power(c, 1 - delta as i32)
}

/// `1/e(N^vir_Γ)` as a truncated class.
pub fn euler_inverse(g: &LocalizationGraph) -> Result<FormalClass> {
    let d0 = degenerate_over(g, Side::Zero);
    let dinf = degenerate_over(g, Side::Infinity);
    match classify_case(g) {
        Case::I => Ok(rubber_factor(g, Side::Zero, d0)?.mul(&rubber_factor(g, Side::Infinity, dinf)?)),
        Case::II => fixed_side_product(g, Side::Zero, d0),
        Case::III => fixed_side_product(g, Side::Infinity, dinf),
    }
}

/// Rubber factor over `rubber_side` times edge and vertex terms over the
/// other side.
fn fixed_side_product(g: &LocalizationGraph, rubber_side: Side, degenerate: bool) -> Result<FormalClass> {
    let other = rubber_side.opposite();
    let mut out = rubber_factor(g, rubber_side, degenerate)?;
    let mut edges = LaurentT::one();
    for e in &g.edges {
        edges = edges * edge_factor(e.degree, other);
    }
    out = out.scale(&edges);
    for v in g.vertices_on(other).collect::<Vec<_>>() {
        out = out.mul(&vertex_term(g, v)?);
    }
    Ok(out)
}

/// The product whose inverse the Case I formula expands:
/// `t(t − ψ_{q0}) · (−t)(−t − ψ_{q∞})`, with a bare `t` or `−t` on a
/// degenerate side. `None` outside Case I.
pub fn case_i_denominator(g: &LocalizationGraph) -> Option<FormalClass> {
    if classify_case(g) != Case::I {
        return None;
    }
    let side_term = |side: Side| {
        let w = t_power(weight(side), 1);
        let wc = FormalClass::constant(w.clone());
        if degenerate_over(g, side) {
            wc
        } else {
            let bound = rubber_bound(g, side);
            let diff =
                wc.sub(&FormalClass::generator(Generator::NodePsi(side))).with_bound(Factor::Rubber(side), bound);
            FormalClass::constant(w).mul(&diff)
        }
    };
    Some(side_term(Side::Zero).mul(&side_term(Side::Infinity)))
}

/// Everything the localization sum needs from one graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GraphContribution {
    pub multiplicity: u64,
    pub aut_order: u64,
    pub case: Case,
    pub degenerate_at0: bool,
    pub degenerate_at_inf: bool,
    pub needs_review: bool,
    pub euler_inverse: FormalClass,
}

impl GraphContribution {
    /// `m(Γ)/|A_Γ|`.
    pub fn weight(&self) -> Rational {
        Rational::new(self.multiplicity.into(), self.aut_order.into())
    }
}

/// Contribution data of `g`, which must be a valid graph for `shape`.
pub fn contribution(g: &LocalizationGraph, shape: &RelativeShape) -> Result<GraphContribution> {
    let check = validate_graph(g, shape);
    if let Some(v) = check.violations.first() {
        return Err(Error::InvalidShape(format!("graph does not fit the shape: {}", v.message)));
    }
    let (multiplicity, needs_review) = multiplicity(g);
    Ok(GraphContribution {
        multiplicity,
        aut_order: aut_group_order(g)?,
        case: classify_case(g),
        degenerate_at0: degenerate_over(g, Side::Zero),
        degenerate_at_inf: degenerate_over(g, Side::Infinity),
        needs_review,
        euler_inverse: euler_inverse(g)?,
    })
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::exactalg::Monomial;
    use crate::locgraph::enumerate::enumerate_graphs;
    use crate::locgraph::graph::{Edge, Refinement, Vertex};
    use crate::partitions::Partition;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn vtx(genus: u32, side: Side) -> Vertex {
        Vertex { genus, side, component: 0 }
    }

    /// One side-0 vertex of genus `g0` joined to side-∞ vertices by edges of
    /// the given degrees.
    fn star(g0: u32, degrees: &[u32], sides: &[Side]) -> LocalizationGraph {
        let mut vertices = vec![vtx(g0, Side::Zero)];
        let mut edges = vec![];
        for (i, &d) in degrees.iter().enumerate() {
            vertices.push(vtx(0, Side::Infinity));
            edges.push(Edge { ends: [0, i + 1], degree: d });
        }
        let refinements = sides
            .iter()
            .enumerate()
            .map(|(j, &side)| Refinement {
                profile_index: j,
                side,
                distribution: vec![match side {
                    Side::Zero => vec![0; degrees.len()],
                    Side::Infinity => (1..=degrees.len()).collect(),
                }],
            })
            .collect();
        LocalizationGraph { vertices, edges, markings: BTreeMap::new(), refinements }
    }

    #[test]
    fn cases() {
        assert_eq!(classify_case(&star(0, &[1], &[Side::Zero, Side::Infinity])), Case::I);
        assert_eq!(classify_case(&star(0, &[1], &[Side::Zero, Side::Zero])), Case::II);
        assert_eq!(classify_case(&star(0, &[1], &[Side::Infinity])), Case::III);
    }

    #[test]
    fn degeneracy() {
        let g = star(0, &[2, 1], &[Side::Zero, Side::Infinity]);
        assert!(degenerate_over(&g, Side::Infinity));
        assert!(!degenerate_over(&g, Side::Zero));
        let mut marked = g.clone();
        marked.markings.insert(1, 1);
        assert!(!degenerate_over(&marked, Side::Infinity));
        let mut genus = star(0, &[1], &[Side::Zero]);
        genus.vertices[0].genus = 1;
        assert!(!degenerate_over(&genus, Side::Zero));
    }

    #[test]
    fn multiplicities() {
        // side 0 carries a genus-1 vertex so neither side is degenerate
        let mut g = star(1, &[2, 3], &[Side::Zero, Side::Infinity, Side::Infinity]);
        assert_eq!(multiplicity(&g), (36, false));
        g.refinements.pop();
        assert_eq!(multiplicity(&g), (6, false));
        let both = star(0, &[1], &[Side::Zero, Side::Infinity]);
        assert_eq!(multiplicity(&both), (1, false));
        let case_ii = star(1, &[2, 3], &[Side::Zero]);
        assert_eq!(multiplicity(&case_ii), (6, false));
    }

    #[test]
    fn doubly_degenerate() {
        let g = star(0, &[1], &[Side::Zero, Side::Infinity]);
        let e = euler_inverse(&g).unwrap();
        assert_eq!(e, FormalClass::constant(LaurentT::monomial(r(-1, 1), -2)));
    }

    #[test]
    fn vertex_terms() {
        let g = star(0, &[3], &[Side::Zero]);
        assert_eq!(vertex_term(&g, 1).unwrap(), FormalClass::constant(LaurentT::constant(r(1, 3))));
        let mut marked = star(0, &[1], &[Side::Zero]);
        marked.markings.insert(1, 1);
        assert_eq!(vertex_term(&marked, 1).unwrap(), FormalClass::constant(LaurentT::monomial(r(-1, 1), -1)));
        let two = LocalizationGraph {
            vertices: vec![vtx(0, Side::Zero), vtx(0, Side::Zero), vtx(0, Side::Infinity)],
            edges: vec![Edge { ends: [0, 2], degree: 1 }, Edge { ends: [1, 2], degree: 1 }],
            markings: BTreeMap::new(),
            refinements: vec![],
        };
        assert_eq!(vertex_term(&two, 2).unwrap(), FormalClass::constant(LaurentT::monomial(r(1, 2), -2)));
        let lonely = LocalizationGraph {
            vertices: vec![vtx(0, Side::Infinity)],
            edges: vec![],
            markings: BTreeMap::new(),
            refinements: vec![],
        };
        assert!(matches!(vertex_term(&lonely, 0), Err(Error::InvalidVertex(_))));
    }

    #[test]
    fn stable_genus_one_vertex() {
        let mut g = star(0, &[1], &[Side::Zero]);
        g.vertices[1].genus = 1;
        let term = vertex_term(&g, 1).unwrap();
        let psi = Monomial::power(Generator::Psi { vertex: 1, edge: 0 }, 1);
        let lambda = Monomial::power(Generator::Lambda { vertex: 1, index: 1 }, 1);
        assert_eq!(term.coefficient(&Monomial::one()), LaurentT::monomial(r(-1, 1), -1));
        assert_eq!(term.coefficient(&psi), LaurentT::monomial(r(1, 1), -2));
        assert_eq!(term.coefficient(&lambda), LaurentT::monomial(r(-1, 1), -2));
        assert_eq!(term.terms().count(), 3);
    }

    #[test]
    fn case_i_expansion() {
        // genus 1 on both sides keeps both rubber factors nondegenerate
        let mut g = star(1, &[1], &[Side::Zero, Side::Infinity]);
        g.vertices[1].genus = 1;
        let e = euler_inverse(&g).unwrap();
        let den = case_i_denominator(&g).unwrap();
        assert_eq!(e.mul(&den).as_scalar(), Some(LaurentT::one()));
        assert!(rubber_bound(&g, Side::Zero) >= 1);
        let q0 = Monomial::power(Generator::NodePsi(Side::Zero), 1);
        let qi = Monomial::power(Generator::NodePsi(Side::Infinity), 1);
        assert_eq!(e.coefficient(&Monomial::one()), LaurentT::monomial(r(1, 1), -4));
        assert_eq!(e.coefficient(&q0), LaurentT::monomial(r(1, 1), -5));
        assert_eq!(e.coefficient(&qi), LaurentT::monomial(r(-1, 1), -5));
    }

    #[test]
    fn multiply_back_on_enumerated() {
        let s = RelativeShape::connected(1, 1, 2, vec![p(&[2]), p(&[1, 1])]).unwrap();
        let mut seen = 0;
        for g in enumerate_graphs(&s).unwrap() {
            let c = contribution(&g, &s).unwrap();
            assert_eq!(c.aut_order % g.edge_degree_product(), 0);
            if let Some(den) = case_i_denominator(&g) {
                let back = c.euler_inverse.mul(&den);
                assert_eq!(back.as_scalar(), Some(LaurentT::one()), "{g:?}");
                seen += 1;
            }
        }
        assert!(seen > 0);
    }

    #[test]
    fn json_shape() {
        let g = star(0, &[1], &[Side::Zero, Side::Infinity]);
        let s = RelativeShape::connected(0, 0, 1, vec![p(&[1]), p(&[1])]).unwrap();
        let j = serde_json::to_value(contribution(&g, &s).unwrap()).unwrap();
        assert_eq!(j["case"], "I");
        assert_eq!(j["multiplicity"], 1);
        assert_eq!(j["autOrder"], 1);
        assert_eq!(j["degenerateAt0"], true);
    }
}
