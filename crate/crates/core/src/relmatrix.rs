//! The matrices `M`, `A`, `B` and `C = B·A` over sets of partially ordered
//! partitions, and exact checks of their structural properties.

use std::collections::HashMap;
use std::hash::Hash;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{binomial, IndexedMatrix, Rational};
use crate::kernels::{principal_prefactor_memo, principal_scaling, KernelMemo};
use crate::partitions::{enumerate_pop, enumerate_pop_multi, LengthBound, MultiPop, MultiShape, Pop};

fn recip_pow(base: u32, exp: u32) -> Rational {
    Rational::new(One::one(), num_bigint::BigInt::from(base).pow(exp))
}

fn qpow(q: u32, e: i64) -> Rational {
    let m = num_bigint::BigInt::from(q).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        Rational::from_integer(m)
    } else {
        Rational::new(One::one(), m)
    }
}

/// `A(p̄, q̄)` for one component: `Π_j 1/p_j^{q_j−1} · S[q″](p′)`.
pub fn a_entry(p: &Pop, q: &Pop, memo: &KernelMemo) -> Rational {
    let mut v = memo.s(&q.double_prime(), p.unordered());
    if v.is_zero() {
        return v;
    }
    for (&pj, &qj) in p.ordered().iter().zip(q.ordered()) {
        v *= recip_pow(pj, qj - 1);
    }
    v
}

/// `B(p̄, q̄)`: `1/(|Aut p″||Aut q″|) · Π_h p_h · Π_i p‴_i ·
/// Π_j binom(p_j−1, q_j−1)(−1)^{q_j−1} q_j^{p_j−2} · T[q″](p″)`.
pub fn b_entry(p: &Pop, q: &Pop, memo: &KernelMemo) -> Result<Rational> {
    let mut v = Rational::one();
    for (&pj, &qj) in p.ordered().iter().zip(q.ordered()) {
        let c = binomial(pj as i64 - 1, qj as i64 - 1);
        if c.is_zero() {
            return Ok(Rational::zero());
        }
        let mut f = Rational::from_integer(c) * qpow(qj, pj as i64 - 2);
        if (qj - 1) % 2 == 1 {
            f = -f;
        }
        v *= f;
    }
    let (p2, q2) = (p.double_prime(), q.double_prime());
    let t = memo.t(&q2, &p2)?;
    if t.is_zero() {
        return Ok(t);
    }
    let numer: num_bigint::BigInt =
        p.ordered().iter().chain(p.triple_prime().parts()).map(|&x| num_bigint::BigInt::from(x)).product();
    let denom = num_bigint::BigInt::from(p2.aut_order() * q2.aut_order());
    Ok(v * t * Rational::new(numer, denom))
}

/// `M` over `Π(𝐝, 𝐧, k)`: entry `(ᾱ, β̄)` is the principal prefactor.
pub fn build_m(shape: &MultiShape, k: LengthBound) -> Result<IndexedMatrix<MultiPop>> {
    let index = enumerate_pop_multi(shape, k)?;
    let memo = KernelMemo::new();
    let m =
        IndexedMatrix::from_fn(index, |a, b| principal_prefactor_memo(a, b, &memo).expect("index shares one shape"));
    Ok(m)
}

/// `A` over `Π(𝐝, 𝐧, k)`: the product over components of the connected entries.
pub fn build_a(shape: &MultiShape, k: LengthBound) -> Result<IndexedMatrix<MultiPop>> {
    let index = enumerate_pop_multi(shape, k)?;
    let memo = KernelMemo::new();
    Ok(IndexedMatrix::from_fn(index, |p, q| multi_a_entry(p, q, &memo)))
}

fn multi_a_entry(p: &MultiPop, q: &MultiPop, memo: &KernelMemo) -> Rational {
    p.components().iter().zip(q.components()).map(|(x, y)| a_entry(x, y, memo)).product()
}

pub fn build_m_connected(d: u32, n: u32, k: LengthBound) -> Result<IndexedMatrix<Pop>> {
    let index = enumerate_pop(d, n, k)?;
    let memo = KernelMemo::new();
    Ok(IndexedMatrix::from_fn(index, |a, b| crate::kernels::principal_prefactor_connected(a, b, &memo)))
}

pub fn build_a_connected(d: u32, n: u32, k: LengthBound) -> Result<IndexedMatrix<Pop>> {
    let index = enumerate_pop(d, n, k)?;
    Ok(a_over(index, &KernelMemo::new()))
}

fn a_over(index: Vec<Pop>, memo: &KernelMemo) -> IndexedMatrix<Pop> {
    IndexedMatrix::from_fn(index, |p, q| a_entry(p, q, memo))
}

fn b_over(index: Vec<Pop>, memo: &KernelMemo) -> IndexedMatrix<Pop> {
    // POP parts below 2 never reach T, so b_entry cannot fail here
    IndexedMatrix::from_fn(index, |p, q| b_entry(p, q, memo).expect("subpartitions have parts >= 2"))
}

pub fn build_b(d: u32, n: u32, k: LengthBound) -> Result<IndexedMatrix<Pop>> {
    let index = enumerate_pop(d, n, k)?;
    Ok(b_over(index, &KernelMemo::new()))
}

pub fn build_c(d: u32, n: u32, k: LengthBound) -> Result<IndexedMatrix<Pop>> {
    let index = enumerate_pop(d, n, k)?;
    let memo = KernelMemo::new();
    let a = a_over(index.clone(), &memo);
    let b = b_over(index, &memo);
    b.multiply(&a)
}

/// Multi-component `B`: the Kronecker product of the connected `B(dᵢ, |nᵢ|, ∞)`
/// restricted to `Π(𝐝, 𝐧, k)`. Experimental; only used to check that the
/// restricted product `B·A` stays unit upper triangular.
pub fn build_b_multi(shape: &MultiShape, k: LengthBound) -> Result<IndexedMatrix<MultiPop>> {
    let index = enumerate_pop_multi(shape, k)?;
    let memo = KernelMemo::new();
    Ok(IndexedMatrix::from_fn(index, |p, q| {
        p.components()
            .iter()
            .zip(q.components())
            .map(|(x, y)| b_entry(x, y, &memo).expect("subpartitions have parts >= 2"))
            .product()
    }))
}

/// A single matrix position reported as a counterexample.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EntryWitness<I> {
    pub row: I,
    pub col: I,
    pub value: String,
}

fn witness<I: Clone>(m: &IndexedMatrix<I>, r: usize, c: usize) -> EntryWitness<I> {
    EntryWitness { row: m.index()[r].clone(), col: m.index()[c].clone(), value: m.get(r, c).to_string() }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TriangularityReport<I> {
    pub dim: usize,
    pub is_unit_upper_triangular: bool,
    pub first_violation: Option<EntryWitness<I>>,
}

fn triangularity<I: Clone>(c: &IndexedMatrix<I>) -> TriangularityReport<I> {
    let v = c.unit_upper_violation();
    TriangularityReport {
        dim: c.dim(),
        is_unit_upper_triangular: v.is_none(),
        first_violation: v.map(|(r, col)| witness(c, r, col)),
    }
}

/// Position of a deliberately corrupted `B` entry, used to exercise the
/// failure path of [`verify_c_with_fault`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fault {
    pub row: usize,
    pub col: usize,
}

impl Fault {
    /// The last row and first column. Adding 1 there always breaks
    /// triangularity because the first row of `A` starts with 1.
    pub fn bottom_left(dim: usize) -> Fault {
        Fault { row: dim.saturating_sub(1), col: 0 }
    }
}

pub fn verify_c(d: u32, n: u32, k: LengthBound) -> Result<TriangularityReport<Pop>> {
    verify_c_with_fault(d, n, k, None)
}

/// Checks `C = B·A` for unit upper triangularity, optionally after adding 1
/// to one entry of `B`.
pub fn verify_c_with_fault(d: u32, n: u32, k: LengthBound, fault: Option<Fault>) -> Result<TriangularityReport<Pop>> {
    let index = enumerate_pop(d, n, k)?;
    let memo = KernelMemo::new();
    let a = a_over(index.clone(), &memo);
    let mut b = b_over(index, &memo);
    if let Some(f) = fault {
        if f.row >= b.dim() || f.col >= b.dim() {
            return Err(Error::InvalidRange(format!("fault position ({}, {})", f.row, f.col)));
        }
        let v = b.get(f.row, f.col) + Rational::one();
        b.set(f.row, f.col, v);
    }
    Ok(triangularity(&b.multiply(&a)?))
}

/// Unit upper triangularity of the restricted multi-component `B·A`.
pub fn verify_c_multi(shape: &MultiShape, k: LengthBound) -> Result<TriangularityReport<MultiPop>> {
    let a = build_a(shape, k)?;
    let b = build_b_multi(shape, k)?;
    Ok(triangularity(&b.multiply(&a)?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvertibilityReport {
    pub dim: usize,
    pub det: String,
    pub invertible: bool,
}

pub fn verify_m_invertible(shape: &MultiShape, k: LengthBound) -> Result<InvertibilityReport> {
    let m = build_m(shape, k)?;
    let det = m.determinant();
    Ok(InvertibilityReport { dim: m.dim(), invertible: !det.is_zero(), det: det.to_string() })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EqualityReport<I> {
    pub dim: usize,
    pub pass: bool,
    pub first_mismatch: Option<EntryWitness<I>>,
}

/// The scaling `s(β̄) = Πᵢ (−1)^{|nᵢ|+ℓ(β′[i])} η(β̄ᵢ)` relating `M` to `Aᵀ`.
pub fn transpose_scaling(beta: &MultiPop) -> Rational {
    beta.components().iter().map(principal_scaling).product()
}

/// Checks `M(ᾱ, β̄) = A(β̄, ᾱ) · s(β̄)` entrywise.
pub fn verify_m_transpose_scaling(shape: &MultiShape, k: LengthBound) -> Result<EqualityReport<MultiPop>> {
    let m = build_m(shape, k)?;
    let a = build_a(shape, k)?;
    let scales: Vec<Rational> = m.index().iter().map(transpose_scaling).collect();
    let expected = a.transpose().scale_cols(&scales)?;
    Ok(compare(&m, &expected))
}

fn compare<I: Clone>(got: &IndexedMatrix<I>, want: &IndexedMatrix<I>) -> EqualityReport<I> {
    let n = got.dim();
    let bad = (0..n).flat_map(|r| (0..n).map(move |c| (r, c))).find(|&(r, c)| got.get(r, c) != want.get(r, c));
    EqualityReport { dim: n, pass: bad.is_none(), first_mismatch: bad.map(|(r, c)| witness(got, r, c)) }
}

fn positions<I: Eq + Hash + Clone>(index: &[I]) -> HashMap<I, usize> {
    index.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect()
}

/// Checks that `A(𝐝, 𝐧, k)` is the Kronecker product of the connected
/// `A(dᵢ, |nᵢ|, dᵢ−|nᵢ|)` under the component-tuple bijection. Requires
/// `k ≥ d − Σ|nᵢ|`.
pub fn verify_kronecker(shape: &MultiShape, k: LengthBound) -> Result<EqualityReport<MultiPop>> {
    let slack = shape.total_degree() - shape.total_order();
    if let LengthBound::Finite(kk) = k {
        if kk < slack {
            return Err(Error::PreconditionViolated(format!("k = {kk} is below d - n = {slack}")));
        }
    }
    let a = build_a(shape, k)?;
    let factors: Vec<IndexedMatrix<Pop>> = shape
        .degrees()
        .iter()
        .zip(shape.orders())
        .map(|(&d, n)| build_a_connected(d, n, LengthBound::Finite(d - n)))
        .collect::<Result<_>>()?;
    let product_size: usize = factors.iter().map(IndexedMatrix::dim).product();
    if product_size != a.dim() {
        return Ok(EqualityReport { dim: a.dim(), pass: false, first_mismatch: None });
    }
    let lookup: Vec<HashMap<Pop, usize>> = factors.iter().map(|f| positions(f.index())).collect();
    let expected = IndexedMatrix::from_fn(a.index().to_vec(), |p, q| {
        p.components()
            .iter()
            .zip(q.components())
            .zip(factors.iter().zip(&lookup))
            .map(|((x, y), (f, pos))| f.get(pos[x], pos[y]).clone())
            .product()
    });
    Ok(compare(&a, &expected))
}

/// `Π_p̄`: the `q̄` with `q ≤ p` entrywise and `q″`, padded with parts 1
/// to the length of `p″`, at most `p″` entrywise in sorted order.
pub fn lies_below(q: &Pop, p: &Pop) -> bool {
    if q.degree() != p.degree() || q.order() != p.order() {
        return false;
    }
    if q.ordered().iter().zip(p.ordered()).any(|(a, b)| a > b) {
        return false;
    }
    let (q2, p2) = (q.double_prime(), p.double_prime());
    q2.len() <= p2.len() && q2.parts().iter().zip(p2.parts()).all(|(a, b)| a <= b)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct XiReport {
    pub closed: bool,
    /// Present only when the subset is closed.
    pub c_triangular_on_xi: Option<bool>,
    /// A pair `(p̄, q̄)` with `p̄ ∈ Ξ`, `q̄ ∈ Π_p̄` and `q̄ ∉ Ξ`.
    pub missing: Option<(Pop, Pop)>,
    pub first_violation: Option<EntryWitness<Pop>>,
}

/// Checks that `Ξ ⊆ Π(d, n, ∞)` contains `Π_p̄` for each of its members and,
/// if so, that `B·A` restricted to `Ξ` is unit upper triangular.
pub fn verify_xi_closure(d: u32, n: u32, xi: &[Pop]) -> Result<XiReport> {
    let full = enumerate_pop(d, n, LengthBound::Infinite)?;
    let pos = positions(&full);
    let mut members: Vec<usize> = Vec::with_capacity(xi.len());
    for p in xi {
        match pos.get(p) {
            Some(&i) => members.push(i),
            None => return Err(Error::InvalidShape(format!("{p} is not in the index set"))),
        }
    }
    members.sort_unstable();
    members.dedup();
    let in_xi: Vec<bool> = (0..full.len()).map(|i| members.binary_search(&i).is_ok()).collect();
    for &i in &members {
        if let Some(q) = full.iter().enumerate().find(|&(j, q)| !in_xi[j] && lies_below(q, &full[i])) {
            return Ok(XiReport {
                closed: false,
                c_triangular_on_xi: None,
                missing: Some((full[i].clone(), q.1.clone())),
                first_violation: None,
            });
        }
    }
    let memo = KernelMemo::new();
    let a = a_over(full.clone(), &memo).submatrix(&members);
    let b = b_over(full, &memo).submatrix(&members);
    let tri = triangularity(&b.multiply(&a)?);
    Ok(XiReport {
        closed: true,
        c_triangular_on_xi: Some(tri.is_unit_upper_triangular),
        missing: None,
        first_violation: tri.first_violation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat};

    fn rows<I>(m: &IndexedMatrix<I>) -> Vec<Vec<Rational>> {
        m.rows().map(|r| r.to_vec()).collect()
    }

    fn r(v: &[(i64, i64)]) -> Vec<Rational> {
        v.iter().map(|&(a, b)| rat(a, b)).collect()
    }

    const INF: LengthBound = LengthBound::Infinite;

    #[test]
    fn degree_two_worked_instance() {
        let a = build_a_connected(2, 1, INF).unwrap();
        let b = build_b(2, 1, INF).unwrap();
        let c = build_c(2, 1, INF).unwrap();
        let m = build_m_connected(2, 1, INF).unwrap();
        assert_eq!(rows(&a), vec![r(&[(1, 1), (1, 1)]), r(&[(1, 1), (1, 2)])]);
        assert_eq!(rows(&b), vec![r(&[(1, 1), (0, 1)]), r(&[(2, 1), (-2, 1)])]);
        assert_eq!(rows(&c), vec![r(&[(1, 1), (1, 1)]), r(&[(0, 1), (1, 1)])]);
        assert_eq!(rows(&m), vec![r(&[(1, 1), (-2, 1)]), r(&[(1, 1), (-1, 1)])]);
        assert_eq!(m.determinant(), int(1));
    }

    #[test]
    fn degree_three_order_one() {
        let a = build_a_connected(3, 1, INF).unwrap();
        let labels: Vec<String> = a.index().iter().map(Pop::to_string).collect();
        assert_eq!(labels, ["((1),(1,1))", "((2),(1))", "((3),())", "((1),(2))"]);
        assert_eq!(
            rows(&a),
            vec![
                r(&[(1, 1), (1, 1), (1, 1), (2, 1)]),
                r(&[(1, 1), (1, 2), (1, 4), (1, 1)]),
                r(&[(1, 1), (1, 3), (1, 9), (0, 1)]),
                r(&[(1, 2), (1, 2), (1, 2), (1, 2)]),
            ]
        );
        assert_eq!(
            rows(&build_b(3, 1, INF).unwrap()),
            vec![
                r(&[(1, 1), (0, 1), (0, 1), (0, 1)]),
                r(&[(2, 1), (-2, 1), (0, 1), (0, 1)]),
                r(&[(3, 1), (-12, 1), (9, 1), (0, 1)]),
                r(&[(1, 1), (0, 1), (0, 1), (-2, 1)]),
            ]
        );
        assert_eq!(
            rows(&build_c(3, 1, INF).unwrap()),
            vec![
                r(&[(1, 1), (1, 1), (1, 1), (2, 1)]),
                r(&[(0, 1), (1, 1), (3, 2), (2, 1)]),
                r(&[(0, 1), (0, 1), (1, 1), (-6, 1)]),
                r(&[(0, 1), (0, 1), (0, 1), (1, 1)]),
            ]
        );
        assert_eq!(
            rows(&build_m_connected(3, 1, INF).unwrap()),
            vec![
                r(&[(1, 2), (-2, 1), (9, 2), (-1, 1)]),
                r(&[(1, 2), (-1, 1), (3, 2), (-1, 1)]),
                r(&[(1, 2), (-1, 2), (1, 2), (-1, 1)]),
                r(&[(1, 1), (-2, 1), (0, 1), (-1, 1)]),
            ]
        );
    }

    #[test]
    fn degree_three_order_two() {
        let a = build_a_connected(3, 2, INF).unwrap();
        let labels: Vec<String> = a.index().iter().map(Pop::to_string).collect();
        assert_eq!(labels, ["((1,1),(1))", "((1,2),())", "((2,1),())"]);
        assert_eq!(
            rows(&a),
            vec![r(&[(1, 1), (1, 1), (1, 1)]), r(&[(1, 1), (1, 2), (1, 1)]), r(&[(1, 1), (1, 1), (1, 2)])]
        );
        assert_eq!(
            rows(&build_b(3, 2, INF).unwrap()),
            vec![r(&[(1, 1), (0, 1), (0, 1)]), r(&[(2, 1), (-2, 1), (0, 1)]), r(&[(2, 1), (0, 1), (-2, 1)])]
        );
        assert_eq!(
            rows(&build_m_connected(3, 2, INF).unwrap()),
            vec![r(&[(1, 1), (-2, 1), (-2, 1)]), r(&[(1, 1), (-1, 1), (-2, 1)]), r(&[(1, 1), (-2, 1), (-1, 1)])]
        );
    }

    #[test]
    fn trivial_shapes() {
        for k in [LengthBound::Finite(0), INF] {
            assert_eq!(rows(&build_a_connected(1, 1, k).unwrap()), vec![vec![int(1)]]);
            assert_eq!(rows(&build_b(1, 1, k).unwrap()), vec![vec![int(1)]]);
            let shape = MultiShape::connected(1, 1).unwrap();
            assert_eq!(rows(&build_m(&shape, k).unwrap()), vec![vec![int(1)]]);
            assert!(verify_c(1, 1, k).unwrap().is_unit_upper_triangular);
            let inv = verify_m_invertible(&shape, k).unwrap();
            assert!(inv.invertible);
            assert_eq!(inv.det, "1");
            assert!(verify_m_transpose_scaling(&shape, k).unwrap().pass);
        }
    }

    #[test]
    fn multi_matches_connected() {
        let shape = MultiShape::connected(4, 2).unwrap();
        let multi = build_m(&shape, INF).unwrap();
        let conn = build_m_connected(4, 2, INF).unwrap();
        assert_eq!(rows(&multi), rows(&conn));
    }

    #[test]
    fn c_is_triangular_small_sweep() {
        for d in 1..=5 {
            for n in 1..=d {
                for k in (0..=d - n).map(LengthBound::Finite).chain([INF]) {
                    let rep = verify_c(d, n, k).unwrap();
                    assert!(rep.is_unit_upper_triangular, "d={d} n={n} k={k}: {rep:?}");
                }
            }
        }
    }

    #[test]
    fn injected_fault_is_reported() {
        let dim = enumerate_pop(3, 1, INF).unwrap().len();
        let rep = verify_c_with_fault(3, 1, INF, Some(Fault::bottom_left(dim))).unwrap();
        assert!(!rep.is_unit_upper_triangular);
        let w = rep.first_violation.unwrap();
        assert_eq!(w.row.to_string(), "((1),(2))");
        assert_eq!(w.col.to_string(), "((1),(1,1))");
        assert!(verify_c_with_fault(1, 1, INF, Some(Fault { row: 3, col: 0 })).is_err());
    }

    #[test]
    fn multi_component_structure() {
        for (degrees, sizes) in [(vec![2, 1], [1, 1]), (vec![1, 1], [1, 1]), (vec![2, 2], [1, 1])] {
            let shape = MultiShape::with_sizes(degrees.clone(), &sizes).unwrap();
            assert!(verify_m_transpose_scaling(&shape, INF).unwrap().pass);
            let kron = verify_kronecker(&shape, INF).unwrap();
            assert!(kron.pass, "{degrees:?}");
            assert!(verify_m_invertible(&shape, INF).unwrap().invertible);
            assert!(verify_c_multi(&shape, INF).unwrap().is_unit_upper_triangular);
        }
        let shape = MultiShape::with_sizes(vec![2, 2], &[1, 1]).unwrap();
        assert_eq!(build_a(&shape, INF).unwrap().dim(), 4);
        assert!(matches!(verify_kronecker(&shape, LengthBound::Finite(1)), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn xi_closure_examples() {
        for d in 1..=5 {
            for n in 1..=d {
                for k in (0..=d - n).map(LengthBound::Finite).chain([INF]) {
                    let xi = enumerate_pop(d, n, k).unwrap();
                    let rep = verify_xi_closure(d, n, &xi).unwrap();
                    assert!(rep.closed, "d={d} n={n} k={k}");
                    assert_eq!(rep.c_triangular_on_xi, Some(true));
                }
            }
        }
        for d in 2..=5 {
            let top = Pop::from_parts(d, &[d], &[]).unwrap();
            let rep = verify_xi_closure(d, 1, &[top]).unwrap();
            assert!(!rep.closed);
            assert_eq!(rep.c_triangular_on_xi, None);
        }
        let one = Pop::from_parts(1, &[1], &[]).unwrap();
        assert!(verify_xi_closure(1, 1, &[one]).unwrap().closed);
    }

    #[test]
    fn lies_below_examples() {
        let p = Pop::from_parts(5, &[1], &[3, 1]).unwrap();
        assert!(lies_below(&Pop::from_parts(5, &[1], &[2, 1, 1]).unwrap(), &p));
        assert!(lies_below(&Pop::from_parts(5, &[1], &[1, 1, 1, 1]).unwrap(), &p));
        assert!(!lies_below(&Pop::from_parts(5, &[1], &[2, 2]).unwrap(), &p));
        assert!(!lies_below(&Pop::from_parts(5, &[2], &[1, 1, 1]).unwrap(), &p));
        assert!(!lies_below(&Pop::from_parts(5, &[1], &[4]).unwrap(), &p));
    }

    #[test]
    fn json_round_trip() {
        let m = build_m_connected(2, 1, INF).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(
            s,
            r#"{"index":[{"d":2,"ordered":[1],"unordered":[1]},{"d":2,"ordered":[2],"unordered":[]}],"entries":[["1","-2"],["1","-1"]]}"#
        );
        let back: IndexedMatrix<Pop> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
    }
}
