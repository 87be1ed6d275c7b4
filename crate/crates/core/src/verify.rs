//! Exhaustive and seeded verification sweeps. Sweep cells run in parallel
//! on the current rayon pool; results are collected in a fixed order, so
//! reports do not depend on the thread count.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactalg::{rat, IndexedMatrix, LaurentT, Rational, Side};
use crate::kernels::{
    binomial_power_sum, binomial_reciprocal_sum, closed_sum_alpha, closed_sum_beta, closed_sum_beta_prime,
    closed_sum_gamma,
};
use crate::locgraph::{
    aut_group_order, canonical_form, case_i_denominator, classify_case, classify_principal, degenerate_over,
    enumerate_graphs, euler_inverse, hurwitz_condition, multiplicity, oracle_graphs, validate_graph, Case,
    LocalizationGraph, OmegaInstance, PrincipalLayout, RelativeShape,
};
use crate::partitions::{
    compare_pop, enumerate_pop, partitions_of, shapes_up_to, LengthBound, MultiPop, MultiShape, Partition, Pop,
};
use crate::relmatrix::{
    build_a_connected, build_b, build_c, build_m_connected, verify_c_with_fault, verify_kronecker, verify_m_invertible,
    verify_m_transpose_scaling, Fault,
};
use crate::report::{timed, VerificationReport};

/// Settings for [`verify_all`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerifyOptions {
    /// Largest degree in the connected triangularity and closure sweeps.
    pub max_d: u32,
    /// Largest total degree in the multi-component sweeps.
    pub max_multi_degree: u32,
    pub seed: u64,
    /// Corrupt one entry of `B` in the first triangularity cell.
    pub inject_fault: bool,
    pub relabel_trials: usize,
    pub omega_trials: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_d: 6,
            max_multi_degree: 5,
            seed: 0,
            inject_fault: false,
            relabel_trials: 1000,
            omega_trials: 1000,
        }
    }
}

fn k_label(k: LengthBound) -> String {
    k.to_string()
}

/// `k ∈ {0, …, hi} ∪ {∞}`.
fn k_values(hi: u32) -> Vec<LengthBound> {
    (0..=hi).map(LengthBound::Finite).chain([LengthBound::Infinite]).collect()
}

fn error_witness(context: Value, e: &Error) -> Value {
    json!({ "case": context, "error": e.to_string() })
}

/// Unit upper triangularity of `C = B·A` for every `d ≤ max_d`,
/// `1 ≤ n ≤ d`, `k ∈ {0..d−n} ∪ {∞}`.
pub fn triangularity_suite(max_d: u32, inject_fault: bool) -> VerificationReport {
    let mut cells = Vec::new();
    for d in 1..=max_d {
        for n in 1..=d {
            for k in k_values(d - n) {
                cells.push((d, n, k));
            }
        }
    }
    let faulty = (2, 1, LengthBound::Infinite);
    let witnesses: Vec<Option<Value>> = cells
        .par_iter()
        .map(|&(d, n, k)| {
            let ctx = json!({ "d": d, "n": n, "k": k_label(k) });
            let fault = (inject_fault && (d, n, k) == faulty).then(|| Fault::bottom_left(2));
            match verify_c_with_fault(d, n, k, fault) {
                Ok(r) if r.is_unit_upper_triangular => None,
                Ok(r) => {
                    let v = r.first_violation.expect("a violation is reported");
                    Some(json!({
                        "case": ctx,
                        "row": v.row.to_string(),
                        "col": v.col.to_string(),
                        "value": v.value,
                    }))
                }
                Err(e) => Some(error_witness(ctx, &e)),
            }
        })
        .collect();
    VerificationReport::leaf(
        "triangularity",
        json!({ "maxD": max_d, "injectFault": inject_fault }),
        cells.len() as u64,
        witnesses.into_iter().flatten().collect(),
    )
}

fn multi_cells(max_total: u32, stable_only: bool) -> Vec<(MultiShape, LengthBound)> {
    let mut cells = Vec::new();
    for shape in shapes_up_to(max_total) {
        let d = shape.total_degree();
        for k in k_values(d) {
            if !stable_only || k.is_stable(d, shape.total_order()) {
                cells.push((shape.clone(), k));
            }
        }
    }
    cells
}

fn multi_suite(
    name: &str,
    max_total: u32,
    stable_only: bool,
    check: impl Fn(&MultiShape, LengthBound) -> Result<Option<Value>> + Sync,
) -> VerificationReport {
    let cells = multi_cells(max_total, stable_only);
    let witnesses: Vec<Option<Value>> = cells
        .par_iter()
        .map(|(shape, k)| {
            let ctx = json!({ "shape": shape, "k": k_label(*k) });
            match check(shape, *k) {
                Ok(None) => None,
                Ok(Some(detail)) => Some(json!({ "case": ctx, "detail": detail })),
                Err(e) => Some(error_witness(ctx, &e)),
            }
        })
        .collect();
    VerificationReport::leaf(
        name,
        json!({ "maxTotalDegree": max_total }),
        cells.len() as u64,
        witnesses.into_iter().flatten().collect(),
    )
}

/// `det M(𝐝, 𝐧, k) ≠ 0` over all shapes with `Σdᵢ ≤ max_total`.
pub fn invertibility_suite(max_total: u32) -> VerificationReport {
    multi_suite("invertibility", max_total, false, |shape, k| {
        let r = verify_m_invertible(shape, k)?;
        Ok((!r.invertible).then(|| json!({ "dim": r.dim, "det": r.det })))
    })
}

/// `M(ᾱ, β̄) = A(β̄, ᾱ)·s(β̄)` over the same sweep.
pub fn transpose_scaling_suite(max_total: u32) -> VerificationReport {
    multi_suite("transpose-scaling", max_total, false, |shape, k| {
        let r = verify_m_transpose_scaling(shape, k)?;
        Ok((!r.pass).then(|| json!(r.first_mismatch.map(|w| [w.row.to_string(), w.col.to_string(), w.value]))))
    })
}

/// Kronecker factorization of `A` wherever `k ≥ d − Σ|nᵢ|`.
pub fn kronecker_suite(max_total: u32) -> VerificationReport {
    multi_suite("kronecker", max_total, true, |shape, k| {
        let r = verify_kronecker(shape, k)?;
        Ok((!r.pass).then(|| {
            json!({
                "dim": r.dim,
                "firstMismatch": r.first_mismatch.map(|w| [w.row.to_string(), w.col.to_string(), w.value]),
            })
        }))
    })
}

/// Which closed sums to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SumSuite {
    Alpha,
    Beta,
    Betaprime,
    Gamma,
    Binom,
    All,
}

impl SumSuite {
    fn name(self) -> &'static str {
        match self {
            SumSuite::Alpha => "alpha",
            SumSuite::Beta => "beta",
            SumSuite::Betaprime => "betaprime",
            SumSuite::Gamma => "gamma",
            SumSuite::Binom => "binom",
            SumSuite::All => "all",
        }
    }
}

fn compare_sum(label: &str, args: Value, got: Result<Rational>, want: Rational, out: &mut Vec<Value>) {
    match got {
        Ok(v) if v == want => {}
        Ok(v) => out.push(json!({ "sum": label, "args": args, "got": v.to_string(), "expected": want.to_string() })),
        Err(e) => out.push(json!({ "sum": label, "args": args, "error": e.to_string() })),
    }
}

fn sum_leaf(which: SumSuite, max: u32) -> VerificationReport {
    let mut w = Vec::new();
    let mut checked = 0u64;
    match which {
        SumSuite::Alpha => {
            for p in 1..=max {
                for r in 1..=p {
                    let want = if r < p { Rational::zero() } else { rat(1, p as i64) };
                    compare_sum("alpha", json!([p, r]), closed_sum_alpha(p, r), want, &mut w);
                    checked += 1;
                }
            }
        }
        SumSuite::Beta => {
            for p in 2..=max {
                compare_sum("beta", json!([p]), closed_sum_beta(p), Rational::zero(), &mut w);
                checked += 1;
            }
        }
        SumSuite::Betaprime => {
            for p in 2..=max {
                let want = if p == 2 { -Rational::one() } else { Rational::zero() };
                compare_sum("betaprime", json!([p]), closed_sum_beta_prime(p), want, &mut w);
                checked += 1;
            }
        }
        SumSuite::Gamma => {
            for p in 2..=max {
                for r in 2..=p {
                    let want = if r < p || p == 2 { Rational::zero() } else { rat(1, p as i64) };
                    compare_sum("gamma", json!([p, r]), closed_sum_gamma(p, r), want, &mut w);
                    checked += 1;
                }
            }
        }
        SumSuite::Binom => {
            for n in 0..=max {
                for a in 0..n {
                    compare_sum("binomPower", json!([n, a]), binomial_power_sum(n, a), Rational::zero(), &mut w);
                    checked += 1;
                }
                let want = rat(1, n as i64 + 1);
                compare_sum("binomReciprocal", json!([n]), Ok(binomial_reciprocal_sum(n)), want, &mut w);
                checked += 1;
            }
        }
        SumSuite::All => unreachable!("expanded by the caller"),
    }
    VerificationReport::leaf(which.name(), json!({ "max": max }), checked, w)
}

/// Closed sums up to `max` (at least 2) and binomial identities up to
/// `binom_max`. `All` runs every family as a child report.
pub fn closed_sums_suite(which: SumSuite, max: u32, binom_max: u32) -> Result<VerificationReport> {
    if max < 2 {
        return Err(Error::InvalidRange(format!("closed sums need max >= 2, got {max}")));
    }
    let bound = |s: SumSuite| if s == SumSuite::Binom { binom_max } else { max };
    Ok(match which {
        SumSuite::All => {
            let children = [SumSuite::Alpha, SumSuite::Beta, SumSuite::Betaprime, SumSuite::Gamma, SumSuite::Binom]
                .into_iter()
                .map(|s| sum_leaf(s, bound(s)))
                .collect();
            VerificationReport::aggregate("closed-sums", json!({ "max": max, "binomMax": binom_max }), children)
        }
        s => sum_leaf(s, bound(s)),
    })
}

/// Stability of `Π(d,n,k)` in `k`, closure under lowering parts, and the
/// total-order axioms of `compare_pop`.
pub fn pi_properties_suite(max_d_stability: u32, max_d_closure: u32, max_d_order: u32) -> VerificationReport {
    let mut children = Vec::new();

    let mut w = Vec::new();
    let mut checked = 0;
    for d in 1..=max_d_stability {
        for n in 1..=d {
            let stable = enumerate_pop(d, n, LengthBound::Finite(d - n));
            for k in (d - n..=d + 1).map(LengthBound::Finite).chain([LengthBound::Infinite]) {
                checked += 1;
                let got = enumerate_pop(d, n, k);
                if got.as_ref().ok() != stable.as_ref().ok() || got.is_err() {
                    w.push(json!({ "d": d, "n": n, "k": k_label(k) }));
                }
            }
        }
    }
    children.push(VerificationReport::leaf("stability", json!({ "maxD": max_d_stability }), checked, w));

    let mut w = Vec::new();
    let mut checked = 0;
    for d in 1..=max_d_closure {
        for n in 1..=d {
            for k in k_values(d - n) {
                let Ok(pi) = enumerate_pop(d, n, k) else {
                    w.push(json!({ "d": d, "n": n, "k": k_label(k), "error": "enumeration failed" }));
                    continue;
                };
                let members: BTreeSet<&Pop> = pi.iter().collect();
                for p in &pi {
                    let lowered = (0..p.order())
                        .filter_map(|i| p.lower_ordered(i))
                        .chain(p.unordered().parts().iter().filter_map(|&part| p.lower_unordered(part)));
                    for q in lowered {
                        checked += 1;
                        if !members.contains(&q) {
                            w.push(
                                json!({ "d": d, "n": n, "k": k_label(k), "from": p.to_string(), "to": q.to_string() }),
                            );
                        }
                    }
                }
            }
        }
    }
    children.push(VerificationReport::leaf("closure", json!({ "maxD": max_d_closure }), checked, w));

    let mut w = Vec::new();
    let mut checked = 0;
    for d in 1..=max_d_order {
        for n in 1..=d {
            let Ok(pi) = enumerate_pop(d, n, LengthBound::Infinite) else {
                continue;
            };
            // sorted by the comparison, so every earlier element must precede
            // every later one; this gives totality, antisymmetry and transitivity
            for (i, p) in pi.iter().enumerate() {
                for (j, q) in pi.iter().enumerate() {
                    checked += 1;
                    let want = i.cmp(&j);
                    match compare_pop(p, q) {
                        Ok(o) if o == want => {}
                        _ => w.push(json!({ "p": p.to_string(), "q": q.to_string() })),
                    }
                }
            }
            if pi.windows(2).any(|x| x[0] == x[1]) {
                w.push(json!({ "d": d, "n": n, "error": "duplicate element" }));
            }
        }
    }
    children.push(VerificationReport::leaf("order-axioms", json!({ "maxD": max_d_order }), checked, w));

    VerificationReport::aggregate("pi-properties", json!({}), children)
}

fn matrix_equals(name: &str, got: Result<IndexedMatrix<Pop>>, want: [[Rational; 2]; 2], w: &mut Vec<Value>) {
    match got {
        Ok(m) => {
            let rows: Vec<&[Rational]> = m.rows().collect();
            if rows.len() != 2 || rows.iter().zip(&want).any(|(r, e)| *r != e.as_slice()) {
                w.push(json!({ "matrix": name, "got": m.entries_as_strings() }));
            }
        }
        Err(e) => w.push(json!({ "matrix": name, "error": e.to_string() })),
    }
}

/// The full `d = 2, n = 1` pipeline against hand-computed values.
pub fn worked_instance_suite() -> VerificationReport {
    let k = LengthBound::Infinite;
    let r = |n: i64, d: i64| rat(n, d);
    let mut w = Vec::new();
    matrix_equals("A", build_a_connected(2, 1, k), [[r(1, 1), r(1, 1)], [r(1, 1), r(1, 2)]], &mut w);
    matrix_equals("B", build_b(2, 1, k), [[r(1, 1), r(0, 1)], [r(2, 1), r(-2, 1)]], &mut w);
    matrix_equals("C", build_c(2, 1, k), [[r(1, 1), r(1, 1)], [r(0, 1), r(1, 1)]], &mut w);
    matrix_equals("M", build_m_connected(2, 1, k), [[r(1, 1), r(-2, 1)], [r(1, 1), r(-1, 1)]], &mut w);
    match build_m_connected(2, 1, k) {
        Ok(m) if m.determinant() == Rational::one() => {}
        Ok(m) => w.push(json!({ "matrix": "det M", "got": m.determinant().to_string() })),
        Err(e) => w.push(json!({ "matrix": "det M", "error": e.to_string() })),
    }
    VerificationReport::leaf("worked-instance", json!({ "d": 2, "n": 1, "k": "inf" }), 5, w)
}

/// Small shapes on which the constructive enumeration is compared with
/// the brute-force oracle: connected with `d ≤ 3`, `g ≤ 2`, at most one
/// marking and `m ≤ 2` profiles in every order, plus two-component shapes
/// of degrees `(1,1)` and `(2,1)`.
pub fn oracle_shapes() -> Vec<RelativeShape> {
    let mut out = Vec::new();
    let tuples = |degrees: &[u32], m: usize| -> Vec<Vec<Vec<Partition>>> {
        let per_profile: Vec<Vec<Partition>> = {
            let mut acc: Vec<Vec<Partition>> = vec![vec![]];
            for &d in degrees {
                acc = acc
                    .into_iter()
                    .flat_map(|prefix| {
                        partitions_of(d).into_iter().map(move |p| {
                            let mut next = prefix.clone();
                            next.push(p);
                            next
                        })
                    })
                    .collect();
            }
            acc
        };
        let mut acc: Vec<Vec<Vec<Partition>>> = vec![vec![]];
        for _ in 0..m {
            acc = acc
                .into_iter()
                .flat_map(|prefix| {
                    per_profile.iter().map(move |p| {
                        let mut next = prefix.clone();
                        next.push(p.clone());
                        next
                    })
                })
                .collect();
        }
        acc
    };
    for d in 1..=3 {
        for g in 0..=2 {
            for n in 0..=1 {
                for m in 1..=2 {
                    for profiles in tuples(&[d], m) {
                        out.extend(RelativeShape::new(vec![g], vec![(1..=n).collect()], vec![d], profiles, true, 0));
                    }
                }
            }
        }
    }
    let two = [
        (vec![1, 1], vec![0, 0]),
        (vec![1, 1], vec![1, 0]),
        (vec![1, 1], vec![1, 1]),
        (vec![2, 1], vec![0, 0]),
        (vec![2, 1], vec![0, 1]),
    ];
    for (degrees, genera) in two {
        for sets in [vec![vec![], vec![]], vec![vec![1], vec![]], vec![vec![], vec![1]]] {
            for m in 1..=2 {
                for profiles in tuples(&degrees, m) {
                    out.extend(RelativeShape::new(genera.clone(), sets.clone(), degrees.clone(), profiles, true, 0));
                }
            }
        }
    }
    out
}

fn shape_label(s: &RelativeShape) -> Value {
    serde_json::to_value(s).unwrap_or(Value::Null)
}

fn random_relabeling(g: &LocalizationGraph, rng: &mut impl Rng) -> LocalizationGraph {
    let mut vmap: Vec<usize> = (0..g.vertices.len()).collect();
    let mut emap: Vec<usize> = (0..g.edges.len()).collect();
    vmap.shuffle(rng);
    emap.shuffle(rng);
    g.relabeled(&vmap, &emap).expect("shuffles are permutations")
}

/// Enumeration against the oracle, relabeling invariance, the doubly
/// degenerate Euler class, the Case I multiply-back identity and the
/// shape of principal graphs.
pub fn graphs_suite(seed: u64, relabel_trials: usize) -> VerificationReport {
    let shapes = oracle_shapes();
    let results: Vec<(Vec<Value>, Vec<Value>, Vec<LocalizationGraph>)> = shapes
        .par_iter()
        .map(|shape| {
            let mut oracle_w = Vec::new();
            let mut valid_w = Vec::new();
            let enumerated = match enumerate_graphs(shape) {
                Ok(gs) => gs,
                Err(e) => return (vec![error_witness(shape_label(shape), &e)], vec![], vec![]),
            };
            match oracle_graphs(shape) {
                Ok(reference) if reference == enumerated => {}
                Ok(reference) => oracle_w.push(json!({
                    "shape": shape_label(shape),
                    "enumerated": enumerated.len(),
                    "oracle": reference.len(),
                })),
                Err(e) => oracle_w.push(error_witness(shape_label(shape), &e)),
            }
            for g in &enumerated {
                let v = validate_graph(g, shape);
                if !v.valid {
                    valid_w.push(json!({ "shape": shape_label(shape), "graph": g, "violations": v.violations }));
                }
            }
            (oracle_w, valid_w, enumerated)
        })
        .collect();
    let mut oracle_w = Vec::new();
    let mut valid_w = Vec::new();
    let mut pool = Vec::new();
    for (o, v, gs) in results {
        oracle_w.extend(o);
        valid_w.extend(v);
        pool.extend(gs);
    }
    let mut children = vec![
        VerificationReport::leaf("oracle-agreement", json!({ "shapes": shapes.len() }), shapes.len() as u64, oracle_w),
        VerificationReport::leaf("post-hoc-validity", json!({}), pool.len() as u64, valid_w),
    ];

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut w = Vec::new();
    for trial in 0..relabel_trials {
        let g = &pool[rng.gen_range(0..pool.len())];
        let h = random_relabeling(g, &mut rng);
        let same = multiplicity(g) == multiplicity(&h)
            && aut_group_order(g).ok() == aut_group_order(&h).ok()
            && canonical_form(g).ok() == canonical_form(&h).ok();
        if !same {
            w.push(json!({ "trial": trial, "graph": g, "relabeled": h }));
        }
    }
    children.push(VerificationReport::leaf(
        "relabel-invariance",
        json!({ "seed": seed, "trials": relabel_trials }),
        relabel_trials as u64,
        w,
    ));

    let minus_t2 = LaurentT::monomial(-Rational::one(), -2);
    let mut w = Vec::new();
    let mut checked = 0;
    for g in pool.iter().filter(|g| degenerate_over(g, Side::Zero) && degenerate_over(g, Side::Infinity)) {
        checked += 1;
        match euler_inverse(g) {
            Ok(e) if e.as_scalar().as_ref() == Some(&minus_t2) => {}
            Ok(e) => w.push(json!({ "graph": g, "got": e })),
            Err(err) => w.push(json!({ "graph": g, "error": err.to_string() })),
        }
    }
    if checked == 0 {
        w.push(json!({ "error": "no doubly degenerate graph among the enumerated ones" }));
    }
    children.push(VerificationReport::leaf("doubly-degenerate", json!({}), checked, w));

    let checks: Vec<Option<Value>> = pool
        .par_iter()
        .filter(|g| classify_case(g) == Case::I)
        .map(|g| {
            let den = case_i_denominator(g).expect("Case I");
            match euler_inverse(g) {
                Ok(e) if e.mul(&den).as_scalar() == Some(LaurentT::one()) => None,
                Ok(e) => Some(json!({ "graph": g, "product": e.mul(&den) })),
                Err(err) => Some(json!({ "graph": g, "error": err.to_string() })),
            }
        })
        .collect();
    children.push(VerificationReport::leaf(
        "case-i-multiply-back",
        json!({}),
        checks.len() as u64,
        checks.into_iter().flatten().collect(),
    ));

    children.push(principal_leaf());
    VerificationReport::aggregate("localization-graphs", json!({ "seed": seed }), children)
}

/// Principal graphs of small relations are stars whose edge degrees are
/// the parts of their type.
fn principal_leaf() -> VerificationReport {
    let mut w = Vec::new();
    let mut checked = 0;
    let cases: Vec<(MultiShape, Vec<u32>, Vec<u32>)> = vec![
        (MultiShape::connected(2, 1).expect("valid"), vec![1], vec![1]),
        (MultiShape::connected(3, 1).expect("valid"), vec![1], vec![0]),
        (MultiShape::connected(3, 2).expect("valid"), vec![1], vec![0]),
        (MultiShape::with_sizes(vec![1, 1], &[1, 1]).expect("valid"), vec![1, 0], vec![0, 0]),
    ];
    for (ms, genera, extra) in cases {
        let Ok(alphas) = crate::partitions::enumerate_pop_multi(&ms, LengthBound::Infinite) else {
            continue;
        };
        for alpha in alphas {
            let layout = PrincipalLayout::for_alpha(&alpha, &extra);
            let profiles = vec![ms.degrees().iter().map(|&d| Partition::new(vec![d]).expect("d > 0")).collect()];
            let Ok(shape) = layout.relation_shape(genera.clone(), ms.degrees().to_vec(), profiles) else {
                continue;
            };
            let graphs = match enumerate_graphs(&shape) {
                Ok(gs) => gs,
                Err(e) => {
                    w.push(error_witness(shape_label(&shape), &e));
                    continue;
                }
            };
            for g in graphs {
                let Some(beta) = classify_principal(&g, &layout, &shape) else {
                    continue;
                };
                checked += 1;
                if !principal_shape_ok(&g, &beta) {
                    w.push(json!({ "alpha": alpha.to_string(), "beta": beta.to_string(), "graph": g }));
                }
            }
        }
    }
    if checked == 0 {
        w.push(json!({ "error": "no principal graphs found" }));
    }
    VerificationReport::leaf("principal-shape", json!({}), checked, w)
}

fn principal_shape_ok(g: &LocalizationGraph, beta: &MultiPop) -> bool {
    let star = g.vertices_on(Side::Infinity).all(|v| g.vertices[v].genus == 0 && g.edge_valence(v) == 1);
    let mut degrees: Vec<u32> = g.edges.iter().map(|e| e.degree).collect();
    let mut parts: Vec<u32> =
        beta.components().iter().flat_map(|p| p.ordered().iter().chain(p.unordered().parts()).copied()).collect();
    degrees.sort_unstable();
    parts.sort_unstable();
    star && degrees == parts && !degenerate_over(g, Side::Zero)
}

/// The dimension match on seeded random instances, and the hyperelliptic
/// branch count from the Riemann-Hurwitz condition.
pub fn dimensions_suite(seed: u64, trials: usize) -> VerificationReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut w = Vec::new();
    for trial in 0..trials {
        match OmegaInstance::random(&mut rng).and_then(|inst| inst.check().map(|r| (inst, r))) {
            Ok((_, r)) if r.equal && r.degree_matches => {}
            Ok((inst, r)) => w.push(json!({ "trial": trial, "instance": inst, "report": r })),
            Err(e) => w.push(json!({ "trial": trial, "error": e.to_string() })),
        }
    }
    let omega =
        VerificationReport::leaf("omega-dimension", json!({ "seed": seed, "trials": trials }), trials as u64, w);

    let mut w = Vec::new();
    let two = Partition::new(vec![2]).expect("valid");
    for g in 0..=10u32 {
        let hits: Vec<usize> = (1..=4 * g as usize + 8)
            .filter(|&m| hurwitz_condition(g, &vec![two.clone(); m]).unwrap_or(false))
            .collect();
        if hits != [2 * g as usize + 2] {
            w.push(json!({ "g": g, "branchCounts": hits }));
        }
    }
    let hyper = VerificationReport::leaf("hyperelliptic", json!({ "maxG": 10 }), 11, w);
    VerificationReport::aggregate("dimensions", json!({}), vec![omega, hyper])
}

/// Every acceptance sweep in a fixed order.
pub fn verify_all(opts: &VerifyOptions) -> VerificationReport {
    let start = std::time::Instant::now();
    let children = vec![
        timed(|| triangularity_suite(opts.max_d, opts.inject_fault)),
        timed(|| invertibility_suite(opts.max_multi_degree)),
        timed(|| transpose_scaling_suite(opts.max_multi_degree)),
        timed(|| kronecker_suite(opts.max_multi_degree)),
        timed(|| closed_sums_suite(SumSuite::All, 12, 15).expect("bounds are valid")),
        timed(|| pi_properties_suite(opts.max_d.max(7), opts.max_d, opts.max_d)),
        timed(worked_instance_suite),
        timed(|| graphs_suite(opts.seed, opts.relabel_trials)),
        timed(|| dimensions_suite(opts.seed, opts.omega_trials)),
    ];
    let params = serde_json::to_value(opts).unwrap_or(Value::Null);
    VerificationReport::aggregate("verify-all", params, children).with_wall_time(start.elapsed().as_secs_f64())
}

/// Orders POPs of one shape by [`compare_pop`]; used where a comparator
/// over a slice is convenient.
pub fn pop_order(p: &Pop, q: &Pop) -> Ordering {
    compare_pop(p, q).unwrap_or(Ordering::Equal)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_triangularity_and_fault() {
        assert!(triangularity_suite(3, false).pass);
        let bad = triangularity_suite(2, true);
        assert!(!bad.pass);
        assert_eq!(bad.witnesses.len(), 1);
        assert_eq!(bad.witnesses[0]["case"]["d"], 2);
    }

    #[test]
    fn sums() {
        let r = closed_sums_suite(SumSuite::Gamma, 3, 15).unwrap();
        assert!(r.pass);
        assert_eq!(r.checked, 3);
        assert!(closed_sums_suite(SumSuite::Alpha, 1, 15).is_err());
        assert!(closed_sums_suite(SumSuite::All, 12, 15).unwrap().pass);
    }

    #[test]
    fn worked() {
        assert!(worked_instance_suite().pass);
    }

    #[test]
    fn pi_small() {
        assert!(pi_properties_suite(4, 4, 4).pass);
    }

    #[test]
    fn multi_small() {
        assert!(invertibility_suite(3).pass);
        assert!(transpose_scaling_suite(3).pass);
        assert!(kronecker_suite(3).pass);
    }

    #[test]
    fn dims_small() {
        assert!(dimensions_suite(1, 50).pass);
    }
}
