//! Kernel functions entering the relation matrices: the injection sums `S`
//! and `T`, the normalization `η`, the principal-term prefactor, and the
//! closed sums used in the triangularity argument.

use std::collections::HashMap;
use std::sync::RwLock;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{binomial, factorial, int, Rational};
use crate::partitions::{MultiPop, Partition, Pop};

/// Calls `visit` on every injection `{0..from} -> {0..to}`, in
/// lexicographic order of the target tuple.
pub fn for_each_injection(from: usize, to: usize, mut visit: impl FnMut(&[usize])) {
    if from > to {
        return;
    }
    let mut image = Vec::with_capacity(from);
    let mut used = vec![false; to];
    injections_rec(from, to, &mut image, &mut used, &mut visit);
}

fn injections_rec(from: usize, to: usize, image: &mut Vec<usize>, used: &mut [bool], visit: &mut impl FnMut(&[usize])) {
    if image.len() == from {
        visit(image);
        return;
    }
    for target in 0..to {
        if used[target] {
            continue;
        }
        used[target] = true;
        image.push(target);
        injections_rec(from, to, image, used, visit);
        image.pop();
        used[target] = false;
    }
}

fn recip_pow(base: u32, exp: u32) -> Rational {
    Rational::new(One::one(), num_bigint::BigInt::from(base).pow(exp))
}

fn int_pow(base: u32, exp: u32) -> Rational {
    Rational::from_integer(num_bigint::BigInt::from(base).pow(exp))
}

/// `S[α″](β′)`: the sum over injections `ι` from the parts of `α″` to the
/// parts of `β′` of `Π_j 1/β′_{ι(j)}^{α″_j − 1} · Π_{i ∉ Im ι} 1/β′_i`.
pub fn s_func(alpha_dp: &Partition, beta_p: &Partition) -> Rational {
    s_on_parts(alpha_dp.parts(), beta_p.parts())
}

/// `S` evaluated on part lists in whatever order they are given.
pub fn s_on_parts(a: &[u32], b: &[u32]) -> Rational {
    let mut total = Rational::zero();
    for_each_injection(a.len(), b.len(), |iota| {
        let mut term = Rational::one();
        let mut hit = vec![false; b.len()];
        for (j, &i) in iota.iter().enumerate() {
            hit[i] = true;
            term *= recip_pow(b[i], a[j] - 1);
        }
        for (i, &part) in b.iter().enumerate() {
            if !hit[i] {
                term *= recip_pow(part, 1);
            }
        }
        total += term;
    });
    total
}

fn check_ge_two(p: &[u32]) -> Result<()> {
    match p.iter().find(|&&x| x < 2) {
        Some(&x) => Err(Error::InvalidSubpartition(x)),
        None => Ok(()),
    }
}

/// `T[q″](p″)`: the sum over injections `θ` from the parts of `q″` to the
/// parts of `p″` of `2^{v(θ)} Π_j binom(p″_{θ(j)}−1, q″_j−1) (−1)^{q″_j−1} q″_j^{p″_{θ(j)}−2}`,
/// where `v(θ)` counts the `j` with `q″_j = p″_{θ(j)} = 2`.
pub fn t_func(q_dp: &Partition, p_dp: &Partition) -> Result<Rational> {
    t_on_parts(q_dp.parts(), p_dp.parts())
}

/// `T` evaluated on part lists in whatever order they are given.
pub fn t_on_parts(q: &[u32], p: &[u32]) -> Result<Rational> {
    check_ge_two(q)?;
    check_ge_two(p)?;
    let mut total = Rational::zero();
    for_each_injection(q.len(), p.len(), |theta| {
        let mut term = Rational::one();
        for (j, &i) in theta.iter().enumerate() {
            let (pi, qj) = (p[i], q[j]);
            let mut f = Rational::from_integer(binomial(pi as i64 - 1, qj as i64 - 1)) * int_pow(qj, pi - 2);
            if (qj - 1) % 2 == 1 {
                f = -f;
            }
            if pi == 2 && qj == 2 {
                f *= int(2);
            }
            term *= f;
        }
        total += term;
    });
    Ok(total)
}

/// `(−1)^b b^b / b!`, the reciprocal of one edge factor of `η`.
fn eta_part(b: u32) -> Rational {
    let v = Rational::new(num_bigint::BigInt::from(b).pow(b), factorial(b));
    if b % 2 == 1 {
        -v
    } else {
        v
    }
}

/// `η(β̄) = 1/|Aut β′| · Π 1/((−1)^{b} b!/b^{b})` over all parts `b` of `β̄`.
pub fn eta(beta: &Pop) -> Rational {
    let mut v = Rational::new(One::one(), beta.unordered().aut_order().into());
    for &b in beta.ordered().iter().chain(beta.unordered().parts()) {
        v *= eta_part(b);
    }
    v
}

/// Sign `(−1)^{n + ℓ(β′)}` times `η(β̄)` for one component.
pub fn principal_scaling(beta: &Pop) -> Rational {
    let e = eta(beta);
    if (beta.order() + beta.unordered().len()) % 2 == 1 {
        -e
    } else {
        e
    }
}

/// Read-through cache for `S` and `T`. Safe to share between threads.
#[derive(Debug, Default)]
pub struct KernelMemo {
    s: RwLock<HashMap<(Partition, Partition), Rational>>,
    t: RwLock<HashMap<(Partition, Partition), Rational>>,
}

impl KernelMemo {
    pub fn new() -> Self {
        KernelMemo::default()
    }

    pub fn s(&self, alpha_dp: &Partition, beta_p: &Partition) -> Rational {
        let key = (alpha_dp.clone(), beta_p.clone());
        if let Some(v) = self.s.read().expect("memo lock").get(&key) {
            return v.clone();
        }
        let v = s_func(alpha_dp, beta_p);
        self.s.write().expect("memo lock").insert(key, v.clone());
        v
    }

    pub fn t(&self, q_dp: &Partition, p_dp: &Partition) -> Result<Rational> {
        let key = (q_dp.clone(), p_dp.clone());
        if let Some(v) = self.t.read().expect("memo lock").get(&key) {
            return Ok(v.clone());
        }
        let v = t_func(q_dp, p_dp)?;
        self.t.write().expect("memo lock").insert(key, v.clone());
        Ok(v)
    }
}

fn same_multi_shape(a: &MultiPop, b: &MultiPop) -> Result<()> {
    let same = a.marking_sets() == b.marking_sets()
        && a.components().len() == b.components().len()
        && a.components().iter().zip(b.components()).all(|(x, y)| x.degree() == y.degree());
    if same {
        Ok(())
    } else {
        Err(Error::IncomparableShapes(format!("{a} vs {b}")))
    }
}

/// One component of the principal prefactor.
pub fn principal_prefactor_connected(alpha: &Pop, beta: &Pop, memo: &KernelMemo) -> Rational {
    let mut v = memo.s(&alpha.double_prime(), beta.unordered());
    if v.is_zero() {
        return v;
    }
    for (&a, &b) in alpha.ordered().iter().zip(beta.ordered()) {
        v *= recip_pow(b, a - 1);
    }
    v * principal_scaling(beta)
}

/// Prefactor of the principal term of type `β̄` in the relation indexed by
/// `ᾱ`: the product over components of
/// `Π_j 1/β_j^{α_j−1} · S[α″](β′) · (−1)^{n_i+ℓ(β′)} · η(β̄_i)`.
pub fn principal_prefactor(alpha: &MultiPop, beta: &MultiPop) -> Result<Rational> {
    principal_prefactor_memo(alpha, beta, &KernelMemo::new())
}

pub fn principal_prefactor_memo(alpha: &MultiPop, beta: &MultiPop, memo: &KernelMemo) -> Result<Rational> {
    same_multi_shape(alpha, beta)?;
    Ok(alpha
        .components()
        .iter()
        .zip(beta.components())
        .map(|(a, b)| principal_prefactor_connected(a, b, memo))
        .product())
}

fn signed_binom(n: u32, k: u32) -> Rational {
    let v = Rational::from_integer(binomial(n as i64, k as i64));
    if k % 2 == 1 {
        -v
    } else {
        v
    }
}

/// `q^e` for integer `e`, with `q ≥ 1`.
fn qpow(q: u32, e: i64) -> Rational {
    if e >= 0 {
        int_pow(q, e as u32)
    } else {
        recip_pow(q, (-e) as u32)
    }
}

fn hat_sum(ph: u32, exponent: i64) -> Rational {
    (1..=ph)
        .map(|q| {
            let mut term = signed_binom(ph - 1, q - 1) * qpow(q, exponent);
            if ph == 2 && q == 2 {
                term *= int(2);
            }
            term
        })
        .sum()
}

/// Sum (α): `Σ_{q=1}^{p} binom(p−1,q−1)(−1)^{q−1} q^{p−1−r}` for `p ≥ r ≥ 1`.
pub fn closed_sum_alpha(pt: u32, rt: u32) -> Result<Rational> {
    if rt < 1 || pt < rt {
        return Err(Error::InvalidRange(format!("need p >= r >= 1, got p={pt}, r={rt}")));
    }
    Ok((1..=pt).map(|q| signed_binom(pt - 1, q - 1) * qpow(q, pt as i64 - 1 - rt as i64)).sum())
}

fn check_hat(ph: u32) -> Result<()> {
    if ph < 2 {
        return Err(Error::InvalidRange(format!("need p >= 2, got p={ph}")));
    }
    Ok(())
}

/// Sum (β): exponent `p−3`, with the extra factor 2 at `p = q = 2`.
pub fn closed_sum_beta(ph: u32) -> Result<Rational> {
    check_hat(ph)?;
    Ok(hat_sum(ph, ph as i64 - 3))
}

/// Sum (β′): exponent `p−2`, with the extra factor 2 at `p = q = 2`.
pub fn closed_sum_beta_prime(ph: u32) -> Result<Rational> {
    check_hat(ph)?;
    Ok(hat_sum(ph, ph as i64 - 2))
}

/// Sum (γ): exponent `p−1−r` for `p ≥ r ≥ 2`, with the extra factor 2 at `p = q = 2`.
pub fn closed_sum_gamma(ph: u32, rh: u32) -> Result<Rational> {
    if rh < 2 || ph < rh {
        return Err(Error::InvalidRange(format!("need p >= r >= 2, got p={ph}, r={rh}")));
    }
    Ok(hat_sum(ph, ph as i64 - 1 - rh as i64))
}

/// `Σ_{k=0}^{n} binom(n,k)(−1)^k k^a` for `0 ≤ a ≤ n−1`, with `0^0 = 1`.
pub fn binomial_power_sum(n: u32, a: u32) -> Result<Rational> {
    if a >= n {
        return Err(Error::InvalidRange(format!("need 0 <= a <= n-1, got n={n}, a={a}")));
    }
    Ok((0..=n).map(|k| signed_binom(n, k) * int_pow(k, a)).sum())
}

/// `Σ_{k=0}^{n} binom(n,k)(−1)^k / (k+1)`.
pub fn binomial_reciprocal_sum(n: u32) -> Rational {
    (0..=n).map(|k| signed_binom(n, k) * recip_pow(k + 1, 1)).sum()
}

/// Both binomial identities at once: the power sum (which needs
/// `a ≤ n−1`) and the reciprocal sum.
pub fn binom_identities(n: u32, a: u32) -> Result<(Rational, Rational)> {
    Ok((binomial_power_sum(n, a)?, binomial_reciprocal_sum(n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;
    use crate::partitions::MultiShape;
    use proptest::prelude::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn pop(d: u32, o: &[u32], u: &[u32]) -> Pop {
        Pop::from_parts(d, o, u).unwrap()
    }

    #[test]
    fn injections_are_lexicographic() {
        let mut seen = Vec::new();
        for_each_injection(2, 3, |i| seen.push(i.to_vec()));
        assert_eq!(seen, vec![[0, 1], [0, 2], [1, 0], [1, 2], [2, 0], [2, 1]]);
        let mut count = 0;
        for_each_injection(0, 0, |_| count += 1);
        assert_eq!(count, 1);
        for_each_injection(3, 2, |_| count += 1);
        assert_eq!(count, 1);
    }

    #[test]
    fn s_examples() {
        assert_eq!(s_func(&p(&[]), &p(&[2, 3])), rat(1, 6));
        assert_eq!(s_func(&p(&[2]), &p(&[3, 1])), rat(2, 3));
        assert_eq!(s_func(&p(&[2, 2]), &p(&[3])), int(0));
        assert_eq!(s_func(&p(&[]), &p(&[])), int(1));
    }

    #[test]
    fn t_examples() {
        assert_eq!(t_func(&p(&[]), &p(&[4, 2])).unwrap(), int(1));
        assert_eq!(t_func(&p(&[2]), &p(&[2])).unwrap(), int(-2));
        assert_eq!(t_func(&p(&[2]), &p(&[3])).unwrap(), int(-4));
        assert_eq!(t_func(&p(&[2, 2]), &p(&[3])).unwrap(), int(0));
        assert_eq!(t_func(&p(&[1]), &p(&[3])), Err(Error::InvalidSubpartition(1)));
        assert_eq!(t_func(&p(&[2]), &p(&[3, 1])), Err(Error::InvalidSubpartition(1)));
    }

    #[test]
    fn eta_examples() {
        assert_eq!(eta(&pop(1, &[1], &[])), int(-1));
        assert_eq!(eta(&pop(2, &[2], &[])), int(2));
        assert_eq!(eta(&pop(2, &[1], &[1])), int(1));
        // Aut of (1,1) is 2: (−1)^3 / 2
        assert_eq!(eta(&pop(3, &[1], &[1, 1])), rat(-1, 2));
    }

    fn connected(d: u32, o: &[u32], u: &[u32]) -> MultiPop {
        let shape = MultiShape::connected(d, o.len() as u32).unwrap();
        MultiPop::new(&shape, vec![pop(d, o, u)]).unwrap()
    }

    #[test]
    fn prefactor_examples() {
        let one = connected(1, &[1], &[]);
        assert_eq!(principal_prefactor(&one, &one).unwrap(), int(1));
        let a = connected(2, &[2], &[]);
        let b = connected(2, &[1], &[1]);
        assert_eq!(principal_prefactor(&a, &b).unwrap(), int(1));
        assert_eq!(principal_prefactor(&b, &a).unwrap(), int(-2));
        assert_eq!(principal_prefactor(&a, &a).unwrap(), int(-1));
        assert_eq!(principal_prefactor(&b, &b).unwrap(), int(1));
        assert!(matches!(principal_prefactor(&one, &a), Err(Error::IncomparableShapes(_))));
    }

    #[test]
    fn prefactor_is_multiplicative() {
        let shape = MultiShape::with_sizes(vec![2, 2], &[1, 1]).unwrap();
        let memo = KernelMemo::new();
        let comps = [pop(2, &[1], &[1]), pop(2, &[2], &[])];
        for a0 in &comps {
            for a1 in &comps {
                for b0 in &comps {
                    for b1 in &comps {
                        let a = MultiPop::new(&shape, vec![a0.clone(), a1.clone()]).unwrap();
                        let b = MultiPop::new(&shape, vec![b0.clone(), b1.clone()]).unwrap();
                        let expect =
                            principal_prefactor_connected(a0, b0, &memo) * principal_prefactor_connected(a1, b1, &memo);
                        assert_eq!(principal_prefactor(&a, &b).unwrap(), expect);
                    }
                }
            }
        }
    }

    #[test]
    fn closed_sum_examples() {
        assert_eq!(closed_sum_alpha(2, 1).unwrap(), int(0));
        assert_eq!(closed_sum_alpha(2, 2).unwrap(), rat(1, 2));
        assert_eq!(closed_sum_alpha(1, 1).unwrap(), int(1));
        assert_eq!(closed_sum_beta(2).unwrap(), int(0));
        assert_eq!(closed_sum_beta_prime(2).unwrap(), int(-1));
        assert_eq!(closed_sum_beta_prime(5).unwrap(), int(0));
        assert_eq!(closed_sum_gamma(3, 3).unwrap(), rat(1, 3));
        assert_eq!(closed_sum_gamma(2, 2).unwrap(), int(0));
        assert_eq!(closed_sum_gamma(4, 2).unwrap(), int(0));
        assert!(matches!(closed_sum_alpha(1, 2), Err(Error::InvalidRange(_))));
        assert!(matches!(closed_sum_beta(1), Err(Error::InvalidRange(_))));
        assert!(matches!(closed_sum_gamma(3, 1), Err(Error::InvalidRange(_))));
    }

    #[test]
    fn closed_sums_match_branch_values() {
        for p in 1..=12 {
            for r in 1..=p {
                let want = if r < p { int(0) } else { rat(1, p as i64) };
                assert_eq!(closed_sum_alpha(p, r).unwrap(), want, "alpha {p} {r}");
            }
        }
        for p in 2..=12 {
            assert_eq!(closed_sum_beta(p).unwrap(), int(0));
            let want = if p == 2 { int(-1) } else { int(0) };
            assert_eq!(closed_sum_beta_prime(p).unwrap(), want);
            for r in 2..=p {
                let want = if r < p || p == 2 { int(0) } else { rat(1, p as i64) };
                assert_eq!(closed_sum_gamma(p, r).unwrap(), want, "gamma {p} {r}");
            }
        }
    }

    #[test]
    fn binomial_identities() {
        assert_eq!(binomial_power_sum(3, 2).unwrap(), int(0));
        assert_eq!(binomial_reciprocal_sum(0), int(1));
        assert_eq!(binomial_reciprocal_sum(4), rat(1, 5));
        assert!(matches!(binomial_power_sum(3, 3), Err(Error::InvalidRange(_))));
        assert!(matches!(binom_identities(0, 0), Err(Error::InvalidRange(_))));
        for n in 0..=15 {
            for a in 0..n {
                assert_eq!(binomial_power_sum(n, a).unwrap(), int(0));
            }
            assert_eq!(binomial_reciprocal_sum(n), rat(1, n as i64 + 1));
        }
    }

    #[test]
    fn memo_agrees() {
        let memo = KernelMemo::new();
        for _ in 0..2 {
            assert_eq!(memo.s(&p(&[2]), &p(&[3, 1])), rat(2, 3));
            assert_eq!(memo.t(&p(&[2]), &p(&[3])).unwrap(), int(-4));
        }
    }

    fn permutations(v: &[u32]) -> Vec<Vec<u32>> {
        if v.is_empty() {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for i in 0..v.len() {
            let mut rest = v.to_vec();
            let x = rest.remove(i);
            for mut tail in permutations(&rest) {
                tail.insert(0, x);
                out.push(tail);
            }
        }
        out
    }

    #[test]
    fn kernels_ignore_part_order_exhaustively() {
        use crate::partitions::partitions_of;
        let all: Vec<Partition> = (0..=6).flat_map(partitions_of).collect();
        for a in all.iter().filter(|a| a.parts().iter().all(|&x| x >= 2)) {
            for b in &all {
                let s = s_func(a, b);
                let t = b.parts().iter().all(|&x| x >= 2).then(|| t_func(a, b).unwrap());
                for pa in permutations(a.parts()) {
                    for pb in permutations(b.parts()) {
                        assert_eq!(s_on_parts(&pa, &pb), s);
                        if let Some(t) = &t {
                            assert_eq!(&t_on_parts(&pa, &pb).unwrap(), t);
                        }
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn s_ignores_part_order(
            a in proptest::collection::vec(2u32..5, 0..3),
            b in proptest::collection::vec(1u32..5, 0..4),
            shift in 0usize..4,
        ) {
            let mut b_rot = b.clone();
            if !b_rot.is_empty() {
                let k = shift % b_rot.len();
                b_rot.rotate_left(k);
            }
            let mut a_rev = a.clone();
            a_rev.reverse();
            let canonical = s_func(&Partition::new(a.clone()).unwrap(), &Partition::new(b.clone()).unwrap());
            prop_assert_eq!(s_on_parts(&a_rev, &b_rot), canonical.clone());
            prop_assert_eq!(canonical.is_zero(), a.len() > b.len());
        }

        #[test]
        fn t_vanishes_only_on_cutoff(
            q in proptest::collection::vec(2u32..5, 0..3),
            pp in proptest::collection::vec(2u32..6, 0..3),
        ) {
            let v = t_func(&Partition::new(q.clone()).unwrap(), &Partition::new(pp.clone()).unwrap()).unwrap();
            if q.len() > pp.len() {
                prop_assert!(v.is_zero());
            }
        }

        #[test]
        fn eta_never_zero(o in proptest::collection::vec(1u32..6, 1..3), u in proptest::collection::vec(1u32..6, 0..3)) {
            let d = o.iter().sum::<u32>() + u.iter().sum::<u32>();
            let b = Pop::from_parts(d, &o, &u).unwrap();
            prop_assert!(!eta(&b).is_zero());
        }
    }
}
