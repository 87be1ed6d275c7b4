//! Virtual dimensions, the Riemann-Hurwitz condition, and the dimension
//! match between the relation integrand and its principal terms.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use super::shape::RelativeShape;
use crate::error::{Error, Result};
use crate::partitions::{enumerate_pop_multi, partitions_of, LengthBound, MultiPop, MultiShape, Partition};

/// `2g − 2 + 2d + n + Σ(1 + ℓ(μ) − d)`, less 3 for the rubber target.
pub fn vdim(genus: i64, degree: u32, markings: u32, profile_lengths: &[usize], parameterized: bool) -> i64 {
    let d = degree as i64;
    let base = if parameterized { -2 } else { -5 };
    2 * genus + base + 2 * d + markings as i64 + profile_lengths.iter().map(|&l| 1 + l as i64 - d).sum::<i64>()
}

fn shape_lengths(shape: &RelativeShape) -> Vec<usize> {
    (0..shape.profiles().len()).map(|j| shape.profile_length(j)).collect()
}

/// Dimension over the rigid target, counting the extra markings too and
/// using the arithmetic genus for disconnected domains.
pub fn vdim_parameterized(shape: &RelativeShape) -> i64 {
    let n = shape.markings() + shape.extra_markings();
    vdim(shape.arithmetic_genus(), shape.total_degree(), n, &shape_lengths(shape), true)
}

pub fn vdim_unparameterized(shape: &RelativeShape) -> i64 {
    let n = shape.markings() + shape.extra_markings();
    vdim(shape.arithmetic_genus(), shape.total_degree(), n, &shape_lengths(shape), false)
}

/// `2g − 2 + 2d = Σ (d − ℓ(μⁱ))`.
pub fn hurwitz_condition(genus: u32, profiles: &[Partition]) -> Result<bool> {
    let Some(first) = profiles.first() else {
        return Ok(2 * genus as i64 - 2 == 0);
    };
    let d = first.size();
    if let Some(bad) = profiles.iter().find(|p| p.size() != d) {
        return Err(Error::InvalidShape(format!("profiles {first} and {bad} have different sizes")));
    }
    let rhs: i64 = profiles.iter().map(|p| d as i64 - p.len() as i64).sum();
    Ok(2 * genus as i64 - 2 + 2 * d as i64 == rhs)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct OmegaDimensionReport {
    pub lhs: i64,
    pub rhs: i64,
    pub equal: bool,
    /// Degree of the integrand counted factor by factor.
    pub omega_degree: i64,
    /// `k + n + ℓ(α″) + Σr + Σs + 2`.
    pub omega_degree_formula: i64,
    pub degree_matches: bool,
}

/// A relation integrand: ordered markings and profiles from `shape`,
/// `shape.extra_markings()` further markings with ψ exponents `r`, and ψ
/// exponents `s` at the relative points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct OmegaInstance {
    pub alpha: MultiPop,
    pub beta: MultiPop,
    pub shape: RelativeShape,
    pub r: Vec<u32>,
    pub s: Vec<u32>,
    pub k: u32,
}

/// Compares the dimension of the integrand cap the relative virtual class
/// with that of the principal-term integrand over the rubber space with
/// `β̄` as an extra relative condition.
pub fn omega_dimension_check(
    alpha: &MultiPop,
    beta: &MultiPop,
    shape: &RelativeShape,
    r: &[u32],
    s: &[u32],
    k: u32,
) -> Result<OmegaDimensionReport> {
    let d = shape.total_degree();
    let degrees: Vec<u32> = alpha.components().iter().map(|p| p.degree()).collect();
    if alpha.marking_sets() != shape.marking_sets() || beta.marking_sets() != shape.marking_sets() {
        return Err(Error::InvalidShape("marking sets of the POPs and the shape differ".into()));
    }
    if degrees != shape.degrees() || beta.components().iter().map(|p| p.degree()).ne(degrees.iter().copied()) {
        return Err(Error::InvalidShape("degrees of the POPs and the shape differ".into()));
    }
    if r.len() != shape.extra_markings() as usize || s.len() != shape.profiles().len() {
        return Err(Error::InvalidShape(format!(
            "{} and {} exponents for {} extra markings and {} profiles",
            r.len(),
            s.len(),
            shape.extra_markings(),
            shape.profiles().len()
        )));
    }
    for p in [alpha, beta] {
        if !LengthBound::Finite(k).admits(d, p.length()) {
            return Err(Error::InvalidShape(format!("{p} has length below {d} - {k}")));
        }
    }
    let n = shape.markings() as i64;
    let sum_r: i64 = r.iter().map(|&x| x as i64).sum();
    let sum_s: i64 = s.iter().map(|&x| x as i64).sum();
    let (d, k) = (d as i64, k as i64);
    let dp: Vec<Partition> = alpha.components().iter().map(|p| p.double_prime()).collect();
    let len_dp = dp.iter().map(Partition::len).sum::<usize>() as i64;

    // ψ^{a−1}·ev* has degree a at each ordered and each middle marking
    let omega_degree = alpha.components().iter().flat_map(|p| p.ordered()).map(|&a| a as i64).sum::<i64>()
        + dp.iter().map(|p| p.size() as i64).sum::<i64>()
        + sum_r
        + sum_s
        + (2 + alpha.length() as i64 - d + k);
    let omega_degree_formula = k + n + len_dp + sum_r + sum_s + 2;

    let lengths = shape_lengths(shape);
    let g = shape.arithmetic_genus();
    let markings = (n + len_dp) as u32 + shape.extra_markings();
    let lhs = vdim(g, d as u32, markings, &lengths, true) - omega_degree;

    let mut principal_lengths = vec![beta.length()];
    principal_lengths.extend_from_slice(&lengths);
    let principal_degree = sum_r + sum_s + beta.length() as i64 - d + k;
    let rhs = vdim(g, d as u32, shape.extra_markings(), &principal_lengths, false) - principal_degree;

    Ok(OmegaDimensionReport {
        lhs,
        rhs,
        equal: lhs == rhs,
        omega_degree,
        omega_degree_formula,
        degree_matches: omega_degree == omega_degree_formula,
    })
}

impl OmegaInstance {
    pub fn check(&self) -> Result<OmegaDimensionReport> {
        omega_dimension_check(&self.alpha, &self.beta, &self.shape, &self.r, &self.s, self.k)
    }

    /// A random valid instance: up to two components of degree at most 4,
    /// positive arithmetic genus, up to three profiles and two extra
    /// markings.
    pub fn random(rng: &mut impl Rng) -> Result<OmegaInstance> {
        let c = rng.gen_range(1..=2usize);
        let degrees: Vec<u32> = (0..c).map(|_| rng.gen_range(1..=4)).collect();
        let sizes: Vec<u32> = degrees.iter().map(|&d| rng.gen_range(1..=d)).collect();
        let pop_shape = MultiShape::with_sizes(degrees.clone(), &sizes)?;
        let mut genera: Vec<u32> = (0..c).map(|_| rng.gen_range(0..=3)).collect();
        if genera.iter().sum::<u32>() < c as u32 {
            genera[0] += c as u32;
        }
        let m = rng.gen_range(1..=3usize);
        let profiles: Vec<Vec<Partition>> = (0..m)
            .map(|_| {
                degrees.iter().map(|&d| partitions_of(d).choose(rng).expect("d > 0 has partitions").clone()).collect()
            })
            .collect();
        let extra = rng.gen_range(0..=2u32);
        let shape = RelativeShape::new(genera, pop_shape.marking_sets().to_vec(), degrees, profiles, true, extra)?;
        let d = pop_shape.total_degree();
        let k = rng.gen_range(0..=d);
        let pops = enumerate_pop_multi(&pop_shape, LengthBound::Finite(k))?;
        let alpha = pops.choose(rng).expect("all-ones POP has full length").clone();
        let beta = pops.choose(rng).expect("nonempty").clone();
        let r = (0..extra).map(|_| rng.gen_range(0..=3)).collect();
        let s = (0..m).map(|_| rng.gen_range(0..=3)).collect();
        Ok(OmegaInstance { alpha, beta, shape, r, s, k })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::Pop;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn vdim_examples() {
        let s = RelativeShape::connected(0, 0, 1, vec![p(&[1])]).unwrap();
        assert_eq!(vdim_parameterized(&s), 1);
        let u = RelativeShape::connected(0, 0, 1, vec![p(&[1]), p(&[1])]).unwrap().with_parameterized(false).unwrap();
        assert_eq!(vdim_unparameterized(&u), -1);
    }

    #[test]
    fn hurwitz() {
        for g in 0..=10u32 {
            let profiles = vec![p(&[2]); 2 * g as usize + 2];
            assert!(hurwitz_condition(g, &profiles).unwrap());
            assert!(!hurwitz_condition(g, &profiles[1..]).unwrap());
        }
        assert!(!hurwitz_condition(0, &[p(&[2])]).unwrap());
        assert!(hurwitz_condition(0, &[p(&[1]), p(&[1]), p(&[1])]).unwrap());
        assert!(matches!(hurwitz_condition(0, &[p(&[1]), p(&[2])]), Err(Error::InvalidShape(_))));
    }

    #[test]
    fn worked_omega() {
        let ms = MultiShape::connected(2, 1).unwrap();
        let alpha = MultiPop::new(&ms, vec![Pop::from_parts(2, &[1], &[1]).unwrap()]).unwrap();
        let shape = RelativeShape::connected(1, 1, 2, vec![p(&[1, 1])]).unwrap();
        let rep = omega_dimension_check(&alpha, &alpha, &shape, &[], &[0], 0).unwrap();
        // lhs: vdim 2+4+1+1 = 6 less degree 3; rhs: 2−5+4+0+1+1 = 3 less 0
        assert_eq!((rep.lhs, rep.rhs), (3, 3));
        assert!(rep.equal && rep.degree_matches);
        assert_eq!(rep.omega_degree, 3);
    }

    #[test]
    fn inconsistent_inputs() {
        let ms = MultiShape::connected(2, 1).unwrap();
        let alpha = MultiPop::new(&ms, vec![Pop::from_parts(2, &[2], &[]).unwrap()]).unwrap();
        let shape = RelativeShape::connected(1, 1, 2, vec![p(&[1, 1])]).unwrap();
        assert!(omega_dimension_check(&alpha, &alpha, &shape, &[], &[], 1).is_err());
        // length 1 < 2 − 0
        assert!(omega_dimension_check(&alpha, &alpha, &shape, &[], &[0], 0).is_err());
    }

    #[test]
    fn random_instances_match() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let inst = OmegaInstance::random(&mut rng).unwrap();
            let rep = inst.check().unwrap();
            assert!(rep.equal && rep.degree_matches, "{inst:?}");
        }
    }
}
