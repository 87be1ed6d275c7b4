//! Truncated graded polynomials in nilpotent generators (`ψ`, `λ`) with
//! Laurent-in-`t` coefficients.
//!
//! Each generator lives on a moduli factor. A factor carries a truncation
//! bound, and monomials whose degree on that factor exceeds the bound are
//! dropped by every operation.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize, Serializer};

use super::laurent::LaurentT;
use crate::error::Result;

/// One of the two torus-fixed points of the target line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "inf")]
    Infinity,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Zero => Side::Infinity,
            Side::Infinity => Side::Zero,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Zero => write!(f, "0"),
            Side::Infinity => write!(f, "inf"),
        }
    }
}

/// A moduli factor carrying generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Factor {
    /// The unparameterized relative-map space over a fixed point.
    Rubber(Side),
    /// The curve moduli factor of a stable vertex.
    Vertex(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// Target cotangent class `ψ_{q0}` or `ψ_{q∞}` at the node marking.
    NodePsi(Side),
    /// Cotangent class at a stable vertex, at the branch of `edge`.
    Psi { vertex: usize, edge: usize },
    /// Hodge class `λ_index` at a stable vertex.
    Lambda { vertex: usize, index: u32 },
}

impl Generator {
    pub fn factor(&self) -> Factor {
        match *self {
            Generator::NodePsi(side) => Factor::Rubber(side),
            Generator::Psi { vertex, .. } | Generator::Lambda { vertex, .. } => Factor::Vertex(vertex),
        }
    }

    pub fn degree(&self) -> u32 {
        match *self {
            Generator::NodePsi(_) | Generator::Psi { .. } => 1,
            Generator::Lambda { index, .. } => index,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::NodePsi(Side::Zero) => write!(f, "psi_q0"),
            Generator::NodePsi(Side::Infinity) => write!(f, "psi_qinf"),
            Generator::Psi { vertex, edge } => write!(f, "psi[v{vertex},e{edge}]"),
            Generator::Lambda { vertex, index } => write!(f, "lambda{index}[v{vertex}]"),
        }
    }
}

/// Product of generator powers, kept sorted with no zero exponents.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<(Generator, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn power(g: Generator, e: u32) -> Self {
        if e == 0 {
            return Monomial::one();
        }
        Monomial(vec![(g, e)])
    }

    pub fn from_powers(powers: impl IntoIterator<Item = (Generator, u32)>) -> Self {
        powers.into_iter().fold(Monomial::one(), |acc, (g, e)| acc.mul(&Monomial::power(g, e)))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn powers(&self) -> &[(Generator, u32)] {
        &self.0
    }

    pub fn exponent(&self, g: Generator) -> u32 {
        self.0.iter().find(|(h, _)| *h == g).map_or(0, |&(_, e)| e)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut merged: BTreeMap<Generator, u32> = self.0.iter().copied().collect();
        for &(g, e) in &other.0 {
            *merged.entry(g).or_insert(0) += e;
        }
        Monomial(merged.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    /// Degree of the part of this monomial living on `factor`.
    pub fn factor_degree(&self, factor: Factor) -> u32 {
        self.0.iter().filter(|(g, _)| g.factor() == factor).map(|(g, e)| g.degree() * e).sum()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|(g, e)| g.degree() * e).sum()
    }

    fn factors(&self) -> impl Iterator<Item = Factor> + '_ {
        self.0.iter().map(|(g, _)| g.factor())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> =
            self.0.iter().map(|(g, e)| if *e == 1 { g.to_string() } else { format!("{g}^{e}") }).collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Sum of monomials with [`LaurentT`] coefficients, truncated per factor.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FormalClass {
    terms: BTreeMap<Monomial, LaurentT>,
    bounds: BTreeMap<Factor, u32>,
}

impl FormalClass {
    pub fn zero() -> Self {
        FormalClass::default()
    }

    pub fn one() -> Self {
        FormalClass::constant(LaurentT::one())
    }

    pub fn constant(c: LaurentT) -> Self {
        FormalClass::term(Monomial::one(), c)
    }

    pub fn term(m: Monomial, c: LaurentT) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        FormalClass { terms, bounds: BTreeMap::new() }
    }

    pub fn generator(g: Generator) -> Self {
        FormalClass::term(Monomial::power(g, 1), LaurentT::one())
    }

    /// Sets (or tightens) the truncation bound of `factor` and re-truncates.
    pub fn with_bound(mut self, factor: Factor, bound: u32) -> Self {
        let b = self.bounds.entry(factor).or_insert(bound);
        *b = (*b).min(bound);
        self.retruncate();
        self
    }

    pub fn bound(&self, factor: Factor) -> Option<u32> {
        self.bounds.get(&factor).copied()
    }

    pub fn bounds(&self) -> impl Iterator<Item = (Factor, u32)> + '_ {
        self.bounds.iter().map(|(&f, &b)| (f, b))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &LaurentT)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> LaurentT {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient of the unit monomial when nothing else is present.
    pub fn as_scalar(&self) -> Option<LaurentT> {
        match self.terms.len() {
            0 => Some(LaurentT::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    fn admissible(&self, m: &Monomial) -> bool {
        m.factors().all(|f| match self.bounds.get(&f) {
            Some(&b) => m.factor_degree(f) <= b,
            None => true,
        })
    }

    /// Every stored monomial respects every truncation bound.
    pub fn respects_bounds(&self) -> bool {
        self.terms.keys().all(|m| self.admissible(m))
    }

    fn retruncate(&mut self) {
        let bounds = self.bounds.clone();
        self.terms.retain(|m, _| m.factors().all(|f| bounds.get(&f).is_none_or(|&b| m.factor_degree(f) <= b)));
    }

    fn accumulate(&mut self, m: Monomial, c: LaurentT) {
        if c.is_zero() || !self.admissible(&m) {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_default();
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    fn merged_bounds(&self, other: &FormalClass) -> BTreeMap<Factor, u32> {
        let mut bounds = self.bounds.clone();
        for (&f, &b) in &other.bounds {
            let e = bounds.entry(f).or_insert(b);
            *e = (*e).min(b);
        }
        bounds
    }

    pub fn add(&self, other: &FormalClass) -> FormalClass {
        let mut out = FormalClass { terms: BTreeMap::new(), bounds: self.merged_bounds(other) };
        for (m, c) in self.terms.iter().chain(other.terms.iter()) {
            out.accumulate(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> FormalClass {
        FormalClass { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(), bounds: self.bounds.clone() }
    }

    pub fn sub(&self, other: &FormalClass) -> FormalClass {
        self.add(&other.neg())
    }

    /// Product, re-truncated with the tighter of the two bounds per factor.
    pub fn mul(&self, other: &FormalClass) -> FormalClass {
        let mut out = FormalClass { terms: BTreeMap::new(), bounds: self.merged_bounds(other) };
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.accumulate(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &LaurentT) -> FormalClass {
        self.mul(&FormalClass::constant(c.clone()))
    }

    /// `1/(weight - generator) = Σ_{a=0}^{truncation} generator^a / weight^{a+1}`,
    /// with the generator's factor truncated at `truncation`.
    pub fn geom_expand(weight: &LaurentT, generator: Generator, truncation: u32) -> Result<Self> {
        let inv = weight.inverse()?;
        let mut out = FormalClass::zero().with_bound(generator.factor(), truncation);
        let mut w_pow = inv.clone();
        for a in 0..=truncation {
            out.accumulate(Monomial::power(generator, a), w_pow.clone());
            w_pow = &w_pow * &inv;
        }
        Ok(out)
    }

    /// The `t^0` part of every coefficient.
    pub fn non_equivariant_limit(&self) -> FormalClass {
        let mut out = FormalClass { terms: BTreeMap::new(), bounds: self.bounds.clone() };
        for (m, c) in &self.terms {
            out.accumulate(m.clone(), LaurentT::constant(c.coefficient(0)));
        }
        out
    }
}

impl fmt::Display for FormalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|(m, c)| if m.is_one() { format!("({c})") } else { format!("({c})*{m}") }).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for FormalClass {
    /// A term list `[{"monomial": "...", "coefficient": [...]}, ...]`.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            monomial: String,
            coefficient: &'a LaurentT,
        }
        serializer.collect_seq(self.terms.iter().map(|(m, c)| Term { monomial: m.to_string(), coefficient: c }))
    }
}
