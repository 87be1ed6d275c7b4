//! Partitions, partially ordered partitions (POPs) and their multi-component
//! analogues, together with the total order used to index relation matrices.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An unordered partition stored with weakly decreasing parts.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Sorts `parts` into weakly decreasing order. Every entry must be positive.
    pub fn canonicalize(parts: &[i64]) -> Result<Self> {
        let mut out = Vec::with_capacity(parts.len());
        for &p in parts {
            if p < 1 || p > u32::MAX as i64 {
                return Err(Error::InvalidPartition(p));
            }
            out.push(p as u32);
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(out))
    }

    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(0));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    /// Weakly decreasing parts.
    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn ascending(&self) -> Vec<u32> {
        self.0.iter().rev().copied().collect()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of permutations of the parts that fix the multiset: the
    /// product of `m!` over the multiplicities `m` of the distinct values.
    pub fn aut_order(&self) -> BigUint {
        let mut total = BigUint::from(1u32);
        let mut i = 0;
        while i < self.0.len() {
            let mut j = i;
            while j < self.0.len() && self.0[j] == self.0[i] {
                j += 1;
            }
            for f in 2..=(j - i) {
                total *= BigUint::from(f);
            }
            i = j;
        }
        total
    }

    /// The parts of size at least `threshold`.
    pub fn subpartition_ge(&self, threshold: u32) -> Partition {
        Partition(self.0.iter().copied().filter(|&p| p >= threshold).collect())
    }

    pub fn count_of(&self, value: u32) -> usize {
        self.0.iter().filter(|&&p| p == value).count()
    }

    /// Returns a copy with `part` inserted.
    pub fn with_part(&self, part: u32) -> Partition {
        let mut parts = self.0.clone();
        parts.push(part);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    /// Returns a copy with one occurrence of `part` replaced by `part - 1`
    /// and a new part 1, or `None` if `part < 2` or absent.
    pub fn lowered(&self, part: u32) -> Option<Partition> {
        if part < 2 {
            return None;
        }
        let pos = self.0.iter().position(|&p| p == part)?;
        let mut parts = self.0.clone();
        parts[pos] -= 1;
        parts.push(1);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Some(Partition(parts))
    }
}

impl TryFrom<Vec<i64>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<i64>) -> Result<Self> {
        Partition::canonicalize(&parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "()");
        }
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All partitions of `n`, weakly decreasing, in reverse lexicographic order.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All ordered tuples of `parts` positive integers summing to `total`,
/// in lexicographic order.
pub fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    fn rec(rest: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 0 {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if rest < slots as u32 {
            return;
        }
        for p in 1..=rest - (slots as u32 - 1) {
            cur.push(p);
            rec(rest - p, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, parts, &mut Vec::new(), &mut out);
    out
}

/// The parameter `k` of `Π(d, n, k)`: elements must have length at least
/// `d - k`. `Infinite` is the stabilized set and is not a large integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LengthBound {
    Finite(u32),
    Infinite,
}

impl LengthBound {
    pub fn min_length(self, degree: u32) -> u32 {
        match self {
            LengthBound::Finite(k) => degree.saturating_sub(k),
            LengthBound::Infinite => 0,
        }
    }

    pub fn admits(self, degree: u32, length: usize) -> bool {
        length as u64 >= self.min_length(degree) as u64
    }

    /// Whether every element of the stabilized set has length at least
    /// `degree - k`, i.e. `k >= degree - order`.
    pub fn is_stable(self, degree: u32, order: u32) -> bool {
        match self {
            LengthBound::Finite(k) => k + order >= degree,
            LengthBound::Infinite => true,
        }
    }
}

impl fmt::Display for LengthBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LengthBound::Finite(k) => write!(f, "{k}"),
            LengthBound::Infinite => write!(f, "inf"),
        }
    }
}

impl FromStr for LengthBound {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(LengthBound::Infinite),
            other => other
                .parse::<u32>()
                .map(LengthBound::Finite)
                .map_err(|_| Error::InvalidShape(format!("bad length bound `{other}`"))),
        }
    }
}

impl Serialize for LengthBound {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            LengthBound::Finite(k) => serializer.serialize_u32(*k),
            LengthBound::Infinite => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for LengthBound {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(u32),
            Text(String),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Num(k) => Ok(LengthBound::Finite(k)),
            Repr::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// A partially ordered partition `(α, α′)`: an ordered tuple of positive
/// parts and an unordered partition of the remaining degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PopRepr", into = "PopRepr")]
pub struct Pop {
    degree: u32,
    ordered: Vec<u32>,
    unordered: Partition,
}

#[derive(Serialize, Deserialize)]
struct PopRepr {
    d: u32,
    ordered: Vec<u32>,
    unordered: Partition,
}

impl TryFrom<PopRepr> for Pop {
    type Error = Error;

    fn try_from(r: PopRepr) -> Result<Self> {
        Pop::new(r.d, r.ordered, r.unordered)
    }
}

impl From<Pop> for PopRepr {
    fn from(p: Pop) -> Self {
        PopRepr { d: p.degree, ordered: p.ordered, unordered: p.unordered }
    }
}

impl Pop {
    pub fn new(degree: u32, ordered: Vec<u32>, unordered: Partition) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidShape("degree must be positive".into()));
        }
        if ordered.is_empty() {
            return Err(Error::InvalidShape("order must be positive".into()));
        }
        if ordered.contains(&0) {
            return Err(Error::InvalidPartition(0));
        }
        let ordered_sum: u64 = ordered.iter().map(|&p| p as u64).sum();
        if ordered_sum + unordered.size() as u64 != degree as u64 {
            return Err(Error::InvalidShape(format!(
                "parts {:?} and {} do not add up to degree {}",
                ordered, unordered, degree
            )));
        }
        Ok(Pop { degree, ordered, unordered })
    }

    /// Convenience constructor from raw slices.
    pub fn from_parts(degree: u32, ordered: &[u32], unordered: &[u32]) -> Result<Self> {
        Pop::new(degree, ordered.to_vec(), Partition::new(unordered.to_vec())?)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.ordered.len()
    }

    pub fn ordered(&self) -> &[u32] {
        &self.ordered
    }

    pub fn unordered(&self) -> &Partition {
        &self.unordered
    }

    pub fn length(&self) -> usize {
        self.ordered.len() + self.unordered.len()
    }

    /// Unordered parts of size at least 2.
    pub fn double_prime(&self) -> Partition {
        self.unordered.subpartition_ge(2)
    }

    /// Unordered parts of size at least 3.
    pub fn triple_prime(&self) -> Partition {
        self.unordered.subpartition_ge(3)
    }

    /// Lowers ordered part `i` by one and appends a part 1 to the unordered
    /// partition. `None` if the part is already 1.
    pub fn lower_ordered(&self, i: usize) -> Option<Pop> {
        if self.ordered.get(i).copied().unwrap_or(0) < 2 {
            return None;
        }
        let mut ordered = self.ordered.clone();
        ordered[i] -= 1;
        Some(Pop { degree: self.degree, ordered, unordered: self.unordered.with_part(1) })
    }

    /// Lowers one unordered part equal to `part` (at least 2) and appends a part 1.
    pub fn lower_unordered(&self, part: u32) -> Option<Pop> {
        let unordered = self.unordered.lowered(part)?;
        Some(Pop { degree: self.degree, ordered: self.ordered.clone(), unordered })
    }

    fn same_shape(&self, other: &Pop) -> bool {
        self.degree == other.degree && self.ordered.len() == other.ordered.len()
    }

    /// The four-clause comparison; assumes equal degree and order.
    fn clause_cmp(&self, other: &Pop) -> Ordering {
        let p2 = self.double_prime().ascending();
        let q2 = other.double_prime().ascending();
        p2.len()
            .cmp(&q2.len())
            .then_with(|| p2.cmp(&q2))
            .then_with(|| other.unordered.len().cmp(&self.unordered.len()))
            .then_with(|| self.ordered.cmp(&other.ordered))
    }
}

impl PartialOrd for Pop {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Pop {
    /// POPs of equal shape use the precedence order of `compare_pop`;
    /// differing shapes fall back to comparing `(degree, order)` first.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.ordered.len().cmp(&other.ordered.len()))
            .then_with(|| self.clause_cmp(other))
            .then_with(|| self.unordered.cmp(&other.unordered))
    }
}

impl fmt::Display for Pop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ordered: Vec<String> = self.ordered.iter().map(u32::to_string).collect();
        write!(f, "(({}),{})", ordered.join(","), self.unordered)
    }
}

/// Precedence between two POPs of the same degree and order.
///
/// `p` precedes `q` when, with the parts of size at least two listed in
/// increasing order: `p` has fewer of them; or as many and they are
/// lexicographically smaller; or they agree and `p` has more unordered
/// parts; or the unordered parts agree and the ordered tuple of `p` is
/// lexicographically smaller.
pub fn compare_pop(p: &Pop, q: &Pop) -> Result<Ordering> {
    if !p.same_shape(q) {
        return Err(Error::IncomparableShapes(format!(
            "(d={}, n={}) vs (d={}, n={})",
            p.degree,
            p.order(),
            q.degree,
            q.order()
        )));
    }
    Ok(p.clause_cmp(q))
}

/// The set `Π(d, n, k)` sorted by [`compare_pop`].
pub fn enumerate_pop(degree: u32, order: u32, k: LengthBound) -> Result<Vec<Pop>> {
    if order == 0 || degree < order {
        return Err(Error::InvalidShape(format!("need d >= n > 0, got d={degree}, n={order}")));
    }
    let min_len = k.min_length(degree) as usize;
    let mut out = Vec::new();
    for ordered_sum in order..=degree {
        let rest = partitions_of(degree - ordered_sum);
        for ordered in compositions(ordered_sum, order as usize) {
            for unordered in &rest {
                if ordered.len() + unordered.len() >= min_len {
                    out.push(Pop { degree, ordered: ordered.clone(), unordered: unordered.clone() });
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Degree vector together with an ordered set partition of the markings
/// `{1..n}`, one block per component.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MultiShapeRepr", into = "MultiShapeRepr")]
pub struct MultiShape {
    degrees: Vec<u32>,
    marking_sets: Vec<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct MultiShapeRepr {
    degrees: Vec<u32>,
    marking_sets: Vec<Vec<u32>>,
}

impl TryFrom<MultiShapeRepr> for MultiShape {
    type Error = Error;

    fn try_from(r: MultiShapeRepr) -> Result<Self> {
        MultiShape::new(r.degrees, r.marking_sets)
    }
}

impl From<MultiShape> for MultiShapeRepr {
    fn from(s: MultiShape) -> Self {
        MultiShapeRepr { degrees: s.degrees, marking_sets: s.marking_sets }
    }
}

impl MultiShape {
    pub fn new(degrees: Vec<u32>, mut marking_sets: Vec<Vec<u32>>) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::InvalidShape("at least one component is required".into()));
        }
        if degrees.len() != marking_sets.len() {
            return Err(Error::InvalidShape(format!(
                "{} degrees but {} marking sets",
                degrees.len(),
                marking_sets.len()
            )));
        }
        let mut seen = BTreeSet::new();
        for (i, (d, set)) in degrees.iter().zip(marking_sets.iter_mut()).enumerate() {
            set.sort_unstable();
            if set.is_empty() || set.len() as u64 > *d as u64 {
                return Err(Error::InvalidShape(format!(
                    "component {}: need d >= |n| > 0, got d={}, |n|={}",
                    i + 1,
                    d,
                    set.len()
                )));
            }
            for &m in set.iter() {
                if !seen.insert(m) {
                    return Err(Error::InvalidShape(format!("marking {m} appears twice")));
                }
            }
        }
        let n = seen.len() as u32;
        if seen.iter().copied().ne(1..=n) {
            return Err(Error::InvalidShape("marking sets must partition {1..n}".into()));
        }
        Ok(MultiShape { degrees, marking_sets })
    }

    /// Assigns consecutive marking labels to components by block sizes.
    pub fn with_sizes(degrees: Vec<u32>, sizes: &[u32]) -> Result<Self> {
        let mut next = 1;
        let mut sets = Vec::with_capacity(sizes.len());
        for &s in sizes {
            sets.push((next..next + s).collect());
            next += s;
        }
        MultiShape::new(degrees, sets)
    }

    pub fn connected(degree: u32, order: u32) -> Result<Self> {
        MultiShape::with_sizes(vec![degree], &[order])
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn marking_sets(&self) -> &[Vec<u32>] {
        &self.marking_sets
    }

    pub fn components(&self) -> usize {
        self.degrees.len()
    }

    pub fn orders(&self) -> Vec<u32> {
        self.marking_sets.iter().map(|s| s.len() as u32).collect()
    }

    pub fn total_degree(&self) -> u32 {
        self.degrees.iter().sum()
    }

    pub fn total_order(&self) -> u32 {
        self.marking_sets.iter().map(|s| s.len() as u32).sum()
    }
}

/// Every shape `(𝐝, 𝐧)` with `Σ dᵢ <= max_degree`, listing each degree
/// composition with all ordered set partitions of `{1..n}` it admits.
pub fn shapes_up_to(max_degree: u32) -> Vec<MultiShape> {
    let mut out = Vec::new();
    for total in 1..=max_degree {
        for c in 1..=total as usize {
            for degrees in compositions(total, c) {
                for n in c as u32..=total {
                    for sets in ordered_set_partitions(n, c) {
                        if sets.iter().zip(&degrees).all(|(s, &d)| s.len() as u32 <= d) {
                            out.push(MultiShape { degrees: degrees.clone(), marking_sets: sets });
                        }
                    }
                }
            }
        }
    }
    out
}

/// Ordered set partitions of `{1..n}` into `blocks` nonempty blocks.
pub fn ordered_set_partitions(n: u32, blocks: usize) -> Vec<Vec<Vec<u32>>> {
    fn rec(next: u32, n: u32, cur: &mut Vec<Vec<u32>>, out: &mut Vec<Vec<Vec<u32>>>) {
        if next > n {
            if cur.iter().all(|b| !b.is_empty()) {
                out.push(cur.clone());
            }
            return;
        }
        for b in 0..cur.len() {
            cur[b].push(next);
            rec(next + 1, n, cur, out);
            cur[b].pop();
        }
    }
    let mut out = Vec::new();
    if blocks == 0 {
        return out;
    }
    rec(1, n, &mut vec![Vec::new(); blocks], &mut out);
    out
}

/// A multi-component POP: one POP per component of a [`MultiShape`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MultiPop {
    components: Vec<Pop>,
    marking_sets: Vec<Vec<u32>>,
}

impl MultiPop {
    pub fn new(shape: &MultiShape, components: Vec<Pop>) -> Result<Self> {
        if components.len() != shape.components() {
            return Err(Error::InvalidShape("component count mismatch".into()));
        }
        for (i, (p, set)) in components.iter().zip(shape.marking_sets()).enumerate() {
            if p.degree() != shape.degrees()[i] || p.order() != set.len() {
                return Err(Error::InvalidShape(format!("component {} has the wrong shape", i + 1)));
            }
        }
        Ok(MultiPop { components, marking_sets: shape.marking_sets().to_vec() })
    }

    pub fn components(&self) -> &[Pop] {
        &self.components
    }

    pub fn marking_sets(&self) -> &[Vec<u32>] {
        &self.marking_sets
    }

    pub fn length(&self) -> usize {
        self.components.iter().map(Pop::length).sum()
    }

    pub fn degree(&self) -> u32 {
        self.components.iter().map(Pop::degree).sum()
    }

    fn same_shape(&self, other: &MultiPop) -> bool {
        self.marking_sets == other.marking_sets
            && self.components.len() == other.components.len()
            && self.components.iter().zip(&other.components).all(|(a, b)| a.same_shape(b))
    }
}

impl PartialOrd for MultiPop {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MultiPop {
    fn cmp(&self, other: &Self) -> Ordering {
        self.components.cmp(&other.components).then_with(|| self.marking_sets.cmp(&other.marking_sets))
    }
}

impl fmt::Display for MultiPop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps: Vec<String> = self.components.iter().map(Pop::to_string).collect();
        write!(f, "[{}]", comps.join(";"))
    }
}

/// Componentwise precedence resolved lexicographically, component 1 first.
pub fn compare_multi(p: &MultiPop, q: &MultiPop) -> Result<Ordering> {
    if !p.same_shape(q) {
        return Err(Error::IncomparableShapes("multi-component shapes differ".into()));
    }
    Ok(p.cmp(q))
}

/// The set `Π(𝐝, 𝐧, k)` in product-lexicographic order.
pub fn enumerate_pop_multi(shape: &MultiShape, k: LengthBound) -> Result<Vec<MultiPop>> {
    let factors = shape
        .degrees()
        .iter()
        .zip(shape.orders())
        .map(|(&d, n)| enumerate_pop(d, n, LengthBound::Infinite))
        .collect::<Result<Vec<_>>>()?;
    let min_len = k.min_length(shape.total_degree()) as usize;
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(factors.len());
    product_rec(&factors, &mut cur, &mut |comps: &[Pop]| {
        if comps.iter().map(Pop::length).sum::<usize>() >= min_len {
            out.push(MultiPop { components: comps.to_vec(), marking_sets: shape.marking_sets().to_vec() });
        }
    });
    Ok(out)
}

fn product_rec(factors: &[Vec<Pop>], cur: &mut Vec<Pop>, emit: &mut impl FnMut(&[Pop])) {
    if cur.len() == factors.len() {
        emit(cur);
        return;
    }
    for p in &factors[cur.len()] {
        cur.push(p.clone());
        product_rec(factors, cur, emit);
        cur.pop();
    }
}
