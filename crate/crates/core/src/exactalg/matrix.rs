use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{parse_rational, Rational};
use crate::error::{Error, Result};

/// Square dense rational matrix whose rows and columns share one ordered index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexedMatrix<I> {
    index: Vec<I>,
    entries: Vec<Rational>,
}

impl<I> IndexedMatrix<I> {
    pub fn from_rows(index: Vec<I>, rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = index.len();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::IncompatibleIndices);
        }
        Ok(IndexedMatrix { index, entries: rows.into_iter().flatten().collect() })
    }

    pub fn identity(index: Vec<I>) -> Self {
        let n = index.len();
        let mut entries = vec![Rational::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = Rational::one();
        }
        IndexedMatrix { index, entries }
    }

    pub fn dim(&self) -> usize {
        self.index.len()
    }

    pub fn index(&self) -> &[I] {
        &self.index
    }

    pub fn get(&self, row: usize, col: usize) -> &Rational {
        &self.entries[row * self.dim() + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Rational) {
        let n = self.dim();
        self.entries[row * n + col] = value;
    }

    pub fn row(&self, row: usize) -> &[Rational] {
        let n = self.dim();
        &self.entries[row * n..(row + 1) * n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rational]> {
        self.entries.chunks(self.dim().max(1)).take(self.dim())
    }

    pub fn transpose(&self) -> Self
    where
        I: Clone,
    {
        let n = self.dim();
        let mut entries = Vec::with_capacity(n * n);
        for c in 0..n {
            for r in 0..n {
                entries.push(self.get(r, c).clone());
            }
        }
        IndexedMatrix { index: self.index.clone(), entries }
    }

    /// The principal submatrix on the given positions, in the given order.
    pub fn submatrix(&self, positions: &[usize]) -> Self
    where
        I: Clone,
    {
        let index = positions.iter().map(|&p| self.index[p].clone()).collect();
        let mut entries = Vec::with_capacity(positions.len() * positions.len());
        for &r in positions {
            for &c in positions {
                entries.push(self.get(r, c).clone());
            }
        }
        IndexedMatrix { index, entries }
    }

    pub fn scale_rows(&self, factors: &[Rational]) -> Result<Self>
    where
        I: Clone,
    {
        if factors.len() != self.dim() {
            return Err(Error::IncompatibleIndices);
        }
        let n = self.dim();
        let entries = self.entries.iter().enumerate().map(|(k, v)| v * &factors[k / n]).collect();
        Ok(IndexedMatrix { index: self.index.clone(), entries })
    }

    pub fn scale_cols(&self, factors: &[Rational]) -> Result<Self>
    where
        I: Clone,
    {
        if factors.len() != self.dim() {
            return Err(Error::IncompatibleIndices);
        }
        let n = self.dim();
        let entries = self.entries.iter().enumerate().map(|(k, v)| v * &factors[k % n]).collect();
        Ok(IndexedMatrix { index: self.index.clone(), entries })
    }

    /// Solves `self = other · diag(s)` for the column scaling `s`. Returns
    /// `None` when no such scaling exists; a column of `other` that is
    /// entirely zero must also be zero in `self` and gets scale 1.
    pub fn column_scaling_from(&self, other: &Self) -> Option<Vec<Rational>> {
        if self.dim() != other.dim() {
            return None;
        }
        let n = self.dim();
        let mut scales = Vec::with_capacity(n);
        for c in 0..n {
            let pivot = (0..n).find(|&r| !other.get(r, c).is_zero());
            let s = match pivot {
                Some(r) => self.get(r, c) / other.get(r, c),
                None => Rational::one(),
            };
            if (0..n).any(|r| *self.get(r, c) != other.get(r, c) * &s) {
                return None;
            }
            scales.push(s);
        }
        Some(scales)
    }

    /// First `(row, col)` in row-major order where the matrix fails to be
    /// upper triangular with unit diagonal.
    pub fn unit_upper_violation(&self) -> Option<(usize, usize)> {
        let n = self.dim();
        for r in 0..n {
            for c in 0..=r {
                let v = self.get(r, c);
                let ok = if r == c { v.is_one() } else { v.is_zero() };
                if !ok {
                    return Some((r, c));
                }
            }
        }
        None
    }

    pub fn is_unit_upper_triangular(&self) -> bool {
        self.unit_upper_violation().is_none()
    }

    /// Determinant by fraction-free (Bareiss) elimination on the integer
    /// matrix obtained by clearing each row's denominators.
    pub fn determinant(&self) -> Rational {
        let n = self.dim();
        if n == 0 {
            return Rational::one();
        }
        let mut scale = BigInt::one();
        let mut a: Vec<Vec<BigInt>> = self
            .rows()
            .map(|row| {
                let l = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
                scale *= &l;
                row.iter().map(|v| (v * Rational::from_integer(l.clone())).to_integer()).collect()
            })
            .collect();
        let det = bareiss(&mut a);
        Rational::new(det, scale)
    }

    pub fn entries_as_strings(&self) -> Vec<Vec<String>> {
        self.rows().map(|r| r.iter().map(|v| v.to_string()).collect()).collect()
    }
}

fn bareiss(a: &mut [Vec<BigInt>]) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

impl<I: Sync + Send> IndexedMatrix<I> {
    /// Builds the matrix entry by entry; rows are filled in parallel.
    pub fn from_fn<F>(index: Vec<I>, entry: F) -> Self
    where
        F: Fn(&I, &I) -> Rational + Sync,
    {
        let entries: Vec<Rational> =
            index.par_iter().flat_map_iter(|r| index.iter().map(|c| entry(r, c)).collect::<Vec<_>>()).collect();
        IndexedMatrix { index, entries }
    }

    pub fn multiply(&self, other: &Self) -> Result<Self>
    where
        I: PartialEq + Clone,
    {
        if self.index != other.index {
            return Err(Error::IncompatibleIndices);
        }
        let n = self.dim();
        let entries: Vec<Rational> = (0..n)
            .into_par_iter()
            .flat_map_iter(|r| {
                let mut acc = vec![Rational::zero(); n];
                for (k, a) in self.row(r).iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (c, b) in other.row(k).iter().enumerate() {
                        if !b.is_zero() {
                            acc[c] += a * b;
                        }
                    }
                }
                acc
            })
            .collect();
        Ok(IndexedMatrix { index: self.index.clone(), entries })
    }
}

impl<I: Serialize> IndexedMatrix<I> {
    /// CSV body with one `# position: index-json` legend line per index entry.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (i, idx) in self.index.iter().enumerate() {
            let json = serde_json::to_string(idx).unwrap_or_default();
            let _ = writeln!(out, "# {i}: {json}");
        }
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr<I> {
    index: Vec<I>,
    entries: Vec<Vec<String>>,
}

impl<I: Serialize + Clone> Serialize for IndexedMatrix<I> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixRepr { index: self.index.clone(), entries: self.entries_as_strings() }.serialize(serializer)
    }
}

impl<'de, I: DeserializeOwned> Deserialize<'de> for IndexedMatrix<I> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = MatrixRepr::<I>::deserialize(deserializer)?;
        let rows = repr
            .entries
            .iter()
            .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        IndexedMatrix::from_rows(repr.index, rows).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat};

    fn m(rows: Vec<Vec<Rational>>) -> IndexedMatrix<usize> {
        let n = rows.len();
        IndexedMatrix::from_rows((0..n).collect(), rows).unwrap()
    }

    fn brute_det(a: &[Vec<Rational>]) -> Rational {
        // Laplace expansion along the first row
        let n = a.len();
        if n == 0 {
            return int(1);
        }
        let mut total = int(0);
        for c in 0..n {
            let minor: Vec<Vec<Rational>> = a[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, v)| v.clone()).collect())
                .collect();
            let term = &a[0][c] * brute_det(&minor);
            if c % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }

    #[test]
    fn worked_product() {
        let b = m(vec![vec![int(1), int(0)], vec![int(2), int(-2)]]);
        let a = m(vec![vec![int(1), int(1)], vec![int(1), rat(1, 2)]]);
        let c = b.multiply(&a).unwrap();
        assert_eq!(c, m(vec![vec![int(1), int(1)], vec![int(0), int(1)]]));
        assert!(c.is_unit_upper_triangular());
        assert!(!a.is_unit_upper_triangular());
        assert_eq!(a.unit_upper_violation(), Some((1, 0)));
    }

    #[test]
    fn identity_determinant() {
        for n in 0..5 {
            assert_eq!(IndexedMatrix::identity((0..n).collect::<Vec<_>>()).determinant(), int(1));
        }
    }

    #[test]
    fn determinant_matches_laplace() {
        let rows = vec![
            vec![rat(1, 2), int(3), int(0), rat(-2, 3)],
            vec![int(0), int(0), int(5), int(1)],
            vec![int(2), rat(1, 7), int(1), int(0)],
            vec![int(-1), int(4), rat(3, 2), int(2)],
        ];
        assert_eq!(m(rows.clone()).determinant(), brute_det(&rows));
        let singular = vec![vec![int(1), int(2)], vec![rat(1, 2), int(1)]];
        assert_eq!(m(singular).determinant(), int(0));
    }

    #[test]
    fn mismatched_index() {
        let a = IndexedMatrix::identity(vec![0usize, 1]);
        let b = IndexedMatrix::identity(vec![1usize, 0]);
        assert_eq!(a.multiply(&b), Err(Error::IncompatibleIndices));
        assert_eq!(
            IndexedMatrix::<usize>::from_rows(vec![0], vec![vec![int(1), int(2)]]),
            Err(Error::IncompatibleIndices)
        );
    }

    #[test]
    fn column_scaling() {
        let a = m(vec![vec![int(1), int(2)], vec![int(3), int(0)]]);
        let s = vec![rat(1, 2), int(-3)];
        let b = a.scale_cols(&s).unwrap();
        assert_eq!(b.column_scaling_from(&a), Some(s));
        let mut c = b.clone();
        c.set(1, 1, int(1));
        assert_eq!(c.column_scaling_from(&a), None);
    }

    #[test]
    fn json_and_csv() {
        let a = m(vec![vec![int(1), rat(-1, 2)], vec![int(0), int(3)]]);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"index":[0,1],"entries":[["1","-1/2"],["0","3"]]}"#);
        let back: IndexedMatrix<usize> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
        assert_eq!(a.to_csv(), "# 0: 0\n# 1: 1\n1,-1/2\n0,3\n");
    }
}
