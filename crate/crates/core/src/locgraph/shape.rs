use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::Partition;

/// Discrete data of a moduli space of stable relative maps with a possibly
/// disconnected domain: genera, marking distribution, degrees and the
/// ramification profiles over the relative points.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ShapeRepr", into = "ShapeRepr")]
pub struct RelativeShape {
    genera: Vec<u32>,
    marking_sets: Vec<Vec<u32>>,
    degrees: Vec<u32>,
    profiles: Vec<Vec<Partition>>,
    parameterized: bool,
    extra_markings: u32,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct ShapeRepr {
    genera: Vec<u32>,
    marking_sets: Vec<Vec<u32>>,
    degrees: Vec<u32>,
    profiles: Vec<Vec<Partition>>,
    #[serde(default = "default_true")]
    parameterized: bool,
    #[serde(default)]
    extra_markings: u32,
}

fn default_true() -> bool {
    true
}

impl TryFrom<ShapeRepr> for RelativeShape {
    type Error = Error;

    fn try_from(r: ShapeRepr) -> Result<Self> {
        RelativeShape::new(r.genera, r.marking_sets, r.degrees, r.profiles, r.parameterized, r.extra_markings)
    }
}

impl From<RelativeShape> for ShapeRepr {
    fn from(s: RelativeShape) -> Self {
        ShapeRepr {
            genera: s.genera,
            marking_sets: s.marking_sets,
            degrees: s.degrees,
            profiles: s.profiles,
            parameterized: s.parameterized,
            extra_markings: s.extra_markings,
        }
    }
}

impl RelativeShape {
    /// `profiles[j][i]` is the part of profile `j` over component `i`.
    /// Marking blocks may be empty but must together be `{1..n}`.
    pub fn new(
        genera: Vec<u32>,
        mut marking_sets: Vec<Vec<u32>>,
        degrees: Vec<u32>,
        profiles: Vec<Vec<Partition>>,
        parameterized: bool,
        extra_markings: u32,
    ) -> Result<Self> {
        let c = degrees.len();
        if c == 0 {
            return Err(Error::InvalidShape("at least one component is required".into()));
        }
        if genera.len() != c || marking_sets.len() != c {
            return Err(Error::InvalidShape(format!(
                "{} degrees, {} genera and {} marking blocks",
                c,
                genera.len(),
                marking_sets.len()
            )));
        }
        if degrees.contains(&0) {
            return Err(Error::InvalidShape("component degrees must be positive".into()));
        }
        for block in &mut marking_sets {
            block.sort_unstable();
        }
        let all: BTreeSet<u32> = marking_sets.iter().flatten().copied().collect();
        let n = marking_sets.iter().map(Vec::len).sum::<usize>();
        if all.len() != n || all.iter().copied().ne(1..=n as u32) {
            return Err(Error::InvalidShape("marking blocks must partition {1..n}".into()));
        }
        let min_m = if parameterized { 1 } else { 2 };
        if profiles.len() < min_m {
            return Err(Error::InvalidShape(format!("{} profiles given, at least {min_m} required", profiles.len())));
        }
        for (j, mu) in profiles.iter().enumerate() {
            if mu.len() != c {
                return Err(Error::InvalidShape(format!("profile {j} has {} blocks, expected {c}", mu.len())));
            }
            for (i, part) in mu.iter().enumerate() {
                if part.size() != degrees[i] {
                    return Err(Error::InvalidShape(format!(
                        "profile {j} over component {i} is {part}, not a partition of {}",
                        degrees[i]
                    )));
                }
            }
        }
        Ok(RelativeShape { genera, marking_sets, degrees, profiles, parameterized, extra_markings })
    }

    /// Connected shape with markings `{1..n}`.
    pub fn connected(genus: u32, markings: u32, degree: u32, profiles: Vec<Partition>) -> Result<Self> {
        let profiles = profiles.into_iter().map(|p| vec![p]).collect();
        RelativeShape::new(vec![genus], vec![(1..=markings).collect()], vec![degree], profiles, true, 0)
    }

    pub fn with_parameterized(mut self, parameterized: bool) -> Result<Self> {
        self.parameterized = parameterized;
        RelativeShape::try_from(ShapeRepr::from(self))
    }

    pub fn with_extra_markings(mut self, extra: u32) -> Self {
        self.extra_markings = extra;
        self
    }

    pub fn genera(&self) -> &[u32] {
        &self.genera
    }

    pub fn marking_sets(&self) -> &[Vec<u32>] {
        &self.marking_sets
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn profiles(&self) -> &[Vec<Partition>] {
        &self.profiles
    }

    pub fn parameterized(&self) -> bool {
        self.parameterized
    }

    pub fn extra_markings(&self) -> u32 {
        self.extra_markings
    }

    pub fn components(&self) -> usize {
        self.degrees.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.degrees.iter().sum()
    }

    pub fn total_genus(&self) -> u32 {
        self.genera.iter().sum()
    }

    /// Number of vertex markings carried by graphs.
    pub fn markings(&self) -> u32 {
        self.marking_sets.iter().map(|b| b.len() as u32).sum()
    }

    /// Component carrying marking `label`.
    pub fn component_of_marking(&self, label: u32) -> Option<usize> {
        self.marking_sets.iter().position(|b| b.contains(&label))
    }

    /// Length of profile `j` summed over components.
    pub fn profile_length(&self, j: usize) -> usize {
        self.profiles[j].iter().map(Partition::len).sum()
    }

    /// The arithmetic genus `Σ gᵢ − c + 1`.
    pub fn arithmetic_genus(&self) -> i64 {
        self.total_genus() as i64 - self.components() as i64 + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn validation() {
        assert!(RelativeShape::connected(0, 0, 1, vec![p(&[1])]).is_ok());
        assert!(RelativeShape::connected(0, 0, 2, vec![p(&[1])]).is_err());
        assert!(RelativeShape::connected(0, 0, 1, vec![]).is_err());
        let s = RelativeShape::connected(0, 0, 1, vec![p(&[1])]).unwrap();
        assert!(s.clone().with_parameterized(false).is_err());
        let two = RelativeShape::connected(0, 0, 1, vec![p(&[1]), p(&[1])]).unwrap();
        assert!(two.with_parameterized(false).is_ok());
        assert!(RelativeShape::new(
            vec![0, 0],
            vec![vec![2], vec![]],
            vec![1, 1],
            vec![vec![p(&[1]), p(&[1])]],
            true,
            0
        )
        .is_err());
        assert!(RelativeShape::new(
            vec![0, 1],
            vec![vec![], vec![1]],
            vec![1, 2],
            vec![vec![p(&[1]), p(&[1, 1])]],
            true,
            0
        )
        .is_ok());
    }

    #[test]
    fn json() {
        let s =
            RelativeShape::new(vec![1, 0], vec![vec![1], vec![2]], vec![2, 1], vec![vec![p(&[2]), p(&[1])]], true, 1)
                .unwrap();
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(
            j,
            r#"{"genera":[1,0],"markingSets":[[1],[2]],"degrees":[2,1],"profiles":[[[2],[1]]],"parameterized":true,"extraMarkings":1}"#
        );
        let back: RelativeShape = serde_json::from_str(&j).unwrap();
        assert_eq!(back, s);
        assert_eq!(s.arithmetic_genus(), 0);
        assert_eq!(s.profile_length(0), 2);
    }
}
