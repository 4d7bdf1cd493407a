use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{check_range, Error, Result};

/// Largest weight accepted by [`partitions_of`].
pub const MAX_WEIGHT: u32 = 40;

/// An integer partition with weakly decreasing positive parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// The partition of zero.
    pub fn empty() -> Self {
        Partition::default()
    }

    /// Validates that `parts` are positive and weakly decreasing.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Domain("partition parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain(format!("parts {parts:?} are not non-increasing")));
        }
        Ok(Partition { parts })
    }

    /// Sorts arbitrary positive parts into a partition.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `|mu| - l(mu)`.
    pub fn order(&self) -> u32 {
        self.weight() - self.parts.len() as u32
    }

    /// `(part, multiplicity)` pairs in decreasing part order.
    pub fn multiplicities(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// The hook `[r, 1^l]`.
    pub fn hook(r: u32, l: u32) -> Self {
        assert!(r >= 1, "hook arm must be positive");
        let mut parts = vec![r];
        parts.extend(std::iter::repeat(1).take(l as usize));
        Partition { parts }
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

/// Restriction on the number of parts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum LengthConstraint {
    #[default]
    Any,
    AtMost(usize),
    Exactly(usize),
}

impl LengthConstraint {
    fn max_len(self) -> usize {
        match self {
            LengthConstraint::Any => usize::MAX,
            LengthConstraint::AtMost(l) | LengthConstraint::Exactly(l) => l,
        }
    }

    fn admits(self, len: usize) -> bool {
        match self {
            LengthConstraint::Any => true,
            LengthConstraint::AtMost(l) => len <= l,
            LengthConstraint::Exactly(l) => len == l,
        }
    }
}

/// All partitions of `j` meeting `constraint`, in reverse lexicographic order
/// (`[4], [3,1], [2,2], [2,1,1], [1,1,1,1]` for `j = 4`).
pub fn partitions_of(j: u32, constraint: LengthConstraint) -> Result<Vec<Partition>> {
    check_range("j", j, 0, MAX_WEIGHT)?;
    let mut out = Vec::new();
    let mut current = Vec::new();
    descend(j, j, constraint, &mut current, &mut out);
    Ok(out)
}

fn descend(
    remaining: u32,
    max_part: u32,
    constraint: LengthConstraint,
    current: &mut Vec<u32>,
    out: &mut Vec<Partition>,
) {
    if remaining == 0 {
        if constraint.admits(current.len()) {
            out.push(Partition { parts: current.clone() });
        }
        return;
    }
    let slots = constraint.max_len().saturating_sub(current.len());
    if slots == 0 {
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        // the remaining slots cannot hold more than `part` each
        if (part as u64).saturating_mul(slots as u64) < remaining as u64 {
            break;
        }
        current.push(part);
        descend(remaining - part, part, constraint, current, out);
        current.pop();
    }
}
