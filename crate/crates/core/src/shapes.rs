//! Compositions, partitions and skew shapes.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A strong composition. Ordered by size, then lexicographically on parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Parse(format!(
                "composition parts must be positive: {parts:?}"
            )));
        }
        Ok(Composition(parts))
    }

    pub(crate) fn from_parts_unchecked(parts: Vec<usize>) -> Self {
        debug_assert!(parts.iter().all(|&p| p > 0));
        Composition(parts)
    }

    pub fn empty() -> Self {
        Composition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<usize> {
        self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_part(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// The partition obtained by sorting the parts, written α̃.
    pub fn sort_to_partition(&self) -> Partition {
        let mut parts = self.0.clone();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    /// Partial sums of the parts, excluding the total.
    pub fn to_set(&self) -> BTreeSet<usize> {
        let mut acc = 0;
        let mut set = BTreeSet::new();
        for &p in &self.0[..self.0.len().saturating_sub(1)] {
            acc += p;
            set.insert(acc);
        }
        set
    }

    /// Inverse of [`Composition::to_set`] for compositions of `n`.
    pub fn from_set(set: &BTreeSet<usize>, n: usize) -> Result<Self> {
        if let Some(&bad) = set.iter().find(|&&s| s == 0 || s >= n) {
            return Err(Error::Precondition(format!(
                "{bad} is not in [1, {}]",
                n.saturating_sub(1)
            )));
        }
        if n == 0 {
            return Ok(Composition::empty());
        }
        let mut parts = Vec::with_capacity(set.len() + 1);
        let mut prev = 0;
        for &s in set.iter().chain(std::iter::once(&n)) {
            parts.push(s - prev);
            prev = s;
        }
        Ok(Composition(parts))
    }

    /// True iff `coarser` is obtained from `self` by summing consecutive runs of parts.
    pub fn refines(&self, coarser: &Composition) -> bool {
        self.size() == coarser.size() && coarser.to_set().is_subset(&self.to_set())
    }

    pub fn concat(&self, other: &Composition) -> Composition {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        Composition(parts)
    }

    /// All compositions of `n` in canonical (lexicographic) order.
    pub fn all_of_size(n: usize) -> Vec<Composition> {
        fn go(rest: usize, prefix: &mut Vec<usize>, out: &mut Vec<Composition>) {
            if rest == 0 {
                out.push(Composition(prefix.clone()));
                return;
            }
            for first in 1..=rest {
                prefix.push(first);
                go(rest - first, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        go(n, &mut Vec::new(), &mut out);
        out
    }

    /// Covers of `self` in the reverse composition poset: prepend a 1, or add 1
    /// to part k when no earlier part equals it.
    pub fn lc_covers(&self) -> Vec<Composition> {
        let mut out = Vec::with_capacity(self.0.len() + 1);
        let mut prepended = Vec::with_capacity(self.0.len() + 1);
        prepended.push(1);
        prepended.extend_from_slice(&self.0);
        out.push(Composition(prepended));
        for k in 0..self.0.len() {
            if self.0[..k].contains(&self.0[k]) {
                continue;
            }
            let mut parts = self.0.clone();
            parts[k] += 1;
            out.push(Composition(parts));
        }
        out
    }

    /// True iff `self ≤ upper` in the reverse composition poset.
    pub fn lc_leq(&self, upper: &Composition) -> bool {
        // Covers only grow parts or prepend new ones, so every intermediate
        // composition sits bottom-aligned inside `upper`.
        let fits = |c: &Composition| {
            c.len() <= upper.len() && {
                let offset = upper.len() - c.len();
                c.0.iter().zip(&upper.0[offset..]).all(|(a, b)| a <= b)
            }
        };
        if !fits(self) {
            return false;
        }
        let mut seen = HashSet::new();
        let mut frontier = vec![self.clone()];
        while let Some(c) = frontier.pop() {
            if &c == upper {
                return true;
            }
            for next in c.lc_covers() {
                if fits(&next) && seen.insert(next.clone()) {
                    frontier.push(next);
                }
            }
        }
        false
    }
}

impl Ord for Composition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Composition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn fmt_parts(parts: &[usize], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(f, "(")?;
    for (k, p) in parts.iter().enumerate() {
        if k > 0 {
            write!(f, ",")?;
        }
        write!(f, "{p}")?;
    }
    write!(f, ")")
}

fn parse_parts(s: &str) -> Result<Vec<usize>> {
    let t = s.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .or_else(|| t.strip_prefix('[').and_then(|r| r.strip_suffix(']')))
        .unwrap_or(t)
        .trim();
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("bad part {p:?} in {s:?}: {e}")))
        })
        .collect()
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_parts(&self.0, f)
    }
}

impl FromStr for Composition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Composition::new(parse_parts(s)?)
    }
}

impl Serialize for Composition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Composition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(d)?;
        Composition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// A partition, parts weakly decreasing.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!(
                "not a partition (positive, weakly decreasing): {parts:?}"
            )));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Length of row `row` (1-based), 0 beyond the last row.
    pub fn row_len(&self, row: usize) -> usize {
        if row == 0 {
            return usize::MAX;
        }
        self.0.get(row - 1).copied().unwrap_or(0)
    }

    /// Number of cells in column `col` (1-based).
    pub fn column_height(&self, col: usize) -> usize {
        self.0.iter().take_while(|&&p| p >= col).count()
    }

    pub fn contains_cell(&self, row: usize, col: usize) -> bool {
        row >= 1 && col >= 1 && self.row_len(row) >= col
    }

    pub fn contains(&self, inner: &Partition) -> bool {
        inner.len() <= self.len() && inner.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    /// Row of the addable node in column `col`, if there is one.
    pub fn addable_row(&self, col: usize) -> Option<usize> {
        if col == 0 {
            return None;
        }
        let h = self.column_height(col);
        if col == 1 || self.column_height(col - 1) > h {
            Some(h + 1)
        } else {
            None
        }
    }

    /// Row of the removable node in column `col`, if there is one.
    pub fn removable_row(&self, col: usize) -> Option<usize> {
        if col == 0 {
            return None;
        }
        let h = self.column_height(col);
        (h > 0 && self.row_len(h) == col).then_some(h)
    }

    pub fn addable_nodes(&self) -> Vec<CellCoord> {
        (1..=self.0.first().copied().unwrap_or(0) + 1)
            .filter_map(|c| self.addable_row(c).map(|r| CellCoord::french(r, c)))
            .collect()
    }

    pub fn removable_nodes(&self) -> Vec<CellCoord> {
        (1..=self.0.first().copied().unwrap_or(0))
            .filter_map(|c| self.removable_row(c).map(|r| CellCoord::french(r, c)))
            .collect()
    }

    pub(crate) fn with_cell_added(&self, row: usize) -> Partition {
        let mut parts = self.0.clone();
        if row > parts.len() {
            parts.push(1);
        } else {
            parts[row - 1] += 1;
        }
        Partition(parts)
    }

    pub(crate) fn with_cell_removed(&self, row: usize) -> Partition {
        let mut parts = self.0.clone();
        parts[row - 1] -= 1;
        if parts[row - 1] == 0 {
            parts.pop();
        }
        Partition(parts)
    }

    pub fn as_composition(&self) -> Composition {
        Composition(self.0.clone())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_parts(&self.0, f)
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Partition::new(parse_parts(s)?)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(d)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// λ/μ with μ ⊆ λ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SkewPartitionShape {
    pub outer: Partition,
    pub inner: Partition,
}

impl SkewPartitionShape {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self> {
        if !outer.contains(&inner) {
            return Err(Error::Malformed(format!("{inner} is not contained in {outer}")));
        }
        Ok(SkewPartitionShape { outer, inner })
    }

    pub fn size(&self) -> usize {
        self.outer.size() - self.inner.size()
    }
}

/// α//β with β ≤ α in the reverse composition poset; β sits in the bottom rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SkewCompositionShape {
    pub outer: Composition,
    pub inner: Composition,
}

impl SkewCompositionShape {
    pub fn new(outer: Composition, inner: Composition) -> Result<Self> {
        if !inner.lc_leq(&outer) {
            return Err(Error::Malformed(format!(
                "{inner} is not below {outer} in the reverse composition poset"
            )));
        }
        Ok(SkewCompositionShape { outer, inner })
    }

    pub fn straight(outer: Composition) -> Self {
        SkewCompositionShape {
            outer,
            inner: Composition::empty(),
        }
    }

    pub fn size(&self) -> usize {
        self.outer.size() - self.inner.size()
    }

    /// Number of inner cells in row `row` (0-based, top-down).
    pub fn inner_len(&self, row: usize) -> usize {
        let offset = self.outer.len() - self.inner.len();
        if row < offset {
            0
        } else {
            self.inner.parts()[row - offset]
        }
    }
}

impl fmt::Display for SkewCompositionShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.is_empty() {
            write!(f, "{}", self.outer)
        } else {
            write!(f, "{}//{}", self.outer, self.inner)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// Rows counted bottom-up, as for reverse tableaux.
    French,
    /// Rows counted top-down, as for reverse composition tableaux.
    English,
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::French => "french",
            Convention::English => "english",
        })
    }
}

/// A 1-based cell position tagged with the row convention it is expressed in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CellCoord {
    pub row: usize,
    pub col: usize,
    pub convention: Convention,
}

impl CellCoord {
    pub fn french(row: usize, col: usize) -> Self {
        CellCoord { row, col, convention: Convention::French }
    }

    pub fn english(row: usize, col: usize) -> Self {
        CellCoord { row, col, convention: Convention::English }
    }
}

impl fmt::Display for CellCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}
