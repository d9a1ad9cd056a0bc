//! Reverse tableaux (French rows, bottom-up) and reverse composition tableaux
//! (English rows, top-down), straight or skew.
//!
//! Rows are stored as `Vec<Option<u32>>`; `None` marks a cell of the inner shape.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::shapes::{CellCoord, Composition, Convention, Partition, SkewCompositionShape, SkewPartitionShape};

pub type Row = Vec<Option<u32>>;

/// Default bound on the number of cells `enumerate_srct` accepts.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Slot {
    Outside,
    Inner,
    Entry(u32),
}

pub(crate) fn slot(rows: &[Row], r: usize, c: usize) -> Slot {
    match rows.get(r).and_then(|row| row.get(c)) {
        None => Slot::Outside,
        Some(None) => Slot::Inner,
        Some(Some(v)) => Slot::Entry(*v),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    RowNotWeaklyDecreasing,
    ColumnNotStrictlyDecreasing,
    FirstColumnNotIncreasing,
    TripleRule,
}

/// The first failed condition found by a validator, with the cells involved.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub rule: Rule,
    pub cells: Vec<CellCoord>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.rule {
            Rule::RowNotWeaklyDecreasing => "row not weakly decreasing",
            Rule::ColumnNotStrictlyDecreasing => "column not strictly decreasing",
            Rule::FirstColumnNotIncreasing => "first column not strictly increasing",
            Rule::TripleRule => "triple rule violation",
        };
        write!(f, "{what} at")?;
        for c in &self.cells {
            write!(f, " {c}")?;
        }
        write!(f, " ({} rows)", self.cells.first().map_or(Convention::French, |c| c.convention))
    }
}

fn check_row_lengths(lengths: &[usize], inner_lens: &[usize], rows: &[Row]) -> Result<()> {
    if rows.len() != lengths.len() {
        return Err(Error::Malformed(format!(
            "{} rows given for a shape with {} rows",
            rows.len(),
            lengths.len()
        )));
    }
    for (r, row) in rows.iter().enumerate() {
        if row.len() != lengths[r] {
            return Err(Error::Malformed(format!(
                "row {} has {} cells, shape says {}",
                r + 1,
                row.len(),
                lengths[r]
            )));
        }
        let k = inner_lens[r];
        if row[..k].iter().any(Option::is_some) || row[k..].iter().any(Option::is_none) {
            return Err(Error::Malformed(format!(
                "row {} must start with exactly {k} inner cells",
                r + 1
            )));
        }
        if row.iter().flatten().any(|&v| v == 0) {
            return Err(Error::Malformed("entries must be positive".into()));
        }
    }
    Ok(())
}

fn check_rows_decreasing(rows: &[Row], convention: Convention) -> Option<Violation> {
    for (r, row) in rows.iter().enumerate() {
        for c in 1..row.len() {
            if let (Some(a), Some(b)) = (row[c - 1], row[c]) {
                if a < b {
                    return Some(Violation {
                        rule: Rule::RowNotWeaklyDecreasing,
                        cells: vec![coord(convention, r, c - 1), coord(convention, r, c)],
                    });
                }
            }
        }
    }
    None
}

fn coord(convention: Convention, r: usize, c: usize) -> CellCoord {
    CellCoord { row: r + 1, col: c + 1, convention }
}

/// Checks the reverse-tableau conditions. `Ok(None)` means valid.
pub fn validate_ssrt(outer: &Partition, inner: &Partition, rows: &[Row]) -> Result<Option<Violation>> {
    SkewPartitionShape::new(outer.clone(), inner.clone())?;
    let inner_lens: Vec<usize> = (1..=outer.len()).map(|r| inner.row_len(r)).collect();
    check_row_lengths(outer.parts(), &inner_lens, rows)?;
    if let Some(v) = check_rows_decreasing(rows, Convention::French) {
        return Ok(Some(v));
    }
    for r in 1..rows.len() {
        for c in 0..rows[r].len() {
            if let (Slot::Entry(below), Slot::Entry(above)) = (slot(rows, r - 1, c), slot(rows, r, c)) {
                if below <= above {
                    return Ok(Some(Violation {
                        rule: Rule::ColumnNotStrictlyDecreasing,
                        cells: vec![coord(Convention::French, r - 1, c), coord(Convention::French, r, c)],
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// Checks the reverse-composition-tableau conditions. `Ok(None)` means valid.
pub fn validate_ssrct(outer: &Composition, inner: &Composition, rows: &[Row]) -> Result<Option<Violation>> {
    let shape = SkewCompositionShape::new(outer.clone(), inner.clone())?;
    let inner_lens: Vec<usize> = (0..outer.len()).map(|r| shape.inner_len(r)).collect();
    check_row_lengths(outer.parts(), &inner_lens, rows)?;
    Ok(ssrct_violation(rows))
}

fn ssrct_violation(rows: &[Row]) -> Option<Violation> {
    let e = Convention::English;
    if let Some(v) = check_rows_decreasing(rows, e) {
        return Some(v);
    }
    let mut last: Option<(usize, u32)> = None;
    for (r, row) in rows.iter().enumerate() {
        if let Some(Some(v)) = row.first() {
            if let Some((pr, pv)) = last {
                if pv >= *v {
                    return Some(Violation {
                        rule: Rule::FirstColumnNotIncreasing,
                        cells: vec![coord(e, pr, 0), coord(e, r, 0)],
                    });
                }
            }
            last = Some((r, *v));
        }
    }
    for j in 0..rows.len() {
        for k in 1..rows[j].len() {
            let Slot::Entry(z) = slot(rows, j, k) else { continue };
            for i in 0..j {
                let triggered = match slot(rows, i, k - 1) {
                    Slot::Inner => true,
                    Slot::Entry(x) => x >= z,
                    Slot::Outside => false,
                };
                if !triggered {
                    continue;
                }
                let fine = match slot(rows, i, k) {
                    Slot::Inner => true,
                    Slot::Entry(y) => y > z,
                    Slot::Outside => false,
                };
                if !fine {
                    return Some(Violation {
                        rule: Rule::TripleRule,
                        cells: vec![coord(e, i, k - 1), coord(e, i, k), coord(e, j, k)],
                    });
                }
            }
        }
    }
    None
}

fn column_word(rows: &[Row]) -> Vec<u32> {
    let width = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut word = Vec::new();
    for c in 0..width {
        let mut col: Vec<u32> = rows.iter().filter_map(|r| r.get(c).copied().flatten()).collect();
        col.sort_unstable();
        word.extend(col);
    }
    word
}

fn entries_are_standard(rows: &[Row]) -> bool {
    let mut seen: Vec<u32> = rows.iter().flatten().flatten().copied().collect();
    seen.sort_unstable();
    seen.iter().enumerate().all(|(k, &v)| v as usize == k + 1)
}

fn max_of(rows: &[Row]) -> u32 {
    rows.iter().flatten().flatten().copied().max().unwrap_or(0)
}

/// A semistandard reverse tableau: rows weakly decreasing, columns strictly
/// decreasing upwards. Row 1 is the bottom row.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "TableauJson", into = "TableauJson")]
pub struct Ssrt {
    shape: SkewPartitionShape,
    rows: Vec<Row>,
}

impl Ssrt {
    pub fn new(outer: Partition, inner: Partition, rows: Vec<Row>) -> Result<Self> {
        if let Some(v) = validate_ssrt(&outer, &inner, &rows)? {
            return Err(Error::Invalid(v));
        }
        Ok(Ssrt { shape: SkewPartitionShape { outer, inner }, rows })
    }

    /// A straight tableau from its rows, bottom row first.
    pub fn from_rows(rows: Vec<Vec<u32>>) -> Result<Self> {
        let outer = Partition::new(rows.iter().map(Vec::len).collect())?;
        Ssrt::new(outer, Partition::empty(), rows.into_iter().map(|r| r.into_iter().map(Some).collect()).collect())
    }

    /// Builds from rows where `None` marks inner cells, inferring both shapes.
    pub fn from_grid(rows: Vec<Row>) -> Result<Self> {
        let outer = Partition::new(rows.iter().map(Vec::len).collect())?;
        let inner_parts: Vec<usize> = rows
            .iter()
            .map(|r| r.iter().take_while(|x| x.is_none()).count())
            .take_while(|&k| k > 0)
            .collect();
        let inner = Partition::new(inner_parts)?;
        Ssrt::new(outer, inner, rows)
    }

    pub fn empty() -> Self {
        Ssrt { shape: SkewPartitionShape { outer: Partition::empty(), inner: Partition::empty() }, rows: Vec::new() }
    }

    pub fn shape(&self) -> &SkewPartitionShape {
        &self.shape
    }

    pub fn outer(&self) -> &Partition {
        &self.shape.outer
    }

    pub fn inner(&self) -> &Partition {
        &self.shape.inner
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn is_straight(&self) -> bool {
        self.shape.inner.is_empty()
    }

    /// Number of filled cells.
    pub fn size(&self) -> usize {
        self.shape.size()
    }

    pub fn max_entry(&self) -> u32 {
        max_of(&self.rows)
    }

    pub fn is_standard(&self) -> bool {
        entries_are_standard(&self.rows)
    }

    /// The entry at `at`; `Ok(None)` for an inner cell. Refuses English coordinates.
    pub fn entry(&self, at: CellCoord) -> Result<Option<u32>> {
        if at.convention != Convention::French {
            return Err(Error::Precondition(format!("{at} is an English coordinate; this tableau uses French rows")));
        }
        self.rows
            .get(at.row.wrapping_sub(1))
            .and_then(|r| r.get(at.col.wrapping_sub(1)))
            .copied()
            .ok_or_else(|| Error::Precondition(format!("{at} is outside the shape")))
    }

    /// Entries of each column, left to right, each in increasing order.
    pub fn column_reading_word(&self) -> Vec<u32> {
        column_word(&self.rows)
    }

    pub fn render(&self) -> String {
        render_rows(self.rows.iter().rev())
    }
}

/// A semistandard reverse composition tableau. Row 1 is the top row; the inner
/// shape occupies the bottom-left corner.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "TableauJson", into = "TableauJson")]
pub struct Ssrct {
    shape: SkewCompositionShape,
    rows: Vec<Row>,
}

impl Ssrct {
    pub fn new(outer: Composition, inner: Composition, rows: Vec<Row>) -> Result<Self> {
        if let Some(v) = validate_ssrct(&outer, &inner, &rows)? {
            return Err(Error::Invalid(v));
        }
        Ok(Ssrct { shape: SkewCompositionShape { outer, inner }, rows })
    }

    /// A straight tableau from its rows, top row first.
    pub fn from_rows(rows: Vec<Vec<u32>>) -> Result<Self> {
        let outer = Composition::new(rows.iter().map(Vec::len).collect())?;
        Ssrct::new(outer, Composition::empty(), rows.into_iter().map(|r| r.into_iter().map(Some).collect()).collect())
    }

    /// Builds from rows where `None` marks inner cells, inferring both shapes.
    /// The rows carrying inner cells must be the bottom rows.
    pub fn from_grid(rows: Vec<Row>) -> Result<Self> {
        let outer = Composition::new(rows.iter().map(Vec::len).collect())?;
        let lens: Vec<usize> = rows.iter().map(|r| r.iter().take_while(|x| x.is_none()).count()).collect();
        let start = lens.iter().position(|&k| k > 0).unwrap_or(lens.len());
        if lens[start..].contains(&0) {
            return Err(Error::Malformed("inner cells must occupy a block of bottom rows".into()));
        }
        let inner = Composition::new(lens[start..].to_vec())?;
        Ssrct::new(outer, inner, rows)
    }

    pub fn empty() -> Self {
        Ssrct { shape: SkewCompositionShape::straight(Composition::empty()), rows: Vec::new() }
    }

    pub fn shape(&self) -> &SkewCompositionShape {
        &self.shape
    }

    pub fn outer(&self) -> &Composition {
        &self.shape.outer
    }

    pub fn inner(&self) -> &Composition {
        &self.shape.inner
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn is_straight(&self) -> bool {
        self.shape.inner.is_empty()
    }

    pub fn size(&self) -> usize {
        self.shape.size()
    }

    pub fn max_entry(&self) -> u32 {
        max_of(&self.rows)
    }

    pub fn is_standard(&self) -> bool {
        entries_are_standard(&self.rows)
    }

    /// The entry at `at`; `Ok(None)` for an inner cell. Refuses French coordinates.
    pub fn entry(&self, at: CellCoord) -> Result<Option<u32>> {
        if at.convention != Convention::English {
            return Err(Error::Precondition(format!("{at} is a French coordinate; this tableau uses English rows")));
        }
        self.rows
            .get(at.row.wrapping_sub(1))
            .and_then(|r| r.get(at.col.wrapping_sub(1)))
            .copied()
            .ok_or_else(|| Error::Precondition(format!("{at} is outside the shape")))
    }

    pub fn column_reading_word(&self) -> Vec<u32> {
        column_word(&self.rows)
    }

    pub fn render(&self) -> String {
        render_rows(self.rows.iter())
    }

    /// Rows of a straight tableau as plain integers.
    pub fn straight_rows(&self) -> Option<Vec<Vec<u32>>> {
        self.rows.iter().map(|r| r.iter().copied().collect::<Option<Vec<u32>>>()).collect()
    }

    pub(crate) fn from_parts_unchecked(outer: Composition, inner: Composition, rows: Vec<Row>) -> Self {
        Ssrct { shape: SkewCompositionShape { outer, inner }, rows }
    }
}

fn render_rows<'a>(rows: impl Iterator<Item = &'a Row> + Clone) -> String {
    let width = rows.clone().flatten().flatten().map(|v| v.to_string().len()).max().unwrap_or(1);
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row
            .iter()
            .map(|x| match x {
                Some(v) => format!("{v:>width$}"),
                None => format!("{:>width$}", "•"),
            })
            .collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

impl fmt::Display for Ssrt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Display for Ssrct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Wire format shared by both tableau kinds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableauJson {
    pub convention: Convention,
    pub outer: Vec<usize>,
    #[serde(default)]
    pub inner: Vec<usize>,
    pub rows: Vec<Row>,
}

impl From<Ssrt> for TableauJson {
    fn from(t: Ssrt) -> Self {
        TableauJson {
            convention: Convention::French,
            outer: t.shape.outer.parts().to_vec(),
            inner: t.shape.inner.parts().to_vec(),
            rows: t.rows,
        }
    }
}

impl From<Ssrct> for TableauJson {
    fn from(t: Ssrct) -> Self {
        TableauJson {
            convention: Convention::English,
            outer: t.shape.outer.into_parts(),
            inner: t.shape.inner.into_parts(),
            rows: t.rows,
        }
    }
}

impl TryFrom<TableauJson> for Ssrt {
    type Error = Error;
    fn try_from(j: TableauJson) -> Result<Self> {
        if j.convention != Convention::French {
            return Err(Error::Parse("reverse tableaux use the french convention".into()));
        }
        Ssrt::new(Partition::new(j.outer)?, Partition::new(j.inner)?, j.rows)
    }
}

impl TryFrom<TableauJson> for Ssrct {
    type Error = Error;
    fn try_from(j: TableauJson) -> Result<Self> {
        if j.convention != Convention::English {
            return Err(Error::Parse("reverse composition tableaux use the english convention".into()));
        }
        Ssrct::new(Composition::new(j.outer)?, Composition::new(j.inner)?, j.rows)
    }
}

/// Either kind of tableau, dispatched on the `convention` field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyTableau {
    Reverse(Ssrt),
    Composition(Ssrct),
}

impl AnyTableau {
    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: TableauJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        match j.convention {
            Convention::French => Ok(AnyTableau::Reverse(j.try_into()?)),
            Convention::English => Ok(AnyTableau::Composition(j.try_into()?)),
        }
    }
}

/// Des(τ) = {i : i+1 lies in a column weakly right of i}, as a composition.
pub fn descent_composition(tau: &Ssrct) -> Result<Composition> {
    if !tau.is_straight() || !tau.is_standard() {
        return Err(Error::Precondition("descent composition needs a standard straight tableau".into()));
    }
    let n = tau.size();
    let mut column = vec![0usize; n + 1];
    for row in &tau.rows {
        for (c, v) in row.iter().enumerate() {
            column[v.expect("straight") as usize] = c;
        }
    }
    let des = (1..n).filter(|&i| column[i + 1] >= column[i]).collect();
    Composition::from_set(&des, n)
}

/// Row r holds the next α_r integers, placed right to left.
pub fn canonical_tableau(alpha: &Composition) -> Ssrct {
    let mut next = 0u32;
    let rows = alpha
        .parts()
        .iter()
        .map(|&p| {
            let row: Row = (1..=p as u32).rev().map(|k| Some(next + k)).collect();
            next += p as u32;
            row
        })
        .collect();
    Ssrct::from_parts_unchecked(alpha.clone(), Composition::empty(), rows)
}

/// All standard fillings of a (skew) composition shape, with the default limit.
pub fn enumerate_srct(shape: &SkewCompositionShape) -> Result<Vec<Ssrct>> {
    enumerate_srct_with_limit(shape, DEFAULT_ENUMERATION_LIMIT)
}

/// Places n, n−1, ..., 1 in turn; the cells holding entries larger than the
/// next value always form a left-justified prefix of every row.
pub fn enumerate_srct_with_limit(shape: &SkewCompositionShape, limit: usize) -> Result<Vec<Ssrct>> {
    let n = shape.size();
    if n > limit {
        return Err(Error::LimitExceeded { size: n, limit });
    }
    let lens: Vec<usize> = shape.outer.parts().to_vec();
    let filled: Vec<usize> = (0..lens.len()).map(|r| shape.inner_len(r)).collect();
    let grid: Vec<Vec<u32>> = lens
        .iter()
        .zip(&filled)
        .map(|(&l, &k)| {
            let mut row = vec![0u32; l];
            row[..k].fill(u32::MAX);
            row
        })
        .collect();
    let mut state = EnumState { lens, filled, grid, out: Vec::new(), shape };
    state.place(n as u32);
    Ok(state.out)
}

struct EnumState<'a> {
    lens: Vec<usize>,
    filled: Vec<usize>,
    grid: Vec<Vec<u32>>,
    out: Vec<Ssrct>,
    shape: &'a SkewCompositionShape,
}

impl EnumState<'_> {
    fn place(&mut self, v: u32) {
        if v == 0 {
            let rows = self
                .grid
                .iter()
                .map(|row| row.iter().map(|&x| (x != u32::MAX).then_some(x)).collect())
                .collect();
            self.out.push(Ssrct::from_parts_unchecked(
                self.shape.outer.clone(),
                self.shape.inner.clone(),
                rows,
            ));
            return;
        }
        for r in 0..self.lens.len() {
            let c = self.filled[r];
            if c < self.lens[r] && self.allowed(r, c) {
                self.grid[r][c] = v;
                self.filled[r] += 1;
                self.place(v - 1);
                self.filled[r] -= 1;
                self.grid[r][c] = 0;
            }
        }
    }

    /// Can the smallest value so far go at (r, c)? Every later value is smaller still.
    fn allowed(&self, r: usize, c: usize) -> bool {
        if c == 0 {
            // First column increases downwards, so nothing may sit above it yet.
            return self.filled[..r].iter().all(|&f| f == 0);
        }
        // As the lower-right cell z: a filled x at (i, c−1) forces (i, c) to be
        // filled with something larger, which must already be there.
        if (0..r).any(|i| self.filled[i] >= c && self.filled[i] < c + 1) {
            return false;
        }
        // As the upper-right cell y: each larger z below in column c needs x < z.
        let x = self.grid[r][c - 1];
        for j in r + 1..self.lens.len() {
            if self.filled[j] > c {
                let z = self.grid[j][c];
                if z != u32::MAX && x >= z {
                    return false;
                }
            }
        }
        true
    }
}
