//! Jeu de taquin on reverse tableaux: backward and forward slides, the
//! truncated slide, and the entries that move horizontally.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_internal, Error, Result};
use crate::shapes::{CellCoord, Partition};
use crate::tableau::{slot, Row, Slot, Ssrt};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SrtSlideResult {
    pub tableau: Ssrt,
    /// Cells visited by the hole, starting at the initiating node.
    pub path: Vec<CellCoord>,
    /// Where the hole ended: the new inner cell (backward) or the removed outer cell (forward).
    pub exited_or_vacated: CellCoord,
}

/// The horizontally moving entries of a backward slide.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoverData {
    /// The first entry to move horizontally; `None` for a slide from column 1.
    pub first_mover: Option<u32>,
    /// All horizontally moving entries, sorted descending (a multiset).
    pub movers: Vec<u32>,
}

fn entry_at(rows: &[Row], r: usize, c: usize) -> Option<u32> {
    match slot(rows, r, c) {
        Slot::Entry(v) => Some(v),
        _ => None,
    }
}

/// Backward slide into the addable node of the outer shape in column `col`.
///
/// With `corner_fill` the cell where the hole stops receives `max + 1`
/// instead of joining the inner shape.
pub fn backward_slide(t: &Ssrt, col: usize, corner_fill: bool) -> Result<SrtSlideResult> {
    let start_row = t
        .outer()
        .addable_row(col)
        .ok_or_else(|| Error::Precondition(format!("{} has no addable node in column {col}", t.outer())))?;
    let fill = t.max_entry() + 1;
    let mut rows: Vec<Row> = t.rows().to_vec();
    let (mut r, mut c) = (start_row - 1, col - 1);
    if r == rows.len() {
        rows.push(Vec::new());
    }
    rows[r].push(None);
    let mut path = vec![CellCoord::french(r + 1, c + 1)];
    loop {
        let below = if r > 0 { entry_at(&rows, r - 1, c) } else { None };
        let left = if c > 0 { entry_at(&rows, r, c - 1) } else { None };
        let (nr, nc) = match (below, left) {
            (None, None) => break,
            (Some(_), None) => (r - 1, c),
            (None, Some(_)) => (r, c - 1),
            (Some(b), Some(l)) if b <= l => (r - 1, c),
            _ => (r, c - 1),
        };
        rows[r][c] = rows[nr][nc].take();
        r = nr;
        c = nc;
        path.push(CellCoord::french(r + 1, c + 1));
    }
    let outer = t.outer().with_cell_added(start_row);
    let inner = if corner_fill {
        rows[r][c] = Some(fill);
        t.inner().clone()
    } else {
        ensure_internal!(
            t.inner().addable_row(c + 1) == Some(r + 1),
            "backward slide stopped at ({},{}), not an addable node of {}",
            r + 1,
            c + 1,
            t.inner()
        );
        t.inner().with_cell_added(r + 1)
    };
    let tableau = Ssrt::new(outer, inner, rows)
        .map_err(|e| Error::Internal(format!("backward slide broke the tableau: {e}")))?;
    Ok(SrtSlideResult { tableau, path, exited_or_vacated: CellCoord::french(r + 1, c + 1) })
}

/// Forward slide out of the removable node of the inner shape in column `col`.
pub fn forward_slide(t: &Ssrt, col: usize) -> Result<SrtSlideResult> {
    let start_row = t
        .inner()
        .removable_row(col)
        .ok_or_else(|| Error::Precondition(format!("{} has no removable node in column {col}", t.inner())))?;
    let mut rows: Vec<Row> = t.rows().to_vec();
    let (mut r, mut c) = (start_row - 1, col - 1);
    let mut path = vec![CellCoord::french(r + 1, c + 1)];
    loop {
        let above = entry_at(&rows, r + 1, c);
        let right = entry_at(&rows, r, c + 1);
        let (nr, nc) = match (above, right) {
            (None, None) => break,
            (Some(_), None) => (r + 1, c),
            (None, Some(_)) => (r, c + 1),
            (Some(a), Some(b)) if a >= b => (r + 1, c),
            _ => (r, c + 1),
        };
        rows[r][c] = rows[nr][nc].take();
        r = nr;
        c = nc;
        path.push(CellCoord::french(r + 1, c + 1));
    }
    ensure_internal!(
        rows[r].len() == c + 1 && t.outer().removable_row(c + 1) == Some(r + 1),
        "forward slide stopped at ({},{}), not a removable node of {}",
        r + 1,
        c + 1,
        t.outer()
    );
    rows[r].pop();
    if rows[r].is_empty() {
        rows.pop();
    }
    let outer = t.outer().with_cell_removed(r + 1);
    let inner = t.inner().with_cell_removed(start_row);
    let tableau = Ssrt::new(outer, inner, rows)
        .map_err(|e| Error::Internal(format!("forward slide broke the tableau: {e}")))?;
    Ok(SrtSlideResult { tableau, path, exited_or_vacated: CellCoord::french(r + 1, c + 1) })
}

/// The first entry of column `col − 1` to move horizontally in a backward slide
/// from column `col`, with its (0-based) row.
fn first_mover(t: &Ssrt, col: usize) -> (usize, u32) {
    let rows = t.rows();
    let i = col - 2;
    let height = t.outer().column_height(col - 1);
    (0..height)
        .rev()
        .find_map(|j| {
            let a = entry_at(rows, j, i)?;
            let b = if j == 0 { u32::MAX } else { entry_at(rows, j - 1, i + 1).unwrap_or(0) };
            (a < b).then_some((j, a))
        })
        .expect("a straight tableau with an addable node always has a first mover")
}

/// The truncated slide from column `col_plus_one`, with its mover data.
///
/// For a slide from column i+1 ≥ 2 the first horizontally moving entry is
/// deleted from column i and the entries above it drop one row.
pub fn truncated_slide(t: &Ssrt, col_plus_one: usize) -> Result<(Ssrt, MoverData)> {
    if !t.is_straight() {
        return Err(Error::Precondition("the truncated slide needs a straight tableau".into()));
    }
    if t.outer().addable_row(col_plus_one).is_none() {
        return Err(Error::Precondition(format!(
            "{} has no addable node in column {col_plus_one}",
            t.outer()
        )));
    }
    if col_plus_one == 1 {
        return Ok((t.clone(), MoverData { first_mover: None, movers: Vec::new() }));
    }
    let (shrunk, f) = truncate_once(t, col_plus_one)?;
    let mut movers = vec![f];
    let mut current = shrunk.clone();
    for col in (2..col_plus_one).rev() {
        let (next, g) = truncate_once(&current, col)?;
        movers.push(g);
        current = next;
    }
    movers.sort_unstable_by(|a, b| b.cmp(a));
    Ok((shrunk, MoverData { first_mover: Some(f), movers }))
}

fn truncate_once(t: &Ssrt, col: usize) -> Result<(Ssrt, u32)> {
    let (j, f) = first_mover(t, col);
    let i = col - 2;
    let mut rows: Vec<Row> = t.rows().to_vec();
    let height = t.outer().column_height(col - 1);
    for r in j..height - 1 {
        rows[r][i] = rows[r + 1][i];
    }
    let top = height - 1;
    ensure_internal!(rows[top].len() == i + 1, "column {} top cell is not a row end", i + 1);
    rows[top].pop();
    if rows[top].is_empty() {
        rows.pop();
    }
    let outer: Partition = t.outer().with_cell_removed(height);
    let tableau = Ssrt::new(outer, Partition::empty(), rows)
        .map_err(|e| Error::Internal(format!("truncated slide broke the tableau: {e}")))?;
    Ok((tableau, f))
}

/// Entries whose column changes during `backward_slide(t, col)`, sorted descending.
pub fn horizontal_movers(t: &Ssrt, col: usize) -> Result<Vec<u32>> {
    let slide = backward_slide(t, col, false)?;
    let mut movers: Vec<u32> = slide
        .path
        .windows(2)
        .filter(|w| w[0].row == w[1].row)
        .map(|w| slide.tableau.entry(w[0]).map(|v| v.expect("moved entry")))
        .collect::<Result<_>>()?;
    movers.sort_unstable_by(|a, b| b.cmp(a));
    Ok(movers)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn straight(rows: &[&[u32]]) -> Ssrt {
        Ssrt::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn straight_example() {
        let t = straight(&[&[8, 7, 1], &[6, 5], &[5, 4], &[2]]);
        let s = backward_slide(&t, 3, false).unwrap();
        let expected = Ssrt::from_grid(vec![
            vec![None, Some(8), Some(7)],
            vec![Some(6), Some(5), Some(1)],
            vec![Some(5), Some(4)],
            vec![Some(2)],
        ])
        .unwrap();
        assert_eq!(s.tableau, expected);
        assert_eq!(s.exited_or_vacated, CellCoord::french(1, 1));
        assert_eq!(forward_slide(&s.tableau, 1).unwrap().tableau, t);
    }

    #[test]
    fn skew_example() {
        let t = Ssrt::from_grid(vec![
            vec![None, None, None, Some(4), Some(3)],
            vec![None, None, Some(2), Some(1)],
            vec![Some(3), Some(1), Some(1)],
            vec![Some(1)],
        ])
        .unwrap();
        let s = backward_slide(&t, 4, false).unwrap();
        let expected = Ssrt::from_grid(vec![
            vec![None, None, None, Some(4), Some(3)],
            vec![None, None, None, Some(2)],
            vec![Some(3), Some(1), Some(1), Some(1)],
            vec![Some(1)],
        ])
        .unwrap();
        assert_eq!(s.tableau, expected);
        assert_eq!(forward_slide(&s.tableau, 3).unwrap().tableau, t);
    }

    #[test]
    fn single_box() {
        let t = straight(&[&[1]]);
        let s = backward_slide(&t, 1, false).unwrap();
        assert_eq!(s.tableau, Ssrt::from_grid(vec![vec![None], vec![Some(1)]]).unwrap());
        assert_eq!(forward_slide(&s.tableau, 1).unwrap().tableau, t);
        let filled = backward_slide(&t, 1, true).unwrap();
        assert_eq!(filled.tableau, straight(&[&[2], &[1]]));
        assert!(backward_slide(&t, 3, false).is_err());
        assert!(forward_slide(&t, 1).is_err());
    }

    #[test]
    fn truncated_examples() {
        let t = straight(&[&[11, 9, 9, 8], &[10, 8, 5], &[8, 7, 4], &[7, 6], &[6]]);
        let (s, m) = truncated_slide(&t, 3).unwrap();
        assert_eq!(m.first_mover, Some(8));
        assert_eq!(s, straight(&[&[11, 9, 9, 8], &[10, 7, 5], &[8, 6, 4], &[7], &[6]]));

        let t = straight(&[&[11, 9, 9, 8], &[10, 8, 5, 3], &[8, 7, 2], &[7, 6], &[6]]);
        let (s, m) = truncated_slide(&t, 4).unwrap();
        assert_eq!(m.first_mover, Some(2));
        assert_eq!(m.movers, vec![11, 8, 2]);
        assert_eq!(s, straight(&[&[11, 9, 9, 8], &[10, 8, 5, 3], &[8, 7], &[7, 6], &[6]]));
        let (_, m3) = truncated_slide(&s, 3).unwrap();
        assert_eq!(m3.movers, vec![11, 8]);

        let (same, m1) = truncated_slide(&t, 1).unwrap();
        assert_eq!(same, t);
        assert!(m1.movers.is_empty());
    }

    #[test]
    fn movers_match_the_slide_path() {
        let t = straight(&[&[11, 9, 9, 8], &[10, 8, 5, 3], &[8, 7, 2], &[7, 6], &[6]]);
        assert_eq!(horizontal_movers(&t, 4).unwrap(), vec![11, 8, 2]);
    }
}
