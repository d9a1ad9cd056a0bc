//! Backward slides on reverse composition tableaux: the column step φ, the
//! full slide μ on straight shapes, and μ on skew shapes through a barred
//! filling of the inner shape.

use serde::{Deserialize, Serialize};

use crate::comp_ops::{box_remove, jdt_op, v_chain_prefix};
use crate::error::{ensure_internal, Error, Result};
use crate::shapes::{Composition, SkewCompositionShape};
use crate::tableau::{canonical_tableau, Row, Ssrct};

/// An entry pushed out of column `column` by a φ step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exit {
    pub column: usize,
    pub entry: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SrctSlideResult {
    pub tableau: Ssrct,
    /// Exited entries in decreasing order (a single entry for φ).
    pub exited: Vec<u32>,
    /// The same entries with the column each one left, in the order they exited.
    pub exits: Vec<Exit>,
    pub shape_before: SkewCompositionShape,
    pub shape_after: SkewCompositionShape,
}

impl SrctSlideResult {
    /// The entry exited by a single φ step.
    pub fn exited_entry(&self) -> Option<u32> {
        self.exits.first().map(|e| e.entry)
    }
}

/// The rows q₁ > q₂ > ... > q_k driving a φ step from column `i + 1`, each with
/// its column-`i` entry. Rows and columns are 1-based, rows counted top-down.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QSequence {
    pub column: usize,
    pub rows: Vec<(usize, u32)>,
}

fn value(rows: &[Row], r: usize, c: usize) -> u32 {
    rows[r].get(c).copied().flatten().unwrap_or(0)
}

/// Computes the q-sequence for a φ step that shortens a row of length `i`.
pub fn q_sequence(rows: &[Row], i: usize) -> Option<QSequence> {
    let ci = i - 1;
    let first = (0..rows.len()).rev().find(|&r| value(rows, r, ci) > 0 && value(rows, r, ci + 1) == 0)?;
    let mut seq = vec![(first, value(rows, first, ci))];
    loop {
        let (last, prev) = *seq.last().expect("nonempty");
        let next = (0..last).rev().find(|&r| {
            let c = value(rows, r, ci);
            c > prev && prev >= value(rows, r, ci + 1)
        });
        match next {
            Some(r) => seq.push((r, value(rows, r, ci))),
            None => break,
        }
    }
    Some(QSequence { column: i, rows: seq.into_iter().map(|(r, v)| (r + 1, v)).collect() })
}

/// One φ step on raw rows: shifts entries up the q-sequence and drops the last
/// cell of row q₁. Returns the new rows and the exited entry.
fn phi_rows(rows: &[Row], i: usize) -> Result<(Vec<Row>, u32)> {
    let seq = q_sequence(rows, i)
        .ok_or_else(|| Error::Internal(format!("no row of length {i} for a φ step")))?;
    let q = &seq.rows;
    let mut out = rows.to_vec();
    for j in 1..q.len() {
        out[q[j].0 - 1][i - 1] = Some(q[j - 1].1);
    }
    let bottom = q[0].0 - 1;
    out[bottom].pop();
    if out[bottom].is_empty() {
        out.remove(bottom);
    }
    Ok((out, q[q.len() - 1].1))
}

fn outer_of(rows: &[Row]) -> Composition {
    Composition::from_parts_unchecked(rows.iter().map(Vec::len).collect())
}

fn require_straight(tau: &Ssrct) -> Result<()> {
    if tau.is_straight() {
        Ok(())
    } else {
        Err(Error::Precondition("this slide needs a straight tableau".into()))
    }
}

fn require_addable(alpha: &Composition, col: usize) -> Result<()> {
    if alpha.sort_to_partition().addable_row(col).is_some() {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "the sorted shape of {alpha} has no addable node in column {col}"
        )))
    }
}

/// φ_{i+1}: removes one cell from column `i` of a straight tableau.
pub fn phi(tau: &Ssrct, col_plus_one: usize) -> Result<SrctSlideResult> {
    require_straight(tau)?;
    if col_plus_one < 2 {
        return Err(Error::Precondition("φ is defined from column 2 on".into()));
    }
    let alpha = tau.outer();
    require_addable(alpha, col_plus_one)?;
    let i = col_plus_one - 1;
    let (rows, exited) = phi_rows(tau.rows(), i)?;
    let after = outer_of(&rows);
    ensure_internal!(
        box_remove(alpha, i).as_ref() == Some(&after),
        "φ_{col_plus_one} on shape {alpha} gave shape {after}"
    );
    let tableau = Ssrct::new(after.clone(), Composition::empty(), rows)
        .map_err(|e| Error::Internal(format!("φ_{col_plus_one} broke the tableau: {e}")))?;
    Ok(SrctSlideResult {
        tableau,
        exited: vec![exited],
        exits: vec![Exit { column: i, entry: exited }],
        shape_before: SkewCompositionShape::straight(alpha.clone()),
        shape_after: SkewCompositionShape::straight(after),
    })
}

/// Φ_i = φ₂ ∘ ... ∘ φ_i on a straight tableau, φ_i applied first.
pub fn phi_chain(tau: &Ssrct, col: usize) -> Result<SrctSlideResult> {
    require_straight(tau)?;
    let alpha = tau.outer();
    require_addable(alpha, col)?;
    let mut current = tau.clone();
    let mut exits = Vec::new();
    for step in (2..=col).rev() {
        let r = phi(&current, step)?;
        exits.extend(r.exits);
        current = r.tableau;
    }
    ensure_internal!(
        v_chain_prefix(alpha, col.saturating_sub(1)).as_ref() == Some(current.outer()),
        "Φ_{col} on shape {alpha} gave shape {}",
        current.outer()
    );
    let mut exited: Vec<u32> = exits.iter().map(|e| e.entry).collect();
    exited.sort_unstable_by(|a, b| b.cmp(a));
    Ok(SrctSlideResult {
        shape_before: SkewCompositionShape::straight(alpha.clone()),
        shape_after: SkewCompositionShape::straight(current.outer().clone()),
        tableau: current,
        exited,
        exits,
    })
}

/// μ_i on a straight tableau: Φ_i, then a new bottom row of length `col`
/// holding a hole (or `max + 1` with `corner_fill`) followed by the exited
/// entries in decreasing order.
pub fn mu(tau: &Ssrct, col: usize, corner_fill: bool) -> Result<SrctSlideResult> {
    if col == 0 {
        return Err(Error::Precondition("columns are numbered from 1".into()));
    }
    let chain = phi_chain(tau, col)?;
    let alpha = tau.outer();
    let mut rows: Vec<Row> = chain.tableau.rows().to_vec();
    let mut new_row: Row = vec![corner_fill.then(|| tau.max_entry() + 1)];
    new_row.extend(chain.exited.iter().map(|&v| Some(v)));
    rows.push(new_row);
    let outer = outer_of(&rows);
    ensure_internal!(
        jdt_op(alpha, col).as_ref() == Some(&outer),
        "μ_{col} on shape {alpha} gave shape {outer}"
    );
    let inner = if corner_fill { Composition::empty() } else { Composition::from_parts_unchecked(vec![1]) };
    let tableau = Ssrct::new(outer.clone(), inner.clone(), rows)
        .map_err(|e| Error::Internal(format!("μ_{col} broke the tableau: {e}")))?;
    Ok(SrctSlideResult {
        tableau,
        exited: chain.exited,
        exits: chain.exits,
        shape_before: SkewCompositionShape::straight(alpha.clone()),
        shape_after: SkewCompositionShape { outer, inner },
    })
}

/// μ_i on a skew tableau, filling the inner shape with its canonical tableau.
pub fn mu_skew(tau: &Ssrct, col: usize) -> Result<SrctSlideResult> {
    mu_skew_with_filling(tau, col, &canonical_tableau(tau.inner()))
}

/// μ_i on a skew tableau of shape α//β. `barred` is any tableau of straight
/// shape β; its entries are shifted above every entry of `tau`, the straight
/// slide is run, and the shifted entries are turned back into inner cells.
pub fn mu_skew_with_filling(tau: &Ssrct, col: usize, barred: &Ssrct) -> Result<SrctSlideResult> {
    let beta = tau.inner();
    if !barred.is_straight() || barred.outer() != beta {
        return Err(Error::Precondition(format!(
            "the barred filling must have straight shape {beta}"
        )));
    }
    let alpha = tau.outer();
    require_addable(alpha, col)?;
    let offset = tau.max_entry();
    let first_inner_row = alpha.len() - beta.len();
    let combined: Vec<Row> = tau
        .rows()
        .iter()
        .enumerate()
        .map(|(r, row)| {
            row.iter()
                .enumerate()
                .map(|(c, x)| match x {
                    Some(v) => Some(*v),
                    None => barred.rows()[r - first_inner_row][c].map(|b| b + offset),
                })
                .collect()
        })
        .collect();
    let combined = Ssrct::new(alpha.clone(), Composition::empty(), combined)
        .map_err(|e| Error::Internal(format!("barred filling did not give a valid tableau: {e}")))?;
    let slid = mu(&combined, col, false)?;
    let stripped: Vec<Row> = slid
        .tableau
        .rows()
        .iter()
        .map(|row| row.iter().map(|x| x.filter(|&v| v <= offset)).collect())
        .collect();
    let tableau = Ssrct::from_grid(stripped)
        .map_err(|e| Error::Internal(format!("stripping the barred entries failed: {e}")))?;
    let j = slid
        .exits
        .iter()
        .filter(|e| e.entry > offset)
        .map(|e| e.column)
        .max()
        .unwrap_or(0);
    let expected_outer = jdt_op(alpha, col);
    let expected_inner = jdt_op(beta, j + 1);
    ensure_internal!(
        expected_outer.as_ref() == Some(tableau.outer()) && expected_inner.as_ref() == Some(tableau.inner()),
        "skew μ_{col} on {} gave {}, expected {:?}//{:?}",
        tau.shape(),
        tableau.shape(),
        expected_outer,
        expected_inner
    );
    let exits: Vec<Exit> = slid.exits.into_iter().filter(|e| e.entry <= offset).collect();
    let mut exited: Vec<u32> = exits.iter().map(|e| e.entry).collect();
    exited.sort_unstable_by(|a, b| b.cmp(a));
    Ok(SrctSlideResult {
        shape_after: tableau.shape().clone(),
        tableau,
        exited,
        exits,
        shape_before: tau.shape().clone(),
    })
}
