//! The column-sorting bijection between reverse composition tableaux with inner
//! shape α and reverse tableaux with inner shape α̃.

use crate::error::{ensure_internal, Error, Result};
use crate::shapes::{Composition, Partition};
use crate::tableau::{Row, Ssrct, Ssrt};

fn columns(rows: &[Row]) -> Vec<Vec<u32>> {
    let width = rows.iter().map(Vec::len).max().unwrap_or(0);
    (0..width)
        .map(|c| rows.iter().filter_map(|r| r.get(c).copied().flatten()).collect())
        .collect()
}

/// Sorts each column decreasing upwards and stacks it on the inner partition.
pub fn rho_map(tau: &Ssrct) -> Result<Ssrt> {
    let inner = tau.inner().sort_to_partition();
    let cols = columns(tau.rows());
    let heights: Vec<usize> = cols
        .iter()
        .enumerate()
        .map(|(c, col)| inner.column_height(c + 1) + col.len())
        .collect();
    ensure_internal!(
        heights.windows(2).all(|w| w[0] >= w[1]),
        "column heights {heights:?} of the sorted image are not a partition"
    );
    let depth = heights.first().copied().unwrap_or(0);
    let mut rows: Vec<Row> = vec![Vec::new(); depth];
    for (c, col) in cols.into_iter().enumerate() {
        let base = inner.column_height(c + 1);
        for row in rows.iter_mut().take(base) {
            row.push(None);
        }
        let mut col = col;
        col.sort_unstable_by(|a, b| b.cmp(a));
        for (k, v) in col.into_iter().enumerate() {
            rows[base + k].push(Some(v));
        }
    }
    let outer = Partition::new(rows.iter().map(Vec::len).collect())?;
    Ssrt::new(outer, inner, rows).map_err(|e| Error::Internal(format!("rho produced an invalid tableau: {e}")))
}

/// Inverse of [`rho_map`] for a tableau whose inner shape is α̃.
pub fn rho_inv(t: &Ssrt, alpha: &Composition) -> Result<Ssrct> {
    if t.inner() != &alpha.sort_to_partition() {
        return Err(Error::Precondition(format!(
            "inner shape {} is not the sorted form of {alpha}",
            t.inner()
        )));
    }
    let mut cols = columns(t.rows());
    let mut first = cols.first().cloned().unwrap_or_default();
    first.sort_unstable();
    let mut rows: Vec<Row> = first.into_iter().map(|v| vec![Some(v)]).collect();
    rows.extend(alpha.parts().iter().map(|&p| vec![None; p]));
    for c in 1..cols.len() {
        let col = &mut cols[c];
        col.sort_unstable_by(|a, b| b.cmp(a));
        for &v in col.iter() {
            let target = rows.iter().position(|row| {
                row.len() == c
                    && match row[c - 1] {
                        None => true,
                        Some(left) => left >= v,
                    }
            });
            let Some(r) = target else {
                return Err(Error::Internal(format!(
                    "rho inverse: no row accepts {v} in column {} of\n{t}",
                    c + 1
                )));
            };
            rows[r].push(Some(v));
        }
    }
    let outer = Composition::new(rows.iter().map(Vec::len).collect())?;
    Ssrct::new(outer, alpha.clone(), rows)
        .map_err(|e| Error::Internal(format!("rho inverse produced an invalid tableau: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes::SkewCompositionShape;
    use crate::tableau::{canonical_tableau, enumerate_srct};

    fn c(s: &str) -> Composition {
        s.parse().unwrap()
    }

    fn skew_example() -> (Ssrct, Ssrt) {
        let tau = Ssrct::new(
            c("(2,5,4,2)"),
            c("(2,1,2)"),
            vec![
                vec![Some(4), Some(3)],
                vec![None, None, Some(7), Some(5), Some(1)],
                vec![None, Some(7), Some(6), Some(2)],
                vec![None, None],
            ],
        )
        .unwrap();
        let t = Ssrt::from_grid(vec![
            vec![None, None, Some(7), Some(5), Some(1)],
            vec![None, None, Some(6), Some(2)],
            vec![None, Some(7)],
            vec![Some(4), Some(3)],
        ])
        .unwrap();
        (tau, t)
    }

    #[test]
    fn skew_example_both_ways() {
        let (tau, t) = skew_example();
        assert_eq!(t.outer().parts(), &[5, 4, 2, 2]);
        assert_eq!(t.inner().parts(), &[2, 2, 1]);
        assert_eq!(rho_map(&tau).unwrap(), t);
        assert_eq!(rho_inv(&t, &c("(2,1,2)")).unwrap(), tau);
    }

    #[test]
    fn small_cases() {
        let col = Ssrct::from_rows(vec![vec![1], vec![4], vec![6]]).unwrap();
        assert_eq!(rho_map(&col).unwrap(), Ssrt::from_rows(vec![vec![6], vec![4], vec![1]]).unwrap());
        let row = canonical_tableau(&c("(4)"));
        let image = rho_map(&row).unwrap();
        assert_eq!(image, Ssrt::from_rows(vec![vec![4, 3, 2, 1]]).unwrap());
        assert_eq!(rho_inv(&image, &Composition::empty()).unwrap(), row);
    }

    #[test]
    fn mismatched_inner_shape_is_rejected() {
        let (_, t) = skew_example();
        assert!(rho_inv(&t, &c("(1,2,2)")).is_ok());
        assert!(matches!(rho_inv(&t, &c("(2,2)")), Err(Error::Precondition(_))));
    }

    #[test]
    fn roundtrip_all_small_srct() {
        for n in 1..=6 {
            let mut by_partition = std::collections::HashMap::<Partition, usize>::new();
            for a in Composition::all_of_size(n) {
                for tau in enumerate_srct(&SkewCompositionShape::straight(a.clone())).unwrap() {
                    let t = rho_map(&tau).unwrap();
                    assert!(t.is_standard());
                    assert_eq!(rho_inv(&t, &Composition::empty()).unwrap(), tau);
                    *by_partition.entry(t.outer().clone()).or_default() += 1;
                }
            }
            // Each SRT of shape λ arises exactly once.
            for (lam, count) in by_partition {
                assert_eq!(count, standard_reverse_count(&lam), "λ = {lam}");
            }
        }
    }

    /// Hook length formula.
    fn standard_reverse_count(lam: &Partition) -> usize {
        let n: u128 = (1..=lam.size() as u128).product();
        let hooks: u128 = (1..=lam.len())
            .flat_map(|r| (1..=lam.row_len(r)).map(move |col| (r, col)))
            .map(|(r, col)| (lam.row_len(r) - col + lam.column_height(col) - r + 1) as u128)
            .product();
        (n / hooks) as usize
    }
}
