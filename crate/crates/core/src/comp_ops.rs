//! Box-removing operators, their products, and the jdt operators on compositions.
//!
//! `None` plays the role of the annihilated result: every operator maps it to
//! `None` again, so chains compose with `and_then`.

use std::collections::BTreeSet;

use crate::shapes::Composition;

pub type OpResult = Option<Composition>;

/// Subtracts 1 from the rightmost part equal to `i`, dropping it if it becomes 0.
pub fn box_remove(alpha: &Composition, i: usize) -> OpResult {
    let pos = alpha.parts().iter().rposition(|&p| p == i)?;
    let mut parts = alpha.parts().to_vec();
    if i == 1 {
        parts.remove(pos);
    } else {
        parts[pos] -= 1;
    }
    Some(Composition::from_parts_unchecked(parts))
}

/// Applies `box_remove` for every index in `set`, largest index first.
pub fn v_chain(alpha: &Composition, set: &BTreeSet<usize>) -> OpResult {
    set.iter()
        .rev()
        .try_fold(alpha.clone(), |acc, &i| box_remove(&acc, i))
}

/// `box_remove` for 1, ..., `upto`, applied from `upto` down to 1.
pub fn v_chain_prefix(alpha: &Composition, upto: usize) -> OpResult {
    (1..=upto)
        .rev()
        .try_fold(alpha.clone(), |acc, i| box_remove(&acc, i))
}

pub fn append_part(alpha: &Composition, i: usize) -> Composition {
    assert!(i >= 1, "appended part must be positive");
    let mut parts = alpha.parts().to_vec();
    parts.push(i);
    Composition::from_parts_unchecked(parts)
}

/// The jdt operator: remove boxes of lengths i−1, ..., 1, then append a part `i`.
pub fn jdt_op(alpha: &Composition, i: usize) -> OpResult {
    if i == 0 {
        return None;
    }
    v_chain_prefix(alpha, i - 1).map(|a| append_part(&a, i))
}

/// Applies `jdt_op` for each column in application order.
pub fn jdt_word(alpha: &Composition, cols: &[usize]) -> OpResult {
    cols.iter().try_fold(alpha.clone(), |acc, &i| jdt_op(&acc, i))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Composition {
        s.parse().unwrap()
    }

    #[test]
    fn box_removal() {
        assert_eq!(box_remove(&c("(2,1,2)"), 1), Some(c("(2,2)")));
        assert_eq!(box_remove(&c("(2,1,2)"), 2), Some(c("(2,1,1)")));
        assert_eq!(box_remove(&c("(3,5,1)"), 2), None);
    }

    #[test]
    fn chains() {
        let a = c("(6,3,2,3,1,5,4)");
        let s: BTreeSet<usize> = [1, 2, 3].into_iter().collect();
        assert_eq!(v_chain(&a, &s), Some(c("(6,3,2,1,5,4)")));
        assert_eq!(v_chain(&a, &BTreeSet::new()), Some(a.clone()));
        assert_eq!(v_chain(&c("(1,1)"), &[1].into_iter().collect()), Some(c("(1)")));
    }

    #[test]
    fn appending() {
        assert_eq!(append_part(&c("(2,1,3)"), 2), c("(2,1,3,2)"));
        assert_eq!(append_part(&c("()"), 4), c("(4)"));
        assert_eq!(append_part(&c("(5)"), 5), c("(5,5)"));
    }

    #[test]
    fn jdt_operators() {
        assert_eq!(jdt_op(&c("(6,3,2,3,1,5,4)"), 4), Some(c("(6,3,2,1,5,4,4)")));
        assert_eq!(jdt_op(&c("(3,1,4,2,1)"), 4), Some(c("(2,1,4,1,4)")));
        assert_eq!(jdt_op(&c("()"), 2), None);
        assert_eq!(jdt_op(&c("()"), 1), Some(c("(1)")));
    }

    #[test]
    fn jdt_adds_box_at_addable_node() {
        for n in 0..=8 {
            for a in Composition::all_of_size(n) {
                let lam = a.sort_to_partition();
                for i in 1..=a.max_part() + 2 {
                    match (jdt_op(&a, i), lam.addable_row(i)) {
                        (Some(b), Some(row)) => {
                            assert_eq!(b.size(), n + 1);
                            assert_eq!(b.sort_to_partition(), lam.with_cell_added(row), "u_{i}{a}");
                        }
                        (None, None) => {}
                        (got, row) => panic!("u_{i}{a} = {got:?} but addable row {row:?}"),
                    }
                }
            }
        }
    }

    #[test]
    fn box_remove_shrinks_by_one() {
        for n in 1..=7 {
            for a in Composition::all_of_size(n) {
                for i in 1..=a.max_part() {
                    if let Some(b) = box_remove(&a, i) {
                        assert_eq!(b.size(), n - 1);
                        assert!(b.parts().iter().all(|&p| p > 0));
                    }
                }
            }
        }
    }
}
