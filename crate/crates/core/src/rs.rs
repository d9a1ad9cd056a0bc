//! Insertion for reverse tableaux, standardization of words, rectification,
//! evacuation, and the tableaux of column growth words.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{ensure_internal, Error, Result};
use crate::jdt_srt::forward_slide;
use crate::rho::rho_inv;
use crate::shapes::{Composition, Partition};
use crate::tableau::{Row, Ssrct, Ssrt};

/// A permutation in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(one_line: Vec<usize>) -> Result<Self> {
        let n = one_line.len();
        let mut seen = vec![false; n + 1];
        for &v in &one_line {
            if v == 0 || v > n || std::mem::replace(&mut seen[v], true) {
                return Err(Error::Parse(format!("{one_line:?} is not a permutation of 1..{n}")));
            }
        }
        Ok(Permutation(one_line))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    pub fn one_line(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation(inv)
    }

    /// All permutations of 1..n in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut current: Vec<usize> = (1..=n).collect();
        let mut out = vec![Permutation(current.clone())];
        loop {
            let Some(i) = (1..current.len()).rev().find(|&i| current[i - 1] < current[i]) else {
                return out;
            };
            let j = (i..current.len()).rev().find(|&j| current[j] > current[i - 1]).expect("pivot");
            current.swap(i - 1, j);
            current[i..].reverse();
            out.push(Permutation(current.clone()));
        }
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.0
    }
}

fn fmt_letters(letters: &[usize], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if letters.iter().all(|&v| v < 10) {
        for v in letters {
            write!(f, "{v}")?;
        }
        Ok(())
    } else {
        let s: Vec<String> = letters.iter().map(|v| v.to_string()).collect();
        f.write_str(&s.join(","))
    }
}

/// Accepts "3157624" (single digits) or "3,1,5,7,6,2,4".
fn parse_letters(s: &str) -> Result<Vec<usize>> {
    let t = s.trim();
    let bad = |e: std::num::ParseIntError| Error::Parse(format!("bad word {s:?}: {e}"));
    if t.contains(',') || t.contains(' ') {
        t.split([',', ' ']).filter(|x| !x.is_empty()).map(|x| x.parse().map_err(bad)).collect()
    } else {
        t.chars()
            .map(|ch| ch.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::Parse(format!("bad letter {ch:?} in {s:?}"))))
            .collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_letters(&self.0, f)
    }
}

impl FromStr for Permutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Permutation::new(parse_letters(s)?)
    }
}

/// A word w = i_n ... i_1, letters stored left to right as written.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Result<Self> {
        if letters.contains(&0) {
            return Err(Error::Parse("word letters must be positive".into()));
        }
        Ok(Word(letters))
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Every suffix has at least as many j's as (j+1)'s.
    pub fn is_reverse_lattice(&self) -> bool {
        let mut counts = vec![0usize; self.0.iter().copied().max().unwrap_or(0) + 2];
        for &l in self.0.iter().rev() {
            counts[l] += 1;
            if l > 1 && counts[l] > counts[l - 1] {
                return false;
            }
        }
        true
    }
}

impl TryFrom<Vec<usize>> for Word {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Word::new(v)
    }
}

impl From<Word> for Vec<usize> {
    fn from(w: Word) -> Self {
        w.0
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_letters(&self.0, f)
    }
}

impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Word::new(parse_letters(s)?)
    }
}

/// Insertion of distinct letters into partial tableaux (rows bottom-up).
/// Returns the insertion rows and, for each inserted letter, its final cell.
pub fn insert_letters(letters: &[u32]) -> (Vec<Vec<u32>>, Vec<(usize, usize)>) {
    let mut rows: Vec<Vec<u32>> = Vec::new();
    let mut cells = Vec::with_capacity(letters.len());
    for &letter in letters {
        let mut y = letter;
        let mut r = 0;
        loop {
            if r == rows.len() {
                rows.push(vec![y]);
                cells.push((r, 0));
                break;
            }
            let row = &mut rows[r];
            match row.iter().position(|&x| x < y) {
                Some(p) => {
                    y = std::mem::replace(&mut row[p], y);
                    r += 1;
                }
                None => {
                    row.push(y);
                    cells.push((r, row.len() - 1));
                    break;
                }
            }
        }
    }
    (rows, cells)
}

fn straight_ssrt(rows: Vec<Vec<u32>>) -> Result<Ssrt> {
    Ssrt::from_rows(rows).map_err(|e| Error::Internal(format!("insertion produced an invalid tableau: {e}")))
}

/// Insertion tableau P and recording tableau Q; the i-th insertion is recorded
/// with label n − i + 1.
pub fn insert_variant(sigma: &Permutation) -> Result<(Ssrt, Ssrt)> {
    let letters: Vec<u32> = sigma.0.iter().map(|&v| v as u32).collect();
    let (p, cells) = insert_letters(&letters);
    let n = letters.len() as u32;
    let mut q: Vec<Vec<u32>> = p.iter().map(|r| vec![0; r.len()]).collect();
    for (i, &(r, c)) in cells.iter().enumerate() {
        q[r][c] = n - i as u32;
    }
    Ok((straight_ssrt(p)?, straight_ssrt(q)?))
}

/// Equal letters get increasing labels left to right; smaller letters first.
pub fn standardize(w: &Word) -> Permutation {
    let mut order: Vec<usize> = (0..w.0.len()).collect();
    order.sort_by_key(|&i| (w.0[i], i));
    let mut out = vec![0; w.0.len()];
    for (label, &pos) in order.iter().enumerate() {
        out[pos] = label + 1;
    }
    Permutation(out)
}

/// The straight reverse tableau obtained by inserting a tableau's column reading word.
pub fn rectify_srt(t: &Ssrt) -> Result<Ssrt> {
    straight_ssrt(insert_letters(&t.column_reading_word()).0)
}

/// Rectification of a standard reverse composition tableau.
pub fn rectify(tau: &Ssrct) -> Result<Ssrct> {
    if !tau.is_standard() {
        return Err(Error::Precondition("rectification needs a standard tableau".into()));
    }
    let p = straight_ssrt(insert_letters(&tau.column_reading_word()).0)?;
    rho_inv(&p, &Composition::empty())
}

/// Evacuation: repeatedly remove the corner entry a, slide forward, and write
/// n − a + 1 where the shape lost its cell.
pub fn evacuate(t: &Ssrt) -> Result<Ssrt> {
    if !t.is_straight() || !t.is_standard() {
        return Err(Error::Precondition("evacuation needs a standard straight tableau".into()));
    }
    let n = t.size() as u32;
    let mut out: Vec<Vec<u32>> = t.outer().parts().iter().map(|&l| vec![0; l]).collect();
    let mut current = t.clone();
    while current.size() > 0 {
        let mut rows: Vec<Row> = current.rows().to_vec();
        let a = rows[0][0].take().expect("straight tableau");
        let holed = Ssrt::new(current.outer().clone(), Partition::new(vec![1])?, rows)?;
        let slid = forward_slide(&holed, 1)?;
        let cell = slid.exited_or_vacated;
        ensure_internal!(out[cell.row - 1][cell.col - 1] == 0, "evacuation revisited {cell}");
        out[cell.row - 1][cell.col - 1] = n - a + 1;
        current = slid.tableau;
    }
    straight_ssrt(out)
}

/// The tableau of a reverse lattice word: the k-th box added (reading the word
/// from its right end) lies in column i_k and receives n − k + 1.
pub fn growth_word_tableau(w: &Word) -> Result<Ssrt> {
    if !w.is_reverse_lattice() {
        return Err(Error::Precondition(format!("{w} is not a reverse lattice word")));
    }
    let n = w.len() as u32;
    let mut shape = Partition::empty();
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for (k, &col) in w.0.iter().rev().enumerate() {
        let row = shape
            .addable_row(col)
            .ok_or_else(|| Error::Internal(format!("no addable node in column {col} of {shape}")))?;
        if row > rows.len() {
            rows.push(Vec::new());
        }
        rows[row - 1].push(n - k as u32);
        shape = shape.with_cell_added(row);
    }
    straight_ssrt(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn srt(rows: &[&[u32]]) -> Ssrt {
        Ssrt::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn insertion_examples() {
        let (p, q) = insert_variant(&perm("3157624")).unwrap();
        assert_eq!(p, srt(&[&[7, 6, 4], &[5, 2], &[3, 1]]));
        assert_eq!(q, srt(&[&[7, 6, 2], &[5, 3], &[4, 1]]));
        let (p, q) = insert_variant(&perm("791258364")).unwrap();
        assert_eq!(p, srt(&[&[9, 8, 6, 4], &[7, 5, 3], &[2], &[1]]));
        assert_eq!(q, srt(&[&[9, 7, 3, 1], &[8, 6, 2], &[5], &[4]]));
        let (p, q) = insert_variant(&perm("1")).unwrap();
        assert_eq!((p, q), (srt(&[&[1]]), srt(&[&[1]])));
    }

    #[test]
    fn insertion_stages() {
        let (rows, _) = insert_letters(&[3, 1, 5]);
        assert_eq!(rows, vec![vec![5, 1], vec![3]]);
    }

    #[test]
    fn standardization() {
        assert_eq!(standardize(&"341123121".parse().unwrap()), perm("791258364"));
        assert_eq!(standardize(&"111".parse().unwrap()), perm("123"));
        assert_eq!(standardize(&"3157624".parse().unwrap()), perm("3157624"));
    }

    #[test]
    fn evacuation_example() {
        let (p, _) = insert_variant(&perm("3157624")).unwrap();
        let e = evacuate(&p).unwrap();
        assert_eq!(e, srt(&[&[7, 5, 1], &[6, 3], &[4, 2]]));
        assert_eq!(evacuate(&e).unwrap(), p);
        assert_eq!(evacuate(&srt(&[&[1]])).unwrap(), srt(&[&[1]]));
    }

    #[test]
    fn skew_rectification_example() {
        let t = Ssrt::from_grid(vec![
            vec![None, None, None, Some(4)],
            vec![None, Some(7), Some(6), Some(2)],
            vec![None, Some(5)],
            vec![Some(3), Some(1)],
        ])
        .unwrap();
        assert_eq!(t.column_reading_word(), vec![3, 1, 5, 7, 6, 2, 4]);
        assert_eq!(rectify_srt(&t).unwrap(), srt(&[&[7, 6, 4], &[5, 2], &[3, 1]]));
    }

    #[test]
    fn growth_words() {
        let w: Word = "341123121".parse().unwrap();
        let t = growth_word_tableau(&w).unwrap();
        assert_eq!(t, srt(&[&[9, 8, 6, 2], &[7, 5, 1], &[4], &[3]]));
        assert_eq!(t.column_reading_word(), vec![3, 4, 7, 9, 5, 8, 1, 6, 2]);
        assert_eq!(growth_word_tableau(&"1".parse().unwrap()).unwrap(), srt(&[&[1]]));
        assert_eq!(growth_word_tableau(&"21".parse().unwrap()).unwrap(), srt(&[&[2, 1]]));
        assert!(growth_word_tableau(&"12".parse().unwrap()).is_err());
    }

    #[test]
    fn text_forms() {
        assert_eq!(perm("3,1,2").to_string(), "312");
        let long = Permutation::identity(11);
        assert_eq!(long.to_string(), "1,2,3,4,5,6,7,8,9,10,11");
        assert_eq!(long.to_string().parse::<Permutation>().unwrap(), long);
        assert!("122".parse::<Permutation>().is_err());
        assert_eq!(Permutation::all(3).len(), 6);
    }
}
