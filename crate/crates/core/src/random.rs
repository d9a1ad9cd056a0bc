//! Seeded random generators for tableaux, words and chains.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poset::{rc_covers, ChainWord};
use crate::rs::{insert_letters, insert_variant, Permutation, Word};
use crate::shapes::{Composition, Partition, SkewCompositionShape};
use crate::tableau::{canonical_tableau, enumerate_srct, Row, Ssrct, Ssrt};

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_permutation(rng: &mut impl Rng, n: usize) -> Permutation {
    let mut v: Vec<usize> = (1..=n).collect();
    v.shuffle(rng);
    Permutation::new(v).expect("shuffled identity")
}

pub fn random_composition(rng: &mut impl Rng, n: usize) -> Composition {
    let set = (1..n).filter(|_| rng.gen_bool(0.5)).collect();
    Composition::from_set(&set, n).expect("subset of [n-1]")
}

/// Straight standard reverse tableau with `n` cells.
pub fn random_srt(rng: &mut impl Rng, n: usize) -> Ssrt {
    insert_variant(&random_permutation(rng, n)).expect("insertion of a permutation").0
}

/// Straight semistandard reverse tableau with 1..=max_size cells and entries
/// at most its size, from inserting a random word.
pub fn random_ssrt(rng: &mut impl Rng, max_size: usize) -> Ssrt {
    let n = rng.gen_range(1..=max_size.max(1));
    let top = rng.gen_range(1..=n) as u32;
    let word: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=top)).collect();
    Ssrt::from_rows(insert_letters(&word).0).expect("insertion of a word")
}

/// A column growth word of length `n` (a uniformly chosen walk in Young's lattice).
pub fn random_growth_word(rng: &mut impl Rng, n: usize) -> Word {
    let mut shape = Partition::empty();
    let mut cols = Vec::with_capacity(n);
    for _ in 0..n {
        let node = *shape.addable_nodes().choose(rng).expect("a partition always has an addable node");
        cols.push(node.col);
        shape = shape.with_cell_added(node.row);
    }
    cols.reverse();
    Word::new(cols).expect("positive columns")
}

/// A random chain of `len` cover steps upward from `alpha`.
pub fn random_chain(rng: &mut impl Rng, alpha: &Composition, len: usize) -> ChainWord {
    let mut current = alpha.clone();
    let mut cols = Vec::with_capacity(len);
    for _ in 0..len {
        let (i, next) = rc_covers(&current).choose(rng).cloned().expect("u_1 is always defined");
        cols.push(i);
        current = next;
    }
    ChainWord::new(cols).expect("positive columns")
}

/// A skew shape α//β with |β| in 1..=max_inner and 1..=max_size cells,
/// built by a random upward walk from β.
pub fn random_skew_shape(rng: &mut impl Rng, max_size: usize, max_inner: usize) -> SkewCompositionShape {
    let inner_size = rng.gen_range(1..=max_inner.max(1));
    let inner = random_composition(rng, inner_size);
    let steps = rng.gen_range(1..=max_size.max(1));
    let mut outer = inner.clone();
    for _ in 0..steps {
        outer = outer.lc_covers().choose(rng).cloned().expect("covers exist");
    }
    SkewCompositionShape::new(outer, inner).expect("walk stays above the inner shape")
}

/// A uniformly chosen standard filling of a random skew shape.
pub fn random_skew_srct(rng: &mut impl Rng, max_size: usize, max_inner: usize) -> Ssrct {
    loop {
        let shape = random_skew_shape(rng, max_size, max_inner);
        let all = enumerate_srct(&shape).expect("size within the enumeration limit");
        if let Some(t) = all.choose(rng) {
            return t.clone();
        }
    }
}

/// Merges random pairs of consecutive values while the filling stays valid.
pub fn destandardize(rng: &mut impl Rng, tau: &Ssrct, attempts: usize) -> Ssrct {
    let mut current = tau.clone();
    for _ in 0..attempts {
        let top = current.max_entry();
        if top < 2 {
            break;
        }
        let i = rng.gen_range(1..top);
        let rows: Vec<Row> = current
            .rows()
            .iter()
            .map(|row| row.iter().map(|x| x.map(|v| if v > i { v - 1 } else { v })).collect())
            .collect();
        if let Ok(t) = Ssrct::new(current.outer().clone(), current.inner().clone(), rows) {
            current = t;
        }
    }
    current
}

/// A random semistandard skew reverse composition tableau.
pub fn random_skew_ssrct(rng: &mut impl Rng, max_size: usize, max_inner: usize) -> Ssrct {
    let tau = random_skew_srct(rng, max_size, max_inner);
    let attempts = rng.gen_range(0..=tau.size());
    destandardize(rng, &tau, attempts)
}

/// Up to `count` distinct fillings of the straight shape `beta`: its standard
/// fillings in random order, then semistandard and spread-out variants.
pub fn barred_fillings(rng: &mut impl Rng, beta: &Composition, count: usize) -> Vec<Ssrct> {
    let mut standard = enumerate_srct(&SkewCompositionShape::straight(beta.clone())).expect("small inner shape");
    standard.shuffle(rng);
    let mut out: Vec<Ssrct> = Vec::new();
    let push = |t: Ssrct, out: &mut Vec<Ssrct>| {
        if out.len() < count && !out.contains(&t) {
            out.push(t);
        }
    };
    push(canonical_tableau(beta), &mut out);
    for t in &standard {
        push(t.clone(), &mut out);
    }
    for t in &standard {
        push(destandardize(rng, t, beta.size()), &mut out);
    }
    let mut factor = 2;
    while out.len() < count && !beta.is_empty() {
        let base = standard.choose(rng).expect("nonempty shape has a filling");
        let spread = base
            .rows()
            .iter()
            .map(|row| row.iter().map(|x| x.map(|v| v * factor + rng.gen_range(0..factor))).collect())
            .collect();
        if let Ok(t) = Ssrct::new(beta.clone(), Composition::empty(), spread) {
            push(t, &mut out);
        }
        factor += 1;
    }
    out
}
