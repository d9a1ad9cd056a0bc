//! The poset on compositions generated by the jdt operators, its maximal
//! chains, and their relation to standard reverse composition tableaux.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::comp_ops::{jdt_op, jdt_word};
use crate::error::{ensure_internal, Error, Result};
use crate::jdt_srct::mu;
use crate::rho::rho_inv;
use crate::rs::{insert_variant, standardize, Word};
use crate::shapes::Composition;
use crate::tableau::Ssrct;

/// Column indices of a chain, in application order (first slide first).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct ChainWord(Vec<usize>);

impl ChainWord {
    pub fn new(cols: Vec<usize>) -> Result<Self> {
        if cols.contains(&0) {
            return Err(Error::Parse("chain columns must be positive".into()));
        }
        Ok(ChainWord(cols))
    }

    pub fn cols(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The word written with the last slide first, w = j_m ... j_1.
    pub fn growth_word(&self) -> Word {
        Word::new(self.0.iter().rev().copied().collect()).expect("positive letters")
    }

    pub fn from_growth_word(w: &Word) -> Self {
        ChainWord(w.letters().iter().rev().copied().collect())
    }
}

impl TryFrom<Vec<usize>> for ChainWord {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        ChainWord::new(v)
    }
}

impl From<ChainWord> for Vec<usize> {
    fn from(w: ChainWord) -> Self {
        w.0
    }
}

impl fmt::Display for ChainWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        f.write_str(&s.join(","))
    }
}

impl FromStr for ChainWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let cols = s
            .split([',', ' '])
            .filter(|x| !x.is_empty())
            .map(|x| x.trim().parse().map_err(|e| Error::Parse(format!("bad column {x:?}: {e}"))))
            .collect::<Result<Vec<usize>>>()?;
        ChainWord::new(cols)
    }
}

/// All (i, u_i(α)) with u_i(α) defined, i ascending.
pub fn rc_covers(alpha: &Composition) -> Vec<(usize, Composition)> {
    (1..=alpha.max_part() + 1)
        .filter_map(|i| jdt_op(alpha, i).map(|b| (i, b)))
        .collect()
}

/// Number of saturated chains from `alpha` up to `beta`.
pub fn count_maximal_chains(alpha: &Composition, beta: &Composition) -> BigUint {
    let mut memo = HashMap::new();
    count_from(alpha, beta, &mut memo)
}

fn count_from(current: &Composition, target: &Composition, memo: &mut HashMap<Composition, BigUint>) -> BigUint {
    if current == target {
        return BigUint::one();
    }
    if current.size() >= target.size() || !target.sort_to_partition().contains(&current.sort_to_partition()) {
        return BigUint::zero();
    }
    if let Some(v) = memo.get(current) {
        return v.clone();
    }
    let total = rc_covers(current)
        .into_iter()
        .map(|(_, next)| count_from(&next, target, memo))
        .sum::<BigUint>();
    memo.insert(current.clone(), total.clone());
    total
}

/// Every saturated chain from `alpha` to `beta`, as column words.
pub fn maximal_chains(alpha: &Composition, beta: &Composition) -> Vec<ChainWord> {
    fn go(current: &Composition, target: &Composition, prefix: &mut Vec<usize>, out: &mut Vec<ChainWord>) {
        if current == target {
            out.push(ChainWord(prefix.clone()));
            return;
        }
        if current.size() >= target.size() {
            return;
        }
        for (i, next) in rc_covers(current) {
            prefix.push(i);
            go(&next, target, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(alpha, beta, &mut Vec::new(), &mut out);
    out
}

/// Slides `tau` along the chain with corner fill, so the result stays straight.
pub fn slide_along(tau: &Ssrct, word: &ChainWord) -> Result<Ssrct> {
    let mut current = tau.clone();
    for &col in &word.0 {
        if jdt_op(current.outer(), col).is_none() {
            return Err(Error::Precondition(format!(
                "u_{col} is not defined on {}; invalid chain {word}",
                current.outer()
            )));
        }
        current = mu(&current, col, true)?.tableau;
    }
    Ok(current)
}

/// The standard tableau of the chain from ∅ given by `word`.
pub fn chain_to_srct(word: &ChainWord) -> Result<Ssrct> {
    let tau = slide_along(&Ssrct::empty(), word)?;
    let predicted = recording_srct(word)?;
    ensure_internal!(
        tau == predicted,
        "chain {word} gave\n{tau}but the recording tableau predicts\n{predicted}"
    );
    Ok(tau)
}

/// ρ⁻¹ of the recording tableau of the standardized growth word.
fn recording_srct(word: &ChainWord) -> Result<Ssrct> {
    let sigma = standardize(&word.growth_word());
    let (_, q) = insert_variant(&sigma)?;
    rho_inv(&q, &Composition::empty())
}

/// Outer and inner shapes after sliding any tableau of shape `alpha` along `word`.
pub fn inner_shape_after_slides(alpha: &Composition, word: &ChainWord) -> Result<(Composition, Composition)> {
    let outer = jdt_word(alpha, &word.0)
        .ok_or_else(|| Error::Precondition(format!("{word} is not a chain from {alpha}")))?;
    let inner = recording_srct(word)?.outer().clone();
    Ok((outer, inner))
}
