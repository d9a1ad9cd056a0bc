//! Exact arithmetic in NSym over the complete homogeneous (H), ribbon and
//! noncommutative Schur (S) bases; the right Pieri rule; LR coefficients.

mod cache;
mod matrix;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub use cache::{default_cache_dir, CACHE_DIR_ENV};

use crate::comp_ops::jdt_op;
use crate::error::{Error, Result};
use crate::rs::rectify;
use crate::shapes::{Composition, SkewCompositionShape};
use crate::tableau::{canonical_tableau, descent_composition, enumerate_srct_with_limit, Ssrct};
use matrix::{Solver, Sparse};

/// Default bound on degrees handled by NSym computations.
pub const DEFAULT_NSYM_LIMIT: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    H,
    Ribbon,
    S,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::H => "h",
            Basis::Ribbon => "ribbon",
            Basis::S => "s",
        })
    }
}

impl FromStr for Basis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "h" => Ok(Basis::H),
            "r" | "ribbon" => Ok(Basis::Ribbon),
            "s" => Ok(Basis::S),
            other => Err(Error::Parse(format!("unknown basis {other:?} (expected h, r or s)"))),
        }
    }
}

/// A finite integer combination of basis elements indexed by compositions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NsymElement {
    basis: Basis,
    #[serde(with = "terms_serde")]
    terms: BTreeMap<Composition, BigInt>,
}

mod terms_serde {
    use super::*;
    use serde::{Deserializer, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Term {
        index: Composition,
        coefficient: String,
    }

    pub fn serialize<S: Serializer>(terms: &BTreeMap<Composition, BigInt>, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<Term> = terms
            .iter()
            .map(|(k, c)| Term { index: k.clone(), coefficient: c.to_string() })
            .collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BTreeMap<Composition, BigInt>, D::Error> {
        let v = Vec::<Term>::deserialize(d)?;
        let mut out = BTreeMap::new();
        for t in v {
            let c: BigInt = t.coefficient.parse().map_err(serde::de::Error::custom)?;
            if !c.is_zero() {
                *out.entry(t.index).or_insert_with(BigInt::zero) += c;
            }
        }
        out.retain(|_, c: &mut BigInt| !c.is_zero());
        Ok(out)
    }
}

impl NsymElement {
    pub fn zero(basis: Basis) -> Self {
        NsymElement { basis, terms: BTreeMap::new() }
    }

    pub fn basis_element(basis: Basis, index: Composition) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(index, BigInt::one());
        NsymElement { basis, terms }
    }

    pub fn from_terms(basis: Basis, terms: impl IntoIterator<Item = (Composition, BigInt)>) -> Self {
        let mut out = NsymElement::zero(basis);
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    fn add_term(&mut self, index: Composition, coefficient: BigInt) {
        if coefficient.is_zero() {
            return;
        }
        let slot = self.terms.entry(index.clone()).or_insert_with(BigInt::zero);
        *slot += coefficient;
        if slot.is_zero() {
            self.terms.remove(&index);
        }
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> &BTreeMap<Composition, BigInt> {
        &self.terms
    }

    pub fn coefficient(&self, index: &Composition) -> BigInt {
        self.terms.get(index).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degrees(&self) -> BTreeSet<usize> {
        self.terms.keys().map(Composition::size).collect()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degrees().len() <= 1
    }

    pub fn add(&self, other: &NsymElement) -> Result<NsymElement> {
        if self.basis != other.basis {
            return Err(Error::Precondition(format!("cannot add {} and {} elements", self.basis, other.basis)));
        }
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &BigInt) -> NsymElement {
        NsymElement::from_terms(self.basis, self.terms.iter().map(|(k, c)| (k.clone(), c * factor)))
    }

    /// Parses "2*(1,4,2) - (3) + (1,1)" in the given basis.
    pub fn parse(basis: Basis, text: &str) -> Result<Self> {
        let mut out = NsymElement::zero(basis);
        let mut rest = text.trim();
        if rest == "0" {
            return Ok(out);
        }
        let mut first = true;
        while !rest.is_empty() {
            let mut sign = BigInt::one();
            if let Some(r) = rest.strip_prefix('+') {
                rest = r.trim_start();
            } else if let Some(r) = rest.strip_prefix('-') {
                sign = -sign;
                rest = r.trim_start();
            } else if !first {
                return Err(Error::Parse(format!("expected + or - before {rest:?}")));
            }
            first = false;
            let digits = rest.find(|ch: char| !ch.is_ascii_digit()).unwrap_or(rest.len());
            let mut coefficient = BigInt::one();
            if digits > 0 {
                coefficient = rest[..digits].parse().map_err(|e| Error::Parse(format!("{e}")))?;
                rest = rest[digits..].trim_start();
                rest = rest
                    .strip_prefix('*')
                    .ok_or_else(|| Error::Parse(format!("expected * after coefficient in {text:?}")))?
                    .trim_start();
            }
            if !rest.starts_with('(') {
                return Err(Error::Parse(format!("expected a composition at {rest:?}")));
            }
            let close = rest.find(')').ok_or_else(|| Error::Parse(format!("unclosed composition in {text:?}")))?;
            let index: Composition = rest[..=close].parse()?;
            out.add_term(index, sign * coefficient);
            rest = rest[close + 1..].trim_start();
        }
        Ok(out)
    }
}

impl fmt::Display for NsymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (index, c)) in self.terms.iter().enumerate() {
            match (k, c.is_negative()) {
                (0, false) => write!(f, "{c}*{index}")?,
                (0, true) => write!(f, "-{}*{index}", c.abs())?,
                (_, false) => write!(f, " + {c}*{index}")?,
                (_, true) => write!(f, " - {}*{index}", c.abs())?,
            }
        }
        Ok(())
    }
}

/// d[α][β] = number of standard tableaux of shape α with descent composition β.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DMatrix {
    pub n: usize,
    /// Row and column index, in canonical order.
    pub compositions: Vec<Composition>,
    pub entries: Vec<Vec<u64>>,
}

impl DMatrix {
    pub fn get(&self, shape: &Composition, descent: &Composition) -> u64 {
        let pos = |c: &Composition| self.compositions.iter().position(|x| x == c);
        match (pos(shape), pos(descent)) {
            (Some(a), Some(b)) => self.entries[a][b],
            _ => 0,
        }
    }

    fn compute(n: usize) -> Result<DMatrix> {
        let compositions = Composition::all_of_size(n);
        let index: HashMap<&Composition, usize> = compositions.iter().enumerate().map(|(k, c)| (c, k)).collect();
        let mut entries = vec![vec![0u64; compositions.len()]; compositions.len()];
        for (a, alpha) in compositions.iter().enumerate() {
            for tau in enumerate_srct_with_limit(&SkewCompositionShape::straight(alpha.clone()), n)? {
                entries[a][index[&descent_composition(&tau)?]] += 1;
            }
        }
        Ok(DMatrix { n, compositions, entries })
    }
}

struct DegreeTables {
    compositions: Vec<Composition>,
    index: HashMap<Composition, usize>,
    d: DMatrix,
    /// Ribbon coordinates to S coordinates (the d-matrix) and its solver.
    ribbon_to_s: Sparse,
    s_to_ribbon: Solver,
    /// Ribbon coordinates to H coordinates (signed coarsening sums) and its solver.
    ribbon_to_h: Sparse,
    h_to_ribbon: Solver,
}

/// Computation context: a degree limit plus per-degree tables built once.
pub struct Nsym {
    limit: usize,
    cache_dir: Option<PathBuf>,
    tables: Mutex<HashMap<usize, Arc<OnceLock<Arc<DegreeTables>>>>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PieriKind {
    Row,
    #[serde(alias = "col")]
    Column,
}

impl FromStr for PieriKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "row" => Ok(PieriKind::Row),
            "col" | "column" => Ok(PieriKind::Column),
            other => Err(Error::Parse(format!("unknown Pieri kind {other:?} (row or col)"))),
        }
    }
}

impl Nsym {
    /// In-memory tables only.
    pub fn new(limit: usize) -> Self {
        Nsym { limit, cache_dir: None, tables: Mutex::new(HashMap::new()) }
    }

    /// Also reads and writes d-matrices under `dir`.
    pub fn with_cache_dir(limit: usize, dir: PathBuf) -> Self {
        Nsym { limit, cache_dir: Some(dir), tables: Mutex::new(HashMap::new()) }
    }

    /// The shared in-memory context with the default limit.
    pub fn global() -> &'static Nsym {
        static GLOBAL: OnceLock<Nsym> = OnceLock::new();
        GLOBAL.get_or_init(|| Nsym::new(DEFAULT_NSYM_LIMIT))
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    fn check_degree(&self, n: usize) -> Result<()> {
        if n > self.limit {
            Err(Error::LimitExceeded { size: n, limit: self.limit })
        } else {
            Ok(())
        }
    }

    fn tables(&self, n: usize) -> Result<Arc<DegreeTables>> {
        self.check_degree(n)?;
        let cell = self.tables.lock().expect("nsym table lock").entry(n).or_default().clone();
        if let Some(t) = cell.get() {
            return Ok(t.clone());
        }
        let built = Arc::new(self.build_tables(n)?);
        Ok(cell.get_or_init(|| built).clone())
    }

    fn build_tables(&self, n: usize) -> Result<DegreeTables> {
        let d = match self.cache_dir.as_deref().and_then(|dir| cache::load(dir, n)) {
            Some(d) => d,
            None => {
                let d = DMatrix::compute(n)?;
                if let Some(dir) = &self.cache_dir {
                    cache::store(dir, &d);
                }
                d
            }
        };
        let compositions = d.compositions.clone();
        let index = compositions.iter().enumerate().map(|(k, c)| (c.clone(), k)).collect();
        let size = compositions.len();
        let ribbon_to_s = Sparse::from_fn(size, |a, b| BigInt::from(d.entries[a][b]));
        let s_to_ribbon = Solver::new(ribbon_to_s.clone())?;
        let ribbon_to_h = Sparse::from_fn(size, |a, b| {
            let (alpha, beta) = (&compositions[a], &compositions[b]);
            match beta.refines(alpha) {
                false => BigInt::zero(),
                true if (beta.len() - alpha.len()) % 2 == 0 => BigInt::one(),
                true => -BigInt::one(),
            }
        });
        let h_to_ribbon = Solver::new(ribbon_to_h.clone())?;
        Ok(DegreeTables { compositions, index, d, ribbon_to_s, s_to_ribbon, ribbon_to_h, h_to_ribbon })
    }

    pub fn d_matrix(&self, n: usize) -> Result<DMatrix> {
        Ok(self.tables(n)?.d.clone())
    }

    /// The exact inverse of the d-matrix, indexed like it.
    pub fn d_matrix_inverse(&self, n: usize) -> Result<Vec<Vec<BigInt>>> {
        matrix::invert_integral(&self.tables(n)?.ribbon_to_s.to_dense())
    }

    /// Whether the d-matrix of degree `n` is unitriangular in some order of compositions.
    pub fn d_matrix_is_unitriangular(&self, n: usize) -> Result<bool> {
        Ok(self.tables(n)?.s_to_ribbon.is_substitution())
    }

    pub fn convert(&self, x: &NsymElement, target: Basis) -> Result<NsymElement> {
        if x.basis == target {
            return Ok(x.clone());
        }
        let mut out = NsymElement::zero(target);
        for n in x.degrees() {
            let t = self.tables(n)?;
            let mut v = vec![BigInt::zero(); t.compositions.len()];
            for (k, c) in x.terms.iter().filter(|(k, _)| k.size() == n) {
                v[t.index[k]] = c.clone();
            }
            let ribbon = match x.basis {
                Basis::Ribbon => v,
                Basis::H => t.h_to_ribbon.solve(&v),
                Basis::S => t.s_to_ribbon.solve(&v),
            };
            let result = match target {
                Basis::Ribbon => ribbon,
                Basis::H => t.ribbon_to_h.apply(&ribbon),
                Basis::S => t.ribbon_to_s.apply(&ribbon),
            };
            for (k, c) in t.compositions.iter().zip(result) {
                out.add_term(k.clone(), c);
            }
        }
        Ok(out)
    }

    /// The product in S, computed in H where h_α h_β = h_{αβ}.
    pub fn multiply(&self, x: &NsymElement, y: &NsymElement) -> Result<NsymElement> {
        let top = x.degrees().last().copied().unwrap_or(0) + y.degrees().last().copied().unwrap_or(0);
        self.check_degree(top)?;
        let xh = self.convert(x, Basis::H)?;
        let yh = self.convert(y, Basis::H)?;
        let mut product = NsymElement::zero(Basis::H);
        for (a, ca) in &xh.terms {
            for (b, cb) in &yh.terms {
                product.add_term(a.concat(b), ca * cb);
            }
        }
        self.convert(&product, Basis::S)
    }

    /// C^γ_{αβ}: standard tableaux of shape γ//β that rectify to the canonical tableau of α.
    pub fn lr_coefficient(&self, alpha: &Composition, beta: &Composition, gamma: &Composition) -> Result<u64> {
        if gamma.size() != alpha.size() + beta.size() {
            return Err(Error::Precondition(format!("|{gamma}| ≠ |{alpha}| + |{beta}|")));
        }
        self.check_degree(alpha.size())?;
        if !beta.lc_leq(gamma) {
            return Ok(0);
        }
        let census = rectification_census(&SkewCompositionShape { outer: gamma.clone(), inner: beta.clone() }, self.limit)?;
        Ok(census.get(&canonical_tableau(alpha)).copied().unwrap_or(0))
    }
}

/// Counts the standard tableaux of a skew shape by their rectification.
pub fn rectification_census(shape: &SkewCompositionShape, limit: usize) -> Result<HashMap<Ssrct, u64>> {
    let mut census = HashMap::new();
    for tau in enumerate_srct_with_limit(shape, limit)? {
        *census.entry(rectify(&tau)?).or_insert(0) += 1;
    }
    Ok(census)
}

/// The compositions β with s_β in s_α · s_(n) (row) or s_α · s_(1ⁿ) (column),
/// found by walking the jdt operators; no enumeration is involved.
pub fn right_pieri(alpha: &Composition, n: usize, kind: PieriKind) -> Result<Vec<Composition>> {
    fn go(
        current: &Composition,
        remaining: usize,
        last: Option<usize>,
        kind: PieriKind,
        seen: &mut BTreeSet<Composition>,
    ) -> Result<()> {
        if remaining == 0 {
            if !seen.insert(current.clone()) {
                return Err(Error::Internal(format!("Pieri expansion produced {current} twice")));
            }
            return Ok(());
        }
        let top = current.max_part() + 1;
        let range = match (kind, last) {
            (_, None) => 1..=top,
            (PieriKind::Row, Some(l)) => l + 1..=top,
            (PieriKind::Column, Some(l)) => 1..=l.min(top),
        };
        for i in range {
            if let Some(next) = jdt_op(current, i) {
                go(&next, remaining - 1, Some(i), kind, seen)?;
            }
        }
        Ok(())
    }
    let mut seen = BTreeSet::new();
    go(alpha, n, None, kind, &mut seen)?;
    Ok(seen.into_iter().collect())
}

pub fn d_matrix(n: usize) -> Result<DMatrix> {
    Nsym::global().d_matrix(n)
}

pub fn convert(x: &NsymElement, target: Basis) -> Result<NsymElement> {
    Nsym::global().convert(x, target)
}

pub fn multiply(x: &NsymElement, y: &NsymElement) -> Result<NsymElement> {
    Nsym::global().multiply(x, y)
}

pub fn lr_coefficient(alpha: &Composition, beta: &Composition, gamma: &Composition) -> Result<u64> {
    Nsym::global().lr_coefficient(alpha, beta, gamma)
}
