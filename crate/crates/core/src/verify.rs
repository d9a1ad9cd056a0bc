//! Named invariant suites, shared by the test harness and the `verify` command.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::comp_ops::jdt_word;
use crate::error::{Error, Result};
use crate::jdt_srct::{mu, mu_skew, mu_skew_with_filling, phi};
use crate::jdt_srt::{backward_slide, horizontal_movers, truncated_slide};
use crate::nsym::{rectification_census, right_pieri, Basis, Nsym, NsymElement, PieriKind};
use crate::poset::{chain_to_srct, count_maximal_chains, inner_shape_after_slides, maximal_chains, slide_along};
use crate::random::{
    barred_fillings, random_chain, random_growth_word, random_skew_ssrct, random_srt, random_ssrt, seeded,
};
use crate::rho::{rho_inv, rho_map};
use crate::rs::{evacuate, growth_word_tableau, insert_variant, standardize, Permutation};
use crate::shapes::{Composition, SkewCompositionShape};
use crate::tableau::{canonical_tableau, enumerate_srct, Row, Ssrct, Ssrt};

pub const DEFAULT_SEED: u64 = 20130417;
pub const DEFAULT_SAMPLES: usize = 500;
const KEPT_FAILURES: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    CommutingPhi,
    CommutingMu,
    ChainCount,
    Pieri,
    GeneralizedChains,
    Evacuation,
    SkewIndependence,
    RhoRoundtrip,
    GrowthWords,
    InnerShape,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::CommutingPhi,
        Suite::CommutingMu,
        Suite::ChainCount,
        Suite::Pieri,
        Suite::GeneralizedChains,
        Suite::Evacuation,
        Suite::SkewIndependence,
        Suite::RhoRoundtrip,
        Suite::GrowthWords,
        Suite::InnerShape,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::CommutingPhi => "commuting-phi",
            Suite::CommutingMu => "commuting-mu",
            Suite::ChainCount => "chain-count",
            Suite::Pieri => "pieri",
            Suite::GeneralizedChains => "generalized-chains",
            Suite::Evacuation => "evacuation",
            Suite::SkewIndependence => "skew-independence",
            Suite::RhoRoundtrip => "rho-roundtrip",
            Suite::GrowthWords => "growth-words",
            Suite::InnerShape => "inner-shape",
        }
    }

    pub fn is_randomized(self) -> bool {
        matches!(
            self,
            Suite::CommutingPhi
                | Suite::CommutingMu
                | Suite::SkewIndependence
                | Suite::RhoRoundtrip
                | Suite::GrowthWords
                | Suite::InnerShape
        )
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
            Error::Parse(format!("unknown suite {s:?}; expected one of {}", names.join(", ")))
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyConfig {
    /// Bound on tableau sizes (randomized suites) or degrees (exhaustive suites).
    pub max_size: usize,
    pub seed: u64,
    /// Number of random instances for randomized suites.
    pub samples: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { max_size: 8, seed: DEFAULT_SEED, samples: DEFAULT_SAMPLES }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub case: String,
    pub detail: String,
    /// Set when the failure was a broken internal assertion rather than a mismatch.
    pub internal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub max_size: usize,
    pub seed: Option<u64>,
    pub passed: u64,
    pub failed: u64,
    pub internal_failures: u64,
    /// The first few failures.
    pub failures: Vec<Failure>,
}

impl SuiteReport {
    fn new(suite: Suite, config: &VerifyConfig) -> Self {
        SuiteReport {
            suite,
            max_size: config.max_size,
            seed: suite.is_randomized().then_some(config.seed),
            passed: 0,
            failed: 0,
            internal_failures: 0,
            failures: Vec::new(),
        }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0 && self.passed > 0
    }

    /// Records one case: `Ok(None)` passes, `Ok(Some(msg))` is a mismatch.
    fn record(&mut self, case: impl FnOnce() -> String, outcome: Result<Option<String>>) {
        let (detail, internal) = match outcome {
            Ok(None) => {
                self.passed += 1;
                return;
            }
            Ok(Some(msg)) => (msg, false),
            Err(e) => {
                let internal = e.is_internal();
                (e.to_string(), internal)
            }
        };
        self.failed += 1;
        if internal {
            self.internal_failures += 1;
        }
        if self.failures.len() < KEPT_FAILURES {
            self.failures.push(Failure { case: case(), detail, internal });
        }
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: {} passed, {} failed (max size {}",
            if self.ok() { "PASS" } else { "FAIL" },
            self.suite,
            self.passed,
            self.failed,
            self.max_size
        )?;
        if let Some(seed) = self.seed {
            write!(f, ", seed {seed}")?;
        }
        writeln!(f, ")")?;
        for x in &self.failures {
            writeln!(f, "  {}: {}", x.case, x.detail)?;
        }
        Ok(())
    }
}

fn expect_eq<T: PartialEq + fmt::Debug>(what: &str, got: T, want: T) -> Option<String> {
    (got != want).then(|| format!("{what}: got {got:?}, expected {want:?}"))
}

fn first_mismatch(checks: impl IntoIterator<Item = Option<String>>) -> Option<String> {
    checks.into_iter().flatten().next()
}

/// Runs a suite with an in-memory NSym context bounded by `config.max_size`.
pub fn run_suite(suite: Suite, config: &VerifyConfig) -> SuiteReport {
    run_suite_with(suite, config, &Nsym::new(config.max_size))
}

pub fn run_suite_with(suite: Suite, config: &VerifyConfig, nsym: &Nsym) -> SuiteReport {
    let mut report = SuiteReport::new(suite, config);
    match suite {
        Suite::CommutingPhi => commuting_phi(&mut report, config),
        Suite::CommutingMu => commuting_mu(&mut report, config),
        Suite::ChainCount => chain_count(&mut report, config),
        Suite::Pieri => pieri(&mut report, config, nsym),
        Suite::GeneralizedChains => generalized_chains(&mut report, config),
        Suite::Evacuation => evacuation(&mut report, config),
        Suite::SkewIndependence => skew_independence(&mut report, config),
        Suite::RhoRoundtrip => rho_roundtrip(&mut report, config),
        Suite::GrowthWords => growth_words(&mut report, config),
        Suite::InnerShape => inner_shape(&mut report, config),
    }
    report
}

fn addable_columns(t: &Ssrt) -> Vec<usize> {
    t.outer().addable_nodes().into_iter().map(|c| c.col).collect()
}

fn flat(t: &Ssrt) -> String {
    t.render().trim_end().replace('\n', " / ")
}

fn commuting_phi(report: &mut SuiteReport, config: &VerifyConfig) {
    let mut rng = seeded(config.seed);
    for _ in 0..config.samples {
        let t = random_ssrt(&mut rng, config.max_size);
        for col in addable_columns(&t).into_iter().filter(|&c| c >= 2) {
            let outcome = (|| {
                let tau = rho_inv(&t, &Composition::empty())?;
                let (truncated, movers) = truncated_slide(&t, col)?;
                let r = phi(&tau, col)?;
                Ok(first_mismatch([
                    expect_eq("ρ⁻¹ of the truncated slide", &r.tableau, &rho_inv(&truncated, &Composition::empty())?),
                    expect_eq("exited entry", r.exited_entry(), movers.first_mover),
                ]))
            })();
            report.record(|| format!("φ_{col} on {}", flat(&t)), outcome);
        }
    }
}

fn commuting_mu(report: &mut SuiteReport, config: &VerifyConfig) {
    let mut rng = seeded(config.seed);
    for _ in 0..config.samples {
        let t = random_ssrt(&mut rng, config.max_size);
        for col in addable_columns(&t) {
            let outcome = (|| {
                let tau = rho_inv(&t, &Composition::empty())?;
                let holed = mu(&tau, col, false)?;
                let filled = mu(&tau, col, true)?;
                let mut movers = horizontal_movers(&t, col)?;
                movers.sort_unstable_by(|a, b| b.cmp(a));
                Ok(first_mismatch([
                    expect_eq("ρ_(1) of μ", rho_map(&holed.tableau)?, backward_slide(&t, col, false)?.tableau),
                    expect_eq("ρ of corner-filled μ", rho_map(&filled.tableau)?, backward_slide(&t, col, true)?.tableau),
                    expect_eq("exited entries", &holed.exited, &movers),
                ]))
            })();
            report.record(|| format!("μ_{col} on {}", flat(&t)), outcome);
        }
    }
}

fn chain_count(report: &mut SuiteReport, config: &VerifyConfig) {
    for n in 1..=config.max_size {
        for alpha in Composition::all_of_size(n) {
            let outcome = (|| {
                let tableaux = enumerate_srct(&SkewCompositionShape::straight(alpha.clone()))?;
                let count = count_maximal_chains(&Composition::empty(), &alpha);
                if count != BigUint::from(tableaux.len()) {
                    return Ok(Some(format!("{count} chains but {} tableaux", tableaux.len())));
                }
                let mut images = HashSet::new();
                for word in maximal_chains(&Composition::empty(), &alpha) {
                    let tau = chain_to_srct(&word)?;
                    if tau.outer() != &alpha || !images.insert(tau) {
                        return Ok(Some(format!("chain {word} does not give a new tableau of shape {alpha}")));
                    }
                }
                let all: HashSet<Ssrct> = tableaux.into_iter().collect();
                Ok(expect_eq("chain images", images == all, true))
            })();
            report.record(|| format!("f(∅,{alpha})"), outcome);
        }
    }
}

/// Each census maps a rectified tableau to the number of fillings of γ//inner.
type Census = HashMap<Ssrct, u64>;

fn pieri(report: &mut SuiteReport, config: &VerifyConfig, nsym: &Nsym) {
    let max_n = 3.min(config.max_size);
    let mut censuses: HashMap<(Composition, Composition), Census> = HashMap::new();
    for total in 1..=config.max_size {
        for gamma in Composition::all_of_size(total) {
            for n in 1..=max_n.min(total) {
                for inner in [row_shape(n), column_shape(n)] {
                    if !inner.lc_leq(&gamma) {
                        continue;
                    }
                    let shape = SkewCompositionShape { outer: gamma.clone(), inner: inner.clone() };
                    match rectification_census(&shape, config.max_size) {
                        Ok(c) => {
                            censuses.insert((gamma.clone(), inner), c);
                        }
                        Err(e) => report.record(|| format!("census of {gamma}//{inner}"), Err(e)),
                    }
                }
            }
        }
    }
    for n in 1..=max_n {
        for size in 0..=config.max_size - n {
            let alphas = if size == 0 { vec![Composition::empty()] } else { Composition::all_of_size(size) };
            for alpha in alphas {
                for kind in [PieriKind::Row, PieriKind::Column] {
                    let outcome = pieri_case(&alpha, n, kind, nsym, &censuses);
                    report.record(|| format!("s_{alpha} · {kind:?}({n})"), outcome);
                }
            }
        }
    }
}

fn row_shape(n: usize) -> Composition {
    Composition::new(vec![n]).expect("positive")
}

fn column_shape(n: usize) -> Composition {
    Composition::new(vec![1; n]).expect("positive")
}

fn pieri_case(
    alpha: &Composition,
    n: usize,
    kind: PieriKind,
    nsym: &Nsym,
    censuses: &HashMap<(Composition, Composition), Census>,
) -> Result<Option<String>> {
    let second = match kind {
        PieriKind::Row => row_shape(n),
        PieriKind::Column => column_shape(n),
    };
    let expansion = right_pieri(alpha, n, kind)?;
    let listed: HashSet<&Composition> = expansion.iter().collect();
    let canonical = canonical_tableau(alpha);
    for gamma in Composition::all_of_size(alpha.size() + n) {
        let c = censuses
            .get(&(gamma.clone(), second.clone()))
            .map_or(0, |census| census.get(&canonical).copied().unwrap_or(0));
        let want = u64::from(listed.contains(&gamma));
        if c != want {
            return Ok(Some(format!("C^{gamma}_{alpha},{second} = {c} but the operator expansion says {want}")));
        }
    }
    let product = nsym.multiply(
        &NsymElement::basis_element(Basis::S, alpha.clone()),
        &NsymElement::basis_element(Basis::S, second),
    )?;
    let expected = NsymElement::from_terms(Basis::S, expansion.into_iter().map(|b| (b, BigInt::one())));
    Ok(expect_eq("algebra product", product.to_string(), expected.to_string()))
}

fn generalized_chains(report: &mut SuiteReport, config: &VerifyConfig) {
    let max_alpha = 4.min(config.max_size.saturating_sub(1));
    let srct_counts: HashMap<Composition, BigUint> = (0..=config.max_size)
        .flat_map(|n| if n == 0 { vec![Composition::empty()] } else { Composition::all_of_size(n) })
        .map(|g| {
            let c = count_maximal_chains(&Composition::empty(), &g);
            (g, c)
        })
        .collect();
    for k in 2..=config.max_size {
        for beta in Composition::all_of_size(k) {
            let mut by_inner: Vec<(Composition, Census)> = Vec::new();
            for m in 1..=max_alpha.min(k - 1) {
                let outcome = (|| {
                    by_inner.clear();
                    for gamma in Composition::all_of_size(k - m) {
                        if gamma.lc_leq(&beta) {
                            let shape = SkewCompositionShape { outer: beta.clone(), inner: gamma.clone() };
                            by_inner.push((gamma, rectification_census(&shape, config.max_size)?));
                        }
                    }
                    Ok(())
                })();
                if let Err(e) = outcome {
                    report.record(|| format!("censuses of {beta}"), Err(e));
                    continue;
                }
                for alpha in Composition::all_of_size(m) {
                    let chains = count_maximal_chains(&alpha, &beta);
                    let canonical = canonical_tableau(&alpha);
                    let sum: BigUint = by_inner
                        .iter()
                        .map(|(gamma, census)| {
                            BigUint::from(census.get(&canonical).copied().unwrap_or(0)) * &srct_counts[gamma]
                        })
                        .sum();
                    report.record(|| format!("f({alpha},{beta})"), Ok(expect_eq("Σ C·f", sum, chains)));
                }
            }
        }
    }
}

fn evacuation(report: &mut SuiteReport, config: &VerifyConfig) {
    for n in 1..=config.max_size {
        for sigma in Permutation::all(n) {
            let outcome = (|| {
                let (p, q) = insert_variant(&sigma)?;
                let (p_inv, q_inv) = insert_variant(&sigma.inverse())?;
                let (ep, eq) = (evacuate(&p)?, evacuate(&q)?);
                Ok(first_mismatch([
                    expect_eq("P(σ⁻¹)", &p_inv, &eq),
                    expect_eq("Q(σ⁻¹)", &q_inv, &ep),
                    expect_eq("e∘e on P", &evacuate(&ep)?, &p),
                    expect_eq("e∘e on Q", &evacuate(&eq)?, &q),
                ]))
            })();
            report.record(|| format!("σ = {sigma}"), outcome);
        }
    }
}

fn skew_independence(report: &mut SuiteReport, config: &VerifyConfig) {
    let mut rng = seeded(config.seed);
    for _ in 0..config.samples {
        let tau = random_skew_ssrct(&mut rng, config.max_size, 4.min(config.max_size));
        let columns: Vec<usize> =
            tau.outer().sort_to_partition().addable_nodes().into_iter().map(|c| c.col).collect();
        let fillings = barred_fillings(&mut rng, tau.inner(), 4);
        for col in columns {
            let outcome = (|| {
                if fillings.len() < 3 {
                    return Ok(Some(format!("only {} barred fillings of {}", fillings.len(), tau.inner())));
                }
                let reference = mu_skew(&tau, col)?;
                for barred in &fillings {
                    let other = mu_skew_with_filling(&tau, col, barred)?;
                    if other.tableau != reference.tableau || other.exited != reference.exited {
                        return Ok(Some(format!(
                            "filling {} gave\n{}instead of\n{}",
                            barred.render().trim_end(),
                            other.tableau.render(),
                            reference.tableau.render()
                        )));
                    }
                }
                Ok(None)
            })();
            report.record(|| format!("μ_{col} on {}", tau.render().trim_end().replace('\n', " / ")), outcome);
        }
    }
}

fn rho_roundtrip(report: &mut SuiteReport, config: &VerifyConfig) {
    let mut rng = seeded(config.seed);
    for _ in 0..config.samples {
        let t = random_ssrt(&mut rng, config.max_size);
        let outcome = (|| Ok(expect_eq("ρ∘ρ⁻¹", rho_map(&rho_inv(&t, &Composition::empty())?)?, t.clone())))();
        report.record(|| flat(&t), outcome);
        let tau = random_skew_ssrct(&mut rng, config.max_size, 4.min(config.max_size));
        let outcome = (|| Ok(expect_eq("ρ⁻¹∘ρ", rho_inv(&rho_map(&tau)?, tau.inner())?, tau.clone())))();
        report.record(|| tau.render().trim_end().replace('\n', " / "), outcome);
    }
}

fn growth_words(report: &mut SuiteReport, config: &VerifyConfig) {
    let mut rng = seeded(config.seed);
    for _ in 0..config.samples {
        let n = rand::Rng::gen_range(&mut rng, 1..=config.max_size.max(1));
        let w = random_growth_word(&mut rng, n);
        let outcome = (|| {
            let t = growth_word_tableau(&w)?;
            let sigma_inv = standardize(&w).inverse();
            let reading: Vec<usize> = t.column_reading_word().into_iter().map(|v| v as usize).collect();
            Ok(first_mismatch([
                expect_eq("column reading word", reading.as_slice(), sigma_inv.one_line()),
                expect_eq("insertion tableau", &t, &insert_variant(&sigma_inv)?.0),
            ]))
        })();
        report.record(|| format!("w = {w}"), outcome);
    }
}

fn inner_shape(report: &mut SuiteReport, config: &VerifyConfig) {
    let mut rng = seeded(config.seed);
    for _ in 0..config.samples {
        let size = rand::Rng::gen_range(&mut rng, 1..=config.max_size.max(2) - 1);
        let len = rand::Rng::gen_range(&mut rng, 1..=config.max_size.max(2) - size);
        let t = random_srt(&mut rng, size);
        let word_seed: u64 = rand::Rng::gen(&mut rng);
        let outcome = (|| {
            let tau = rho_inv(&t, &Composition::empty())?;
            let word = random_chain(&mut seeded(word_seed), tau.outer(), len);
            let slid = slide_along(&tau, &word)?;
            let offset = tau.max_entry();
            let stripped: Vec<Row> =
                slid.rows().iter().map(|row| row.iter().map(|x| x.filter(|&v| v <= offset)).collect()).collect();
            let literal = Ssrct::from_grid(stripped)?;
            let (outer, inner) = inner_shape_after_slides(tau.outer(), &word)?;
            Ok(first_mismatch([
                expect_eq("outer shape", &outer, literal.outer()),
                expect_eq("inner shape", &inner, literal.inner()),
                expect_eq("outer shape from operators", jdt_word(tau.outer(), word.cols()).as_ref(), Some(&outer)),
            ]))
        })();
        report.record(|| format!("{} along {word_seed}", flat(&t)), outcome);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(samples: usize, max_size: usize) -> VerifyConfig {
        VerifyConfig { max_size, seed: DEFAULT_SEED, samples }
    }

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
            assert_eq!(serde_json::to_string(&s).unwrap(), format!("\"{}\"", s.name()));
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn every_suite_passes_small() {
        for s in Suite::ALL {
            let r = run_suite(s, &small(40, 5));
            assert!(r.ok(), "{r}");
        }
    }
}
