use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::One;

use ncstab::jdt_srct::{mu, phi};
use ncstab::jdt_srt::backward_slide;
use ncstab::nsym::{Basis, Nsym, NsymElement};
use ncstab::poset::{chain_to_srct, ChainWord};
use ncstab::rho::{rho_inv, rho_map};
use ncstab::rs::{evacuate, insert_variant, Permutation};
use ncstab::verify::{run_suite, Suite, SuiteReport, VerifyConfig, DEFAULT_SEED};
use ncstab::{Composition, Ssrct, Ssrt};

fn srt(rows: &[&[u32]]) -> Ssrt {
    Ssrt::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
}

fn srct(rows: &[&[u32]]) -> Ssrct {
    Ssrct::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
}

fn comps(list: &[&str]) -> Vec<Composition> {
    list.iter().map(|s| s.parse().unwrap()).collect()
}

fn check(ok: bool, what: &str, problems: &mut Vec<String>) {
    if !ok {
        problems.push(what.to_string());
    }
}

fn pieri_products(problems: &mut Vec<String>) {
    let nsym = Nsym::new(10);
    let s142 = NsymElement::basis_element(Basis::S, "(1,4,2)".parse().unwrap());
    let cases = [
        (
            "(3)",
            comps(&[
                "(1,4,2,3)", "(1,2,2,5)", "(1,4,1,4)", "(1,3,1,5)", "(1,2,1,6)", "(4,2,4)", "(3,2,5)", "(2,2,6)",
                "(1,4,5)", "(1,3,6)", "(1,2,7)",
            ]),
        ),
        (
            "(1,1,1)",
            comps(&[
                "(1,4,2,1,1,1)", "(4,2,2,1,1)", "(1,4,3,1,1)", "(1,2,5,1,1)", "(4,3,2,1)", "(2,5,2,1)", "(1,5,3,1)",
                "(5,3,2)",
            ]),
        ),
    ];
    for (second, expected) in cases {
        let product = nsym
            .multiply(&s142, &NsymElement::basis_element(Basis::S, second.parse().unwrap()))
            .unwrap();
        let want = NsymElement::from_terms(Basis::S, expected.into_iter().map(|c| (c, BigInt::one())));
        check(product == want, &format!("s_(1,4,2) · s_{second}"), problems);
    }
}

fn insertion_examples(problems: &mut Vec<String>) {
    let (p, q) = insert_variant(&"3157624".parse::<Permutation>().unwrap()).unwrap();
    check(p == srt(&[&[7, 6, 4], &[5, 2], &[3, 1]]), "P(3157624)", problems);
    check(q == srt(&[&[7, 6, 2], &[5, 3], &[4, 1]]), "Q(3157624)", problems);
    check(evacuate(&p).unwrap() == srt(&[&[7, 5, 1], &[6, 3], &[4, 2]]), "e(P(3157624))", problems);
    let (p, q) = insert_variant(&"791258364".parse::<Permutation>().unwrap()).unwrap();
    check(p == srt(&[&[9, 8, 6, 4], &[7, 5, 3], &[2], &[1]]), "P(791258364)", problems);
    check(q == srt(&[&[9, 7, 3, 1], &[8, 6, 2], &[5], &[4]]), "Q(791258364)", problems);
}

fn big_slide_example(problems: &mut Vec<String>) {
    let t = srt(&[
        &[48, 46, 45, 40, 39, 34, 30, 14, 11],
        &[47, 42, 41, 33, 32, 31, 13, 5],
        &[44, 38, 36, 29, 21, 15, 4, 2],
        &[43, 35, 27, 22, 16, 12, 1],
        &[37, 28, 25, 20],
        &[26, 23, 18, 10],
        &[24, 17, 7, 3],
        &[19, 9, 6],
        &[8],
    ]);
    let top: [&[u32]; 4] = [&[8], &[19, 17, 7, 3], &[24, 23, 18, 10], &[26, 9, 6]];
    let states: [[&[u32]; 5]; 9] = [
        [
            &[37, 35, 27, 22, 21, 15, 13, 5],
            &[43, 42, 41, 40, 39, 34, 30, 14, 11],
            &[44, 38, 36, 33, 32, 31, 4, 2],
            &[47, 46, 45, 29, 16, 12, 1],
            &[48, 28, 25, 20],
        ],
        [
            &[37, 35, 27, 22, 21, 15, 13, 2],
            &[43, 42, 41, 40, 39, 34, 30, 14, 11],
            &[44, 38, 36, 33, 32, 31, 4],
            &[47, 46, 45, 29, 16, 12, 1],
            &[48, 28, 25, 20],
        ],
        [
            &[37, 35, 27, 22, 21, 15, 4, 2],
            &[43, 42, 41, 40, 39, 34, 30, 14, 11],
            &[44, 38, 36, 33, 32, 31, 1],
            &[47, 46, 45, 29, 16, 12],
            &[48, 28, 25, 20],
        ],
        [
            &[37, 35, 27, 22, 21, 15, 4, 2],
            &[43, 42, 41, 40, 39, 31, 30, 14, 11],
            &[44, 38, 36, 33, 32, 12, 1],
            &[47, 46, 45, 29, 16],
            &[48, 28, 25, 20],
        ],
        [
            &[37, 35, 27, 22, 21, 15, 4, 2],
            &[43, 42, 41, 40, 32, 31, 30, 14, 11],
            &[44, 38, 36, 33, 16, 12, 1],
            &[47, 46, 45, 29],
            &[48, 28, 25, 20],
        ],
        [
            &[37, 35, 27, 22, 21, 15, 4, 2],
            &[43, 42, 41, 33, 32, 31, 30, 14, 11],
            &[44, 38, 36, 29, 16, 12, 1],
            &[47, 46, 45, 20],
            &[48, 28, 25],
        ],
        [
            &[37, 35, 27, 22, 21, 15, 4, 2],
            &[43, 42, 41, 33, 32, 31, 30, 14, 11],
            &[44, 38, 36, 29, 16, 12, 1],
            &[47, 46, 25, 20],
            &[48, 28],
        ],
        [
            &[37, 35, 27, 22, 21, 15, 4, 2],
            &[43, 42, 41, 33, 32, 31, 30, 14, 11],
            &[44, 38, 36, 29, 16, 12, 1],
            &[47, 28, 25, 20],
            &[48],
        ],
        [
            &[37, 35, 27, 22, 21, 15, 4, 2],
            &[43, 42, 41, 33, 32, 31, 30, 14, 11],
            &[44, 38, 36, 29, 16, 12, 1],
            &[47, 28, 25, 20],
            &[],
        ],
    ];
    let state = |k: usize| {
        let rows: Vec<Vec<u32>> =
            top.iter().chain(states[k].iter()).filter(|r| !r.is_empty()).map(|r| r.to_vec()).collect();
        Ssrct::from_rows(rows).unwrap()
    };
    let tau = state(0);
    check(rho_inv(&t, &Composition::empty()).ok().as_ref() == Some(&tau), "ρ⁻¹(T)", problems);
    let exits = [5, 13, 34, 39, 40, 45, 46, 48];
    let mut current = tau.clone();
    for (k, col) in (2..=9).rev().enumerate() {
        let r = phi(&current, col).unwrap();
        check(r.exited_entry() == Some(exits[k]), &format!("entry exiting φ_{col}"), problems);
        check(r.tableau == state(k + 1), &format!("φ_{col} step of the chain"), problems);
        current = r.tableau;
    }
    let mut mu_rows: Vec<Vec<Option<u32>>> =
        state(8).rows().to_vec();
    mu_rows.push(vec![None, Some(48), Some(46), Some(45), Some(40), Some(39), Some(34), Some(13), Some(5)]);
    let mu9 = mu(&tau, 9, false).unwrap().tableau;
    check(mu9 == Ssrct::from_grid(mu_rows).unwrap(), "μ_9(τ)", problems);
    let jdt9 = Ssrt::from_grid(vec![
        vec![None, Some(48), Some(46), Some(45), Some(40), Some(39), Some(34), Some(14), Some(11)],
        [47, 42, 41, 33, 32, 31, 30, 13, 5].map(Some).to_vec(),
        [44, 38, 36, 29, 21, 15, 4, 2].map(Some).to_vec(),
        [43, 35, 27, 22, 16, 12, 1].map(Some).to_vec(),
        [37, 28, 25, 20].map(Some).to_vec(),
        [26, 23, 18, 10].map(Some).to_vec(),
        [24, 17, 7, 3].map(Some).to_vec(),
        [19, 9, 6].map(Some).to_vec(),
        vec![Some(8)],
    ])
    .unwrap();
    check(backward_slide(&t, 9, false).unwrap().tableau == jdt9, "jdt_9(T)", problems);
    check(rho_map(&mu9).ok().as_ref() == Some(&jdt9), "ρ_(1)(μ_9(τ)) = jdt_9(T)", problems);
}

fn chain_example(problems: &mut Vec<String>) {
    let word = ChainWord::from_growth_word(&"341123121".parse().unwrap());
    let tau = chain_to_srct(&word).unwrap();
    check(tau == srct(&[&[4], &[5], &[8, 7, 3, 1], &[9, 6, 2]]), "chain 341123121", problems);
}

fn worked_examples() -> (bool, String) {
    let mut problems = Vec::new();
    pieri_products(&mut problems);
    insertion_examples(&mut problems);
    big_slide_example(&mut problems);
    chain_example(&mut problems);
    if problems.is_empty() {
        (true, "all displayed values reproduced".into())
    } else {
        (false, format!("mismatches: {}", problems.join("; ")))
    }
}

fn suite_outcome(reports: &[&SuiteReport]) -> (bool, String) {
    let ok = reports.iter().all(|r| r.ok());
    let summary: Vec<String> =
        reports.iter().map(|r| format!("{}: {} passed, {} failed", r.suite, r.passed, r.failed)).collect();
    let mut detail = summary.join("; ");
    if let Some(f) = reports.iter().flat_map(|r| r.failures.first()).next() {
        detail.push_str(&format!("; first failure {}: {}", f.case, f.detail.replace('\n', " / ")));
    }
    (ok, detail)
}

fn main() -> ExitCode {
    let config = |max_size, samples| VerifyConfig { max_size, seed: DEFAULT_SEED, samples };
    let mut reports: Vec<SuiteReport> = Vec::new();
    let mut lines: Vec<(usize, &str, bool, String, f64)> = Vec::new();
    let mut run = |n: usize, title: &'static str, f: &mut dyn FnMut(&mut Vec<SuiteReport>) -> (bool, String)| {
        let start = Instant::now();
        let (ok, detail) = f(&mut reports);
        lines.push((n, title, ok, detail, start.elapsed().as_secs_f64()));
    };

    run(1, "worked examples reproduce", &mut |_| worked_examples());
    run(2, "commuting diagrams for φ and μ", &mut |all| {
        let phi = run_suite(Suite::CommutingPhi, &config(10, 2000));
        let mu = run_suite(Suite::CommutingMu, &config(10, 2000));
        let out = suite_outcome(&[&phi, &mu]);
        all.extend([phi, mu]);
        out
    });
    run(3, "chain counts equal tableau counts, n ≤ 7", &mut |all| {
        let r = run_suite(Suite::ChainCount, &config(7, 0));
        let out = suite_outcome(&[&r]);
        all.push(r);
        out
    });
    run(4, "Pieri rule: operators, LR counts and products agree", &mut |all| {
        let r = run_suite(Suite::Pieri, &config(7, 0));
        let out = suite_outcome(&[&r]);
        all.push(r);
        out
    });
    run(5, "generalized chain formula", &mut |all| {
        let r = run_suite(Suite::GeneralizedChains, &config(7, 0));
        let out = suite_outcome(&[&r]);
        all.push(r);
        out
    });
    run(6, "insertion of inverses and evacuation, n ≤ 6", &mut |all| {
        let r = run_suite(Suite::Evacuation, &config(6, 0));
        let out = suite_outcome(&[&r]);
        all.push(r);
        out
    });
    run(7, "skew slides independent of the barred filling", &mut |all| {
        let r = run_suite(Suite::SkewIndependence, &config(8, 500));
        let out = suite_outcome(&[&r]);
        all.push(r);
        out
    });
    run(8, "shape laws hold on every slide", &mut |all| {
        let r = run_suite(Suite::InnerShape, &config(8, 1000));
        let internal: u64 = all.iter().map(|x| x.internal_failures).sum::<u64>() + r.internal_failures;
        let (ok, detail) = suite_outcome(&[&r]);
        all.push(r);
        (ok && internal == 0, format!("{internal} shape-law violations across all suites; {detail}"))
    });

    let mut all_ok = true;
    for (n, title, ok, detail, secs) in &lines {
        all_ok &= ok;
        println!("[{}] criterion {n}: {title} ({detail}) [{secs:.1}s]", if *ok { "PASS" } else { "FAIL" });
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
