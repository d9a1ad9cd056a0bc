use std::collections::HashSet;

use proptest::prelude::*;
use proptest::sample::Index;

use ncstab::jdt_srct::{mu, mu_skew, phi};
use ncstab::jdt_srt::{backward_slide, forward_slide, horizontal_movers, truncated_slide};
use ncstab::poset::{chain_to_srct, maximal_chains};
use ncstab::random::{random_growth_word, random_skew_srct, seeded};
use ncstab::rho::{rho_inv, rho_map};
use ncstab::rs::{growth_word_tableau, insert_letters, insert_variant, rectify, rectify_srt, standardize, Permutation};
use ncstab::tableau::{descent_composition, enumerate_srct, validate_ssrct, AnyTableau};
use ncstab::{Composition, Partition, SkewCompositionShape, Ssrct, Ssrt};

fn word(max: usize) -> impl Strategy<Value = Vec<u32>> {
    (1..=max).prop_flat_map(|n| prop::collection::vec(1..=n as u32, n))
}

fn straight_ssrt(max: usize) -> impl Strategy<Value = Ssrt> {
    word(max).prop_map(|w| Ssrt::from_rows(insert_letters(&w).0).unwrap())
}

/// A straight tableau pushed through a few backward slides, giving a skew one.
fn skew_ssrt(max: usize) -> impl Strategy<Value = Ssrt> {
    (straight_ssrt(max), prop::collection::vec(any::<Index>(), 0..4)).prop_map(|(t, picks)| {
        picks.iter().fold(t, |t, pick| {
            let cols = t.outer().addable_nodes();
            backward_slide(&t, pick.get(&cols).col, false).unwrap().tableau
        })
    })
}

fn columns(t: &Ssrt) -> Vec<Vec<u32>> {
    let width = t.outer().parts().first().copied().unwrap_or(0);
    (0..width)
        .map(|c| {
            let mut col: Vec<u32> = t.rows().iter().filter_map(|r| r.get(c).copied().flatten()).collect();
            col.sort_unstable();
            col
        })
        .collect()
}

fn srct_columns(tau: &Ssrct) -> Vec<Vec<u32>> {
    let width = tau.outer().max_part();
    (0..width)
        .map(|c| {
            let mut col: Vec<u32> = tau.rows().iter().filter_map(|r| r.get(c).copied().flatten()).collect();
            col.sort_unstable();
            col
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn rho_round_trip_straight(t in straight_ssrt(8)) {
        let tau = rho_inv(&t, &Composition::empty()).unwrap();
        prop_assert_eq!(srct_columns(&tau), columns(&t));
        prop_assert_eq!(rho_map(&tau).unwrap(), t);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn rho_round_trip_skew(t in skew_ssrt(8), shuffle in any::<u64>()) {
        let mut parts = t.inner().parts().to_vec();
        let n = parts.len();
        for k in (1..n).rev() {
            parts.swap(k, (shuffle as usize >> (k % 16)) % (k + 1));
        }
        let alpha = Composition::new(parts).unwrap();
        let tau = rho_inv(&t, &alpha).unwrap();
        prop_assert_eq!(tau.inner(), &alpha);
        prop_assert_eq!(rho_map(&tau).unwrap(), t);
    }

    #[test]
    fn forward_undoes_backward(t in skew_ssrt(10), pick in any::<Index>()) {
        let cols = t.outer().addable_nodes();
        let col = pick.get(&cols).col;
        let slid = backward_slide(&t, col, false).unwrap();
        let back = forward_slide(&slid.tableau, slid.exited_or_vacated.col).unwrap();
        prop_assert_eq!(back.exited_or_vacated.col, col);
        prop_assert_eq!(back.tableau, t);
    }

    #[test]
    fn backward_undoes_forward(t in skew_ssrt(10), pick in any::<Index>()) {
        let corners = t.inner().removable_nodes();
        prop_assume!(!corners.is_empty());
        let col = pick.get(&corners).col;
        let slid = forward_slide(&t, col).unwrap();
        let back = backward_slide(&slid.tableau, slid.exited_or_vacated.col, false).unwrap();
        prop_assert_eq!(back.tableau, t);
    }

    #[test]
    fn truncated_movers_are_the_horizontal_movers(t in straight_ssrt(10), pick in any::<Index>()) {
        let cols = t.outer().addable_nodes();
        let col = pick.get(&cols).col;
        let (_, data) = truncated_slide(&t, col).unwrap();
        prop_assert_eq!(data.movers.len(), col - 1);
        prop_assert_eq!(data.movers, horizontal_movers(&t, col).unwrap());
    }

    #[test]
    fn slides_commute_with_rho(t in straight_ssrt(10), pick in any::<Index>()) {
        let tau = rho_inv(&t, &Composition::empty()).unwrap();
        let cols = t.outer().addable_nodes();
        let col = pick.get(&cols).col;
        let slid = mu(&tau, col, false).unwrap();
        prop_assert_eq!(rho_map(&slid.tableau).unwrap(), backward_slide(&t, col, false).unwrap().tableau);
        if col >= 2 {
            let (truncated, data) = truncated_slide(&t, col).unwrap();
            let step = phi(&tau, col).unwrap();
            prop_assert_eq!(step.exited_entry(), data.first_mover);
            prop_assert_eq!(step.tableau, rho_inv(&truncated, &Composition::empty()).unwrap());
        }
    }

    #[test]
    fn growth_word_laws(seed in any::<u64>(), n in 1usize..=8) {
        let w = random_growth_word(&mut seeded(seed), n);
        let t = growth_word_tableau(&w).unwrap();
        let sigma_inv = standardize(&w).inverse();
        let reading: Vec<usize> = t.column_reading_word().into_iter().map(|v| v as usize).collect();
        prop_assert_eq!(reading.as_slice(), sigma_inv.one_line());
        prop_assert_eq!(t, insert_variant(&sigma_inv).unwrap().0);
    }

    #[test]
    fn rectification_survives_slides(seed in any::<u64>(), pick in any::<Index>()) {
        let tau = random_skew_srct(&mut seeded(seed), 8, 4);
        let cols: Vec<usize> = tau.outer().sort_to_partition().addable_nodes().iter().map(|c| c.col).collect();
        let col = *pick.get(&cols);
        let before = rectify(&tau).unwrap();
        prop_assert_eq!(&rectify(&mu_skew(&tau, col).unwrap().tableau).unwrap(), &before);
        let t = rho_map(&tau).unwrap();
        let slid = backward_slide(&t, col, false).unwrap().tableau;
        prop_assert_eq!(rectify_srt(&slid).unwrap(), rho_map(&before).unwrap());
    }
}

#[test]
fn insertion_is_injective() {
    for n in 1..=5 {
        let pairs: HashSet<(Ssrt, Ssrt)> = Permutation::all(n).iter().map(|s| insert_variant(s).unwrap()).collect();
        assert_eq!(pairs.len(), (1..=n).product::<usize>());
    }
}

#[test]
fn chain_tableaux_are_distinct_and_cover_every_tableau() {
    for n in 1..=6 {
        for alpha in Composition::all_of_size(n) {
            let images: Vec<Ssrct> = maximal_chains(&Composition::empty(), &alpha)
                .iter()
                .map(|w| chain_to_srct(w).unwrap())
                .collect();
            let distinct: HashSet<&Ssrct> = images.iter().collect();
            let all = enumerate_srct(&SkewCompositionShape::straight(alpha.clone())).unwrap();
            assert_eq!(distinct.len(), images.len(), "{alpha}");
            assert_eq!(distinct, all.iter().collect::<HashSet<_>>(), "{alpha}");
        }
    }
}

#[test]
fn enumerated_tableaux_validate_and_survive_json() {
    for n in 1..=6 {
        for alpha in Composition::all_of_size(n) {
            let all = enumerate_srct(&SkewCompositionShape::straight(alpha.clone())).unwrap();
            let mut by_descent = 0;
            for tau in &all {
                assert!(validate_ssrct(tau.outer(), tau.inner(), tau.rows()).unwrap().is_none());
                let json = serde_json::to_string(tau).unwrap();
                match AnyTableau::from_json_str(&json).unwrap() {
                    AnyTableau::Composition(back) => assert_eq!(&back, tau),
                    AnyTableau::Reverse(_) => panic!("convention lost"),
                }
                descent_composition(tau).unwrap();
                by_descent += 1;
            }
            assert_eq!(by_descent, all.len());
        }
    }
}

#[test]
fn rho_counts_match_standard_tableaux() {
    for n in 1..=7 {
        let mut per_partition = std::collections::HashMap::<Partition, usize>::new();
        for alpha in Composition::all_of_size(n) {
            let count = enumerate_srct(&SkewCompositionShape::straight(alpha.clone())).unwrap().len();
            *per_partition.entry(alpha.sort_to_partition()).or_default() += count;
        }
        for (lambda, count) in per_partition {
            let fillings: HashSet<Ssrt> = Permutation::all(n)
                .iter()
                .map(|s| insert_variant(s).unwrap().0)
                .filter(|p| p.outer() == &lambda)
                .collect();
            assert_eq!(fillings.len(), count, "{lambda}");
        }
    }
}
