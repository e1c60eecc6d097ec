mod common;

use std::collections::{BTreeMap, BTreeSet};

use anick::anick::{enumerate_chains, Obstructions};
use anick::automaton::NormalWordAutomaton;
use anick::groebner::{complete, interreduce, normal_form};
use anick::homology::betti_table;
use anick::parse::{parse_presentation, parse_presentation_with_field};
use anick::poly::Polynomial;
use anick::presentation::Presentation;
use anick::resolution::{composes_to_zero, Resolution};
use anick::scalar::Field;
use anick::word::{Alphabet, Letter, Word};
use proptest::prelude::*;

use common::*;

fn word_of(letters: usize, degree: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..letters as Letter, degree).prop_map(Word::from_letters)
}

fn relation(letters: usize) -> impl Strategy<Value = Vec<(Word, i64)>> {
    prop_oneof![3 => Just(2usize), 1 => Just(3usize)]
        .prop_flat_map(move |d| prop::collection::vec((word_of(letters, d), prop_oneof![-2i64..=-1, 1i64..=2]), 1..=3))
}

fn presentation() -> impl Strategy<Value = Presentation> {
    (2usize..=3).prop_flat_map(|n| (Just(n), prop::collection::vec(relation(n), 1..=3))).prop_filter_map("relations cancel", |(n, rels)| {
        let names = ["x", "y", "z"];
        let alphabet = Alphabet::from_descending(names[..n].iter().copied()).ok()?;
        let polys: Vec<Polynomial> = rels
            .into_iter()
            .map(|r| Polynomial::from_terms(r.into_iter().map(|(w, c)| (w, Field::Rational.from_int(c)))))
            .filter(|p| !p.is_zero())
            .collect();
        if polys.is_empty() {
            return None;
        }
        Presentation::new(alphabet, Field::Rational, polys).ok()
    })
}

fn leads(p: &Presentation, degree: usize) -> (Vec<Word>, Option<usize>) {
    let gb = complete(p, degree).unwrap();
    let reduced = interreduce(gb.elements());
    (reduced.iter().map(|g| g.leading_word().unwrap().clone()).collect(), gb.valid_degree())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn normal_form_is_idempotent(p in presentation(), seed in prop::collection::vec((0usize..3, 1usize..=5, -3i64..=3), 1..6)) {
        let gb = complete(&p, 5).unwrap();
        let n = p.generator_count();
        let f = Polynomial::from_terms(seed.into_iter().map(|(i, d, c)| {
            let w: Vec<Letter> = (0..d).map(|k| ((i + k * 7 + d) % n) as Letter).collect();
            (Word::from_letters(w), Field::Rational.from_int(c))
        }));
        let nf = normal_form(&f, gb.elements());
        prop_assert_eq!(normal_form(&nf, gb.elements()), nf.clone());
        for (w, _) in nf.terms() {
            prop_assert!(avoids(w, &gb.obstructions()));
        }
    }

    #[test]
    fn interreduced_leads_form_an_antichain(p in presentation()) {
        let (ws, _) = leads(&p, 6);
        for (i, u) in ws.iter().enumerate() {
            for (j, w) in ws.iter().enumerate() {
                prop_assert!(i == j || !w.contains_factor(u));
            }
        }
    }

    #[test]
    fn chains_match_exhaustive_search(p in presentation()) {
        let n = p.generator_count();
        let (ws, _) = leads(&p, 5);
        prop_assume!(ws.iter().all(|w| w.len() > 1));
        let obs = Obstructions::new(n, ws.clone()).unwrap();
        let chains = enumerate_chains(&obs, 4, 5);
        let mut brute: BTreeMap<usize, BTreeSet<Word>> = BTreeMap::new();
        for d in 1..=5 {
            for w in all_words(n, d) {
                let decs = chain_decompositions(&w, &ws);
                prop_assert!(decs.len() <= 1);
                if let Some(c) = decs.first() {
                    brute.entry(c.len() - 2).or_default().insert(w);
                }
            }
        }
        for level in 0..=4 {
            let engine: BTreeSet<Word> = chains.level(level).iter().map(|c| c.word().clone()).collect();
            prop_assert_eq!(engine, brute.remove(&level).unwrap_or_default());
        }
    }

    #[test]
    fn hilbert_counts_match_ideal_slices(p in presentation()) {
        let n = p.generator_count();
        let (ws, valid) = leads(&p, 5);
        prop_assume!(ws.iter().all(|w| w.len() > 1));
        let h = NormalWordAutomaton::new(n, &ws, valid).unwrap().hilbert_coefficients(5).unwrap().coefficients;
        prop_assert_eq!(&h, &brute_normal_counts(&ws, n, 5));
        for d in 0..=4 {
            prop_assert_eq!((n as u64).pow(d as u32) - ideal_dimension(&p, d) as u64, h[d]);
        }
    }

    #[test]
    fn differentials_compose_to_zero(p in presentation()) {
        let res = Resolution::new(&p, 4, 5);
        prop_assume!(res.is_ok());
        let mut res = res.unwrap();
        for j in 1..=5 {
            let mut lower = res.slice(0, j).unwrap();
            for level in 1..=4 {
                let upper = res.slice(level, j).unwrap();
                prop_assert!(composes_to_zero(&lower, &upper));
                lower = upper;
            }
        }
    }

    #[test]
    fn betti_numbers_agree_over_large_primes(p in presentation()) {
        prop_assume!(p.relations().iter().all(|r| r.degree() == Some(2)));
        prop_assume!(leads(&p, 5).0.iter().all(|w| w.len() > 1));
        let q = betti_table(&p, 4, 5).unwrap();
        let fp = parse_presentation_with_field(&p.to_string(), Some(Field::Prime(32003))).unwrap();
        let r = betti_table(&fp, 4, 5).unwrap();
        prop_assert!(q.agrees_with(&r));
    }

    #[test]
    fn printed_presentations_parse_back(p in presentation()) {
        let back = parse_presentation(&p.to_string()).unwrap();
        prop_assert_eq!(back, p);
    }
}
