mod common;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;
use synmon_core::lang::{compile, Alphabet, Dfa, Morphism};
use synmon_core::reproduce::random_regex;

use common::{matches, words};

fn ab() -> Alphabet {
    Alphabet::parse("ab").unwrap()
}

fn regex_dfa(seed: u64) -> (synmon_core::lang::Regex, Dfa) {
    let mut rng = StdRng::seed_from_u64(seed);
    let re = random_regex(&mut rng, &ab(), 4);
    let d = compile(&re, &ab()).unwrap();
    (re, d)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn compile_agrees_with_reference_matcher(seed in any::<u64>()) {
        let (re, d) = regex_dfa(seed);
        for w in words(&['a', 'b'], 6) {
            prop_assert_eq!(d.accepts_str(&w).unwrap(), matches(&re, &w), "{} on {:?}", re, w);
        }
    }

    #[test]
    fn compiled_automata_are_canonical(seed in any::<u64>()) {
        let (_, d) = regex_dfa(seed);
        prop_assert!(d.is_canonical());
        prop_assert_eq!(d.minimize(), d);
    }

    #[test]
    fn to_regex_round_trips(seed in any::<u64>()) {
        let (_, d) = regex_dfa(seed);
        let text = d.to_regex().to_string();
        prop_assert_eq!(Dfa::from_regex(&text, &ab()).unwrap(), d, "{}", text);
    }

    #[test]
    fn json_round_trips(seed in any::<u64>()) {
        let (_, d) = regex_dfa(seed);
        prop_assert_eq!(Dfa::from_json(&d.to_json()).unwrap(), d);
    }

    #[test]
    fn de_morgan(s1 in any::<u64>(), s2 in any::<u64>()) {
        let (_, x) = regex_dfa(s1);
        let (_, y) = regex_dfa(s2);
        prop_assert_eq!(
            x.union(&y).unwrap().complement(),
            x.complement().intersect(&y.complement()).unwrap()
        );
        prop_assert_eq!(x.difference(&y).unwrap(), x.intersect(&y.complement()).unwrap());
    }

    #[test]
    fn shuffle_is_commutative_and_contains_concatenations(s1 in any::<u64>(), s2 in any::<u64>()) {
        let (_, x) = regex_dfa(s1);
        let (_, y) = regex_dfa(s2);
        let s = x.shuffle(&y).unwrap();
        prop_assert_eq!(&s, &y.shuffle(&x).unwrap());
        for u in words(&['a', 'b'], 3) {
            for v in words(&['a', 'b'], 3) {
                if x.accepts_str(&u).unwrap() && y.accepts_str(&v).unwrap() {
                    let uv = u.clone() + &v;
                    prop_assert!(s.accepts_str(&uv).unwrap());
                }
            }
        }
    }

    #[test]
    fn quotients_match_definition(seed in any::<u64>(), u in prop::collection::vec(0usize..2, 0..3)) {
        let (_, d) = regex_dfa(seed);
        let left = d.left_quotient(&u);
        let right = d.right_quotient(&u);
        for w in ab().words_up_to(5) {
            let uw: Vec<usize> = u.iter().chain(&w).copied().collect();
            let wu: Vec<usize> = w.iter().chain(&u).copied().collect();
            prop_assert_eq!(left.accepts(&w), d.accepts(&uw));
            prop_assert_eq!(right.accepts(&w), d.accepts(&wu));
        }
    }

    #[test]
    fn inverse_image_matches_definition(
        seed in any::<u64>(),
        images in prop::collection::vec(prop::collection::vec(0usize..2, 0..3), 2),
    ) {
        let (_, d) = regex_dfa(seed);
        let h = Morphism::new(ab(), ab(), images).unwrap();
        let inv = d.inverse_image(&h).unwrap();
        for w in ab().words_up_to(5) {
            prop_assert_eq!(inv.accepts(&w), d.accepts(&h.apply(&w)));
        }
    }

    #[test]
    fn renaming_matches_definition(seed in any::<u64>(), images in prop::collection::vec(0usize..2, 2)) {
        let (_, d) = regex_dfa(seed);
        let h = Morphism::new(ab(), ab(), images.iter().map(|&c| vec![c]).collect()).unwrap();
        let renamed = d.rename(&h).unwrap();
        let all = ab().words_up_to(5);
        for w in &all {
            let expected = all.iter().any(|v| v.len() == w.len() && h.apply(v) == *w && d.accepts(v));
            prop_assert_eq!(renamed.accepts(w), expected);
        }
    }
}
