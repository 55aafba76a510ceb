use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;
use synmon_core::downset::{downclose, downset_monoid, downset_monoid_with, is_downset};
use synmon_core::ineq::{check_with, satisfies, Inequality};
use synmon_core::lang::{compile, Alphabet, Dfa};
use synmon_core::monoid::{syntactic_monoid, syntactic_monoid_with, OrderedMonoid};
use synmon_core::reproduce::random_regex;
use synmon_core::Exec;

fn dfa(seed: u64) -> Dfa {
    let ab = Alphabet::parse("ab").unwrap();
    let mut rng = StdRng::seed_from_u64(seed);
    compile(&random_regex(&mut rng, &ab, 4), &ab).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn syntactic_stamp_recognizes_the_language(seed in any::<u64>()) {
        let d = dfa(seed);
        let data = syntactic_monoid(&d).unwrap();
        let m = data.monoid();
        m.validate_with(Exec::Sequential).unwrap();
        let accepting: Vec<usize> = (0..m.size()).filter(|&x| d.accepts(data.word(x))).collect();
        prop_assert!(m.is_upset(&accepting));
        prop_assert_eq!(data.stamp().preimage(&accepting), d);
    }

    #[test]
    fn order_matches_contexts(seed in any::<u64>()) {
        let d = dfa(seed);
        let data = syntactic_monoid(&d).unwrap();
        let m = data.monoid();
        let ab = d.alphabet().clone();
        let ctx = ab.words_up_to(4);
        for x in 0..m.size() {
            for y in 0..m.size() {
                let by_context = ctx.iter().all(|l| ctx.iter().all(|r| {
                    let w = |u: &[usize]| -> Vec<usize> { l.iter().chain(u).chain(r).copied().collect() };
                    !d.accepts(&w(data.word(x))) || d.accepts(&w(data.word(y)))
                }));
                // short contexts can only miss counterexamples
                if m.leq(x, y) {
                    prop_assert!(by_context);
                }
            }
        }
    }

    #[test]
    fn parallel_and_sequential_agree(seed in any::<u64>()) {
        let d = dfa(seed);
        let p = syntactic_monoid_with(&d, Exec::Parallel).unwrap();
        let s = syntactic_monoid_with(&d, Exec::Sequential).unwrap();
        prop_assert_eq!(p.monoid().to_json(), s.monoid().to_json());
        let ineq = Inequality::parse("x^w y x^w <= x^w").unwrap();
        prop_assert_eq!(
            check_with(p.monoid(), &ineq, Exec::Parallel).unwrap(),
            check_with(p.monoid(), &ineq, Exec::Sequential).unwrap()
        );
    }

    #[test]
    fn json_round_trip_is_isomorphic(seed in any::<u64>()) {
        let m = syntactic_monoid(&dfa(seed)).unwrap().monoid().clone();
        let back = OrderedMonoid::from_json(&m.to_json()).unwrap();
        prop_assert!(back.is_isomorphic(&m).unwrap());
    }

    #[test]
    fn downset_monoid_laws(seed in any::<u64>(), empty in any::<bool>()) {
        let m = syntactic_monoid(&dfa(seed)).unwrap().monoid().clone();
        prop_assume!(m.size() <= 10);
        let p = downset_monoid(&m, empty).unwrap();
        let pm = p.monoid();
        pm.validate_with(Exec::Sequential).unwrap();
        prop_assert_eq!(p.members(pm.identity()), downclose(&m, &[m.identity()]));
        for i in 0..pm.size() {
            prop_assert!(is_downset(&m, &p.members(i)));
        }
        let seq = downset_monoid_with(&m, empty, Exec::Sequential).unwrap();
        prop_assert_eq!(seq.monoid().to_json(), pm.to_json());
        // x -> ↓x embeds M
        for x in 0..m.size() {
            for y in 0..m.size() {
                let dx = p.index_of(&downclose(&m, &[x])).unwrap();
                let dy = p.index_of(&downclose(&m, &[y])).unwrap();
                let dxy = p.index_of(&downclose(&m, &[m.mul(x, y)])).unwrap();
                prop_assert_eq!(pm.mul(dx, dy), dxy);
                prop_assert_eq!(pm.leq(dx, dy), m.leq(x, y));
            }
        }
    }

    #[test]
    fn identities_hold_in_every_monoid(seed in any::<u64>()) {
        let m = syntactic_monoid(&dfa(seed)).unwrap().monoid().clone();
        for t in ["x^w = x^(w+w)", "x^w x = x x^w", "x = x", "(xy)^w = (xy)^w"] {
            if let Ok(i) = Inequality::parse(t) {
                prop_assert!(satisfies(&m, &i), "{}", t);
            }
        }
    }
}
