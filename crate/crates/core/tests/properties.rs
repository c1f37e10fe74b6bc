use std::collections::BTreeSet;

use cawords::analysis::{abelian_complexity, balance_coefficient, factor_complexity};
use cawords::generators::{DirectiveSequence, Generator, PrefixSource};
use cawords::index::FactorIndex;
use cawords::palindromes::distinct_palindromes_per_prefix;
use cawords::rule::{invariant_rule, LocalRule};
use cawords::word::{
    exchange, factor_set, is_palindrome, occurrences, parikh_vector, reflect, Alphabet, Letter,
    Word,
};
use proptest::prelude::*;

fn word(q: Letter, max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec(0..q, 0..max_len)
}

fn rule(q: Letter, radius: usize) -> impl Strategy<Value = LocalRule> {
    let size = (q as usize).pow(radius as u32);
    prop::collection::vec(0..2u8, size).prop_map(move |table| {
        let input = Alphabet::from_symbols(&"abc"[..q as usize]).unwrap();
        LocalRule::from_table(input, Alphabet::binary(), radius, table).unwrap()
    })
}

fn generators() -> Vec<Generator> {
    vec![
        Generator::Fibonacci,
        Generator::Characteristic(DirectiveSequence::parse("2,(1)").unwrap()),
        Generator::Characteristic(DirectiveSequence::parse("(1,3)").unwrap()),
        Generator::Champernowne,
        Generator::periodic(Word::from(vec![0, 1, 1]), Alphabet::binary()).unwrap(),
        Generator::exchanged(Generator::Fibonacci).unwrap(),
        Generator::ASturmian(
            cawords::generators::ASturmianParams::new(
                1,
                2,
                Generator::parse_epsilon("fibonacci01").unwrap(),
            )
            .unwrap(),
        ),
    ]
}

proptest! {
    #[test]
    fn reflection_reverses_concatenation(u in word(3, 20), v in word(3, 20)) {
        let uv = Word::from(u.clone()).concat(&v);
        prop_assert_eq!(reflect(&uv), reflect(&v).concat(&reflect(&u)));
        prop_assert_eq!(reflect(&reflect(&uv)), uv.clone());
        prop_assert_eq!(is_palindrome(&uv), reflect(&uv) == uv);
    }

    #[test]
    fn exchange_is_an_involution(u in word(2, 40)) {
        let back = exchange(&exchange(&u).unwrap()).unwrap();
        prop_assert_eq!(back.letters(), &u[..]);
    }

    #[test]
    fn parikh_is_additive(u in word(3, 30), v in word(3, 30)) {
        let abc = Alphabet::from_symbols("abc").unwrap();
        let uv = Word::from(u.clone()).concat(&v);
        let sum = &parikh_vector(&u, &abc).unwrap() + &parikh_vector(&v, &abc).unwrap();
        prop_assert_eq!(parikh_vector(&uv, &abc).unwrap(), sum);
        prop_assert_eq!(parikh_vector(&uv, &abc).unwrap().total(), uv.len() as u64);
    }

    #[test]
    fn factor_sets_are_bounded_and_occur(host in word(3, 60), n in 0usize..8) {
        let set = factor_set(&host, n);
        let cap = if n > host.len() { 0 } else { (host.len() - n + 1).min(3usize.pow(n as u32)) };
        prop_assert!(set.len() <= cap.max(usize::from(n == 0)));
        prop_assert_eq!(set.beyond_host, n > host.len());
        for f in set.factors.iter().filter(|f| !f.is_empty()) {
            let occ = occurrences(&host, f);
            prop_assert!(!occ.positions.is_empty());
            for &p in &occ.positions {
                prop_assert_eq!(&host[p..p + n], &f[..]);
            }
        }
        if n >= 1 && n <= host.len() {
            let naive: BTreeSet<&[Letter]> = host.windows(n).collect();
            prop_assert_eq!(set.len(), naive.len());
            prop_assert_eq!(FactorIndex::new(&host).count(n), naive.len() as u64);
        }
    }

    #[test]
    fn occurrences_are_exactly_the_matches(host in word(2, 60), factor in word(2, 4)) {
        let occ = occurrences(&host, &factor);
        if !factor.is_empty() {
            let naive: Vec<usize> = (0..host.len())
                .filter(|&i| host[i..].starts_with(&factor))
                .collect();
            prop_assert_eq!(occ.positions, naive);
        }
    }

    #[test]
    fn images_shrink_by_radius_minus_one(host in word(3, 40), r in rule(3, 2)) {
        let image = r.apply(&host).unwrap();
        prop_assert_eq!(image.len(), host.len().saturating_sub(1));
    }

    #[test]
    fn rule_text_round_trips(r in rule(2, 3)) {
        let parsed = LocalRule::parse(&r.to_text(), Alphabet::binary(), Alphabet::binary()).unwrap();
        prop_assert_eq!(parsed, r);
    }

    #[test]
    fn stable_rules_commute_with_reflection(
        table in prop::collection::vec(0..2u8, 8),
        host in word(2, 50),
    ) {
        // a window and its reversal share one table entry
        let r = LocalRule::from_fn(Alphabet::binary(), Alphabet::binary(), 3, |w| {
            let code = |w: &[Letter]| w.iter().fold(0usize, |acc, &x| acc * 2 + usize::from(x));
            table[code(w).min(code(&reflect(w)))]
        })
        .unwrap();
        prop_assert!(r.profile().stable);
        prop_assert_eq!(r.apply(&reflect(&host)).unwrap(), reflect(&r.apply(&host).unwrap()));
    }

    #[test]
    fn invariant_rule_keeps_the_prefix(host in word(2, 50), radius in 1usize..5) {
        let h = invariant_rule(radius).unwrap();
        let image = h.apply(&host).unwrap();
        prop_assert_eq!(image.letters(), &host[..host.len().saturating_sub(radius - 1)]);
    }

    #[test]
    fn prefixes_are_coherent(g in 0usize..7, short in 0usize..300, extra in 0usize..300) {
        let generator = &generators()[g];
        let long = generator.prefix(short + extra).unwrap();
        let head = generator.prefix(short).unwrap();
        prop_assert_eq!(head.letters(), &long[..short]);
    }

    #[test]
    fn at_most_one_new_palindrome_per_letter(host in word(3, 80)) {
        let counts = distinct_palindromes_per_prefix(&host);
        for (m, pair) in counts.windows(2).enumerate() {
            prop_assert!(pair[1] - pair[0] <= 1);
            prop_assert!(pair[1] <= m + 2);
        }
    }

    #[test]
    fn abelian_complexity_within_balance_bound(host in word(2, 80), n in 1usize..10) {
        prop_assume!(n <= host.len());
        let alpha = balance_coefficient(&host, n).spread[n - 1];
        let rho = abelian_complexity(&host, n).value;
        prop_assert!(rho <= alpha + 1);
        prop_assert!(factor_complexity(&host, n).value >= rho);
    }
}
