//! Randomized invariants across modules.

use proptest::prelude::*;

use bql_core::braid::words_equal;
use bql_core::cosets::{enumerate, Budget};
use bql_core::harness::presentations::carmichael_quotient;
use bql_core::{artin_presentation, BraidWord, Parity, Presentation, Word};

fn signed_word(generators: i64, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((1..=generators, any::<bool>()), 0..max_len).prop_map(|v| {
        let signed: Vec<i64> = v
            .into_iter()
            .map(|(g, neg)| if neg { -g } else { g })
            .collect();
        Word::from_signed(&signed).unwrap()
    })
}

fn braid_pair() -> impl Strategy<Value = (BraidWord, BraidWord)> {
    (3usize..=7).prop_flat_map(|n| {
        let g = n as i64 - 1;
        (signed_word(g, 30), signed_word(g, 30))
            .prop_map(move |(a, b)| (BraidWord::new(n, a).unwrap(), BraidWord::new(n, b).unwrap()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn permutation_image_is_a_homomorphism((a, b) in braid_pair()) {
        let ab = a.multiply(&b).unwrap();
        prop_assert_eq!(ab.permutation_image(), a.permutation_image().then(&b.permutation_image()));
        prop_assert_eq!(a.inverse().permutation_image(), a.permutation_image().inverse());
    }

    #[test]
    fn parity_matches_exponent_sum((a, _) in braid_pair()) {
        let odd = a.exponent_sum().rem_euclid(2) == 1;
        prop_assert_eq!(a.permutation_image().parity(), if odd { Parity::Odd } else { Parity::Even });
    }

    #[test]
    fn normal_form_is_canonical((a, g) in braid_pair(), pick in any::<prop::sample::Index>(), cut in any::<prop::sample::Index>()) {
        let n = a.strands();
        let relators = artin_presentation(n).unwrap().relators().to_vec();
        let r = pick.get(&relators);
        let letters = a.word().letters();
        let at = cut.index(letters.len() + 1);
        let padded = Word::reduce(letters[..at].iter().chain(r.letters()).chain(&letters[at..]).copied());
        prop_assert!(words_equal(&BraidWord::new(n, padded).unwrap(), &a).unwrap());
        // g a g^-1 a^-1 a = g a g^-1
        let lhs = a.conjugate(&g).unwrap().multiply(&a.inverse()).unwrap().multiply(&a).unwrap();
        prop_assert_eq!(lhs.normal_form(), a.conjugate(&g).unwrap().normal_form());
    }

    #[test]
    fn normal_form_reconstructs((a, _) in braid_pair()) {
        let nf = a.normal_form();
        prop_assert!(nf.is_valid());
        prop_assert_eq!(nf.exponent_sum(), a.exponent_sum());
        let back = BraidWord::new(a.strands(), nf.to_word()).unwrap();
        prop_assert_eq!(back.normal_form(), nf);
    }

    #[test]
    fn abelianization_ignores_relator_presentation(
        rels in prop::collection::vec(signed_word(3, 8), 1..5),
        rotate in any::<prop::sample::Index>(),
        invert in any::<bool>(),
    ) {
        let p = Presentation::new(3, rels.clone()).unwrap();
        let mut other: Vec<Word> = rels.iter().rev().cloned().collect();
        let first = other[0].clone();
        let k = rotate.index(first.len() + 1);
        let rotated = Word::reduce(first.letters()[k..].iter().chain(&first.letters()[..k]).copied());
        other[0] = if invert { rotated.invert() } else { rotated };
        let q = Presentation::new(3, other).unwrap();
        prop_assert_eq!(p.abelianization().unwrap(), q.abelianization().unwrap());
    }
}

#[test]
fn index_ignores_relator_order_and_subgroup_conjugation() {
    let file = carmichael_quotient(6).unwrap();
    let mut reversed = file.presentation.relators().to_vec();
    reversed.reverse();
    let reordered = Presentation::new(5, reversed).unwrap();
    let sigma1: Word = "1".parse().unwrap();
    let conjugated = sigma1.conjugate(&"2 3".parse().unwrap());
    let budget = Budget::default();
    let base = enumerate(&file.presentation, std::slice::from_ref(&sigma1), &budget).unwrap();
    let a = enumerate(&reordered, std::slice::from_ref(&sigma1), &budget).unwrap();
    // ⟨σ1, x σ1 x^-1⟩ with x ∈ ⟨σ1⟩ is still ⟨σ1⟩.
    let b = enumerate(
        &file.presentation,
        &[sigma1.clone(), sigma1.conjugate(&sigma1)],
        &budget,
    )
    .unwrap();
    assert_eq!(base.index(), Some(360));
    assert_eq!(a.index(), Some(360));
    assert_eq!(b.index(), Some(360));
    // A conjugate subgroup has the same index.
    let c = enumerate(&file.presentation, &[conjugated], &budget).unwrap();
    assert_eq!(c.index(), Some(360));
}

#[test]
fn enumeration_is_deterministic() {
    let file = carmichael_quotient(7).unwrap();
    let sub = file.subgroup.unwrap();
    let x = enumerate(&file.presentation, &sub, &Budget::default()).unwrap();
    let y = enumerate(&file.presentation, &sub, &Budget::default()).unwrap();
    assert_eq!(
        (x.outcome, x.stats.definitions, x.stats.coincidences),
        (y.outcome, y.stats.definitions, y.stats.coincidences)
    );
    assert_eq!(x.table, y.table);
}
