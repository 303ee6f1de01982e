use ncalg::alphabet::{x, y, Alphabet, Word};
use ncalg::automata::{
    equal, from_json, minimize, random_rep, rep_shuffle, rep_stuffle, to_json, LinearRepresentation, RingKind,
};
use ncalg::ring::{qi, Q};
use ncalg::series::{NCPoly, Truncated};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn word_strategy(letters: Vec<ncalg::alphabet::Letter>, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(prop::sample::select(letters), 0..=max_len).prop_map(Word::new)
}

fn rep(seed: u64, letters: &[ncalg::alphabet::Letter], dim: usize) -> LinearRepresentation<Q> {
    random_rep(&mut ChaCha8Rng::seed_from_u64(seed), letters, dim)
}

proptest! {
    #[test]
    fn lyndon_factorization_is_nonincreasing(u in word_strategy(vec![x(0), x(1), x(2)], 9)) {
        let a = Alphabet::x(3);
        let factors = a.lyndon_factorization(&u);
        let joined = factors.iter().fold(Word::empty(), |acc, f| acc.concat(f));
        prop_assert_eq!(&joined, &u);
        prop_assert!(factors.iter().all(|f| a.is_lyndon(f)));
        prop_assert!(factors.windows(2).all(|p| a.cmp_words(&p[0], &p[1]).is_ge()));
    }

    #[test]
    fn shuffle_of_words_counts_interleavings(u in word_strategy(vec![x(0), x(1)], 4), v in word_strategy(vec![x(0), x(1)], 4)) {
        let p = NCPoly::<Q>::word(u.clone()).shuffle(&NCPoly::word(v.clone()));
        // Sum of coefficients is the binomial number of interleavings.
        let (m, n) = (u.len() as i64, v.len() as i64);
        let binom: i64 = (1..=n).fold(1, |acc, k| acc * (m + k) / k);
        let total = p.iter().fold(qi(0), |acc, (_, c)| acc + c.clone());
        prop_assert_eq!(total, qi(binom));
    }

    #[test]
    fn stuffle_preserves_weight(u in word_strategy(vec![y(1), y(2), y(3)], 3), v in word_strategy(vec![y(1), y(2)], 3)) {
        let p = NCPoly::<Q>::word(u.clone()).stuffle(&NCPoly::word(v.clone()));
        prop_assert!(p.iter().all(|(w, _)| w.grade() == u.grade() + v.grade()));
    }

    #[test]
    fn minimization_keeps_the_series(seed in 0u64..1000, dim in 1usize..=3) {
        let r = rep(seed, &[x(0), x(1)], dim);
        let m = minimize(&r);
        prop_assert!(m.dim() <= r.dim());
        prop_assert_eq!(m.expand(6), r.expand(6));
        prop_assert!(equal(&m, &r));
    }

    #[test]
    fn json_round_trip(seed in 0u64..1000, dim in 1usize..=3) {
        let r = rep(seed, &[y(1), y(2)], dim);
        let back: LinearRepresentation<Q> = from_json(&to_json(&r, RingKind::Rational)).unwrap();
        prop_assert_eq!(back.expand(5), r.expand(5));
    }
}

#[test]
fn products_of_representations_commute() {
    for seed in 0..10 {
        let (a, b) = (rep(seed, &[x(0), x(1)], 2), rep(seed + 100, &[x(0), x(1)], 2));
        assert!(equal(&rep_shuffle(&a, &b), &rep_shuffle(&b, &a)));
        let (a, b) = (rep(seed, &[y(1), y(2)], 2), rep(seed + 100, &[y(1), y(2)], 2));
        assert!(equal(&rep_stuffle(&a, &b).unwrap(), &rep_stuffle(&b, &a).unwrap()));
    }
}

#[test]
fn truncation_is_compatible_with_products() {
    let a = rep(1, &[x(0), x(1)], 3);
    let b = rep(2, &[x(0), x(1)], 2);
    let full = a.expand(6).shuffle(&b.expand(6));
    let short = Truncated::new(full.poly().clone(), 4);
    assert_eq!(short, a.expand(4).shuffle(&b.expand(4)));
}
