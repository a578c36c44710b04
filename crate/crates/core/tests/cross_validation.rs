//! The oracle, the stairstep LP and the fringe formula checked against each
//! other on small random inputs.

use proptest::prelude::*;
use ziggurat::fringe::{fringe_length, Side};
use ziggurat::stairstep::{fringe_target, stairstep, StairstepConfig, StairstepProblem};
use ziggurat::xy::Symbol;
use ziggurat::{
    farey, gcd, max_rot, rot_interval, BlockForm, Letter, OracleConfig, PositiveWord, Rational, RotationQuery, XYWord,
};

fn small_blocks() -> impl Strategy<Value = BlockForm> {
    (1usize..=2)
        .prop_flat_map(|n| {
            (
                proptest::collection::vec(1u64..=2, n),
                proptest::collection::vec(1u64..=2, n),
            )
        })
        .prop_map(|(alphas, betas)| BlockForm::new(alphas, betas).unwrap())
}

fn reduced(max_q: u64) -> impl Strategy<Value = Rational> {
    prop::sample::select(farey(max_q))
}

fn word(max_len: usize) -> impl Strategy<Value = PositiveWord> {
    proptest::collection::vec(prop_oneof![Just(Letter::A), Just(Letter::B)], 1..=max_len)
        .prop_map(|letters| PositiveWord::new(letters).unwrap())
}

fn xy_word(max_len: usize) -> impl Strategy<Value = XYWord> {
    proptest::collection::vec(prop_oneof![Just(Symbol::X), Just(Symbol::Y)], 2..=max_len)
        .prop_filter("both symbols", |v| v.contains(&Symbol::X) && v.contains(&Symbol::Y))
        .prop_map(|v| XYWord::new(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// The oracle attains the linear value exactly at the fringe edge and not
    /// before it, and the LP places the edge at the same point.
    #[test]
    fn three_computations_agree(bf in small_blocks(), pq in reduced(4)) {
        let w = bf.to_word();
        let (h_a, h_b) = w.letter_counts();
        let fr = fringe_length(&w, &pq, Side::Left)?;
        let edge = Rational::one() - &fr;
        let target = fringe_target(&w, &pq);
        prop_assert_eq!(&target, &(&pq * &Rational::integer(h_a) + Rational::integer(h_b)));

        let u = stairstep(&StairstepProblem::new(&w, &pq, &target)?, &StairstepConfig::fringe())?.u;
        prop_assert_eq!(&u, &edge);

        let config = OracleConfig::default();
        let at = |s: &Rational| max_rot(&RotationQuery::new(w.clone(), pq.clone(), s.clone()), &config);
        prop_assert_eq!(at(&edge)?, target.clone());
        // Just below the edge, at the nearest fraction with denominator 5.
        let below = Rational::new((edge.clone() * Rational::integer(5)).floor(), 5u32)?;
        let below = if below == edge { &below - &Rational::new(1, 5)? } else { below };
        prop_assert!(at(&below)? < target);
    }

    #[test]
    fn necklaces_suffice(w in word(5), r in reduced(4), s in reduced(4)) {
        let query = RotationQuery::new(w, r, s);
        let full = OracleConfig { full_enumeration: true, ..Default::default() };
        prop_assert_eq!(max_rot(&query, &OracleConfig::default())?, max_rot(&query, &full)?);
    }

    #[test]
    fn interval_is_ordered(w in word(5), r in reduced(5), s in reduced(5)) {
        let (lo, hi) = rot_interval(&w, &r, &s, &OracleConfig::default())?;
        prop_assert!(lo <= hi);
    }

    #[test]
    fn generators_rotate_at_their_rate(xy in xy_word(9), k1 in 0u64..9, k2 in 0u64..9) {
        let (q1, q2) = xy.word_type();
        let (q1, q2) = (q1 as u64, q2 as u64);
        let (p1, p2) = (k1 % q1, k2 % q2);
        let a: PositiveWord = "a".parse()?;
        let b: PositiveWord = "b".parse()?;
        prop_assert_eq!(xy.rot(&a, p1, p2)?, Rational::new(p1, q1)?);
        prop_assert_eq!(xy.rot(&b, p1, p2)?, Rational::new(p2, q2)?);
    }

    #[test]
    fn rotation_of_generators_is_additive(w in word(6), r in reduced(4), s in reduced(4)) {
        let (h_a, h_b) = w.letter_counts();
        let config = OracleConfig::default();
        let base = max_rot(&RotationQuery::new(w.clone(), r.clone(), s.clone()), &config)?;
        let shifted = max_rot(&RotationQuery::new(w, &r + &Rational::one(), &s + &Rational::integer(2)), &config)?;
        prop_assert_eq!(shifted, base + Rational::integer(h_a + 2 * h_b));
    }
}

/// The fringe formula needs `p/q` reduced but not `p` coprime to anything
/// else; spot-check numerators sharing factors with `h_a`.
#[test]
fn numerators_sharing_factors_with_h_a() {
    let w: PositiveWord = "aaabaaabbbb".parse().unwrap();
    for q in [5u64, 7, 10, 12] {
        let values: Vec<Rational> = (1..q)
            .filter(|&p| gcd(p, q) == 1)
            .map(|p| fringe_length(&w, &Rational::new(p, q).unwrap(), Side::Left).unwrap())
            .collect();
        assert!(values.windows(2).all(|v| v[0] == v[1]), "q = {q}");
    }
}
