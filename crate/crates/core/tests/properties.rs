use proptest::prelude::*;

use maslov_core::format::{parse_document, parse_trace, serialize_trace, TraceDocument};
use maslov_core::generate::{generate, random_word, realize_word, rng_for, Profile};
use maslov_core::maslov::{
    maslov_direct, maslov_of_word, maslov_via_arc_formula, maslov_via_trace_formula,
};
use maslov_core::reduction::{crossing_profile, CrossingWord};
use maslov_core::trace::conjugate;

fn profile() -> impl Strategy<Value = Profile> {
    prop::sample::select(Profile::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn documents_round_trip(seed in any::<u64>(), p in profile()) {
        let t = generate(seed, p).unwrap();
        let text = serialize_trace(&t);
        let doc = parse_document(&text).unwrap();
        prop_assert_eq!(&doc, &TraceDocument::from_trace(&t));
        prop_assert_eq!(doc.serialize(), text.clone());
        prop_assert_eq!(parse_trace(&text).unwrap(), t);
    }

    #[test]
    fn generation_is_deterministic(seed in any::<u64>(), p in profile()) {
        prop_assert_eq!(generate(seed, p).unwrap(), generate(seed, p).unwrap());
    }

    #[test]
    fn conjugation_negates_the_index(seed in any::<u64>()) {
        let t = generate(seed, Profile::PlaneArc).unwrap();
        let c = conjugate(&t).unwrap();
        prop_assert_eq!(
            maslov_via_arc_formula(&c).unwrap(),
            -maslov_via_arc_formula(&t).unwrap()
        );
        prop_assert_eq!(maslov_direct(&c).unwrap(), -maslov_direct(&t).unwrap());
    }

    #[test]
    fn words_realize_and_round_trip(seed in any::<u64>()) {
        let mut rng = rng_for(seed, Profile::Word);
        let word = random_word(&mut rng, 20).unwrap();
        prop_assert_eq!(CrossingWord::parse(&word.to_text()).unwrap(), word.clone());
        let t = realize_word(&word).unwrap();
        prop_assert_eq!(crossing_profile(&t).unwrap(), word.clone());
        let mu = maslov_of_word(&word.b_positions(), &word.b_ups()).unwrap();
        prop_assert_eq!(mu, maslov_via_trace_formula(&t).unwrap());
        let reduced = word.reduce();
        prop_assert_eq!(
            maslov_of_word(&reduced.b_positions(), &reduced.b_ups()).unwrap(),
            mu
        );
    }

    #[test]
    fn arc_numbers_match_the_word(seed in any::<u64>()) {
        let mut rng = rng_for(seed, Profile::Word);
        let word = random_word(&mut rng, 20).unwrap();
        let direct = 2 * word.k_x() + 2 * word.k_y()
            + (word.eps_x() as i64 - word.eps_y() as i64) / 2;
        let t = realize_word(&word).unwrap();
        prop_assert_eq!(direct, maslov_via_arc_formula(&t).unwrap());
    }
}
