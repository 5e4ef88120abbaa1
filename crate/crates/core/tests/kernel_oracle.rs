use interval_tukey::harness::gen::{
    random_ep, random_measure, random_partition, random_word, rng_for, Sizes,
};
use interval_tukey::harness::oracle::{horizon_oracle, OracleValues};
use interval_tukey::kernel::{
    colored_count_profile, interval_count_profile, measure_profile, rational_to_string, EpStream,
    OmegaSet, UpStream,
};
use interval_tukey::relations::{evaluate, Object, RelParams, RelationId};
use proptest::prelude::*;

fn ep_strategy() -> impl Strategy<Value = EpStream> {
    (
        0u64..6,
        prop::collection::vec(1u64..6, 0..4),
        prop::collection::vec(1u64..6, 1..5),
    )
        .prop_map(|(s, p, c)| EpStream::new(s, p, c).unwrap())
}

fn word_strategy() -> impl Strategy<Value = OmegaSet> {
    (
        prop::collection::vec(any::<bool>(), 0..5),
        prop::collection::vec(any::<bool>(), 1..6),
    )
        .prop_map(|(p, mut c)| {
            c[0] = true;
            OmegaSet::word(p, c).unwrap()
        })
}

fn counts(v: OracleValues) -> Vec<u64> {
    match v {
        OracleValues::Counts(c) => c,
        other => panic!("expected counts, got {other:?}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn count_profile_matches_oracle(f in ep_strategy(), x in word_strategy()) {
        let f = UpStream::Ep(f);
        let p = interval_count_profile(&f, &x).unwrap();
        let n = (p.transient() + 3 * p.period()) as u64 + 1;
        let o = horizon_oracle(&Object::Stream(f), &Object::Set(x), RelationId::ForallK, &RelParams::default(), n).unwrap();
        prop_assert_eq!(p.values_to(n), counts(o.values));
    }

    #[test]
    fn forall_and_exists_agree_with_profile(f in ep_strategy(), x in word_strategy(), k in 0u64..4) {
        let f = UpStream::Ep(f);
        let p = interval_count_profile(&f, &x).unwrap();
        let params = RelParams { k, ..RelParams::default() };
        let (fo, xo) = (Object::Stream(f), Object::Set(x));
        let all = evaluate(RelationId::ForallK, &fo, &xo, &params).unwrap();
        let some = evaluate(RelationId::ExistsK, &fo, &xo, &params).unwrap();
        prop_assert_eq!(all.is_true(), p.cycle.iter().all(|&c| c <= k));
        prop_assert_eq!(some.is_true(), p.cycle.iter().any(|&c| c <= k));
        // ∀∞ implies ∃∞
        prop_assert!(!all.is_true() || some.is_true());
    }

    #[test]
    fn range_of_periodic_stream_is_a_word(f in ep_strategy()) {
        let f = UpStream::Ep(f);
        let x = OmegaSet::range(f.clone());
        for i in 0..30 {
            prop_assert_eq!(x.enumerate(i).unwrap(), f.eval(i).unwrap());
        }
    }
}

#[test]
fn colored_and_measure_profiles_match_oracle() {
    for seed in 0..500 {
        let mut rng = rng_for(seed);
        let f = UpStream::Ep(random_ep(&mut rng, Sizes::default(), 1).unwrap());
        let p = random_partition(&mut rng, Sizes::default()).unwrap();
        let prof = colored_count_profile(&f, &p).unwrap();
        let n = (prof.transient() + 3 * prof.period()) as u64 + 1;
        let o = horizon_oracle(
            &Object::Stream(f.clone()),
            &Object::Partition(p),
            RelationId::ColForallK,
            &RelParams::default(),
            n,
        )
        .unwrap();
        assert_eq!(prof.values_to(n), counts(o.values), "seed {seed}");

        let y = random_measure(&mut rng, Sizes::default()).unwrap();
        let prof = measure_profile(&f, &y).unwrap();
        let n = (prof.transient() + 3 * prof.period()) as u64 + 1;
        let o = horizon_oracle(
            &Object::Stream(f),
            &Object::Measure(y),
            RelationId::MeasureForall,
            &RelParams::default(),
            n,
        )
        .unwrap();
        let OracleValues::Masses(m) = o.values else {
            panic!()
        };
        assert_eq!(
            prof.values_to(n)
                .iter()
                .map(rational_to_string)
                .collect::<Vec<_>>(),
            m,
            "seed {seed}"
        );
    }
}

#[test]
fn true_verdicts_survive_long_horizons() {
    for seed in 0..300 {
        let mut rng = rng_for(seed);
        let f = Object::Stream(UpStream::Ep(
            random_ep(&mut rng, Sizes::default(), 1).unwrap(),
        ));
        let x = Object::Set(random_word(&mut rng, Sizes::default(), false).unwrap());
        for k in 0..3 {
            let params = RelParams {
                k,
                ..RelParams::default()
            };
            if evaluate(RelationId::ForallK, &f, &x, &params)
                .unwrap()
                .is_true()
            {
                let o = horizon_oracle(&f, &x, RelationId::ForallK, &params, 2000).unwrap();
                assert!(o.holds[1000..].iter().all(|&b| b), "seed {seed} k {k}");
            }
        }
    }
}
