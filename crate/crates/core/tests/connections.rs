use interval_tukey::harness::certify::certified_for;
use interval_tukey::harness::gen::{random_in, rng_for, Sizes};
use interval_tukey::harness::suite::{run_suite, SuitePolicy, SuiteReport};
use interval_tukey::tukey::{
    check_connection, compose_connections, connection_from_spec, dualize_system, list_connections,
    list_systems, standard_mutant, CheckPolicy, CheckStatus, MinusMap, PlusMap, TukeyConnection,
    TukeyError, CONNECTION_IDS, FACT_IDS,
};

#[test]
fn registry_is_complete() {
    assert!(CONNECTION_IDS.len() >= 24);
    let ids: Vec<String> = list_connections().iter().map(|c| c.id.clone()).collect();
    for id in CONNECTION_IDS.iter().chain(FACT_IDS) {
        assert!(ids.iter().any(|i| i == id), "{id} missing");
    }
}

#[test]
fn every_suite_is_clean() {
    for c in list_connections() {
        let r = run_suite(&c, 1000, 1, SuitePolicy::default()).unwrap();
        assert_eq!(r.fail, 0, "{}: {:?}", r.lemma, r.witnesses.first());
        assert!(
            r.vacuous_fraction() <= 0.95,
            "{} is {}% vacuous",
            r.lemma,
            r.vacuous_fraction() * 100.0
        );
    }
}

#[test]
fn every_mutant_is_caught() {
    for c in list_connections() {
        let m = standard_mutant(&c).expect("every connection has a mutant");
        let r = run_suite(&m, 1000, 1, SuitePolicy::default()).unwrap();
        assert!(r.fail > 0, "{} slipped through", m.label());
    }
}

#[test]
fn identity_facts_decide_everything() {
    for c in list_connections()
        .into_iter()
        .filter(|c| FACT_IDS.contains(&c.id.as_str()))
    {
        let r = run_suite(&c, 1000, 7, SuitePolicy::default()).unwrap();
        assert_eq!(r.decided_premises, 1000, "{}", r.lemma);
        assert_eq!(r.inconclusive, 0, "{}", r.lemma);
        assert_eq!(r.fail, 0, "{}", r.lemma);
    }
}

#[test]
fn suites_are_reproducible() {
    let strip = |r: SuiteReport| serde_json::to_string(&SuiteReport { wall_ms: 0, ..r }).unwrap();
    for id in [
        "vojtas_forall_k{k=2}",
        "L_forall_dual_to_dualD{k=2}",
        "M_scaling_exists",
    ] {
        let c = connection_from_spec(id).unwrap();
        let a = run_suite(&c, 300, 11, SuitePolicy::default()).unwrap();
        let b = run_suite(&c, 300, 11, SuitePolicy::default()).unwrap();
        assert_eq!(strip(a), strip(b));
    }
}

#[test]
fn certified_premises_are_not_false() {
    let policy = CheckPolicy::default();
    for c in list_connections() {
        for seed in 0..100 {
            if let Some((_, _, cert)) = certified_for(&c, seed, policy).unwrap() {
                assert!(
                    !cert.premise.is_false(),
                    "{} seed {seed}: {}",
                    c.label(),
                    cert.reason
                );
            }
        }
    }
}

#[test]
fn composition() {
    let a = connection_from_spec("fact_exists_le_forall{k=2}").unwrap();
    let b = connection_from_spec("fact_k_le_l{k=1,l=2}").unwrap();
    let ab = compose_connections(&a, &b).unwrap();
    let r = run_suite(&ab, 300, 3, SuitePolicy::default()).unwrap();
    assert_eq!(r.fail, 0);
    assert!(matches!(
        compose_connections(&b, &a),
        Err(TukeyError::TypeMismatch(_))
    ));

    // composing with an identity connection changes nothing observable
    let v = connection_from_spec("vojtas_forall_k{k=1}").unwrap();
    let id = TukeyConnection {
        id: "identity".into(),
        params: Default::default(),
        source: v.target.clone(),
        target: v.target.clone(),
        map_minus: MinusMap::Identity,
        map_plus: PlusMap::Identity,
        anchor: "identity".into(),
        closure_note: String::new(),
    };
    let vv = compose_connections(&v, &id).unwrap();
    let mut rng = rng_for(5);
    for _ in 0..200 {
        let x = random_in(v.source.domain, &mut rng, Sizes::default()).unwrap();
        let y = random_in(v.target.codomain, &mut rng, Sizes::default()).unwrap();
        let s1 = check_connection(&v, &x, &y, CheckPolicy::default())
            .unwrap()
            .status;
        let s2 = check_connection(&vv, &x, &y, CheckPolicy::default())
            .unwrap()
            .status;
        assert_eq!(s1, s2);
    }
}

#[test]
fn dualizing_twice_is_the_identity() {
    let mut rng = rng_for(2);
    for s in list_systems().into_iter().filter(|s| !s.dualized) {
        let dd = dualize_system(&dualize_system(&s));
        assert_eq!(dd.id, s.id);
        let d = dualize_system(&s);
        for _ in 0..20 {
            let x = random_in(s.domain, &mut rng, Sizes::default()).unwrap();
            let y = random_in(s.codomain, &mut rng, Sizes::default()).unwrap();
            assert_eq!(s.eval(&x, &y).unwrap(), dd.eval(&x, &y).unwrap());
            assert_eq!(s.eval(&x, &y).unwrap().negate(), d.eval(&y, &x).unwrap());
        }
    }
}

#[test]
fn vacuous_status_reports_no_conclusion() {
    let c = connection_from_spec("vojtas_forall_k{k=1}").unwrap();
    let mut rng = rng_for(4);
    for _ in 0..100 {
        let x = random_in(c.source.domain, &mut rng, Sizes::default()).unwrap();
        let y = random_in(c.target.codomain, &mut rng, Sizes::default()).unwrap();
        let o = check_connection(&c, &x, &y, CheckPolicy::default()).unwrap();
        if o.status == CheckStatus::Vacuous {
            assert!(!o.premise.is_true());
        }
    }
}
