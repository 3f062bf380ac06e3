use pdpair::scenario::{expectations, run_scenario, ScenarioSpec, SCENARIOS};

#[test]
fn expectations_cover_every_scenario_and_record_their_origin() {
    let all = expectations();
    for name in SCENARIOS {
        assert!(
            all.keys().any(|k| k == name || k.starts_with(&format!("{name}/"))),
            "{name}"
        );
    }
    for (key, entries) in &all {
        assert!(!entries.is_empty(), "{key}");
        for (fact, e) in entries {
            assert!(
                e.origin == "theory" || e.origin == "oracle",
                "{key}.{fact}: {}",
                e.origin
            );
        }
    }
}

#[test]
fn cheap_scenarios_match() {
    for name in ["wall-conjecture", "doubling", "covering", "kunneth"] {
        let report = run_scenario(&ScenarioSpec::new(name, None, false).unwrap(), false).unwrap();
        assert!(report.ok, "{}", report.summary());
        assert!(report.elapsed_ms.is_none());
    }
}

#[test]
fn scenario_parameters_are_validated() {
    assert!(ScenarioSpec::new("theorem-b", None, false).is_err());
    assert!(ScenarioSpec::new("doubling", Some(2), false).is_err());
    assert!(ScenarioSpec::new("theorem-a", Some(3), false).is_err());
    assert_eq!(
        ScenarioSpec::new("theorem-a", None, false).unwrap().key(),
        "theorem-a/n=1"
    );
    assert_eq!(
        ScenarioSpec::new("theorem-a", None, true).unwrap().key(),
        "theorem-a/n=2"
    );
}
