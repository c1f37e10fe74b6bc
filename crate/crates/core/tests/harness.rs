use cawords::generators::{DirectiveSequence, Generator};
use cawords::harness::{
    check_periodicity, check_special_provenance, check_sturmian_characterizations, run_theorem,
    standard_configs, RunLengthConfig, Status, SuiteConfig, THEOREM_IDS,
};
use cawords::rule::{exchange_rule, invariant_rule, run_length_rule};
use cawords::word::{Alphabet, Word};

fn short(l: usize, eps: &str) -> RunLengthConfig {
    RunLengthConfig {
        prefix_len: 20_000,
        ..RunLengthConfig::new(l, Generator::parse_epsilon(eps).unwrap())
    }
}

#[test]
fn verdict_json_shape() {
    let v = run_theorem("cc", &SuiteConfig::new(short(1, "fibonacci01"))).unwrap();
    let json: serde_json::Value = serde_json::to_value(&v).unwrap();
    for key in ["theorem_id", "config", "rows", "pass", "notes"] {
        assert!(json.get(key).is_some(), "missing {key}");
    }
    let row = &json["rows"][0];
    for key in ["n", "expected", "observed", "converged"] {
        assert!(row.get(key).is_some(), "missing row {key}");
    }
    assert_eq!(json["config"]["n0"], 6);
    assert_eq!(json["pass"], true);
}

#[test]
fn every_theorem_runs_on_a_small_config() {
    let config = SuiteConfig::new(short(2, "fibonacci10"));
    for id in THEOREM_IDS {
        let v = run_theorem(id, &config).unwrap();
        assert!(v.pass, "{id}: {:?} {}", v.status, v.notes);
    }
}

#[test]
fn cp_note_records_vacuous_subcase() {
    let v = run_theorem("cp", &SuiteConfig::new(short(2, "fibonacci01"))).unwrap();
    assert_eq!(v.status, Status::Pass);
    assert!(v.notes.contains("vacuous"));
    assert!(v.details.contains_key("inventories"));
}

#[test]
fn standard_configs_cover_both_slopes() {
    let configs = standard_configs();
    assert_eq!(configs.len(), 6);
    let n0: Vec<usize> = configs
        .iter()
        .map(|c| {
            RunLengthConfig {
                prefix_len: 20_000,
                ..c.clone()
            }
            .build()
            .unwrap()
            .n0
            .n0
        })
        .collect();
    assert_eq!(n0, [4, 8, 6, 12, 8, 16]);
}

#[test]
fn periodicity_examples() {
    let ab = Word::from(vec![0, 1]);
    let v = check_periodicity(&run_length_rule(1).unwrap(), &ab, 1000).unwrap();
    assert!(v.pass);
    assert!(v.details["image_period"].as_u64().unwrap() <= 2);

    let a = Word::from(vec![0]);
    let v = check_periodicity(&exchange_rule(2).unwrap(), &a, 1000).unwrap();
    assert_eq!(v.details["image_period"], 1);

    let seed = Word::from(vec![0, 0, 1, 0, 1]);
    let v = check_periodicity(&invariant_rule(3).unwrap(), &seed, 1000).unwrap();
    assert_eq!(v.details["image_period"], 5);
    assert!(v.notes.contains("share"));
}

#[test]
fn sturmian_characterizations() {
    let fib = check_sturmian_characterizations(&Generator::Fibonacci, 20_000, 200).unwrap();
    assert_eq!(fib.status, Status::Pass);
    let slope = Generator::Characteristic(DirectiveSequence::parse("2,(1)").unwrap());
    assert_eq!(
        check_sturmian_characterizations(&slope, 20_000, 100)
            .unwrap()
            .status,
        Status::Pass
    );

    let periodic = Generator::periodic(Word::from(vec![0, 1]), Alphabet::binary()).unwrap();
    let v = check_sturmian_characterizations(&periodic, 20_000, 50).unwrap();
    assert_eq!(v.status, Status::Fail);
    assert!(v.rows_for(Some("p")).any(|r| r.converged && !r.agrees()));
}

#[test]
fn special_provenance_examples() {
    for rule in [invariant_rule(2).unwrap(), exchange_rule(2).unwrap()] {
        let v = check_special_provenance(&rule, &Generator::Fibonacci, 20_000, 30).unwrap();
        assert_eq!(v.status, Status::Pass, "{}", v.notes);
    }
    let v = check_special_provenance(&run_length_rule(2).unwrap(), &Generator::Fibonacci, 1000, 5)
        .unwrap();
    assert_eq!(v.status, Status::Skipped);
    assert!(v.pass);
}
