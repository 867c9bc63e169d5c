//! Golden-file checks: the serialized forms of the reference traces and
//! of one generated trace are frozen in the repository.

use firstcut::{generate, parse, samples, serialize, validate, GenParams};

#[test]
fn reference_traces_match_their_golden_files() {
    for (name, comp) in [
        ("immediate_cut", samples::immediate_cut()),
        ("advance_once", samples::advance_once()),
        ("nocut_pair", samples::nocut_pair()),
    ] {
        let golden = std::fs::read_to_string(format!("tests/data/{name}.trace")).unwrap();
        assert_eq!(serialize(&comp), golden, "{name}");
        assert_eq!(parse(&golden).unwrap(), comp, "{name}");
    }
}

#[test]
fn generator_reproduces_the_golden_trace() {
    let golden = std::fs::read_to_string("tests/data/gen_seed42_n4_m6.trace").unwrap();
    let comp = generate(&GenParams {
        processes: 4,
        states: 6,
        send_prob: 0.3,
        recv_prob: 0.5,
        pred_density: 0.8,
        seed: 42,
    });
    assert_eq!(serialize(&comp), golden);
    assert!(validate(&comp).is_empty());
}

#[test]
fn serialization_is_idempotent_on_golden_files() {
    for name in [
        "immediate_cut",
        "advance_once",
        "nocut_pair",
        "gen_seed42_n4_m6",
    ] {
        let golden = std::fs::read_to_string(format!("tests/data/{name}.trace")).unwrap();
        let once = serialize(&parse(&golden).unwrap());
        let twice = serialize(&parse(&once).unwrap());
        assert_eq!(once, twice, "{name}");
        assert_eq!(once, golden, "{name}");
    }
}
