//! The file format must carry every constructible design without loss:
//! construct, render, parse back, and fully verify the result.

use hcs::constructor::{construct, Construction};
use hcs::design::{parse_design, write_design};
use hcs::verifier::verify_full;
use hcs::zmod::Params;

#[test]
fn every_sweep_design_survives_the_format() {
    for m in (2..=20u64).step_by(2) {
        for n in (2..=20u64).step_by(2) {
            let set = match construct(&Params::new(m, n).unwrap(), None).unwrap() {
                Construction::Built(set) => set,
                _ => continue,
            };
            // Comment lines from --expand must not change what parses.
            for expand in [false, true] {
                let parsed = parse_design(&write_design(&set, expand)).unwrap();
                assert_eq!(parsed.params(), set.params(), "({m},{n})");
                assert_eq!(parsed.trails(), set.trails(), "({m},{n})");
                assert!(verify_full(&parsed).pass(), "({m},{n})");
            }
        }
    }
}

#[test]
fn kappa_variant_survives_the_format() {
    let set = match construct(&Params::new(10, 10).unwrap(), Some(1)).unwrap() {
        Construction::Built(set) => set,
        other => panic!("unexpected {other:?}"),
    };
    let parsed = parse_design(&write_design(&set, false)).unwrap();
    assert_eq!(parsed.trails(), set.trails());
    assert!(verify_full(&parsed).pass());
}
