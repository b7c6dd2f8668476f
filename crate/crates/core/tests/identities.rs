use radix_census::census::{census_closed_form, DigitCensus};
use radix_census::{verify_fc1, verify_fc2, Mode};

#[test]
fn fc1_holds_through_eight() {
    for n in 0..=8 {
        let r = verify_fc1(n).unwrap();
        assert!(r.part_i_pass && r.part_ii_pass, "n={n}: sum {}", r.sum);
        assert!(r.cross_check_pass, "n={n}");
        assert_eq!(r.range.1 - r.range.0 + 1, 3u64.pow(n));
    }
}

#[test]
fn fc2_corrected_holds_through_seven() {
    for n in 0..=7 {
        let r = verify_fc2(n, Mode::Corrected).unwrap();
        assert!(r.passed(), "n={n}: sum {}", r.sum);
        assert_eq!(r.census, census_closed_form(5, n + 1, 3).unwrap());
    }
}

#[test]
fn fc2_literal_reading() {
    let r = verify_fc2(0, Mode::Literal).unwrap();
    assert!(!r.part_i_pass);
    assert_eq!(r.sum.to_string(), "1 + 3ζ6");
    for n in 1..=3 {
        let r = verify_fc2(n, Mode::Literal).unwrap();
        assert_eq!(r.range.1 - r.range.0, 4 * 5u64.pow(n));
        assert!(r.part_ii_pass);
        let corrected = verify_fc2(n, Mode::Corrected).unwrap();
        let extra = DigitCensus::from_counts(
            3,
            r.census
                .iter()
                .map(|(d, c)| (d, c - corrected.census.count(d))),
        )
        .unwrap();
        assert_eq!(extra.period_length(), 1);
    }
}
