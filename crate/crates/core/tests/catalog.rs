use hiccup::bfile::{parse_bfile, read_bfile, write_bfile};
use hiccup::catalog::{bundled_prefix, is_oeis_id, load_catalog, lookup, parse_listing, Source};
use hiccup::exec::Execution;
use hiccup::morphism::Preference;
use hiccup::verify::{verify_all, verify_entry, Status, VerificationReport, VerifyOptions};
use hiccup::{generate_hiccup, Error, HiccupParams, IntegerSequence};
use proptest::prelude::*;

const BEATTY_NOT_APPLICABLE: [&str; 11] = [
    "A004956", "A045412", "A080578", "A080579", "A080580", "A080600", "A080903", "A086398",
    "A000201", "A003156", "A284753",
];

#[test]
fn catalog_shape() {
    let c = load_catalog();
    assert_eq!(c.len(), 26);
    assert_eq!(c.iter().filter(|e| e.source == Source::Recognized).count(), 21);
    let mut ids: Vec<_> = c.iter().map(|e| e.oeis_id).collect();
    assert!(ids.iter().all(|id| is_oeis_id(id)));
    ids.sort();
    ids.dedup();
    assert_eq!(ids.len(), 26);
    for e in c {
        e.params.validate().unwrap();
        assert!(!e.params.is_degenerate());
    }
}

#[test]
fn lookups() {
    assert_eq!(lookup("A086377").unwrap().params, HiccupParams::new(1, 1, 3, 2));
    assert_eq!(lookup("a284753").unwrap().params, HiccupParams::new(0, 2, 4, 2));
    assert_eq!(lookup("A000201").unwrap().source, Source::Unrecognized);
    assert!(matches!(lookup("A999999"), Err(Error::UnknownEntry(_))));
    assert!(!is_oeis_id("A12345"));
    assert!(!is_oeis_id("B123456"));
}

#[test]
fn bundled_prefixes_match_recursion() {
    for id in ["A007066", "A080579", "A080580", "A080903", "A086377", "A086398"] {
        let prefix = bundled_prefix(id).unwrap();
        let a = generate_hiccup(&lookup(id).unwrap().params, prefix.len()).unwrap();
        assert_eq!(prefix, a, "{id}");
    }
    let full = parse_listing(include_str!("../fixtures/A086398.txt")).unwrap();
    let a = generate_hiccup(&lookup("A086398").unwrap().params, full.len()).unwrap();
    assert_eq!(full, a);
    assert!(bundled_prefix("A000201").is_none());
    assert!(matches!(parse_listing("1, 2, x"), Err(Error::Format { line: 1, .. })));
}

#[test]
fn bfile_examples() {
    let s = read_bfile("# A086377\n1 1\n2 4\n\n3 6\n").unwrap();
    assert_eq!(s.terms(), &[1, 4, 6]);
    let b = parse_bfile("0 2\n1 6\n").unwrap();
    assert_eq!(b.offset, 0);
    assert!(matches!(read_bfile("1 1\n2 x\n"), Err(Error::Format { line: 2, .. })));
    assert!(matches!(read_bfile("1 1\n2\n"), Err(Error::Format { line: 2, .. })));
    assert!(read_bfile("").unwrap().is_empty());
}

proptest! {
    #[test]
    fn bfile_round_trip(terms in proptest::collection::vec(-1_000_000_000i64..1_000_000_000, 0..200)) {
        let s = IntegerSequence(terms);
        prop_assert_eq!(read_bfile(&write_bfile(&s)).unwrap(), s);
    }
}

fn quick() -> VerifyOptions {
    VerifyOptions {
        horizon: 2000,
        cfrac_horizon: 200,
        ..VerifyOptions::default()
    }
}

#[test]
fn verify_a086377() {
    let r = verify_entry(lookup("A086377").unwrap(), &VerifyOptions::default());
    assert!(r.passed(), "{r:?}");
    for (name, s) in r.legs() {
        assert_eq!(*s, Status::Pass, "{name}");
    }
    assert_eq!(r.relation, Some(Status::Pass));
    assert_eq!(r.formulas.beatty.as_deref(), Some("floor((1 + sqrt(2))*n - sqrt(2)/2)"));
    assert_eq!(r.formulas.morphism.as_deref().map(|m| m.starts_with("0->10, 1->100")), Some(true));
}

#[test]
fn verify_statuses() {
    let reports = verify_all(&quick());
    assert_eq!(reports.len(), 26);
    for (r, e) in reports.iter().zip(load_catalog()) {
        assert_eq!(r.entry, e.oeis_id);
        assert!(r.passed(), "{}: {r:?}", r.entry);
        let na = matches!(r.beatty, Status::NotApplicable { .. });
        assert_eq!(na, BEATTY_NOT_APPLICABLE.contains(&e.oeis_id), "{}", e.oeis_id);
        let cfrac = match r.cfrac {
            Status::Pass => "pass",
            Status::Conjecture { .. } => "conjecture",
            Status::NotApplicable { .. } => "none",
            Status::Fail { .. } => "fail",
        };
        let want = match e.oeis_id {
            "A086377" | "A080652" => "pass",
            "A000201" | "A004956" => "conjecture",
            _ => "none",
        };
        assert_eq!(cfrac, want, "{}", e.oeis_id);
    }
    let a284753 = reports.iter().find(|r| r.entry == "A284753").unwrap();
    assert!(a284753.numeration.as_ref().unwrap().passed());
    assert_eq!(
        reports.iter().filter(|r| r.numeration.is_some()).count(),
        1
    );
}

#[test]
fn y_equal_one_reason_mentions_primitivity() {
    let r = verify_entry(lookup("A080578").unwrap(), &quick());
    match &r.beatty {
        Status::NotApplicable { reason } => assert!(reason.contains("not primitive"), "{reason}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn literal_preference_verifies_too() {
    let opts = VerifyOptions {
        preference: Preference::Literal,
        ..quick()
    };
    assert!(verify_all(&opts).iter().all(VerificationReport::passed));
}

#[test]
fn sequential_and_parallel_agree() {
    let strip = |mut r: VerificationReport| {
        r.elapsed_ms = 0;
        r
    };
    let seq: Vec<_> = verify_all(&VerifyOptions {
        exec: Execution::Sequential,
        ..quick()
    })
    .into_iter()
    .map(strip)
    .collect();
    let par: Vec<_> = verify_all(&quick()).into_iter().map(strip).collect();
    assert_eq!(seq, par);
}

#[test]
fn report_json_round_trip() {
    let r = verify_entry(lookup("A284753").unwrap(), &quick());
    let text = serde_json::to_string(&r).unwrap();
    let back: VerificationReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back, r);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["beatty"]["status"], "NOT-APPLICABLE");
    assert_eq!(v["recursion"]["status"], "PASS");
    assert_eq!(v["params"]["z"], 2);
}
