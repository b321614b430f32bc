use pichar_core::pi::PrimeSet;
use pichar_verifier::checks::{run_check, CHECK_IDS};
use pichar_verifier::replay::replay_reports;
use pichar_verifier::report::{CheckReport, Status, Witness};
use pichar_verifier::session::Session;
use pichar_verifier::spec::GroupSpec;

fn run(spec: &GroupSpec, id: &str, pi: Option<&PrimeSet>) -> CheckReport {
    let mut s = Session::new(spec).unwrap();
    run_check(id, &mut s, pi, false).unwrap()
}

fn has_predicate(r: &CheckReport, name: &str, value: bool) -> bool {
    r.witnesses
        .iter()
        .any(|w| matches!(w, Witness::Predicate { name: n, value: v, .. } if n == name && *v == value))
}

#[test]
fn gl2_3_example() {
    let r = run(&GroupSpec::gl2_3(), "CHK-EX2", None);
    assert_eq!(r.status, Status::Verified);
    assert!(has_predicate(&r, "primitive", true));
    assert!(has_predicate(&r, "super_monomial", false));
    assert!(has_predicate(&r, "partial_monomial", true));
    assert!(has_predicate(&r, "partial_primitive", false));
    assert!(r
        .witnesses
        .iter()
        .any(|w| matches!(w, Witness::Note { text } if text.starts_with("oddness necessary"))));
    assert!(r
        .witnesses
        .iter()
        .any(|w| matches!(w, Witness::PiClasses { count: 2, .. })));
    let summary = replay_reports(&[r], None);
    assert!(summary.ok(), "{:?}", summary.failures);
}

#[test]
fn four_way_agreement_on_f21() {
    let spec = GroupSpec::metacyclic(7, 3, 2);
    let r = run(&spec, "CHK-MAINTHM", Some(&PrimeSet::singleton(7)));
    assert_eq!(r.status, Status::Verified);
    let lifts = r.witnesses.iter().filter(|w| matches!(w, Witness::PartialLift { .. })).count();
    assert!(lifts >= 3);
    assert!(replay_reports(&[r], None).ok());
}

#[test]
fn even_order_needs_oddness() {
    let r = run(&GroupSpec::gl2_3(), "CHK-MAINTHM", None);
    assert_eq!(r.status, Status::Inapplicable);
    assert!(has_predicate(&r, "partial_super_monomial", true));
    assert!(has_predicate(&r, "super_monomial", false));
}

#[test]
fn fitthree_builder() {
    let r = run(&GroupSpec::fitthree(), "CHK-PLIFTS-FITTHREE", None);
    assert_eq!(r.status, Status::Verified);
    assert!(r.witnesses.iter().any(|w| matches!(w, Witness::Frobenius { .. })));
    assert!(replay_reports(&[r], None).ok());
}

#[test]
fn example_checks_reject_other_groups() {
    assert_eq!(run(&GroupSpec::cyclic(5), "CHK-EX1", None).status, Status::Inapplicable);
    assert_eq!(run(&GroupSpec::cyclic(5), "EX2", None).status, Status::Inapplicable);
}

#[test]
fn unknown_check_is_an_error() {
    let mut s = Session::new(&GroupSpec::cyclic(2)).unwrap();
    assert!(run_check("CHK-NOPE", &mut s, None, false).is_err());
}

#[test]
fn every_check_replays_on_a_small_odd_group() {
    let spec = GroupSpec::metacyclic(13, 3, 3);
    let mut s = Session::new(&spec).unwrap();
    let reports: Vec<CheckReport> = CHECK_IDS
        .iter()
        .map(|id| run_check(id, &mut s, None, false).unwrap())
        .collect();
    assert!(reports.iter().all(|r| r.status != Status::Violated));
    let summary = replay_reports(&reports, None);
    assert!(summary.ok(), "{:?}", summary.failures);
}

#[test]
fn tampered_witnesses_fail_replay() {
    let r = run(&GroupSpec::gl2_3(), "CHK-EX2", None);
    let mut flips = 0;
    for (k, w) in r.witnesses.iter().enumerate() {
        let mut bad = r.clone();
        match w {
            Witness::Predicate { value, .. } => {
                if let Witness::Predicate { value: v, .. } = &mut bad.witnesses[k] {
                    *v = !*value;
                }
            }
            Witness::PartialLift { member, .. } => {
                if let Witness::PartialLift { member: m, .. } = &mut bad.witnesses[k] {
                    *m = member + 1;
                }
            }
            Witness::Induction { target, .. } => {
                if let Witness::Induction { target: t, .. } = &mut bad.witnesses[k] {
                    *t = (target + 1) % 8;
                }
            }
            _ => continue,
        }
        flips += 1;
        assert!(!replay_reports(&[bad], None).ok(), "witness {k} survived tampering");
    }
    assert!(flips > 5);
}

#[test]
fn wrong_fingerprint_fails_replay() {
    let mut r = run(&GroupSpec::cyclic(4), "CHK-PLIFTS", None);
    r.target.fingerprint = "4:000000000000000000000000".into();
    assert!(!replay_reports(&[r], None).ok());
}

#[test]
fn reports_round_trip_through_json_lines() {
    let r = run(&GroupSpec::gl2_3(), "CHK-MONLIFT", None);
    let back = CheckReport::from_line(&r.to_line()).unwrap();
    assert_eq!(back, r);
}

#[test]
fn extraspecial_group_has_629_classes() {
    let s = Session::new(&GroupSpec::extraspecial(5, 3)).unwrap();
    let d = s.example.sub("D").clone();
    let dg = pichar_core::Group::subgroup_group(s.group(), &d);
    assert_eq!(dg.order(), 3125);
    assert_eq!(dg.classes().len(), 5usize.pow(4) + 5 - 1);
}
