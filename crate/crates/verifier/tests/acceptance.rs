//! Acceptance run. Prints one line per criterion and exits nonzero if any
//! criterion fails.

#[path = "../../core/tests/common/degrees.rs"]
mod degrees;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use pichar_core::chartable::{character_table, verify_table};
use pichar_core::pi::{pi_classes, restrict_pi, PartialSearch, PrimeSet};
use pichar_cyclotomic::Cyclotomic;
use pichar_verifier::checks::run_check;
use pichar_verifier::corpus::{scan, select, ScanConfig};
use pichar_verifier::replay::{read_reports, replay_reports};
use pichar_verifier::report::{CheckReport, Status, Witness};
use pichar_verifier::session::Session;
use pichar_verifier::spec::GroupSpec;

type Outcome = Result<String, String>;
type Criterion<'a> = Box<dyn FnOnce() -> Outcome + 'a>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(t: Instant, limit: Duration, what: &str) -> Result<Duration, String> {
    let e = t.elapsed();
    ensure(e < limit, || format!("{what} took {e:.2?}, limit {limit:?}"))?;
    Ok(e)
}

fn has_note(r: &CheckReport, prefix: &str) -> bool {
    r.witnesses
        .iter()
        .any(|w| matches!(w, Witness::Note { text } if text.starts_with(prefix)))
}

fn group_pred(r: &CheckReport, name: &str) -> Option<bool> {
    r.witnesses.iter().rev().find_map(|w| match w {
        Witness::GroupPredicate { name: n, value, .. } if n == name => Some(*value),
        _ => None,
    })
}

fn replay_ok(reports: &[CheckReport]) -> Result<usize, String> {
    let summary = replay_reports(reports, None);
    ensure(summary.ok(), || format!("replay failures: {:?}", &summary.failures[..summary.failures.len().min(3)]))?;
    Ok(summary.witnesses)
}

fn tables() -> Outcome {
    let t = Instant::now();
    let mut specs: Vec<GroupSpec> = select(500, false).into_iter().map(|e| e.spec).collect();
    specs.push(GroupSpec::gl2_3());
    specs.push(GroupSpec::k_subgroup(5, 3, 1));
    specs.push(GroupSpec::k_subgroup(5, 3, 2));
    for spec in &specs {
        let g = spec.build().map_err(|e| e.to_string())?.group;
        let table = character_table(&g).map_err(|e| format!("{}: {e}", spec.to_json()))?;
        verify_table(&table).map_err(|e| format!("{}: {e:?}", spec.to_json()))?;
    }
    let e = within(t, Duration::from_secs(5), "tables")?;
    let g = GroupSpec::gl2_3().build().map_err(|e| e.to_string())?.group;
    let mut got = character_table(&g).map_err(|e| e.to_string())?.degrees();
    got.sort_unstable();
    let mut want = degrees::degrees(&g);
    want.sort_unstable();
    ensure(got == want, || format!("GL2(3) degrees {got:?}, oracle {want:?}"))?;
    Ok(format!("{} tables in {e:.2?}, GL2(3) degrees {got:?}", specs.len()))
}

fn gl2_3_example() -> Outcome {
    let t = Instant::now();
    let mut s = Session::new(&GroupSpec::gl2_3()).map_err(|e| e.to_string())?;
    let r = run_check("CHK-EX2", &mut s, None, false).map_err(|e| e.to_string())?;
    let e = within(t, Duration::from_secs(10), "CHK-EX2")?;
    ensure(r.status == Status::Verified, || format!("status {:?}", r.status))?;
    ensure(has_note(&r, "oddness necessary"), || "no oddness record".into())?;
    let n = replay_ok(&[r])?;
    Ok(format!("verified in {e:.2?}, {n} witnesses replayed"))
}

fn extraspecial_example() -> Outcome {
    let t = Instant::now();
    for i in [1, 2] {
        let mut s = Session::new(&GroupSpec::k_subgroup(5, 3, i)).map_err(|e| e.to_string())?;
        let whole = s.whole();
        let v = s.mono.m_group_verdict(&whole).map_err(|e| e.to_string())?;
        ensure(!v.holds, || format!("K{i} is an M-group"))?;
        let five = v.failures.iter().any(|&f| s.row(f).degree_u64() == Some(5));
        ensure(five, || format!("K{i}: no degree-5 witness"))?;
    }
    let k_time = within(t, Duration::from_secs(30), "K_i claims")?;

    let t = Instant::now();
    let mut s = Session::new(&GroupSpec::extraspecial(5, 3)).map_err(|e| e.to_string())?;
    let table_time = within(t, Duration::from_secs(600), "order-9375 table")?;
    let r = run_check("CHK-EX1", &mut s, None, false).map_err(|e| e.to_string())?;
    ensure(r.status == Status::Verified, || format!("CHK-EX1 status {:?}", r.status))?;
    let degrees: std::collections::BTreeSet<u64> = s.table.degrees().into_iter().collect();
    ensure(degrees == [1, 3, 25].into(), || format!("degree set {degrees:?}"))?;
    ensure(group_pred(&r, "all_pi_lifts") == Some(true), || "not all {5}-lifts".into())?;
    ensure(group_pred(&r, "m_group") == Some(true), || "not an M-group".into())?;
    ensure(group_pred(&r, "super_m_group") == Some(true), || "not a super M-group".into())?;
    let theorem = run_check("CHK-THEOREMC", &mut s, None, false).map_err(|e| e.to_string())?;
    ensure(theorem.status == Status::Verified, || format!("CHK-THEOREMC status {:?}", theorem.status))?;
    let plifts = run_check("CHK-PLIFTS", &mut s, None, false).map_err(|e| e.to_string())?;
    ensure(plifts.status == Status::Verified, || format!("CHK-PLIFTS status {:?}", plifts.status))?;
    drop(s);
    let n = replay_ok(&[r, theorem, plifts])?;
    Ok(format!(
        "K_i claims {k_time:.2?}, table {table_time:.2?}, degrees {degrees:?}, {n} witnesses replayed"
    ))
}

fn prime_sets(n: u64) -> Vec<PrimeSet> {
    let mut out: Vec<PrimeSet> = Vec::new();
    for p in pichar_core::numbers::prime_factors(n) {
        let s = PrimeSet::singleton(p);
        let c = s.complement_for(n);
        for x in [s, c] {
            if !x.primes().is_empty() && !out.contains(&x) {
                out.push(x);
            }
        }
    }
    out
}

fn pi_suite() -> Outcome {
    let (mut groups, mut sets, mut pairs) = (0, 0, 0);
    for e in select(1000, false) {
        let label = e.spec.to_json();
        let s = Session::new(&e.spec).map_err(|err| err.to_string())?;
        let g = s.group().clone();
        let root = s.wb.root();
        let subs = g.subgroups_up_to_conjugacy().map_err(|err| err.to_string())?;
        groups += 1;
        for pi in prime_sets(g.order() as u64) {
            sets += 1;
            let mut ps = PartialSearch::new(&s.wb, &pi);
            let b = ps.top_basis().map_err(|err| err.to_string())?;
            let classes = pi_classes(&g, &pi);
            ensure(b.len() == classes.len(), || {
                format!("{label} {pi}: |I_pi| = {}, {} pi-classes", b.len(), classes.len())
            })?;
            for (j, m) in b.members().iter().enumerate() {
                let unit = b.decompose_partial(m).map_err(|err| format!("{label} {pi}: {err}"))?;
                let want: Vec<u64> = (0..b.len()).map(|k| u64::from(k == j)).collect();
                ensure(unit == want, || format!("{label} {pi}: member {j} is not a unit vector"))?;
            }
            for i in 0..s.table.len() {
                let chi = restrict_pi(s.row(i), &pi);
                let dec = b.decompose_partial(&chi).map_err(|err| format!("{label} {pi} row {i}: {err}"))?;
                ensure(dec == b.decomposition_of_row(i), || format!("{label} {pi} row {i}: decompositions differ"))?;
            }
            for h in &subs {
                let node = s.node(h);
                let th = node.table().map_err(|err| err.to_string())?;
                for theta in th.rows() {
                    pairs += 1;
                    let a = ps.induce_values(&root, &node, &restrict_pi(theta, &pi));
                    let full = root.induce_values(theta.values(), &node);
                    let b: Vec<Cyclotomic> = classes.iter().map(|&c| full[c].clone()).collect();
                    ensure(a == b, || format!("{label} {pi}: induction does not commute on a subgroup of order {}", h.len()))?;
                }
            }
        }
    }
    Ok(format!("{groups} groups, {sets} prime sets, {pairs} (subgroup, character) pairs"))
}

fn four_way() -> Outcome {
    let mut out = Vec::new();
    let cfg = ScanConfig {
        max_order: 1000,
        odd_only: true,
        checks: vec!["CHK-MAINTHM"],
        probe: None,
        timings: false,
        cache: None,
    };
    let summary = scan(&cfg, &mut out).map_err(|e| e.to_string())?;
    ensure(summary.errors.is_empty(), || format!("errors: {:?}", summary.errors))?;
    ensure(summary.violations.is_empty(), || format!("disagreements: {:?}", summary.violations))?;
    let odd = read_reports(&String::from_utf8_lossy(&out)).map_err(|e| e.to_string())?;
    let lifts: usize = odd
        .iter()
        .map(|r| r.witnesses.iter().filter(|w| matches!(w, Witness::PartialLift { .. })).count())
        .sum();

    let mut exceptions = Vec::new();
    for e in select(1000, false).into_iter().filter(|e| e.order % 2 == 0) {
        let mut s = Session::new(&e.spec).map_err(|err| err.to_string())?;
        let r = run_check("CHK-MAINTHM", &mut s, None, false).map_err(|err| err.to_string())?;
        let n = r.witnesses.iter().filter(|w| matches!(w, Witness::PartialLift { .. })).count();
        if n > 0 {
            println!("  even-order exception: {} ({n} lifts)", e.spec.to_json());
            exceptions.push(r);
        }
    }
    let gl = exceptions
        .iter()
        .any(|r| r.target.group.builtin_name() == Some("gl2_3"));
    ensure(gl, || "GL2(3) exception not logged".into())?;
    replay_ok(&odd)?;
    replay_ok(&exceptions)?;
    Ok(format!(
        "{} odd groups, {lifts} lifts, 0 disagreements; {} even groups with exceptions",
        summary.groups,
        exceptions.len()
    ))
}

fn monomial_oracle() -> Outcome {
    let t = Instant::now();
    let (mut groups, mut chars) = (0, 0);
    for e in select(200, false) {
        let s = Session::new(&e.spec).map_err(|err| err.to_string())?;
        let mut m = pichar_core::monomial::MonomialSearch::new(&s.wb);
        let whole = s.whole();
        groups += 1;
        for i in 0..s.table.len() {
            chars += 1;
            let key = (whole.clone(), i);
            let a = m.is_monomial_at(&key).map_err(|err| err.to_string())?;
            let b = m.brute_force_monomial_at(&key).map_err(|err| err.to_string())?;
            ensure(a == b, || format!("{} row {i}: descent {a}, brute force {b}", e.spec.to_json()))?;
            let c = m.is_super_monomial_at(&key).map_err(|err| err.to_string())?;
            let d = m.super_monomial_exhaustive_at(&key).map_err(|err| err.to_string())?;
            ensure(c == d, || format!("{} row {i}: super-monomial paths {c} and {d}", e.spec.to_json()))?;
        }
    }
    let e = within(t, Duration::from_secs(60), "monomial oracle")?;
    Ok(format!("{groups} groups, {chars} characters in {e:.2?}"))
}

const LEMMAS: [&str; 9] = [
    "CHK-PRIMELIFTS",
    "CHK-PRIMILIFT",
    "CHK-MONLIFT",
    "CHK-SUPERODD",
    "CHK-NAVINSP",
    "CHK-PLFT",
    "CHK-PLIFTS",
    "CHK-CLASS",
    "CHK-PRIMLIN",
];

fn full_run() -> Result<Vec<u8>, String> {
    let mut out = Vec::new();
    let cfg = ScanConfig {
        max_order: 1000,
        odd_only: false,
        checks: LEMMAS.to_vec(),
        probe: None,
        timings: false,
        cache: None,
    };
    let summary = scan(&cfg, &mut out).map_err(|e| e.to_string())?;
    ensure(summary.errors.is_empty(), || format!("errors: {:?}", summary.errors))?;
    ensure(summary.violations.is_empty(), || format!("violations: {:?}", summary.violations))?;
    let mut s = Session::new(&GroupSpec::fitthree()).map_err(|e| e.to_string())?;
    let r = run_check("CHK-PLIFTS-FITTHREE", &mut s, None, false).map_err(|e| e.to_string())?;
    ensure(r.status == Status::Verified, || format!("CHK-FITTHREE status {:?}", r.status))?;
    out.extend_from_slice(r.to_line().as_bytes());
    out.push(b'\n');
    Ok(out)
}

fn lemma_suite(first: &[u8]) -> Outcome {
    let reports = read_reports(&String::from_utf8_lossy(first)).map_err(|e| e.to_string())?;
    let verified = reports.iter().filter(|r| r.status == Status::Verified).count();
    let n = replay_ok(&reports)?;
    Ok(format!("{} reports ({verified} verified), 0 violations, {n} witnesses replayed", reports.len()))
}

fn determinism(first: &[u8]) -> Outcome {
    let second = full_run()?;
    ensure(first == second.as_slice(), || "report bytes differ between runs".into())?;
    let mut a = Vec::new();
    let mut b = Vec::new();
    for out in [&mut a, &mut b] {
        let cfg = ScanConfig {
            max_order: 1000,
            odd_only: false,
            checks: pichar_verifier::checks::CHECK_IDS.to_vec(),
            probe: None,
            timings: false,
            cache: None,
        };
        scan(&cfg, out).map_err(|e| e.to_string())?;
    }
    ensure(a == b, || "full check run differs between runs".into())?;
    Ok(format!("{} and {} bytes identical across runs", first.len(), a.len()))
}

fn main() -> ExitCode {
    let first = full_run();
    let lemma: Criterion = match &first {
        Ok(bytes) => Box::new(move || lemma_suite(bytes)),
        Err(e) => {
            let e = e.clone();
            Box::new(move || Err(e))
        }
    };
    let det: Criterion = match &first {
        Ok(bytes) => Box::new(move || determinism(bytes)),
        Err(e) => {
            let e = e.clone();
            Box::new(move || Err(e))
        }
    };
    let criteria: Vec<(&str, Criterion)> = vec![
        ("character tables", Box::new(tables)),
        ("GL2(3) example", Box::new(gl2_3_example)),
        ("extraspecial example", Box::new(extraspecial_example)),
        ("partial character suite", Box::new(pi_suite)),
        ("four-way agreement", Box::new(four_way)),
        ("monomiality oracles", Box::new(monomial_oracle)),
        ("lemma suite", lemma),
        ("determinism", det),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.into_iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {}: pass ({name}): {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL ({name}): {why}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
