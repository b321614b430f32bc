//! The fixed scan corpus and the scan driver.

use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;

use crate::cache::TableCache;
use crate::checks::run_check;
use crate::error::VerifyError;
use crate::report::Status;
use crate::session::Session;
use crate::spec::GroupSpec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub spec: GroupSpec,
    pub order: usize,
}

fn entry(spec: GroupSpec, order: usize) -> CorpusEntry {
    CorpusEntry { spec, order }
}

/// Every corpus group, in scan order. Orders are stated so that filtering
/// does not need to build anything.
pub fn corpus() -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    for n in [1usize, 2, 3, 4, 5, 6, 7, 8, 9, 12, 15, 16, 25, 27] {
        out.push(entry(GroupSpec::cyclic(n), n));
    }
    for n in 3..=12u32 {
        out.push(entry(GroupSpec::dihedral(n), 2 * n as usize));
    }
    for (n, m, r) in [
        (7u32, 3u32, 2u32),
        (9, 3, 4),
        (13, 3, 3),
        (19, 3, 7),
        (27, 3, 10),
        (5, 4, 2),
        (13, 4, 5),
        (7, 6, 3),
        (9, 6, 2),
        (11, 5, 3),
        (31, 5, 2),
    ] {
        out.push(entry(GroupSpec::metacyclic(n, m, r), (n * m) as usize));
    }
    for (p, q, order) in [(2u32, 3u32, 12usize), (2, 7, 56), (5, 3, 75), (2, 5, 80), (3, 13, 351), (3, 5, 405)] {
        out.push(entry(GroupSpec::frobenius_tower(p, q), order));
    }
    for (p, order) in [(3u32, 27usize), (5, 125), (7, 343)] {
        out.push(entry(GroupSpec::heisenberg(p), order));
    }
    out.push(entry(GroupSpec::gl2_3(), 48));
    out.push(entry(
        GroupSpec::MatrixGroup {
            p: 3,
            dim: 2,
            gens: vec![vec![1, 1, 0, 1], vec![0, 1, 2, 0]],
        },
        24,
    ));
    out.push(entry(
        GroupSpec::PermutationGroup {
            degree: 4,
            gens: vec![vec![1, 0, 2, 3], vec![1, 2, 3, 0]],
        },
        24,
    ));
    out.push(entry(GroupSpec::direct(GroupSpec::cyclic(3), GroupSpec::cyclic(3)), 9));
    out.push(entry(GroupSpec::direct(GroupSpec::cyclic(3), GroupSpec::dihedral(3)), 18));
    out.push(entry(
        GroupSpec::direct(GroupSpec::cyclic(3), GroupSpec::frobenius_tower(2, 3)),
        36,
    ));
    out.push(entry(GroupSpec::direct(GroupSpec::heisenberg(3), GroupSpec::cyclic(3)), 81));
    out.push(entry(
        GroupSpec::direct(GroupSpec::cyclic(5), GroupSpec::metacyclic(7, 3, 2)),
        105,
    ));
    out.push(entry(GroupSpec::fitthree(), 294));
    out.push(entry(GroupSpec::k_subgroup(5, 3, 1), 375));
    out.push(entry(GroupSpec::extraspecial(5, 3), 9375));
    out
}

pub fn select(max_order: usize, odd_only: bool) -> Vec<CorpusEntry> {
    corpus()
        .into_iter()
        .filter(|e| e.order <= max_order && (!odd_only || e.order % 2 == 1))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Probe {
    LiftProfile,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct LiftProfile {
    pub probe: &'static str,
    pub fingerprint: String,
    pub order: usize,
    pub fitting_height: usize,
    pub all_single_prime_lifts: bool,
    pub group: GroupSpec,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ScanSummary {
    pub groups: usize,
    pub reports: usize,
    pub by_status: BTreeMap<Status, usize>,
    pub by_check: BTreeMap<String, BTreeMap<Status, usize>>,
    /// `(check, fingerprint)` for every violation.
    pub violations: Vec<(String, String)>,
    pub errors: Vec<String>,
    pub profiles: Vec<LiftProfile>,
}

pub struct ScanConfig<'a> {
    pub max_order: usize,
    pub odd_only: bool,
    pub checks: Vec<&'static str>,
    pub probe: Option<Probe>,
    pub timings: bool,
    pub cache: Option<&'a TableCache>,
}

/// Run the checks over the selected corpus, writing one report per line.
/// Failures are kept per group and do not stop the scan.
pub fn scan(cfg: &ScanConfig<'_>, out: &mut dyn Write) -> Result<ScanSummary, VerifyError> {
    let mut summary = ScanSummary::default();
    for e in select(cfg.max_order, cfg.odd_only) {
        let label = e.spec.to_json();
        let mut s = match Session::with_cache(&e.spec, cfg.cache) {
            Ok(s) => s,
            Err(err) => {
                summary.errors.push(format!("{label}: {err}"));
                continue;
            }
        };
        summary.groups += 1;
        for &id in &cfg.checks {
            match run_check(id, &mut s, None, cfg.timings) {
                Ok(r) => {
                    writeln!(out, "{}", r.to_line())?;
                    summary.reports += 1;
                    *summary.by_status.entry(r.status).or_default() += 1;
                    *summary
                        .by_check
                        .entry(id.to_string())
                        .or_default()
                        .entry(r.status)
                        .or_default() += 1;
                    if r.status == Status::Violated {
                        summary.violations.push((id.to_string(), s.fingerprint.clone()));
                    }
                }
                Err(err) => summary.errors.push(format!("{id} on {label}: {err}")),
            }
        }
        if cfg.probe == Some(Probe::LiftProfile) {
            match lift_profile(&mut s) {
                Ok(p) => summary.profiles.push(p),
                Err(err) => summary.errors.push(format!("lift-profile on {label}: {err}")),
            }
        }
    }
    Ok(summary)
}

pub fn lift_profile(s: &mut Session) -> Result<LiftProfile, VerifyError> {
    let whole = s.whole();
    Ok(LiftProfile {
        probe: "lift-profile",
        fingerprint: s.fingerprint.clone(),
        order: s.group().order(),
        fitting_height: s.group().fitting_height()?,
        all_single_prime_lifts: s.group_predicate("all_single_prime_lifts", None, &whole)?,
        group: s.spec.clone(),
    })
}
