//! Independent re-check of report witnesses. The group is rebuilt from the
//! report target and every recorded fact is recomputed exactly.

use std::collections::BTreeMap;
use std::str::FromStr;

use pichar_core::pi::{pi_classes, restrict_pi, PartialCharacter, PrimeSet};
use pichar_core::SubgroupRef;

use crate::cache::TableCache;
use crate::error::VerifyError;
use crate::report::{CheckReport, Witness};
use crate::session::Session;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReplaySummary {
    pub reports: usize,
    pub witnesses: usize,
    /// `(report index, witness index or None, reason)`.
    pub failures: Vec<(usize, Option<usize>, String)>,
}

impl ReplaySummary {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

fn parse_pi(text: &str) -> Result<PrimeSet, VerifyError> {
    PrimeSet::from_str(text).map_err(VerifyError::Pi)
}

fn bad(msg: impl Into<String>) -> VerifyError {
    VerifyError::BadWitness(msg.into())
}

fn check(cond: bool, msg: &str) -> Result<(), VerifyError> {
    if cond {
        Ok(())
    } else {
        Err(bad(msg))
    }
}

/// Replay every witness of `reports`, sharing one session per group.
pub fn replay_reports(reports: &[CheckReport], cache: Option<&TableCache>) -> ReplaySummary {
    let mut sessions: BTreeMap<String, Session> = BTreeMap::new();
    let mut summary = ReplaySummary {
        reports: reports.len(),
        ..Default::default()
    };
    for (r, report) in reports.iter().enumerate() {
        let key = report.target.group.to_json();
        if !sessions.contains_key(&key) {
            match Session::with_cache(&report.target.group, cache) {
                Ok(s) => {
                    sessions.insert(key.clone(), s);
                }
                Err(e) => {
                    summary.failures.push((r, None, format!("cannot rebuild group: {e}")));
                    continue;
                }
            }
        }
        let s = sessions.get_mut(&key).expect("inserted above");
        if s.fingerprint != report.target.fingerprint {
            summary.failures.push((
                r,
                None,
                format!("fingerprint {} does not match {}", report.target.fingerprint, s.fingerprint),
            ));
            continue;
        }
        for (k, w) in report.witnesses.iter().enumerate() {
            summary.witnesses += 1;
            if let Err(e) = replay_witness(s, w) {
                summary.failures.push((r, Some(k), e.to_string()));
            }
        }
    }
    summary
}

/// Re-check one witness against the session's group.
pub fn replay_witness(s: &mut Session, w: &Witness) -> Result<(), VerifyError> {
    let root = s.wb.root();
    match w {
        Witness::Note { .. } => Ok(()),
        Witness::Character { subgroup, index, values } => {
            let h = s.subgroup(subgroup.as_deref())?;
            check(s.sub_row(&h, *index)?.values() == values.as_slice(), "character values differ")
        }
        Witness::Degrees { degrees } => {
            let mut d = s.table.degrees();
            d.sort_unstable();
            check(&d == degrees, "degree multiset differs")
        }
        Witness::Subgroup { members, normal, .. } => {
            let h = s.subgroup(Some(members))?;
            check(s.group().is_normal(&h) == *normal, "normality differs")
        }
        Witness::Induction { subgroup, values, target } => {
            let h = s.subgroup(Some(subgroup))?;
            let node = s.node(&h);
            let t = node.table()?;
            check(
                t.rows().iter().any(|r| r.values() == values.as_slice()),
                "induced class function is not an irreducible character of the subgroup",
            )?;
            check(*target < s.table.len(), "target index out of range")?;
            check(
                root.induce_values(values, &node) == s.row(*target).values(),
                "induced character differs from target",
            )
        }
        Witness::Restriction { index, subgroup, values } => {
            let h = s.subgroup(Some(subgroup))?;
            check(*index < s.table.len(), "index out of range")?;
            let node = s.node(&h);
            check(
                root.restrict_values(s.row(*index).values(), &node) == *values,
                "restriction differs",
            )
        }
        Witness::Kernel {
            subgroup,
            index,
            normal,
            contains,
        } => {
            let h = s.subgroup(subgroup.as_deref())?;
            let n = s.subgroup(Some(normal))?;
            check(n.is_subset(&h), "kernel subgroup is not inside the subgroup")?;
            let node = s.node(&h);
            let row = s.sub_row(&h, *index)?;
            let local = node.localize(&n);
            check(row.kernel_contains(&local) == *contains, "kernel containment differs")
        }
        Witness::PartialLift { pi, index, member } => {
            let pi = parse_pi(pi)?;
            check(*index < s.table.len(), "index out of range")?;
            check(s.lift_member(&pi, *index)? == Some(*member), "restriction is not the stated member")
        }
        Witness::PartialInduction {
            pi,
            subgroup,
            values,
            member,
        } => {
            let pi = parse_pi(pi)?;
            let h = s.subgroup(Some(subgroup))?;
            let node = s.node(&h);
            let b = s.basis(&pi, &h)?;
            check(
                b.members().iter().any(|m| m.values() == values.as_slice()),
                "values are not a member of the subgroup basis",
            )?;
            let eta = PartialCharacter::new(node.group(), &pi, b.classes().clone(), values.clone());
            let top = s.top_basis(&pi)?;
            check(*member < top.len(), "member out of range")?;
            let induced = s.partial(&pi).induce_values(&root, &node, &eta);
            check(induced == top.member(*member).values(), "induced partial character differs")
        }
        Witness::ProductLift {
            pi,
            subgroup,
            mu,
            lambda,
            member,
        } => {
            let pi = parse_pi(pi)?;
            let co = s.complement(&pi);
            let h = s.subgroup(Some(subgroup))?;
            let node = s.node(&h);
            let t = node.table()?;
            check(*mu < t.len() && *lambda < t.len(), "index out of range")?;
            check(s.special.is_pi_special_at(&pi, &h, *mu)?, "mu is not pi-special")?;
            check(t.row(*lambda).is_linear(), "lambda is not linear")?;
            check(s.special.is_pi_special_at(&co, &h, *lambda)?, "lambda is not pi'-special")?;
            let top = s.top_basis(&pi)?;
            check(*member < top.len(), "member out of range")?;
            let target = top.member(*member).values().to_vec();
            let nu = restrict_pi(t.row(*mu), &pi);
            check(
                s.partial(&pi).induce_values(&root, &node, &nu) == target,
                "(mu^pi)^G is not the stated member",
            )?;
            let prod = t.row(*mu).product(t.row(*lambda))?;
            let full = root.induce_values(prod.values(), &node);
            let restricted: Vec<_> = top.classes().iter().map(|&c| full[c].clone()).collect();
            check(restricted == target, "((mu lambda)^G)^pi is not the stated member")
        }
        Witness::Frobenius { group, kernel } => {
            let m = s.subgroup(Some(group))?;
            let n = s.subgroup(Some(kernel))?;
            check(s.group().is_frobenius_with_kernel(&m, &n), "not a Frobenius group with this kernel")
        }
        Witness::PiClasses { pi, count } => {
            let pi = parse_pi(pi)?;
            check(pi_classes(s.group(), &pi).len() == *count, "pi-class count differs")
        }
        Witness::Predicate {
            name,
            pi,
            subgroup,
            subject,
            value,
        } => {
            let pi = pi.as_deref().map(parse_pi).transpose()?;
            let h = s.subgroup(subgroup.as_deref())?;
            let got = s.predicate(name, pi.as_ref(), &h, *subject)?;
            check(got == *value, &format!("predicate {name} is {got}"))
        }
        Witness::GroupPredicate {
            name,
            pi,
            subgroup,
            value,
        } => {
            let pi = pi.as_deref().map(parse_pi).transpose()?;
            let h: SubgroupRef = s.subgroup(subgroup.as_deref())?;
            let got = s.group_predicate(name, pi.as_ref(), &h)?;
            check(got == *value, &format!("group predicate {name} is {got}"))
        }
    }
}

/// Read a JSON-lines report file; blank lines and summary lines are skipped.
pub fn read_reports(text: &str) -> Result<Vec<CheckReport>, VerifyError> {
    let mut out = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
        let v: serde_json::Value = serde_json::from_str(line)?;
        if v.get("check_id").is_none() {
            continue;
        }
        out.push(serde_json::from_value(v)?);
    }
    Ok(out)
}
