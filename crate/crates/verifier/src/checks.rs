//! One instance check per lemma or example. Every check gates on its
//! hypotheses first; a hypothesis that holds with a false conclusion is a
//! violation and carries its witnesses.

use std::collections::BTreeSet;
use std::time::Instant;

use pichar_core::charops::inertia_group;
use pichar_core::numbers::is_prime_power_of;
use pichar_core::pi::{restrict_pi, PrimeSet};
use pichar_core::{Group, SubgroupRef};

use crate::error::VerifyError;
use crate::report::{CheckReport, Status, Target, Witness};
use crate::session::Session;

pub const CHECK_IDS: [&str; 17] = [
    "CHK-PRIMELIFTS",
    "CHK-ODDPRIMELIFTS",
    "CHK-PRIMILIFT",
    "CHK-ODDPRIMILIFT",
    "CHK-MONLIFT",
    "CHK-SUPERODD",
    "CHK-MAINTHM",
    "CHK-LIFTSUPMON",
    "CHK-THEOREMC",
    "CHK-NAVINSP",
    "CHK-PLFT",
    "CHK-PLIFTS",
    "CHK-PLIFTS-FITTHREE",
    "CHK-CLASS",
    "CHK-PRIMLIN",
    "CHK-EX1",
    "CHK-EX2",
];

/// Product-lift witnesses kept per report when everything holds.
pub const PRODUCT_WITNESS_CAP: usize = 24;
/// Largest order for the subnormal-closure scan of the class lemma.
pub const CLASS_LIMIT: usize = 1000;

pub fn canonical_id(id: &str) -> Result<&'static str, VerifyError> {
    let up = id.trim().to_ascii_uppercase();
    let up = if up.starts_with("CHK-") { up } else { format!("CHK-{up}") };
    let up = if up == "CHK-FITTHREE" { "CHK-PLIFTS-FITTHREE".to_string() } else { up };
    CHECK_IDS
        .iter()
        .find(|c| **c == up)
        .copied()
        .ok_or_else(|| VerifyError::UnknownCheck(id.to_string()))
}

pub fn run_check(
    id: &str,
    s: &mut Session,
    pi: Option<&PrimeSet>,
    timings: bool,
) -> Result<CheckReport, VerifyError> {
    let id = canonical_id(id)?;
    let start = Instant::now();
    let mut w = Vec::new();
    let result = match id {
        "CHK-PRIMELIFTS" => primelifts(s, pi, &mut w),
        "CHK-ODDPRIMELIFTS" => oddprimelifts(s, pi, &mut w),
        "CHK-PRIMILIFT" => primilift(s, pi, &mut w, false),
        "CHK-ODDPRIMILIFT" => primilift(s, pi, &mut w, true),
        "CHK-MONLIFT" => monlift(s, pi, &mut w),
        "CHK-SUPERODD" => superodd(s, pi, &mut w),
        "CHK-MAINTHM" => mainthm(s, pi, &mut w),
        "CHK-LIFTSUPMON" => liftsupmon(s, &mut w),
        "CHK-THEOREMC" => theorem_c(s, &mut w),
        "CHK-NAVINSP" => navinsp(s, pi, &mut w),
        "CHK-PLFT" => plft(s, pi, &mut w),
        "CHK-PLIFTS" => plifts(s, pi, &mut w),
        "CHK-PLIFTS-FITTHREE" => fitthree(s, &mut w),
        "CHK-CLASS" => class(s, &mut w),
        "CHK-PRIMLIN" => primlin(s, &mut w),
        "CHK-EX1" => ex1(s, &mut w),
        "CHK-EX2" => ex2(s, &mut w),
        _ => unreachable!("canonical ids are exhaustive"),
    };
    let status = match result {
        Ok(st) => st,
        Err(e) if e.is_tier() => {
            w.push(Witness::note(format!("resource tier exceeded: {e}")));
            Status::Inapplicable
        }
        Err(e) => return Err(e),
    };
    Ok(CheckReport {
        check_id: id.to_string(),
        target: Target {
            fingerprint: s.fingerprint.clone(),
            pi: pi.map(|p| p.to_string()),
            group: s.spec.clone(),
        },
        status,
        witnesses: w,
        timing_ms: if timings { start.elapsed().as_millis() as u64 } else { 0 },
    })
}

fn ids(h: &SubgroupRef) -> Vec<u32> {
    h.members().to_vec()
}

fn sub_opt(s: &Session, h: &SubgroupRef) -> Option<Vec<u32>> {
    if h.len() == s.group().order() {
        None
    } else {
        Some(ids(h))
    }
}

/// Evaluate a character predicate and record it.
fn pred(
    s: &mut Session,
    w: &mut Vec<Witness>,
    name: &str,
    pi: Option<&PrimeSet>,
    h: &SubgroupRef,
    subject: usize,
) -> Result<bool, VerifyError> {
    let value = s.predicate(name, pi, h, subject)?;
    w.push(Witness::Predicate {
        name: name.to_string(),
        pi: pi.map(|p| p.to_string()),
        subgroup: sub_opt(s, h),
        subject,
        value,
    });
    Ok(value)
}

fn top_pred(s: &mut Session, w: &mut Vec<Witness>, name: &str, pi: Option<&PrimeSet>, subject: usize) -> Result<bool, VerifyError> {
    let whole = s.whole();
    pred(s, w, name, pi, &whole, subject)
}

/// Evaluate a subgroup predicate and record it.
fn gpred(
    s: &mut Session,
    w: &mut Vec<Witness>,
    name: &str,
    pi: Option<&PrimeSet>,
    h: &SubgroupRef,
) -> Result<bool, VerifyError> {
    let value = s.group_predicate(name, pi, h)?;
    w.push(Witness::GroupPredicate {
        name: name.to_string(),
        pi: pi.map(|p| p.to_string()),
        subgroup: sub_opt(s, h),
        value,
    });
    Ok(value)
}

fn lift_w(pi: &PrimeSet, index: usize, member: usize) -> Witness {
    Witness::PartialLift {
        pi: pi.to_string(),
        index,
        member,
    }
}

fn separable_family(s: &Session, pi: Option<&PrimeSet>, w: &mut Vec<Witness>) -> Vec<PrimeSet> {
    let mut out = Vec::new();
    for p in s.pi_family(pi) {
        if s.separable(&p) {
            out.push(p);
        } else {
            w.push(Witness::note(format!("{p}: group is not pi-separable")));
        }
    }
    out
}

fn singletons(s: &Session, pi: Option<&PrimeSet>) -> Vec<PrimeSet> {
    match pi {
        Some(pi) => pi
            .primes()
            .into_iter()
            .filter(|p| s.order().is_multiple_of(*p))
            .map(PrimeSet::singleton)
            .collect(),
        None => s.primes().into_iter().map(PrimeSet::singleton).collect(),
    }
}

fn verdict(violated: bool) -> Status {
    if violated {
        Status::Violated
    } else {
        Status::Verified
    }
}

/// Value-field form: if some lift of `φ` has values in `Q_{|G|_π}` and
/// another in `Q_{|G|_π′}`, then `φ` is rational-valued and some lift with
/// values in `Q_{|G|_π}` is real.
fn primelifts(s: &mut Session, pi: Option<&PrimeSet>, w: &mut Vec<Witness>) -> Result<Status, VerifyError> {
    let fam = separable_family(s, pi, w);
    if fam.is_empty() {
        return Ok(Status::Inapplicable);
    }
    let mut violated = false;
    for pi in fam {
        let co = s.complement(&pi);
        let b = s.top_basis(&pi)?;
        let lifts = s.lifts(&pi)?;
        let whole = s.whole();
        for j in 0..b.len() {
            let mut x = Vec::new();
            let mut y = Vec::new();
            for &(i, _) in lifts.iter().filter(|l| l.1 == j) {
                if s.predicate("value_filter", Some(&pi), &whole, i)? {
                    x.push(i);
                }
                if s.predicate("value_filter", Some(&co), &whole, i)? {
                    y.push(i);
                }
            }
            if x.is_empty() || y.is_empty() {
                continue;
            }
            w.push(lift_w(&pi, x[0], j));
            top_pred(s, w, "value_filter", Some(&pi), x[0])?;
            w.push(lift_w(&pi, y[0], j));
            top_pred(s, w, "value_filter", Some(&co), y[0])?;
            if !b.member(j).values().iter().all(|v| v.is_rational()) {
                violated = true;
                w.push(Witness::note(format!("{pi}: member {j} is not rational-valued")));
            }
            match x.iter().copied().find(|&i| s.row(i).is_real()) {
                Some(i) => {
                    top_pred(s, w, "real", None, i)?;
                }
                None => {
                    violated = true;
                    top_pred(s, w, "real", None, x[0])?;
                }
            }
        }
    }
    Ok(if violated { Status::Violated } else { Status::Partial })
}

/// Odd order: a lift of `φ ∈ I_π` with values in `Q_{|G|_π′}` is linear
/// and `φ = 1^π`. Even order: record lifts where this fails.
fn oddprimelifts(s: &mut Session, pi: Option<&PrimeSet>, w: &mut Vec<Witness>) -> Result<Status, VerifyError> {
    let odd = s.order() % 2 == 1;
    let fam = separable_family(s, pi, w);
    let mut violated = false;
    let mut counterexamples = 0;
    for pi in &fam {
        let co = s.complement(pi);
        let b = s.top_basis(pi)?;
        let whole = s.whole();
        for (i, j) in s.lifts(pi)? {
            if !s.predicate("value_filter", Some(&co), &whole, i)? {
                continue;
            }
            let linear = s.row(i).is_linear();
            let trivial = b.member(j).values().iter().all(|v| v.is_one());
            if odd {
                w.push(lift_w(pi, i, j));
                top_pred(s, w, "value_filter", Some(&co), i)?;
                top_pred(s, w, "linear", None, i)?;
                if !(linear && trivial) {
                    violated = true;
                    w.push(Witness::note(format!("{pi}: member {j} is not the principal partial character")));
                }
            } else if !linear {
                counterexamples += 1;
                w.push(lift_w(pi, i, j));
                top_pred(s, w, "value_filter", Some(&co), i)?;
                top_pred(s, w, "linear", None, i)?;
            }
        }
    }
    if !odd {
        w.push(Witness::note(format!(
            "even order: {counterexamples} nonlinear lifts with values in the complementary field"
        )));
        return Ok(Status::Inapplicable);
    }
    if fam.is_empty() {
        return Ok(Status::Inapplicable);
    }
    Ok(if violated { Status::Violated } else { Status::Partial })
}

/// `φ` primitive implies `χ` primitive; with `both`, also the converse,
/// which needs odd order.
fn primilift(s: &mut Session, pi: Option<&PrimeSet>, w: &mut Vec<Witness>, both: bool) -> Result<Status, VerifyError> {
    let odd = s.order() % 2 == 1;
    let fam = separable_family(s, pi, w);
    if fam.is_empty() {
        return Ok(Status::Inapplicable);
    }
    let mut violated = false;
    let mut counterexamples = 0;
    for pi in &fam {
        for (i, j) in s.lifts(pi)? {
            let whole = s.whole();
            let pp = s.predicate("partial_primitive", Some(pi), &whole, j)?;
            let cp = s.predicate("primitive", None, &whole, i)?;
            let bad = if both { pp != cp } else { pp && !cp };
            let relevant = if both { true } else { pp };
            if !relevant {
                continue;
            }
            if both && !odd {
                if bad {
                    counterexamples += 1;
                    w.push(lift_w(pi, i, j));
                    top_pred(s, w, "partial_primitive", Some(pi), j)?;
                    top_pred(s, w, "primitive", None, i)?;
                }
                continue;
            }
            w.push(lift_w(pi, i, j));
            top_pred(s, w, "partial_primitive", Some(pi), j)?;
            top_pred(s, w, "primitive", None, i)?;
            violated |= bad;
        }
    }
    if both && !odd {
        w.push(Witness::note(format!(
            "even order: {counterexamples} lifts where primitivity of the lift and of its restriction differ"
        )));
        return Ok(Status::Inapplicable);
    }
    Ok(verdict(violated))
}

/// `χ` monomial implies `φ` monomial; both inducers are recorded.
fn monlift(s: &mut Session, pi: Option<&PrimeSet>, w: &mut Vec<Witness>) -> Result<Status, VerifyError> {
    let fam = separable_family(s, pi, w);
    if fam.is_empty() {
        return Ok(Status::Inapplicable);
    }
    let mut violated = false;
    for pi in &fam {
        for (i, j) in s.lifts(pi)? {
            let Some(node) = s.mono.monomial_witness(i)? else {
                continue;
            };
            let lambda = s.sub_row(&node.subgroup, node.character)?;
            w.push(lift_w(pi, i, j));
            w.push(Witness::Induction {
                subgroup: ids(&node.subgroup),
                values: lambda.values().to_vec(),
                target: i,
            });
            let whole = s.whole();
            match s.partial(pi).monomial_witness_at(&(whole, j))? {
                Some((h, k)) => {
                    let eta = s.partial_member(pi, &h, k)?;
                    w.push(Witness::PartialInduction {
                        pi: pi.to_string(),
                        subgroup: ids(&h),
                        values: eta.values().to_vec(),
                        member: j,
                    });
                }
                None => {
                    violated = true;
                    top_pred(s, w, "partial_monomial", Some(pi), j)?;
                }
            }
        }
    }
    Ok(verdict(violated))
}

/// Odd order: `φ` super-monomial implies `χ` super-monomial.
fn superodd(s: &mut Session, pi: Option<&PrimeSet>, w: &mut Vec<Witness>) -> Result<Status, VerifyError> {
    let odd = s.order() % 2 == 1;
    let fam = separable_family(s, pi, w);
    let mut violated = false;
    let mut counterexamples = 0;
    for pi in &fam {
        for (i, j) in s.lifts(pi)? {
            let whole = s.whole();
            if !s.predicate("partial_super_monomial", Some(pi), &whole, j)? {
                continue;
            }
            let sm = s.predicate("super_monomial", None, &whole, i)?;
            if odd || !sm {
                w.push(lift_w(pi, i, j));
                top_pred(s, w, "partial_super_monomial", Some(pi), j)?;
                top_pred(s, w, "super_monomial", None, i)?;
            }
            if !sm {
                if odd {
                    violated = true;
                } else {
                    counterexamples += 1;
                }
            }
        }
    }
    if !odd {
        w.push(Witness::note(format!(
            "even order: {counterexamples} lifts with super-monomial restriction that are not super-monomial"
        )));
        return Ok(Status::Inapplicable);
    }
    if fam.is_empty() {
        return Ok(Status::Inapplicable);
    }
    Ok(verdict(violated))
}

/// Odd order, `{p}`-lifts: monomial, partial monomial, partial
/// super-monomial and super-monomial agree.
fn mainthm(s: &mut Session, pi: Option<&PrimeSet>, w: &mut Vec<Witness>) -> Result<Status, VerifyError> {
    let odd = s.order() % 2 == 1;
    let mut violated = false;
    let mut exceptions = 0;
    let whole = s.whole();
    for p in singletons(s, pi) {
        if !s.separable(&p) {
            w.push(Witness::note(format!("{p}: group is not pi-separable")));
            continue;
        }
        for (i, j) in s.lifts(&p)? {
            let a = s.predicate("monomial", None, &whole, i)?;
            let b = s.predicate("partial_monomial", Some(&p), &whole, j)?;
            let c = s.predicate("partial_super_monomial", Some(&p), &whole, j)?;
            let d = s.predicate("super_monomial", None, &whole, i)?;
            let agree = a == b && b == c && c == d;
            if odd || (c && !d) {
                w.push(lift_w(&p, i, j));
                top_pred(s, w, "monomial", None, i)?;
                top_pred(s, w, "partial_monomial", Some(&p), j)?;
                top_pred(s, w, "partial_super_monomial", Some(&p), j)?;
                top_pred(s, w, "super_monomial", None, i)?;
            }
            if odd {
                violated |= !agree;
            } else if c && !d {
                exceptions += 1;
            }
        }
    }
    if !odd {
        w.push(Witness::note(format!(
            "even order: {exceptions} lifts where partial super-monomiality does not give super-monomiality"
        )));
        return Ok(Status::Inapplicable);
    }
    Ok(verdict(violated))
}

/// Odd order, every `I_p` monomial and every character a single-prime lift
/// imply a super M-group.
fn liftsupmon(s: &mut Session, w: &mut Vec<Witness>) -> Result<Status, VerifyError> {
    let whole = s.whole();
    if !gpred(s, w, "odd_order", None, &whole)? {
        return Ok(Status::Inapplicable);
    }
    let mut hyp = true;
    for p in s.primes() {
        hyp &= gpred(s, w, "all_partial_monomial", Some(&PrimeSet::singleton(p)), &whole)?;
    }
    hyp &= gpred(s, w, "all_single_prime_lifts", None, &whole)?;
    if !hyp {
        return Ok(Status::Inapplicable);
    }
    Ok(verdict(!gpred(s, w, "super_m_group", None, &whole)?))
}

/// Odd-order M-group whose characters are single-prime lifts: every `I_p`
/// member is monomial and the group is a super M-group.
fn theorem_c(s: &mut Session, w: &mut Vec<Witness>) -> Result<Status, VerifyError> {
    let whole = s.whole();
    if !gpred(s, w, "odd_order", None, &whole)? {
        return Ok(Status::Inapplicable);
    }
    if !gpred(s, w, "m_group", None, &whole)? || !gpred(s, w, "all_single_prime_lifts", None, &whole)? {
        return Ok(Status::Inapplicable);
    }
    let mut ok = true;
    for p in s.primes() {
        ok &= gpred(s, w, "all_partial_monomial", Some(&PrimeSet::singleton(p)), &whole)?;
    }
    ok &= gpred(s, w, "super_m_group", None, &whole)?;
    Ok(verdict(!ok))
}

/// `μ ∈ Irr(H)` π-special with `(μ^π)^G ∈ I_π(G)` and `λ` linear
/// π′-special: `(μλ)^G` lifts `(μ^π)^G`.
fn navinsp(s: &mut Session, pi: Option<&PrimeSet>, w: &mut Vec<Witness>) -> Result<Status, VerifyError> {
    let fam = separable_family(s, pi, w);
    if fam.is_empty() {
        return Ok(Status::Inapplicable);
    }
    let subs = s.group().subgroups_up_to_conjugacy()?;
    let root = s.wb.root();
    let mut violated = false;
    let mut instances = 0usize;
    let mut kept = 0usize;
    for pi in &fam {
        let co = s.complement(pi);
        let b = s.top_basis(pi)?;
        for h in &subs {
            let node = s.node(h);
            let t = node.table()?;
            for mu in 0..t.len() {
                if !s.special.is_pi_special_at(pi, h, mu)? {
                    continue;
                }
                let nu = restrict_pi(t.row(mu), pi);
                let phi = s.partial(pi).induce_values(&root, &node, &nu);
                let Some(j) = b.members().iter().position(|m| m.values() == phi.as_slice()) else {
                    continue;
                };
                for lam in 0..t.len() {
                    if !t.row(lam).is_linear() || !s.special.is_pi_special_at(&co, h, lam)? {
                        continue;
                    }
                    let prod = t.row(mu).product(t.row(lam))?;
                    let full = root.induce_values(prod.values(), &node);
                    let ok = b.classes().iter().zip(b.member(j).values()).all(|(&c, v)| full[c] == *v);
                    instances += 1;
                    if !ok || kept < PRODUCT_WITNESS_CAP {
                        kept += 1;
                        w.push(Witness::ProductLift {
                            pi: pi.to_string(),
                            subgroup: ids(h),
                            mu,
                            lambda: lam,
                            member: j,
                        });
                    }
                    violated |= !ok;
                }
            }
        }
    }
    w.push(Witness::note(format!("{instances} instances checked")));
    Ok(verdict(violated))
}

/// `G/N` abelian, `θ ∈ Irr(N)` `p`-special (a member of `B_p(N)`), every
/// character over `θ` of its stabilizer an extension: every character of
/// `G` over `θ` is a `{p}`-lift.
fn plft(s: &mut Session, pi: Option<&PrimeSet>, w: &mut Vec<Witness>) -> Result<Status, VerifyError> {
    let g = s.group().clone();
    let derived = g.derived_subgroup();
    let normals: Vec<SubgroupRef> = g
        .normal_subgroups()?
        .subgroups
        .into_iter()
        .filter(|n| derived.is_subset(n))
        .collect();
    let root = s.wb.root();
    let whole = s.whole();
    let mut violated = false;
    let mut instances = 0;
    let mut any = false;
    for p in singletons(s, pi) {
        if !s.separable(&p) {
            continue;
        }
        any = true;
        for n in &normals {
            let node_n = s.node(n);
            let tn = node_n.table()?;
            let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
            for th in 0..tn.len() {
                if !s.special.is_pi_special_at(&p, n, th)? {
                    continue;
                }
                let theta = tn.row(th);
                let over = root.constituents(&root.induce_values(theta.values(), &node_n))?;
                if !seen.insert(over.clone()) {
                    continue;
                }
                let stab = if n.len() == g.order() {
                    whole.clone()
                } else {
                    inertia_group(&g, theta)?
                };
                let node_t = s.node(&stab);
                let on_t = node_t.constituents(&node_t.induce_values(theta.values(), &node_n))?;
                let mut extensions = true;
                for k in on_t {
                    extensions &= node_t.row(k)?.degree() == theta.degree();
                }
                if !extensions {
                    continue;
                }
                instances += 1;
                pred(s, w, "pi_special", Some(&p), n, th)?;
                w.push(Witness::Subgroup {
                    label: "stabilizer".into(),
                    members: ids(&stab),
                    normal: g.is_normal(&stab),
                });
                for chi in over {
                    violated |= !top_pred(s, w, "pi_lift", Some(&p), chi)?;
                }
            }
        }
    }
    if !any {
        return Ok(Status::Inapplicable);
    }
    w.push(Witness::note(format!(
        "{instances} instances; theta ranges over p-special characters, a subset of B_p(N)"
    )));
    Ok(if violated { Status::Violated } else { Status::Partial })
}

/// A normal `p`-subgroup with abelian `p′` quotient: every character is a
/// `{p}`-lift.
fn plifts(s: &mut Session, pi: Option<&PrimeSet>, w: &mut Vec<Witness>) -> Result<Status, VerifyError> {
    let mut applicable = false;
    let mut violated = false;
    for p in singletons(s, pi) {
        let n = s.group().o_p(p.primes()[0]);
        if !s.group_predicate("abelian_pi_prime_quotient", Some(&p), &n)? {
            continue;
        }
        applicable = true;
        w.push(Witness::Subgroup {
            label: format!("O_{}", p.primes()[0]),
            members: ids(&n),
            normal: true,
        });
        gpred(s, w, "pi_group", Some(&p), &n)?;
        gpred(s, w, "abelian_pi_prime_quotient", Some(&p), &n)?;
        for i in 0..s.table.len() {
            violated |= !top_pred(s, w, "pi_lift", Some(&p), i)?;
        }
    }
    if !applicable {
        return Ok(Status::Inapplicable);
    }
    Ok(verdict(violated))
}

fn is_cyclic(g: &Group) -> bool {
    g.elements().any(|x| g.element_order(x) as usize == g.order())
}

/// `N ≤ M` normal, `N` a `p`-group, `M` Frobenius with kernel `N` and
/// `M/N` a `q`-group, `G/M` cyclic of `q′` order: every character is a
/// `{p}`-lift or a `{q}`-lift.
fn fitthree(s: &mut Session, w: &mut Vec<Witness>) -> Result<Status, VerifyError> {
    let g = s.group().clone();
    let primes = s.primes();
    let normals = if primes.len() >= 2 {
        g.normal_subgroups()?.subgroups
    } else {
        Vec::new()
    };
    let mut applicable = false;
    let mut violated = false;
    for &p in &primes {
        let n = g.o_p(p);
        if n.len() == 1 {
            continue;
        }
        for &q in primes.iter().filter(|&&q| q != p) {
            for m in &normals {
                if m.len() <= n.len() || !n.is_subset(m) || !is_prime_power_of((m.len() / n.len()) as u64, q) {
                    continue;
                }
                if !g.is_frobenius_with_kernel(m, &n) {
                    continue;
                }
                let (quot, _) = Group::quotient(&g, m)?;
                if !is_cyclic(&quot) || (quot.order() as u64).is_multiple_of(q) {
                    continue;
                }
                applicable = true;
                w.push(Witness::Subgroup {
                    label: "N".into(),
                    members: ids(&n),
                    normal: true,
                });
                w.push(Witness::Subgroup {
                    label: "M".into(),
                    members: ids(m),
                    normal: true,
                });
                w.push(Witness::Frobenius {
                    group: ids(m),
                    kernel: ids(&n),
                });
                let (sp, sq) = (PrimeSet::singleton(p), PrimeSet::singleton(q));
                for i in 0..s.table.len() {
                    let whole = s.whole();
                    if s.predicate("pi_lift", Some(&sp), &whole, i)? {
                        top_pred(s, w, "pi_lift", Some(&sp), i)?;
                    } else if !top_pred(s, w, "pi_lift", Some(&sq), i)? {
                        violated = true;
                        top_pred(s, w, "pi_lift", Some(&sp), i)?;
                    }
                }
            }
        }
    }
    if !applicable {
        return Ok(Status::Inapplicable);
    }
    Ok(verdict(violated))
}

/// Within the subnormal subgroups of `G` (a class closed under normal
/// subgroups): if every M-group among them is a super M-group, normal
/// subgroups of those M-groups are M-groups.
fn class(s: &mut Session, w: &mut Vec<Witness>) -> Result<Status, VerifyError> {
    let g = s.group().clone();
    if g.order() > CLASS_LIMIT {
        w.push(Witness::note(format!("subnormal scan limited to order {CLASS_LIMIT}")));
        return Ok(Status::Inapplicable);
    }
    let top = g.order();
    let mut family: BTreeSet<SubgroupRef> = BTreeSet::new();
    let mut normals_of: Vec<(SubgroupRef, Vec<SubgroupRef>)> = Vec::new();
    let mut queue = vec![s.whole()];
    family.insert(s.whole());
    while let Some(h) = queue.pop() {
        let node = s.node(&h);
        let ns: Vec<SubgroupRef> = node
            .group()
            .normal_subgroups()?
            .subgroups
            .iter()
            .map(|n| node.globalize(n, top))
            .collect();
        for n in &ns {
            if family.insert(n.clone()) {
                queue.push(n.clone());
            }
        }
        normals_of.push((h, ns));
    }
    normals_of.sort();
    let mut m_groups = BTreeSet::new();
    let mut hyp = true;
    for h in &family {
        if gpred(s, w, "m_group", None, h)? {
            m_groups.insert(h.clone());
            hyp &= gpred(s, w, "super_m_group", None, h)?;
        }
    }
    if !hyp {
        return Ok(Status::Inapplicable);
    }
    let mut violated = false;
    for (h, ns) in &normals_of {
        if !m_groups.contains(h) {
            continue;
        }
        for n in ns {
            if !m_groups.contains(n) {
                violated = true;
                w.push(Witness::Subgroup {
                    label: "normal subgroup of an M-group".into(),
                    members: ids(n),
                    normal: g.is_normal(n),
                });
            }
        }
    }
    w.push(Witness::note(format!("{} subnormal subgroups", family.len())));
    Ok(verdict(violated))
}

/// Primitive characters linear and proper subgroups M-groups imply a super
/// M-group.
fn primlin(s: &mut Session, w: &mut Vec<Witness>) -> Result<Status, VerifyError> {
    let whole = s.whole();
    if !gpred(s, w, "all_primitive_linear", None, &whole)? || !gpred(s, w, "proper_subgroups_m", None, &whole)? {
        return Ok(Status::Inapplicable);
    }
    Ok(verdict(!gpred(s, w, "super_m_group", None, &whole)?))
}

fn builtin_params(s: &Session) -> (Option<u32>, Option<u32>) {
    match &s.spec {
        crate::spec::GroupSpec::Builtin { p, q, .. } => (*p, *q),
        _ => (None, None),
    }
}

/// The extraspecial example.
fn ex1(s: &mut Session, w: &mut Vec<Witness>) -> Result<Status, VerifyError> {
    if s.spec.builtin_name() != Some("extraspecial_example") {
        w.push(Witness::note("target is not the extraspecial example"));
        return Ok(Status::Inapplicable);
    }
    let (Some(p), Some(q)) = builtin_params(s) else {
        return Ok(Status::Inapplicable);
    };
    let (p64, q64) = (p as u64, q as u64);
    let pset = PrimeSet::singleton(p64);
    let whole = s.whole();
    let mut ok = true;

    for k in ["K1", "K2"] {
        let kref = s.example.sub(k).clone();
        w.push(Witness::Subgroup {
            label: k.into(),
            members: ids(&kref),
            normal: false,
        });
        let verdict = s.mono.m_group_verdict(&kref)?;
        ok &= !gpred(s, w, "m_group", None, &kref)?;
        let node = s.node(&kref);
        let mut found = false;
        for &f in &verdict.failures {
            let row = node.row(f)?;
            if row.degree_u64() == Some(p64) {
                pred(s, w, "monomial", None, &kref, f)?;
                w.push(Witness::Character {
                    subgroup: Some(ids(&kref)),
                    index: f,
                    values: row.values().to_vec(),
                });
                found = true;
                break;
            }
        }
        if !found {
            ok = false;
            w.push(Witness::note(format!("{k}: no non-monomial character of degree {p}")));
        }
    }

    let mut degrees = s.table.degrees();
    degrees.sort_unstable();
    let set: BTreeSet<u64> = degrees.iter().copied().collect();
    ok &= set == BTreeSet::from([1, q64, p64 * p64]);
    w.push(Witness::Degrees { degrees });

    let d = s.example.sub("D").clone();
    w.push(Witness::Subgroup {
        label: "D".into(),
        members: ids(&d),
        normal: true,
    });
    ok &= gpred(s, w, "pi_group", Some(&pset), &d)?;
    ok &= gpred(s, w, "abelian_pi_prime_quotient", Some(&pset), &d)?;
    ok &= gpred(s, w, "all_pi_lifts", Some(&pset), &whole)?;
    ok &= gpred(s, w, "m_group", None, &whole)?;

    let sa = s.example.sub("SA").clone();
    w.push(Witness::Subgroup {
        label: "SA".into(),
        members: ids(&sa),
        normal: false,
    });
    let root = s.wb.root();
    let node_sa = s.node(&sa);
    for i in 0..s.table.len() {
        let chi = s.row(i).clone();
        if chi.degree_u64() != Some(p64 * p64) {
            continue;
        }
        let res = root.restrict_values(chi.values(), &node_sa);
        match node_sa.constituents_of_degree(&res, 1)?.first() {
            Some(&k) => w.push(Witness::Induction {
                subgroup: ids(&sa),
                values: node_sa.linears()[k].values().to_vec(),
                target: i,
            }),
            None => {
                ok = false;
                w.push(Witness::note(format!("row {i} has no linear constituent on SA")));
            }
        }
    }

    ok &= gpred(s, w, "odd_order", None, &whole)?;
    ok &= gpred(s, w, "all_single_prime_lifts", None, &whole)?;
    for r in s.primes() {
        ok &= gpred(s, w, "all_partial_monomial", Some(&PrimeSet::singleton(r)), &whole)?;
    }
    ok &= gpred(s, w, "super_m_group", None, &whole)?;
    if ok {
        w.push(Witness::note("super M-group with a subgroup (K1) that is not an M-group"));
    }
    Ok(verdict(!ok))
}

/// The `GL_2(3)` example.
fn ex2(s: &mut Session, w: &mut Vec<Witness>) -> Result<Status, VerifyError> {
    if s.spec.builtin_name() != Some("gl2_3") {
        w.push(Witness::note("target is not GL2(3)"));
        return Ok(Status::Inapplicable);
    }
    let three = PrimeSet::singleton(3);
    let two = PrimeSet::singleton(2);
    let qref = s.example.sub("Q").clone();
    let sref = s.example.sub("S").clone();
    let whole = s.whole();
    let root = s.wb.root();
    let mut ok = true;
    w.push(Witness::Subgroup {
        label: "S".into(),
        members: ids(&sref),
        normal: true,
    });
    w.push(Witness::Subgroup {
        label: "Q".into(),
        members: ids(&qref),
        normal: true,
    });
    w.push(Witness::PiClasses {
        pi: three.to_string(),
        count: s.top_basis(&three)?.classes().len(),
    });

    // unique degree-2 character with Q in its kernel
    let over_q: Vec<usize> = (0..s.table.len())
        .filter(|&i| s.row(i).kernel_contains(&qref) && s.row(i).degree_u64() == Some(2))
        .collect();
    if over_q.len() != 1 {
        w.push(Witness::note(format!("{} degree-2 characters of G/Q", over_q.len())));
        return Ok(Status::Violated);
    }
    let chi = over_q[0];
    w.push(Witness::Kernel {
        subgroup: None,
        index: chi,
        normal: ids(&qref),
        contains: true,
    });
    w.push(Witness::Character {
        subgroup: None,
        index: chi,
        values: s.row(chi).values().to_vec(),
    });

    // chi = lambda^G with lambda linear on S/Q and 3-special
    let node_s = s.node(&sref);
    let ts = node_s.table()?;
    let local_q = node_s.localize(&qref);
    let target = s.row(chi).values().to_vec();
    let mut lambda = None;
    for k in 0..ts.len() {
        let l = ts.row(k);
        if l.is_linear() && l.kernel_contains(&local_q) && root.induce_values(l.values(), &node_s) == target {
            lambda = Some(k);
            break;
        }
    }
    let Some(lam) = lambda else {
        w.push(Witness::note("no linear character of S/Q induces chi"));
        return Ok(Status::Violated);
    };
    w.push(Witness::Induction {
        subgroup: ids(&sref),
        values: ts.row(lam).values().to_vec(),
        target: chi,
    });
    w.push(Witness::Kernel {
        subgroup: Some(ids(&sref)),
        index: lam,
        normal: ids(&qref),
        contains: true,
    });
    ok &= pred(s, w, "pi_special", Some(&three), &sref, lam)?;

    // phi = chi^{3} in I_3(G)
    let Some(phi) = s.lift_member(&three, chi)? else {
        w.push(Witness::note("chi^{3} is reducible"));
        return Ok(Status::Violated);
    };
    w.push(lift_w(&three, chi, phi));

    // theta the degree-2 character of Q and its extension psi
    let node_q = s.node(&qref);
    let tq = node_q.table()?;
    let thetas: Vec<usize> = (0..tq.len()).filter(|&k| tq.row(k).degree_u64() == Some(2)).collect();
    if thetas.len() != 1 {
        w.push(Witness::note(format!("{} degree-2 characters of Q", thetas.len())));
        return Ok(Status::Violated);
    }
    let theta = thetas[0];
    w.push(Witness::Character {
        subgroup: Some(ids(&qref)),
        index: theta,
        values: tq.row(theta).values().to_vec(),
    });
    ok &= pred(s, w, "pi_special", Some(&two), &qref, theta)?;
    let mut psi = None;
    for i in 0..s.table.len() {
        let row = s.row(i).clone();
        if row.degree_u64() != Some(2) || root.restrict_values(row.values(), &node_q) != tq.row(theta).values() {
            continue;
        }
        if s.lift_member(&three, i)? == Some(phi) && s.predicate("pi_special", Some(&two), &whole, i)? {
            psi = Some(i);
            break;
        }
    }
    let Some(psi) = psi else {
        w.push(Witness::note("no 2-special extension of theta lifts phi"));
        return Ok(Status::Violated);
    };
    w.push(Witness::Restriction {
        index: psi,
        subgroup: ids(&qref),
        values: tq.row(theta).values().to_vec(),
    });
    w.push(lift_w(&three, psi, phi));
    ok &= top_pred(s, w, "pi_special", Some(&two), psi)?;
    ok &= top_pred(s, w, "value_filter", Some(&two), psi)?;
    ok &= top_pred(s, w, "primitive", None, psi)?;
    ok &= !top_pred(s, w, "super_monomial", None, psi)?;
    ok &= top_pred(s, w, "partial_monomial", Some(&three), phi)?;
    ok &= !top_pred(s, w, "partial_primitive", Some(&three), phi)?;
    ok &= top_pred(s, w, "partial_super_monomial", Some(&three), phi)?;
    ok &= top_pred(s, w, "real", None, chi)?;
    if ok {
        w.push(Witness::note(
            "oddness necessary: psi(1) = 2 lifts phi with values in Q_2; psi is primitive and phi is not; \
             phi is super-monomial and psi is not",
        ));
    }
    Ok(verdict(!ok))
}
