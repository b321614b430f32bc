//! One target group with its table and memoized searches, and the named
//! predicates shared by the checks and by witness replay.

use std::collections::BTreeMap;
use std::sync::Arc;

use pichar_core::charops::ClassFunction;
use pichar_core::chartable::{character_table, CharacterTable};
use pichar_core::monomial::MonomialSearch;
use pichar_core::numbers::prime_factors;
use pichar_core::pi::{PartialBasis, PartialCharacter, PartialSearch, PrimeSet, SpecialSearch};
use pichar_core::workbench::{SubNode, Workbench};
use pichar_core::{Group, SubgroupRef};
use pichar_cyclotomic::values_in_subcyclotomic;

use crate::builders::Example;
use crate::cache::TableCache;
use crate::error::VerifyError;
use crate::spec::{fingerprint, GroupSpec};

pub struct Session {
    pub spec: GroupSpec,
    pub example: Example,
    pub wb: Arc<Workbench>,
    pub table: Arc<CharacterTable>,
    pub fingerprint: String,
    pub mono: MonomialSearch,
    pub special: SpecialSearch,
    partial: BTreeMap<PrimeSet, PartialSearch>,
}

impl Session {
    pub fn new(spec: &GroupSpec) -> Result<Self, VerifyError> {
        Self::with_cache(spec, None)
    }

    pub fn with_cache(spec: &GroupSpec, cache: Option<&TableCache>) -> Result<Self, VerifyError> {
        let example = spec.build()?;
        let g = example.group.clone();
        let table = match cache {
            Some(c) => c.load_or_compute(&g)?.0,
            None => character_table(&g)?,
        };
        let table = Arc::new(table);
        let wb = Workbench::with_table(&g, table.clone());
        Ok(Session {
            spec: spec.clone(),
            fingerprint: fingerprint(&g),
            mono: MonomialSearch::new(&wb),
            special: SpecialSearch::new(&wb),
            partial: BTreeMap::new(),
            example,
            wb,
            table,
        })
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.example.group
    }

    pub fn order(&self) -> u64 {
        self.group().order() as u64
    }

    pub fn primes(&self) -> Vec<u64> {
        prime_factors(self.order())
    }

    pub fn whole(&self) -> SubgroupRef {
        self.group().whole()
    }

    /// The complement of `pi` among the primes dividing `|G|`.
    pub fn complement(&self, pi: &PrimeSet) -> PrimeSet {
        pi.complement_for(self.order())
    }

    /// Singletons `{p}` for `p` dividing `|G|` and their complements, or
    /// just the given set.
    pub fn pi_family(&self, given: Option<&PrimeSet>) -> Vec<PrimeSet> {
        if let Some(pi) = given {
            return vec![pi.clone()];
        }
        let mut out: Vec<PrimeSet> = Vec::new();
        for p in self.primes() {
            let s = PrimeSet::singleton(p);
            let c = self.complement(&s);
            for x in [s, c] {
                if !x.primes().is_empty() && !out.contains(&x) {
                    out.push(x);
                }
            }
        }
        out.sort();
        out
    }

    pub fn node(&self, h: &SubgroupRef) -> Arc<SubNode> {
        self.wb.node(h)
    }

    pub fn row(&self, i: usize) -> &ClassFunction {
        self.table.row(i)
    }

    /// Row `i` of the table of the subgroup `h`.
    pub fn sub_row(&self, h: &SubgroupRef, i: usize) -> Result<ClassFunction, VerifyError> {
        let node = self.node(h);
        let n = node.table()?.len();
        if i >= n {
            return Err(VerifyError::BadWitness(format!("character index {i} out of range ({n})")));
        }
        Ok(node.row(i)?)
    }

    /// Validate a member list (`None` for the whole group).
    pub fn subgroup(&self, members: Option<&[u32]>) -> Result<SubgroupRef, VerifyError> {
        let Some(members) = members else {
            return Ok(self.whole());
        };
        let n = self.group().order();
        if members.is_empty()
            || members.windows(2).any(|w| w[0] >= w[1])
            || members.iter().any(|&m| m as usize >= n)
        {
            return Err(VerifyError::BadWitness("member list is not sorted ids".into()));
        }
        let h = SubgroupRef::from_sorted(members.to_vec(), n);
        if !self.group().is_subgroup(&h) {
            return Err(VerifyError::BadWitness("members do not form a subgroup".into()));
        }
        Ok(h)
    }

    pub fn partial(&mut self, pi: &PrimeSet) -> &mut PartialSearch {
        let wb = self.wb.clone();
        self.partial
            .entry(pi.clone())
            .or_insert_with(|| PartialSearch::new(&wb, pi))
    }

    pub fn basis(&mut self, pi: &PrimeSet, h: &SubgroupRef) -> Result<Arc<PartialBasis>, VerifyError> {
        Ok(self.partial(pi).basis(h)?)
    }

    pub fn top_basis(&mut self, pi: &PrimeSet) -> Result<Arc<PartialBasis>, VerifyError> {
        let w = self.whole();
        self.basis(pi, &w)
    }

    /// Whether the group is π-separable as far as the checks can tell.
    pub fn separable(&self, pi: &PrimeSet) -> bool {
        let n = self.order();
        self.group().is_solvable() || pi.covers(n) || !pi.meets(n)
    }

    /// Basis member lifted by row `i`, if `χ^π` is irreducible.
    pub fn lift_member(&mut self, pi: &PrimeSet, i: usize) -> Result<Option<usize>, VerifyError> {
        let b = self.top_basis(pi)?;
        Ok(unit_position(b.decomposition_of_row(i)))
    }

    /// `(row, member)` for every π-lift, in table order.
    pub fn lifts(&mut self, pi: &PrimeSet) -> Result<Vec<(usize, usize)>, VerifyError> {
        let mut out = Vec::new();
        for i in 0..self.table.len() {
            if let Some(j) = self.lift_member(pi, i)? {
                out.push((i, j));
            }
        }
        Ok(out)
    }

    pub fn partial_member(&mut self, pi: &PrimeSet, h: &SubgroupRef, j: usize) -> Result<PartialCharacter, VerifyError> {
        Ok(self.partial(pi).member(&(h.clone(), j))?)
    }

    /// Evaluate a named predicate of row (or basis member) `subject` of the
    /// subgroup `h`.
    pub fn predicate(
        &mut self,
        name: &str,
        pi: Option<&PrimeSet>,
        h: &SubgroupRef,
        subject: usize,
    ) -> Result<bool, VerifyError> {
        let key = (h.clone(), subject);
        let need = |pi: Option<&PrimeSet>| {
            pi.cloned()
                .ok_or_else(|| VerifyError::BadWitness(format!("predicate {name} needs a prime set")))
        };
        let partial_member_ok = |s: &mut Self, pi: &PrimeSet| -> Result<(), VerifyError> {
            let n = s.basis(pi, h)?.len();
            if subject >= n {
                return Err(VerifyError::BadWitness(format!("member {subject} out of range ({n})")));
            }
            Ok(())
        };
        Ok(match name {
            "monomial" => {
                self.sub_row(h, subject)?;
                self.mono.is_monomial_at(&key)?
            }
            "primitive" => {
                self.sub_row(h, subject)?;
                self.mono.is_primitive_at(&key)?
            }
            "super_monomial" => {
                self.sub_row(h, subject)?;
                self.mono.is_super_monomial_at(&key)?
            }
            "linear" => self.sub_row(h, subject)?.is_linear(),
            "real" => self.sub_row(h, subject)?.is_real(),
            "pi_lift" => {
                let pi = need(pi)?;
                self.sub_row(h, subject)?;
                let b = self.basis(&pi, h)?;
                unit_position(b.decomposition_of_row(subject)).is_some()
            }
            "pi_special" => {
                let pi = need(pi)?;
                self.sub_row(h, subject)?;
                self.special.is_pi_special_at(&pi, h, subject)?
            }
            "value_filter" => {
                let pi = need(pi)?;
                let row = self.sub_row(h, subject)?;
                let n = pi.pi_part(h.len() as u64) as u32;
                values_in_subcyclotomic(row.values(), n)
            }
            "partial_monomial" => {
                let pi = need(pi)?;
                partial_member_ok(self, &pi)?;
                self.partial(&pi).is_monomial_partial_at(&key)?
            }
            "partial_primitive" => {
                let pi = need(pi)?;
                partial_member_ok(self, &pi)?;
                self.partial(&pi).is_primitive_partial_at(&key)?
            }
            "partial_super_monomial" => {
                let pi = need(pi)?;
                partial_member_ok(self, &pi)?;
                self.partial(&pi).is_super_monomial_partial_at(&key)?
            }
            other => return Err(VerifyError::BadWitness(format!("unknown predicate {other:?}"))),
        })
    }

    /// Evaluate a named predicate of the subgroup `h`.
    pub fn group_predicate(&mut self, name: &str, pi: Option<&PrimeSet>, h: &SubgroupRef) -> Result<bool, VerifyError> {
        let need = |pi: Option<&PrimeSet>| {
            pi.cloned()
                .ok_or_else(|| VerifyError::BadWitness(format!("predicate {name} needs a prime set")))
        };
        let node = self.node(h);
        let order = h.len() as u64;
        Ok(match name {
            "m_group" => self.mono.m_group_verdict(h)?.holds,
            "super_m_group" => self.mono.super_m_group_verdict(h)?.holds,
            "odd_order" => order % 2 == 1,
            "solvable" => node.group().is_solvable(),
            "normal" => self.group().is_normal(h),
            "pi_group" => need(pi)?.is_pi_number(order),
            "abelian_pi_prime_quotient" => {
                let pi = need(pi)?;
                if !self.group().is_normal(h) {
                    return Ok(false);
                }
                let (q, _) = Group::quotient(self.group(), h)?;
                q.is_abelian() && !pi.meets(q.order() as u64)
            }
            "all_pi_lifts" => {
                let pi = need(pi)?;
                let b = self.basis(&pi, h)?;
                let n = node.table()?.len();
                (0..n).all(|i| unit_position(b.decomposition_of_row(i)).is_some())
            }
            "all_single_prime_lifts" => {
                if order == 1 {
                    return Ok(true);
                }
                let n = node.table()?.len();
                let mut covered = vec![false; n];
                for p in prime_factors(order) {
                    let b = self.basis(&PrimeSet::singleton(p), h)?;
                    for (i, c) in covered.iter_mut().enumerate() {
                        *c |= unit_position(b.decomposition_of_row(i)).is_some();
                    }
                }
                covered.iter().all(|&c| c)
            }
            "all_partial_monomial" => {
                let pi = need(pi)?;
                let n = self.basis(&pi, h)?.len();
                let mut all = true;
                for j in 0..n {
                    if !self.partial(&pi).is_monomial_partial_at(&(h.clone(), j))? {
                        all = false;
                        break;
                    }
                }
                all
            }
            "all_primitive_linear" => {
                let n = node.table()?.len();
                let mut all = true;
                for i in 0..n {
                    if self.mono.is_primitive_at(&(h.clone(), i))? && !node.row(i)?.is_linear() {
                        all = false;
                        break;
                    }
                }
                all
            }
            "proper_subgroups_m" => {
                let top = self.group().order();
                let subs = node.group().subgroups_up_to_conjugacy()?;
                let mut all = true;
                for s in subs {
                    if s.len() == node.group().order() {
                        continue;
                    }
                    let s = node.globalize(&s, top);
                    if !self.mono.m_group_verdict(&s)?.holds {
                        all = false;
                        break;
                    }
                }
                all
            }
            other => return Err(VerifyError::BadWitness(format!("unknown group predicate {other:?}"))),
        })
    }
}

/// Position of the single 1 in a unit vector.
pub fn unit_position(v: &[u64]) -> Option<usize> {
    let mut pos = None;
    for (i, &x) in v.iter().enumerate() {
        match x {
            0 => {}
            1 if pos.is_none() => pos = Some(i),
            _ => return None,
        }
    }
    pos
}
