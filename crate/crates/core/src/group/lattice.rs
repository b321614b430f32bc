use std::collections::HashSet;
use std::sync::Arc;

use super::structure::EXHAUSTIVE_LIMIT;
use super::{Element, Group, SubgroupRef, IDENTITY};
use crate::error::GroupError;
use crate::numbers::is_prime;

/// Upper bound on candidate generator tuples tried when searching for
/// complements of a minimal normal subgroup.
const COMPLEMENT_SEARCH_LIMIT: u64 = 2_000_000;

impl Group {
    /// `x^-1 H x`
    pub fn conjugate_subgroup(&self, h: &SubgroupRef, x: Element) -> SubgroupRef {
        let members = h.members().iter().map(|&m| self.conjugate(m, x)).collect();
        SubgroupRef::from_sorted(members, self.order())
    }

    /// A right transversal of the normalizer of `h`, so that the conjugates
    /// `h^x` for `x` in the transversal are pairwise distinct and exhaust the class.
    pub fn conjugating_transversal(&self, h: &SubgroupRef) -> Vec<Element> {
        let norm = self.normalizer(h);
        let mut covered = vec![false; self.order()];
        let mut out = Vec::new();
        for x in self.elements() {
            if covered[x as usize] {
                continue;
            }
            out.push(x);
            for &n in norm.members() {
                covered[self.mul(n, x) as usize] = true;
            }
        }
        out
    }

    pub fn conjugates_of(&self, h: &SubgroupRef) -> Vec<SubgroupRef> {
        self.conjugating_transversal(h)
            .into_iter()
            .map(|x| self.conjugate_subgroup(h, x))
            .collect()
    }

    /// Conjugate of `h` with the lexicographically least member sequence.
    pub fn canonical_conjugate(&self, h: &SubgroupRef) -> SubgroupRef {
        self.conjugates_of(h)
            .into_iter()
            .min_by(|a, b| a.members().cmp(b.members()))
            .expect("at least one conjugate")
    }

    pub fn are_conjugate(&self, a: &SubgroupRef, b: &SubgroupRef) -> bool {
        a.len() == b.len() && self.canonical_conjugate(a) == self.canonical_conjugate(b)
    }

    /// One canonical representative per conjugacy class of subgroups, sorted
    /// by order then member sequence.
    pub fn subgroups_up_to_conjugacy(&self) -> Result<Vec<SubgroupRef>, GroupError> {
        if self.order() > EXHAUSTIVE_LIMIT {
            return Err(GroupError::TierExceeded {
                what: "subgroup lattice enumeration",
                limit: EXHAUSTIVE_LIMIT,
                order: self.order(),
            });
        }
        let solvable = self.is_solvable();
        let mut seen: HashSet<SubgroupRef> = HashSet::new();
        let mut reps: Vec<SubgroupRef> = Vec::new();
        let trivial = self.trivial();
        seen.insert(trivial.clone());
        reps.push(trivial);
        let mut i = 0;
        while i < reps.len() {
            let h = reps[i].clone();
            i += 1;
            let pool: Vec<Element> = if solvable {
                self.normalizer(&h).members().to_vec()
            } else {
                self.elements().collect()
            };
            let mut skip = vec![false; self.order()];
            for &m in h.members() {
                skip[m as usize] = true;
            }
            for g in pool {
                if skip[g as usize] {
                    continue;
                }
                if solvable && !prime_order_mod(self, &h, g) {
                    continue;
                }
                let k = self.join_with(&h, &[g]);
                if solvable {
                    // every element of K outside H generates K together with H
                    for &m in k.members() {
                        skip[m as usize] = true;
                    }
                }
                if seen.contains(&k) {
                    continue;
                }
                for c in self.conjugates_of(&k) {
                    seen.insert(c);
                }
                reps.push(self.canonical_conjugate(&k));
            }
        }
        reps.sort();
        Ok(reps)
    }

    /// Representatives of the conjugacy classes of maximal subgroups, each the
    /// canonical conjugate, sorted by order then member sequence.
    pub fn maximal_subgroups(self: &Arc<Self>) -> Result<Vec<SubgroupRef>, GroupError> {
        if self.order() == 1 {
            return Ok(Vec::new());
        }
        if self.is_solvable() {
            let mut out: Vec<SubgroupRef> = solvable_maximal_subgroups(self)?
                .iter()
                .map(|m| self.canonical_conjugate(m))
                .collect();
            out.sort();
            out.dedup();
            return Ok(out);
        }
        let all = self.subgroups_up_to_conjugacy()?;
        let proper: Vec<&SubgroupRef> = all.iter().filter(|s| s.len() < self.order()).collect();
        let mut out = Vec::new();
        for h in &proper {
            let maximal = self.elements().all(|g| {
                h.contains(g) || self.join_with(h, &[g]).len() == self.order()
            });
            if maximal {
                out.push((*h).clone());
            }
        }
        Ok(out)
    }

    /// A minimal normal subgroup of a nontrivial solvable group: the smallest
    /// normal closure of a prime-order element of the last nontrivial term
    /// of the derived series.
    pub fn minimal_normal_subgroup(&self) -> Option<SubgroupRef> {
        let series = self.derived_series();
        let last = series.iter().rev().find(|s| !s.is_trivial())?;
        let mut best: Option<SubgroupRef> = None;
        let mut tried = HashSet::new();
        for &x in last.members() {
            if x == IDENTITY || !is_prime(self.element_order(x) as u64) {
                continue;
            }
            let c = self.classes().class_of(x);
            if !tried.insert(c) {
                continue;
            }
            let n = self.normal_closure(&[x]);
            if best.as_ref().map(|b| n.len() < b.len()).unwrap_or(true) {
                best = Some(n);
            }
        }
        best
    }

    /// Complements of the normal subgroup `n` (elementary abelian), not
    /// reduced up to conjugacy.
    pub fn complements(self: &Arc<Self>, n: &SubgroupRef) -> Result<Vec<SubgroupRef>, GroupError> {
        let (q, proj) = Group::quotient(self, n)?;
        let target = q.order();
        if target == 1 {
            return Ok(vec![self.trivial()]);
        }
        let qgens = q.small_generating_set(&q.elements().collect::<Vec<_>>());
        let mut lifts = vec![u32::MAX; q.order()];
        for x in self.elements() {
            let c = proj[x as usize] as usize;
            if lifts[c] == u32::MAX {
                lifts[c] = x;
            }
        }
        let base: Vec<Element> = qgens.iter().map(|&c| lifts[c as usize]).collect();
        let r = base.len() as u32;
        let count = (n.len() as u64).checked_pow(r).unwrap_or(u64::MAX);
        if count > COMPLEMENT_SEARCH_LIMIT {
            return Err(GroupError::TierExceeded {
                what: "complement search",
                limit: COMPLEMENT_SEARCH_LIMIT as usize,
                order: self.order(),
            });
        }
        let nm = n.members();
        let mut found: HashSet<SubgroupRef> = HashSet::new();
        let mut out = Vec::new();
        let mut idx = vec![0usize; base.len()];
        loop {
            let gens: Vec<Element> = base
                .iter()
                .zip(&idx)
                .map(|(&b, &i)| self.mul(b, nm[i]))
                .collect();
            if let Some(h) = self.bounded_closure(&gens, target) {
                if h.len() == target
                    && h.members().iter().filter(|&&x| n.contains(x)).count() == 1
                    && found.insert(h.clone())
                {
                    out.push(h);
                }
            }
            let mut pos = 0;
            loop {
                if pos == idx.len() {
                    out.sort();
                    return Ok(out);
                }
                idx[pos] += 1;
                if idx[pos] < nm.len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
    }

    /// Closure of `gens`, or `None` as soon as it exceeds `limit` elements.
    pub fn bounded_closure(&self, gens: &[Element], limit: usize) -> Option<SubgroupRef> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut members = vec![IDENTITY];
        let mut head = 0;
        while head < members.len() {
            let x = members[head];
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    members.push(y);
                    if members.len() > limit {
                        return None;
                    }
                }
            }
            head += 1;
        }
        Some(SubgroupRef::from_mask(seen))
    }
}

fn prime_order_mod(g: &Group, h: &SubgroupRef, x: Element) -> bool {
    let mut y = x;
    let mut k = 1u64;
    while !h.contains(y) {
        y = g.mul(y, x);
        k += 1;
    }
    is_prime(k)
}

/// Maximal subgroups (not reduced up to conjugacy, possibly repeated) of a
/// solvable group, by recursion through a minimal normal subgroup `N`:
/// preimages of maximal subgroups of `G/N` together with complements of `N`.
fn solvable_maximal_subgroups(g: &Arc<Group>) -> Result<Vec<SubgroupRef>, GroupError> {
    if g.order() == 1 {
        return Ok(Vec::new());
    }
    let n = g.minimal_normal_subgroup().expect("nontrivial solvable group");
    let mut out = Vec::new();
    if n.len() < g.order() {
        let (q, proj) = Group::quotient(g, &n)?;
        for m in solvable_maximal_subgroups(&q)? {
            let pre = g
                .elements()
                .filter(|&x| m.contains(proj[x as usize]))
                .collect();
            out.push(SubgroupRef::from_sorted(pre, g.order()));
        }
    }
    let mut comps = g.complements(&n)?;
    let mut seen: HashSet<SubgroupRef> = HashSet::new();
    comps.retain(|c| {
        if seen.contains(c) {
            return false;
        }
        for x in g.conjugates_of(c) {
            seen.insert(x);
        }
        true
    });
    out.extend(comps);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::Generators;
    use super::*;

    fn perms(degree: usize, gens: Vec<Vec<u32>>) -> Arc<Group> {
        Group::from_generators(&Generators::Permutations { degree, gens }).unwrap()
    }

    fn orders(v: &[SubgroupRef]) -> Vec<usize> {
        v.iter().map(|s| s.len()).collect()
    }

    #[test]
    fn s3_lattice() {
        let s3 = perms(3, vec![vec![1, 2, 0], vec![1, 0, 2]]);
        assert_eq!(orders(&s3.subgroups_up_to_conjugacy().unwrap()), vec![1, 2, 3, 6]);
        assert_eq!(orders(&s3.maximal_subgroups().unwrap()), vec![2, 3]);
    }

    #[test]
    fn c4_lattice() {
        let c4 = Group::cyclic(4);
        assert_eq!(c4.subgroups_up_to_conjugacy().unwrap().len(), 3);
        assert_eq!(orders(&c4.maximal_subgroups().unwrap()), vec![2]);
    }

    #[test]
    fn s4_and_a5() {
        let s4 = perms(4, vec![vec![1, 2, 3, 0], vec![1, 0, 2, 3]]);
        assert_eq!(s4.subgroups_up_to_conjugacy().unwrap().len(), 11);
        assert_eq!(orders(&s4.maximal_subgroups().unwrap()), vec![6, 8, 12]);
        let a5 = perms(5, vec![vec![1, 2, 3, 4, 0], vec![1, 2, 0, 3, 4]]);
        assert_eq!(a5.subgroups_up_to_conjugacy().unwrap().len(), 9);
        assert_eq!(orders(&a5.maximal_subgroups().unwrap()), vec![6, 10, 12]);
    }

    #[test]
    fn canonical_conjugate_is_class_invariant() {
        let s4 = perms(4, vec![vec![1, 2, 3, 0], vec![1, 0, 2, 3]]);
        let h = s4.closure(&[s4.generators()[1]]);
        let c = s4.canonical_conjugate(&h);
        for x in s4.elements() {
            assert_eq!(s4.canonical_conjugate(&s4.conjugate_subgroup(&h, x)), c);
        }
    }
}
