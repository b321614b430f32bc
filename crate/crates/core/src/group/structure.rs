use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use super::{Element, Group, SubgroupRef, IDENTITY};
use crate::error::GroupError;
use crate::numbers::{is_prime_power_of, prime_factors};

/// Exhaustive normal-subgroup and subgroup-lattice enumeration is only
/// attempted up to this order.
pub const EXHAUSTIVE_LIMIT: usize = 2000;
const NORMAL_SUBGROUP_LIMIT: usize = 20_000;

/// All normal subgroups of a group, sorted by order then members.
#[derive(Clone, Debug)]
pub struct NormalSubgroups {
    pub subgroups: Vec<SubgroupRef>,
}

impl Group {
    /// Closure of `start` (a subgroup) together with `gens`.
    pub fn join_with(&self, start: &SubgroupRef, gens: &[Element]) -> SubgroupRef {
        let mut all_gens: Vec<Element> = gens.iter().copied().filter(|&g| g != IDENTITY).collect();
        if all_gens.iter().all(|&g| start.contains(g)) {
            return start.clone();
        }
        all_gens.extend(self.small_generating_set(start.members()));
        let mut seen = vec![false; self.order()];
        let mut queue: VecDeque<Element> = VecDeque::new();
        for &m in start.members() {
            seen[m as usize] = true;
            queue.push_back(m);
        }
        while let Some(x) = queue.pop_front() {
            for &g in &all_gens {
                let y = self.mul(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    queue.push_back(y);
                }
            }
        }
        SubgroupRef::from_mask(seen)
    }

    pub fn join(&self, a: &SubgroupRef, b: &SubgroupRef) -> SubgroupRef {
        if b.is_subset(a) {
            return a.clone();
        }
        if a.is_subset(b) {
            return b.clone();
        }
        let gens = self.small_generating_set(b.members());
        self.join_with(a, &gens)
    }

    pub fn is_subgroup(&self, members: &SubgroupRef) -> bool {
        members.contains(IDENTITY)
            && members
                .members()
                .iter()
                .all(|&a| members.members().iter().all(|&b| members.contains(self.mul(a, b))))
    }

    pub fn is_normal(&self, sub: &SubgroupRef) -> bool {
        let gens = self.small_generating_set(sub.members());
        self.normalizes(&gens, sub, self.generators())
    }

    fn normalizes(&self, sub_gens: &[Element], sub: &SubgroupRef, by: &[Element]) -> bool {
        sub_gens
            .iter()
            .all(|&h| by.iter().all(|&g| sub.contains(self.conjugate(h, g))))
    }

    /// Smallest subgroup of `within` (given by generators) containing `seeds`
    /// and normalized by `within`.
    pub fn normal_closure_in(&self, within: &[Element], seeds: &[Element]) -> SubgroupRef {
        let mut gens: Vec<Element> = Vec::new();
        let mut current = self.trivial();
        let mut queue: VecDeque<Element> = seeds.iter().copied().collect();
        while let Some(x) = queue.pop_front() {
            if current.contains(x) {
                continue;
            }
            gens.push(x);
            current = self.closure(&gens);
            for &g in within {
                queue.push_back(self.conjugate(x, g));
            }
        }
        current
    }

    pub fn normal_closure(&self, seeds: &[Element]) -> SubgroupRef {
        self.normal_closure_in(self.generators(), seeds)
    }

    pub fn centralizer_of_element(&self, x: Element) -> SubgroupRef {
        let members = self
            .elements()
            .filter(|&g| self.mul(g, x) == self.mul(x, g))
            .collect();
        SubgroupRef::from_sorted(members, self.order())
    }

    /// Elements of `within` commuting with every element of `gens`.
    pub fn centralizer_in(&self, within: &SubgroupRef, gens: &[Element]) -> SubgroupRef {
        let members = within
            .members()
            .iter()
            .copied()
            .filter(|&g| gens.iter().all(|&x| self.mul(g, x) == self.mul(x, g)))
            .collect();
        SubgroupRef::from_sorted(members, self.order())
    }

    pub fn center(&self) -> SubgroupRef {
        let gens = self.generators().to_vec();
        self.centralizer_in(&self.whole(), &gens)
    }

    pub fn normalizer(&self, sub: &SubgroupRef) -> SubgroupRef {
        let gens = self.small_generating_set(sub.members());
        let members = self
            .elements()
            .filter(|&g| gens.iter().all(|&h| sub.contains(self.conjugate(h, g))))
            .collect();
        SubgroupRef::from_sorted(members, self.order())
    }

    /// Commutator subgroup of the subgroup generated by `gens`.
    pub fn derived_subgroup_of(&self, gens: &[Element]) -> SubgroupRef {
        let mut comms = Vec::new();
        for (i, &a) in gens.iter().enumerate() {
            for &b in &gens[i + 1..] {
                comms.push(self.commutator(a, b));
            }
        }
        self.normal_closure_in(gens, &comms)
    }

    pub fn derived_subgroup(&self) -> SubgroupRef {
        self.derived_subgroup_of(self.generators())
    }

    /// `G, G', G'', ...` ending at the first repeated term.
    pub fn derived_series(&self) -> Vec<SubgroupRef> {
        let mut series = vec![self.whole()];
        loop {
            let last = series.last().unwrap();
            if last.is_trivial() {
                break;
            }
            let gens = self.small_generating_set(last.members());
            let next = self.derived_subgroup_of(&gens);
            if next.len() == last.len() {
                break;
            }
            series.push(next);
        }
        series
    }

    /// Normal closures of the class representatives.
    pub fn class_normal_closures(&self) -> Vec<SubgroupRef> {
        let cl = self.classes();
        (0..cl.len())
            .map(|c| self.normal_closure(&[cl.rep(c)]))
            .collect()
    }

    /// All normal subgroups, enumerated as joins of class normal closures.
    pub fn normal_subgroups(&self) -> Result<NormalSubgroups, GroupError> {
        if self.order() > EXHAUSTIVE_LIMIT {
            return Err(GroupError::TierExceeded {
                what: "normal subgroup enumeration",
                limit: EXHAUSTIVE_LIMIT,
                order: self.order(),
            });
        }
        let mut atoms: Vec<SubgroupRef> = self.class_normal_closures();
        atoms.sort();
        atoms.dedup();
        let atom_gens: Vec<Vec<Element>> = atoms
            .iter()
            .map(|a| self.small_generating_set(a.members()))
            .collect();
        let mut seen: HashSet<SubgroupRef> = HashSet::new();
        let mut queue = VecDeque::new();
        for a in &atoms {
            if seen.insert(a.clone()) {
                queue.push_back(a.clone());
            }
        }
        while let Some(n) = queue.pop_front() {
            for (a, gens) in atoms.iter().zip(&atom_gens) {
                if a.is_subset(&n) {
                    continue;
                }
                let j = self.join_with(&n, gens);
                if seen.insert(j.clone()) {
                    if seen.len() > NORMAL_SUBGROUP_LIMIT {
                        return Err(GroupError::TierExceeded {
                            what: "normal subgroup count",
                            limit: NORMAL_SUBGROUP_LIMIT,
                            order: self.order(),
                        });
                    }
                    queue.push_back(j);
                }
            }
        }
        let mut subgroups: Vec<SubgroupRef> = seen.into_iter().collect();
        subgroups.sort();
        Ok(NormalSubgroups { subgroups })
    }

    /// Maximal proper normal subgroups. Solvable groups of any order use
    /// kernels of homomorphisms onto cyclic groups of prime order.
    pub fn maximal_normal_subgroups(self: &Arc<Self>) -> Result<Vec<SubgroupRef>, GroupError> {
        if self.order() == 1 {
            return Ok(Vec::new());
        }
        if self.is_solvable() {
            return Ok(self.prime_index_normal_subgroups());
        }
        let all = self.normal_subgroups()?.subgroups;
        let proper: Vec<&SubgroupRef> = all.iter().filter(|s| s.len() < self.order()).collect();
        Ok(proper
            .iter()
            .filter(|s| !proper.iter().any(|t| t.len() > s.len() && s.is_subset(t)))
            .map(|s| (*s).clone())
            .collect())
    }

    /// Normal subgroups of prime index, as kernels of maps onto `C_p`.
    pub fn prime_index_normal_subgroups(self: &Arc<Self>) -> Vec<SubgroupRef> {
        let derived = self.derived_subgroup();
        let (ab, proj) = Group::quotient(self, &derived).expect("derived subgroup is normal");
        let gens = ab.small_generating_set(&ab.elements().collect::<Vec<_>>());
        let mut out: Vec<SubgroupRef> = Vec::new();
        for p in prime_factors(ab.order() as u64) {
            let p = p as u32;
            for coeffs in nonzero_vectors(gens.len(), p) {
                if let Some(chi) = abelian_hom_to_cp(&ab, &gens, &coeffs, p) {
                    let kernel: Vec<Element> = self
                        .elements()
                        .filter(|&x| chi[proj[x as usize] as usize] == 0)
                        .collect();
                    out.push(SubgroupRef::from_sorted(kernel, self.order()));
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Largest normal `p`-subgroup.
    pub fn o_p(&self, p: u64) -> SubgroupRef {
        let mut acc = self.trivial();
        for n in self.class_normal_closures() {
            if n.len() > 1 && is_prime_power_of(n.len() as u64, p) && !n.is_subset(&acc) {
                acc = self.join(&acc, &n);
            }
        }
        acc
    }

    pub fn fitting_subgroup(&self) -> SubgroupRef {
        let mut acc = self.trivial();
        for p in prime_factors(self.order() as u64) {
            let op = self.o_p(p);
            acc = self.join(&acc, &op);
        }
        acc
    }

    /// Length of the Fitting series of a solvable group.
    pub fn fitting_height(self: &Arc<Self>) -> Result<usize, GroupError> {
        if !self.is_solvable() {
            return Err(GroupError::NotSolvable);
        }
        let mut g = self.clone();
        let mut h = 0;
        while g.order() > 1 {
            let f = g.fitting_subgroup();
            g = Group::quotient(&g, &f)?.0;
            h += 1;
        }
        Ok(h)
    }

    /// Whether `m` is a Frobenius group with kernel `n` (both subgroups of
    /// this group): `1 < n < m`, `n` normal in `m`, and the centralizer in
    /// `m` of every nonidentity element of `n` lies in `n`.
    pub fn is_frobenius_with_kernel(&self, m: &SubgroupRef, n: &SubgroupRef) -> bool {
        if n.len() <= 1 || n.len() >= m.len() || !n.is_subset(m) {
            return false;
        }
        let mgens = self.small_generating_set(m.members());
        let ngens = self.small_generating_set(n.members());
        if !self.normalizes(&ngens, n, &mgens) {
            return false;
        }
        let ok = n.members().iter().filter(|&&x| x != IDENTITY).all(|&x| {
            m.members()
                .iter()
                .all(|&g| n.contains(g) || self.mul(g, x) != self.mul(x, g))
        });
        debug_assert!(!ok || num_integer::gcd(n.len(), m.len() / n.len()) == 1);
        ok
    }

    pub fn is_nilpotent(&self) -> bool {
        self.fitting_subgroup().len() == self.order()
    }
}

/// All nonzero vectors in `F_p^r`, in lexicographic order.
pub(crate) fn nonzero_vectors(r: usize, p: u32) -> impl Iterator<Item = Vec<u32>> {
    let total = (p as u64).pow(r as u32);
    (1..total).map(move |mut idx| {
        let mut v = vec![0u32; r];
        for slot in v.iter_mut().rev() {
            *slot = (idx % p as u64) as u32;
            idx /= p as u64;
        }
        v
    })
}

/// The map `ab -> Z/p` sending `gens[i]` to `coeffs[i]`, if it is well defined.
pub(crate) fn abelian_hom_to_cp(
    ab: &Group,
    gens: &[Element],
    coeffs: &[u32],
    p: u32,
) -> Option<Vec<u32>> {
    let mut f = vec![u32::MAX; ab.order()];
    f[IDENTITY as usize] = 0;
    let mut queue = VecDeque::from([IDENTITY]);
    while let Some(x) = queue.pop_front() {
        for (&g, &c) in gens.iter().zip(coeffs) {
            let y = ab.mul(x, g);
            let v = (f[x as usize] + c) % p;
            if f[y as usize] == u32::MAX {
                f[y as usize] = v;
                queue.push_back(y);
            } else if f[y as usize] != v {
                return None;
            }
        }
    }
    Some(f)
}

#[cfg(test)]
mod tests {
    use super::super::{AutomorphismAction, Generators};
    use super::*;

    fn s4() -> Arc<Group> {
        Group::from_generators(&Generators::Permutations {
            degree: 4,
            gens: vec![vec![1, 2, 3, 0], vec![1, 0, 2, 3]],
        })
        .unwrap()
    }

    #[test]
    fn s4_structure() {
        let g = s4();
        assert_eq!(g.order(), 24);
        let series: Vec<usize> = g.derived_series().iter().map(|s| s.len()).collect();
        assert_eq!(series, vec![24, 12, 4, 1]);
        assert!(g.is_solvable());
        let normals: Vec<usize> = g
            .normal_subgroups()
            .unwrap()
            .subgroups
            .iter()
            .map(|s| s.len())
            .collect();
        assert_eq!(normals, vec![1, 4, 12, 24]);
        assert_eq!(g.fitting_subgroup().len(), 4);
        assert_eq!(g.fitting_height().unwrap(), 3);
        let maxn: Vec<usize> = g
            .maximal_normal_subgroups()
            .unwrap()
            .iter()
            .map(|s| s.len())
            .collect();
        assert_eq!(maxn, vec![12]);
        assert_eq!(g.center().len(), 1);
    }

    #[test]
    fn a5_is_not_solvable() {
        let g = Group::from_generators(&Generators::Permutations {
            degree: 5,
            gens: vec![vec![1, 2, 3, 4, 0], vec![1, 2, 0, 3, 4]],
        })
        .unwrap();
        assert_eq!(g.order(), 60);
        assert!(!g.is_solvable());
        assert_eq!(g.normal_subgroups().unwrap().subgroups.len(), 2);
        assert_eq!(g.maximal_normal_subgroups().unwrap().len(), 1);
        assert!(g.fitting_height().is_err());
    }

    #[test]
    fn frobenius_21() {
        let c7 = Group::cyclic(7);
        let a = AutomorphismAction::from_generator_images(&c7, &[vec![2]]).unwrap();
        let g = Group::semidirect_product(&c7, &Group::cyclic(3), &a).unwrap();
        let n = g.o_p(7);
        assert_eq!(n.len(), 7);
        assert!(g.is_frobenius_with_kernel(&g.whole(), &n));
        assert!(!g.is_frobenius_with_kernel(&g.whole(), &g.trivial()));
        assert_eq!(g.fitting_height().unwrap(), 2);
    }

    #[test]
    fn klein_four_prime_index() {
        let v = Group::direct_product(&Group::cyclic(2), &Group::cyclic(2)).unwrap();
        assert_eq!(v.prime_index_normal_subgroups().len(), 3);
        assert!(v.is_nilpotent());
    }
}
