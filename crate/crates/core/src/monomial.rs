//! Monomial, primitive and super-monomial characters by descent through
//! maximal subgroups, with exhaustive oracles at small orders.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;


use crate::charops::ClassFunction;
use crate::error::{CharacterError, GroupError};
use crate::group::{SubgroupRef, EXHAUSTIVE_LIMIT};
use crate::workbench::Workbench;

/// An irreducible character of a subgroup, by table index; the subgroup is
/// given in ids of the top group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InducerNode {
    pub subgroup: SubgroupRef,
    pub character: usize,
    pub degree: u64,
    pub primitive: bool,
}

type Key = (SubgroupRef, usize);

/// Memoized searches over one top group.
pub struct MonomialSearch {
    wb: Arc<Workbench>,
    children: HashMap<Key, Arc<Vec<Key>>>,
    monomial: HashMap<Key, Option<Key>>,
    primitives: HashMap<Key, Arc<BTreeSet<Key>>>,
}

/// Per-character outcome of an M-group or super M-group test.
#[derive(Clone, Debug)]
pub struct GroupVerdict {
    pub holds: bool,
    /// Table indices of the characters that fail.
    pub failures: Vec<usize>,
    /// For each character, an inducing linear character when monomial.
    pub witnesses: Vec<Option<InducerNode>>,
}

impl MonomialSearch {
    pub fn new(wb: &Arc<Workbench>) -> Self {
        MonomialSearch {
            wb: wb.clone(),
            children: HashMap::new(),
            monomial: HashMap::new(),
            primitives: HashMap::new(),
        }
    }

    pub fn workbench(&self) -> &Arc<Workbench> {
        &self.wb
    }

    fn node_info(&self, key: &Key) -> Result<InducerNode, CharacterError> {
        let node = self.wb.node(&key.0);
        Ok(InducerNode {
            subgroup: key.0.clone(),
            character: key.1,
            degree: node.row(key.1)?.degree_u64().unwrap_or(0),
            primitive: false,
        })
    }

    /// Pairs `(L, θ)` with `L` maximal in `H` (up to `H`-conjugacy) and
    /// `θ^H = χ`.
    pub fn inducing_children(&mut self, key: &Key) -> Result<Arc<Vec<Key>>, CharacterError> {
        if let Some(c) = self.children.get(key) {
            return Ok(c.clone());
        }
        let node = self.wb.node(&key.0);
        let chi = &node.row(key.1)?;
        let d = chi.degree_u64().unwrap_or(0);
        let mut out = Vec::new();
        if d > 1 {
            for m in self.wb.maximal(&node)? {
                let child = self.wb.node(&m);
                let idx = node.index(&child) as u64;
                if d % idx != 0 {
                    continue;
                }
                let res = node.restrict_values(chi.values(), &child);
                for j in child.constituents_of_degree(&res, d / idx)? {
                    out.push((m.clone(), j));
                }
            }
        }
        let out = Arc::new(out);
        self.children.insert(key.clone(), out.clone());
        Ok(out)
    }

    /// A linear character inducing `χ`, found by descent.
    pub fn monomial_witness_at(&mut self, key: &Key) -> Result<Option<InducerNode>, CharacterError> {
        match self.monomial_key(key)? {
            Some(k) => {
                let mut n = self.node_info(&k)?;
                n.primitive = true;
                let top = self.wb.node(&key.0);
                let sub = self.wb.node(&k.0);
                let lam = sub.row(k.1)?;
                assert_eq!(
                    top.induce(&lam, &sub).values(),
                    top.row(key.1)?.values(),
                    "monomial witness does not induce the character"
                );
                Ok(Some(n))
            }
            None => Ok(None),
        }
    }

    fn monomial_key(&mut self, key: &Key) -> Result<Option<Key>, CharacterError> {
        if let Some(r) = self.monomial.get(key) {
            return Ok(r.clone());
        }
        let node = self.wb.node(&key.0);
        let deg = node.row(key.1)?.degree_u64().unwrap_or(0);
        let result = if deg == 1 {
            Some(key.clone())
        } else {
            let mut found = None;
            for child in self.inducing_children(key)?.iter() {
                if let Some(w) = self.monomial_key(child)? {
                    found = Some(w);
                    break;
                }
            }
            found
        };
        self.monomial.insert(key.clone(), result.clone());
        Ok(result)
    }

    pub fn is_monomial_at(&mut self, key: &Key) -> Result<bool, CharacterError> {
        Ok(self.monomial_key(key)?.is_some())
    }

    pub fn is_primitive_at(&mut self, key: &Key) -> Result<bool, CharacterError> {
        Ok(self.inducing_children(key)?.is_empty())
    }

    fn primitive_keys(&mut self, key: &Key) -> Result<Arc<BTreeSet<Key>>, CharacterError> {
        if let Some(r) = self.primitives.get(key) {
            return Ok(r.clone());
        }
        let children = self.inducing_children(key)?;
        let mut out = BTreeSet::new();
        if children.is_empty() {
            out.insert(key.clone());
        }
        for c in children.iter() {
            out.extend(self.primitive_keys(c)?.iter().cloned());
        }
        let out = Arc::new(out);
        self.primitives.insert(key.clone(), out.clone());
        Ok(out)
    }

    /// Every primitive `(K, θ)` with `θ^H = χ`, one per `H`-conjugacy class.
    pub fn primitive_inducers_at(&mut self, key: &Key) -> Result<Vec<InducerNode>, CharacterError> {
        let keys = self.primitive_keys(key)?;
        let ambient = self.wb.node(&key.0);
        let mut seen = BTreeSet::new();
        for k in keys.iter() {
            let (canon, x) = self.wb.canonical_in(&ambient, &k.0);
            let from = self.wb.node(&k.0);
            let to = self.wb.node(&canon);
            let theta = from.row(k.1)?;
            let moved = ClassFunction::new(
                to.group(),
                self.wb.transport(&ambient, x, &from, &to, theta.values()),
            );
            let idx = if theta.is_linear() {
                to.linears().iter().position(|l| *l == moved)
            } else {
                to.table()?.index_of(&moved)
            }
            .expect("conjugate of an irreducible character is irreducible");
            seen.insert((canon, idx));
        }
        seen.into_iter()
            .map(|k| {
                let mut n = self.node_info(&k)?;
                n.primitive = true;
                Ok(n)
            })
            .collect()
    }

    pub fn is_super_monomial_at(&mut self, key: &Key) -> Result<bool, CharacterError> {
        let keys = self.primitive_keys(key)?;
        for k in keys.iter() {
            if self.wb.node(&k.0).row(k.1)?.degree_u64() != Some(1) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Second evaluation: every `θ` on any subgroup with `θ^H = χ` is
    /// monomial. Requires `|H|` within the exhaustive tier.
    pub fn super_monomial_exhaustive_at(&mut self, key: &Key) -> Result<bool, CharacterError> {
        let node = self.wb.node(&key.0);
        if node.order() > EXHAUSTIVE_LIMIT {
            return Err(GroupError::TierExceeded {
                what: "exhaustive super-monomial test",
                limit: EXHAUSTIVE_LIMIT,
                order: node.order(),
            }
            .into());
        }
        let t = node.table()?;
        let chi = t.row(key.1).clone();
        let d = chi.degree_u64().unwrap_or(0);
        for s in self.wb.all_subgroups(&node)? {
            let child = self.wb.node(&s);
            let idx = node.index(&child) as u64;
            if d % idx != 0 {
                continue;
            }
            let ct = child.table()?;
            for (j, theta) in ct.rows().iter().enumerate() {
                if theta.degree_u64() != Some(d / idx) {
                    continue;
                }
                if node.induce(theta, &child) == chi && !self.is_monomial_at(&(s.clone(), j))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Exhaustive monomiality: search every subgroup class and every linear
    /// character, comparing induced values exactly.
    pub fn brute_force_monomial_at(&mut self, key: &Key) -> Result<bool, CharacterError> {
        let node = self.wb.node(&key.0);
        let t = node.table()?;
        let chi = t.row(key.1);
        for s in self.wb.all_subgroups(&node)? {
            let child = self.wb.node(&s);
            if node.index(&child) as u64 != chi.degree_u64().unwrap_or(0) {
                continue;
            }
            for lam in crate::chartable::linear_characters(child.group()) {
                if node.induce(&lam, &child) == *chi {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    fn whole(&self) -> SubgroupRef {
        self.wb.top().whole()
    }

    pub fn monomial_witness(&mut self, chi: usize) -> Result<Option<InducerNode>, CharacterError> {
        self.monomial_witness_at(&(self.whole(), chi))
    }

    pub fn is_monomial(&mut self, chi: usize) -> Result<bool, CharacterError> {
        self.is_monomial_at(&(self.whole(), chi))
    }

    pub fn is_primitive(&mut self, chi: usize) -> Result<bool, CharacterError> {
        self.is_primitive_at(&(self.whole(), chi))
    }

    pub fn primitive_inducers(&mut self, chi: usize) -> Result<Vec<InducerNode>, CharacterError> {
        self.primitive_inducers_at(&(self.whole(), chi))
    }

    pub fn is_super_monomial(&mut self, chi: usize) -> Result<bool, CharacterError> {
        self.is_super_monomial_at(&(self.whole(), chi))
    }

    /// M-group test of the subgroup `h` (top ids).
    pub fn m_group_verdict(&mut self, h: &SubgroupRef) -> Result<GroupVerdict, CharacterError> {
        let n = self.wb.node(h).table()?.len();
        let mut failures = Vec::new();
        let mut witnesses = Vec::with_capacity(n);
        for i in 0..n {
            let w = self.monomial_witness_at(&(h.clone(), i))?;
            if w.is_none() {
                failures.push(i);
            }
            witnesses.push(w);
        }
        Ok(GroupVerdict {
            holds: failures.is_empty(),
            failures,
            witnesses,
        })
    }

    /// Super M-group test of the subgroup `h` (top ids) by descent.
    pub fn super_m_group_verdict(&mut self, h: &SubgroupRef) -> Result<GroupVerdict, CharacterError> {
        let mut v = self.m_group_verdict(h)?;
        let n = v.witnesses.len();
        let mut failures = Vec::new();
        for i in 0..n {
            if !self.is_super_monomial_at(&(h.clone(), i))? {
                failures.push(i);
            }
        }
        v.holds = failures.is_empty();
        v.failures = failures;
        Ok(v)
    }

    pub fn is_m_group(&mut self) -> Result<bool, CharacterError> {
        Ok(self.m_group_verdict(&self.whole())?.holds)
    }

    pub fn is_super_m_group(&mut self) -> Result<bool, CharacterError> {
        Ok(self.super_m_group_verdict(&self.whole())?.holds)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{AutomorphismAction, Generators, Group};

    fn c7c3() -> Arc<Group> {
        let c7 = Group::cyclic(7);
        let a = AutomorphismAction::from_generator_images(&c7, &[vec![2]]).unwrap();
        Group::semidirect_product(&c7, &Group::cyclic(3), &a).unwrap()
    }

    fn sl23() -> Arc<Group> {
        Group::from_generators(&Generators::Matrices {
            p: 3,
            dim: 2,
            gens: vec![vec![1, 1, 0, 1], vec![1, 0, 1, 1]],
        })
        .unwrap()
    }

    #[test]
    fn frobenius_21() {
        let g = c7c3();
        let wb = Workbench::new(&g);
        let mut s = MonomialSearch::new(&wb);
        let t = wb.root().table().unwrap();
        for i in 0..t.len() {
            assert!(s.is_monomial(i).unwrap());
            assert!(s.is_super_monomial(i).unwrap());
            assert!(s.super_monomial_exhaustive_at(&(g.whole(), i)).unwrap());
            if t.row(i).degree_u64() == Some(3) {
                let w = s.monomial_witness(i).unwrap().unwrap();
                assert_eq!(w.subgroup.len(), 7);
                assert!(!s.is_primitive(i).unwrap());
                let prims = s.primitive_inducers(i).unwrap();
                assert!(prims.iter().all(|p| p.degree == 1));
            }
        }
        assert!(s.is_super_m_group().unwrap());
    }

    #[test]
    fn sl23_is_not_an_m_group() {
        let g = sl23();
        assert_eq!(g.order(), 24);
        let wb = Workbench::new(&g);
        let mut s = MonomialSearch::new(&wb);
        let v = s.m_group_verdict(&g.whole()).unwrap();
        assert!(!v.holds);
        let t = wb.root().table().unwrap();
        for &i in &v.failures {
            assert_eq!(t.row(i).degree_u64(), Some(2));
            assert!(s.is_primitive(i).unwrap());
            assert!(!s.brute_force_monomial_at(&(g.whole(), i)).unwrap());
        }
        assert_eq!(v.failures.len(), 3);
    }
}
