//! Finite groups with explicit element arithmetic.
//!
//! Elements are dense ids `0..order` with the identity fixed at id 0.
//! Groups up to [`TABLE_LIMIT`] elements carry a full multiplication table;
//! larger groups multiply structurally through their construction
//! (semidirect factors, quotient representatives, concrete matrices).

mod action;
mod classes;
mod lattice;
mod structure;
mod subgroup;

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::GroupError;

pub use action::{conjugation_images, AutomorphismAction};
pub use classes::ConjugacyClasses;
pub use structure::{NormalSubgroups, EXHAUSTIVE_LIMIT};
pub use subgroup::SubgroupRef;

pub type Element = u32;
pub const IDENTITY: Element = 0;

/// Default cap on group orders.
pub const ELEMENT_CAP: usize = 20_000;
/// Groups up to this order get a materialized multiplication table.
pub const TABLE_LIMIT: usize = 4096;

const ASSOCIATIVITY_SAMPLES: usize = 64;

/// How the elements of a group were built.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Realization {
    Cyclic,
    Permutation { degree: usize },
    Matrix { p: u32, dim: usize },
    Semidirect,
    Quotient,
    Subgroup,
}

impl Realization {
    pub fn tag(&self) -> String {
        match self {
            Realization::Cyclic => "cyclic".into(),
            Realization::Permutation { degree } => format!("permutation:{degree}"),
            Realization::Matrix { p, dim } => format!("matrix:{dim}x{dim}/F{p}"),
            Realization::Semidirect => "semidirect".into(),
            Realization::Quotient => "quotient".into(),
            Realization::Subgroup => "subgroup".into(),
        }
    }
}

/// Concrete generators together with their composition rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generators {
    /// Images `0..degree`; products compose left to right (`(ab)(i) = b(a(i))`).
    Permutations { degree: usize, gens: Vec<Vec<u32>> },
    /// Row-major `dim x dim` matrices over the prime field `F_p`.
    Matrices { p: u32, dim: usize, gens: Vec<Vec<u32>> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Rule {
    Perm,
    Matrix { p: u32, dim: usize },
}

impl Rule {
    fn compose(self, a: &[u16], b: &[u16]) -> Vec<u16> {
        match self {
            Rule::Perm => a.iter().map(|&i| b[i as usize]).collect(),
            Rule::Matrix { p, dim } => {
                let mut out = vec![0u16; dim * dim];
                for i in 0..dim {
                    for j in 0..dim {
                        let mut s = 0u32;
                        for k in 0..dim {
                            s += a[i * dim + k] as u32 * b[k * dim + j] as u32;
                        }
                        out[i * dim + j] = (s % p) as u16;
                    }
                }
                out
            }
        }
    }

    fn identity(self, width: usize) -> Vec<u16> {
        match self {
            Rule::Perm => (0..width as u16).collect(),
            Rule::Matrix { dim, .. } => {
                let mut m = vec![0u16; dim * dim];
                for i in 0..dim {
                    m[i * dim + i] = 1;
                }
                m
            }
        }
    }
}

enum MulImpl {
    Table(Vec<u16>),
    Cyclic,
    Concrete {
        rule: Rule,
        index: HashMap<Vec<u16>, u32>,
    },
    Semidirect {
        normal: Arc<Group>,
        acting: Arc<Group>,
        /// `action[h][n]` = image of `n` under the automorphism of `h`
        action: Vec<Vec<u32>>,
    },
    Quotient {
        parent: Arc<Group>,
        reps: Vec<u32>,
        coset_of: Vec<u32>,
    },
    Sub {
        parent: Arc<Group>,
        members: Vec<u32>,
        local: HashMap<u32, u32>,
    },
}

/// A finite group on element ids `0..order`.
pub struct Group {
    order: usize,
    realization: Realization,
    mul: MulImpl,
    inv: Vec<u32>,
    element_orders: Vec<u32>,
    generators: Vec<u32>,
    concrete: Option<Vec<Vec<u16>>>,
    /// `(|N|, |H|)` for semidirect products
    shape: Option<(usize, usize)>,
    /// parent ids for groups realized as subgroups
    sub_members: Option<Vec<u32>>,
    parent: Option<Arc<Group>>,
    classes: OnceLock<ConjugacyClasses>,
    ring: OnceLock<crate::cycint::CycloRing>,
    solvable: OnceLock<bool>,
}

impl std::fmt::Debug for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Group")
            .field("order", &self.order)
            .field("realization", &self.realization)
            .field("generators", &self.generators)
            .finish()
    }
}

impl Group {
    /// Breadth-first closure of concrete generators, capped at [`ELEMENT_CAP`].
    pub fn from_generators(gens: &Generators) -> Result<Arc<Group>, GroupError> {
        Self::from_generators_with_cap(gens, ELEMENT_CAP)
    }

    pub fn from_generators_with_cap(
        gens: &Generators,
        cap: usize,
    ) -> Result<Arc<Group>, GroupError> {
        let (rule, width, raw, realization) = match gens {
            Generators::Permutations { degree, gens } => {
                for g in gens {
                    let mut seen = vec![false; *degree];
                    if g.len() != *degree || g.iter().any(|&i| i as usize >= *degree) {
                        return Err(GroupError::InvalidGenerator(format!("{g:?}")));
                    }
                    for &i in g {
                        if std::mem::replace(&mut seen[i as usize], true) {
                            return Err(GroupError::InvalidGenerator(format!(
                                "{g:?} is not a permutation"
                            )));
                        }
                    }
                }
                (
                    Rule::Perm,
                    *degree,
                    gens.clone(),
                    Realization::Permutation { degree: *degree },
                )
            }
            Generators::Matrices { p, dim, gens } => {
                if *p < 2 || *p > 251 {
                    return Err(GroupError::InvalidGenerator(format!("unsupported field F_{p}")));
                }
                for g in gens {
                    if g.len() != dim * dim {
                        return Err(GroupError::InvalidGenerator(format!("{g:?} has wrong size")));
                    }
                    if det_mod_p(g, *dim, *p) == 0 {
                        return Err(GroupError::InvalidGenerator(format!("{g:?} is singular")));
                    }
                }
                let gens = gens
                    .iter()
                    .map(|g| g.iter().map(|&x| x % p).collect())
                    .collect();
                (
                    Rule::Matrix { p: *p, dim: *dim },
                    *dim,
                    gens,
                    Realization::Matrix { p: *p, dim: *dim },
                )
            }
        };
        let gens16: Vec<Vec<u16>> = raw
            .iter()
            .map(|g| g.iter().map(|&x| x as u16).collect())
            .collect();
        let id = rule.identity(width);
        let mut elems = vec![id.clone()];
        let mut index = HashMap::new();
        index.insert(id, 0u32);
        let mut head = 0;
        while head < elems.len() {
            for g in &gens16 {
                let prod = rule.compose(&elems[head], g);
                if !index.contains_key(&prod) {
                    if elems.len() >= cap {
                        return Err(GroupError::CapExceeded { cap });
                    }
                    index.insert(prod.clone(), elems.len() as u32);
                    elems.push(prod);
                }
            }
            head += 1;
        }
        let generators: Vec<u32> = gens16.iter().map(|g| index[g]).collect();
        let order = elems.len();
        Self::assemble(
            order,
            realization,
            MulImpl::Concrete { rule, index },
            generators,
            Some(elems),
        )
    }

    /// Cyclic group of order `n`; element `k` is the `k`-th power of the generator.
    pub fn cyclic(n: usize) -> Arc<Group> {
        assert!(n >= 1, "cyclic group order must be positive");
        let generators = if n > 1 { vec![1] } else { vec![] };
        Self::assemble(n, Realization::Cyclic, MulImpl::Cyclic, generators, None)
            .expect("cyclic groups are well formed")
    }

    /// Direct product; element `(a, b)` has id `a * |right| + b`.
    pub fn direct_product(left: &Arc<Group>, right: &Arc<Group>) -> Result<Arc<Group>, GroupError> {
        let action = AutomorphismAction::trivial(right, left);
        Self::semidirect_product(left, right, &action)
    }

    /// `normal ⋊ acting`; element `(n, h)` has id `n * |acting| + h` and
    /// `(n1, h1)(n2, h2) = (n1 · h1(n2), h1 h2)`.
    pub fn semidirect_product(
        normal: &Arc<Group>,
        acting: &Arc<Group>,
        action: &AutomorphismAction,
    ) -> Result<Arc<Group>, GroupError> {
        let table = action.extend(acting, normal)?;
        let order = normal.order * acting.order;
        if order > ELEMENT_CAP {
            return Err(GroupError::CapExceeded { cap: ELEMENT_CAP });
        }
        let hn = acting.order as u32;
        let mut generators: Vec<u32> = normal.generators.iter().map(|&n| n * hn).collect();
        generators.extend(acting.generators.iter().copied());
        Self::assemble(
            order,
            Realization::Semidirect,
            MulImpl::Semidirect {
                normal: normal.clone(),
                acting: acting.clone(),
                action: table,
            },
            generators,
            None,
        )
    }

    /// `(E1 x E2) / {(z, iota(z)^-1)}` where `iota` sends `z1` to `z2`. With
    /// `None` the least nonidentity central elements are matched.
    pub fn central_product(
        e1: &Arc<Group>,
        e2: &Arc<Group>,
        center_iso: Option<(Element, Element)>,
    ) -> Result<(Arc<Group>, Vec<u32>), GroupError> {
        let c1 = e1.center();
        let c2 = e2.center();
        if c1.len() != c2.len() {
            return Err(GroupError::CenterMismatch(format!(
                "|Z(E1)| = {} but |Z(E2)| = {}",
                c1.len(),
                c2.len()
            )));
        }
        let (z1, z2) = match center_iso {
            Some(pair) => pair,
            None => (
                c1.members().get(1).copied().unwrap_or(IDENTITY),
                c2.members().get(1).copied().unwrap_or(IDENTITY),
            ),
        };
        if !c1.contains(z1) || !c2.contains(z2) {
            return Err(GroupError::CenterMismatch("identified elements are not central".into()));
        }
        if e1.closure(&[z1]).len() != c1.len() || e2.closure(&[z2]).len() != c2.len() {
            return Err(GroupError::CenterMismatch("center is not cyclic on the given generator".into()));
        }
        if e1.element_order(z1) != e2.element_order(z2) {
            return Err(GroupError::CenterMismatch("generator orders differ".into()));
        }
        let prod = Group::direct_product(e1, e2)?;
        let w = e2.order() as u32;
        let anti: Vec<Element> = (0..e1.element_order(z1) as i64)
            .map(|k| e1.pow(z1, k) * w + e2.pow(z2, -k))
            .collect();
        let anti = SubgroupRef::from_sorted(anti, prod.order());
        Group::quotient(&prod, &anti)
    }

    /// For a semidirect product, the embedded normal factor `{(n, 1)}`.
    pub fn semidirect_normal_part(&self) -> Option<SubgroupRef> {
        let (nn, hn) = self.shape?;
        Some(SubgroupRef::from_sorted(
            (0..nn as u32).map(|n| n * hn as u32).collect(),
            self.order,
        ))
    }

    /// For a semidirect product, the embedded complement `{(1, h)}`.
    pub fn semidirect_complement(&self) -> Option<SubgroupRef> {
        let (_, hn) = self.shape?;
        Some(SubgroupRef::from_sorted((0..hn as u32).collect(), self.order))
    }

    /// Id of `(n, h)` in a semidirect product.
    pub fn semidirect_pair(&self, n: Element, h: Element) -> Option<Element> {
        let (_, hn) = self.shape?;
        Some(n * hn as u32 + h)
    }

    /// Coset group `G/N` and the projection `G → G/N`. Cosets are numbered by
    /// their least member, which is also the coset representative.
    pub fn quotient(
        parent: &Arc<Group>,
        normal: &SubgroupRef,
    ) -> Result<(Arc<Group>, Vec<u32>), GroupError> {
        if !parent.is_normal(normal) {
            return Err(GroupError::NotNormal);
        }
        let n = parent.order;
        let mut coset_of = vec![u32::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n as u32 {
            if coset_of[x as usize] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            reps.push(x);
            for &m in normal.members() {
                coset_of[parent.mul(x, m) as usize] = c;
            }
        }
        let mut generators: Vec<u32> = parent
            .generators
            .iter()
            .map(|&g| coset_of[g as usize])
            .filter(|&c| c != IDENTITY)
            .collect();
        generators.sort_unstable();
        generators.dedup();
        let q = Self::assemble(
            reps.len(),
            Realization::Quotient,
            MulImpl::Quotient {
                parent: parent.clone(),
                reps,
                coset_of: coset_of.clone(),
            },
            generators,
            None,
        )?;
        Ok((q, coset_of))
    }

    /// A subgroup as a group in its own right; local id `i` is the `i`-th
    /// member in increasing parent id.
    pub fn subgroup_group(parent: &Arc<Group>, sub: &SubgroupRef) -> Arc<Group> {
        let members = sub.members().to_vec();
        let local: HashMap<u32, u32> = members
            .iter()
            .enumerate()
            .map(|(i, &m)| (m, i as u32))
            .collect();
        let parent_gens = parent.small_generating_set(sub.members());
        let mut generators: Vec<u32> = parent_gens.iter().map(|g| local[g]).collect();
        generators.sort_unstable();
        let concrete = parent
            .concrete
            .as_ref()
            .map(|c| members.iter().map(|&m| c[m as usize].clone()).collect());
        Self::assemble(
            members.len(),
            Realization::Subgroup,
            MulImpl::Sub {
                parent: parent.clone(),
                members,
                local,
            },
            generators,
            concrete,
        )
        .expect("subgroups of valid groups are valid")
    }

    fn assemble(
        order: usize,
        realization: Realization,
        mul: MulImpl,
        generators: Vec<u32>,
        concrete: Option<Vec<Vec<u16>>>,
    ) -> Result<Arc<Group>, GroupError> {
        let mut g = Group {
            order,
            realization,
            mul: MulImpl::Cyclic,
            inv: Vec::new(),
            element_orders: Vec::new(),
            generators,
            concrete,
            shape: match &mul {
                MulImpl::Semidirect { normal, acting, .. } => Some((normal.order, acting.order)),
                _ => None,
            },
            sub_members: match &mul {
                MulImpl::Sub { members, .. } => Some(members.clone()),
                _ => None,
            },
            parent: match &mul {
                MulImpl::Sub { parent, .. } => Some(parent.clone()),
                _ => None,
            },
            classes: OnceLock::new(),
            ring: OnceLock::new(),
            solvable: OnceLock::new(),
        };
        g.mul = mul;
        if order <= TABLE_LIMIT && !matches!(g.mul, MulImpl::Table(_) | MulImpl::Cyclic) {
            let mut table = vec![0u16; order * order];
            for a in 0..order {
                for b in 0..order {
                    table[a * order + b] = g.mul(a as u32, b as u32) as u16;
                }
            }
            g.mul = MulImpl::Table(table);
        }
        let mut inv = vec![0u32; order];
        let mut orders = vec![0u32; order];
        for x in 0..order as u32 {
            let mut k = 1;
            let mut y = x;
            let mut prev = IDENTITY;
            while y != IDENTITY {
                prev = y;
                y = g.mul(y, x);
                k += 1;
                if k as usize > order + 1 {
                    return Err(GroupError::Invalid(format!("element {x} has no finite order")));
                }
            }
            orders[x as usize] = k;
            inv[x as usize] = prev;
        }
        g.inv = inv;
        g.element_orders = orders;
        g.check_associativity()?;
        Ok(Arc::new(g))
    }

    fn check_associativity(&self) -> Result<(), GroupError> {
        if self.order <= 1 {
            return Ok(());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x005e_ed0f_9a0c);
        for _ in 0..ASSOCIATIVITY_SAMPLES {
            let a = rng.gen_range(0..self.order as u32);
            let b = rng.gen_range(0..self.order as u32);
            let c = rng.gen_range(0..self.order as u32);
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return Err(GroupError::NotAssociative(a, b, c));
            }
        }
        Ok(())
    }

    #[inline]
    pub fn mul(&self, a: Element, b: Element) -> Element {
        match &self.mul {
            MulImpl::Table(t) => t[a as usize * self.order + b as usize] as u32,
            MulImpl::Cyclic => ((a as usize + b as usize) % self.order) as u32,
            MulImpl::Concrete { rule, index } => {
                let c = self.concrete.as_ref().expect("concrete elements");
                index[&rule.compose(&c[a as usize], &c[b as usize])]
            }
            MulImpl::Semidirect {
                normal,
                acting,
                action,
            } => {
                let hn = acting.order as u32;
                let (n1, h1) = (a / hn, a % hn);
                let (n2, h2) = (b / hn, b % hn);
                let n = normal.mul(n1, action[h1 as usize][n2 as usize]);
                n * hn + acting.mul(h1, h2)
            }
            MulImpl::Quotient {
                parent,
                reps,
                coset_of,
            } => coset_of[parent.mul(reps[a as usize], reps[b as usize]) as usize],
            MulImpl::Sub {
                parent,
                members,
                local,
            } => local[&parent.mul(members[a as usize], members[b as usize])],
        }
    }

    #[inline]
    pub fn inv(&self, a: Element) -> Element {
        self.inv[a as usize]
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn element_order(&self, g: Element) -> u32 {
        self.element_orders[g as usize]
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn realization(&self) -> &Realization {
        &self.realization
    }

    /// Concrete permutation or matrix entries of an element, when the group
    /// (or the group it is a subgroup of) was built from concrete generators.
    pub fn concrete_element(&self, g: Element) -> Option<&[u16]> {
        self.concrete.as_ref().map(|c| c[g as usize].as_slice())
    }

    /// Parent ids of the members, for groups realized as subgroups.
    pub fn parent_members(&self) -> Option<&[u32]> {
        self.sub_members.as_deref()
    }

    /// The group this one was realized inside, for subgroup groups.
    pub fn parent(&self) -> Option<&Arc<Group>> {
        self.parent.as_ref()
    }

    /// `Z[x]/(x^e - 1)` for the exponent `e` of the group.
    pub fn cyclo_ring(&self) -> &crate::cycint::CycloRing {
        self.ring
            .get_or_init(|| crate::cycint::CycloRing::new(self.exponent()))
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> {
        0..self.order as u32
    }

    pub fn pow(&self, g: Element, k: i64) -> Element {
        let o = self.element_order(g) as i64;
        let mut e = k.rem_euclid(o);
        let mut base = g;
        let mut acc = IDENTITY;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `x^-1 g x`
    #[inline]
    pub fn conjugate(&self, g: Element, x: Element) -> Element {
        self.mul(self.mul(self.inv(x), g), x)
    }

    pub fn commutator(&self, a: Element, b: Element) -> Element {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> u32 {
        self.element_orders
            .iter()
            .fold(1u32, |acc, &o| num_integer::lcm(acc, o))
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().all(|&a| {
            self.generators
                .iter()
                .all(|&b| self.mul(a, b) == self.mul(b, a))
        })
    }

    /// Sorted members of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[Element]) -> SubgroupRef {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut members = vec![IDENTITY];
        let gens: Vec<u32> = gens.iter().copied().filter(|&g| g != IDENTITY).collect();
        let mut head = 0;
        while head < members.len() {
            let x = members[head];
            for &g in &gens {
                let y = self.mul(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    members.push(y);
                }
            }
            head += 1;
        }
        SubgroupRef::from_mask(seen)
    }

    /// Greedy generating set of the subgroup with the given members,
    /// preferring elements of large order.
    pub fn small_generating_set(&self, members: &[Element]) -> Vec<Element> {
        let mut cand: Vec<u32> = members.to_vec();
        cand.sort_by_key(|&g| (std::cmp::Reverse(self.element_order(g)), g));
        let mut gens = Vec::new();
        let mut current = self.closure(&[]);
        for g in cand {
            if current.len() == members.len() {
                break;
            }
            if !current.contains(g) {
                gens.push(g);
                current = self.closure(&gens);
            }
        }
        gens
    }

    pub fn whole(&self) -> SubgroupRef {
        SubgroupRef::from_sorted((0..self.order as u32).collect(), self.order)
    }

    pub fn trivial(&self) -> SubgroupRef {
        SubgroupRef::from_sorted(vec![IDENTITY], self.order)
    }

    pub fn is_solvable(&self) -> bool {
        *self.solvable.get_or_init(|| {
            let series = self.derived_series();
            series.last().map(|s| s.len() == 1).unwrap_or(true)
        })
    }

    /// Digest input describing the Cayley graph on the stored generators.
    pub fn cayley_digest_input(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.order * (1 + self.generators.len()) * 4 + 64);
        out.extend_from_slice(self.realization.tag().as_bytes());
        out.extend_from_slice(&(self.order as u64).to_le_bytes());
        for &g in &self.generators {
            out.extend_from_slice(&g.to_le_bytes());
        }
        for x in self.elements() {
            out.extend_from_slice(&self.element_order(x).to_le_bytes());
            for &g in &self.generators {
                out.extend_from_slice(&self.mul(x, g).to_le_bytes());
            }
        }
        out
    }
}

/// Determinant of a square matrix over `F_p`.
pub fn det_mod_p(m: &[u32], dim: usize, p: u32) -> u32 {
    let p64 = p as u64;
    let mut a: Vec<u64> = m.iter().map(|&x| (x % p) as u64).collect();
    let mut det = 1u64;
    for col in 0..dim {
        let pivot = (col..dim).find(|&r| a[r * dim + col] != 0);
        let Some(r) = pivot else { return 0 };
        if r != col {
            for j in 0..dim {
                a.swap(r * dim + j, col * dim + j);
            }
            det = (p64 - det) % p64;
        }
        let pv = a[col * dim + col];
        det = det * pv % p64;
        let pinv = crate::modp::inverse(pv, p64);
        for row in col + 1..dim {
            let f = a[row * dim + col] * pinv % p64;
            if f == 0 {
                continue;
            }
            for j in col..dim {
                a[row * dim + j] = (a[row * dim + j] + p64 * p64 - f * a[col * dim + j]) % p64;
            }
        }
    }
    det as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perms(degree: usize, gens: Vec<Vec<u32>>) -> Arc<Group> {
        Group::from_generators(&Generators::Permutations { degree, gens }).unwrap()
    }

    #[test]
    fn identity_permutation_gives_trivial_group() {
        let g = perms(3, vec![vec![0, 1, 2]]);
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn gl2_3_has_order_48() {
        let g = Group::from_generators(&Generators::Matrices {
            p: 3,
            dim: 2,
            gens: vec![vec![1, 1, 0, 1], vec![0, 1, 1, 0]],
        })
        .unwrap();
        assert_eq!(g.order(), 48);
    }

    #[test]
    fn affine_maps_on_seven_points() {
        // x -> x+1 and x -> 2x
        let g = perms(
            7,
            vec![vec![1, 2, 3, 4, 5, 6, 0], vec![0, 2, 4, 6, 1, 3, 5]],
        );
        assert_eq!(g.order(), 21);
        assert!(!g.is_abelian());
    }

    #[test]
    fn cap_is_enforced() {
        let s5 = Generators::Permutations {
            degree: 5,
            gens: vec![vec![1, 2, 3, 4, 0], vec![1, 0, 2, 3, 4]],
        };
        assert_eq!(
            Group::from_generators_with_cap(&s5, 100).unwrap_err(),
            GroupError::CapExceeded { cap: 100 }
        );
    }

    #[test]
    fn cyclic_element_orders() {
        let c6 = Group::cyclic(6);
        let mut orders: Vec<u32> = c6.elements().map(|g| c6.element_order(g)).collect();
        orders.sort_unstable();
        orders.dedup();
        assert_eq!(orders, vec![1, 2, 3, 6]);
        assert_eq!(Group::cyclic(1).order(), 1);
    }

    #[test]
    fn singular_matrix_rejected() {
        let r = Group::from_generators(&Generators::Matrices {
            p: 3,
            dim: 2,
            gens: vec![vec![1, 1, 1, 1]],
        });
        assert!(matches!(r, Err(GroupError::InvalidGenerator(_))));
    }

    #[test]
    fn central_products_of_extraspecials() {
        let heis = |p: u32| {
            Group::from_generators(&Generators::Matrices {
                p,
                dim: 3,
                gens: vec![vec![1, 1, 0, 0, 1, 0, 0, 0, 1], vec![1, 0, 0, 0, 1, 1, 0, 0, 1]],
            })
            .unwrap()
        };
        let e3 = heis(3);
        assert_eq!(e3.order(), 27);
        let (d, _) = Group::central_product(&e3, &e3, None).unwrap();
        assert_eq!(d.order(), 243);
        let e5 = heis(5);
        let (d5, _) = Group::central_product(&e5, &e5, None).unwrap();
        assert_eq!(d5.order(), 3125);
        assert_eq!(d5.classes().len(), 629);
        assert!(matches!(
            Group::central_product(&e3, &e5, None),
            Err(GroupError::CenterMismatch(_))
        ));
    }

    #[test]
    fn semidirect_embeddings() {
        let c7 = Group::cyclic(7);
        let a = AutomorphismAction::from_generator_images(&c7, &[vec![2]]).unwrap();
        let g = Group::semidirect_product(&c7, &Group::cyclic(3), &a).unwrap();
        let n = g.semidirect_normal_part().unwrap();
        assert_eq!(n.len(), 7);
        assert!(g.is_normal(&n));
        assert_eq!(g.semidirect_complement().unwrap().len(), 3);
        assert_eq!(g.classes().len(), 5);
        let triv = Group::direct_product(&c7, &Group::cyclic(3)).unwrap();
        assert_eq!(triv.classes().len(), 21);
    }

    #[test]
    fn quotients() {
        let g = Group::from_generators(&Generators::Matrices {
            p: 3,
            dim: 2,
            gens: vec![vec![1, 1, 0, 1], vec![0, 1, 1, 0]],
        })
        .unwrap();
        let (q, proj) = Group::quotient(&g, &g.whole()).unwrap();
        assert_eq!(q.order(), 1);
        assert!(proj.iter().all(|&c| c == 0));
        let (same, _) = Group::quotient(&g, &g.trivial()).unwrap();
        assert_eq!(same.classes().sizes(), g.classes().sizes());
        let s = g.derived_subgroup();
        let qq = g.derived_subgroup_of(&g.small_generating_set(s.members()));
        assert_eq!((s.len(), qq.len()), (24, 8));
        let (g6, proj) = Group::quotient(&g, &qq).unwrap();
        assert_eq!((g6.order(), g6.classes().len()), (6, 3));
        for a in g.elements() {
            for b in [3u32, 17, 40] {
                assert_eq!(proj[g.mul(a, b) as usize], g6.mul(proj[a as usize], proj[b as usize]));
            }
        }
    }

    #[test]
    fn determinant() {
        assert_eq!(det_mod_p(&[0, 1, 1, 0], 2, 3), 2);
        assert_eq!(det_mod_p(&[1, 2, 3, 4, 5, 6, 7, 8, 10], 3, 7), 4); // -3 mod 7
    }
}
