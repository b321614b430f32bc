//! Subgroups of a fixed top group realized as groups in their own right,
//! with lazily computed tables and maximal subgroups.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use pichar_cyclotomic::Cyclotomic;

use crate::charops::ClassFunction;
use crate::cycint::Sparse;
use crate::chartable::{character_table, linear_characters, CharacterTable};
use crate::error::{CharacterError, GroupError};
use crate::group::{Element, Group, SubgroupRef};

/// A subgroup of the top group, with ids of the top group in `members`.
#[derive(Debug)]
pub struct SubNode {
    members: SubgroupRef,
    group: Arc<Group>,
    is_top: bool,
    table: OnceLock<Result<Arc<CharacterTable>, CharacterError>>,
    maximal: OnceLock<Result<Vec<SubgroupRef>, GroupError>>,
    linear: OnceLock<Arc<Vec<ClassFunction>>>,
    sparse_linear: OnceLock<Arc<Vec<Vec<Sparse>>>>,
    sparse_rows: OnceLock<Arc<Vec<Vec<Sparse>>>>,
}

impl SubNode {
    fn make(members: SubgroupRef, group: Arc<Group>, is_top: bool) -> Self {
        SubNode {
            members,
            group,
            is_top,
            table: OnceLock::new(),
            maximal: OnceLock::new(),
            linear: OnceLock::new(),
            sparse_linear: OnceLock::new(),
            sparse_rows: OnceLock::new(),
        }
    }

    fn to_sparse(&self, rows: &[ClassFunction]) -> Vec<Vec<Sparse>> {
        let ring = self.group.cyclo_ring();
        rows.iter()
            .map(|r| {
                r.values()
                    .iter()
                    .map(|v| ring.sparse(v).expect("character values are integral"))
                    .collect()
            })
            .collect()
    }

    /// Indices of the irreducible characters of the given degree occurring
    /// in the class function with values `values`.
    pub fn constituents_of_degree(
        &self,
        values: &[Cyclotomic],
        degree: u64,
    ) -> Result<Vec<usize>, CharacterError> {
        self.constituents_filtered(values, Some(degree))
    }

    /// Indices of all irreducible constituents of a class function.
    pub fn constituents(&self, values: &[Cyclotomic]) -> Result<Vec<usize>, CharacterError> {
        self.constituents_filtered(values, None)
    }

    fn constituents_filtered(
        &self,
        values: &[Cyclotomic],
        degree: Option<u64>,
    ) -> Result<Vec<usize>, CharacterError> {
        let ring = self.group.cyclo_ring();
        let cl = self.group.classes();
        let linear_only = degree == Some(1);
        let rows = if linear_only {
            let lin = self.linears();
            self.sparse_linear
                .get_or_init(|| Arc::new(self.to_sparse(&lin)))
                .clone()
        } else {
            let t = self.table()?;
            self.sparse_rows
                .get_or_init(|| Arc::new(self.to_sparse(t.rows())))
                .clone()
        };
        let table = if linear_only { None } else { Some(self.table()?) };
        let wanted = |j: usize| match (&table, degree) {
            (Some(t), Some(d)) => t.row(j).degree_u64() == Some(d),
            _ => true,
        };
        let sv: Option<Vec<Sparse>> = values.iter().map(|v| ring.sparse(v)).collect();
        let mut out = Vec::new();
        match sv {
            Some(sv) => {
                let mut acc = ring.zeros();
                for (j, row) in rows.iter().enumerate() {
                    if !wanted(j) {
                        continue;
                    }
                    acc.iter_mut().for_each(|x| *x = 0);
                    for c in 0..cl.len() {
                        ring.mul_conj_acc(&mut acc, &sv[c], &row[c], cl.size(c) as i64);
                    }
                    if !ring.equals_integer(&acc, 0) {
                        out.push(j);
                    }
                }
            }
            None => {
                let f = ClassFunction::new(&self.group, values.to_vec());
                for j in 0..rows.len() {
                    if !wanted(j) {
                        continue;
                    }
                    if !f.inner_product_cyclotomic(&self.row(j)?)?.is_zero() {
                        out.push(j);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn members(&self) -> &SubgroupRef {
        &self.members
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn to_top(&self, local: Element) -> Element {
        if self.is_top {
            local
        } else {
            self.members.members()[local as usize]
        }
    }

    pub fn from_top(&self, x: Element) -> Option<Element> {
        if self.is_top {
            Some(x)
        } else {
            self.members.members().binary_search(&x).ok().map(|i| i as Element)
        }
    }

    /// Local ids of a subgroup given in top ids.
    pub fn localize(&self, sub: &SubgroupRef) -> SubgroupRef {
        let local = sub
            .members()
            .iter()
            .map(|&x| self.from_top(x).expect("subgroup of node"))
            .collect();
        SubgroupRef::from_sorted(local, self.order())
    }

    /// Top ids of a subgroup given in local ids.
    pub fn globalize(&self, sub: &SubgroupRef, top_order: usize) -> SubgroupRef {
        let top = sub.members().iter().map(|&x| self.to_top(x)).collect();
        SubgroupRef::from_sorted(top, top_order)
    }

    pub fn table(&self) -> Result<Arc<CharacterTable>, CharacterError> {
        self.table
            .get_or_init(|| character_table(&self.group).map(Arc::new))
            .clone()
    }

    /// Linear characters; these are the leading rows of the table, in the
    /// same order, so their indices are table indices.
    pub fn linears(&self) -> Arc<Vec<ClassFunction>> {
        self.linear
            .get_or_init(|| match self.table.get() {
                Some(Ok(t)) => Arc::new(t.rows()[..t.linear_indices().len()].to_vec()),
                _ => Arc::new(linear_characters(&self.group)),
            })
            .clone()
    }

    /// Row `i` of the table, without computing the table for linear rows.
    pub fn row(&self, i: usize) -> Result<ClassFunction, CharacterError> {
        let lin = self.linears();
        if i < lin.len() {
            Ok(lin[i].clone())
        } else {
            Ok(self.table()?.row(i).clone())
        }
    }

    pub fn index(&self, child: &SubNode) -> usize {
        self.order() / child.order()
    }

    /// Class of each class representative of `child` in this node.
    pub fn fusion(&self, child: &SubNode) -> Vec<usize> {
        let cl = self.group.classes();
        let ccl = child.group.classes();
        (0..ccl.len())
            .map(|c| {
                let x = child.to_top(ccl.rep(c));
                cl.class_of(self.from_top(x).expect("child is a subgroup"))
            })
            .collect()
    }

    /// Restriction of class-function values of this node to `child`.
    pub fn restrict_values(&self, values: &[Cyclotomic], child: &SubNode) -> Vec<Cyclotomic> {
        self.fusion(child).into_iter().map(|c| values[c].clone()).collect()
    }

    pub fn restrict(&self, chi: &ClassFunction, child: &SubNode) -> ClassFunction {
        ClassFunction::new(child.group(), self.restrict_values(chi.values(), child))
    }

    /// Induction of class-function values from `child` to this node.
    pub fn induce_values(&self, values: &[Cyclotomic], child: &SubNode) -> Vec<Cyclotomic> {
        let cl = self.group.classes();
        let ccl = child.group.classes();
        let fusion = self.fusion(child);
        let mut sums = vec![Cyclotomic::zero(); cl.len()];
        for (c, v) in values.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            sums[fusion[c]] += &v.scale_int(ccl.size(c) as i64);
        }
        sums.into_iter()
            .enumerate()
            .map(|(gc, s)| {
                if s.is_zero() {
                    s
                } else {
                    s.scale(&BigRational::new(
                        BigInt::from(cl.centralizer_order(gc)),
                        BigInt::from(child.order()),
                    ))
                }
            })
            .collect()
    }

    pub fn induce(&self, theta: &ClassFunction, child: &SubNode) -> ClassFunction {
        ClassFunction::new(&self.group, self.induce_values(theta.values(), child))
    }
}

/// Cache of [`SubNode`]s of one top group, keyed by member set.
#[derive(Debug)]
pub struct Workbench {
    top: Arc<Group>,
    nodes: Mutex<HashMap<SubgroupRef, Arc<SubNode>>>,
}

impl Workbench {
    pub fn new(top: &Arc<Group>) -> Arc<Self> {
        let wb = Workbench {
            top: top.clone(),
            nodes: Mutex::new(HashMap::new()),
        };
        let whole = top.whole();
        wb.nodes.lock().expect("lock").insert(
            whole.clone(),
            Arc::new(SubNode::make(whole, top.clone(), true)),
        );
        Arc::new(wb)
    }

    /// Seed the top node with an already computed table.
    pub fn with_table(top: &Arc<Group>, table: Arc<CharacterTable>) -> Arc<Self> {
        let wb = Self::new(top);
        let _ = wb.root().table.set(Ok(table));
        wb
    }

    pub fn top(&self) -> &Arc<Group> {
        &self.top
    }

    pub fn root(&self) -> Arc<SubNode> {
        self.node(&self.top.whole())
    }

    pub fn node(&self, members: &SubgroupRef) -> Arc<SubNode> {
        if let Some(n) = self.nodes.lock().expect("lock").get(members) {
            return n.clone();
        }
        let group = Group::subgroup_group(&self.top, members);
        let node = Arc::new(SubNode::make(members.clone(), group, false));
        self.nodes
            .lock()
            .expect("lock")
            .entry(members.clone())
            .or_insert(node)
            .clone()
    }

    /// Representatives (top ids) of the conjugacy classes of maximal
    /// subgroups of `node` under conjugation by `node`.
    pub fn maximal(&self, node: &SubNode) -> Result<Vec<SubgroupRef>, GroupError> {
        node.maximal
            .get_or_init(|| {
                let local = node.group.maximal_subgroups()?;
                Ok(local
                    .iter()
                    .map(|m| node.globalize(m, self.top.order()))
                    .collect())
            })
            .clone()
    }

    /// Representatives (top ids) of the conjugacy classes of subgroups of
    /// `node` under conjugation by `node`.
    pub fn all_subgroups(&self, node: &SubNode) -> Result<Vec<SubgroupRef>, GroupError> {
        Ok(node
            .group
            .subgroups_up_to_conjugacy()?
            .iter()
            .map(|m| node.globalize(m, self.top.order()))
            .collect())
    }

    /// Canonical `node`-conjugate of a subgroup `sub` (top ids) together with
    /// a local element `x` of `node` with `sub^x` canonical.
    pub fn canonical_in(&self, node: &SubNode, sub: &SubgroupRef) -> (SubgroupRef, Element) {
        let g = &node.group;
        let local = node.localize(sub);
        let mut best: Option<(SubgroupRef, Element)> = None;
        for x in g.conjugating_transversal(&local) {
            let c = g.conjugate_subgroup(&local, x);
            if best.as_ref().map(|(b, _)| c.members() < b.members()).unwrap_or(true) {
                best = Some((c, x));
            }
        }
        let (c, x) = best.expect("nonempty transversal");
        (node.globalize(&c, self.top.order()), x)
    }

    /// Transport a class function on `from` to `to = from^x`, where `x` is a
    /// local element of `ambient`.
    pub fn transport(
        &self,
        ambient: &SubNode,
        x: Element,
        from: &SubNode,
        to: &SubNode,
        values: &[Cyclotomic],
    ) -> Vec<Cyclotomic> {
        let g = &ambient.group;
        let xi = g.inv(x);
        let fcl = from.group.classes();
        let tcl = to.group.classes();
        (0..tcl.len())
            .map(|c| {
                let y = ambient.from_top(to.to_top(tcl.rep(c))).expect("inside ambient");
                // y = x^-1 z x with z in `from`
                let z = g.conjugate(y, xi);
                let z = from.from_top(ambient.to_top(z)).expect("conjugate lies in from");
                values[fcl.class_of(z)].clone()
            })
            .collect()
    }
}
