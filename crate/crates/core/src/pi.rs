//! π-partial characters: π-classes, the basis `I_π(G)`, decompositions and
//! lifts, partial induction and the partial monomiality predicates,
//! π-special characters and π-factorizations.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use pichar_cyclotomic::{values_in_subcyclotomic, Cyclotomic};

use crate::charops::{linear_order, ClassFunction};
use crate::chartable::CharacterTable;
use crate::error::{CharacterError, PiError};
use crate::group::{Group, SubgroupRef};
use crate::modp::{self, ModMap};
use crate::numbers::{is_prime, prime_factors};
use crate::workbench::{SubNode, Workbench};

/// A finite set of primes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeSet {
    primes: BTreeSet<u64>,
}

impl PrimeSet {
    pub fn new<I: IntoIterator<Item = u64>>(primes: I) -> Result<Self, PiError> {
        let primes: BTreeSet<u64> = primes.into_iter().collect();
        if let Some(&p) = primes.iter().find(|&&p| !is_prime(p)) {
            return Err(PiError::InvalidPrimeSet(format!("{p} is not prime")));
        }
        Ok(PrimeSet { primes })
    }

    pub fn singleton(p: u64) -> Self {
        Self::new([p]).expect("prime")
    }

    pub fn primes(&self) -> Vec<u64> {
        self.primes.iter().copied().collect()
    }

    pub fn contains(&self, p: u64) -> bool {
        self.primes.contains(&p)
    }

    pub fn is_pi_number(&self, n: u64) -> bool {
        prime_factors(n).iter().all(|p| self.primes.contains(p))
    }

    pub fn pi_part(&self, mut n: u64) -> u64 {
        let mut part = 1;
        for p in prime_factors(n) {
            while n.is_multiple_of(p) {
                n /= p;
                if self.primes.contains(&p) {
                    part *= p;
                }
            }
        }
        part
    }

    pub fn pi_prime_part(&self, n: u64) -> u64 {
        n / self.pi_part(n)
    }

    /// The primes dividing `n` outside the set.
    pub fn complement_for(&self, n: u64) -> PrimeSet {
        PrimeSet {
            primes: prime_factors(n)
                .into_iter()
                .filter(|p| !self.primes.contains(p))
                .collect(),
        }
    }

    /// Whether every prime divisor of `n` is in the set.
    pub fn covers(&self, n: u64) -> bool {
        self.is_pi_number(n)
    }

    /// Whether the set meets the prime divisors of `n`.
    pub fn meets(&self, n: u64) -> bool {
        prime_factors(n).iter().any(|p| self.primes.contains(p))
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self.primes.iter().map(u64::to_string).collect();
        write!(f, "{{{}}}", ps.join(","))
    }
}

impl FromStr for PrimeSet {
    type Err = PiError;

    fn from_str(s: &str) -> Result<Self, PiError> {
        let s = s.trim().trim_start_matches('{').trim_end_matches('}');
        let ps = s
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|_| PiError::InvalidPrimeSet(format!("cannot parse {t:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        PrimeSet::new(ps)
    }
}

/// Classes whose representatives have π-number order, identity first.
pub fn pi_classes(g: &Group, pi: &PrimeSet) -> Vec<usize> {
    let cl = g.classes();
    (0..cl.len())
        .filter(|&c| pi.is_pi_number(cl.rep_order(c) as u64))
        .collect()
}

/// Values on the π-classes of a group.
#[derive(Clone)]
pub struct PartialCharacter {
    group: Arc<Group>,
    pi: PrimeSet,
    classes: Arc<Vec<usize>>,
    values: Vec<Cyclotomic>,
}

impl fmt::Debug for PartialCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.values).finish()
    }
}

impl PartialEq for PartialCharacter {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.pi == other.pi && self.values == other.values
    }
}

impl Eq for PartialCharacter {}

impl PartialCharacter {
    pub fn new(group: &Arc<Group>, pi: &PrimeSet, classes: Arc<Vec<usize>>, values: Vec<Cyclotomic>) -> Self {
        assert_eq!(classes.len(), values.len());
        PartialCharacter {
            group: group.clone(),
            pi: pi.clone(),
            classes,
            values,
        }
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn pi(&self) -> &PrimeSet {
        &self.pi
    }

    /// Class indices (in the group's class ordering) of the values.
    pub fn classes(&self) -> &[usize] {
        &self.classes
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn degree(&self) -> &Cyclotomic {
        &self.values[0]
    }

    pub fn degree_u64(&self) -> Option<u64> {
        self.values[0].to_i64().and_then(|d| u64::try_from(d).ok())
    }

    pub fn is_linear(&self) -> bool {
        self.values[0].is_one()
    }

    /// Pointwise product.
    pub fn product(&self, other: &PartialCharacter) -> PartialCharacter {
        assert!(Arc::ptr_eq(&self.group, &other.group) && self.pi == other.pi);
        PartialCharacter {
            values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect(),
            ..self.clone()
        }
    }

    /// Zero-extension to a class function of the whole group.
    pub fn extend_by_zero(&self) -> Vec<Cyclotomic> {
        let mut full = vec![Cyclotomic::zero(); self.group.classes().len()];
        for (&c, v) in self.classes.iter().zip(&self.values) {
            full[c] = v.clone();
        }
        full
    }
}

/// `χ^π`, the restriction of a class function to the π-elements.
pub fn restrict_pi(chi: &ClassFunction, pi: &PrimeSet) -> PartialCharacter {
    let classes = Arc::new(pi_classes(chi.group(), pi));
    let values = classes.iter().map(|&c| chi.value(c).clone()).collect();
    PartialCharacter::new(chi.group(), pi, classes, values)
}

/// The irreducible π-partial characters of a group, ordered by degree then
/// values, each with the least table index of a lift.
#[derive(Clone, Debug)]
pub struct PartialBasis {
    group: Arc<Group>,
    pi: PrimeSet,
    classes: Arc<Vec<usize>>,
    members: Vec<PartialCharacter>,
    lifts: Vec<usize>,
    /// multiplicities of each `χ^π`, `χ` in table order
    decompositions: Vec<Vec<u64>>,
    modmap: ModMap,
    inverse: Vec<Vec<u64>>,
}

impl PartialBasis {
    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn pi(&self) -> &PrimeSet {
        &self.pi
    }

    pub fn classes(&self) -> &Arc<Vec<usize>> {
        &self.classes
    }

    pub fn members(&self) -> &[PartialCharacter] {
        &self.members
    }

    pub fn member(&self, i: usize) -> &PartialCharacter {
        &self.members[i]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Table index of the recorded lift of each member.
    pub fn lifts(&self) -> &[usize] {
        &self.lifts
    }

    /// Multiplicities over the basis of `χ^π` for table row `i`.
    pub fn decomposition_of_row(&self, i: usize) -> &[u64] {
        &self.decompositions[i]
    }

    pub fn index_of(&self, phi: &PartialCharacter) -> Option<usize> {
        self.members.iter().position(|m| m == phi)
    }

    /// Number of linear members; they come first.
    pub fn linear_count(&self) -> usize {
        self.members.iter().take_while(|m| m.is_linear()).count()
    }

    fn solve_mod(&self, values: &[u64]) -> Vec<u64> {
        let l = self.modmap.l;
        let n = self.members.len();
        (0..n)
            .map(|j| {
                let mut acc = 0;
                for (i, &v) in values.iter().enumerate() {
                    if v != 0 {
                        acc = (acc + modp::mul(v, self.inverse[i][j], l)) % l;
                    }
                }
                acc
            })
            .collect()
    }

    fn combination_equals(&self, coeffs: &[BigRational], values: &[Cyclotomic]) -> bool {
        let mut acc = vec![Cyclotomic::zero(); values.len()];
        for (c, m) in coeffs.iter().zip(&self.members) {
            if c.is_zero() {
                continue;
            }
            for (a, v) in acc.iter_mut().zip(m.values()) {
                *a += &v.scale(c);
            }
        }
        acc == values
    }

    /// The unique coefficients of a function on the π-classes over the basis.
    pub fn decompose(&self, values: &[Cyclotomic]) -> Result<Vec<BigRational>, PiError> {
        if values.len() != self.members.len() {
            return Err(PiError::Character(CharacterError::Invalid(
                "value vector does not match the pi-classes".into(),
            )));
        }
        if let Some(vm) = self.modmap.eval_all(values) {
            let sol = self.solve_mod(&vm);
            let coeffs: Option<Vec<BigRational>> = sol.iter().map(|&x| self.modmap.reconstruct(x)).collect();
            if let Some(coeffs) = coeffs {
                if self.combination_equals(&coeffs, values) {
                    return Ok(coeffs);
                }
            }
        }
        let coeffs = solve_exact(&self.members, values).ok_or(PiError::NotInSpan)?;
        coeffs
            .into_iter()
            .map(|c| c.to_rational().ok_or(PiError::NotInSpan))
            .collect()
    }

    /// Multiplicities of a genuine partial character; they must be
    /// nonnegative integers.
    pub fn decompose_partial(&self, alpha: &PartialCharacter) -> Result<Vec<u64>, PiError> {
        let coeffs = self.decompose(alpha.values())?;
        coeffs
            .iter()
            .map(|c| {
                if c.is_integer() && !c.is_negative() {
                    Ok(c.to_integer().to_u64().unwrap_or(0))
                } else {
                    Err(PiError::BadDecomposition(format!("coefficient {c}")))
                }
            })
            .collect()
    }
}

/// Gaussian elimination over cyclotomics for `Σ c_i m_i = values`.
fn solve_exact(members: &[PartialCharacter], values: &[Cyclotomic]) -> Option<Vec<Cyclotomic>> {
    let n = members.len();
    // rows = classes, columns = members, augmented by the values
    let mut a: Vec<Vec<Cyclotomic>> = (0..values.len())
        .map(|r| {
            let mut row: Vec<Cyclotomic> = members.iter().map(|m| m.values()[r].clone()).collect();
            row.push(values[r].clone());
            row
        })
        .collect();
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for c in 0..n {
        let Some(p) = (pivot_row..a.len()).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(pivot_row, p);
        let inv = a[pivot_row][c].inverse().ok()?;
        for x in a[pivot_row].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..a.len() {
            if r != pivot_row && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for k in c..=n {
                    let v = &a[pivot_row][k] * &f;
                    a[r][k] = &a[r][k] - &v;
                }
            }
        }
        pivots.push(c);
        pivot_row += 1;
    }
    if a[pivot_row..].iter().any(|row| !row[n].is_zero()) || pivots.len() < n {
        return None;
    }
    Some((0..n).map(|i| a[i][n].clone()).collect())
}

fn check_separable(g: &Group, pi: &PrimeSet) -> Result<(), PiError> {
    let n = g.order() as u64;
    if pi.meets(n) && !pi.covers(n) && !g.is_solvable() {
        return Err(PiError::NotSeparable);
    }
    Ok(())
}

/// Distinct restrictions `χ^π` in (degree, values) order, each with its least
/// lift index.
fn candidates(table: &CharacterTable, pi: &PrimeSet) -> Vec<(PartialCharacter, usize)> {
    let mut seen: HashMap<Vec<Cyclotomic>, usize> = HashMap::new();
    let mut out: Vec<(PartialCharacter, usize)> = Vec::new();
    for (i, chi) in table.rows().iter().enumerate() {
        let r = restrict_pi(chi, pi);
        if seen.contains_key(r.values()) {
            continue;
        }
        seen.insert(r.values().to_vec(), i);
        out.push((r, i));
    }
    out.sort_by(|a, b| {
        a.0.degree_u64()
            .cmp(&b.0.degree_u64())
            .then_with(|| a.0.values().cmp(b.0.values()))
    });
    out
}

/// `I_π(G)`: candidates are accepted in degree order when they are not in
/// the span of those already accepted; every rejection is confirmed by an
/// exact nonnegative integer combination.
pub fn ipi_basis(table: &CharacterTable, pi: &PrimeSet) -> Result<PartialBasis, PiError> {
    let g = table.group();
    check_separable(g, pi)?;
    let classes = Arc::new(pi_classes(g, pi));
    let cands = candidates(table, pi);
    let e = g.exponent().max(1) as u64;
    'primes: for attempt in 0..8 {
        let mm = ModMap::nth(e, attempt);
        let l = mm.l;
        let mut accepted: Vec<usize> = Vec::new();
        // echelon rows: (pivot, row mod l, expression over accepted)
        let mut echelon: Vec<(usize, Vec<u64>, Vec<u64>)> = Vec::new();
        for (ci, (cand, _)) in cands.iter().enumerate() {
            let Some(mut v) = mm.eval_all(cand.values()) else {
                continue 'primes;
            };
            let k = accepted.len();
            let mut expr = vec![0u64; k + 1];
            for (p, row, ex) in &echelon {
                let f = v[*p];
                if f == 0 {
                    continue;
                }
                for (x, &y) in v.iter_mut().zip(row) {
                    *x = (*x + l - modp::mul(f, y, l)) % l;
                }
                for (x, &y) in expr.iter_mut().zip(ex) {
                    *x = (*x + modp::mul(f, y, l)) % l;
                }
            }
            match v.iter().position(|&x| x != 0) {
                None => {
                    // cand ≡ Σ expr_j accepted_j; confirm exactly
                    let deg = cand.degree_u64().unwrap_or(0);
                    let coeffs: Vec<BigRational> = expr[..k]
                        .iter()
                        .map(|&x| BigRational::from_integer(BigInt::from(x)))
                        .collect();
                    if expr[..k].iter().any(|&x| x > deg) {
                        continue 'primes;
                    }
                    let mut acc = vec![Cyclotomic::zero(); classes.len()];
                    for (c, &j) in coeffs.iter().zip(&accepted) {
                        if c.is_zero() {
                            continue;
                        }
                        for (a, val) in acc.iter_mut().zip(cands[j].0.values()) {
                            *a += &val.scale(c);
                        }
                    }
                    if acc != cand.values() {
                        continue 'primes;
                    }
                }
                Some(p) => {
                    let inv = modp::inverse(v[p], l);
                    let row: Vec<u64> = v.iter().map(|&x| modp::mul(x, inv, l)).collect();
                    // new row = (cand - Σ expr_j acc_j) / v[p]
                    let mut ex: Vec<u64> = expr[..k].iter().map(|&x| modp::mul((l - x) % l, inv, l)).collect();
                    ex.push(inv);
                    for (_, r2, ex2) in echelon.iter_mut() {
                        let f = r2[p];
                        if f != 0 {
                            for (x, &y) in r2.iter_mut().zip(&row) {
                                *x = (*x + l - modp::mul(f, y, l)) % l;
                            }
                            ex2.push(0);
                            for (x, &y) in ex2.iter_mut().zip(&ex) {
                                *x = (*x + l - modp::mul(f, y, l)) % l;
                            }
                        } else {
                            ex2.push(0);
                        }
                    }
                    echelon.push((p, row, ex));
                    accepted.push(ci);
                }
            }
        }
        if accepted.len() != classes.len() {
            return Err(PiError::BasisSize {
                found: accepted.len(),
                expected: classes.len(),
            });
        }
        let members: Vec<PartialCharacter> = accepted.iter().map(|&i| cands[i].0.clone()).collect();
        let lifts: Vec<usize> = accepted.iter().map(|&i| cands[i].1).collect();
        let n = members.len();
        let mut aug: Vec<Vec<u64>> = members
            .iter()
            .enumerate()
            .map(|(i, m)| {
                let mut row = mm.eval_all(m.values()).expect("evaluated before");
                row.extend((0..n).map(|j| u64::from(i == j)));
                row
            })
            .collect();
        modp::rref(&mut aug, l);
        // aug = [I | B^-1] with B rows = members; solve c B = v via c = v B^-1
        let inverse: Vec<Vec<u64>> = aug.iter().map(|r| r[n..].to_vec()).collect();
        let mut basis = PartialBasis {
            group: g.clone(),
            pi: pi.clone(),
            classes: classes.clone(),
            members,
            lifts,
            decompositions: Vec::new(),
            modmap: mm,
            inverse,
        };
        let mut decs = Vec::with_capacity(table.len());
        for chi in table.rows() {
            decs.push(basis.decompose_partial(&restrict_pi(chi, pi))?);
        }
        basis.decompositions = decs;
        return Ok(basis);
    }
    Err(PiError::Character(CharacterError::Certification(
        "no suitable prime for the partial basis".into(),
    )))
}

/// Oracle: a restriction is irreducible iff no nonnegative integer
/// combination of the other distinct restrictions equals it. Returns the
/// value vectors in (degree, values) order.
pub fn ipi_basis_exhaustive(table: &CharacterTable, pi: &PrimeSet) -> Result<Vec<Vec<Cyclotomic>>, PiError> {
    check_separable(table.group(), pi)?;
    let cands = candidates(table, pi);
    let vals: Vec<&[Cyclotomic]> = cands.iter().map(|(c, _)| c.values()).collect();
    let degs: Vec<u64> = cands.iter().map(|(c, _)| c.degree_u64().unwrap_or(0)).collect();
    let mut out = Vec::new();
    for (i, target) in vals.iter().enumerate() {
        let others: Vec<usize> = (0..vals.len()).filter(|&j| j != i && degs[j] < degs[i]).collect();
        let mut acc = vec![Cyclotomic::zero(); target.len()];
        if !combination_search(&others, 0, degs[i], &vals, &degs, &mut acc, target) {
            out.push(target.to_vec());
        }
    }
    Ok(out)
}

fn combination_search(
    others: &[usize],
    start: usize,
    remaining: u64,
    vals: &[&[Cyclotomic]],
    degs: &[u64],
    acc: &mut Vec<Cyclotomic>,
    target: &[Cyclotomic],
) -> bool {
    if remaining == 0 {
        return acc.as_slice() == target;
    }
    for pos in start..others.len() {
        let j = others[pos];
        if degs[j] > remaining {
            continue;
        }
        for (a, v) in acc.iter_mut().zip(vals[j]) {
            *a += v;
        }
        let hit = combination_search(others, pos, remaining - degs[j], vals, degs, acc, target);
        for (a, v) in acc.iter_mut().zip(vals[j]) {
            *a -= v;
        }
        if hit {
            return true;
        }
    }
    false
}

/// Whether `χ^π` is irreducible.
pub fn is_pi_lift(basis: &PartialBasis, chi: &ClassFunction) -> bool {
    basis.index_of(&restrict_pi(chi, basis.pi())).is_some()
}

/// Lifts of a basis member whose values lie in `Q(ζ_n)` with `n = |G|_π`.
pub fn bpi_value_filter(table: &CharacterTable, basis: &PartialBasis, member: usize) -> Vec<usize> {
    let n = basis.pi().pi_part(table.group().order() as u64) as u32;
    let phi = basis.member(member);
    (0..table.len())
        .filter(|&i| {
            let chi = table.row(i);
            restrict_pi(chi, basis.pi()) == *phi && values_in_subcyclotomic(chi.values(), n)
        })
        .collect()
}

pub fn is_real_char(chi: &ClassFunction) -> bool {
    chi.is_real()
}

type Key = (SubgroupRef, usize);

/// Members of given degree of `I_π(L)` grouped by their induced values.
type InducedIndex = HashMap<Vec<Cyclotomic>, Vec<usize>>;

/// Partial induction and the partial monomiality predicates for one prime
/// set, by descent through maximal subgroups of a top group.
pub struct PartialSearch {
    wb: Arc<Workbench>,
    pi: PrimeSet,
    bases: HashMap<SubgroupRef, Arc<PartialBasis>>,
    linear: HashMap<SubgroupRef, Arc<Vec<PartialCharacter>>>,
    children: HashMap<Key, Arc<Vec<Key>>>,
    induced: HashMap<(SubgroupRef, SubgroupRef, u64), Arc<InducedIndex>>,
    monomial: HashMap<Key, Option<Key>>,
    primitives: HashMap<Key, Arc<BTreeSet<Key>>>,
}

impl PartialSearch {
    pub fn new(wb: &Arc<Workbench>, pi: &PrimeSet) -> Self {
        PartialSearch {
            wb: wb.clone(),
            pi: pi.clone(),
            bases: HashMap::new(),
            linear: HashMap::new(),
            children: HashMap::new(),
            induced: HashMap::new(),
            monomial: HashMap::new(),
            primitives: HashMap::new(),
        }
    }

    pub fn pi(&self) -> &PrimeSet {
        &self.pi
    }

    pub fn workbench(&self) -> &Arc<Workbench> {
        &self.wb
    }

    pub fn basis(&mut self, h: &SubgroupRef) -> Result<Arc<PartialBasis>, PiError> {
        if let Some(b) = self.bases.get(h) {
            return Ok(b.clone());
        }
        let node = self.wb.node(h);
        let b = Arc::new(ipi_basis(&*node.table()?, &self.pi)?);
        self.bases.insert(h.clone(), b.clone());
        Ok(b)
    }

    pub fn top_basis(&mut self) -> Result<Arc<PartialBasis>, PiError> {
        let whole = self.wb.top().whole();
        self.basis(&whole)
    }

    /// Linear members of `I_π(H)` without computing the table of `H`; they
    /// are the leading basis members in the same order.
    pub fn linear_members(&mut self, h: &SubgroupRef) -> Arc<Vec<PartialCharacter>> {
        if let Some(b) = self.bases.get(h) {
            return Arc::new(b.members()[..b.linear_count()].to_vec());
        }
        if let Some(l) = self.linear.get(h) {
            return l.clone();
        }
        let node = self.wb.node(h);
        let mut v: Vec<PartialCharacter> = node.linears().iter().map(|l| restrict_pi(l, &self.pi)).collect();
        v.sort_by(|a, b| a.values().cmp(b.values()));
        v.dedup();
        let v = Arc::new(v);
        self.linear.insert(h.clone(), v.clone());
        v
    }

    /// Member `i` of `I_π(H)`.
    pub fn member(&mut self, key: &Key) -> Result<PartialCharacter, PiError> {
        let lin = self.linear_members(&key.0);
        if key.1 < lin.len() {
            return Ok(lin[key.1].clone());
        }
        Ok(self.basis(&key.0)?.member(key.1).clone())
    }

    /// Values of `η^H` on the π-classes of `H`, for `η` on the child.
    pub fn induce_values(&self, parent: &SubNode, child: &SubNode, eta: &PartialCharacter) -> Vec<Cyclotomic> {
        let full = parent.induce_values(&eta.extend_by_zero(), child);
        pi_classes(parent.group(), &self.pi)
            .into_iter()
            .map(|c| full[c].clone())
            .collect()
    }

    /// `η^G` for `η` a partial character on the subgroup `h`, with its
    /// decomposition over `I_π(G)`.
    pub fn induce_partial(
        &mut self,
        h: &SubgroupRef,
        eta: &PartialCharacter,
    ) -> Result<(PartialCharacter, Vec<u64>), PiError> {
        let root = self.wb.root();
        let child = self.wb.node(h);
        let values = self.induce_values(&root, &child, eta);
        let basis = self.top_basis()?;
        let induced = PartialCharacter::new(root.group(), &self.pi, basis.classes().clone(), values);
        let dec = basis.decompose_partial(&induced)?;
        Ok((induced, dec))
    }

    /// Pairs `(L, η)` with `L` maximal in `H` and `η ∈ I_π(L)` inducing `φ`.
    pub fn inducing_children(&mut self, key: &Key) -> Result<Arc<Vec<Key>>, PiError> {
        if let Some(c) = self.children.get(key) {
            return Ok(c.clone());
        }
        let phi = self.member(key)?;
        let d = phi.degree_u64().unwrap_or(0);
        let node = self.wb.node(&key.0);
        let mut out = Vec::new();
        if d > 1 {
            for m in self.wb.maximal(&node).map_err(PiError::Group)? {
                let child = self.wb.node(&m);
                let idx = node.index(&child) as u64;
                if d % idx != 0 {
                    continue;
                }
                let want = d / idx;
                let index = self.induced_index(&node, &child, want)?;
                if let Some(js) = index.get(phi.values()) {
                    out.extend(js.iter().map(|&j| (m.clone(), j)));
                }
            }
        }
        let out = Arc::new(out);
        self.children.insert(key.clone(), out.clone());
        Ok(out)
    }

    fn induced_index(&mut self, parent: &Arc<SubNode>, child: &Arc<SubNode>, want: u64) -> Result<Arc<InducedIndex>, PiError> {
        let key = (parent.members().clone(), child.members().clone(), want);
        if let Some(ix) = self.induced.get(&key) {
            return Ok(ix.clone());
        }
        let cands: Vec<(usize, PartialCharacter)> = if want == 1 {
            self.linear_members(child.members()).iter().cloned().enumerate().collect()
        } else {
            let b = self.basis(child.members())?;
            b.members()
                .iter()
                .enumerate()
                .filter(|(_, e)| e.degree_u64() == Some(want))
                .map(|(j, e)| (j, e.clone()))
                .collect()
        };
        let mut ix = InducedIndex::new();
        for (j, eta) in cands {
            ix.entry(self.induce_values(parent, child, &eta)).or_default().push(j);
        }
        let ix = Arc::new(ix);
        self.induced.insert(key, ix.clone());
        Ok(ix)
    }

    fn monomial_key(&mut self, key: &Key) -> Result<Option<Key>, PiError> {
        if let Some(r) = self.monomial.get(key) {
            return Ok(r.clone());
        }
        let result = if self.member(key)?.is_linear() {
            Some(key.clone())
        } else {
            let mut found = None;
            for c in self.inducing_children(key)?.iter() {
                if let Some(w) = self.monomial_key(c)? {
                    found = Some(w);
                    break;
                }
            }
            found
        };
        self.monomial.insert(key.clone(), result.clone());
        Ok(result)
    }

    /// A linear partial character (subgroup, member index) inducing `φ`.
    pub fn monomial_witness_at(&mut self, key: &Key) -> Result<Option<Key>, PiError> {
        let w = self.monomial_key(key)?;
        if let Some(k) = &w {
            let eta = self.member(k)?;
            let parent = self.wb.node(&key.0);
            let child = self.wb.node(&k.0);
            assert_eq!(
                self.induce_values(&parent, &child, &eta),
                self.member(key)?.values(),
                "partial monomial witness does not induce"
            );
        }
        Ok(w)
    }

    pub fn is_monomial_partial_at(&mut self, key: &Key) -> Result<bool, PiError> {
        Ok(self.monomial_key(key)?.is_some())
    }

    pub fn is_primitive_partial_at(&mut self, key: &Key) -> Result<bool, PiError> {
        Ok(self.inducing_children(key)?.is_empty())
    }

    fn primitive_keys(&mut self, key: &Key) -> Result<Arc<BTreeSet<Key>>, PiError> {
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

    /// Primitive partial characters inducing `φ` reached by descent.
    pub fn primitive_inducers_at(&mut self, key: &Key) -> Result<Vec<Key>, PiError> {
        Ok(self.primitive_keys(key)?.iter().cloned().collect())
    }

    /// Every primitive partial character inducing `φ` is linear.
    pub fn is_super_monomial_partial_at(&mut self, key: &Key) -> Result<bool, PiError> {
        let keys = self.primitive_keys(key)?;
        for k in keys.iter() {
            if !self.member(k)?.is_linear() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn top_key(&self, i: usize) -> Key {
        (self.wb.top().whole(), i)
    }

    pub fn is_monomial_partial(&mut self, i: usize) -> Result<bool, PiError> {
        self.is_monomial_partial_at(&self.top_key(i))
    }

    pub fn is_primitive_partial(&mut self, i: usize) -> Result<bool, PiError> {
        self.is_primitive_partial_at(&self.top_key(i))
    }

    pub fn is_super_monomial_partial(&mut self, i: usize) -> Result<bool, PiError> {
        self.is_super_monomial_partial_at(&self.top_key(i))
    }
}

type SpecialKey = (PrimeSet, SubgroupRef, usize);

/// π-special characters, by recursion over maximal normal subgroups.
pub struct SpecialSearch {
    wb: Arc<Workbench>,
    memo: HashMap<SpecialKey, bool>,
    det_orders: HashMap<Key, u64>,
    normals: HashMap<SubgroupRef, Arc<Vec<SubgroupRef>>>,
}

impl SpecialSearch {
    pub fn new(wb: &Arc<Workbench>) -> Self {
        SpecialSearch {
            wb: wb.clone(),
            memo: HashMap::new(),
            det_orders: HashMap::new(),
            normals: HashMap::new(),
        }
    }

    fn maximal_normals(&mut self, h: &SubgroupRef) -> Result<Arc<Vec<SubgroupRef>>, PiError> {
        if let Some(v) = self.normals.get(h) {
            return Ok(v.clone());
        }
        let node = self.wb.node(h);
        let top = self.wb.top().order();
        let v: Vec<SubgroupRef> = node
            .group()
            .maximal_normal_subgroups()?
            .iter()
            .map(|n| node.globalize(n, top))
            .collect();
        let v = Arc::new(v);
        self.normals.insert(h.clone(), v.clone());
        Ok(v)
    }

    fn det_order(&mut self, h: &SubgroupRef, i: usize, chi: &ClassFunction) -> Result<u64, PiError> {
        if let Some(&o) = self.det_orders.get(&(h.clone(), i)) {
            return Ok(o);
        }
        let o = if chi.is_linear() {
            linear_order(chi)
        } else {
            chi.determinantal_order()?
        };
        self.det_orders.insert((h.clone(), i), o);
        Ok(o)
    }

    /// Whether row `i` of the table of the subgroup `h` is π-special.
    pub fn is_pi_special_at(&mut self, pi: &PrimeSet, h: &SubgroupRef, i: usize) -> Result<bool, PiError> {
        let key = (pi.clone(), h.clone(), i);
        if let Some(&r) = self.memo.get(&key) {
            return Ok(r);
        }
        let node = self.wb.node(h);
        let chi = node.row(i)?;
        let d = chi.degree_u64().unwrap_or(0);
        let mut ok = pi.is_pi_number(d) && pi.is_pi_number(self.det_order(h, i, &chi)?);
        if ok {
            'normals: for n in self.maximal_normals(h)?.iter() {
                let child = self.wb.node(n);
                let res = node.restrict_values(chi.values(), &child);
                for j in child.constituents(&res)? {
                    if !self.is_pi_special_at(pi, n, j)? {
                        ok = false;
                        break 'normals;
                    }
                }
            }
        }
        self.memo.insert(key, ok);
        Ok(ok)
    }

    pub fn is_pi_special(&mut self, pi: &PrimeSet, i: usize) -> Result<bool, PiError> {
        let whole = self.wb.top().whole();
        self.is_pi_special_at(pi, &whole, i)
    }

    /// Table indices of the π-special characters of the top group.
    pub fn special_indices(&mut self, pi: &PrimeSet) -> Result<Vec<usize>, PiError> {
        let n = self.wb.root().table()?.len();
        let mut out = Vec::new();
        for i in 0..n {
            if self.is_pi_special(pi, i)? {
                out.push(i);
            }
        }
        Ok(out)
    }

    /// `χ = αβ` with `α` π-special and `β` π′-special (π′ relative to `|G|`),
    /// as table indices.
    pub fn pi_factorization(&mut self, pi: &PrimeSet, i: usize) -> Result<Option<(usize, usize)>, PiError> {
        let t = self.wb.root().table()?;
        let order = self.wb.top().order() as u64;
        let co = pi.complement_for(order);
        let chi = t.row(i);
        let d = chi.degree_u64().unwrap_or(0);
        let alphas = self.special_indices(pi)?;
        let betas = self.special_indices(&co)?;
        for &a in &alphas {
            let da = t.row(a).degree_u64().unwrap_or(0);
            for &b in &betas {
                if da * t.row(b).degree_u64().unwrap_or(0) != d {
                    continue;
                }
                if t.row(a).product(t.row(b))? == *chi {
                    return Ok(Some((a, b)));
                }
            }
        }
        Ok(None)
    }
}

/// Coefficient vector as integers, when integral.
pub fn integral(coeffs: &[BigRational]) -> Option<Vec<i64>> {
    coeffs
        .iter()
        .map(|c| if c.is_integer() { c.to_integer().to_i64() } else { None })
        .collect()
}
