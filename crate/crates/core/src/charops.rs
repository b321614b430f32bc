//! Class functions and the operations composed throughout: restriction,
//! induction, inner products, products, inflation, determinants, inertia
//! groups and extensions.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use pichar_cyclotomic::Cyclotomic;

use crate::chartable::CharacterTable;
use crate::error::CharacterError;
use crate::modp::{self, ModMap};
use crate::group::{Element, Group, SubgroupRef};

/// Values indexed by the conjugacy classes of a group.
#[derive(Clone)]
pub struct ClassFunction {
    group: Arc<Group>,
    values: Vec<Cyclotomic>,
}

/// Irreducible or otherwise known characters share the class-function type.
pub type Character = ClassFunction;

impl std::fmt::Debug for ClassFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(&self.values).finish()
    }
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.values == other.values
    }
}

impl Eq for ClassFunction {}

impl ClassFunction {
    pub fn new(group: &Arc<Group>, values: Vec<Cyclotomic>) -> Self {
        assert_eq!(values.len(), group.classes().len(), "one value per class");
        ClassFunction {
            group: group.clone(),
            values,
        }
    }

    pub fn principal(group: &Arc<Group>) -> Self {
        Self::constant(group, Cyclotomic::one())
    }

    pub fn constant(group: &Arc<Group>, v: Cyclotomic) -> Self {
        Self::new(group, vec![v; group.classes().len()])
    }

    pub fn zero(group: &Arc<Group>) -> Self {
        Self::constant(group, Cyclotomic::zero())
    }

    /// Regular character: `|G|` at the identity, zero elsewhere.
    pub fn regular(group: &Arc<Group>) -> Self {
        let mut values = vec![Cyclotomic::zero(); group.classes().len()];
        values[0] = Cyclotomic::from_integer(group.order() as i64);
        Self::new(group, values)
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &Cyclotomic {
        &self.values[class]
    }

    pub fn value_at(&self, g: Element) -> &Cyclotomic {
        &self.values[self.group.classes().class_of(g)]
    }

    pub fn degree(&self) -> &Cyclotomic {
        &self.values[0]
    }

    /// Degree as an integer, if it is one.
    pub fn degree_u64(&self) -> Option<u64> {
        self.values[0].to_i64().and_then(|d| u64::try_from(d).ok())
    }

    pub fn is_linear(&self) -> bool {
        self.values[0].is_one()
    }

    pub fn same_group(&self, other: &ClassFunction) -> bool {
        Arc::ptr_eq(&self.group, &other.group)
    }

    fn check_same(&self, other: &ClassFunction) -> Result<(), CharacterError> {
        if self.same_group(other) {
            Ok(())
        } else {
            Err(CharacterError::GroupMismatch)
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            group: self.group.clone(),
            values: self.values.iter().map(Cyclotomic::conj).collect(),
        }
    }

    pub fn galois(&self, k: i64) -> Self {
        Self {
            group: self.group.clone(),
            values: self.values.iter().map(|v| v.galois_unchecked(k)).collect(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.values.iter().all(Cyclotomic::is_real)
    }

    pub fn add(&self, other: &ClassFunction) -> Result<Self, CharacterError> {
        self.check_same(other)?;
        Ok(Self {
            group: self.group.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &ClassFunction) -> Result<Self, CharacterError> {
        self.check_same(other)?;
        Ok(Self {
            group: self.group.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self {
            group: self.group.clone(),
            values: self.values.iter().map(|v| v.scale(q)).collect(),
        }
    }

    /// Pointwise product.
    pub fn product(&self, other: &ClassFunction) -> Result<Self, CharacterError> {
        self.check_same(other)?;
        Ok(Self {
            group: self.group.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect(),
        })
    }

    /// `(1/|G|) Σ_g α(g) conj(β(g))`, computed classwise.
    pub fn inner_product_cyclotomic(&self, other: &ClassFunction) -> Result<Cyclotomic, CharacterError> {
        self.check_same(other)?;
        let cl = self.group.classes();
        if let Some(v) = self.fast_inner_product(other) {
            return Ok(v);
        }
        let mut acc = Cyclotomic::zero();
        for c in 0..cl.len() {
            if self.values[c].is_zero() || other.values[c].is_zero() {
                continue;
            }
            acc += &(&self.values[c] * &other.values[c].conj()).scale_int(cl.size(c) as i64);
        }
        Ok(acc.scale(&BigRational::new(BigInt::one(), BigInt::from(self.group.order()))))
    }

    fn fast_inner_product(&self, other: &ClassFunction) -> Option<Cyclotomic> {
        let cl = self.group.classes();
        let ring = self.group.cyclo_ring();
        let mut acc = ring.zeros();
        for c in 0..cl.len() {
            let a = ring.sparse(&self.values[c])?;
            let b = ring.sparse(&other.values[c])?;
            ring.mul_conj_acc(&mut acc, &a, &b, cl.size(c) as i64);
        }
        let v = ring.to_cyclotomic(&acc);
        Some(v.scale(&BigRational::new(BigInt::one(), BigInt::from(self.group.order()))))
    }

    /// Inner product as a rational number; errors if it is not rational.
    pub fn inner_product(&self, other: &ClassFunction) -> Result<BigRational, CharacterError> {
        self.inner_product_cyclotomic(other)?.to_rational().ok_or_else(|| {
            CharacterError::Invalid("inner product is not rational".into())
        })
    }

    pub fn norm(&self) -> Result<BigRational, CharacterError> {
        self.inner_product(self)
    }

    /// Whether the class function is an irreducible character: norm one and
    /// positive degree (tested against the table when given).
    pub fn is_irreducible(&self) -> bool {
        self.norm().map(|n| n.is_one()).unwrap_or(false)
            && self.values[0].to_rational().map(|d| d.is_positive()).unwrap_or(false)
    }

    /// Restriction to a subgroup realized as its own group (see
    /// [`Group::subgroup_group`]).
    pub fn restrict(&self, sub: &Arc<Group>) -> Result<ClassFunction, CharacterError> {
        let members = self.embedding(sub)?;
        let scl = sub.classes();
        let gcl = self.group.classes();
        let values = (0..scl.len())
            .map(|c| self.values[gcl.class_of(members[scl.rep(c) as usize])].clone())
            .collect();
        Ok(ClassFunction::new(sub, values))
    }

    fn embedding<'a>(&self, sub: &'a Arc<Group>) -> Result<&'a [u32], CharacterError> {
        match (sub.parent(), sub.parent_members()) {
            (Some(p), Some(m)) if Arc::ptr_eq(p, &self.group) => Ok(m),
            _ => Err(CharacterError::GroupMismatch),
        }
    }

    /// Induction from a subgroup (realized via [`Group::subgroup_group`]) to
    /// its parent: `θ^G(g) = |C_G(g)|/|H| Σ_{h-classes c ⊆ g^G} |c| θ(c)`.
    pub fn induce(&self, parent: &Arc<Group>) -> Result<ClassFunction, CharacterError> {
        let sub = &self.group;
        let members = match (sub.parent(), sub.parent_members()) {
            (Some(p), Some(m)) if Arc::ptr_eq(p, parent) => m,
            _ => return Err(CharacterError::GroupMismatch),
        };
        let gcl = parent.classes();
        let scl = sub.classes();
        let mut sums = vec![Cyclotomic::zero(); gcl.len()];
        for c in 0..scl.len() {
            if self.values[c].is_zero() {
                continue;
            }
            let gc = gcl.class_of(members[scl.rep(c) as usize]);
            sums[gc] += &self.values[c].scale_int(scl.size(c) as i64);
        }
        let values = sums
            .into_iter()
            .enumerate()
            .map(|(gc, s)| {
                if s.is_zero() {
                    s
                } else {
                    s.scale(&BigRational::new(
                        BigInt::from(gcl.centralizer_order(gc)),
                        BigInt::from(sub.order()),
                    ))
                }
            })
            .collect();
        Ok(ClassFunction::new(parent, values))
    }

    /// Inflation along a projection `G → G/N` (`proj[g]` is the image of `g`).
    pub fn inflate(&self, g: &Arc<Group>, proj: &[u32]) -> ClassFunction {
        let cl = g.classes();
        let values = (0..cl.len())
            .map(|c| self.value_at(proj[cl.rep(c) as usize]).clone())
            .collect();
        ClassFunction::new(g, values)
    }

    /// Whether the character is constant on the cosets of `n`, i.e. `n` lies
    /// in its kernel.
    pub fn kernel_contains(&self, n: &SubgroupRef) -> bool {
        n.members().iter().all(|&x| self.value_at(x) == self.degree())
    }

    pub fn kernel(&self) -> SubgroupRef {
        let members = self
            .group
            .elements()
            .filter(|&x| self.value_at(x) == self.degree())
            .collect();
        SubgroupRef::from_sorted(members, self.group.order())
    }

    /// Multiplicities of the eigenvalues `ζ_o^t` of a representing matrix at
    /// an element of order `o`, recovered from the restriction to `⟨g⟩`.
    pub fn eigenvalue_multiplicities(&self, class: usize) -> Result<Vec<u64>, CharacterError> {
        let cl = self.group.classes();
        let o = cl.rep_order(class) as i64;
        let mut out = Vec::with_capacity(o as usize);
        for t in 0..o {
            let mut acc = Cyclotomic::zero();
            for s in 0..o {
                let v = &self.values[cl.power_class(class, s)];
                if v.is_zero() {
                    continue;
                }
                acc += &(v * &Cyclotomic::root_of_unity(o as u32, -s * t));
            }
            let m = acc.scale(&BigRational::new(BigInt::one(), BigInt::from(o)));
            match m.to_integer().and_then(|m| m.to_u64()) {
                Some(m) => out.push(m),
                None => {
                    return Err(CharacterError::NotACharacter(format!(
                        "eigenvalue multiplicity {m} at class {class}"
                    )))
                }
            }
        }
        let deg = self.degree_u64().unwrap_or(0);
        if out.iter().sum::<u64>() != deg {
            return Err(CharacterError::NotACharacter(format!(
                "eigenvalue multiplicities at class {class} do not sum to the degree"
            )));
        }
        Ok(out)
    }

    /// Eigenvalue multiplicities at every class, computed modulo a prime
    /// `ℓ ≡ 1` mod the exponent. `None` when a value does not reduce or the
    /// result is not a set of multiplicities summing to the degree.
    fn eigenvalue_multiplicities_mod(&self) -> Option<Vec<Vec<u64>>> {
        let cl = self.group.classes();
        let deg = self.degree_u64()?;
        let mm = ModMap::nth(self.group.exponent() as u64, 0);
        if deg >= mm.l {
            return None;
        }
        let vals = mm.eval_all(&self.values)?;
        let mut out = Vec::with_capacity(cl.len());
        for c in 0..cl.len() {
            let o = cl.rep_order(c) as u64;
            let step = mm.e / o;
            let inv_o = modp::inverse(o % mm.l, mm.l);
            let pcs: Vec<u64> = (0..o).map(|s| vals[cl.power_class(c, s as i64)]).collect();
            let mut mult = Vec::with_capacity(o as usize);
            let mut total = 0;
            for t in 0..o {
                let mut acc = 0u64;
                for (s, &v) in pcs.iter().enumerate() {
                    if v != 0 {
                        let k = (o - (s as u64 * t) % o) % o * step;
                        acc = (acc + modp::mul(v, mm.powers[k as usize], mm.l)) % mm.l;
                    }
                }
                let m = modp::mul(acc, inv_o, mm.l);
                if m > deg {
                    return None;
                }
                total += m;
                mult.push(m);
            }
            if total != deg {
                return None;
            }
            out.push(mult);
        }
        Some(out)
    }

    /// Determinant of a representation affording the character.
    pub fn det_character(&self) -> Result<ClassFunction, CharacterError> {
        let cl = self.group.classes();
        let mults = match self.eigenvalue_multiplicities_mod() {
            Some(m) => m,
            None => (0..cl.len())
                .map(|c| self.eigenvalue_multiplicities(c))
                .collect::<Result<_, _>>()?,
        };
        let mut values = Vec::with_capacity(cl.len());
        for mult in mults {
            let o = mult.len() as i64;
            let exp: i64 = mult
                .iter()
                .enumerate()
                .map(|(t, &m)| (t as i64 * m as i64) % o)
                .sum();
            values.push(Cyclotomic::root_of_unity(o as u32, exp));
        }
        Ok(ClassFunction::new(&self.group, values))
    }

    /// Order of the determinant in the group of linear characters.
    pub fn determinantal_order(&self) -> Result<u64, CharacterError> {
        let det = self.det_character()?;
        Ok(linear_order(&det))
    }

    /// `θ^g(x) = θ(g x g^-1)`, for `θ` on a normal subgroup realized inside
    /// the parent group.
    pub fn conjugate_by(&self, parent: &Arc<Group>, g: Element) -> Result<ClassFunction, CharacterError> {
        let sub = &self.group;
        let members = match (sub.parent(), sub.parent_members()) {
            (Some(p), Some(m)) if Arc::ptr_eq(p, parent) => m,
            _ => return Err(CharacterError::GroupMismatch),
        };
        let scl = sub.classes();
        let values = (0..scl.len())
            .map(|c| {
                let x = members[scl.rep(c) as usize];
                let y = parent.conjugate(x, parent.inv(g));
                let local = members.binary_search(&y).map_err(|_| {
                    CharacterError::Group(crate::GroupError::NotNormal)
                })?;
                Ok(self.value_at(local as Element).clone())
            })
            .collect::<Result<_, CharacterError>>()?;
        Ok(ClassFunction::new(sub, values))
    }
}

/// Multiplicative order of a linear character.
pub fn linear_order(lambda: &ClassFunction) -> u64 {
    lambda
        .values()
        .iter()
        .map(root_order)
        .fold(1u64, |a, b| a.lcm(&b))
}

/// Order of a root of unity given in canonical form.
fn root_order(v: &Cyclotomic) -> u64 {
    let n = v.conductor() as u64;
    if v.is_one() {
        return 1;
    }
    if n == 1 {
        // -1
        return 2;
    }
    // a root of unity of conductor n has order n or 2n
    if v.pow(n as u32).is_one() {
        n
    } else {
        2 * n
    }
}

/// Stabilizer in `g` of a class function on a normal subgroup.
pub fn inertia_group(
    g: &Arc<Group>,
    theta: &ClassFunction,
) -> Result<SubgroupRef, CharacterError> {
    let sub = theta.group();
    let members = match (sub.parent(), sub.parent_members()) {
        (Some(p), Some(m)) if Arc::ptr_eq(p, g) => m,
        _ => return Err(CharacterError::GroupMismatch),
    };
    let n = SubgroupRef::from_sorted(members.to_vec(), g.order());
    if !g.is_normal(&n) {
        return Err(CharacterError::Group(crate::GroupError::NotNormal));
    }
    let scl = sub.classes();
    let reps: Vec<(Element, &Cyclotomic)> = (0..scl.len())
        .map(|c| (members[scl.rep(c) as usize], theta.value(c)))
        .collect();
    let stab = g
        .elements()
        .filter(|&x| {
            reps.iter().all(|&(r, v)| {
                let y = g.conjugate(r, g.inv(x));
                let local = members.binary_search(&y).expect("normal subgroup") as Element;
                theta.value_at(local) == v
            })
        })
        .collect();
    Ok(SubgroupRef::from_sorted(stab, g.order()))
}

/// First character of `table` (in table order) restricting to `theta`.
pub fn extends_to(theta: &ClassFunction, table: &CharacterTable) -> Result<Option<usize>, CharacterError> {
    let sub = theta.group();
    for (i, chi) in table.rows().iter().enumerate() {
        if chi.degree() != theta.degree() {
            continue;
        }
        if chi.restrict(sub)? == *theta {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// Multiplicities of the table's rows in `alpha`, as rationals.
pub fn constituents(
    alpha: &ClassFunction,
    table: &CharacterTable,
) -> Result<Vec<(usize, BigRational)>, CharacterError> {
    let mut out = Vec::new();
    for (i, chi) in table.rows().iter().enumerate() {
        let m = alpha.inner_product(chi)?;
        if !m.is_zero() {
            out.push((i, m));
        }
    }
    Ok(out)
}

/// Integer multiplicities of a genuine character's constituents.
pub fn character_constituents(
    alpha: &ClassFunction,
    table: &CharacterTable,
) -> Result<Vec<(usize, u64)>, CharacterError> {
    constituents(alpha, table)?
        .into_iter()
        .map(|(i, m)| {
            if m.is_integer() && m.is_positive() {
                Ok((i, m.to_integer().to_u64().unwrap_or(0)))
            } else {
                Err(CharacterError::NotACharacter(format!(
                    "multiplicity {m} of row {i}"
                )))
            }
        })
        .collect()
}
