//! Exact character tables by the Dixon–Schneider method, with certification.

use std::sync::Arc;

use pichar_cyclotomic::Cyclotomic;

use crate::charops::ClassFunction;
use crate::cycint::Sparse;
use crate::error::CharacterError;
use crate::group::{Group, IDENTITY};
use crate::modp;
use crate::numbers::{is_prime, isqrt};

/// The irreducible characters of a group, principal character first, then
/// by degree, then by value sequence.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    group: Arc<Group>,
    rows: Vec<ClassFunction>,
}

/// A named failure of [`verify_table`].
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TableViolation {
    #[error("table has {rows} rows but the group has {classes} classes")]
    Shape { rows: usize, classes: usize },
    #[error("first row is not the principal character")]
    FirstRowNotPrincipal,
    #[error("row {row} at class {class} is not an integral value of the exponent field")]
    NonIntegralValue { row: usize, class: usize },
    #[error("row {row} has a degree that is not a positive divisor of |G|")]
    Degree { row: usize },
    #[error("row orthogonality fails for rows {a} and {b}")]
    RowOrthogonality { a: usize, b: usize },
    #[error("column orthogonality fails for classes {a} and {b}")]
    ColumnOrthogonality { a: usize, b: usize },
    #[error("squared degrees do not sum to |G|")]
    DegreeSum,
}

impl CharacterTable {
    /// Wrap rows without checking them; see [`verify_table`].
    pub fn from_rows(group: &Arc<Group>, rows: Vec<ClassFunction>) -> Self {
        CharacterTable {
            group: group.clone(),
            rows,
        }
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn rows(&self) -> &[ClassFunction] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &ClassFunction {
        &self.rows[i]
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn degrees(&self) -> Vec<u64> {
        self.rows.iter().map(|r| r.degree_u64().unwrap_or(0)).collect()
    }

    /// Table index of an irreducible character.
    pub fn index_of(&self, chi: &ClassFunction) -> Option<usize> {
        self.rows.iter().position(|r| r == chi)
    }

    pub fn linear_indices(&self) -> Vec<usize> {
        (0..self.rows.len()).filter(|&i| self.rows[i].is_linear()).collect()
    }
}

/// Least prime `ℓ ≡ 1 (mod e)` with `ℓ > 2√|G|`.
pub fn dixon_prime(order: u64, exponent: u64) -> u64 {
    let bound = 2 * isqrt(order) + 1;
    let mut l = exponent + 1;
    while l <= bound || !is_prime(l) {
        l += exponent;
    }
    l
}

/// Class multiplication matrix `M[j][k] = a_{ijk}`: the number of `x` in
/// class `i` with `x^-1 z_k` in class `j`, `z_k` the representative of class `k`.
pub fn class_mult_matrix(g: &Group, i: usize) -> Vec<Vec<u64>> {
    let cl = g.classes();
    let r = cl.len();
    let mut m = vec![vec![0u64; r]; r];
    for &x in cl.members(i) {
        let xi = g.inv(x);
        for k in 0..r {
            let j = cl.class_of(g.mul(xi, cl.rep(k)));
            m[j][k] += 1;
        }
    }
    m
}

/// All coefficients `a[i][j][k]`.
pub fn class_mult_coefficients(g: &Group) -> Vec<Vec<Vec<u64>>> {
    (0..g.classes().len()).map(|i| class_mult_matrix(g, i)).collect()
}

/// Compute and certify the character table.
pub fn character_table(g: &Arc<Group>) -> Result<CharacterTable, CharacterError> {
    let cl = g.classes();
    let r = cl.len();
    let order = g.order() as u64;
    let e = g.exponent() as u64;
    let l = dixon_prime(order, e);

    // eigenspaces of the class matrices, as row-reduced bases of column vectors
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..r)
        .map(|i| {
            let mut v = vec![0u64; r];
            v[i] = 1;
            v
        })
        .collect()];
    for i in 1..r {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let m = class_mult_matrix(g, i);
        let mut next = Vec::new();
        for space in spaces {
            if space.len() == 1 {
                next.push(space);
                continue;
            }
            next.extend(split_space(&m, space, l));
        }
        spaces = next;
    }
    if spaces.len() != r || spaces.iter().any(|s| s.len() != 1) {
        return Err(CharacterError::Certification(
            "class algebra did not split into one-dimensional eigenspaces".into(),
        ));
    }

    let z_e = modp::pow(modp::primitive_root(l), (l - 1) / e, l);
    let mut rows = Vec::with_capacity(r);
    for space in &spaces {
        let v = &space[0];
        let inv0 = modp::inverse(v[0], l);
        let omega: Vec<u64> = v.iter().map(|&x| modp::mul(x, inv0, l)).collect();
        let mut s = 0u64;
        for j in 0..r {
            let t = modp::mul(omega[j], omega[cl.inverse_class(j)], l);
            s = (s + modp::mul(t, modp::inverse(cl.size(j) as u64 % l, l), l)) % l;
        }
        let target = modp::mul(order % l, modp::inverse(s, l), l);
        let d = (1..=isqrt(order))
            .find(|&d| d * d % l == target)
            .ok_or_else(|| CharacterError::Certification("no degree satisfies the norm".into()))?;
        let chi_mod: Vec<u64> = (0..r)
            .map(|j| {
                let t = modp::mul(omega[j], d, l);
                modp::mul(t, modp::inverse(cl.size(j) as u64 % l, l), l)
            })
            .collect();
        let mut values = Vec::with_capacity(r);
        for j in 0..r {
            let o = cl.rep_order(j) as u64;
            let z_o = modp::pow(z_e, e / o, l);
            let inv_o = modp::inverse(o % l, l);
            let mut terms = Vec::new();
            for t in 0..o {
                let mut acc = 0u64;
                for s in 0..o {
                    let val = chi_mod[cl.power_class(j, s as i64)];
                    let w = modp::pow(z_o, (o - (s * t) % o) % o, l);
                    acc = (acc + modp::mul(val, w, l)) % l;
                }
                let m = modp::mul(acc, inv_o, l);
                if m > d {
                    return Err(CharacterError::Certification(format!(
                        "eigenvalue multiplicity {m} exceeds degree {d}"
                    )));
                }
                if m > 0 {
                    terms.push((t as i64, m as i64));
                }
            }
            values.push(Cyclotomic::from_exponent_sum(o as u32, terms));
        }
        rows.push(ClassFunction::new(g, values));
    }
    sort_rows(&mut rows);
    let table = CharacterTable::from_rows(g, rows);
    verify_table(&table).map_err(|v| CharacterError::Certification(v.to_string()))?;
    Ok(table)
}

fn sort_rows(rows: &mut [ClassFunction]) {
    rows.sort_by(|a, b| {
        let pa = a.values().iter().all(Cyclotomic::is_one);
        let pb = b.values().iter().all(Cyclotomic::is_one);
        pb.cmp(&pa)
            .then_with(|| a.degree_u64().cmp(&b.degree_u64()))
            .then_with(|| a.values().cmp(b.values()))
    });
}

/// Split an invariant subspace into eigenspaces of the class matrix `m`.
fn split_space(m: &[Vec<u64>], basis: Vec<Vec<u64>>, l: u64) -> Vec<Vec<Vec<u64>>> {
    let r = m.len();
    let d = basis.len();
    let pivots: Vec<usize> = basis
        .iter()
        .map(|b| b.iter().position(|&x| x != 0).expect("nonzero basis vector"))
        .collect();
    // images M b_s, in coordinates with respect to the basis
    let mut restricted = vec![vec![0u64; d]; d];
    for (s, b) in basis.iter().enumerate() {
        let nz: Vec<(usize, u64)> = b
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(k, &x)| (k, x))
            .collect();
        for (t, &pt) in pivots.iter().enumerate() {
            let row = &m[pt];
            let mut acc = 0u64;
            for &(k, x) in &nz {
                acc = (acc + modp::mul(row[k] % l, x, l)) % l;
            }
            restricted[t][s] = acc;
        }
    }
    let cp = modp::charpoly(&restricted, l);
    let roots: Vec<u64> = (0..l).filter(|&x| modp::eval_poly(&cp, x, l) == 0).collect();
    if roots.len() <= 1 {
        return vec![basis];
    }
    let mut out = Vec::new();
    for lambda in roots {
        let shifted: Vec<Vec<u64>> = (0..d)
            .map(|t| {
                (0..d)
                    .map(|s| {
                        let v = restricted[t][s];
                        if s == t {
                            (v + l - lambda) % l
                        } else {
                            v
                        }
                    })
                    .collect()
            })
            .collect();
        let coords = modp::kernel(&shifted, d, l);
        let mut vecs: Vec<Vec<u64>> = coords
            .iter()
            .map(|c| {
                let mut v = vec![0u64; r];
                for (s, &cs) in c.iter().enumerate() {
                    if cs == 0 {
                        continue;
                    }
                    for (k, &bk) in basis[s].iter().enumerate() {
                        v[k] = (v[k] + modp::mul(cs, bk, l)) % l;
                    }
                }
                v
            })
            .collect();
        modp::rref(&mut vecs, l);
        out.push(vecs);
    }
    out
}

/// Exact check of both orthogonality relations, degrees, and the principal
/// first row.
pub fn verify_table(t: &CharacterTable) -> Result<(), TableViolation> {
    let g = t.group();
    let cl = g.classes();
    let r = cl.len();
    if t.rows().len() != r {
        return Err(TableViolation::Shape {
            rows: t.rows().len(),
            classes: r,
        });
    }
    if !t.rows()[0].values().iter().all(Cyclotomic::is_one) {
        return Err(TableViolation::FirstRowNotPrincipal);
    }
    let ring = g.cyclo_ring();
    let mut vals: Vec<Vec<Sparse>> = Vec::with_capacity(r);
    let mut deg_sum = 0u128;
    for (i, row) in t.rows().iter().enumerate() {
        if !Arc::ptr_eq(row.group(), g) || row.values().len() != r {
            return Err(TableViolation::Shape {
                rows: t.rows().len(),
                classes: r,
            });
        }
        let mut sv = Vec::with_capacity(r);
        for c in 0..r {
            sv.push(
                ring.sparse(row.value(c))
                    .ok_or(TableViolation::NonIntegralValue { row: i, class: c })?,
            );
        }
        match row.degree_u64() {
            Some(d) if d > 0 && (g.order() as u64).is_multiple_of(d) => deg_sum += (d as u128) * (d as u128),
            _ => return Err(TableViolation::Degree { row: i }),
        }
        vals.push(sv);
    }
    if deg_sum != g.order() as u128 {
        return Err(TableViolation::DegreeSum);
    }
    let mut acc = ring.zeros();
    for a in 0..r {
        for b in a..r {
            acc.iter_mut().for_each(|x| *x = 0);
            for c in 0..r {
                ring.mul_conj_acc(&mut acc, &vals[a][c], &vals[b][c], cl.size(c) as i64);
            }
            let expect = if a == b { g.order() as i64 } else { 0 };
            if !ring.equals_integer(&acc, expect) {
                return Err(TableViolation::RowOrthogonality { a, b });
            }
        }
    }
    for a in 0..r {
        for b in a..r {
            acc.iter_mut().for_each(|x| *x = 0);
            for row in &vals {
                ring.mul_conj_acc(&mut acc, &row[a], &row[b], 1);
            }
            let expect = if a == b {
                cl.centralizer_order(a) as i64
            } else {
                0
            };
            if !ring.equals_integer(&acc, expect) {
                return Err(TableViolation::ColumnOrthogonality { a, b });
            }
        }
    }
    Ok(())
}

/// Linear characters, as lifts of the dual group of `G/G'`, sorted by values
/// with the principal character first.
pub fn linear_characters(g: &Arc<Group>) -> Vec<ClassFunction> {
    let derived = g.derived_subgroup();
    let (ab, proj) = Group::quotient(g, &derived).expect("derived subgroup is normal");
    let e = ab.exponent().max(1);
    let homs = abelian_dual(&ab, e);
    let cl = g.classes();
    let mut out: Vec<ClassFunction> = homs
        .iter()
        .map(|f| {
            let values = (0..cl.len())
                .map(|c| Cyclotomic::root_of_unity(e, f[proj[cl.rep(c) as usize] as usize] as i64))
                .collect();
            ClassFunction::new(g, values)
        })
        .collect();
    sort_rows(&mut out);
    out
}

/// All homomorphisms from an abelian group to `Z/e` (`e` a multiple of the
/// exponent), built by extending one generator at a time.
pub fn abelian_dual(ab: &Group, e: u32) -> Vec<Vec<u32>> {
    let n = ab.order();
    let mut members: Vec<u32> = vec![IDENTITY];
    let mut inside = vec![false; n];
    inside[0] = true;
    let mut homs: Vec<Vec<u32>> = vec![vec![0; n]];
    let mut cand: Vec<u32> = ab.elements().collect();
    cand.sort_by_key(|&x| (std::cmp::Reverse(ab.element_order(x)), x));
    for g in cand {
        if inside[g as usize] {
            continue;
        }
        // smallest m with g^m inside the current subgroup
        let mut m = 1u32;
        let mut y = g;
        while !inside[y as usize] {
            y = ab.mul(y, g);
            m += 1;
        }
        let gm = y;
        let mut new_members = members.clone();
        let mut power = g;
        for _ in 1..m {
            for &s in &members {
                let x = ab.mul(s, power);
                new_members.push(x);
            }
            power = ab.mul(power, g);
        }
        let mut next = Vec::new();
        for f in &homs {
            for t in 0..e {
                if (m as u64 * t as u64) % e as u64 != f[gm as usize] as u64 {
                    continue;
                }
                let mut h = f.clone();
                let mut power = g;
                for i in 1..m {
                    for &s in &members {
                        let x = ab.mul(s, power);
                        h[x as usize] = (f[s as usize] + i * t) % e;
                    }
                    power = ab.mul(power, g);
                }
                next.push(h);
            }
        }
        homs = next;
        for &x in &new_members {
            inside[x as usize] = true;
        }
        members = new_members;
    }
    homs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Generators;

    #[test]
    fn c2_table() {
        let t = character_table(&Group::cyclic(2)).unwrap();
        let rows: Vec<Vec<i64>> = t
            .rows()
            .iter()
            .map(|r| r.values().iter().map(|v| v.to_i64().unwrap()).collect())
            .collect();
        assert_eq!(rows, vec![vec![1, 1], vec![1, -1]]);
    }

    #[test]
    fn trivial_group_table() {
        let t = character_table(&Group::cyclic(1)).unwrap();
        assert_eq!(t.degrees(), vec![1]);
    }

    #[test]
    fn linear_characters_lead_the_table() {
        let g = Group::from_generators(&Generators::Matrices {
            p: 3,
            dim: 2,
            gens: vec![vec![2, 0, 0, 1], vec![1, 1, 0, 1], vec![1, 0, 1, 1]],
        })
        .unwrap();
        let t = character_table(&g).unwrap();
        let lin = linear_characters(&g);
        assert_eq!(lin.len(), 2);
        assert_eq!(&t.rows()[..2], &lin[..]);
        let ab = Group::direct_product(&Group::cyclic(4), &Group::cyclic(6)).unwrap();
        assert_eq!(character_table(&ab).unwrap().rows(), &linear_characters(&ab)[..]);
    }

    #[test]
    fn prime_rule() {
        assert_eq!(dixon_prime(9375, 15), 211);
        assert_eq!(dixon_prime(48, 24), 73);
    }

    #[test]
    fn perturbed_table_is_rejected() {
        let g = Group::from_generators(&Generators::Permutations {
            degree: 3,
            gens: vec![vec![1, 2, 0], vec![1, 0, 2]],
        })
        .unwrap();
        let t = character_table(&g).unwrap();
        let mut rows = t.rows().to_vec();
        let mut vals = rows[2].values().to_vec();
        vals[1] = &vals[1] + &Cyclotomic::one();
        rows[2] = ClassFunction::new(&g, vals);
        let bad = CharacterTable::from_rows(&g, rows);
        assert!(matches!(
            verify_table(&bad),
            Err(TableViolation::RowOrthogonality { .. })
        ));
    }

    #[test]
    fn class_mult_identities() {
        let g = Group::from_generators(&Generators::Permutations {
            degree: 4,
            gens: vec![vec![1, 2, 3, 0], vec![1, 0, 2, 3]],
        })
        .unwrap();
        let cl = g.classes();
        let a = class_mult_coefficients(&g);
        let r = cl.len();
        for i in 0..r {
            for j in 0..r {
                let s: u64 = (0..r).map(|k| a[i][j][k] * cl.size(k) as u64).sum();
                assert_eq!(s, (cl.size(i) * cl.size(j)) as u64);
                assert_eq!(a[0][j][i], u64::from(i == j));
            }
        }
    }
}
