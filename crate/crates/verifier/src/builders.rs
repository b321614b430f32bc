//! Constructions of the named example groups.

use std::collections::BTreeMap;
use std::sync::Arc;

use pichar_core::group::det_mod_p;
use pichar_core::numbers::is_prime;
use pichar_core::{AutomorphismAction, Element, Generators, Group, GroupError, SubgroupRef};

/// A group together with named subgroups.
#[derive(Clone, Debug)]
pub struct Example {
    pub group: Arc<Group>,
    pub named: BTreeMap<String, SubgroupRef>,
}

impl Example {
    pub fn sub(&self, name: &str) -> &SubgroupRef {
        &self.named[name]
    }
}

/// `GL_2(3)` with `S = SL_2(3)` and `Q = O_2(G)`.
pub fn gl2_3() -> Example {
    let g = Group::from_generators(&Generators::Matrices {
        p: 3,
        dim: 2,
        gens: vec![vec![2, 0, 0, 1], vec![1, 1, 0, 1], vec![1, 0, 1, 1]],
    })
    .expect("GL2(3) fits");
    let s: Vec<Element> = g
        .elements()
        .filter(|&x| {
            let m: Vec<u32> = g.concrete_element(x).expect("matrix group").iter().map(|&v| v as u32).collect();
            det_mod_p(&m, 2, 3) == 1
        })
        .collect();
    let s = SubgroupRef::from_sorted(s, g.order());
    let q = g.o_p(2);
    let mut named = BTreeMap::new();
    named.insert("S".to_string(), s);
    named.insert("Q".to_string(), q);
    Example { group: g, named }
}

/// Extraspecial `p^{1+2}` of exponent `p` as upper unitriangular matrices.
pub fn heisenberg(p: u32) -> Arc<Group> {
    Group::from_generators(&Generators::Matrices {
        p,
        dim: 3,
        gens: vec![vec![1, 1, 0, 0, 1, 0, 0, 0, 1], vec![1, 0, 0, 0, 1, 1, 0, 0, 1]],
    })
    .expect("p^3 fits")
}

/// Automorphism of `heisenberg(p)` of order `q` fixing the center: the
/// action of an order-`q` matrix of `SL_2(p)` on the two generators.
fn heisenberg_automorphism(e: &Group, p: u32, q: u32) -> Result<Vec<Element>, GroupError> {
    let m = order_q_special_matrix(p, q).ok_or_else(|| {
        GroupError::Invalid(format!("SL_2({p}) has no element of order {q}"))
    })?;
    let x = e.generators()[0];
    let y = e.generators()[1];
    let word = |a: u32, b: u32| e.mul(e.pow(x, a as i64), e.pow(y, b as i64));
    let imgs = vec![word(m[0], m[2]), word(m[1], m[3])];
    let act = AutomorphismAction::from_generator_images(e, &[imgs])?;
    Ok(act.images()[0].clone())
}

/// Least (row-major) `2x2` matrix over `F_p` of determinant 1 and order `q`.
fn order_q_special_matrix(p: u32, q: u32) -> Option<[u32; 4]> {
    let mul = |a: [u32; 4], b: [u32; 4]| {
        [
            (a[0] * b[0] + a[1] * b[2]) % p,
            (a[0] * b[1] + a[1] * b[3]) % p,
            (a[2] * b[0] + a[3] * b[2]) % p,
            (a[2] * b[1] + a[3] * b[3]) % p,
        ]
    };
    let one = [1, 0, 0, 1];
    for code in 0..p.pow(4) {
        let m = [code % p, code / p % p, code / (p * p) % p, code / (p * p * p)];
        if (m[0] * m[3] + p * p - m[1] * m[2] % p) % p != 1 || m == one {
            continue;
        }
        let mut pw = m;
        for _ in 1..q {
            pw = mul(pw, m);
        }
        if pw == one {
            return Some(m);
        }
    }
    None
}

/// The group `G = D ⋊ <s>` with `D = E_1 ∘ E_2` extraspecial of order `p^5`,
/// `s` acting as `σ` on `E_1` and `σ^-1` on `E_2`. Named subgroups: `D`,
/// `E1`, `E2`, `S` (= `<s>`), `K1`, `K2`, `A` (an `s`-invariant abelian
/// subgroup of `D` of order `p^3`) and `SA`.
pub fn extraspecial_example(p: u32, q: u32) -> Result<Example, GroupError> {
    if !is_prime(p as u64) || !is_prime(q as u64) || p == 2 || q == 2 {
        return Err(GroupError::Invalid("p and q must be odd primes".into()));
    }
    if !(p + 1).is_multiple_of(q) {
        return Err(GroupError::Invalid(format!("{q} does not divide {p} + 1")));
    }
    let e = heisenberg(p);
    let sigma = heisenberg_automorphism(&e, p, q)?;
    let mut sigma_inv = vec![0; sigma.len()];
    for (x, &y) in sigma.iter().enumerate() {
        sigma_inv[y as usize] = x as Element;
    }
    let (d, proj) = Group::central_product(&e, &e, None)?;
    let w = e.order() as u32;
    // image in D of each element of E1 x E2, and one preimage per element of D
    let mut pre = vec![u32::MAX; d.order()];
    for (x, &c) in proj.iter().enumerate() {
        if pre[c as usize] == u32::MAX {
            pre[c as usize] = x as u32;
        }
    }
    let s_perm: Vec<Element> = pre
        .iter()
        .map(|&x| {
            let (a, b) = (x / w, x % w);
            proj[(sigma[a as usize] * w + sigma_inv[b as usize]) as usize]
        })
        .collect();
    let cq = Group::cyclic(q as usize);
    let action = AutomorphismAction::new(vec![s_perm.clone()]);
    let g = Group::semidirect_product(&d, &cq, &action)?;
    let qn = q;
    let emb = |x: Element| x * qn;
    let e1: Vec<Element> = (0..w).map(|a| emb(proj[(a * w) as usize])).collect();
    let e2: Vec<Element> = (0..w).map(|b| emb(proj[b as usize])).collect();
    let e1 = SubgroupRef::from_sorted(e1, g.order());
    let e2 = SubgroupRef::from_sorted(e2, g.order());
    let s = g.semidirect_complement().expect("semidirect");
    let dsub = g.semidirect_normal_part().expect("semidirect");
    let s_gen = 1 as Element;
    let k1 = g.join_with(&e1, &[s_gen]);
    let k2 = g.join_with(&e2, &[s_gen]);
    let a = invariant_abelian(&g, &dsub, s_gen, (p * p * p) as usize)
        .ok_or_else(|| GroupError::Invalid("no s-invariant abelian subgroup of order p^3".into()))?;
    let sa = g.join_with(&a, &[s_gen]);
    let mut named = BTreeMap::new();
    named.insert("D".to_string(), dsub);
    named.insert("E1".to_string(), e1);
    named.insert("E2".to_string(), e2);
    named.insert("S".to_string(), s);
    named.insert("K1".to_string(), k1);
    named.insert("K2".to_string(), k2);
    named.insert("A".to_string(), a);
    named.insert("SA".to_string(), sa);
    Ok(Example { group: g, named })
}

/// First abelian subgroup of `within` of the given order generated by the
/// `s`-orbit of one element together with the center of `within`.
fn invariant_abelian(
    g: &Group,
    within: &SubgroupRef,
    s: Element,
    order: usize,
) -> Option<SubgroupRef> {
    let z = g.centralizer_in(within, &g.small_generating_set(within.members()));
    for &x in within.members() {
        if z.contains(x) {
            continue;
        }
        let mut gens = vec![x];
        let mut y = g.conjugate(x, s);
        while y != x {
            gens.push(y);
            y = g.conjugate(y, s);
        }
        let h = g.join_with(&z, &gens);
        if h.len() == order && is_abelian_sub(g, &h) {
            return Some(h);
        }
    }
    None
}

fn is_abelian_sub(g: &Group, h: &SubgroupRef) -> bool {
    let gens = g.small_generating_set(h.members());
    gens.iter()
        .all(|&a| gens.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
}

/// `K_i` of the extraspecial example as a group in its own right.
pub fn k_subgroup(p: u32, q: u32, i: u32) -> Result<(Arc<Group>, Example), GroupError> {
    let ex = extraspecial_example(p, q)?;
    let name = match i {
        1 => "K1",
        2 => "K2",
        _ => return Err(GroupError::Invalid("i must be 1 or 2".into())),
    };
    let k = Group::subgroup_group(&ex.group, ex.sub(name));
    Ok((k, ex))
}

/// `(C_7 x C_7) ⋊ C_3 ⋊ C_2` as affine maps of `F_7^2`; named `N` (order 49),
/// `M` (order 147).
pub fn fitthree_example() -> Example {
    let g = Group::from_generators(&Generators::Matrices {
        p: 7,
        dim: 3,
        gens: vec![
            vec![1, 0, 0, 0, 1, 0, 1, 0, 1],
            vec![2, 0, 0, 0, 4, 0, 0, 0, 1],
            vec![0, 1, 0, 1, 0, 0, 0, 0, 1],
        ],
    })
    .expect("order 294 fits");
    let n = g.o_p(7);
    let m = g.join_with(&n, &[g.generators()[1]]);
    let mut named = BTreeMap::new();
    named.insert("N".to_string(), n);
    named.insert("M".to_string(), m);
    Example { group: g, named }
}

/// Frobenius group `F_p^d ⋊ C_q` with `d` the order of `p` modulo `q`, the
/// complement acting by multiplication in `F_{p^d}`. Named `N` (the kernel)
/// and `H` (the complement).
pub fn frobenius_tower(p: u32, q: u32) -> Result<Example, GroupError> {
    if !is_prime(p as u64) || !is_prime(q as u64) || p == q {
        return Err(GroupError::Invalid("p and q must be distinct primes".into()));
    }
    let mut d = 1u32;
    let mut pw = p % q;
    while pw != 1 {
        pw = pw * p % q;
        d += 1;
    }
    let size = (p as u64).pow(d) * q as u64;
    if size > 20_000 {
        return Err(GroupError::CapExceeded { cap: 20_000 });
    }
    let m = order_q_field_matrix(p, d, q)
        .ok_or_else(|| GroupError::Invalid("no field element of order q".into()))?;
    let dim = d as usize + 1;
    let mut gens = Vec::new();
    for i in 0..d as usize {
        let mut t = identity(dim);
        t[d as usize * dim + i] = 1;
        gens.push(t);
    }
    let mut a = identity(dim);
    for r in 0..d as usize {
        for c in 0..d as usize {
            a[r * dim + c] = m[r * d as usize + c];
        }
    }
    gens.push(a);
    let g = Group::from_generators(&Generators::Matrices { p, dim, gens })?;
    let n = g.o_p(p as u64);
    let h = g.closure(&[*g.generators().last().expect("generator")]);
    let mut named = BTreeMap::new();
    named.insert("N".to_string(), n);
    named.insert("H".to_string(), h);
    Ok(Example { group: g, named })
}

fn identity(dim: usize) -> Vec<u32> {
    let mut m = vec![0; dim * dim];
    for i in 0..dim {
        m[i * dim + i] = 1;
    }
    m
}

/// A `d x d` matrix of order `q` over `F_p` with no eigenvalue 1: a power of
/// the companion matrix of an irreducible polynomial of degree `d`.
fn order_q_field_matrix(p: u32, d: u32, q: u32) -> Option<Vec<u32>> {
    let dd = d as usize;
    let total = (p as u64).pow(d) - 1;
    for code in 0..(p as u64).pow(d) {
        // monic x^d + c_{d-1} x^{d-1} + ... + c_0
        let coeffs: Vec<u32> = (0..dd).map(|i| ((code / (p as u64).pow(i as u32)) % p as u64) as u32).collect();
        if coeffs[0] == 0 || !irreducible(&coeffs, p) {
            continue;
        }
        let mut c = vec![0u32; dd * dd];
        for i in 1..dd {
            c[i * dd + i - 1] = 1;
        }
        for i in 0..dd {
            c[i * dd + dd - 1] = (p - coeffs[i]) % p;
        }
        let m = mat_pow(&c, total / q as u64, dd, p);
        if m != identity(dd) {
            return Some(m);
        }
    }
    None
}

/// Irreducibility of a monic polynomial of degree at most 3 (no roots), or
/// of higher degree by trial division by all monic polynomials of degree
/// at most half.
fn irreducible(coeffs: &[u32], p: u32) -> bool {
    let d = coeffs.len();
    let eval = |x: u32| {
        let mut acc = 1u64;
        for i in (0..d).rev() {
            acc = (acc * x as u64 + coeffs[i] as u64) % p as u64;
        }
        acc
    };
    if (0..p).any(|x| eval(x) == 0) {
        return false;
    }
    if d <= 3 {
        return true;
    }
    let mut full: Vec<u64> = coeffs.iter().map(|&c| c as u64).collect();
    full.push(1);
    for k in 2..=d / 2 {
        for code in 0..(p as u64).pow(k as u32) {
            let mut div: Vec<u64> = (0..k).map(|i| (code / (p as u64).pow(i as u32)) % p as u64).collect();
            div.push(1);
            let mut r = full.clone();
            for top in (k..r.len()).rev() {
                let c = r[top];
                if c == 0 {
                    continue;
                }
                for (i, &dv) in div.iter().enumerate() {
                    let idx = top - k + i;
                    r[idx] = (r[idx] + p as u64 * p as u64 - c * dv % p as u64) % p as u64;
                }
            }
            if r[..k].iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

fn mat_pow(m: &[u32], mut e: u64, d: usize, p: u32) -> Vec<u32> {
    let mul = |a: &[u32], b: &[u32]| {
        let mut out = vec![0u32; d * d];
        for i in 0..d {
            for j in 0..d {
                let mut s = 0u64;
                for k in 0..d {
                    s += a[i * d + k] as u64 * b[k * d + j] as u64;
                }
                out[i * d + j] = (s % p as u64) as u32;
            }
        }
        out
    };
    let mut acc = identity(d);
    let mut base = m.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &base);
        }
        base = mul(&base, &base);
        e >>= 1;
    }
    acc
}

/// `C_n ⋊ C_m` with the generator of `C_m` acting by `x -> x^r`.
pub fn metacyclic(n: u32, m: u32, r: u32) -> Result<Arc<Group>, GroupError> {
    let cn = Group::cyclic(n as usize);
    let cm = Group::cyclic(m as usize);
    let gen = cn.generators().first().copied().unwrap_or(0);
    let img = if n == 1 { 0 } else { cn.pow(gen, r as i64) };
    let action = AutomorphismAction::from_generator_images(&cn, &[vec![img]])?;
    let action = if cm.generators().is_empty() {
        AutomorphismAction::new(Vec::new())
    } else {
        action
    };
    Group::semidirect_product(&cn, &cm, &action)
}

/// Dihedral group of order `2n`.
pub fn dihedral(n: u32) -> Result<Arc<Group>, GroupError> {
    metacyclic(n, 2, n - 1)
}
