//! Integral basis bookkeeping for `Q(ζ_n)`.
//!
//! Exponents `k` of `ζ_n^k` are split into prime-power components using the
//! standard roots `ζ_q = exp(2πi/q)` for every prime power `q ∥ n`, so that
//! `k/n ≡ Σ_q a_q/q (mod 1)`. An exponent belongs to the basis when every
//! component does:
//!
//! * odd `p`, `q = p^ν`: `a_q ≥ p^(ν-1)`
//! * `p = 2`, `q = 2^ν`: `a_q < 2^(ν-1)`
//!
//! With standard roots, the basis of `Q(ζ_m)` embeds into the basis of
//! `Q(ζ_n)` component by component for `m | n` (up to the one-dimensional
//! relation on new odd primes), which keeps conductor reduction syntactic.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

/// One prime-power component of a conductor.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Component {
    pub p: u32,
    pub nu: u32,
    /// `q = p^nu`
    pub q: u32,
    /// `n / q`
    pub cofactor: u32,
    /// inverse of `n / q` modulo `q`
    pub cofactor_inv: u32,
}

impl Component {
    /// Component of exponent `k` in `Z/q`.
    #[inline]
    pub fn of(&self, k: u32) -> u32 {
        ((k as u64 % self.q as u64) * self.cofactor_inv as u64 % self.q as u64) as u32
    }

    /// `p^(nu-1)`
    #[inline]
    pub fn step(&self) -> u32 {
        self.q / self.p
    }

    #[inline]
    pub fn in_basis(&self, a: u32) -> bool {
        if self.p == 2 {
            a < self.step()
        } else {
            a >= self.step()
        }
    }
}

pub(crate) fn factor(mut n: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut nu = 0;
            while n.is_multiple_of(p) {
                n /= p;
                nu += 1;
            }
            out.push((p, nu));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub(crate) fn mod_inverse(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let (mut old_r, mut r) = (a as i64 % m as i64, m as i64);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
    }
    debug_assert_eq!(old_r, 1, "{a} not invertible mod {m}");
    old_s.rem_euclid(m as i64) as u64
}

pub(crate) fn components(n: u32) -> Vec<Component> {
    factor(n)
        .into_iter()
        .map(|(p, nu)| {
            let q = p.pow(nu);
            let cofactor = n / q;
            Component {
                p,
                nu,
                q,
                cofactor,
                cofactor_inv: mod_inverse(cofactor as u64, q as u64) as u32,
            }
        })
        .collect()
}

/// Exponents of the canonical basis of `Q(ζ_n)`, in increasing order.
pub fn basis_exponents(n: u32) -> Vec<u32> {
    let n = normalize_conductor(n);
    let comps = components(n);
    (0..n)
        .filter(|&k| comps.iter().all(|c| c.in_basis(c.of(k))))
        .collect()
}

/// Conductors congruent to 2 mod 4 describe the same field as `n/2`.
pub fn normalize_conductor(n: u32) -> u32 {
    if n % 4 == 2 {
        n / 2
    } else {
        n
    }
}

pub(crate) type Terms = BTreeMap<u32, BigRational>;

pub(crate) fn add_term(terms: &mut Terms, k: u32, c: BigRational) {
    if c.is_zero() {
        return;
    }
    match terms.entry(k) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// Rewrite raw terms over `ζ_n` (`n ≢ 2 mod 4`) into the canonical basis.
pub(crate) fn reduce_to_basis(n: u32, mut terms: Terms) -> Terms {
    if n == 1 {
        return terms;
    }
    for comp in components(n) {
        let offending: Vec<u32> = terms
            .keys()
            .copied()
            .filter(|&k| !comp.in_basis(comp.of(k)))
            .collect();
        let shift = comp.step() as u64 * comp.cofactor as u64;
        for k in offending {
            let c = match terms.remove(&k) {
                Some(c) => c,
                None => continue,
            };
            if comp.p == 2 {
                let k2 = ((k as u64 + n as u64 - shift % n as u64) % n as u64) as u32;
                add_term(&mut terms, k2, -c);
            } else {
                for i in 1..comp.p as u64 {
                    let k2 = ((k as u64 + i * shift) % n as u64) as u32;
                    add_term(&mut terms, k2, -c.clone());
                }
            }
        }
    }
    terms
}

/// Map raw terms over `ζ_n` with `n ≡ 2 mod 4` onto `ζ_(n/2)`.
pub(crate) fn halve_conductor(n: u32, terms: Terms) -> (u32, Terms) {
    debug_assert_eq!(n % 4, 2);
    let half = n / 2;
    let mut out = Terms::new();
    for (k, c) in terms {
        if k % 2 == 0 {
            add_term(&mut out, k / 2, c);
        } else {
            let k2 = (k + half) % n;
            add_term(&mut out, k2 / 2, -c);
        }
    }
    (half, out)
}

/// Try to shrink the conductor of basis-reduced terms by one prime.
fn shrink_once(n: u32, terms: &Terms) -> Option<(u32, Terms)> {
    for comp in components(n) {
        if comp.nu >= 2 {
            if terms.keys().all(|&k| k % comp.p == 0) {
                let mut out = Terms::new();
                for (k, c) in terms {
                    out.insert(k / comp.p, c.clone());
                }
                let m = n / comp.p;
                if m % 4 == 2 {
                    let (m2, out2) = halve_conductor(m, out);
                    return Some((m2, out2));
                }
                return Some((m, out));
            }
        } else if comp.p != 2 {
            // the p-component must run over all of 1..p-1 with a common coefficient
            let mut groups: BTreeMap<u32, (u32, &BigRational, bool)> = BTreeMap::new();
            let mut ok = true;
            for (&k, c) in terms {
                let a = comp.of(k);
                let back = ((comp.p - a) as u64 * comp.cofactor as u64) % n as u64;
                let k0 = ((k as u64 + back) % n as u64) as u32;
                let entry = groups.entry(k0).or_insert((0, c, true));
                entry.0 += 1;
                if entry.1 != c {
                    entry.2 = false;
                }
                if !entry.2 {
                    ok = false;
                    break;
                }
            }
            if ok && groups.values().all(|(count, _, same)| *same && *count == comp.p - 1) {
                let mut out = Terms::new();
                for (k0, (_, c, _)) in groups {
                    debug_assert_eq!(k0 % comp.p, 0);
                    out.insert(k0 / comp.p, -c.clone());
                }
                return Some((n / comp.p, out));
            }
        }
    }
    None
}

/// Full canonicalization: basis reduction followed by conductor minimization.
pub(crate) fn canonicalize(n: u32, terms: Terms) -> (u32, Terms) {
    let (mut n, mut terms) = if n % 4 == 2 {
        halve_conductor(n, terms)
    } else {
        (n, terms)
    };
    terms = reduce_to_basis(n, terms);
    if terms.is_empty() {
        return (1, terms);
    }
    while let Some((m, t)) = shrink_once(n, &terms) {
        n = m;
        terms = t;
    }
    (n, terms)
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u32, b: u32) -> u32 {
    (a as u64 / gcd(a as u64, b as u64) * b as u64) as u32
}

pub(crate) fn euler_phi(n: u32) -> u32 {
    factor(n)
        .into_iter()
        .fold(1, |acc, (p, nu)| acc * (p - 1) * p.pow(nu - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_sizes_match_totient() {
        for n in 1..=120u32 {
            if n % 4 == 2 {
                continue;
            }
            assert_eq!(basis_exponents(n).len() as u32, euler_phi(n), "n = {n}");
        }
    }

    #[test]
    fn small_bases() {
        assert_eq!(basis_exponents(1), vec![0]);
        assert_eq!(basis_exponents(3), vec![1, 2]);
        assert_eq!(basis_exponents(4), vec![0, 1]);
        assert_eq!(basis_exponents(8), vec![0, 1, 2, 3]);
    }

    #[test]
    fn inverse_mod() {
        assert_eq!(mod_inverse(3, 7), 5);
        assert_eq!(mod_inverse(5, 1), 0);
    }
}
