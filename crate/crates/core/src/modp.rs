//! Arithmetic and linear algebra over prime fields with moduli below 2^62.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use pichar_cyclotomic::Cyclotomic;

use crate::numbers::is_prime;

pub fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue modulo the prime `p`.
pub fn inverse(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "inverse of zero");
    pow(a, p - 2, p)
}

pub fn from_i64(a: i64, p: u64) -> u64 {
    a.rem_euclid(p as i64) as u64
}

/// Least primitive root of the prime `p`.
pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let factors = crate::numbers::prime_factors(p - 1);
    (2..p)
        .find(|&g| factors.iter().all(|&q| pow(g, (p - 1) / q, p) != 1))
        .expect("primes have primitive roots")
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(rows: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
    let ncols = rows.first().map(Vec::len).unwrap_or(0);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = inverse(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = mul(*x, inv, p);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..ncols {
                    let v = mul(f, rows[r][j], p);
                    rows[i][j] = (rows[i][j] + p - v) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of the null space `{x : A x = 0}` of a matrix given by rows.
pub fn kernel(a: &[Vec<u64>], ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut m: Vec<Vec<u64>> = a.to_vec();
    let pivots = if m.is_empty() { Vec::new() } else { rref(&mut m, p) };
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; ncols];
            v[f] = 1;
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = (p - row[f]) % p;
            }
            v
        })
        .collect()
}

/// Characteristic polynomial (monic, coefficients from constant term up) of
/// a square matrix, via reduction to upper Hessenberg form.
pub fn charpoly(a: &[Vec<u64>], p: u64) -> Vec<u64> {
    let n = a.len();
    let mut h: Vec<Vec<u64>> = a.to_vec();
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| h[i][m - 1] != 0) else {
            continue;
        };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let inv = inverse(h[m][m - 1], p);
        for i in m + 1..n {
            if h[i][m - 1] == 0 {
                continue;
            }
            let u = mul(h[i][m - 1], inv, p);
            for j in 0..n {
                let v = mul(u, h[m][j], p);
                h[i][j] = (h[i][j] + p - v) % p;
            }
            for row in h.iter_mut() {
                let v = mul(u, row[i], p);
                row[m] = (row[m] + v) % p;
            }
        }
    }
    // p_k(x) = charpoly of the leading k x k block
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 1..=n {
        let mut next = vec![0u64; k + 1];
        let prev = &polys[k - 1];
        let d = h[k - 1][k - 1];
        for (j, &c) in prev.iter().enumerate() {
            next[j + 1] = (next[j + 1] + c) % p;
            next[j] = (next[j] + p - mul(d, c, p)) % p;
        }
        let mut t = 1u64;
        for i in (1..k).rev() {
            t = mul(t, h[i][i - 1], p);
            let coef = mul(t, h[i - 1][k - 1], p);
            if coef == 0 {
                continue;
            }
            for (j, &c) in polys[i - 1].iter().enumerate() {
                next[j] = (next[j] + p - mul(coef, c, p)) % p;
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

pub fn eval_poly(poly: &[u64], x: u64, p: u64) -> u64 {
    poly.iter().rev().fold(0, |acc, &c| (mul(acc, x, p) + c) % p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charpoly_matches_small_cases() {
        let p = 101;
        // [[2,1],[1,2]] -> x^2 - 4x + 3
        assert_eq!(charpoly(&[vec![2, 1], vec![1, 2]], p), vec![3, p - 4, 1]);
        // companion-like 3x3 with zero subdiagonal entry
        let a = vec![vec![1, 2, 3], vec![0, 4, 5], vec![0, 0, 6]];
        let cp = charpoly(&a, p);
        for r in [1, 4, 6] {
            assert_eq!(eval_poly(&cp, r, p), 0);
        }
        assert_eq!(cp[3], 1);
    }

    #[test]
    fn charpoly_dense() {
        let p = 211;
        let a = vec![vec![0, 1, 5], vec![7, 0, 2], vec![3, 3, 1]];
        let cp = charpoly(&a, p);
        // det(xI - A) at x = 10, computed directly
        let m = |i: usize, j: usize| {
            let v = if i == j { 10 + p - a[i][j] } else { p - a[i][j] };
            v % p
        };
        let det = (mul(m(0, 0), (mul(m(1, 1), m(2, 2), p) + p - mul(m(1, 2), m(2, 1), p)) % p, p)
            + p
            - mul(m(0, 1), (mul(m(1, 0), m(2, 2), p) + p - mul(m(1, 2), m(2, 0), p)) % p, p)
            + mul(m(0, 2), (mul(m(1, 0), m(2, 1), p) + p - mul(m(1, 1), m(2, 0), p)) % p, p))
            % p;
        assert_eq!(eval_poly(&cp, 10, p), det);
    }

    #[test]
    fn kernel_basis() {
        let p = 7;
        let k = kernel(&[vec![1, 2, 3]], 3, p);
        assert_eq!(k.len(), 2);
        for v in k {
            assert_eq!((v[0] + 2 * v[1] + 3 * v[2]) % p, 0);
        }
        assert_eq!(primitive_root(211), 2);
    }
}

/// Reduction of cyclotomic values modulo a prime `ℓ ≡ 1 (mod e)`.
#[derive(Clone, Debug)]
pub(crate) struct ModMap {
    pub(crate) l: u64,
    pub(crate) e: u64,
    /// `z^k` for a fixed primitive `e`-th root `z` modulo `ℓ`
    pub(crate) powers: Vec<u64>,
}

impl ModMap {
    /// The `k`-th prime `ℓ ≡ 1 (mod e)` above `2^31`.
    pub(crate) fn nth(e: u64, k: usize) -> Self {
        let mut l = (1u64 << 31) / e * e + 1;
        let mut found = 0;
        loop {
            if is_prime(l) {
                if found == k {
                    break;
                }
                found += 1;
            }
            l += e;
        }
        let z = pow(primitive_root(l), (l - 1) / e, l);
        let mut powers = Vec::with_capacity(e as usize);
        let mut acc = 1;
        for _ in 0..e {
            powers.push(acc);
            acc = mul(acc, z, l);
        }
        ModMap { l, e, powers }
    }

    pub(crate) fn rational(&self, q: &BigRational) -> Option<u64> {
        let l = BigInt::from(self.l);
        let n = q.numer().mod_floor(&l).to_u64()?;
        let d = q.denom().mod_floor(&l).to_u64()?;
        if d == 0 {
            return None;
        }
        Some(mul(n, inverse(d, self.l), self.l))
    }

    pub(crate) fn eval(&self, v: &Cyclotomic) -> Option<u64> {
        let n = v.conductor() as u64;
        if !self.e.is_multiple_of(n) {
            return None;
        }
        let step = self.e / n;
        let mut acc = 0;
        for (k, q) in v.terms() {
            let c = self.rational(q)?;
            acc = (acc + mul(c, self.powers[(*k as u64 * step) as usize], self.l)) % self.l;
        }
        Some(acc)
    }

    pub(crate) fn eval_all(&self, vs: &[Cyclotomic]) -> Option<Vec<u64>> {
        vs.iter().map(|v| self.eval(v)).collect()
    }

    /// Rational reconstruction with numerator and denominator below
    /// `sqrt(ℓ/2)`.
    pub(crate) fn reconstruct(&self, x: u64) -> Option<BigRational> {
        let bound = ((self.l / 2) as f64).sqrt() as i128;
        let (mut r0, mut r1) = (self.l as i128, x as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 >= bound {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        if t1 == 0 || t1.abs() >= bound {
            return None;
        }
        let (n, d) = if t1 < 0 { (-r1, -t1) } else { (r1, t1) };
        Some(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }
}
