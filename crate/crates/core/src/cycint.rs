//! Integral cyclotomic values as dense vectors in `Z[x]/(x^n - 1)`, used in
//! the inner loops of table certification and character arithmetic.

use num_traits::ToPrimitive;
use pichar_cyclotomic::Cyclotomic;

/// Arithmetic in `Z[x]/(x^n - 1)` with exact zero tests modulo `Φ_n`.
#[derive(Clone, Debug)]
pub struct CycloRing {
    n: usize,
    /// coefficients of `Φ_n`, constant term first
    phi: Vec<i64>,
}

pub type Sparse = Vec<(u32, i64)>;

impl CycloRing {
    pub fn new(n: u32) -> Self {
        CycloRing {
            n: n as usize,
            phi: cyclotomic_polynomial(n),
        }
    }

    pub fn n(&self) -> u32 {
        self.n as u32
    }

    /// Integer coefficients on powers of `x = ζ_n`, or `None` if the value has
    /// non-integral coordinates or does not lie in `Q(ζ_n)`.
    pub fn sparse(&self, v: &Cyclotomic) -> Option<Sparse> {
        let c = v.conductor() as usize;
        let n = if self.n % 4 == 2 { self.n / 2 } else { self.n };
        if n % c != 0 {
            return None;
        }
        let scale = (self.n / c) as u32;
        let mut out = Vec::with_capacity(v.terms().len());
        for (k, q) in v.terms() {
            if !q.is_integer() {
                return None;
            }
            out.push((k * scale, q.to_integer().to_i64()?));
        }
        Some(out)
    }

    pub fn conj(&self, a: &Sparse) -> Sparse {
        a.iter()
            .map(|&(k, c)| (((self.n - k as usize) % self.n) as u32, c))
            .collect()
    }

    /// `acc += scale * a * b`
    pub fn mul_acc(&self, acc: &mut [i64], a: &Sparse, b: &Sparse, scale: i64) {
        for &(i, x) in a {
            for &(j, y) in b {
                let k = (i as usize + j as usize) % self.n;
                acc[k] += scale * x * y;
            }
        }
    }

    /// `acc += scale * a * conj(b)`
    pub fn mul_conj_acc(&self, acc: &mut [i64], a: &Sparse, b: &Sparse, scale: i64) {
        for &(i, x) in a {
            for &(j, y) in b {
                let k = (i as usize + self.n - j as usize) % self.n;
                acc[k] += scale * x * y;
            }
        }
    }

    /// Remainder modulo `Φ_n`: the unique representative of degree `< φ(n)`.
    pub fn reduce(&self, a: &[i64]) -> Vec<i64> {
        let mut r: Vec<i128> = a.iter().map(|&x| x as i128).collect();
        let d = self.phi.len() - 1;
        for top in (d..r.len()).rev() {
            let c = r[top];
            if c == 0 {
                continue;
            }
            for (i, &p) in self.phi.iter().enumerate() {
                r[top - d + i] -= c * p as i128;
            }
        }
        r.truncate(d);
        r.into_iter().map(|x| x as i64).collect()
    }

    /// Whether a dense element equals the integer `c`.
    pub fn equals_integer(&self, a: &[i64], c: i64) -> bool {
        let r = self.reduce(a);
        r.first().copied().unwrap_or(0) == c && r.iter().skip(1).all(|&x| x == 0)
            || (r.is_empty() && c == 0)
    }

    pub fn zeros(&self) -> Vec<i64> {
        vec![0; self.n]
    }

    pub fn to_cyclotomic(&self, a: &[i64]) -> Cyclotomic {
        Cyclotomic::from_exponent_sum(
            self.n as u32,
            a.iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(k, &c)| (k as i64, c)),
        )
    }
}

/// Integer coefficients of the `n`-th cyclotomic polynomial, constant first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    // Φ_n = (x^n - 1) / Π_{d | n, d < n} Φ_d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = divide_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    let qd = r.len() - 1 - dd;
    let mut q = vec![0i64; qd + 1];
    for i in (0..=qd).rev() {
        let c = r[i + dd];
        q[i] = c;
        for (j, &p) in den.iter().enumerate() {
            r[i + j] -= c * p;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(15).len(), 9);
    }

    #[test]
    fn round_trip_and_zero_test() {
        let ring = CycloRing::new(15);
        let z3 = Cyclotomic::root_of_unity(3, 1);
        let s = ring.sparse(&z3).unwrap();
        assert_eq!(ring.to_cyclotomic(&{
            let mut d = ring.zeros();
            for (k, c) in &s {
                d[*k as usize] += c;
            }
            d
        }), z3);
        // 1 + ζ3 + ζ3^2 = 0
        let mut acc = ring.zeros();
        acc[0] = 1;
        acc[5] = 1;
        acc[10] = 1;
        assert!(ring.equals_integer(&acc, 0));
        assert!(ring.sparse(&Cyclotomic::root_of_unity(7, 1)).is_none());
        let ring6 = CycloRing::new(6);
        let v = ring6.sparse(&-Cyclotomic::root_of_unity(3, 1)).unwrap();
        assert_eq!(v, vec![(2, -1)]);
    }
}
