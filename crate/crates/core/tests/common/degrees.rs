//! Irreducible degrees from the group algebra over a splitting prime field,
//! using only the multiplication of the group: split the center with a
//! generic central element, then `d^2` is the rank of each primitive
//! central idempotent acting on `F_p[G]`.

use pichar_core::Group;

fn pw(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

fn inv(a: u64, p: u64) -> u64 {
    pw(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn rank(mut m: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, piv);
        let iv = inv(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = *x * iv % p;
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..cols {
                    m[i][j] = (m[i][j] + p * p - f * m[r][j] % p) % p;
                }
            }
        }
        r += 1;
    }
    r
}

/// Null space of a square matrix over `F_p`.
fn kernel(m: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = m.len();
    let mut a = m.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(piv) = (r..n).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let iv = inv(a[r][c], p);
        for x in a[r].iter_mut() {
            *x = *x * iv % p;
        }
        for i in 0..n {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for j in 0..n {
                    a[i][j] = (a[i][j] + p * p - f * a[r][j] % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0; n];
            v[f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - a[i][f]) % p;
            }
            v
        })
        .collect()
}

/// Product in `F_p[G]` of elements given by coefficient vectors.
fn alg_mul(g: &Group, a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0; a.len()];
    for (x, &ax) in a.iter().enumerate() {
        if ax == 0 {
            continue;
        }
        for (y, &by) in b.iter().enumerate() {
            if by != 0 {
                let z = g.mul(x as u32, y as u32) as usize;
                out[z] = (out[z] + ax * by) % p;
            }
        }
    }
    out
}

/// Sorted irreducible degrees of `g`.
pub fn degrees(g: &Group) -> Vec<u64> {
    let n = g.order();
    let e = g.exponent() as u64;
    let mut p = e + 1;
    while !(is_prime(p) && p > 2 * n as u64) {
        p += e;
    }
    // class sums
    let mut seen = vec![false; n];
    let mut sums: Vec<Vec<u64>> = Vec::new();
    for x in 0..n as u32 {
        if seen[x as usize] {
            continue;
        }
        let mut v = vec![0; n];
        for y in 0..n as u32 {
            let c = g.mul(g.mul(g.inv(y), x), y) as usize;
            if !seen[c] {
                seen[c] = true;
                v[c] = 1;
            }
        }
        sums.push(v);
    }
    let k = sums.len();
    // coordinates in the class-sum basis: one representative per class
    let reps: Vec<usize> = sums.iter().map(|v| v.iter().position(|&c| c == 1).unwrap()).collect();
    let coords = |v: &[u64]| reps.iter().map(|&r| v[r]).collect::<Vec<u64>>();
    let combine = |c: &[u64]| {
        let mut v = vec![0; n];
        for (i, &ci) in c.iter().enumerate() {
            for (x, s) in sums[i].iter().enumerate() {
                v[x] = (v[x] + ci * s) % p;
            }
        }
        v
    };
    let mut seed = 12345u64;
    for _attempt in 0..50 {
        let z: Vec<u64> = (0..k)
            .map(|_| {
                seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (seed >> 33) % p
            })
            .collect();
        let zv = combine(&z);
        // matrix of multiplication by z on the center, columns = images
        let cols: Vec<Vec<u64>> = sums.iter().map(|s| coords(&alg_mul(g, &zv, s, p))).collect();
        let mut eig = Vec::new();
        for lam in 0..p {
            let m: Vec<Vec<u64>> = (0..k)
                .map(|i| (0..k).map(|j| (cols[j][i] + p - if i == j { lam } else { 0 }) % p).collect())
                .collect();
            let ker = kernel(&m, p);
            if ker.len() > 1 {
                break;
            }
            if let Some(v) = ker.into_iter().next() {
                eig.push(v);
            }
        }
        if eig.len() != k {
            continue;
        }
        let mut out = Vec::new();
        for v in eig {
            let vv = combine(&v);
            let sq = alg_mul(g, &vv, &vv, p);
            let i = (0..n).find(|&x| vv[x] != 0).unwrap();
            let a = sq[i] * inv(vv[i], p) % p;
            let idem: Vec<u64> = vv.iter().map(|&x| x * inv(a, p) % p).collect();
            let rows: Vec<Vec<u64>> = (0..n)
                .map(|x| {
                    let mut basis = vec![0; n];
                    basis[x] = 1;
                    alg_mul(g, &idem, &basis, p)
                })
                .collect();
            let r = rank(rows, p) as u64;
            let d = (r as f64).sqrt().round() as u64;
            assert_eq!(d * d, r, "rank of a central idempotent is a square");
            out.push(d);
        }
        out.sort_unstable();
        return out;
    }
    panic!("no generic central element found");
}
