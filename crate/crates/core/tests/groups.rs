mod common;

use std::collections::{BTreeSet, VecDeque};

use common::*;
use pichar_core::{Generators, Group, SubgroupRef};

fn mat_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut out = vec![0; 4];
    for i in 0..2 {
        for j in 0..2 {
            out[i * 2 + j] = (0..2).map(|k| a[i * 2 + k] * b[k * 2 + j]).sum::<u32>() % p;
        }
    }
    out
}

#[test]
fn gl2_3_order_matches_closure_count() {
    let gens: Vec<Vec<u32>> = GL23_GENS.iter().map(|m| m.to_vec()).collect();
    let id = vec![1, 0, 0, 1];
    let mut seen = BTreeSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = mat_mul(&x, g, 3);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    assert_eq!(seen.len(), 48);
    assert_eq!(gl2_3().order(), 48);
}

#[test]
fn frobenius_21_classes() {
    let g = f21();
    assert_eq!(g.order(), 21);
    let mut sizes = g.classes().sizes();
    sizes.sort_unstable();
    assert_eq!(sizes, vec![1, 3, 3, 7, 7]);
    // orbit count by brute force
    let mut seen = [false; 21];
    let mut orbits = 0;
    for x in g.elements() {
        if !seen[x as usize] {
            orbits += 1;
            for y in g.elements() {
                seen[g.conjugate(x, y) as usize] = true;
            }
        }
    }
    assert_eq!(orbits, 5);
}

#[test]
fn gl2_3_mod_quaternion() {
    let g = gl2_3();
    let q = g.o_p(2);
    assert_eq!(q.len(), 8);
    let (quot, proj) = Group::quotient(&g, &q).unwrap();
    assert_eq!(quot.order(), 6);
    assert_eq!(quot.classes().len(), 3);
    for a in g.elements() {
        for b in [1u32, 5, 17] {
            let b = b % 48;
            assert_eq!(proj[g.mul(a, b) as usize], quot.mul(proj[a as usize], proj[b as usize]));
        }
    }
}

#[test]
fn fitting_heights() {
    assert_eq!(s3().fitting_height().unwrap(), 2);
    assert_eq!(s4().fitting_height().unwrap(), 3);
    assert_eq!(f21().fitting_height().unwrap(), 2);
    assert_eq!(Group::cyclic(12).fitting_height().unwrap(), 1);
    let affine = Group::from_generators(&Generators::Matrices {
        p: 7,
        dim: 3,
        gens: vec![
            vec![1, 0, 0, 0, 1, 0, 1, 0, 1],
            vec![2, 0, 0, 0, 4, 0, 0, 0, 1],
            vec![0, 1, 0, 1, 0, 0, 0, 0, 1],
        ],
    })
    .unwrap();
    assert_eq!(affine.order(), 294);
    assert_eq!(affine.fitting_height().unwrap(), 3);
}

#[test]
fn frobenius_kernels() {
    let g = f21();
    let n = g.o_p(7);
    assert!(g.is_frobenius_with_kernel(&g.whole(), &n));
    let s = s3();
    assert!(s.is_frobenius_with_kernel(&s.whole(), &s.derived_subgroup()));
    let c6 = Group::cyclic(6);
    assert!(!c6.is_frobenius_with_kernel(&c6.whole(), &c6.o_p(3)));
}

#[test]
fn normal_subgroups_are_normal_and_complete() {
    for (name, g) in small_groups() {
        let normals = g.normal_subgroups().unwrap().subgroups;
        for n in &normals {
            assert!(g.is_subgroup(n) && g.is_normal(n), "{name}");
        }
        // every normal closure of a single element is listed
        for x in g.elements() {
            let c = g.normal_closure(&[x]);
            assert!(normals.contains(&c), "{name}");
        }
    }
}

#[test]
fn subgroup_classes_of_s3() {
    let subs = s3().subgroups_up_to_conjugacy().unwrap();
    let mut orders: Vec<usize> = subs.iter().map(SubgroupRef::len).collect();
    orders.sort_unstable();
    assert_eq!(orders, vec![1, 2, 3, 6]);
}

#[test]
fn gl2_3_has_sl2_3_as_maximal() {
    let g = gl2_3();
    let maxes = g.maximal_subgroups().unwrap();
    let sl = maxes.iter().find(|m| m.len() == 24).expect("index-2 maximal subgroup");
    let h = Group::subgroup_group(&g, sl);
    assert!(!h.is_abelian());
    assert_eq!(h.o_p(2).len(), 8);
}
