#![allow(dead_code)]

pub mod degrees;

use std::sync::Arc;

use pichar_core::{Generators, Group};

pub fn s3() -> Arc<Group> {
    Group::from_generators(&Generators::Permutations {
        degree: 3,
        gens: vec![vec![1, 2, 0], vec![1, 0, 2]],
    })
    .unwrap()
}

pub fn s4() -> Arc<Group> {
    Group::from_generators(&Generators::Permutations {
        degree: 4,
        gens: vec![vec![1, 0, 2, 3], vec![1, 2, 3, 0]],
    })
    .unwrap()
}

/// `x -> x + 1` and `x -> 2x` on seven points.
pub fn f21() -> Arc<Group> {
    Group::from_generators(&Generators::Permutations {
        degree: 7,
        gens: vec![vec![1, 2, 3, 4, 5, 6, 0], vec![0, 2, 4, 6, 1, 3, 5]],
    })
    .unwrap()
}

pub const GL23_GENS: [[u32; 4]; 2] = [[2, 0, 0, 1], [2, 1, 2, 0]];

pub fn gl2_3() -> Arc<Group> {
    Group::from_generators(&Generators::Matrices {
        p: 3,
        dim: 2,
        gens: GL23_GENS.iter().map(|m| m.to_vec()).collect(),
    })
    .unwrap()
}

pub fn sl2_3() -> Arc<Group> {
    Group::from_generators(&Generators::Matrices {
        p: 3,
        dim: 2,
        gens: vec![vec![1, 1, 0, 1], vec![0, 1, 2, 0]],
    })
    .unwrap()
}

pub fn dihedral(n: usize) -> Arc<Group> {
    let rot: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
    let refl: Vec<u32> = (0..n as u32).map(|i| (n as u32 - i) % n as u32).collect();
    Group::from_generators(&Generators::Permutations {
        degree: n,
        gens: vec![rot, refl],
    })
    .unwrap()
}

/// A small corpus of solvable groups of both parities.
pub fn small_groups() -> Vec<(&'static str, Arc<Group>)> {
    vec![
        ("C1", Group::cyclic(1)),
        ("C6", Group::cyclic(6)),
        ("C9", Group::cyclic(9)),
        ("S3", s3()),
        ("D8", dihedral(4)),
        ("D10", dihedral(5)),
        ("F21", f21()),
        ("SL2(3)", sl2_3()),
        ("S4", s4()),
        ("GL2(3)", gl2_3()),
        ("C3xS3", Group::direct_product(&Group::cyclic(3), &s3()).unwrap()),
    ]
}
