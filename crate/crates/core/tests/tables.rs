mod common;

use common::*;
use pichar_core::charops::{character_constituents, ClassFunction};
use pichar_core::chartable::{character_table, verify_table, CharacterTable};
use pichar_core::Group;
use proptest::prelude::*;

#[test]
fn degrees_match_group_algebra() {
    for (name, g) in small_groups() {
        let t = character_table(&g).unwrap();
        verify_table(&t).unwrap();
        let mut d = t.degrees();
        d.sort_unstable();
        assert_eq!(d, degrees::degrees(&g), "{name}");
    }
}

#[test]
fn gl2_3_degrees() {
    let g = gl2_3();
    assert_eq!(degrees::degrees(&g), vec![1, 1, 2, 2, 2, 3, 3, 4]);
    let mut d = character_table(&g).unwrap().degrees();
    d.sort_unstable();
    assert_eq!(d, vec![1, 1, 2, 2, 2, 3, 3, 4]);
    assert_eq!(degrees::degrees(&f21()), vec![1, 1, 1, 3, 3]);
}

#[test]
fn transposed_table_is_rejected() {
    let g = f21();
    let t = character_table(&g).unwrap();
    let k = t.len();
    let rows = (0..k)
        .map(|c| ClassFunction::new(&g, (0..k).map(|i| t.row(i).value(c).clone()).collect()))
        .collect();
    assert!(verify_table(&CharacterTable::from_rows(&g, rows)).is_err());
}

#[test]
fn standard_character_of_s3_restricts_to_nontrivial_linears() {
    let g = s3();
    let t = character_table(&g).unwrap();
    let std = t.rows().iter().find(|r| r.degree_u64() == Some(2)).unwrap();
    let c3 = Group::subgroup_group(&g, &g.derived_subgroup());
    let tc3 = character_table(&c3).unwrap();
    let cons = character_constituents(&std.restrict(&c3).unwrap(), &tc3).unwrap();
    assert_eq!(cons.len(), 2);
    for (i, m) in cons {
        assert_eq!(m, 1);
        assert!(!tc3.row(i).values().iter().all(|v| v.is_one()));
    }
}

#[test]
fn quaternion_determinant_is_trivial() {
    let g = gl2_3();
    let q = Group::subgroup_group(&g, &g.o_p(2));
    let t = character_table(&q).unwrap();
    let two = t.rows().iter().find(|r| r.degree_u64() == Some(2)).unwrap();
    assert_eq!(two.determinantal_order().unwrap(), 1);
}

fn groups() -> Vec<std::sync::Arc<Group>> {
    small_groups().into_iter().map(|(_, g)| g).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn frobenius_reciprocity(gi in 0usize..11, hi in 0usize..64, a in 0usize..64, b in 0usize..64) {
        let g = groups()[gi].clone();
        let subs = g.subgroups_up_to_conjugacy().unwrap();
        let h = Group::subgroup_group(&g, &subs[hi % subs.len()]);
        let tg = character_table(&g).unwrap();
        let th = character_table(&h).unwrap();
        let theta = th.row(a % th.len());
        let chi = tg.row(b % tg.len());
        let left = theta.induce(&g).unwrap().inner_product(chi).unwrap();
        let right = theta.inner_product(&chi.restrict(&h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn linear_times_irreducible_is_irreducible(gi in 0usize..11, a in 0usize..64, b in 0usize..64) {
        let g = groups()[gi].clone();
        let t = character_table(&g).unwrap();
        let lin = t.linear_indices();
        let lambda = t.row(lin[a % lin.len()]);
        let chi = t.row(b % t.len());
        prop_assert!(lambda.product(chi).unwrap().is_irreducible());
    }
}
