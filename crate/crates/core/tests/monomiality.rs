mod common;

use common::*;
use pichar_core::monomial::MonomialSearch;
use pichar_core::workbench::Workbench;

#[test]
fn descent_agrees_with_brute_force() {
    for (name, g) in small_groups() {
        let wb = Workbench::new(&g);
        let n = wb.root().table().unwrap().len();
        let mut m = MonomialSearch::new(&wb);
        let whole = g.whole();
        for i in 0..n {
            let key = (whole.clone(), i);
            assert_eq!(
                m.is_monomial_at(&key).unwrap(),
                m.brute_force_monomial_at(&key).unwrap(),
                "{name} row {i}"
            );
            assert_eq!(
                m.is_super_monomial_at(&key).unwrap(),
                m.super_monomial_exhaustive_at(&key).unwrap(),
                "{name} row {i}"
            );
        }
    }
}

#[test]
fn f21_is_an_m_group_with_witnesses_in_the_kernel() {
    let g = f21();
    let wb = Workbench::new(&g);
    let t = wb.root().table().unwrap();
    let mut m = MonomialSearch::new(&wb);
    assert!(m.is_m_group().unwrap());
    assert!(m.is_super_m_group().unwrap());
    for i in 0..t.len() {
        if t.row(i).degree_u64() == Some(3) {
            let w = m.monomial_witness(i).unwrap().expect("monomial");
            assert_eq!(w.subgroup.len(), 7);
            assert!(m.primitive_inducers(i).unwrap().iter().all(|p| p.degree == 1));
        }
    }
}

#[test]
fn sl2_3_is_not_an_m_group() {
    let g = sl2_3();
    let wb = Workbench::new(&g);
    let t = wb.root().table().unwrap();
    let mut m = MonomialSearch::new(&wb);
    assert!(!m.is_m_group().unwrap());
    for i in 0..t.len() {
        if t.row(i).degree_u64() == Some(2) {
            assert!(!m.is_monomial(i).unwrap());
            assert!(m.is_primitive(i).unwrap());
        }
    }
    let v = m.m_group_verdict(&g.whole()).unwrap();
    assert_eq!(v.failures.len(), 3);
}

#[test]
fn gl2_3_is_not_an_m_group() {
    let g = gl2_3();
    let wb = Workbench::new(&g);
    let mut m = MonomialSearch::new(&wb);
    let v = m.m_group_verdict(&g.whole()).unwrap();
    assert!(!v.holds);
    let t = wb.root().table().unwrap();
    for &i in &v.failures {
        assert_eq!(t.row(i).degree_u64(), Some(2));
    }
}
