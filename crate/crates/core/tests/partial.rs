mod common;

use common::*;
use pichar_core::chartable::character_table;
use pichar_core::numbers::prime_factors;
use pichar_core::pi::{ipi_basis, ipi_basis_exhaustive, pi_classes, restrict_pi, PartialSearch, PrimeSet, SpecialSearch};
use pichar_core::workbench::Workbench;
use pichar_cyclotomic::Cyclotomic;

fn prime_sets(n: u64) -> Vec<PrimeSet> {
    let mut out = Vec::new();
    for p in prime_factors(n) {
        let s = PrimeSet::singleton(p);
        let c = s.complement_for(n);
        out.push(s);
        if !c.primes().is_empty() {
            out.push(c);
        }
    }
    out
}

#[test]
fn basis_size_is_the_number_of_pi_classes() {
    for (name, g) in small_groups() {
        let t = character_table(&g).unwrap();
        for pi in prime_sets(g.order() as u64) {
            let b = ipi_basis(&t, &pi).unwrap();
            assert_eq!(b.len(), pi_classes(&g, &pi).len(), "{name} {pi}");
            for i in 0..t.len() {
                let dec = b.decomposition_of_row(i);
                let values = restrict_pi(t.row(i), &pi);
                let mut sum = vec![Cyclotomic::zero(); b.classes().len()];
                for (j, &m) in dec.iter().enumerate() {
                    for (s, v) in sum.iter_mut().zip(b.member(j).values()) {
                        *s += &v.scale_int(m as i64);
                    }
                }
                assert_eq!(sum.as_slice(), values.values(), "{name} {pi} row {i}");
            }
        }
    }
}

#[test]
fn basis_matches_exhaustive_search() {
    for (name, g) in small_groups().into_iter().filter(|(_, g)| g.order() <= 24) {
        let t = character_table(&g).unwrap();
        for pi in prime_sets(g.order() as u64) {
            let b = ipi_basis(&t, &pi).unwrap();
            let mut fast: Vec<Vec<Cyclotomic>> = b.members().iter().map(|m| m.values().to_vec()).collect();
            let mut slow = ipi_basis_exhaustive(&t, &pi).unwrap();
            fast.sort();
            slow.sort();
            assert_eq!(fast, slow, "{name} {pi}");
        }
    }
}

#[test]
fn gl2_3_has_a_reducible_restriction() {
    let g = gl2_3();
    let t = character_table(&g).unwrap();
    let b = ipi_basis(&t, &PrimeSet::singleton(3)).unwrap();
    assert!((0..t.len()).any(|i| b.decomposition_of_row(i).iter().sum::<u64>() > 1));
}

#[test]
fn induction_commutes_with_restriction_everywhere() {
    for (name, g) in small_groups() {
        let wb = Workbench::new(&g);
        let root = wb.root();
        for pi in prime_sets(g.order() as u64) {
            let ps = PartialSearch::new(&wb, &pi);
            for h in g.subgroups_up_to_conjugacy().unwrap() {
                let node = wb.node(&h);
                let th = node.table().unwrap();
                let top_classes = pi_classes(&g, &pi);
                for theta in th.rows() {
                    let a = ps.induce_values(&root, &node, &restrict_pi(theta, &pi));
                    let full = root.induce_values(theta.values(), &node);
                    let b: Vec<Cyclotomic> = top_classes.iter().map(|&c| full[c].clone()).collect();
                    assert_eq!(a, b, "{name} {pi}");
                }
            }
        }
    }
}

#[test]
fn real_characters_of_odd_groups_are_trivial() {
    for (name, g) in small_groups().into_iter().filter(|(_, g)| g.order() % 2 == 1) {
        let t = character_table(&g).unwrap();
        for (i, chi) in t.rows().iter().enumerate() {
            if chi.is_real() {
                assert_eq!(i, 0, "{name}");
            }
        }
    }
}

#[test]
fn partial_monomiality_of_f21() {
    let g = f21();
    let wb = Workbench::new(&g);
    let mut ps = PartialSearch::new(&wb, &PrimeSet::singleton(7));
    let b = ps.top_basis().unwrap();
    assert_eq!(b.len(), 3);
    for j in 0..b.len() {
        assert!(ps.is_monomial_partial(j).unwrap());
        assert!(ps.is_super_monomial_partial(j).unwrap());
    }
}

fn is_subnormal(g: &pichar_core::Group, n: &pichar_core::SubgroupRef) -> bool {
    let mut h = g.whole();
    loop {
        let next = g.normal_closure_in(h.members(), n.members());
        if next.len() == n.len() {
            return true;
        }
        if next.len() == h.len() {
            return false;
        }
        h = next;
    }
}

#[test]
fn special_recursion_matches_subnormal_definition() {
    for (name, g) in small_groups() {
        let wb = Workbench::new(&g);
        let root = wb.root();
        let t = root.table().unwrap();
        let subnormal: Vec<_> = g
            .subgroups_up_to_conjugacy()
            .unwrap()
            .into_iter()
            .filter(|n| is_subnormal(&g, n))
            .collect();
        let mut search = SpecialSearch::new(&wb);
        for pi in prime_sets(g.order() as u64) {
            for (i, chi) in t.rows().iter().enumerate() {
                let mut want = pi.is_pi_number(chi.degree_u64().unwrap());
                for n in &subnormal {
                    let node = wb.node(n);
                    for k in node.constituents(&root.restrict_values(chi.values(), &node)).unwrap() {
                        want &= pi.is_pi_number(node.row(k).unwrap().determinantal_order().unwrap());
                    }
                }
                assert_eq!(search.is_pi_special(&pi, i).unwrap(), want, "{name} {pi} row {i}");
            }
        }
    }
}
