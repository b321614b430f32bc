use std::collections::VecDeque;
use std::sync::Arc;

use super::{Element, Group, IDENTITY};
use crate::error::GroupError;

/// An action of a group `H` on a group `N` by automorphisms, given by one
/// permutation of `N`'s element ids per generator of `H` (in the order of
/// [`Group::generators`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomorphismAction {
    images: Vec<Vec<Element>>,
}

impl AutomorphismAction {
    pub fn new(images: Vec<Vec<Element>>) -> Self {
        AutomorphismAction { images }
    }

    pub fn trivial(acting: &Group, normal: &Group) -> Self {
        let id: Vec<Element> = normal.elements().collect();
        AutomorphismAction {
            images: vec![id; acting.generators().len()],
        }
    }

    pub fn images(&self) -> &[Vec<Element>] {
        &self.images
    }

    /// Build each generator's automorphism from the images of `normal`'s
    /// generators. `gen_images[i][j]` is where generator `i` of the acting
    /// group sends generator `j` of `normal`.
    pub fn from_generator_images(
        normal: &Group,
        gen_images: &[Vec<Element>],
    ) -> Result<Self, GroupError> {
        let images = gen_images
            .iter()
            .map(|imgs| extend_homomorphism(normal, imgs))
            .collect::<Result<_, _>>()?;
        Ok(AutomorphismAction { images })
    }

    /// Validate the generator automorphisms and extend them to a table
    /// `h -> permutation of N` for every element `h` of the acting group.
    pub(crate) fn extend(
        &self,
        acting: &Group,
        normal: &Group,
    ) -> Result<Vec<Vec<Element>>, GroupError> {
        let gens = acting.generators();
        if gens.len() != self.images.len() {
            return Err(GroupError::InvalidGenerator(format!(
                "{} generator images for {} generators",
                self.images.len(),
                gens.len()
            )));
        }
        for img in &self.images {
            check_automorphism(normal, img)?;
        }
        let n = normal.order();
        let mut table: Vec<Option<Vec<Element>>> = vec![None; acting.order()];
        table[IDENTITY as usize] = Some(normal.elements().collect());
        let mut queue = VecDeque::from([IDENTITY]);
        while let Some(h) = queue.pop_front() {
            for (i, &g) in gens.iter().enumerate() {
                let hg = acting.mul(h, g);
                let cur = table[h as usize].as_ref().unwrap();
                let img = &self.images[i];
                let composed: Vec<Element> = (0..n).map(|x| cur[img[x] as usize]).collect();
                match &table[hg as usize] {
                    Some(existing) => {
                        if *existing != composed {
                            return Err(GroupError::RelationViolation);
                        }
                    }
                    None => {
                        table[hg as usize] = Some(composed);
                        queue.push_back(hg);
                    }
                }
            }
        }
        table
            .into_iter()
            .map(|t| t.ok_or(GroupError::Invalid("acting generators do not generate".into())))
            .collect()
    }
}

fn check_automorphism(normal: &Group, img: &[Element]) -> Result<(), GroupError> {
    let n = normal.order();
    if img.len() != n {
        return Err(GroupError::NotAutomorphism(format!(
            "image list has length {} but |N| = {n}",
            img.len()
        )));
    }
    let mut seen = vec![false; n];
    for &y in img {
        if y as usize >= n || std::mem::replace(&mut seen[y as usize], true) {
            return Err(GroupError::NotAutomorphism("not a bijection".into()));
        }
    }
    for x in normal.elements() {
        for &g in normal.generators() {
            if img[normal.mul(x, g) as usize] != normal.mul(img[x as usize], img[g as usize]) {
                return Err(GroupError::NotAutomorphism(format!(
                    "f({x}*{g}) != f({x})*f({g})"
                )));
            }
        }
    }
    Ok(())
}

/// Extend generator images to a map on all of `normal` by `f(xg) = f(x)f(g)`.
pub(crate) fn extend_homomorphism(
    normal: &Group,
    gen_images: &[Element],
) -> Result<Vec<Element>, GroupError> {
    let gens = normal.generators();
    if gens.len() != gen_images.len() {
        return Err(GroupError::NotAutomorphism(format!(
            "{} images for {} generators",
            gen_images.len(),
            gens.len()
        )));
    }
    let mut f = vec![u32::MAX; normal.order()];
    f[IDENTITY as usize] = IDENTITY;
    let mut queue = VecDeque::from([IDENTITY]);
    while let Some(x) = queue.pop_front() {
        for (j, &g) in gens.iter().enumerate() {
            let xg = normal.mul(x, g);
            let v = normal.mul(f[x as usize], gen_images[j]);
            if f[xg as usize] == u32::MAX {
                f[xg as usize] = v;
                queue.push_back(xg);
            } else if f[xg as usize] != v {
                return Err(GroupError::NotAutomorphism(
                    "generator images do not define a homomorphism".into(),
                ));
            }
        }
    }
    check_automorphism(normal, &f)?;
    Ok(f)
}

/// The conjugation action of `g` on a normal subgroup given as a group
/// realized inside `parent`.
pub fn conjugation_images(parent: &Arc<Group>, sub: &Group, g: Element) -> Vec<Element> {
    let members = sub
        .parent_members()
        .expect("subgroup realized inside parent");
    let local = |x: Element| members.binary_search(&x).expect("normal subgroup") as Element;
    members
        .iter()
        .map(|&m| local(parent.conjugate(m, parent.inv(g))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inversion_on_cyclic_group_gives_dihedral() {
        let c5 = Group::cyclic(5);
        let c2 = Group::cyclic(2);
        let inv: Vec<u32> = (0..5).map(|k| (5 - k) % 5).collect();
        let d10 =
            Group::semidirect_product(&c5, &c2, &AutomorphismAction::new(vec![inv])).unwrap();
        assert_eq!(d10.order(), 10);
        assert!(!d10.is_abelian());
    }

    #[test]
    fn non_automorphism_rejected() {
        let c5 = Group::cyclic(5);
        let c2 = Group::cyclic(2);
        let bad = vec![0, 2, 1, 3, 4];
        assert!(matches!(
            Group::semidirect_product(&c5, &c2, &AutomorphismAction::new(vec![bad])),
            Err(GroupError::NotAutomorphism(_))
        ));
    }

    #[test]
    fn relation_violation_detected() {
        // x -> 2x has order 4 on C5, not 2
        let c5 = Group::cyclic(5);
        let c2 = Group::cyclic(2);
        let dbl: Vec<u32> = (0..5).map(|k| (2 * k) % 5).collect();
        assert_eq!(
            Group::semidirect_product(&c5, &c2, &AutomorphismAction::new(vec![dbl])).unwrap_err(),
            GroupError::RelationViolation
        );
    }

    #[test]
    fn extends_from_generator_images() {
        let c7 = Group::cyclic(7);
        let a = AutomorphismAction::from_generator_images(&c7, &[vec![2]]).unwrap();
        assert_eq!(a.images()[0], vec![0, 2, 4, 6, 1, 3, 5]);
        let g = Group::semidirect_product(&c7, &Group::cyclic(3), &a).unwrap();
        assert_eq!(g.order(), 21);
    }
}
