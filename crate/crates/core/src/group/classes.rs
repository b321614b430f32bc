use super::{Element, Group, IDENTITY};

/// Conjugacy classes in a fixed order: the identity class first, then by
/// element order of the representative, then by representative id. The
/// representative of a class is its least element id.
#[derive(Clone, Debug)]
pub struct ConjugacyClasses {
    members: Vec<Vec<Element>>,
    class_of: Vec<u32>,
    rep_orders: Vec<u32>,
    /// `power[c][k]` = class of `rep^k`, for `k` in `0..rep_order`
    power: Vec<Vec<u32>>,
    inverse: Vec<u32>,
    group_order: usize,
}

impl ConjugacyClasses {
    pub(crate) fn compute(g: &Group) -> Self {
        let n = g.order();
        let mut class_of = vec![u32::MAX; n];
        let mut orbits: Vec<Vec<Element>> = Vec::new();
        for x in g.elements() {
            if class_of[x as usize] != u32::MAX {
                continue;
            }
            let c = orbits.len() as u32;
            class_of[x as usize] = c;
            let mut orbit = vec![x];
            let mut head = 0;
            while head < orbit.len() {
                let y = orbit[head];
                for &s in g.generators() {
                    let z = g.conjugate(y, s);
                    if class_of[z as usize] == u32::MAX {
                        class_of[z as usize] = c;
                        orbit.push(z);
                    }
                }
                head += 1;
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        let mut order: Vec<usize> = (0..orbits.len()).collect();
        order.sort_by_key(|&i| {
            let r = orbits[i][0];
            (r != IDENTITY, g.element_order(r), r)
        });
        let members: Vec<Vec<Element>> = order.iter().map(|&i| orbits[i].clone()).collect();
        for (c, m) in members.iter().enumerate() {
            for &x in m {
                class_of[x as usize] = c as u32;
            }
        }
        let rep_orders: Vec<u32> = members.iter().map(|m| g.element_order(m[0])).collect();
        let power: Vec<Vec<u32>> = members
            .iter()
            .map(|m| {
                let r = m[0];
                let mut out = Vec::new();
                let mut y = IDENTITY;
                for _ in 0..g.element_order(r) {
                    out.push(class_of[y as usize]);
                    y = g.mul(y, r);
                }
                out
            })
            .collect();
        let inverse = members
            .iter()
            .map(|m| class_of[g.inv(m[0]) as usize])
            .collect();
        ConjugacyClasses {
            members,
            class_of,
            rep_orders,
            power,
            inverse,
            group_order: n,
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self, c: usize) -> &[Element] {
        &self.members[c]
    }

    pub fn rep(&self, c: usize) -> Element {
        self.members[c][0]
    }

    pub fn reps(&self) -> Vec<Element> {
        self.members.iter().map(|m| m[0]).collect()
    }

    pub fn size(&self, c: usize) -> usize {
        self.members[c].len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.members.iter().map(Vec::len).collect()
    }

    pub fn centralizer_order(&self, c: usize) -> usize {
        self.group_order / self.members[c].len()
    }

    pub fn rep_order(&self, c: usize) -> u32 {
        self.rep_orders[c]
    }

    #[inline]
    pub fn class_of(&self, g: Element) -> usize {
        self.class_of[g as usize] as usize
    }

    /// Class of `x^k` for `x` in class `c`.
    pub fn power_class(&self, c: usize, k: i64) -> usize {
        let o = self.rep_orders[c] as i64;
        self.power[c][k.rem_euclid(o) as usize] as usize
    }

    pub fn inverse_class(&self, c: usize) -> usize {
        self.inverse[c] as usize
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }
}

impl Group {
    pub fn classes(&self) -> &ConjugacyClasses {
        self.classes.get_or_init(|| ConjugacyClasses::compute(self))
    }
}

#[cfg(test)]
mod tests {
    use super::super::Generators;
    use super::*;

    #[test]
    fn order_21_class_sizes() {
        let g = Group::from_generators(&Generators::Permutations {
            degree: 7,
            gens: vec![vec![1, 2, 3, 4, 5, 6, 0], vec![0, 2, 4, 6, 1, 3, 5]],
        })
        .unwrap();
        let cl = g.classes();
        let mut sizes = cl.sizes();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3, 3, 7, 7]);
        assert_eq!(cl.rep(0), IDENTITY);
        for c in 0..cl.len() {
            assert_eq!(cl.inverse_class(cl.inverse_class(c)), c);
            assert_eq!(cl.power_class(c, 1), c);
            assert_eq!(cl.power_class(c, -1), cl.inverse_class(c));
        }
    }

    #[test]
    fn abelian_classes_are_singletons() {
        let g = Group::cyclic(12);
        assert_eq!(g.classes().len(), 12);
    }
}
