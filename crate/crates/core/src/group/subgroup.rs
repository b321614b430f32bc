use std::hash::{Hash, Hasher};

use super::Element;

/// A subset of a group's elements, stored both as a sorted member list and
/// as a bitset over the parent's ids.
#[derive(Clone, Debug)]
pub struct SubgroupRef {
    members: Vec<Element>,
    bits: Vec<u64>,
}

impl PartialEq for SubgroupRef {
    fn eq(&self, other: &Self) -> bool {
        self.bits == other.bits
    }
}

impl Eq for SubgroupRef {}

impl Hash for SubgroupRef {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.bits.hash(state);
    }
}

impl PartialOrd for SubgroupRef {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SubgroupRef {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.members
            .len()
            .cmp(&other.members.len())
            .then_with(|| self.members.cmp(&other.members))
    }
}

impl SubgroupRef {
    pub fn from_mask(mask: Vec<bool>) -> Self {
        let mut bits = vec![0u64; mask.len().div_ceil(64)];
        let mut members = Vec::new();
        for (i, &b) in mask.iter().enumerate() {
            if b {
                bits[i / 64] |= 1 << (i % 64);
                members.push(i as Element);
            }
        }
        SubgroupRef { members, bits }
    }

    /// `members` need not be sorted; duplicates are removed.
    pub fn from_sorted(mut members: Vec<Element>, parent_order: usize) -> Self {
        members.sort_unstable();
        members.dedup();
        let mut bits = vec![0u64; parent_order.div_ceil(64)];
        for &m in &members {
            bits[m as usize / 64] |= 1 << (m % 64);
        }
        SubgroupRef { members, bits }
    }

    pub fn members(&self) -> &[Element] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    #[inline]
    pub fn contains(&self, g: Element) -> bool {
        (g as usize / 64) < self.bits.len() && self.bits[g as usize / 64] >> (g % 64) & 1 == 1
    }

    pub fn bits(&self) -> &[u64] {
        &self.bits
    }

    pub fn is_subset(&self, other: &SubgroupRef) -> bool {
        self.bits
            .iter()
            .zip(&other.bits)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &SubgroupRef) -> SubgroupRef {
        let members = self
            .members
            .iter()
            .copied()
            .filter(|&g| other.contains(g))
            .collect();
        SubgroupRef::from_sorted(members, self.bits.len() * 64)
            .with_width(self.bits.len())
    }

    fn with_width(mut self, words: usize) -> Self {
        self.bits.resize(words, 0);
        self
    }
}
