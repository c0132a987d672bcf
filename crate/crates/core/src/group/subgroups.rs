use std::collections::HashMap;

use super::Group;

/// A subgroup of a parent group, stored as its sorted element list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    elems: Vec<usize>,
    mask: Vec<bool>,
    gens: Vec<usize>,
}

impl Subgroup {
    fn new(parent_order: usize, mut elems: Vec<usize>, gens: Vec<usize>) -> Subgroup {
        elems.sort_unstable();
        let mut mask = vec![false; parent_order];
        for &x in &elems {
            mask[x] = true;
        }
        Subgroup { elems, mask, gens }
    }

    pub fn elems(&self) -> &[usize] {
        &self.elems
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.mask[x]
    }

    /// A generating set, as found during enumeration.
    pub fn gens(&self) -> &[usize] {
        &self.gens
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elems.len() <= other.elems.len() && self.elems.iter().all(|&x| other.mask[x])
    }
}

/// All subgroups of a group with their conjugation action.
///
/// Subgroups are sorted by order, then by element list. Conjugacy classes
/// are numbered by their first member.
#[derive(Debug)]
pub struct SubgroupLattice {
    subs: Vec<Subgroup>,
    index: HashMap<Vec<usize>, usize>,
    conj: Vec<u32>,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
    cyclic_of: Vec<usize>,
    group_order: usize,
}

impl SubgroupLattice {
    pub(super) fn new(g: &Group) -> SubgroupLattice {
        let n = g.order();
        let mut found: Vec<(Vec<usize>, Vec<usize>)> = vec![(vec![0], vec![])];
        let mut seen: HashMap<Vec<usize>, ()> = HashMap::new();
        seen.insert(vec![0], ());
        let mut i = 0;
        while i < found.len() {
            let (elems, gens) = found[i].clone();
            let mut mask = vec![false; n];
            for &x in &elems {
                mask[x] = true;
            }
            for x in 0..n {
                if mask[x] {
                    continue;
                }
                let mut new_gens = gens.clone();
                new_gens.push(x);
                let closed = g.closure(&new_gens);
                if seen.insert(closed.clone(), ()).is_none() {
                    found.push((closed, new_gens));
                }
            }
            i += 1;
        }
        found.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
        let subs: Vec<Subgroup> = found
            .into_iter()
            .map(|(e, gens)| Subgroup::new(n, e, gens))
            .collect();
        let index: HashMap<Vec<usize>, usize> = subs
            .iter()
            .enumerate()
            .map(|(k, s)| (s.elems.clone(), k))
            .collect();
        let m = subs.len();
        let mut conj = vec![0u32; n * m];
        for x in 0..n {
            for (k, s) in subs.iter().enumerate() {
                let mut c: Vec<usize> = s.elems.iter().map(|&y| g.conj(x, y)).collect();
                c.sort_unstable();
                conj[x * m + k] = index[&c] as u32;
            }
        }
        let mut class_of = vec![usize::MAX; m];
        let mut classes = Vec::new();
        for k in 0..m {
            if class_of[k] != usize::MAX {
                continue;
            }
            let mut members: Vec<usize> = (0..n).map(|x| conj[x * m + k] as usize).collect();
            members.sort_unstable();
            members.dedup();
            for &j in &members {
                class_of[j] = classes.len();
            }
            classes.push(members);
        }
        let cyclic_of = (0..n).map(|x| index[&g.closure(&[x])]).collect();
        SubgroupLattice {
            subs,
            index,
            conj,
            class_of,
            classes,
            cyclic_of,
            group_order: n,
        }
    }

    pub fn len(&self) -> usize {
        self.subs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subs.is_empty()
    }

    pub fn get(&self, k: usize) -> &Subgroup {
        &self.subs[k]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Subgroup> {
        self.subs.iter()
    }

    /// Index of the subgroup with the given sorted element list.
    pub fn index_of(&self, elems: &[usize]) -> Option<usize> {
        self.index.get(elems).copied()
    }

    /// Index of the subgroup made of the elements marked in `mask`.
    pub fn index_of_mask(&self, mask: &[bool]) -> Option<usize> {
        let elems: Vec<usize> = (0..mask.len()).filter(|&x| mask[x]).collect();
        self.index_of(&elems)
    }

    pub fn trivial(&self) -> usize {
        0
    }

    pub fn whole(&self) -> usize {
        self.subs.len() - 1
    }

    /// Index of `x S x^-1`.
    #[inline]
    pub fn conj(&self, x: usize, s: usize) -> usize {
        self.conj[x * self.subs.len() + s] as usize
    }

    pub fn class_of(&self, s: usize) -> usize {
        self.class_of[s]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// First member of each conjugacy class.
    pub fn class_reps(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c[0]).collect()
    }

    /// Index of the cyclic subgroup generated by `x`.
    pub fn cyclic(&self, x: usize) -> usize {
        self.cyclic_of[x]
    }

    pub fn normalizer_order(&self, s: usize) -> usize {
        self.group_order / self.classes[self.class_of[s]].len()
    }

    /// Elements normalizing subgroup `s`.
    pub fn normalizer(&self, s: usize) -> Vec<usize> {
        (0..self.group_order)
            .filter(|&x| self.conj(x, s) == s)
            .collect()
    }

    pub fn is_normal(&self, s: usize) -> bool {
        self.classes[self.class_of[s]].len() == 1
    }

    pub fn intersection(&self, a: usize, b: usize) -> usize {
        let sb = &self.subs[b];
        let elems: Vec<usize> = self.subs[a]
            .elems
            .iter()
            .copied()
            .filter(|&x| sb.contains(x))
            .collect();
        self.index[&elems]
    }

    /// Index of the subgroup generated by two subgroups.
    pub fn join(&self, g: &Group, a: usize, b: usize) -> usize {
        let mut gens = self.subs[a].gens.clone();
        gens.extend_from_slice(&self.subs[b].gens);
        self.index[&g.closure(&gens)]
    }
}
