//! Finite left G-sets given by action tables.

use crate::error::{Error, Result};
use crate::group::GroupRef;

/// A finite G-set. Points are `0..size`; `act(g, x)` is `g x`.
#[derive(Clone, Debug)]
pub struct GSet {
    group: GroupRef,
    size: usize,
    act: Vec<u32>,
}

impl GSet {
    /// Validates the identity and compatibility laws.
    pub fn new(group: GroupRef, size: usize, act: Vec<u32>) -> Result<GSet> {
        let n = group.order();
        if act.len() != n * size || act.iter().any(|&y| y as usize >= size.max(1)) {
            return Err(Error::Invalid("action table has the wrong shape".into()));
        }
        let x = GSet { group, size, act };
        for p in 0..size {
            if x.act(0, p) != p {
                return Err(Error::Invalid("identity does not act trivially".into()));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = x.group.mul(a, b);
                for p in 0..size {
                    if x.act(ab, p) != x.act(a, x.act(b, p)) {
                        return Err(Error::Invalid(format!(
                            "action law fails for ({a}, {b}) at point {p}"
                        )));
                    }
                }
            }
        }
        Ok(x)
    }

    pub(crate) fn new_unchecked(group: GroupRef, size: usize, act: Vec<u32>) -> GSet {
        debug_assert_eq!(act.len(), group.order() * size);
        GSet { group, size, act }
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.act[g * self.size + x] as usize
    }

    pub fn empty(group: GroupRef) -> GSet {
        GSet::new_unchecked(group, 0, Vec::new())
    }

    pub fn point(group: GroupRef) -> GSet {
        let n = group.order();
        GSet::new_unchecked(group, 1, vec![0; n])
    }

    /// Left cosets `gS` of the subgroup with element list `elems`, numbered
    /// by least member.
    pub fn cosets(group: GroupRef, elems: &[usize]) -> GSet {
        let n = group.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for g in 0..n {
            if coset_of[g] != usize::MAX {
                continue;
            }
            for &s in elems {
                coset_of[group.mul(g, s)] = reps.len();
            }
            reps.push(g);
        }
        let m = reps.len();
        let mut act = vec![0u32; n * m];
        for g in 0..n {
            for (i, &r) in reps.iter().enumerate() {
                act[g * m + i] = coset_of[group.mul(g, r)] as u32;
            }
        }
        GSet::new_unchecked(group, m, act)
    }

    pub fn regular(group: GroupRef) -> GSet {
        GSet::cosets(group, &[0])
    }

    /// Cartesian product; the pair `(x, y)` is point `x * |Y| + y`.
    pub fn product(&self, other: &GSet) -> GSet {
        assert_eq!(*self.group, *other.group, "product of sets over different groups");
        let (a, b) = (self.size, other.size);
        let n = self.group.order();
        let mut act = vec![0u32; n * a * b];
        for g in 0..n {
            for x in 0..a {
                for y in 0..b {
                    act[g * a * b + x * b + y] = (self.act(g, x) * b + other.act(g, y)) as u32;
                }
            }
        }
        GSet::new_unchecked(self.group.clone(), a * b, act)
    }

    /// Disjoint union; points of `other` follow those of `self`.
    pub fn union(&self, other: &GSet) -> GSet {
        assert_eq!(*self.group, *other.group, "union of sets over different groups");
        let (a, b) = (self.size, other.size);
        let n = self.group.order();
        let mut act = Vec::with_capacity(n * (a + b));
        for g in 0..n {
            act.extend((0..a).map(|x| self.act(g, x) as u32));
            act.extend((0..b).map(|y| (a + other.act(g, y)) as u32));
        }
        GSet::new_unchecked(self.group.clone(), a + b, act)
    }

    /// Restriction along a homomorphism `hom: K -> G` given on elements.
    pub fn restrict(&self, k: GroupRef, hom: &[usize]) -> GSet {
        let m = self.size;
        let mut act = Vec::with_capacity(k.order() * m);
        for &g in hom.iter().take(k.order()) {
            act.extend((0..m).map(|x| self.act(g, x) as u32));
        }
        GSet::new_unchecked(k, m, act)
    }

    /// Induction from a subgroup: `G x_H X` for an `H`-set `X`, where `embed`
    /// lists the images in `G` of the elements of `H`.
    pub fn induce(group: GroupRef, embed: &[usize], x: &GSet) -> GSet {
        let n = group.order();
        let mut sorted: Vec<usize> = embed.to_vec();
        sorted.sort_unstable();
        let pos = |g: usize| embed.iter().position(|&e| e == g);
        let mut coset_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for g in 0..n {
            if coset_of[g] != usize::MAX {
                continue;
            }
            for &s in &sorted {
                coset_of[group.mul(g, s)] = reps.len();
            }
            reps.push(g);
        }
        let m = x.size;
        let size = reps.len() * m;
        let mut act = vec![0u32; n * size];
        for g in 0..n {
            for (i, &r) in reps.iter().enumerate() {
                let gr = group.mul(g, r);
                let j = coset_of[gr];
                // g r = r_j h
                let h = group.mul(group.inv(reps[j]), gr);
                let hk = pos(h).expect("coset decomposition lands in the subgroup");
                for p in 0..m {
                    act[g * size + i * m + p] = (j * m + x.act(hk, p)) as u32;
                }
            }
        }
        GSet::new_unchecked(group, size, act)
    }

    /// Points fixed by every element of `elems`.
    pub fn fixed_points(&self, elems: &[usize]) -> Vec<usize> {
        (0..self.size)
            .filter(|&p| elems.iter().all(|&g| self.act(g, p) == p))
            .collect()
    }

    /// `|X^S|` for every subgroup `S`, in subgroup-lattice order.
    pub fn marks(&self) -> Vec<usize> {
        let lat = self.group.subgroups();
        lat.iter()
            .map(|s| {
                (0..self.size)
                    .filter(|&p| s.gens().iter().all(|&g| self.act(g, p) == p))
                    .count()
            })
            .collect()
    }

    pub fn is_isomorphic(&self, other: &GSet) -> bool {
        *self.group == *other.group && self.size == other.size && self.marks() == other.marks()
    }

    /// Orbits as sorted point lists, ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.size];
        let mut out = Vec::new();
        for p in 0..self.size {
            if seen[p] {
                continue;
            }
            let mut orbit: Vec<usize> = self.group.elements().map(|g| self.act(g, p)).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &q in &orbit {
                seen[q] = true;
            }
            out.push(orbit);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named_group;
    use std::sync::Arc;

    fn grp(name: &str) -> GroupRef {
        Arc::new(named_group(name, 360).unwrap())
    }

    #[test]
    fn fixed_point_examples() {
        let c2 = grp("C2");
        assert!(GSet::regular(c2.clone()).fixed_points(&[0, 1]).is_empty());
        assert_eq!(GSet::point(c2).fixed_points(&[0, 1]), vec![0]);
        let s3 = grp("S3");
        let (deg, perms) = s3.permutations().unwrap();
        let act = (0..6)
            .flat_map(|g| perms[g].iter().map(|&x| x as u32).collect::<Vec<_>>())
            .collect();
        let natural = GSet::new(s3.clone(), deg, act).unwrap();
        let t = (0..6).find(|&g| perms[g] == vec![1, 0, 2]).unwrap();
        assert_eq!(natural.fixed_points(&[0, t]), vec![2]);
        // marks on classes (1, <t>, <c3>, S3)
        let lat = s3.subgroups();
        let marks = natural.marks();
        let by_class: Vec<usize> = lat.class_reps().iter().map(|&k| marks[k]).collect();
        assert_eq!(by_class, vec![3, 1, 0, 0]);
        assert!(natural.is_isomorphic(&GSet::cosets(s3.clone(), lat.get(1).elems())));
    }

    #[test]
    fn regular_marks() {
        let c2 = grp("C2");
        assert_eq!(GSet::regular(c2.clone()).marks(), vec![2, 0]);
        assert_eq!(GSet::point(c2).marks(), vec![1, 1]);
    }

    #[test]
    fn marks_are_multiplicative_and_additive() {
        let g = grp("D8");
        let lat = g.subgroups();
        let x = GSet::cosets(g.clone(), lat.get(1).elems());
        let y = GSet::cosets(g.clone(), lat.get(5).elems());
        let (mx, my) = (x.marks(), y.marks());
        let prod: Vec<usize> = mx.iter().zip(&my).map(|(a, b)| a * b).collect();
        let sum: Vec<usize> = mx.iter().zip(&my).map(|(a, b)| a + b).collect();
        assert_eq!(x.product(&y).marks(), prod);
        assert_eq!(x.union(&y).marks(), sum);
    }

    #[test]
    fn induction_from_trivial_subgroup_is_regular() {
        let g = grp("S3");
        let one = grp("1");
        let ind = GSet::induce(g.clone(), &[0], &GSet::point(one));
        assert!(ind.is_isomorphic(&GSet::regular(g)));
    }

    #[test]
    fn induction_of_point_is_coset_space() {
        let g = grp("A4");
        let lat = g.subgroups();
        for k in 0..lat.len() {
            let elems = lat.get(k).elems();
            let h = Arc::new(g.subgroup_as_group("H", elems).unwrap());
            let ind = GSet::induce(g.clone(), elems, &GSet::point(h));
            assert!(ind.is_isomorphic(&GSet::cosets(g.clone(), elems)));
        }
    }

    #[test]
    fn invalid_actions_rejected() {
        let c2 = grp("C2");
        assert!(GSet::new(c2.clone(), 2, vec![0, 1, 0, 0]).is_err());
        assert!(GSet::new(c2, 2, vec![1, 0, 0, 1]).is_err());
    }
}
