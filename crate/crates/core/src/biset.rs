//! Right-free bisets, their composition, and tensor induction of sets.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{Group, GroupRef};
use crate::gset::GSet;

/// A finite right-free `(G, H)`-biset with explicit action tables.
///
/// `H`-orbits are represented by their least point; `orbit_reps()[i]` is
/// the representative `u_i`, and every point is `u_i h` for a unique `h`.
#[derive(Clone, Debug)]
pub struct Biset {
    left: GroupRef,
    right: GroupRef,
    size: usize,
    lact: Vec<u32>,
    ract: Vec<u32>,
    reps: Vec<usize>,
    /// point -> (orbit index, h) with point = reps[orbit] * h
    coords: Vec<(u32, u32)>,
}

/// An element `(h_1, ..., h_n; pi)` of the wreath product `H wr S_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WreathElt {
    pub hs: Vec<usize>,
    /// `perm[i] = pi(i)`, zero-based.
    pub perm: Vec<usize>,
}

impl WreathElt {
    pub fn identity(n: usize) -> WreathElt {
        WreathElt {
            hs: vec![0; n],
            perm: (0..n).collect(),
        }
    }

    /// `(h; pi)(k; sigma) = (h_1 k_{pi^-1(1)}, ..., h_n k_{pi^-1(n)}; pi sigma)`
    pub fn mul(&self, h: &Group, other: &WreathElt) -> WreathElt {
        let n = self.perm.len();
        let mut inv = vec![0; n];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        WreathElt {
            hs: (0..n).map(|i| h.mul(self.hs[i], other.hs[inv[i]])).collect(),
            perm: (0..n).map(|i| self.perm[other.perm[i]]).collect(),
        }
    }
}

/// An `H`-invariant subset of a biset together with its stabilizer in `G`.
#[derive(Clone, Debug)]
pub struct InvariantSubset {
    /// Bit `i` set when the `H`-orbit of `u_i` is included.
    pub mask: u64,
    pub points: Vec<usize>,
    /// Sorted elements of `G` mapping the subset to itself.
    pub stabilizer: Vec<usize>,
    /// Index of the `G`-orbit this subset belongs to.
    pub orbit: usize,
}

/// Whether `embed` is an injective homomorphism `H -> G` on element indices.
fn embedding_is_hom(g: &Group, h: &Group, embed: &[usize]) -> bool {
    let mut image = embed.to_vec();
    image.sort_unstable();
    image.dedup();
    embed.len() == h.order()
        && image.len() == embed.len()
        && image.iter().all(|&x| x < g.order())
        && h.elements()
            .all(|a| h.elements().all(|b| embed[h.mul(a, b)] == g.mul(embed[a], embed[b])))
}

impl Biset {
    /// Validates both action laws, commutation and right-freeness.
    pub fn new(
        left: GroupRef,
        right: GroupRef,
        size: usize,
        lact: Vec<u32>,
        ract: Vec<u32>,
    ) -> Result<Biset> {
        if lact.len() != left.order() * size || ract.len() != right.order() * size {
            return Err(Error::InvalidBiset("action tables have the wrong shape".into()));
        }
        if lact.iter().chain(&ract).any(|&p| p as usize >= size) {
            return Err(Error::InvalidBiset("action table entry out of range".into()));
        }
        let l = |g: usize, u: usize| lact[g * size + u] as usize;
        let r = |u: usize, h: usize| ract[h * size + u] as usize;
        for u in 0..size {
            if l(0, u) != u || r(u, 0) != u {
                return Err(Error::InvalidBiset("identity does not act trivially".into()));
            }
            for a in left.elements() {
                for b in left.elements() {
                    if l(left.mul(a, b), u) != l(a, l(b, u)) {
                        return Err(Error::InvalidBiset("left action law fails".into()));
                    }
                }
                for h in right.elements() {
                    if l(a, r(u, h)) != r(l(a, u), h) {
                        return Err(Error::InvalidBiset("actions do not commute".into()));
                    }
                }
            }
            for a in right.elements() {
                for b in right.elements() {
                    if r(u, right.mul(a, b)) != r(r(u, a), b) {
                        return Err(Error::InvalidBiset("right action law fails".into()));
                    }
                }
                if a != 0 && r(u, a) == u {
                    return Err(Error::InvalidBiset("right action is not free".into()));
                }
            }
        }
        Ok(Self::assemble(left, right, size, lact, ract))
    }

    fn assemble(
        left: GroupRef,
        right: GroupRef,
        size: usize,
        lact: Vec<u32>,
        ract: Vec<u32>,
    ) -> Biset {
        let mut coords = vec![(u32::MAX, 0u32); size];
        let mut reps = Vec::new();
        for u in 0..size {
            if coords[u].0 != u32::MAX {
                continue;
            }
            let i = reps.len() as u32;
            for h in right.elements() {
                coords[ract[h * size + u] as usize] = (i, h as u32);
            }
            reps.push(u);
        }
        Biset {
            left,
            right,
            size,
            lact,
            ract,
            reps,
            coords,
        }
    }

    pub fn left(&self) -> &GroupRef {
        &self.left
    }

    pub fn right(&self) -> &GroupRef {
        &self.right
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// `g u`
    #[inline]
    pub fn lact(&self, g: usize, u: usize) -> usize {
        self.lact[g * self.size + u] as usize
    }

    /// `u h`
    #[inline]
    pub fn ract(&self, u: usize, h: usize) -> usize {
        self.ract[h * self.size + u] as usize
    }

    /// Least point of each `H`-orbit, increasing; `|U/H|` is its length.
    pub fn orbit_reps(&self) -> &[usize] {
        &self.reps
    }

    pub fn num_orbits(&self) -> usize {
        self.reps.len()
    }

    /// `(i, h)` with `u = u_i h`.
    #[inline]
    pub fn coords(&self, u: usize) -> (usize, usize) {
        let (i, h) = self.coords[u];
        (i as usize, h as usize)
    }

    /// `phi_u(g)`: the `h` with `g u = u h`, if `g` lies in `^uH`.
    #[inline]
    pub fn phi(&self, u: usize, g: usize) -> Option<usize> {
        let (i, hu) = self.coords(u);
        let (j, hw) = self.coords(self.lact(g, u));
        (i == j).then(|| self.right.mul(self.right.inv(hu), hw))
    }

    /// Images `g u_i = u_{pi(i)} h_i` as `(pi, (h_i))`.
    pub fn permutation_data(&self, g: usize) -> (Vec<usize>, Vec<usize>) {
        self.reps
            .iter()
            .map(|&u| self.coords(self.lact(g, u)))
            .unzip()
    }

    /// The wreath-product image of `g` for the transversal of least points.
    pub fn wreath_theta(&self, g: usize) -> WreathElt {
        let (perm, hs) = self.permutation_data(g);
        let n = perm.len();
        let mut inv = vec![0; n];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        WreathElt {
            hs: (0..n).map(|i| hs[inv[i]]).collect(),
            perm,
        }
    }

    /// `G` as a `(G, H)`-biset for an embedding `H -> G` (induction).
    pub fn induction(g: GroupRef, h: GroupRef, embed: &[usize]) -> Result<Biset> {
        if !embedding_is_hom(&g, &h, embed) {
            return Err(Error::InvalidBiset("not a group embedding".into()));
        }
        let n = g.order();
        let lact = (0..n).flat_map(|a| (0..n).map(move |u| (a, u))).map(|(a, u)| g.mul(a, u) as u32).collect();
        let ract = embed
            .iter()
            .flat_map(|&e| (0..n).map(move |u| (u, e)))
            .map(|(u, e)| g.mul(u, e) as u32)
            .collect();
        Ok(Self::assemble(g, h, n, lact, ract))
    }

    /// `G` as an `(H, G)`-biset for an embedding `H -> G` (restriction).
    pub fn restriction(g: GroupRef, h: GroupRef, embed: &[usize]) -> Result<Biset> {
        if !embedding_is_hom(&g, &h, embed) {
            return Err(Error::InvalidBiset("not a group embedding".into()));
        }
        let n = g.order();
        let lact = embed
            .iter()
            .flat_map(|&e| (0..n).map(move |u| (e, u)))
            .map(|(e, u)| g.mul(e, u) as u32)
            .collect();
        let ract = (0..n).flat_map(|b| (0..n).map(move |u| (u, b))).map(|(u, b)| g.mul(u, b) as u32).collect();
        Ok(Self::assemble(h, g, n, lact, ract))
    }

    /// `G/N` as a `(G, G/N)`-biset for the projection `proj: G -> G/N`.
    pub fn inflation(g: GroupRef, q: GroupRef, proj: &[usize]) -> Result<Biset> {
        let m = q.order();
        if proj.len() != g.order()
            || !g.elements().all(|a| g.elements().all(|b| proj[g.mul(a, b)] == q.mul(proj[a], proj[b])))
        {
            return Err(Error::InvalidBiset("not a group homomorphism".into()));
        }
        let lact = g
            .elements()
            .flat_map(|a| (0..m).map(move |u| (a, u)))
            .map(|(a, u)| q.mul(proj[a], u) as u32)
            .collect();
        let ract = (0..m).flat_map(|b| (0..m).map(move |u| (u, b))).map(|(u, b)| q.mul(u, b) as u32).collect();
        Ok(Self::assemble(g, q, m, lact, ract))
    }

    /// The graph biset of an isomorphism `iso: H -> G`: `G` with
    /// `g . u . h = g u iso(h)`.
    pub fn isomorphism(g: GroupRef, h: GroupRef, iso: &[usize]) -> Result<Biset> {
        let mut image = iso.to_vec();
        image.sort_unstable();
        image.dedup();
        if g.order() != h.order() || image.len() != g.order() {
            return Err(Error::InvalidBiset("not a bijection".into()));
        }
        Self::induction(g, h, iso)
    }

    /// `G` as a `(G, G)`-biset.
    pub fn identity(g: GroupRef) -> Biset {
        let id: Vec<usize> = g.elements().collect();
        Self::induction(g.clone(), g, &id).expect("identity is an embedding")
    }

    /// `U x_H V`, with the orbit of `(u_i h, v)` stored as point `(i, h v)`.
    pub fn compose(&self, v: &Biset) -> Result<Biset> {
        if *self.right != *v.left {
            return Err(Error::InvalidBiset(format!(
                "middle groups differ: {} and {}",
                self.right.name(),
                v.left.name()
            )));
        }
        let n = self.num_orbits();
        let m = v.size;
        let size = n * m;
        let mut lact = vec![0u32; self.left.order() * size];
        for g in self.left.elements() {
            let (perm, hs) = self.permutation_data(g);
            for i in 0..n {
                for p in 0..m {
                    lact[g * size + i * m + p] = (perm[i] * m + v.lact(hs[i], p)) as u32;
                }
            }
        }
        let mut ract = vec![0u32; v.right.order() * size];
        for k in v.right.elements() {
            for i in 0..n {
                for p in 0..m {
                    ract[k * size + i * m + p] = (i * m + v.ract(p, k)) as u32;
                }
            }
        }
        Ok(Self::assemble(self.left.clone(), v.right.clone(), size, lact, ract))
    }

    /// Disjoint union; points of `other` follow those of `self`.
    pub fn union(&self, other: &Biset) -> Result<Biset> {
        if *self.left != *other.left || *self.right != *other.right {
            return Err(Error::InvalidBiset("union of bisets over different groups".into()));
        }
        let (a, b) = (self.size, other.size);
        let size = a + b;
        let mut lact = Vec::with_capacity(self.left.order() * size);
        for g in self.left.elements() {
            lact.extend((0..a).map(|u| self.lact(g, u) as u32));
            lact.extend((0..b).map(|u| (a + other.lact(g, u)) as u32));
        }
        let mut ract = Vec::with_capacity(self.right.order() * size);
        for h in self.right.elements() {
            ract.extend((0..a).map(|u| self.ract(u, h) as u32));
            ract.extend((0..b).map(|u| (a + other.ract(u, h)) as u32));
        }
        Ok(Self::assemble(self.left.clone(), self.right.clone(), size, lact, ract))
    }

    /// The sub-biset on an `H`-invariant point set, as a biset for the
    /// subgroup `sub` of `G` (given by `embed`, which must stabilize it).
    pub fn restrict_to(&self, sub: GroupRef, embed: &[usize], points: &[usize]) -> Result<Biset> {
        let mut index = vec![usize::MAX; self.size];
        for (k, &p) in points.iter().enumerate() {
            index[p] = k;
        }
        let size = points.len();
        let mut lact = Vec::with_capacity(sub.order() * size);
        for &g in embed {
            for &p in points {
                let q = index[self.lact(g, p)];
                if q == usize::MAX {
                    return Err(Error::InvalidBiset("subset is not stable".into()));
                }
                lact.push(q as u32);
            }
        }
        let mut ract = Vec::with_capacity(self.right.order() * size);
        for h in self.right.elements() {
            for &p in points {
                let q = index[self.ract(p, h)];
                if q == usize::MAX {
                    return Err(Error::InvalidBiset("subset is not right-invariant".into()));
                }
                ract.push(q as u32);
            }
        }
        Ok(Self::assemble(sub, self.right.clone(), size, lact, ract))
    }

    /// `U` as a `G x K`-set via `(g, k) u = g u k^-1`, over the given product
    /// group (numbered as in [`Group::direct_product`]).
    pub fn as_gset(&self, product: GroupRef) -> GSet {
        let k = self.right.order();
        let mut act = Vec::with_capacity(product.order() * self.size);
        for x in product.elements() {
            let (g, h) = (x / k, x % k);
            let hinv = self.right.inv(h);
            act.extend((0..self.size).map(|u| self.ract(self.lact(g, u), hinv) as u32));
        }
        GSet::new_unchecked(product, self.size, act)
    }

    /// Isomorphism test through marks of the associated `G x K`-sets.
    pub fn is_isomorphic(&self, other: &Biset) -> bool {
        if *self.left != *other.left || *self.right != *other.right || self.size != other.size {
            return false;
        }
        let product = Arc::new(Group::direct_product(&self.left, &self.right).expect("product"));
        self.as_gset(product.clone()).marks() == other.as_gset(product).marks()
    }

    /// One representative (the least point) of each `(S, T)`-orbit, for
    /// element lists `s` of `G` and `t` of `H`.
    pub fn double_cosets(&self, s: &[usize], t: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.size];
        let mut reps = Vec::new();
        for u in 0..self.size {
            if seen[u] {
                continue;
            }
            reps.push(u);
            seen[u] = true;
            let mut stack = vec![u];
            while let Some(w) = stack.pop() {
                for &g in s {
                    let y = self.lact(g, w);
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
                for &h in t {
                    let y = self.ract(w, h);
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        reps
    }

    /// Representatives of `S\U/H` as `H`-orbit indices `i` (the point is
    /// `u_i`), least index per orbit of `S` on `U/H`.
    pub fn double_coset_orbits(&self, s: &[usize]) -> Vec<usize> {
        let n = self.num_orbits();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for i in 0..n {
            if seen[i] {
                continue;
            }
            out.push(i);
            seen[i] = true;
            let mut stack = vec![i];
            while let Some(j) = stack.pop() {
                for &g in s {
                    let k = self.coords(self.lact(g, self.reps[j])).0;
                    if !seen[k] {
                        seen[k] = true;
                        stack.push(k);
                    }
                }
            }
        }
        out
    }

    /// For a point `u` and element list `s` of a subgroup `S` of `G`:
    /// the elements of `S` meeting `^uH` with their `phi_u` images, and `S^u`.
    pub fn stabilizer_transport(&self, u: usize, s: &[usize]) -> (Vec<(usize, usize)>, Vec<usize>) {
        let pairs: Vec<(usize, usize)> = s
            .iter()
            .filter_map(|&g| self.phi(u, g).map(|h| (g, h)))
            .collect();
        let mut image: Vec<usize> = pairs.iter().map(|&(_, h)| h).collect();
        image.sort_unstable();
        image.dedup();
        (pairs, image)
    }

    /// Tensor induction of an `H`-set: `X^n` with
    /// `g (x_1, ..., x_n) = (y_1, ..., y_n)`, `y_{pi(i)} = h_i x_i`.
    /// The tuple `(x_1, ..., x_n)` is point `sum x_i |X|^(n-1-i)`.
    pub fn tensor_induce_set(&self, x: &GSet) -> Result<GSet> {
        if **x.group() != *self.right {
            return Err(Error::InvalidBiset("set is over the wrong group".into()));
        }
        let n = self.num_orbits();
        let m = x.size();
        let size = m
            .checked_pow(n as u32)
            .filter(|&s| s <= 5_000_000)
            .ok_or_else(|| Error::SizeBound(format!("{m}^{n} points")))?;
        let gorder = self.left.order();
        let mut act = vec![0u32; gorder * size];
        let mut digits = vec![0usize; n];
        let mut out = vec![0usize; n];
        for g in self.left.elements() {
            let (perm, hs) = self.permutation_data(g);
            for p in 0..size {
                let mut rest = p;
                for i in (0..n).rev() {
                    digits[i] = rest % m;
                    rest /= m;
                }
                for i in 0..n {
                    out[perm[i]] = x.act(hs[i], digits[i]);
                }
                let q = out.iter().fold(0usize, |acc, &d| acc * m + d);
                act[g * size + p] = q as u32;
            }
        }
        Ok(GSet::new_unchecked(self.left.clone(), size, act))
    }

    /// All `H`-invariant subsets, grouped into `G`-orbits.
    pub fn invariant_subsets(&self) -> Result<Vec<InvariantSubset>> {
        let n = self.num_orbits();
        if n > 12 {
            return Err(Error::SizeBound(format!(
                "{n} right orbits exceed the limit of 12"
            )));
        }
        let perms: Vec<Vec<usize>> = self
            .left
            .elements()
            .map(|g| self.permutation_data(g).0)
            .collect();
        let image = |g: usize, mask: u64| {
            (0..n)
                .filter(|&i| mask >> i & 1 == 1)
                .fold(0u64, |acc, i| acc | 1 << perms[g][i])
        };
        let mut orbit_of: HashMap<u64, usize> = HashMap::new();
        let mut out = Vec::with_capacity(1 << n);
        let mut next_orbit = 0;
        for mask in 0..(1u64 << n) {
            let orbit = *orbit_of.entry(mask).or_insert_with(|| {
                next_orbit += 1;
                next_orbit - 1
            });
            for g in self.left.elements() {
                orbit_of.entry(image(g, mask)).or_insert(orbit);
            }
            let stabilizer = self
                .left
                .elements()
                .filter(|&g| image(g, mask) == mask)
                .collect();
            let mut points: Vec<usize> = (0..self.size)
                .filter(|&u| mask >> self.coords(u).0 & 1 == 1)
                .collect();
            points.sort_unstable();
            out.push(InvariantSubset {
                mask,
                points,
                stabilizer,
                orbit,
            });
        }
        Ok(out)
    }
}

/// A formal difference `[plus] - [minus]` of right-free bisets.
#[derive(Clone, Debug)]
pub struct VirtualBiset {
    pub plus: Vec<Biset>,
    pub minus: Vec<Biset>,
}

impl VirtualBiset {
    pub fn from_biset(u: Biset) -> VirtualBiset {
        VirtualBiset {
            plus: vec![u],
            minus: Vec::new(),
        }
    }

    pub fn new(plus: Vec<Biset>, minus: Vec<Biset>) -> Result<VirtualBiset> {
        let mut all = plus.iter().chain(&minus);
        if let Some(first) = all.next() {
            for b in all {
                if *b.left() != *first.left() || *b.right() != *first.right() {
                    return Err(Error::InvalidBiset(
                        "virtual biset terms over different groups".into(),
                    ));
                }
            }
        }
        Ok(VirtualBiset { plus, minus })
    }
}
