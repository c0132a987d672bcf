//! p-local structure: p-parts of elements, p-cores, and the pairs `(E, c)`
//! with `E/O_p(E)` cyclic of order prime to `p` and `c` a generator.

use std::collections::HashMap;

use super::{p_part, Group};

/// Splits `x` as `x_p * x_p'` with `x_p` of p-power order and `x_p'` of
/// order prime to `p`. Both parts are powers of `x`.
pub fn p_parts(g: &Group, x: usize, p: usize) -> (usize, usize) {
    let m = g.elem_order(x);
    let pa = p_part(m, p);
    let rest = m / pa;
    // alpha = 1 mod p^a, 0 mod m'
    let alpha = (0..m).find(|k| k % pa == 1 % pa && k % rest == 0).unwrap_or(0);
    let beta = (0..m).find(|k| k % pa == 0 && k % rest == 1 % rest).unwrap_or(0);
    (g.pow(x, alpha as i64), g.pow(x, beta as i64))
}

/// Elements of order prime to `p`, in increasing index order.
pub fn p_regular_elements(g: &Group, p: usize) -> Vec<usize> {
    g.elements().filter(|&x| g.elem_order(x) % p != 0).collect()
}

/// The largest normal p-subgroup of subgroup `e` (an index into the
/// subgroup lattice), as a lattice index.
pub fn p_core(g: &Group, e: usize, p: usize) -> usize {
    let lat = g.subgroups();
    let big = lat.get(e);
    let sylow_order = p_part(big.order(), p);
    let mut mask = big.elems().iter().fold(vec![false; g.order()], |mut m, &x| {
        m[x] = true;
        m
    });
    for s in lat.iter() {
        if s.order() == sylow_order && s.is_subset_of(big) {
            for (x, slot) in mask.iter_mut().enumerate() {
                *slot = *slot && s.contains(x);
            }
        }
    }
    lat.index_of_mask(&mask).expect("intersection of subgroups is a subgroup")
}

/// A pair `(E, c)`: subgroup index `E` and the canonical representative
/// `rep` of the coset `c`, the least-index element of order prime to `p`
/// in that coset of `O_p(E)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HypoPair {
    pub subgroup: usize,
    pub rep: usize,
    /// Lattice index of `O_p(E)`.
    pub core: usize,
}

/// All pairs `(E, c)` for a prime, with lookup and the conjugation action.
#[derive(Debug)]
pub struct HypoPairs {
    p: usize,
    pairs: Vec<HypoPair>,
    lookup: HashMap<(usize, usize), usize>,
    orbit_of: Vec<usize>,
    orbits: Vec<Vec<usize>>,
}

impl HypoPairs {
    pub fn new(g: &Group, p: usize) -> HypoPairs {
        let lat = g.subgroups();
        let mut pairs = Vec::new();
        let mut lookup = HashMap::new();
        for e in 0..lat.len() {
            let sub = lat.get(e);
            let core = p_core(g, e, p);
            let core_sub = lat.get(core);
            if core_sub.order() != p_part(sub.order(), p) {
                continue;
            }
            let quotient = sub.order() / core_sub.order();
            // order of t O_p(E) in E/O_p(E)
            let coset_order = |t: usize| {
                let mut k = 1;
                let mut y = t;
                while !core_sub.contains(y) {
                    y = g.mul(y, t);
                    k += 1;
                }
                k
            };
            let mut seen_cosets: HashMap<usize, usize> = HashMap::new();
            for &t in sub.elems() {
                if coset_order(t) != quotient {
                    continue;
                }
                let key = core_sub.elems().iter().map(|&a| g.mul(t, a)).min().unwrap();
                let idx = *seen_cosets.entry(key).or_insert_with(|| {
                    let rep = core_sub
                        .elems()
                        .iter()
                        .map(|&a| g.mul(t, a))
                        .filter(|&y| g.elem_order(y) % p != 0)
                        .min()
                        .expect("a coset of a normal Sylow subgroup holds a p'-element");
                    pairs.push(HypoPair {
                        subgroup: e,
                        rep,
                        core,
                    });
                    pairs.len() - 1
                });
                lookup.insert((e, t), idx);
            }
        }
        let mut orbit_of = vec![usize::MAX; pairs.len()];
        let mut orbits = Vec::new();
        for k in 0..pairs.len() {
            if orbit_of[k] != usize::MAX {
                continue;
            }
            let mut members: Vec<usize> = g
                .elements()
                .map(|x| {
                    let q = pairs[k];
                    lookup[&(lat.conj(x, q.subgroup), g.conj(x, q.rep))]
                })
                .collect();
            members.sort_unstable();
            members.dedup();
            for &j in &members {
                orbit_of[j] = orbits.len();
            }
            orbits.push(members);
        }
        HypoPairs {
            p,
            pairs,
            lookup,
            orbit_of,
            orbits,
        }
    }

    pub fn prime(&self) -> usize {
        self.p
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn get(&self, k: usize) -> HypoPair {
        self.pairs[k]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, HypoPair> {
        self.pairs.iter()
    }

    /// The pair `(E, t O_p(E))` for any `t` whose coset generates `E/O_p(E)`.
    pub fn find(&self, e: usize, t: usize) -> Option<usize> {
        self.lookup.get(&(e, t)).copied()
    }

    /// `(x E x^-1, x c x^-1)`
    pub fn conj(&self, g: &Group, x: usize, k: usize) -> usize {
        let q = self.pairs[k];
        self.lookup[&(g.subgroups().conj(x, q.subgroup), g.conj(x, q.rep))]
    }

    /// `(E, c^i)`; `i` must be prime to the order of `c`.
    pub fn power(&self, g: &Group, k: usize, i: i64) -> usize {
        let q = self.pairs[k];
        self.lookup[&(q.subgroup, g.pow(q.rep, i))]
    }

    pub fn orbit_of(&self, k: usize) -> usize {
        self.orbit_of[k]
    }

    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    /// First member of each conjugation orbit.
    pub fn orbit_reps(&self) -> Vec<usize> {
        self.orbits.iter().map(|o| o[0]).collect()
    }
}
