//! Finite groups given by explicit multiplication tables.
//!
//! Elements are the integers `0..order`, and the identity is always `0`.
//! Groups built from permutations number their elements by breadth-first
//! search over words in the generators, so the numbering is reproducible.

mod characters;
mod hypo;
mod named;
mod subgroups;

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

pub use characters::{
    derived_subgroup, linear_characters, linear_characters_of_subgroup, LinearCharacter,
};
pub use hypo::{p_core, p_parts, p_regular_elements, HypoPair, HypoPairs};
pub use named::{named_group, parse_cycles, parse_group_file, resolve_group, resolve_group_with_cap};
pub use subgroups::{Subgroup, SubgroupLattice};

use crate::error::{Error, Result};

/// Default upper bound on group orders.
pub const DEFAULT_ORDER_CAP: usize = 360;

/// Environment variable overriding [`DEFAULT_ORDER_CAP`].
pub const CAP_ENV_VAR: &str = "REPRING_CAP";

/// The order cap in effect: `REPRING_CAP` if set and parseable, else the default.
pub fn order_cap() -> usize {
    std::env::var(CAP_ENV_VAR)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_ORDER_CAP)
}

pub type GroupRef = Arc<Group>;

pub struct Group {
    name: String,
    order: usize,
    mult: Vec<u32>,
    inv: Vec<usize>,
    elem_order: Vec<usize>,
    exponent: usize,
    perms: Option<(usize, Vec<Vec<usize>>)>,
    subgroups: OnceLock<SubgroupLattice>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("name", &self.name)
            .field("order", &self.order)
            .finish()
    }
}

/// Structural equality: same order and same multiplication table.
impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.mult == other.mult
    }
}

impl Eq for Group {}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

impl Group {
    /// Builds a group from a multiplication table `mult[a * n + b] = a * b`.
    ///
    /// Element `0` must be the identity. Associativity is checked on all
    /// triples for orders up to 64 and on a fixed pseudo-random sample above.
    pub fn from_table(name: impl Into<String>, order: usize, mult: Vec<u32>) -> Result<Group> {
        Self::from_table_with_perms(name.into(), order, mult, None)
    }

    fn from_table_with_perms(
        name: String,
        order: usize,
        mult: Vec<u32>,
        perms: Option<(usize, Vec<Vec<usize>>)>,
    ) -> Result<Group> {
        if order == 0 || mult.len() != order * order {
            return Err(Error::InvalidTable(format!(
                "table of length {} for order {order}",
                mult.len()
            )));
        }
        if mult.iter().any(|&x| x as usize >= order) {
            return Err(Error::InvalidTable("entry out of range".into()));
        }
        for a in 0..order {
            if mult[a] as usize != a || mult[a * order] as usize != a {
                return Err(Error::InvalidTable("element 0 is not the identity".into()));
            }
        }
        let mut inv = vec![usize::MAX; order];
        for a in 0..order {
            for b in 0..order {
                if mult[a * order + b] == 0 {
                    inv[a] = b;
                    break;
                }
            }
            if inv[a] == usize::MAX {
                return Err(Error::InvalidTable(format!("element {a} has no inverse")));
            }
        }
        let at = |a: usize, b: usize| mult[a * order + b] as usize;
        if order <= 64 {
            for a in 0..order {
                for b in 0..order {
                    let ab = at(a, b);
                    for c in 0..order {
                        if at(ab, c) != at(a, at(b, c)) {
                            return Err(Error::InvalidTable(format!(
                                "associativity fails at ({a},{b},{c})"
                            )));
                        }
                    }
                }
            }
        } else {
            let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
            let mut next = || {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                (state % order as u64) as usize
            };
            for _ in 0..20_000 {
                let (a, b, c) = (next(), next(), next());
                if at(at(a, b), c) != at(a, at(b, c)) {
                    return Err(Error::InvalidTable(format!(
                        "associativity fails at ({a},{b},{c})"
                    )));
                }
            }
        }
        let mut elem_order = vec![0; order];
        for (a, slot) in elem_order.iter_mut().enumerate() {
            let mut k = 1;
            let mut x = a;
            while x != 0 {
                x = at(x, a);
                k += 1;
            }
            *slot = k;
        }
        let exponent = elem_order.iter().fold(1, |acc, &o| lcm(acc, o));
        Ok(Group {
            name,
            order,
            mult,
            inv,
            elem_order,
            exponent,
            perms,
            subgroups: OnceLock::new(),
        })
    }

    /// The permutation group on `{1..degree}` generated by `gens`.
    ///
    /// Each generator is the image list of `0..degree` (zero-based). Elements
    /// are numbered by breadth-first search from the identity, right-multiplying
    /// by the generators in the given order.
    pub fn from_permutations(
        name: impl Into<String>,
        degree: usize,
        gens: &[Vec<usize>],
        cap: usize,
    ) -> Result<Group> {
        for g in gens {
            let mut seen = vec![false; degree];
            if g.len() != degree {
                return Err(Error::InvalidPermutation(format!(
                    "{g:?} has length {} but degree is {degree}",
                    g.len()
                )));
            }
            for &x in g {
                if x >= degree || seen[x] {
                    return Err(Error::InvalidPermutation(format!("{g:?}")));
                }
                seen[x] = true;
            }
        }
        // (a * b)(x) = a(b(x))
        let compose = |a: &[usize], b: &[usize]| b.iter().map(|&x| a[x]).collect::<Vec<_>>();
        let identity: Vec<usize> = (0..degree).collect();
        let mut elems = vec![identity.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        index.insert(identity, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let next = compose(&elems[i], g);
                if !index.contains_key(&next) {
                    if elems.len() >= cap {
                        return Err(Error::CapExceeded {
                            order: elems.len() + 1,
                            cap,
                        });
                    }
                    index.insert(next.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(next);
                }
            }
        }
        let n = elems.len();
        let mut mult = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                mult[a * n + b] = index[&compose(&elems[a], &elems[b])] as u32;
            }
        }
        Self::from_table_with_perms(name.into(), n, mult, Some((degree, elems)))
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Group {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `g a g^-1`
    #[inline]
    pub fn conj(&self, g: usize, a: usize) -> usize {
        self.mul(self.mul(g, a), self.inv[g])
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let o = self.elem_order[a] as i64;
        let k = k.rem_euclid(o);
        let mut x = 0;
        for _ in 0..k {
            x = self.mul(x, a);
        }
        x
    }

    pub fn elem_order(&self, a: usize) -> usize {
        self.elem_order[a]
    }

    pub fn exponent(&self) -> usize {
        self.exponent
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// Degree and element permutations, for groups built from permutations.
    pub fn permutations(&self) -> Option<(usize, &[Vec<usize>])> {
        self.perms.as_ref().map(|(d, p)| (*d, p.as_slice()))
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The subgroup lattice, computed on first use.
    pub fn subgroups(&self) -> &SubgroupLattice {
        self.subgroups.get_or_init(|| SubgroupLattice::new(self))
    }

    /// Conjugacy class index of every element; classes numbered by least member.
    pub fn conjugacy_classes(&self) -> (Vec<usize>, Vec<Vec<usize>>) {
        let mut class_of = vec![usize::MAX; self.order];
        let mut classes = Vec::new();
        for x in self.elements() {
            if class_of[x] != usize::MAX {
                continue;
            }
            let mut members: Vec<usize> = self.elements().map(|g| self.conj(g, x)).collect();
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                class_of[m] = classes.len();
            }
            classes.push(members);
        }
        (class_of, classes)
    }

    /// The subgroup `elems` (sorted, containing 0) as a group in its own
    /// right. Element `j` of the result is `elems[j]`.
    pub fn subgroup_as_group(&self, name: impl Into<String>, elems: &[usize]) -> Result<Group> {
        let n = elems.len();
        let pos = |x: usize| elems.binary_search(&x).ok();
        let mut mult = vec![0u32; n * n];
        for (i, &a) in elems.iter().enumerate() {
            for (j, &b) in elems.iter().enumerate() {
                let k = pos(self.mul(a, b))
                    .ok_or_else(|| Error::Invalid("element list is not a subgroup".into()))?;
                mult[i * n + j] = k as u32;
            }
        }
        let perms = self
            .perms
            .as_ref()
            .map(|(d, p)| (*d, elems.iter().map(|&x| p[x].clone()).collect()));
        Self::from_table_with_perms(name.into(), n, mult, perms)
    }

    /// The quotient by a normal subgroup. Cosets are numbered by least
    /// member; returns the quotient and the projection `G -> G/N`.
    pub fn quotient(&self, name: impl Into<String>, normal: &[usize]) -> Result<(Group, Vec<usize>)> {
        for g in self.elements() {
            for &x in normal {
                if normal.binary_search(&self.conj(g, x)).is_err() {
                    return Err(Error::Invalid("subgroup is not normal".into()));
                }
            }
        }
        let mut proj = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for g in self.elements() {
            if proj[g] != usize::MAX {
                continue;
            }
            for &x in normal {
                proj[self.mul(g, x)] = reps.len();
            }
            reps.push(g);
        }
        let m = reps.len();
        let mut mult = vec![0u32; m * m];
        for i in 0..m {
            for j in 0..m {
                mult[i * m + j] = proj[self.mul(reps[i], reps[j])] as u32;
            }
        }
        Ok((Self::from_table_with_perms(name.into(), m, mult, None)?, proj))
    }

    /// Direct product; element `(a, b)` is numbered `a * |B| + b`.
    pub fn direct_product(a: &Group, b: &Group) -> Result<Group> {
        let (na, nb) = (a.order, b.order);
        let n = na * nb;
        let mut mult = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                let (xa, xb) = (x / nb, x % nb);
                let (ya, yb) = (y / nb, y % nb);
                mult[x * n + y] = (a.mul(xa, ya) * nb + b.mul(xb, yb)) as u32;
            }
        }
        Self::from_table_with_perms(format!("{}x{}", a.name, b.name), n, mult, None)
    }

    /// Closure of a generating set, as a sorted element list.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut mask = vec![false; self.order];
        mask[0] = true;
        let mut elems = vec![0];
        let mut i = 0;
        while i < elems.len() {
            let x = elems[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !mask[y] {
                    mask[y] = true;
                    elems.push(y);
                }
            }
            i += 1;
        }
        elems.sort_unstable();
        elems
    }

    /// Renders an element in cycle notation when a permutation
    /// representation is known, else as `#index`.
    pub fn element_label(&self, x: usize) -> String {
        match &self.perms {
            Some((_, perms)) => cycle_notation(&perms[x]),
            None => format!("#{x}"),
        }
    }
}

/// One-based cycle notation, `()` for the identity.
pub fn cycle_notation(perm: &[usize]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] == start {
            continue;
        }
        out.push('(');
        let mut x = start;
        let mut first = true;
        while !seen[x] {
            seen[x] = true;
            if !first {
                out.push(' ');
            }
            out.push_str(&(x + 1).to_string());
            first = false;
            x = perm[x];
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

/// Largest power of `p` dividing `n`.
pub(crate) fn p_part(n: usize, p: usize) -> usize {
    let mut r = 1;
    let mut m = n;
    while m % p == 0 {
        m /= p;
        r *= p;
    }
    r
}
