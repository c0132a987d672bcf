//! Test-side oracles computed by brute force, independent of the library's
//! subgroup lattice and species machinery, plus the shared test corpus.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::{Arc, Mutex};

use repring::bisetspec::parse_biset_with_cap;
use repring::cyclotomic::CycInt;
use repring::ghost::GhostRings;
use repring::group::{named_group, Group, GroupRef};
use repring::lattice::Lattices;
use repring::Biset;

pub const GROUPS: [&str; 10] = ["1", "C2", "C3", "C4", "C6", "V4", "S3", "D8", "Q8", "A4"];
pub const PRIMES: [usize; 2] = [2, 3];
pub const INCLUSIONS: [(&str, &str); 6] = [("C2", "C4"), ("C2", "S3"), ("C3", "S3"), ("C2", "D8"), ("V4", "A4"), ("C3", "A4")];
pub const COMPOSITE: &str = "ind C2<=S3 * res C2<=S3";
pub const UNION: &str = "id S3 + ind C2<=S3 * res C2<=S3";

pub fn group(name: &str) -> GroupRef {
    Arc::new(named_group(name, 360).expect("corpus group"))
}

pub fn biset(spec: &str) -> Biset {
    parse_biset_with_cap(spec, 360).expect("corpus biset")
}

/// Every corpus biset with its spec.
pub fn corpus_bisets() -> Vec<(String, Biset)> {
    let mut specs: Vec<String> = GROUPS.iter().map(|g| format!("id {g}")).collect();
    for (h, g) in INCLUSIONS {
        specs.push(format!("ind {h}<={g}"));
        specs.push(format!("res {h}<={g}"));
    }
    specs.push(COMPOSITE.into());
    specs.push(UNION.into());
    specs.into_iter().map(|s| {
        let b = biset(&s);
        (s, b)
    }).collect()
}

type Entry = (GroupRef, usize, u32, Arc<Lattices>);
static LATTICES: Mutex<Vec<Entry>> = Mutex::new(Vec::new());

/// The four lattices of a group for one prime and value order, cached.
pub fn lattices(g: &GroupRef, p: usize, e: u32) -> Arc<Lattices> {
    let mut cache = LATTICES.lock().unwrap();
    if let Some((_, _, _, l)) = cache.iter().find(|(h, q, f, _)| **h == **g && *q == p && *f == e) {
        return l.clone();
    }
    let l = Arc::new(Lattices::new(GhostRings::new(g.clone(), p, e).unwrap()).unwrap());
    cache.push((g.clone(), p, e, l.clone()));
    l
}

/// Lattices of both sides of a biset over a common value order.
pub fn biset_lattices(u: &Biset, p: usize) -> (Arc<Lattices>, Arc<Lattices>) {
    let e = num_integer::lcm(u.left().exponent(), u.right().exponent()) as u32;
    (lattices(u.left(), p, e), lattices(u.right(), p, e))
}

pub fn default_lattices(g: &GroupRef, p: usize) -> Arc<Lattices> {
    lattices(g, p, g.exponent() as u32)
}

// ---- brute-force group theory ----

pub fn closure(g: &Group, gens: &[usize]) -> Vec<usize> {
    let mut set = BTreeSet::from([g.identity()]);
    let mut frontier = vec![g.identity()];
    while let Some(x) = frontier.pop() {
        for &s in gens {
            let y = g.mul(x, s);
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    set.into_iter().collect()
}

/// All subgroups, as closures of pairs of elements (every corpus group and
/// every subgroup of one is generated by two elements).
pub fn all_subgroups(g: &Group) -> Vec<Vec<usize>> {
    let mut out = BTreeSet::new();
    for a in g.elements() {
        for b in g.elements() {
            out.insert(closure(g, &[a, b]));
        }
    }
    out.into_iter().collect()
}

pub fn conjugate_set(g: &Group, x: usize, s: &[usize]) -> Vec<usize> {
    let mut v: Vec<usize> = s.iter().map(|&y| g.mul(g.mul(x, y), g.inv(x))).collect();
    v.sort_unstable();
    v
}

/// Conjugacy classes of subgroups.
pub fn subgroup_classes(g: &Group) -> Vec<Vec<Vec<usize>>> {
    let mut rest = all_subgroups(g);
    let mut classes = Vec::new();
    while let Some(s) = rest.first().cloned() {
        let class: BTreeSet<Vec<usize>> = g.elements().map(|x| conjugate_set(g, x, &s)).collect();
        rest.retain(|t| !class.contains(t));
        classes.push(class.into_iter().collect());
    }
    classes
}

pub fn normalizer_order(g: &Group, s: &[usize]) -> usize {
    g.elements().filter(|&x| conjugate_set(g, x, s) == s).count()
}

pub fn conjugacy_class_count(g: &Group, elems: &[usize]) -> usize {
    let mut seen = BTreeSet::new();
    let mut count = 0;
    for &x in elems {
        if seen.contains(&x) {
            continue;
        }
        count += 1;
        for y in g.elements() {
            seen.insert(g.mul(g.mul(y, x), g.inv(y)));
        }
    }
    count
}

pub fn p_regular(g: &Group, p: usize) -> Vec<usize> {
    g.elements().filter(|&x| g.elem_order(x) % p != 0).collect()
}

/// Number of `G`-classes of pairs `(E, c)`: the `p`-elements of `E` form a
/// subgroup `P` with `E/P` cyclic, and `c` generates `E/P`.
pub fn hypo_pair_class_count(g: &Group, p: usize) -> usize {
    let is_p_elem = |x: usize| {
        let mut n = g.elem_order(x);
        while n % p == 0 {
            n /= p;
        }
        n == 1
    };
    let mut pairs: BTreeSet<(Vec<usize>, Vec<usize>)> = BTreeSet::new();
    for e in all_subgroups(g) {
        let core: Vec<usize> = e.iter().copied().filter(|&x| is_p_elem(x)).collect();
        if closure(g, &core) != core {
            continue;
        }
        let q = e.len() / core.len();
        for &c in &e {
            // c generates E/P: <c> P = E
            let mut gens = core.clone();
            gens.push(c);
            if closure(g, &gens) == e && q % p != 0 {
                let mut coset: Vec<usize> = core.iter().map(|&a| g.mul(c, a)).collect();
                coset.sort_unstable();
                pairs.insert((e.clone(), coset));
            }
        }
    }
    let mut count = 0;
    let mut seen = BTreeSet::new();
    for (e, c) in &pairs {
        if seen.contains(&(e.clone(), c.clone())) {
            continue;
        }
        count += 1;
        for x in g.elements() {
            seen.insert((conjugate_set(g, x, e), conjugate_set(g, x, c)));
        }
    }
    count
}

pub fn derived_subgroup_order(g: &Group) -> usize {
    let comms: Vec<usize> = g
        .elements()
        .flat_map(|a| g.elements().map(move |b| (a, b)))
        .map(|(a, b)| g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b))))
        .collect();
    closure(g, &comms).len()
}

// ---- explicit tensor induced representations ----

pub type Matrix = Vec<Vec<CycInt>>;

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let e = a[0][0].order();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(CycInt::zero(e), |acc, k| &acc + &(&a[i][k] * &b[k][j])))
                .collect()
        })
        .collect()
}

pub fn trace(a: &Matrix) -> CycInt {
    let e = a[0][0].order();
    (0..a.len()).fold(CycInt::zero(e), |acc, i| &acc + &a[i][i])
}

/// The matrix of `g` on the `n`-fold tensor power of a representation `rho`
/// of `H`: `g (m_1 x ... x m_n)` has `rho(h_i) m_i` in slot `pi(i)`, where
/// `g u_i = u_{pi(i)} h_i`.
pub fn tensor_matrix(u: &Biset, rho: &dyn Fn(usize) -> Matrix, g: usize) -> Matrix {
    let (perm, hs) = u.permutation_data(g);
    let n = perm.len();
    let mats: Vec<Matrix> = hs.iter().map(|&h| rho(h)).collect();
    let d = rho(u.right().identity()).len();
    let e = mats.first().map_or(1, |m| m[0][0].order());
    let dim = d.pow(n as u32);
    let digits = |mut x: usize| {
        let mut v = vec![0usize; n];
        for i in (0..n).rev() {
            v[i] = x % d;
            x /= d;
        }
        v
    };
    let mut out = vec![vec![CycInt::zero(e); dim]; dim];
    for col in 0..dim {
        let row = digits(col);
        for target in 0..dim {
            let t = digits(target);
            let mut coeff = CycInt::one(e);
            for i in 0..n {
                coeff = &coeff * &mats[i][t[perm[i]]][row[i]];
                if coeff.is_zero() {
                    break;
                }
            }
            out[target][col] = coeff;
        }
    }
    out
}

/// The two-dimensional representation of `S3` (as a permutation group of
/// degree 3) on the basis `e1 - e3, e2 - e3`.
pub fn s3_reflection(h: &Group, e: u32) -> impl Fn(usize) -> Matrix + '_ {
    move |x| {
        let (_, perms) = h.permutations().expect("S3 is a permutation group");
        let p = &perms[x];
        let col = |j: usize| {
            let mut v = [0i64; 3];
            v[p[j]] += 1;
            v[p[2]] -= 1;
            [v[0], v[1]]
        };
        let (c0, c1) = (col(0), col(1));
        vec![
            vec![CycInt::from_int(e, c0[0]), CycInt::from_int(e, c1[0])],
            vec![CycInt::from_int(e, c0[1]), CycInt::from_int(e, c1[1])],
        ]
    }
}
