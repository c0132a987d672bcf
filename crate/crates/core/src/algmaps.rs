//! Difference operators `D_a f (x) = f(x + a) - f(x)` and sampled tests of
//! algebraic degree.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::biset::Biset;
use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::ghost::{GhostRingRef, GhostVector};
use crate::lattice::Lattice;
use crate::teninduct::tilde_u;

pub type Evaluator = Arc<dyn Fn(&GhostVector) -> Result<GhostVector> + Send + Sync>;

/// A map from a representation ring to a ghost ring, evaluated on ghost
/// vectors of the domain.
#[derive(Clone)]
pub struct MapUnderTest {
    domain: Arc<Lattice>,
    codomain: GhostRingRef,
    eval: Evaluator,
}

impl std::fmt::Debug for MapUnderTest {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "MapUnderTest({:?} -> {:?})", self.domain.ring(), self.codomain)
    }
}

impl MapUnderTest {
    pub fn new(domain: Arc<Lattice>, codomain: GhostRingRef, eval: Evaluator) -> MapUnderTest {
        MapUnderTest { domain, codomain, eval }
    }

    /// Tensor induction along `u` for the rings of one tag.
    pub fn tensor(u: &Biset, domain: Arc<Lattice>, codomain: GhostRingRef) -> MapUnderTest {
        let tag = domain.tag();
        let u = u.clone();
        let target = codomain.clone();
        MapUnderTest::new(domain, codomain, Arc::new(move |x| tilde_u(tag, &u, x, &target)))
    }

    pub fn domain(&self) -> &Arc<Lattice> {
        &self.domain
    }

    pub fn codomain(&self) -> &GhostRingRef {
        &self.codomain
    }

    pub fn eval(&self, x: &GhostVector) -> Result<GhostVector> {
        (self.eval)(x)
    }

    /// The map `D_a f`.
    pub fn difference(&self, a: &GhostVector) -> Result<MapUnderTest> {
        if !self.domain.contains(a) {
            return Err(Error::Invalid("difference by an element outside the domain".into()));
        }
        let f = self.eval.clone();
        let a = a.clone();
        let eval: Evaluator = Arc::new(move |x| f(&x.add(&a)?)?.sub(&f(x)?));
        Ok(MapUnderTest::new(self.domain.clone(), self.codomain.clone(), eval))
    }

    /// Pointwise product `f g`.
    pub fn product(&self, other: &MapUnderTest) -> MapUnderTest {
        let (f, g) = (self.eval.clone(), other.eval.clone());
        let eval: Evaluator = Arc::new(move |x| f(x)?.mul(&g(x)?));
        MapUnderTest::new(self.domain.clone(), self.codomain.clone(), eval)
    }
}

/// Evaluates iterated differences by inclusion and exclusion, caching `f`.
struct Differencer<'a> {
    f: &'a MapUnderTest,
    cache: HashMap<Vec<CycInt>, GhostVector>,
}

impl Differencer<'_> {
    fn eval(&mut self, x: &GhostVector) -> Result<GhostVector> {
        if let Some(v) = self.cache.get(x.values()) {
            return Ok(v.clone());
        }
        let v = self.f.eval(x)?;
        self.cache.insert(x.values().to_vec(), v.clone());
        Ok(v)
    }

    /// `D_{a_1} ... D_{a_k} f (x) = sum over subsets S of (-1)^(k-|S|) f(x + sum_S a)`.
    fn iterated(&mut self, a: &[&GhostVector], x: &GhostVector) -> Result<GhostVector> {
        let k = a.len();
        let mut acc = self.f.codomain.zero();
        for mask in 0u32..1 << k {
            let mut point = x.clone();
            for (i, ai) in a.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    point = point.add(ai)?;
                }
            }
            let v = self.eval(&point)?;
            acc = if (k - mask.count_ones() as usize) % 2 == 0 { acc.add(&v)? } else { acc.sub(&v)? };
        }
        Ok(acc)
    }
}

/// `D_{a_1} ... D_{a_k} f (x)`.
pub fn iterated_difference(f: &MapUnderTest, a: &[&GhostVector], x: &GhostVector) -> Result<GhostVector> {
    Differencer { f, cache: HashMap::new() }.iterated(a, x)
}

/// The lattice generators followed by `extra` seeded combinations with
/// coefficients in `-2..=2`.
pub fn sample_pool(lattice: &Lattice, seed: u64, extra: usize) -> Vec<GhostVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool: Vec<GhostVector> = lattice.generators().to_vec();
    let m = pool.len();
    for _ in 0..extra {
        let coeffs: Vec<BigInt> = (0..m).map(|_| BigInt::from(rng.gen_range(-2..=2))).collect();
        pool.push(lattice.combine(&coeffs));
    }
    pool
}

/// Outcome of a sampled degree test. Indices refer to the sample pool.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeVerdict {
    pub degree: usize,
    /// Every sampled `(n+1)`-fold difference vanished.
    pub vanishes_above: bool,
    /// Some `n`-fold difference is nonzero, so the degree is at least `n`.
    pub refutes_below: bool,
    /// The difference elements and base point (`None` for zero) of a
    /// nonvanishing `(n+1)`-fold difference.
    pub counterexample: Option<(Vec<usize>, Option<usize>)>,
    /// The difference elements of a nonzero `n`-fold difference at `0`.
    pub witness: Option<Vec<usize>>,
    pub tuples_checked: usize,
}

impl DegreeVerdict {
    pub fn label(&self) -> &'static str {
        match (self.vanishes_above, self.refutes_below) {
            (true, true) => "consistent_with_degree_n, refuted_below_n",
            (true, false) => "consistent_with_degree_n",
            (false, _) => "inconsistent",
        }
    }

    pub fn is_exact(&self) -> bool {
        self.vanishes_above && self.refutes_below
    }
}

/// Multisets of size `k` from `0..m` in lexicographic order, or `budget`
/// seeded random ones when there are more than that.
fn tuples(m: usize, k: usize, budget: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<usize>> {
    let mut all = Vec::new();
    let mut cur = vec![0usize; k];
    if m == 0 {
        return all;
    }
    loop {
        all.push(cur.clone());
        if all.len() > budget {
            break;
        }
        let Some(i) = (0..k).rev().find(|&i| cur[i] + 1 < m) else {
            return all;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[i];
        }
    }
    (0..budget)
        .map(|_| {
            let mut t: Vec<usize> = (0..k).map(|_| rng.gen_range(0..m)).collect();
            t.sort_unstable();
            t
        })
        .collect()
}

/// Checks that `(n+1)`-fold differences of `f` vanish on sampled tuples,
/// at `0` and at a sampled base point, and looks for a nonzero `n`-fold
/// difference. At most `budget` tuples are examined for each check.
pub fn degree_witness(f: &MapUnderTest, n: usize, samples: &[GhostVector], seed: u64, budget: usize) -> Result<DegreeVerdict> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut d = Differencer { f, cache: HashMap::new() };
    let zero = f.domain.ring().zero();
    let m = samples.len();
    let mut tuples_checked = 0;
    let mut counterexample = None;
    for t in tuples(m, n + 1, budget, &mut rng) {
        let a: Vec<&GhostVector> = t.iter().map(|&i| &samples[i]).collect();
        let base = rng.gen_range(0..m.max(1));
        tuples_checked += 1;
        if !d.iterated(&a, &zero)?.is_zero() {
            counterexample = Some((t, None));
            break;
        }
        if m > 0 && !d.iterated(&a, &samples[base])?.is_zero() {
            counterexample = Some((t, Some(base)));
            break;
        }
    }
    // constant tuples first, then the rest
    let mut candidates: Vec<Vec<usize>> = (0..m).map(|i| vec![i; n]).collect();
    let mut others = tuples(m, n, budget, &mut rng);
    others.shuffle(&mut rng);
    candidates.extend(others);
    let mut witness = None;
    for t in candidates.into_iter().take(budget + m) {
        let a: Vec<&GhostVector> = t.iter().map(|&i| &samples[i]).collect();
        if !d.iterated(&a, &zero)?.is_zero() {
            witness = Some(t);
            break;
        }
    }
    Ok(DegreeVerdict {
        degree: n,
        vanishes_above: counterexample.is_none(),
        refutes_below: witness.is_some(),
        counterexample,
        witness,
        tuples_checked,
    })
}

/// Number of right orbits, the expected degree of tensor induction.
pub fn expected_degree(u: &Biset) -> usize {
    u.num_orbits()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ghost::{GhostRings, RingTag};
    use crate::group::{named_group, GroupRef};
    use crate::gset::GSet;
    use crate::lattice::{marks, Lattices};
    use crate::teninduct::tensor_induce_disjoint_union;

    fn setup() -> (Biset, Lattices, Lattices) {
        let g: GroupRef = Arc::new(named_group("C4", 360).unwrap());
        let lat = g.subgroups();
        let k = (0..lat.len()).find(|&k| lat.get(k).order() == 2).unwrap();
        let elems = lat.get(k).elems().to_vec();
        let h: GroupRef = Arc::new(g.subgroup_as_group("C2", &elems).unwrap());
        let u = Biset::induction(g.clone(), h.clone(), &elems).unwrap();
        let lg = Lattices::new(GhostRings::new(g, 3, 4).unwrap()).unwrap();
        let lh = Lattices::new(GhostRings::new(h, 3, 4).unwrap()).unwrap();
        (u, lg, lh)
    }

    fn identity_map(l: &Arc<Lattice>) -> MapUnderTest {
        MapUnderTest::new(l.clone(), l.ring().clone(), Arc::new(|x| Ok(x.clone())))
    }

    #[test]
    fn additive_and_constant_maps() {
        let (_, _, lh) = setup();
        let id = identity_map(&lh.b);
        let pool = sample_pool(&lh.b, 1, 5);
        let v = degree_witness(&id, 1, &pool, 1, 100).unwrap();
        assert!(v.is_exact());
        let a = &pool[0];
        let da = id.difference(a).unwrap();
        for x in &pool {
            assert_eq!(da.eval(x).unwrap(), *a);
        }
        let constant = da;
        assert!(degree_witness(&constant, 0, &pool, 2, 100).unwrap().vanishes_above);
        let zero_map = constant.difference(&pool[1]).unwrap();
        assert!(pool.iter().all(|x| zero_map.eval(x).unwrap().is_zero()));
    }

    #[test]
    fn differences_commute() {
        let (u, lg, lh) = setup();
        let f = MapUnderTest::tensor(&u, lh.t.clone(), lg.t.ring().clone());
        let pool = sample_pool(&lh.t, 3, 4);
        let ab = f.difference(&pool[1]).unwrap().difference(&pool[2]).unwrap();
        let ba = f.difference(&pool[2]).unwrap().difference(&pool[1]).unwrap();
        for x in &pool {
            assert_eq!(ab.eval(x).unwrap(), ba.eval(x).unwrap());
        }
    }

    #[test]
    fn tensor_maps_have_degree_two() {
        let (u, lg, lh) = setup();
        for tag in [RingTag::B, RingTag::T] {
            let f = MapUnderTest::tensor(&u, lh.get(tag).clone(), lg.get(tag).ring().clone());
            let pool = sample_pool(lh.get(tag), 7, 20);
            let v = degree_witness(&f, 2, &pool, 7, 300).unwrap();
            assert!(v.is_exact(), "{tag}: {v:?}");
            assert!(!degree_witness(&f, 1, &pool, 7, 300).unwrap().vanishes_above);
        }
    }

    #[test]
    fn difference_by_a_point_matches_the_union_decomposition() {
        let (u, lg, lh) = setup();
        let h = u.right().clone();
        let f = MapUnderTest::tensor(&u, lh.b.clone(), lg.b.ring().clone());
        let point = GSet::point(h.clone());
        let dp = f.difference(&marks(&point, lh.b.ring()).unwrap()).unwrap();
        for s in h.subgroups().iter() {
            let x = GSet::cosets(h.clone(), s.elems());
            let lhs = dp.eval(&marks(&x, lh.b.ring()).unwrap()).unwrap();
            let whole = marks(&tensor_induce_disjoint_union(&u, &x, &point).unwrap(), lg.b.ring()).unwrap();
            let rhs = whole.sub(&marks(&u.tensor_induce_set(&x).unwrap(), lg.b.ring()).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn product_degree_is_at_most_the_sum() {
        let (_, _, lh) = setup();
        let id = identity_map(&lh.rk);
        let square = id.product(&id);
        let cube = square.product(&id);
        let pool = sample_pool(&lh.rk, 11, 8);
        assert!(degree_witness(&square, 2, &pool, 11, 200).unwrap().is_exact());
        assert!(degree_witness(&cube, 3, &pool, 11, 200).unwrap().is_exact());
    }
}
