//! Cross-module invariants on random inputs.

mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use repring::algmaps::{degree_witness, sample_pool, MapUnderTest};
use repring::ghost::{tilde_b, tilde_c, tilde_d, RingTag};
use repring::gset::GSet;
use repring::lattice::marks;
use repring::teninduct::{tilde_b_u, tilde_u};
use repring::units::{orthogonal_units, DEFAULT_UNIT_CAP};
use repring::Biset;

fn corpus_entry(i: usize) -> (String, Biset) {
    let all = corpus_bisets();
    all[i % all.len()].clone()
}

fn tag_strategy() -> impl Strategy<Value = RingTag> {
    prop::sample::select(RingTag::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ghost_square_commutes(g in 0..GROUPS.len(), p in prop::sample::select(PRIMES.to_vec()), seed: u64) {
        let l = default_lattices(&group(GROUPS[g]), p);
        let a = l.t.ring().random_vector(&mut ChaCha8Rng::seed_from_u64(seed), 5);
        let lhs = tilde_d(&tilde_c(&a, l.rk.ring()).unwrap(), l.rf.ring()).unwrap();
        prop_assert_eq!(lhs, tilde_b(&a, l.rf.ring()).unwrap());
    }

    #[test]
    fn tensor_induction_is_multiplicative(i: usize, tag in tag_strategy(), p in prop::sample::select(PRIMES.to_vec()), seed: u64) {
        let (spec, u) = corpus_entry(i);
        let (lg, lh) = biset_lattices(&u, p);
        let (src, dst) = (lh.get(tag).ring(), lg.get(tag).ring());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y) = (src.random_vector(&mut rng, 3), src.random_vector(&mut rng, 3));
        let t = |v: &repring::ghost::GhostVector| tilde_u(tag, &u, v, dst).unwrap();
        let xy = x.mul(&y).unwrap();
        prop_assert_eq!(t(&xy), t(&x).mul(&t(&y)).unwrap(), "{}", spec);
        prop_assert!(t(&src.one()).is_one());
        prop_assert!(t(&x).is_invariant());
    }

    #[test]
    fn unions_and_composites(i: usize, tag in tag_strategy(), seed: u64) {
        let (_, u) = corpus_entry(i);
        let v = Biset::identity(u.right().clone());
        let uv = u.compose(&v).unwrap();
        let twice = u.union(&uv).unwrap();
        let (lg, lh) = biset_lattices(&u, 2);
        let (src, dst) = (lh.get(tag).ring(), lg.get(tag).ring());
        let x = src.random_vector(&mut ChaCha8Rng::seed_from_u64(seed), 3);
        let tu = tilde_u(tag, &u, &x, dst).unwrap();
        prop_assert_eq!(tilde_u(tag, &uv, &x, dst).unwrap(), tu.clone());
        prop_assert_eq!(tilde_u(tag, &twice, &x, dst).unwrap(), tu.pow(2));
    }

    #[test]
    fn marks_of_tensor_induced_sets(i: usize, seed: u64) {
        let (_, u) = corpus_entry(i);
        let h = u.right().clone();
        let lat = h.subgroups();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // keep |X|^n small
        let n = u.num_orbits() as u32;
        let s = loop {
            let k = rng.gen_range(0..lat.len());
            if (h.order() / lat.get(k).order()).pow(n) <= 4096 {
                break k;
            }
        };
        let x = GSet::cosets(h.clone(), lat.get(s).elems());
        let (lg, lh) = biset_lattices(&u, 2);
        let image = u.tensor_induce_set(&x).unwrap();
        let via_ghost = tilde_b_u(&u, &marks(&x, lh.b.ring()).unwrap(), lg.b.ring()).unwrap();
        prop_assert_eq!(marks(&image, lg.b.ring()).unwrap(), via_ghost);
    }

    #[test]
    fn lattice_coordinates_reconstruct(g in 0..GROUPS.len(), tag in tag_strategy(), coeffs in prop::collection::vec(-4i64..=4, 12)) {
        let l = default_lattices(&group(GROUPS[g]), 3);
        let lat = l.get(tag);
        let big: Vec<num_bigint::BigInt> = (0..lat.generators().len()).map(|k| coeffs[k % coeffs.len()].into()).collect();
        let v = lat.combine(&big);
        let m = lat.membership(&v).expect("a combination of generators is a member");
        prop_assert_eq!(lat.combine(&m.generator_coords), v);
    }

    #[test]
    fn orthogonal_units_are_closed(g in 0..GROUPS.len(), tag in tag_strategy(), p in prop::sample::select(PRIMES.to_vec()), a: usize, b: usize) {
        let l = default_lattices(&group(GROUPS[g]), p);
        let units = orthogonal_units(l.get(tag), DEFAULT_UNIT_CAP).unwrap();
        let (x, y) = (&units.elements()[a % units.len()], &units.elements()[b % units.len()]);
        prop_assert!(units.contains(&x.mul(y).unwrap()));
        prop_assert!(units.contains(&x.dual()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    /// A product of maps of degrees m and n has degree at most m + n.
    #[test]
    fn product_degree_is_subadditive(seed: u64) {
        let u = biset("ind C2<=C4");
        let v = u.union(&u).unwrap();
        let (lg, lh) = biset_lattices(&u, 2);
        let f = MapUnderTest::tensor(&u, lh.b.clone(), lg.b.ring().clone());
        let g = MapUnderTest::tensor(&v, lh.b.clone(), lg.b.ring().clone());
        let pool = sample_pool(&lh.b, seed, 6);
        let bound = u.num_orbits() + v.num_orbits();
        let verdict = degree_witness(&f.product(&g), bound, &pool, seed, 60).unwrap();
        prop_assert!(verdict.vanishes_above);
    }
}
