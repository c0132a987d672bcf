//! Tensor induction along a right-free `(G, H)`-biset at ghost level and on
//! representation rings.

use std::sync::Arc;

use crate::biset::Biset;
use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::ghost::{GhostRing, GhostRingRef, GhostVector, RingTag};
use crate::group::{p_core, GroupRef, LinearCharacter};
use crate::gset::GSet;
use crate::lattice::{Lattice, RingElement};

/// The pair `(E^u, c^u)` of `H` attached to a pair `(E, c)` of `G` and a
/// point `u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TransportResult {
    /// Lattice index of `E^u` in `H`.
    pub subgroup: usize,
    /// Index of `(E^u, c^u)` in the pair list of `H`.
    pub pair: usize,
    /// The element `h^f_u` representing `c^u`.
    pub rep: usize,
    pub e_u: usize,
    pub f_u: usize,
}

fn check_sides(u: &Biset, g_ring: &GhostRing, h_ring: &GhostRing, tag: RingTag) -> Result<()> {
    if g_ring.tag() != tag || h_ring.tag() != tag {
        return Err(Error::RingMismatch(format!("expected {tag} rings, got {g_ring:?} and {h_ring:?}")));
    }
    if **u.left() != **g_ring.group() || **u.right() != **h_ring.group() {
        return Err(Error::RingMismatch(format!(
            "biset over ({}, {}) used with rings of {} and {}",
            u.left().name(),
            u.right().name(),
            g_ring.group().name(),
            h_ring.group().name()
        )));
    }
    if g_ring.root_order() != h_ring.root_order() {
        return Err(Error::OrderMismatch(g_ring.root_order(), h_ring.root_order()));
    }
    if g_ring.prime() != h_ring.prime() {
        return Err(Error::RingMismatch("primes differ".into()));
    }
    Ok(())
}

/// Transport of the pair `(E, s O_p(E))` of `G` along the point `u`, for
/// any `s` whose coset generates `E/O_p(E)`; `t_h` is a `T` ring of `H`.
pub fn pair_transport_with(u: &Biset, point: usize, e: usize, s: usize, t_h: &GhostRing) -> Result<TransportResult> {
    let g = u.left();
    let h = u.right();
    let p = t_h.prime().expect("T rings carry a prime");
    let glat = g.subgroups();
    let big = glat.get(e);
    let core = glat.get(p_core(g, e, p));
    let meet: Vec<usize> = big.elems().iter().copied().filter(|&x| u.phi(point, x).is_some()).collect();
    let core_meet = core.elems().iter().filter(|&&x| u.phi(point, x).is_some()).count();
    // O_p(E)(E n ^uH) as an explicit product set
    let mut product: Vec<usize> = core
        .elems()
        .iter()
        .flat_map(|&a| meet.iter().map(move |&x| g.mul(a, x)))
        .collect();
    product.sort_unstable();
    product.dedup();
    let e_u = big.order() / product.len();
    let f_u = core.order() / core_meet;
    if product.len() / meet.len() != f_u || product.len() * core_meet != core.order() * meet.len() {
        return Err(Error::TheoryViolation(format!(
            "index formulas disagree: [O(E n uH) : E n uH] = {} but [O : O n uH] = {f_u}",
            product.len() / meet.len()
        )));
    }
    let power = g.pow(s, e_u as i64);
    let (a, x) = core
        .elems()
        .iter()
        .map(|&a| (a, g.mul(g.inv(a), power)))
        .find(|&(_, x)| meet.binary_search(&x).is_ok())
        .ok_or_else(|| Error::TheoryViolation(format!("no decomposition of s^{e_u} through the intersection")))?;
    debug_assert_eq!(g.mul(a, x), power);
    let hx = u.phi(point, x).expect("x lies in the intersection");
    let mut image: Vec<usize> = meet.iter().map(|&y| u.phi(point, y).unwrap()).collect();
    image.sort_unstable();
    image.dedup();
    let subgroup = h
        .subgroups()
        .index_of(&image)
        .ok_or_else(|| Error::TheoryViolation("image of the intersection is not a subgroup".into()))?;
    let rep = h.pow(hx, f_u as i64);
    let pair = t_h.pairs().find(subgroup, rep).ok_or_else(|| {
        Error::TheoryViolation(format!("transported element {rep} does not generate E^u modulo its p-core"))
    })?;
    Ok(TransportResult {
        subgroup,
        pair,
        rep,
        e_u,
        f_u,
    })
}

/// Transport of the pair with index `k` of a `T` ring of `G`.
pub fn pair_transport(u: &Biset, point: usize, t_g: &GhostRing, k: usize, t_h: &GhostRing) -> Result<TransportResult> {
    let q = t_g.pairs().get(k);
    pair_transport_with(u, point, q.subgroup, q.rep, t_h)
}

/// Marks: `(n_T) -> (prod over u in S\U/H of n_{S^u})`.
pub fn tilde_b_u(u: &Biset, a: &GhostVector, b_g: &GhostRingRef) -> Result<GhostVector> {
    check_sides(u, b_g, a.ring(), RingTag::B)?;
    let g = u.left();
    let hlat = u.right().subgroups();
    let values = g
        .subgroups()
        .iter()
        .map(|s| {
            let mut acc = CycInt::one(1);
            for i in u.double_coset_orbits(s.elems()) {
                let (_, image) = u.stabilizer_transport(u.orbit_reps()[i], s.elems());
                let k = hlat.index_of(&image).expect("S^u is a subgroup");
                acc = &acc * a.value(k);
            }
            acc
        })
        .collect();
    Ok(b_g.vector_unchecked(values))
}

/// Species: `(z_(D,d)) -> (prod over u in E\U/H of z_(E^u, c^u))`.
pub fn tilde_t_u(u: &Biset, a: &GhostVector, t_g: &GhostRingRef) -> Result<GhostVector> {
    check_sides(u, t_g, a.ring(), RingTag::T)?;
    let glat = u.left().subgroups();
    let e = t_g.root_order();
    let values = t_g
        .pairs()
        .iter()
        .enumerate()
        .map(|(k, q)| {
            let mut acc = CycInt::one(e);
            for i in u.double_coset_orbits(glat.get(q.subgroup).elems()) {
                let tr = pair_transport(u, u.orbit_reps()[i], t_g, k, a.ring())?;
                acc = &acc * a.value(tr.pair);
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(t_g.vector_unchecked(values))
}

/// `x -> prod over u in <x>\U/H of a(phi_u(x^{n_u}))` at every index `x` of
/// an `RK` or `RF` ring of `G`.
fn tilde_character(u: &Biset, a: &GhostVector, target: &GhostRingRef, tag: RingTag) -> Result<GhostVector> {
    check_sides(u, target, a.ring(), tag)?;
    let g = u.left();
    let e = target.root_order();
    let values = (0..target.len())
        .map(|k| {
            let x = target.element(k);
            let cyclic = g.closure(&[x]);
            let mut acc = CycInt::one(e);
            for i in u.double_coset_orbits(&cyclic) {
                let point = u.orbit_reps()[i];
                let mut y = x;
                while u.phi(point, y).is_none() {
                    y = g.mul(y, x);
                }
                let h = u.phi(point, y).unwrap();
                let idx = a.ring().index_of_element(h).ok_or_else(|| {
                    Error::TheoryViolation(format!("element {h} of H is outside the index set"))
                })?;
                acc = &acc * a.value(idx);
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(target.vector_unchecked(values))
}

/// Characters: `chi -> chi^U`.
pub fn tilde_rk_u(u: &Biset, a: &GhostVector, rk_g: &GhostRingRef) -> Result<GhostVector> {
    tilde_character(u, a, rk_g, RingTag::RK)
}

/// Brauer characters: `psi -> psi^U` on p-regular elements.
pub fn tilde_rf_u(u: &Biset, a: &GhostVector, rf_g: &GhostRingRef) -> Result<GhostVector> {
    tilde_character(u, a, rf_g, RingTag::RF)
}

/// The ghost-level tensor map of a ring tag.
pub fn tilde_u(tag: RingTag, u: &Biset, a: &GhostVector, target: &GhostRingRef) -> Result<GhostVector> {
    match tag {
        RingTag::B => tilde_b_u(u, a, target),
        RingTag::T => tilde_t_u(u, a, target),
        RingTag::RK => tilde_rk_u(u, a, target),
        RingTag::RF => tilde_rf_u(u, a, target),
    }
}

/// Species of the tensor induced monomial module `Ind_S^H psi`, computed
/// from its lines: the underlying `G`-set is `s_U(H/S)` and `g` fixing a
/// line acts on it by the product over `<pi>`-orbits of
/// `psi_{x_i}(h_{pi^{l-1}(i)} ... h_{pi(i)} h_i)`.
pub fn t_u_monomial(u: &Biset, s: usize, psi: &LinearCharacter, t_g: &GhostRingRef, t_h: &GhostRing) -> Result<GhostVector> {
    check_sides(u, t_g, t_h, RingTag::T)?;
    let p = t_g.prime().expect("T rings carry a prime");
    if psi.order() as usize % p == 0 {
        return Err(Error::Invalid(format!("character order {} is divisible by {p}", psi.order())));
    }
    let g = u.left();
    let h = u.right();
    let sub = h.subgroups().get(s);
    let e = t_g.root_order();
    if e % psi.root_order() != 0 {
        return Err(Error::NotDivisible {
            divisor: psi.root_order() as u64,
            value: e as u64,
        });
    }
    let scale = e / psi.root_order();
    let x = GSet::cosets(h.clone(), sub.elems());
    let m = x.size();
    // coset representatives in the numbering used by GSet::cosets
    let mut reps = Vec::with_capacity(m);
    let mut seen = vec![false; h.order()];
    for y in h.elements() {
        if !seen[y] {
            reps.push(y);
            for &z in sub.elems() {
                seen[h.mul(y, z)] = true;
            }
        }
    }
    let tensor = u.tensor_induce_set(&x)?;
    let n = u.num_orbits();
    let glat = g.subgroups();
    let values = t_g
        .pairs()
        .iter()
        .map(|q| {
            let (perm, hs) = u.permutation_data(q.rep);
            let mut acc = CycInt::zero(e);
            let mut digits = vec![0usize; n];
            for point in tensor.fixed_points(glat.get(q.subgroup).gens()) {
                let mut rest = point;
                for i in (0..n).rev() {
                    digits[i] = rest % m;
                    rest /= m;
                }
                let mut done = vec![false; n];
                let mut exponent = 0u32;
                for i in 0..n {
                    if done[i] {
                        continue;
                    }
                    // h_{pi^{l-1}(i)} ... h_{pi(i)} h_i
                    let mut prod = h.identity();
                    let mut j = i;
                    loop {
                        done[j] = true;
                        prod = h.mul(hs[j], prod);
                        j = perm[j];
                        if j == i {
                            break;
                        }
                    }
                    let r = reps[digits[i]];
                    let k = psi
                        .exponent_at(h.mul(h.mul(h.inv(r), prod), r))
                        .expect("the cycle product stabilizes the coset");
                    exponent = (exponent + k * scale) % e;
                }
                acc = &acc + &CycInt::root(e, exponent as i64);
            }
            acc
        })
        .collect();
    Ok(t_g.vector_unchecked(values))
}

/// `s_U(X + Y)` assembled as the disjoint union over `G`-classes of
/// `H`-invariant subsets `V` of `Ind_{G_V}^G (s_V(X) x s_{U-V}(Y))`.
pub fn tensor_induce_disjoint_union(u: &Biset, x: &GSet, y: &GSet) -> Result<GSet> {
    let g = u.left();
    let subsets = u.invariant_subsets()?;
    let mut acc = GSet::empty(g.clone());
    let mut done = Vec::new();
    for v in &subsets {
        if done.contains(&v.orbit) {
            continue;
        }
        done.push(v.orbit);
        let stab: GroupRef = Arc::new(g.subgroup_as_group("G_V", &v.stabilizer)?);
        let rest: Vec<usize> = (0..u.size()).filter(|p| v.points.binary_search(p).is_err()).collect();
        let inside = u.restrict_to(stab.clone(), &v.stabilizer, &v.points)?;
        let outside = u.restrict_to(stab, &v.stabilizer, &rest)?;
        let term = inside.tensor_induce_set(x)?.product(&outside.tensor_induce_set(y)?);
        acc = acc.union(&GSet::induce(g.clone(), &v.stabilizer, &term));
    }
    Ok(acc)
}

/// Tensor induction of a ring element, asserting that the image lies in
/// the target lattice.
pub fn apply_tensor(u: &Biset, x: &RingElement, target: &Lattice) -> Result<RingElement> {
    let tag = target.tag();
    let image = tilde_u(tag, u, &x.ghost, target.ring())?;
    target.expect_element(&image, &format!("tensor induction along a ({}, {})-biset", u.left().name(), u.right().name()))
}
