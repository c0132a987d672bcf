//! Torsion units of ghost rings and representation rings, the unit group
//! functor along virtual bisets, and the Brauer lift.

use std::collections::HashMap;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::biset::VirtualBiset;
use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::ghost::{brauer_lift_ghost, tilde_d, GhostRingRef, GhostVector, RingTag};
use crate::group::linear_characters;
use crate::lattice::{Lattice, RingElement};
use crate::teninduct::tilde_u;

/// Default bound on the number of candidate vectors examined.
pub const DEFAULT_UNIT_CAP: usize = 10_000_000;

/// A finite group of units, stored as ghost vectors in enumeration order.
#[derive(Clone, Debug)]
pub struct UnitGroup {
    ring: GhostRingRef,
    /// True for units of the representation ring, false for the ghost ring.
    in_lattice: bool,
    elements: Vec<GhostVector>,
    position: HashMap<Vec<CycInt>, usize>,
}

impl UnitGroup {
    fn new(ring: GhostRingRef, in_lattice: bool, elements: Vec<GhostVector>) -> UnitGroup {
        let position = elements
            .iter()
            .enumerate()
            .map(|(i, v)| (v.values().to_vec(), i))
            .collect();
        UnitGroup {
            ring,
            in_lattice,
            elements,
            position,
        }
    }

    pub fn ring(&self) -> &GhostRingRef {
        &self.ring
    }

    pub fn tag(&self) -> RingTag {
        self.ring.tag()
    }

    pub fn in_lattice(&self) -> bool {
        self.in_lattice
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[GhostVector] {
        &self.elements
    }

    pub fn index_of(&self, v: &GhostVector) -> Option<usize> {
        if !v.ring().same_as(&self.ring) {
            return None;
        }
        self.position.get(v.values()).copied()
    }

    pub fn contains(&self, v: &GhostVector) -> bool {
        self.index_of(v).is_some()
    }

    /// Multiplication table by element index; fails if the set is not
    /// closed under products.
    pub fn table(&self) -> Result<Vec<Vec<usize>>> {
        self.elements
            .iter()
            .map(|a| {
                self.elements
                    .iter()
                    .map(|b| {
                        let c = a.mul(b)?;
                        self.index_of(&c).ok_or_else(|| {
                            Error::TheoryViolation(format!("unit group of {:?} not closed under products", self.ring))
                        })
                    })
                    .collect()
            })
            .collect()
    }

    /// Same elements, ignoring order.
    pub fn same_set(&self, others: &[GhostVector]) -> bool {
        let distinct: std::collections::HashSet<&[CycInt]> = others.iter().map(GhostVector::values).collect();
        distinct.len() == self.len() && others.iter().all(|v| self.contains(v))
    }

    /// `{tag, group, p, e, lattice, order, units: [{entries, orthogonal}]}`
    pub fn to_json(&self) -> Value {
        let units: Vec<Value> = self
            .elements
            .iter()
            .map(|u| {
                json!({
                    "entries": u.to_json()["entries"].clone(),
                    "orthogonal": u.mul(&u.dual()).map(|w| w.is_one()).unwrap_or(false),
                })
            })
            .collect();
        json!({
            "tag": self.tag().to_string(),
            "group": self.ring.group().name(),
            "p": self.ring.prime(),
            "e": self.ring.root_order(),
            "lattice": self.in_lattice,
            "order": self.len(),
            "units": units,
        })
    }
}

/// The signed roots of unity of order dividing `e`, `+z^k` before `-z^k`.
fn signed_roots(e: u32) -> Vec<CycInt> {
    let mut out: Vec<CycInt> = Vec::with_capacity(2 * e as usize);
    for sign in [1, -1] {
        for k in 0..e {
            let z = CycInt::root(e, k as i64).scale(&BigInt::from(sign));
            if !out.contains(&z) {
                out.push(z);
            }
        }
    }
    out
}

/// All torsion units of a ghost ring: signed roots of unity at each orbit
/// representative, fixed by its Galois stabilizer, spread over the orbit.
pub fn ghost_torsion_units(ring: &GhostRingRef, cap: usize) -> Result<UnitGroup> {
    let roots = signed_roots(ring.root_order());
    let choices: Vec<Vec<CycInt>> = (0..ring.orbit_reps().len())
        .map(|o| {
            roots
                .iter()
                .filter(|z| ring.stabilizer(o).iter().all(|&i| z.is_fixed_by(i as i64)))
                .cloned()
                .collect()
        })
        .collect();
    let total = choices
        .iter()
        .try_fold(1usize, |acc, c| acc.checked_mul(c.len()).filter(|&n| n <= cap));
    let Some(total) = total else {
        return Err(Error::SizeBound(format!("more than {cap} candidate units in {ring:?}")));
    };
    let mut elements = Vec::with_capacity(total);
    let mut digits = vec![0usize; choices.len()];
    for _ in 0..total {
        let values: Vec<CycInt> = digits.iter().zip(&choices).map(|(&d, c)| c[d].clone()).collect();
        elements.push(ring.from_orbit_values(&values)?);
        for (d, c) in digits.iter_mut().zip(&choices).rev() {
            *d += 1;
            if *d < c.len() {
                break;
            }
            *d = 0;
        }
    }
    Ok(UnitGroup::new(ring.clone(), false, elements))
}

/// The torsion units of a representation ring, which are its orthogonal
/// units. Every member is checked to satisfy `u dual(u) = 1`.
pub fn orthogonal_units(lattice: &Lattice, cap: usize) -> Result<UnitGroup> {
    let ghost = ghost_torsion_units(lattice.ring(), cap)?;
    let mut elements = Vec::new();
    for u in ghost.elements {
        if !lattice.contains(&u) {
            continue;
        }
        if !u.mul(&u.dual())?.is_one() {
            return Err(Error::TheoryViolation(format!("torsion unit {u:?} is not orthogonal")));
        }
        elements.push(u);
    }
    Ok(UnitGroup::new(lattice.ring().clone(), true, elements))
}

/// `+-chi` for the linear characters `chi` of the group of an `RK` ring.
pub fn signed_linear_characters(rk: &GhostRingRef) -> Result<Vec<GhostVector>> {
    if rk.tag() != RingTag::RK {
        return Err(Error::RingMismatch(format!("expected an RK ring, got {rk:?}")));
    }
    let g = rk.group();
    let mut out = Vec::new();
    for chi in linear_characters(g, rk.root_order())? {
        let values = (0..rk.len()).map(|k| chi.value(rk.element(k)).expect("total character")).collect();
        let v = rk.vector(values)?;
        out.push(v.neg());
        out.push(v);
    }
    Ok(out)
}

/// `+-chi` restricted to p-regular elements, without repeats.
pub fn restricted_linear_characters(rf: &GhostRingRef, rk: &GhostRingRef) -> Result<Vec<GhostVector>> {
    let mut out: Vec<GhostVector> = Vec::new();
    for v in signed_linear_characters(rk)? {
        let w = tilde_d(&v, rf)?;
        if !out.contains(&w) {
            out.push(w);
        }
    }
    Ok(out)
}

/// The Brauer lift `psi -> (x -> psi(x_p'))`, checked to be a section of
/// the decomposition map and to land in the character lattice.
pub fn brauer_lift(a: &RingElement, rk: &Lattice) -> Result<RingElement> {
    let lifted = brauer_lift_ghost(&a.ghost, rk.ring())?;
    if tilde_d(&lifted, a.ghost.ring())? != a.ghost {
        return Err(Error::TheoryViolation("the Brauer lift is not a section of restriction".into()));
    }
    rk.expect_element(&lifted, "Brauer lift")
}

/// The unit group functor along `a = sum plus - sum minus`: the product of
/// the tensor images along the positive terms divided by those along the
/// negative terms.
pub fn apply_unit_functor(a: &VirtualBiset, u: &GhostVector, target: &Lattice) -> Result<RingElement> {
    let tag = target.tag();
    if u.inverse().is_none() {
        return Err(Error::Invalid(format!("{u:?} is not a unit")));
    }
    let mut acc = target.ring().one();
    for b in &a.plus {
        acc = acc.mul(&tilde_u(tag, b, u, target.ring())?)?;
    }
    for b in &a.minus {
        let image = tilde_u(tag, b, u, target.ring())?;
        let inv = image
            .inverse()
            .ok_or_else(|| Error::TheoryViolation("tensor image of a unit is not a unit".into()))?;
        acc = acc.mul(&inv)?;
    }
    target.expect_element(&acc, "unit functor")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::biset::Biset;
    use crate::ghost::GhostRings;
    use crate::group::{named_group, GroupRef};
    use crate::lattice::Lattices;
    use std::sync::Arc;

    fn grp(name: &str) -> GroupRef {
        Arc::new(named_group(name, 360).unwrap())
    }

    fn lattices(name: &str, p: usize) -> Lattices {
        Lattices::new(GhostRings::with_default_order(grp(name), p).unwrap()).unwrap()
    }

    const CAP: usize = DEFAULT_UNIT_CAP;

    #[test]
    fn ghost_unit_counts() {
        let l = lattices("C2", 2);
        assert_eq!(ghost_torsion_units(l.b.ring(), CAP).unwrap().len(), 4);
        assert_eq!(ghost_torsion_units(l.t.ring(), CAP).unwrap().len(), 4);
        // +-1 at the identity, six signed roots on {x, x^2}
        let l = lattices("C3", 2);
        assert_eq!(ghost_torsion_units(l.rk.ring(), CAP).unwrap().len(), 12);
    }

    #[test]
    fn burnside_units() {
        let l = lattices("C2", 2);
        let units = orthogonal_units(&l.b, CAP).unwrap();
        assert_eq!(units.len(), 4);
        let m = l.b.ring().vector(vec![CycInt::from_int(1, 1), CycInt::from_int(1, -1)]).unwrap();
        assert!(units.contains(&m));
        for name in ["S3", "D8", "A4"] {
            let l = lattices(name, 2);
            for u in orthogonal_units(&l.b, CAP).unwrap().elements() {
                assert!(u.mul(u).unwrap().is_one());
            }
        }
    }

    #[test]
    fn signed_linear_character_examples() {
        for (name, count) in [("C2", 4), ("S3", 4), ("C3", 6), ("1", 2)] {
            let l = lattices(name, 3);
            let units = orthogonal_units(&l.rk, CAP).unwrap();
            assert_eq!(units.len(), count, "{name}");
            assert!(units.same_set(&signed_linear_characters(l.rk.ring()).unwrap()));
        }
        let l = lattices("S3", 3);
        assert_eq!(restricted_linear_characters(l.rf.ring(), l.rk.ring()).unwrap().len(), 4);
        let l = lattices("C2", 2);
        assert_eq!(restricted_linear_characters(l.rf.ring(), l.rk.ring()).unwrap().len(), 2);
        for tag in RingTag::ALL {
            assert_eq!(orthogonal_units(lattices("1", 2).get(tag), CAP).unwrap().len(), 2);
        }
    }

    #[test]
    fn brauer_lift_of_sign() {
        let l = lattices("S3", 3);
        let sign = signed_linear_characters(l.rk.ring())
            .unwrap()
            .into_iter()
            .find(|v| !v.is_one() && v.value(0).is_one())
            .unwrap();
        let restricted = l.rf.element(&tilde_d(&sign, l.rf.ring()).unwrap()).unwrap();
        assert_eq!(brauer_lift(&restricted, &l.rk).unwrap().ghost, sign);
        for gen in l.rf.generators() {
            brauer_lift(&l.rf.element(gen).unwrap(), &l.rk).unwrap();
        }
    }

    #[test]
    fn unit_functor_along_induction() {
        let g = grp("C4");
        let lat = g.subgroups();
        let k = (0..lat.len()).find(|&k| lat.get(k).order() == 2).unwrap();
        let elems = lat.get(k).elems().to_vec();
        let h: GroupRef = Arc::new(g.subgroup_as_group("C2", &elems).unwrap());
        let u = Biset::induction(g.clone(), h.clone(), &elems).unwrap();
        let lg = Lattices::new(GhostRings::new(g.clone(), 2, 4).unwrap()).unwrap();
        let lh = Lattices::new(GhostRings::new(h.clone(), 2, 4).unwrap()).unwrap();
        let sign = signed_linear_characters(lh.rk.ring()).unwrap().into_iter().find(|v| !v.value(1).is_one() && v.value(0).is_one()).unwrap();
        let image = apply_unit_functor(&VirtualBiset::from_biset(u.clone()), &sign, &lg.rk).unwrap();
        assert_eq!(image.ghost.pow(2), lg.rk.ring().one());
        assert!(!image.ghost.is_one());
        // U - U + U acts like U
        let a = VirtualBiset::new(vec![u.clone(), u.clone()], vec![u.clone()]).unwrap();
        assert_eq!(apply_unit_functor(&a, &sign, &lg.rk).unwrap(), image);
    }
}
