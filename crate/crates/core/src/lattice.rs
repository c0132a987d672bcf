//! Representation rings as full-rank lattices inside their ghost rings.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::ghost::{tilde_b, tilde_c, tilde_d, tilde_l, GhostRingRef, GhostRings, GhostVector, RingTag};
use crate::group::{linear_characters_of_subgroup, Group, LinearCharacter};
use crate::gset::GSet;
use crate::intmat::{smith_invariants, Hnf, Row};

/// Marks `|X^S|` of a `G`-set, as a vector of the Burnside ghost ring.
pub fn marks(x: &GSet, b: &GhostRingRef) -> Result<GhostVector> {
    if b.tag() != RingTag::B || **x.group() != **b.group() {
        return Err(Error::RingMismatch(format!("marks of a {}-set in {b:?}", x.group().name())));
    }
    let values = x.marks().into_iter().map(|m| CycInt::from_int(1, m as i64)).collect();
    Ok(b.vector_unchecked(values))
}

/// Left coset representatives `g` of `S`, least member of each coset.
fn coset_reps(g: &Group, s: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; g.order()];
    let mut reps = Vec::new();
    for x in g.elements() {
        if seen[x] {
            continue;
        }
        reps.push(x);
        for &y in s {
            seen[g.mul(x, y)] = true;
        }
    }
    reps
}

/// The species of the monomial module induced from a linear character
/// `psi` of `S` of order prime to `p`. At `(E, s O_p(E))` the value is the
/// sum of `psi(g^-1 s g)` over the cosets `gS` fixed by `E`.
pub fn monomial_ghost_t(t: &GhostRingRef, s: usize, psi: &LinearCharacter) -> Result<GhostVector> {
    if t.tag() != RingTag::T {
        return Err(Error::RingMismatch(format!("expected a T ring, got {t:?}")));
    }
    let p = t.prime().expect("T rings carry a prime");
    if psi.order() as usize % p == 0 {
        return Err(Error::Invalid(format!(
            "character of order {} is not of order prime to {p}",
            psi.order()
        )));
    }
    let g = t.group();
    let lat = g.subgroups();
    let sub = lat.get(s);
    if psi.domain() != sub.elems() {
        return Err(Error::Invalid("character is not defined on the given subgroup".into()));
    }
    let e = t.root_order();
    let scale = e / psi.root_order();
    if e % psi.root_order() != 0 {
        return Err(Error::NotDivisible {
            divisor: psi.root_order() as u64,
            value: e as u64,
        });
    }
    let reps = coset_reps(g, sub.elems());
    let values = t
        .pairs()
        .iter()
        .map(|q| {
            let egens = lat.get(q.subgroup).gens();
            let mut acc = CycInt::zero(e);
            for &x in &reps {
                let xi = g.inv(x);
                if egens.iter().all(|&y| sub.contains(g.mul(g.mul(xi, y), x))) {
                    let k = psi
                        .exponent_at(g.mul(g.mul(xi, q.rep), x))
                        .expect("conjugated representative lies in S");
                    acc = &acc + &CycInt::root(e, (k * scale) as i64);
                }
            }
            acc
        })
        .collect();
    Ok(t.vector_unchecked(values))
}

/// The character induced from a linear character `psi` of `S`:
/// `x -> (1/|S|) sum over g with g^-1 x g in S of psi(g^-1 x g)`.
pub fn induced_character(rk: &GhostRingRef, s: usize, psi: &LinearCharacter) -> Result<GhostVector> {
    if rk.tag() != RingTag::RK {
        return Err(Error::RingMismatch(format!("expected an RK ring, got {rk:?}")));
    }
    let g = rk.group();
    let sub = g.subgroups().get(s);
    let e = rk.root_order();
    if e % psi.root_order() != 0 {
        return Err(Error::NotDivisible {
            divisor: psi.root_order() as u64,
            value: e as u64,
        });
    }
    let scale = e / psi.root_order();
    let order = BigInt::from(sub.order());
    let values = g
        .elements()
        .map(|x| {
            let mut acc = CycInt::zero(e);
            for y in g.elements() {
                let c = g.mul(g.mul(g.inv(y), x), y);
                if let Some(k) = psi.exponent_at(c) {
                    acc = &acc + &CycInt::root(e, (k * scale) as i64);
                }
            }
            acc.div_exact(&order)
                .ok_or_else(|| Error::TheoryViolation("induced character sum not divisible by |S|".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(rk.vector_unchecked(values))
}

/// Whether the subgroup is `q`-elementary for some prime `q`: a direct
/// product of a cyclic `q'`-group and a `q`-group.
pub fn is_elementary(g: &Group, elems: &[usize]) -> bool {
    let order = elems.len();
    let is_cyclic = |set: &[usize]| set.iter().any(|&x| g.elem_order(x) == set.len());
    if is_cyclic(elems) {
        return true;
    }
    (2..=order).filter(|q| order % q == 0 && (2..*q).all(|d| q % d != 0)).any(|q| {
        let regular: Vec<usize> = elems.iter().copied().filter(|&x| g.elem_order(x) % q != 0).collect();
        let closed = regular
            .iter()
            .all(|&a| regular.iter().all(|&b| regular.contains(&g.mul(a, b))));
        closed
            && is_cyclic(&regular)
            && elems
                .iter()
                .filter(|&&x| g.elem_order(x) % q == 0 || x == 0)
                .all(|&x| regular.iter().all(|&c| g.mul(x, c) == g.mul(c, x)))
    })
}

/// Result of a membership test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    /// Coordinates against the Hermite basis; unique.
    pub hnf_coords: Vec<BigInt>,
    /// One integer combination of the generators; unique when the
    /// generators are independent.
    pub generator_coords: Vec<BigInt>,
}

/// A full-rank sublattice of a ghost ring, given by generators.
#[derive(Clone, Debug)]
pub struct Lattice {
    ring: GhostRingRef,
    generators: Vec<GhostVector>,
    labels: Vec<String>,
    hnf: Hnf,
}

/// An element of a representation ring: its ghost vector with coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingElement {
    pub ghost: GhostVector,
    pub coords: Membership,
}

impl Lattice {
    /// Fails with a theory violation unless the generators span a lattice of
    /// the same rank as the ghost ring.
    pub fn from_generators(ring: GhostRingRef, generators: Vec<GhostVector>, labels: Vec<String>) -> Result<Lattice> {
        for v in &generators {
            if !v.ring().same_as(&ring) {
                return Err(Error::RingMismatch(format!("generator of {:?} in {ring:?}", v.ring())));
            }
        }
        let rows: Vec<Row> = generators.iter().map(GhostVector::flatten).collect();
        let hnf = Hnf::new(&rows, ring.flat_width());
        if hnf.rank() != ring.rank() {
            return Err(Error::TheoryViolation(format!(
                "{ring:?}: generators have rank {} but the ghost ring has rank {}",
                hnf.rank(),
                ring.rank()
            )));
        }
        Ok(Lattice {
            ring,
            generators,
            labels,
            hnf,
        })
    }

    pub fn ring(&self) -> &GhostRingRef {
        &self.ring
    }

    pub fn tag(&self) -> RingTag {
        self.ring.tag()
    }

    pub fn generators(&self) -> &[GhostVector] {
        &self.generators
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn hnf(&self) -> &Hnf {
        &self.hnf
    }

    pub fn rank(&self) -> usize {
        self.hnf.rank()
    }

    /// Rows of the Hermite basis as ghost vectors.
    pub fn basis(&self) -> Vec<GhostVector> {
        // each Hermite row is U times the generators
        self.hnf
            .transform
            .iter()
            .map(|u| self.combine(u))
            .collect()
    }

    /// `sum c_i g_i` over the generators.
    pub fn combine(&self, coeffs: &[BigInt]) -> GhostVector {
        let mut acc = self.ring.zero();
        for (c, g) in coeffs.iter().zip(&self.generators) {
            if c.is_zero() {
                continue;
            }
            let term = if c.is_one() {
                g.clone()
            } else {
                let values = g.values().iter().map(|z| z.scale(c)).collect();
                self.ring.vector_unchecked(values)
            };
            acc = acc.add(&term).expect("same ring");
        }
        acc
    }

    pub fn membership(&self, v: &GhostVector) -> Option<Membership> {
        if !v.ring().same_as(&self.ring) || !v.is_invariant() {
            return None;
        }
        let hnf_coords = self.hnf.solve(&v.flatten())?;
        let generator_coords = self.hnf.to_generators(&hnf_coords);
        Some(Membership {
            hnf_coords,
            generator_coords,
        })
    }

    pub fn contains(&self, v: &GhostVector) -> bool {
        self.membership(v).is_some()
    }

    pub fn element(&self, v: &GhostVector) -> Option<RingElement> {
        self.membership(v).map(|coords| RingElement {
            ghost: v.clone(),
            coords,
        })
    }

    /// Like [`Lattice::element`], but a missing member is a theory violation.
    pub fn expect_element(&self, v: &GhostVector, what: &str) -> Result<RingElement> {
        self.element(v).ok_or_else(|| {
            Error::TheoryViolation(format!("{what}: {v:?} is not in the {} lattice", self.tag()))
        })
    }

    /// Smith invariants of the generators inside the ghost ring; the
    /// cokernel is the product of the cyclic groups of these orders.
    pub fn cokernel_invariants(&self) -> Vec<BigInt> {
        smith_invariants(&self.hnf.rows, self.ring.flat_width())
    }

    pub fn cokernel_order(&self) -> BigInt {
        self.cokernel_invariants().iter().product()
    }

    pub fn cokernel_exponent(&self) -> BigInt {
        self.cokernel_invariants()
            .iter()
            .fold(BigInt::one(), |acc, d| acc.lcm(d))
    }
}

/// The table of marks: marks of `G/S` for one `S` per conjugacy class,
/// largest subgroups first so that `G/G` leads.
pub fn burnside_lattice(b: &GhostRingRef) -> Result<Lattice> {
    let g = b.group().clone();
    let lat = g.subgroups();
    let mut gens = Vec::new();
    let mut labels = Vec::new();
    for s in lat.class_reps().into_iter().rev() {
        gens.push(marks(&GSet::cosets(g.clone(), lat.get(s).elems()), b)?);
        labels.push(format!("{}/#{s}", g.name()));
    }
    Lattice::from_generators(b.clone(), gens, labels)
}

/// Monomial modules `Ind_S^G psi` over subgroup classes and linear
/// characters of order prime to `p`.
pub fn trivial_source_lattice(t: &GhostRingRef) -> Result<Lattice> {
    let g = t.group().clone();
    let p = t.prime().expect("T rings carry a prime");
    let lat = g.subgroups();
    let mut gens = Vec::new();
    let mut labels = Vec::new();
    for s in lat.class_reps() {
        let chars = linear_characters_of_subgroup(&g, lat.get(s).elems(), t.root_order())?;
        for (j, psi) in chars.iter().enumerate() {
            if psi.order() as usize % p == 0 {
                continue;
            }
            gens.push(monomial_ghost_t(t, s, psi)?);
            labels.push(format!("Ind_#{s}(psi{j})"));
        }
    }
    Lattice::from_generators(t.clone(), gens, labels)
}

/// Characters induced from linear characters of elementary subgroups.
pub fn character_lattice(rk: &GhostRingRef) -> Result<Lattice> {
    let (gens, labels) = character_generators(rk)?;
    Lattice::from_generators(rk.clone(), gens, labels)
}

fn character_generators(rk: &GhostRingRef) -> Result<(Vec<GhostVector>, Vec<String>)> {
    let g = rk.group().clone();
    let lat = g.subgroups();
    let mut gens = Vec::new();
    let mut labels = Vec::new();
    for s in lat.class_reps() {
        if !is_elementary(&g, lat.get(s).elems()) {
            continue;
        }
        let chars = linear_characters_of_subgroup(&g, lat.get(s).elems(), rk.root_order())?;
        for (j, psi) in chars.iter().enumerate() {
            gens.push(induced_character(rk, s, psi)?);
            labels.push(format!("Ind_#{s}(chi{j})"));
        }
    }
    Ok((gens, labels))
}

/// Brauer characters as restrictions of the character generators.
pub fn brauer_lattice(rf: &GhostRingRef, rk: &GhostRingRef) -> Result<Lattice> {
    let (gens, labels) = character_generators(rk)?;
    let gens = gens
        .iter()
        .map(|v| tilde_d(v, rf))
        .collect::<Result<Vec<_>>>()?;
    Lattice::from_generators(rf.clone(), gens, labels)
}

/// The four representation rings of a group for one prime.
#[derive(Clone, Debug)]
pub struct Lattices {
    pub rings: GhostRings,
    pub b: Arc<Lattice>,
    pub t: Arc<Lattice>,
    pub rk: Arc<Lattice>,
    pub rf: Arc<Lattice>,
}

impl Lattices {
    pub fn new(rings: GhostRings) -> Result<Lattices> {
        Ok(Lattices {
            b: Arc::new(burnside_lattice(&rings.b)?),
            t: Arc::new(trivial_source_lattice(&rings.t)?),
            rk: Arc::new(character_lattice(&rings.rk)?),
            rf: Arc::new(brauer_lattice(&rings.rf, &rings.rk)?),
            rings,
        })
    }

    pub fn get(&self, tag: RingTag) -> &Arc<Lattice> {
        match tag {
            RingTag::B => &self.b,
            RingTag::T => &self.t,
            RingTag::RK => &self.rk,
            RingTag::RF => &self.rf,
        }
    }
}

/// One of the four maps between representation rings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConnectingMap {
    /// Burnside ring to trivial source ring (permutation modules).
    L,
    /// Trivial source ring to Brauer characters.
    B,
    /// Trivial source ring to characters.
    C,
    /// Characters to Brauer characters (decomposition).
    D,
}

impl ConnectingMap {
    pub fn source(self) -> RingTag {
        match self {
            ConnectingMap::L => RingTag::B,
            ConnectingMap::B | ConnectingMap::C => RingTag::T,
            ConnectingMap::D => RingTag::RK,
        }
    }

    pub fn target(self) -> RingTag {
        match self {
            ConnectingMap::L => RingTag::T,
            ConnectingMap::B | ConnectingMap::D => RingTag::RF,
            ConnectingMap::C => RingTag::RK,
        }
    }

    /// The map at ghost level.
    pub fn apply_ghost(self, v: &GhostVector, target: &GhostRingRef) -> Result<GhostVector> {
        match self {
            ConnectingMap::L => tilde_l(v, target),
            ConnectingMap::B => tilde_b(v, target),
            ConnectingMap::C => tilde_c(v, target),
            ConnectingMap::D => tilde_d(v, target),
        }
    }
}

/// Applies a connecting map to a ring element, asserting that the image
/// lies in the target lattice.
pub fn connect(map: ConnectingMap, x: &RingElement, target: &Lattice) -> Result<RingElement> {
    if x.ghost.ring().tag() != map.source() || target.tag() != map.target() {
        return Err(Error::RingMismatch(format!("{map:?} does not go from {} to {}", x.ghost.ring().tag(), target.tag())));
    }
    let image = map.apply_ghost(&x.ghost, target.ring())?;
    target.expect_element(&image, &format!("connecting map {map:?}"))
}
