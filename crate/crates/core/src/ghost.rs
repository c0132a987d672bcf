//! Ghost rings: invariant vectors of cyclotomic integers indexed by
//! subgroups, hypo-elementary pairs, elements or p-regular elements.
//!
//! All rings of one group share a single root-of-unity order `e`, a
//! multiple of the group exponent. The Galois group of `Q(z_e)` acts
//! through `i`, prime to `e`; invariance under `i = 1 mod h` pins the values
//! of the trivial source and Brauer ghost rings into `Z[z_h]`, `h` the
//! p'-part of `e`, so these rings need no separate value ring.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cyclotomic::{euler_phi, units_mod, CycInt};
use crate::error::{Error, Result};
use crate::group::{p_parts, GroupRef, HypoPairs};

/// Which ghost ring a vector belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RingTag {
    /// Burnside ring: marks at subgroups.
    B,
    /// Trivial source ring: species at pairs `(E, c)`.
    T,
    /// Character ring over characteristic zero: values at elements.
    RK,
    /// Brauer character ring: values at p-regular elements.
    RF,
}

impl RingTag {
    pub const ALL: [RingTag; 4] = [RingTag::B, RingTag::T, RingTag::RK, RingTag::RF];

    pub fn needs_prime(self) -> bool {
        matches!(self, RingTag::T | RingTag::RF)
    }
}

impl fmt::Display for RingTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RingTag::B => "B",
            RingTag::T => "T",
            RingTag::RK => "RK",
            RingTag::RF => "RF",
        })
    }
}

impl FromStr for RingTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<RingTag> {
        match s.to_ascii_uppercase().as_str() {
            "B" => Ok(RingTag::B),
            "T" => Ok(RingTag::T),
            "RK" => Ok(RingTag::RK),
            "RF" => Ok(RingTag::RF),
            _ => Err(Error::Parse(format!("unknown ring `{s}`, expected B, T, RK or RF"))),
        }
    }
}

/// A ghost ring: its index set, the group and Galois actions on it, and the
/// orbit data used to flatten vectors into integer coordinates.
pub struct GhostRing {
    tag: RingTag,
    group: GroupRef,
    p: Option<usize>,
    e: u32,
    pairs: Option<Arc<HypoPairs>>,
    /// Group element at each index (RK, RF).
    elements: Vec<usize>,
    /// Index of each group element (RF; `usize::MAX` off the domain).
    position: Vec<usize>,
    len: usize,
    /// `(rep, i)` with index `k` in the `G`-orbit of `rep^i`, so that the
    /// value at `k` is `galois_i` of the value at `rep`.
    transport: Vec<(usize, u32)>,
    reps: Vec<usize>,
    /// Galois exponents fixing the `G`-orbit of each representative.
    stabilizers: Vec<Vec<u32>>,
}

impl fmt::Debug for GhostRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GhostRing({} of {}", self.tag, self.group.name())?;
        if let Some(p) = self.p {
            write!(f, ", p={p}")?;
        }
        write!(f, ", e={})", self.e)
    }
}

pub type GhostRingRef = Arc<GhostRing>;

impl GhostRing {
    /// Builds a ghost ring. `p` is required for `T` and `RF` and ignored
    /// otherwise; `e` must be a multiple of the group exponent and is forced
    /// to 1 for `B`.
    pub fn new(tag: RingTag, group: GroupRef, p: Option<usize>, e: u32) -> Result<GhostRingRef> {
        let p = if tag.needs_prime() {
            let p = p.ok_or_else(|| Error::Invalid(format!("ring {tag} needs a prime")))?;
            if p < 2 || (2..p).any(|d| p % d == 0) {
                return Err(Error::Invalid(format!("{p} is not a prime")));
            }
            Some(p)
        } else {
            None
        };
        let e = if tag == RingTag::B { 1 } else { e };
        if e == 0 || (tag != RingTag::B && e as usize % group.exponent() != 0) {
            return Err(Error::NotDivisible {
                divisor: group.exponent() as u64,
                value: e as u64,
            });
        }
        let mut pairs = None;
        let mut elements = Vec::new();
        let mut position = Vec::new();
        let len = match tag {
            RingTag::B => group.subgroups().len(),
            RingTag::T => {
                let hp = HypoPairs::new(&group, p.unwrap());
                let n = hp.len();
                pairs = Some(Arc::new(hp));
                n
            }
            RingTag::RK => {
                elements = group.elements().collect();
                position = elements.clone();
                elements.len()
            }
            RingTag::RF => {
                let p = p.unwrap();
                elements = group.elements().filter(|&x| group.elem_order(x) % p != 0).collect();
                position = vec![usize::MAX; group.order()];
                for (k, &x) in elements.iter().enumerate() {
                    position[x] = k;
                }
                elements.len()
            }
        };
        let mut ring = GhostRing {
            tag,
            group,
            p,
            e,
            pairs,
            elements,
            position,
            len,
            transport: Vec::new(),
            reps: Vec::new(),
            stabilizers: Vec::new(),
        };
        ring.compute_orbits();
        Ok(Arc::new(ring))
    }

    /// The ring with `e` equal to the group exponent.
    pub fn with_default_order(tag: RingTag, group: GroupRef, p: Option<usize>) -> Result<GhostRingRef> {
        let e = group.exponent() as u32;
        GhostRing::new(tag, group, p, e)
    }

    fn compute_orbits(&mut self) {
        let n = self.len;
        let units = units_mod(self.e);
        let gens: Vec<usize> = {
            let lat = self.group.subgroups();
            lat.get(lat.whole()).gens().to_vec()
        };
        let mut transport = vec![(usize::MAX, 0u32); n];
        for k in 0..n {
            if transport[k].0 != usize::MAX {
                continue;
            }
            let rep = k;
            transport[k] = (rep, 1 % self.e);
            let mut stack = vec![k];
            while let Some(m) = stack.pop() {
                let im = transport[m].1;
                for &g in &gens {
                    let y = self.conj_index(g, m);
                    if transport[y].0 == usize::MAX {
                        transport[y] = (rep, im);
                        stack.push(y);
                    }
                }
                for &j in units {
                    let y = self.galois_index(m, j);
                    if transport[y].0 == usize::MAX {
                        transport[y] = (rep, (im as u64 * j as u64 % self.e as u64) as u32);
                        stack.push(y);
                    }
                }
            }
            let orbit = self.group_orbit(rep, &gens);
            let stab = units
                .iter()
                .copied()
                .filter(|&i| orbit.binary_search(&self.galois_index(rep, i)).is_ok())
                .collect();
            self.reps.push(rep);
            self.stabilizers.push(stab);
        }
        self.transport = transport;
    }

    /// Sorted `G`-orbit of an index.
    fn group_orbit(&self, k: usize, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![k];
        let mut stack = vec![k];
        while let Some(m) = stack.pop() {
            for &g in gens {
                let y = self.conj_index(g, m);
                if !seen.contains(&y) {
                    seen.push(y);
                    stack.push(y);
                }
            }
        }
        seen.sort_unstable();
        seen
    }

    /// The index `x k x^-1`.
    pub fn conj_index(&self, x: usize, k: usize) -> usize {
        let g = &self.group;
        match self.tag {
            RingTag::B => g.subgroups().conj(x, k),
            RingTag::T => self.pairs().conj(g, x, k),
            RingTag::RK => g.conj(x, k),
            RingTag::RF => self.position[g.conj(x, self.elements[k])],
        }
    }

    /// The index `k^i` (`(E, c^i)` for pairs); identity on subgroups.
    pub fn galois_index(&self, k: usize, i: u32) -> usize {
        let g = &self.group;
        match self.tag {
            RingTag::B => k,
            RingTag::T => self.pairs().power(g, k, i as i64),
            RingTag::RK => g.pow(k, i as i64),
            RingTag::RF => self.position[g.pow(self.elements[k], i as i64)],
        }
    }

    pub fn tag(&self) -> RingTag {
        self.tag
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn prime(&self) -> Option<usize> {
        self.p
    }

    /// Root-of-unity order of the value ring.
    pub fn root_order(&self) -> u32 {
        self.e
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// The pairs `(E, c)` indexing a `T` ring.
    pub fn pairs(&self) -> &HypoPairs {
        self.pairs.as_deref().expect("only T rings are indexed by pairs")
    }

    /// Group element at an index of an `RK` or `RF` ring.
    pub fn element(&self, k: usize) -> usize {
        self.elements[k]
    }

    /// Index of a group element in an `RK` or `RF` ring.
    pub fn index_of_element(&self, x: usize) -> Option<usize> {
        match self.tag {
            RingTag::RK => (x < self.group.order()).then_some(x),
            RingTag::RF => self.position.get(x).copied().filter(|&k| k != usize::MAX),
            _ => None,
        }
    }

    /// Representatives of the orbits of `G` times the Galois group.
    pub fn orbit_reps(&self) -> &[usize] {
        &self.reps
    }

    pub fn stabilizer(&self, orbit: usize) -> &[u32] {
        &self.stabilizers[orbit]
    }

    /// `(rep, i)` with value at `k` equal to `galois_i` of the value at `rep`.
    pub fn transport(&self, k: usize) -> (usize, u32) {
        self.transport[k]
    }

    /// Rank of the ring as a free abelian group.
    pub fn rank(&self) -> usize {
        let phi = euler_phi(self.e);
        self.stabilizers.iter().map(|s| phi / s.len()).sum()
    }

    /// Integer coordinates per vector: `phi(e)` for each orbit representative.
    pub fn flat_width(&self) -> usize {
        self.reps.len() * euler_phi(self.e)
    }

    pub fn same_as(&self, other: &GhostRing) -> bool {
        self.tag == other.tag && self.p == other.p && self.e == other.e && *self.group == *other.group
    }

    fn check_same(&self, other: &GhostRing) -> Result<()> {
        if self.same_as(other) {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!("{self:?} vs {other:?}")))
        }
    }

    /// Human-readable label of an index.
    pub fn index_label(&self, k: usize) -> String {
        let g = &self.group;
        match self.tag {
            RingTag::B => format!("{:?}", g.subgroups().get(k).elems()),
            RingTag::T => {
                let q = self.pairs().get(k);
                format!("({:?}, {})", g.subgroups().get(q.subgroup).elems(), q.rep)
            }
            RingTag::RK | RingTag::RF => self.elements[k].to_string(),
        }
    }

    /// Index as JSON: subgroup element list, `{E, s}` for pairs, or element.
    pub fn index_json(&self, k: usize) -> Value {
        let g = &self.group;
        match self.tag {
            RingTag::B => json!(g.subgroups().get(k).elems()),
            RingTag::T => {
                let q = self.pairs().get(k);
                json!({"E": g.subgroups().get(q.subgroup).elems(), "s": q.rep})
            }
            RingTag::RK | RingTag::RF => json!(self.elements[k]),
        }
    }

    fn index_from_json(&self, v: &Value) -> Result<usize> {
        let bad = || Error::Parse(format!("not an index of {self:?}: {v}"));
        let elems = |v: &Value| -> Result<Vec<usize>> {
            serde_json::from_value::<Vec<usize>>(v.clone()).map_err(|_| bad())
        };
        let lat = self.group.subgroups();
        match self.tag {
            RingTag::B => lat.index_of(&elems(v)?).ok_or_else(bad),
            RingTag::T => {
                let e = lat.index_of(&elems(&v["E"])?).ok_or_else(bad)?;
                let s = v["s"].as_u64().ok_or_else(bad)? as usize;
                self.pairs().find(e, s).ok_or_else(bad)
            }
            RingTag::RK | RingTag::RF => {
                let x = v.as_u64().ok_or_else(bad)? as usize;
                self.index_of_element(x).ok_or_else(bad)
            }
        }
    }

    pub fn zero(self: &Arc<Self>) -> GhostVector {
        self.constant(0)
    }

    pub fn one(self: &Arc<Self>) -> GhostVector {
        self.constant(1)
    }

    pub fn constant(self: &Arc<Self>, n: i64) -> GhostVector {
        GhostVector {
            ring: self.clone(),
            values: vec![CycInt::from_int(self.e, n); self.len],
        }
    }

    /// A vector from values at every index, checked for invariance.
    pub fn vector(self: &Arc<Self>, values: Vec<CycInt>) -> Result<GhostVector> {
        if values.len() != self.len {
            return Err(Error::RingMismatch(format!(
                "{} values for {} indices",
                values.len(),
                self.len
            )));
        }
        if let Some(v) = values.iter().find(|v| v.order() != self.e) {
            return Err(Error::OrderMismatch(v.order(), self.e));
        }
        let v = GhostVector {
            ring: self.clone(),
            values,
        };
        match v.invariance_violation() {
            None => Ok(v),
            Some(w) => Err(Error::Invalid(format!("vector is not invariant: {w}"))),
        }
    }

    pub(crate) fn vector_unchecked(self: &Arc<Self>, values: Vec<CycInt>) -> GhostVector {
        debug_assert_eq!(values.len(), self.len);
        GhostVector {
            ring: self.clone(),
            values,
        }
    }

    /// A vector from values at the orbit representatives, spread over each
    /// orbit. Fails if a value is not fixed by the representative's
    /// stabilizer.
    pub fn from_orbit_values(self: &Arc<Self>, rep_values: &[CycInt]) -> Result<GhostVector> {
        if rep_values.len() != self.reps.len() {
            return Err(Error::RingMismatch(format!(
                "{} values for {} orbits",
                rep_values.len(),
                self.reps.len()
            )));
        }
        for (o, z) in rep_values.iter().enumerate() {
            if z.order() != self.e {
                return Err(Error::OrderMismatch(z.order(), self.e));
            }
            if let Some(&i) = self.stabilizers[o].iter().find(|&&i| !z.is_fixed_by(i as i64)) {
                return Err(Error::Invalid(format!(
                    "value {z} at orbit {o} is not fixed by galois exponent {i}"
                )));
            }
        }
        Ok(self.spread(rep_values))
    }

    fn spread(self: &Arc<Self>, rep_values: &[CycInt]) -> GhostVector {
        let orbit_of_rep = |r: usize| self.reps.binary_search(&r).expect("orbit representative");
        let values = (0..self.len)
            .map(|k| {
                let (r, i) = self.transport[k];
                rep_values[orbit_of_rep(r)].galois(i as i64)
            })
            .collect();
        self.vector_unchecked(values)
    }

    /// A random invariant vector with coefficients drawn from `-bound..=bound`
    /// before symmetrizing over each stabilizer.
    pub fn random_vector<R: Rng + ?Sized>(self: &Arc<Self>, rng: &mut R, bound: i64) -> GhostVector {
        let phi = euler_phi(self.e);
        let rep_values: Vec<CycInt> = self
            .stabilizers
            .iter()
            .map(|stab| {
                let coeffs: Vec<BigInt> = (0..phi).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect();
                let z = CycInt::from_coeffs(self.e, &coeffs);
                stab.iter()
                    .fold(CycInt::zero(self.e), |acc, &i| &acc + &z.galois(i as i64))
            })
            .collect();
        self.spread(&rep_values)
    }

    /// Parses `{entries: [{index, value}]}`, as written by
    /// [`GhostVector::to_json`]. Indices not listed take the value zero;
    /// the result must be invariant.
    pub fn vector_from_json(self: &Arc<Self>, v: &Value) -> Result<GhostVector> {
        let entries = v["entries"]
            .as_array()
            .ok_or_else(|| Error::Parse("missing `entries` array".into()))?;
        let mut values = vec![CycInt::zero(self.e); self.len];
        for entry in entries {
            let k = self.index_from_json(&entry["index"])?;
            let z: CycInt = serde_json::from_value(entry["value"].clone())
                .map_err(|err| Error::Parse(format!("bad value: {err}")))?;
            values[k] = z.embed(self.e)?;
        }
        self.vector(values)
    }
}

/// An element of a ghost ring: one cyclotomic integer per index.
#[derive(Clone)]
pub struct GhostVector {
    ring: GhostRingRef,
    values: Vec<CycInt>,
}

impl fmt::Debug for GhostVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[", self.ring)?;
        for (k, v) in self.values.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

impl PartialEq for GhostVector {
    fn eq(&self, other: &GhostVector) -> bool {
        self.ring.same_as(&other.ring) && self.values == other.values
    }
}

impl Eq for GhostVector {}

impl std::hash::Hash for GhostVector {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.values.hash(state);
    }
}

impl GhostVector {
    pub fn ring(&self) -> &GhostRingRef {
        &self.ring
    }

    pub fn values(&self) -> &[CycInt] {
        &self.values
    }

    pub fn value(&self, k: usize) -> &CycInt {
        &self.values[k]
    }

    /// Values at the orbit representatives.
    pub fn orbit_values(&self) -> Vec<CycInt> {
        self.ring.reps.iter().map(|&r| self.values[r].clone()).collect()
    }

    /// Integer coordinates: the coefficients of each orbit representative.
    pub fn flatten(&self) -> Vec<BigInt> {
        self.ring
            .reps
            .iter()
            .flat_map(|&r| self.values[r].coeffs().iter().cloned())
            .collect()
    }

    fn zip_with(&self, other: &GhostVector, f: impl Fn(&CycInt, &CycInt) -> CycInt) -> Result<GhostVector> {
        self.ring.check_same(&other.ring)?;
        Ok(GhostVector {
            ring: self.ring.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &GhostVector) -> Result<GhostVector> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &GhostVector) -> Result<GhostVector> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &GhostVector) -> Result<GhostVector> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn neg(&self) -> GhostVector {
        self.map(|z| -z.clone())
    }

    pub fn scale(&self, n: i64) -> GhostVector {
        let n = BigInt::from(n);
        self.map(|z| z.scale(&n))
    }

    pub fn pow(&self, k: u32) -> GhostVector {
        self.map(|z| z.pow(k))
    }

    fn map(&self, f: impl Fn(&CycInt) -> CycInt) -> GhostVector {
        GhostVector {
            ring: self.ring.clone(),
            values: self.values.iter().map(f).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(CycInt::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.values.iter().all(CycInt::is_one)
    }

    /// Componentwise `z -> z^-1` on roots of unity; the identity on `B`.
    pub fn dual(&self) -> GhostVector {
        self.map(CycInt::conjugate)
    }

    /// The inverse, if every component is a unit.
    pub fn inverse(&self) -> Option<GhostVector> {
        let values = self.values.iter().map(CycInt::inverse).collect::<Option<Vec<_>>>()?;
        Some(GhostVector {
            ring: self.ring.clone(),
            values,
        })
    }

    /// The first violated invariance condition, if any.
    pub fn invariance_violation(&self) -> Option<String> {
        let ring = &self.ring;
        let lat = ring.group.subgroups();
        let gens = lat.get(lat.whole()).gens();
        for k in 0..ring.len {
            for &g in gens {
                let y = ring.conj_index(g, k);
                if self.values[y] != self.values[k] {
                    return Some(format!(
                        "conjugating index {} by element {g} changes {} to {}",
                        ring.index_label(k),
                        self.values[k],
                        self.values[y]
                    ));
                }
            }
            for &i in units_mod(ring.e) {
                let y = ring.galois_index(k, i);
                if self.values[y] != self.values[k].galois(i as i64) {
                    return Some(format!(
                        "value {} at index {} is not galois_{i} of {} at index {}",
                        self.values[y],
                        ring.index_label(y),
                        self.values[k],
                        ring.index_label(k)
                    ));
                }
            }
        }
        None
    }

    pub fn is_invariant(&self) -> bool {
        self.invariance_violation().is_none()
    }

    /// `{tag, group, p, e, entries: [{index, value}]}`
    pub fn to_json(&self) -> Value {
        let ring = &self.ring;
        json!({
            "tag": ring.tag.to_string(),
            "group": ring.group.name(),
            "p": ring.p,
            "e": ring.e,
            "entries": (0..ring.len)
                .map(|k| json!({"index": ring.index_json(k), "value": self.values[k]}))
                .collect::<Vec<_>>(),
        })
    }
}

fn check_group(a: &GhostRing, b: &GhostRing) -> Result<()> {
    if *a.group != *b.group {
        return Err(Error::RingMismatch(format!(
            "groups differ: {} and {}",
            a.group.name(),
            b.group.name()
        )));
    }
    Ok(())
}

fn check_tag(r: &GhostRing, tag: RingTag) -> Result<()> {
    if r.tag != tag {
        return Err(Error::RingMismatch(format!("expected a {tag} ring, got {r:?}")));
    }
    Ok(())
}

fn check_order(a: &GhostRing, b: &GhostRing) -> Result<()> {
    if a.e != b.e {
        return Err(Error::OrderMismatch(a.e, b.e));
    }
    Ok(())
}

/// Marks to species: the value at `(E, c)` is the mark at `E`.
pub fn tilde_l(a: &GhostVector, t: &GhostRingRef) -> Result<GhostVector> {
    check_tag(&a.ring, RingTag::B)?;
    check_tag(t, RingTag::T)?;
    check_group(&a.ring, t)?;
    let values = t
        .pairs()
        .iter()
        .map(|q| a.values[q.subgroup].embed(t.e))
        .collect::<Result<Vec<_>>>()?;
    Ok(t.vector_unchecked(values))
}

/// Species to Brauer characters: the value at `y` is the species at `(<y>, y)`.
pub fn tilde_b(a: &GhostVector, rf: &GhostRingRef) -> Result<GhostVector> {
    check_tag(&a.ring, RingTag::T)?;
    check_tag(rf, RingTag::RF)?;
    check_group(&a.ring, rf)?;
    check_order(&a.ring, rf)?;
    if a.ring.p != rf.p {
        return Err(Error::RingMismatch("primes differ".into()));
    }
    let lat = rf.group.subgroups();
    let pairs = a.ring.pairs();
    let values = rf
        .elements
        .iter()
        .map(|&y| {
            let k = pairs
                .find(lat.cyclic(y), y)
                .expect("a p-regular element generates its own pair");
            a.values[k].clone()
        })
        .collect();
    Ok(rf.vector_unchecked(values))
}

/// Species to characters: the value at `x` is the species at
/// `(<x>, x<x_p>)`.
pub fn tilde_c(a: &GhostVector, rk: &GhostRingRef) -> Result<GhostVector> {
    check_tag(&a.ring, RingTag::T)?;
    check_tag(rk, RingTag::RK)?;
    check_group(&a.ring, rk)?;
    check_order(&a.ring, rk)?;
    let lat = rk.group.subgroups();
    let pairs = a.ring.pairs();
    let values = rk
        .elements
        .iter()
        .map(|&x| {
            let k = pairs
                .find(lat.cyclic(x), x)
                .expect("every element generates its cyclic group modulo the p-part");
            a.values[k].clone()
        })
        .collect();
    Ok(rk.vector_unchecked(values))
}

/// Characters to Brauer characters: restriction to p-regular elements.
pub fn tilde_d(a: &GhostVector, rf: &GhostRingRef) -> Result<GhostVector> {
    check_tag(&a.ring, RingTag::RK)?;
    check_tag(rf, RingTag::RF)?;
    check_group(&a.ring, rf)?;
    check_order(&a.ring, rf)?;
    let values: Vec<CycInt> = rf.elements.iter().map(|&y| a.values[y].clone()).collect();
    let v = rf.vector_unchecked(values);
    match v.invariance_violation() {
        None => Ok(v),
        Some(w) => Err(Error::Invalid(format!("restriction leaves the Brauer ghost ring: {w}"))),
    }
}

/// Brauer lift to ghost level: the value at `x` is the value at `x_p'`.
pub fn brauer_lift_ghost(a: &GhostVector, rk: &GhostRingRef) -> Result<GhostVector> {
    check_tag(&a.ring, RingTag::RF)?;
    check_tag(rk, RingTag::RK)?;
    check_group(&a.ring, rk)?;
    check_order(&a.ring, rk)?;
    let p = a.ring.p.expect("RF rings carry a prime");
    let g = &rk.group;
    let values = g
        .elements()
        .map(|x| a.values[a.ring.position[p_parts(g, x, p).1]].clone())
        .collect();
    Ok(rk.vector_unchecked(values))
}

/// The four ghost rings of a group for one prime and one value order.
#[derive(Clone, Debug)]
pub struct GhostRings {
    pub b: GhostRingRef,
    pub t: GhostRingRef,
    pub rk: GhostRingRef,
    pub rf: GhostRingRef,
}

impl GhostRings {
    pub fn new(group: GroupRef, p: usize, e: u32) -> Result<GhostRings> {
        Ok(GhostRings {
            b: GhostRing::new(RingTag::B, group.clone(), None, 1)?,
            t: GhostRing::new(RingTag::T, group.clone(), Some(p), e)?,
            rk: GhostRing::new(RingTag::RK, group.clone(), None, e)?,
            rf: GhostRing::new(RingTag::RF, group, Some(p), e)?,
        })
    }

    pub fn with_default_order(group: GroupRef, p: usize) -> Result<GhostRings> {
        let e = group.exponent() as u32;
        GhostRings::new(group, p, e)
    }

    pub fn get(&self, tag: RingTag) -> &GhostRingRef {
        match tag {
            RingTag::B => &self.b,
            RingTag::T => &self.t,
            RingTag::RK => &self.rk,
            RingTag::RF => &self.rf,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named_group;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn grp(name: &str) -> GroupRef {
        Arc::new(named_group(name, 360).unwrap())
    }

    fn int(e: u32, n: i64) -> CycInt {
        CycInt::from_int(e, n)
    }

    #[test]
    fn ranks_count_classes() {
        for (name, p, subclasses, pair_orbits, classes, regular) in [
            ("1", 2, 1, 1, 1, 1),
            ("C2", 2, 2, 2, 2, 1),
            ("S3", 3, 4, 4, 3, 2),
            ("S3", 2, 4, 3, 3, 2),
            ("C3", 3, 2, 2, 3, 1),
            ("A4", 2, 5, 7, 4, 3),
        ] {
            let rings = GhostRings::with_default_order(grp(name), p).unwrap();
            assert_eq!(rings.b.rank(), subclasses, "{name}");
            assert_eq!(rings.t.rank(), pair_orbits, "{name} p={p}");
            assert_eq!(rings.rk.rank(), classes, "{name}");
            assert_eq!(rings.rf.rank(), regular, "{name} p={p}");
        }
    }

    #[test]
    fn ring_ops_on_marks() {
        let b = GhostRing::with_default_order(RingTag::B, grp("S3"), None).unwrap();
        assert_eq!(b.one().values().len(), 6);
        let c2 = GhostRing::with_default_order(RingTag::B, grp("C2"), None).unwrap();
        let v = c2.vector(vec![int(1, 1), int(1, -1)]).unwrap();
        assert!(v.mul(&v).unwrap().is_one());
        assert_eq!(v.dual(), v);
    }

    #[test]
    fn invariance_is_enforced() {
        let rk = GhostRing::with_default_order(RingTag::RK, grp("C3"), None).unwrap();
        let z = CycInt::root(3, 1);
        // value z at x and z at x^2 is not Galois compatible
        let bad = rk.vector(vec![int(3, 1), z.clone(), z.clone()]);
        assert!(bad.is_err());
        let x = (0..3).find(|&x| x != 0).unwrap();
        let mut vals = vec![int(3, 1); 3];
        vals[x] = z.clone();
        vals[rk.group().inv(x)] = z.conjugate();
        let good = rk.vector(vals).unwrap();
        // dual swaps the values at x and x^2
        assert_eq!(good.dual().value(x), good.value(rk.group().inv(x)));
        assert!(rk.one().is_invariant());
    }

    #[test]
    fn tilde_l_examples() {
        let g = grp("C2");
        let rings = GhostRings::with_default_order(g, 2).unwrap();
        let marks = rings.b.vector(vec![int(1, 2), int(1, 0)]).unwrap();
        let t = tilde_l(&marks, &rings.t).unwrap();
        // pairs (1,1), (C2,1)
        assert_eq!(t.values(), &[int(2, 2), int(2, 0)]);
        assert_eq!(tilde_l(&rings.b.one(), &rings.t).unwrap(), rings.t.one());
    }

    #[test]
    fn tilde_c_examples() {
        let g = grp("C2");
        let rings = GhostRings::with_default_order(g, 2).unwrap();
        let t = rings.t.vector(vec![int(2, 5), int(2, 7)]).unwrap();
        let c = tilde_c(&t, &rings.rk).unwrap();
        assert_eq!(c.values(), &[int(2, 5), int(2, 7)]);
        let b = tilde_b(&t, &rings.rf).unwrap();
        assert_eq!(b.values(), &[int(2, 5)]);
    }

    #[test]
    fn tilde_d_of_sign_character() {
        let g = grp("S3");
        let rings = GhostRings::with_default_order(g.clone(), 3).unwrap();
        let vals = g
            .elements()
            .map(|x| int(6, if g.elem_order(x) == 2 { -1 } else { 1 }))
            .collect();
        let sign = rings.rk.vector(vals).unwrap();
        let d = tilde_d(&sign, &rings.rf).unwrap();
        for (k, v) in d.values().iter().enumerate() {
            let y = rings.rf.element(k);
            assert_eq!(*v, int(6, if y == 0 { 1 } else { -1 }));
        }
        let lifted = brauer_lift_ghost(&d, &rings.rk).unwrap();
        assert_eq!(lifted, sign);
    }

    #[test]
    fn rejects_mismatched_rings() {
        let a = GhostRings::with_default_order(grp("C2"), 2).unwrap();
        let b = GhostRings::with_default_order(grp("C3"), 3).unwrap();
        assert!(a.rk.one().add(&b.rk.one()).is_err());
        assert!(tilde_c(&a.t.one(), &b.rk).is_err());
        assert!(tilde_c(&a.rk.one(), &a.rk).is_err());
        assert!(GhostRing::new(RingTag::RK, grp("C3"), None, 4).is_err());
        assert!(GhostRing::new(RingTag::T, grp("C3"), None, 3).is_err());
    }

    #[test]
    fn json_round_trip() {
        let rings = GhostRings::with_default_order(grp("S3"), 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for tag in RingTag::ALL {
            let r = rings.get(tag);
            let v = r.random_vector(&mut rng, 3);
            let back = r.vector_from_json(&v.to_json()).unwrap();
            assert_eq!(back, v);
        }
    }

    proptest! {
        #[test]
        fn diagram_and_duals_commute(
            name in prop::sample::select(vec!["C2", "C3", "C4", "C6", "V4", "S3", "D8", "Q8", "A4"]),
            p in prop::sample::select(vec![2usize, 3]),
            seed in any::<u64>(),
        ) {
            let rings = GhostRings::with_default_order(grp(name), p).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let t = rings.t.random_vector(&mut rng, 4);
            let t2 = rings.t.random_vector(&mut rng, 4);
            prop_assert!(t.is_invariant());
            let c = tilde_c(&t, &rings.rk).unwrap();
            prop_assert!(c.is_invariant());
            let b = tilde_b(&t, &rings.rf).unwrap();
            prop_assert!(b.is_invariant());
            prop_assert_eq!(tilde_d(&c, &rings.rf).unwrap(), b.clone());
            prop_assert_eq!(tilde_c(&t.dual(), &rings.rk).unwrap(), c.dual());
            prop_assert_eq!(tilde_b(&t.dual(), &rings.rf).unwrap(), b.dual());
            prop_assert_eq!(t.dual().dual(), t.clone());
            let prod = t.mul(&t2).unwrap();
            prop_assert!(prod.is_invariant());
            prop_assert_eq!(
                tilde_c(&prod, &rings.rk).unwrap(),
                c.mul(&tilde_c(&t2, &rings.rk).unwrap()).unwrap()
            );
            let m = rings.b.random_vector(&mut rng, 4);
            let l = tilde_l(&m, &rings.t).unwrap();
            prop_assert!(l.is_invariant());
            prop_assert_eq!(tilde_l(&m.dual(), &rings.t).unwrap(), l.dual());
            let rf = rings.rf.random_vector(&mut rng, 4);
            let lift = brauer_lift_ghost(&rf, &rings.rk).unwrap();
            prop_assert!(lift.is_invariant());
            prop_assert_eq!(tilde_d(&lift, &rings.rf).unwrap(), rf);
        }
    }
}
