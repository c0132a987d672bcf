//! Exact arithmetic in the cyclotomic integers `Z[z]`, `z` a primitive
//! `e`-th root of unity.
//!
//! Elements are stored by their remainder modulo the cyclotomic polynomial,
//! so equality is coefficient equality.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

struct CycloTable {
    /// Monic `Phi_e`, lowest degree first.
    phi: Vec<i64>,
    /// `powers[k]` is `z^k` reduced, for `0 <= k < e`.
    powers: Vec<Vec<i64>>,
    units: Vec<u32>,
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    // den is monic
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i64; num.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[k + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

fn cyclotomic_poly(e: u32) -> Vec<i64> {
    let mut num = vec![0i64; e as usize + 1];
    num[0] = -1;
    num[e as usize] = 1;
    let mut result = num;
    for d in 1..e {
        if e % d == 0 {
            result = poly_div_exact(&result, &table(d).phi);
        }
    }
    result
}

fn table(e: u32) -> &'static CycloTable {
    static TABLES: OnceLock<Mutex<HashMap<u32, &'static CycloTable>>> = OnceLock::new();
    let tables = TABLES.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = tables.lock().unwrap().get(&e) {
        return t;
    }
    // built outside the lock: construction recurses into smaller orders
    let phi = cyclotomic_poly(e);
    let deg = phi.len() - 1;
    let mut powers = Vec::with_capacity(e as usize);
    let mut cur = vec![0i64; deg];
    cur[0] = 1;
    for _ in 0..e {
        powers.push(cur.clone());
        // multiply by z and reduce
        let top = cur[deg - 1];
        for j in (1..deg).rev() {
            cur[j] = cur[j - 1];
        }
        cur[0] = 0;
        for j in 0..deg {
            cur[j] -= top * phi[j];
        }
    }
    let units: Vec<u32> = (0..e).filter(|i| i.gcd(&e) == 1).collect();
    let t: &'static CycloTable = Box::leak(Box::new(CycloTable { phi, powers, units }));
    *tables.lock().unwrap().entry(e).or_insert(t)
}

/// Euler's totient.
pub fn euler_phi(e: u32) -> usize {
    table(e).phi.len() - 1
}

/// The residues `i mod e` with `gcd(i, e) = 1`, increasing.
pub fn units_mod(e: u32) -> &'static [u32] {
    &table(e).units
}

/// The inverse of `i` modulo `e`.
pub fn inverse_mod(i: u32, e: u32) -> u32 {
    if e == 1 {
        return 0;
    }
    let i = i as i64;
    let e = e as i64;
    let ext = i.extended_gcd(&e);
    assert_eq!(ext.gcd, 1, "{i} is not invertible modulo {e}");
    ext.x.rem_euclid(e) as u32
}

/// An element of `Z[z_e]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycInt {
    e: u32,
    coeffs: Vec<BigInt>,
}

/// The Galois automorphism `z -> z^i` of `Q(z_e)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GaloisElt {
    e: u32,
    i: u32,
}

impl GaloisElt {
    pub fn new(e: u32, i: i64) -> Result<GaloisElt> {
        let r = i.rem_euclid(e as i64) as u32;
        if e > 1 && r.gcd(&e) != 1 {
            return Err(Error::Invalid(format!("{i} is not prime to {e}")));
        }
        Ok(GaloisElt { e, i: r })
    }

    pub fn exponent(&self) -> u32 {
        self.i
    }

    pub fn order(&self) -> u32 {
        self.e
    }

    pub fn apply(&self, z: &CycInt) -> Result<CycInt> {
        if z.e != self.e {
            return Err(Error::OrderMismatch(self.e, z.e));
        }
        Ok(z.galois(self.i as i64))
    }

    pub fn compose(&self, other: &GaloisElt) -> GaloisElt {
        assert_eq!(self.e, other.e);
        GaloisElt {
            e: self.e,
            i: ((self.i as u64 * other.i as u64) % self.e.max(1) as u64) as u32,
        }
    }
}

impl CycInt {
    pub fn zero(e: u32) -> CycInt {
        assert!(e >= 1, "root of unity order must be positive");
        CycInt {
            e,
            coeffs: vec![BigInt::zero(); euler_phi(e)],
        }
    }

    pub fn from_int(e: u32, n: impl Into<BigInt>) -> CycInt {
        let mut z = CycInt::zero(e);
        z.coeffs[0] = n.into();
        z
    }

    pub fn one(e: u32) -> CycInt {
        CycInt::from_int(e, 1)
    }

    /// `z_e^k`, any integer `k`.
    pub fn root(e: u32, k: i64) -> CycInt {
        let t = table(e);
        let k = k.rem_euclid(e as i64) as usize;
        CycInt {
            e,
            coeffs: t.powers[k].iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    /// Builds from coefficients of `1, z, z^2, ...`, reducing as needed.
    pub fn from_coeffs(e: u32, coeffs: &[BigInt]) -> CycInt {
        let t = table(e);
        let mut out = vec![BigInt::zero(); euler_phi(e)];
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, &p) in t.powers[k % e as usize].iter().enumerate() {
                if p != 0 {
                    out[j] += c * p;
                }
            }
        }
        CycInt { e, coeffs: out }
    }

    pub fn order(&self) -> u32 {
        self.e
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The value as a rational integer, if it is one.
    pub fn as_integer(&self) -> Option<&BigInt> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn check(&self, other: &CycInt) -> Result<()> {
        if self.e == other.e {
            Ok(())
        } else {
            Err(Error::OrderMismatch(self.e, other.e))
        }
    }

    pub fn checked_add(&self, other: &CycInt) -> Result<CycInt> {
        self.check(other)?;
        Ok(CycInt {
            e: self.e,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn checked_sub(&self, other: &CycInt) -> Result<CycInt> {
        self.check(other)?;
        Ok(CycInt {
            e: self.e,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn checked_mul(&self, other: &CycInt) -> Result<CycInt> {
        self.check(other)?;
        let t = table(self.e);
        let n = self.coeffs.len();
        if n == 1 {
            return Ok(CycInt::from_int(self.e, &self.coeffs[0] * &other.coeffs[0]));
        }
        let mut prod = vec![BigInt::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let mut out: Vec<BigInt> = prod.drain(..n).collect();
        for (k, c) in prod.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, &p) in t.powers[(k + n) % self.e as usize].iter().enumerate() {
                if p != 0 {
                    out[j] += &c * p;
                }
            }
        }
        Ok(CycInt {
            e: self.e,
            coeffs: out,
        })
    }

    pub fn scale(&self, n: &BigInt) -> CycInt {
        CycInt {
            e: self.e,
            coeffs: self.coeffs.iter().map(|c| c * n).collect(),
        }
    }

    /// Division by a rational integer, if exact.
    pub fn div_exact(&self, n: &BigInt) -> Option<CycInt> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = c.div_rem(n);
            if !r.is_zero() {
                return None;
            }
            coeffs.push(q);
        }
        Some(CycInt { e: self.e, coeffs })
    }

    pub fn pow(&self, mut k: u32) -> CycInt {
        let mut base = self.clone();
        let mut acc = CycInt::one(self.e);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    /// The image under `z -> z^i`; `i` must be prime to `e`.
    pub fn galois(&self, i: i64) -> CycInt {
        let e = self.e as i64;
        let t = table(self.e);
        let mut out = vec![BigInt::zero(); self.coeffs.len()];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let idx = ((k as i64 * i).rem_euclid(e)) as usize;
            for (j, &p) in t.powers[idx].iter().enumerate() {
                if p != 0 {
                    out[j] += c * p;
                }
            }
        }
        CycInt {
            e: self.e,
            coeffs: out,
        }
    }

    /// Complex conjugation, `z -> z^-1`.
    pub fn conjugate(&self) -> CycInt {
        self.galois(-1)
    }

    pub fn is_fixed_by(&self, i: i64) -> bool {
        &self.galois(i) == self
    }

    /// The image under `z_e -> z_f^(f/e)`; `e` must divide `f`.
    pub fn embed(&self, f: u32) -> Result<CycInt> {
        if f % self.e != 0 {
            return Err(Error::NotDivisible {
                divisor: self.e as u64,
                value: f as u64,
            });
        }
        if f == self.e {
            return Ok(self.clone());
        }
        let step = (f / self.e) as usize;
        let mut spread = vec![BigInt::zero(); (self.coeffs.len() - 1) * step + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            spread[k * step] = c.clone();
        }
        Ok(CycInt::from_coeffs(f, &spread))
    }

    /// Returns `(s, k)` with `self = s * z^k`, `s = +-1`, if such exist.
    pub fn signed_root_decompose(&self) -> Option<(i8, u32)> {
        // a signed root has exactly the coefficients of a reduced power, up to sign
        let t = table(self.e);
        for k in 0..self.e {
            let p = &t.powers[k as usize];
            if self.coeffs.iter().zip(p).all(|(c, &q)| *c == BigInt::from(q)) {
                return Some((1, k));
            }
            if self.coeffs.iter().zip(p).all(|(c, &q)| *c == BigInt::from(-q)) {
                return Some((-1, k));
            }
        }
        None
    }

    /// Product of all Galois conjugates, a rational integer.
    pub fn norm(&self) -> BigInt {
        let mut acc = CycInt::one(self.e);
        for &i in units_mod(self.e) {
            acc = &acc * &self.galois(i as i64);
        }
        acc.as_integer()
            .cloned()
            .expect("the norm of a cyclotomic integer is rational")
    }

    /// The multiplicative inverse, if `self` is a unit.
    pub fn inverse(&self) -> Option<CycInt> {
        if let Some((s, k)) = self.signed_root_decompose() {
            return Some(CycInt::root(self.e, -(k as i64)).scale(&BigInt::from(s)));
        }
        let mut rest = CycInt::one(self.e);
        for &i in units_mod(self.e).iter().skip(1) {
            rest = &rest * &self.galois(i as i64);
        }
        let norm = (&rest * self).as_integer().cloned()?;
        if norm.abs().is_one() {
            Some(rest.scale(&norm))
        } else {
            None
        }
    }
}

macro_rules! forward_op {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&CycInt> for &CycInt {
            type Output = CycInt;
            fn $method(self, rhs: &CycInt) -> CycInt {
                self.$checked(rhs)
                    .unwrap_or_else(|err| panic!("cyclotomic arithmetic: {err}"))
            }
        }
        impl $tr<CycInt> for CycInt {
            type Output = CycInt;
            fn $method(self, rhs: CycInt) -> CycInt {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_op!(Add, add, checked_add);
forward_op!(Sub, sub, checked_sub);
forward_op!(Mul, mul, checked_mul);

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt {
            e: self.e,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        -&self
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("z")?,
                (1, false) => write!(f, "{mag}z")?,
                (_, true) => write!(f, "z^{k}")?,
                (_, false) => write!(f, "{mag}z^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[e={}] {}", self.e, self)
    }
}

#[derive(Serialize, Deserialize)]
struct CycIntRepr {
    e: u32,
    coeffs: Vec<serde_json::Value>,
}

impl Serialize for CycInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| match c.to_i64() {
                Some(v) => serde_json::Value::from(v),
                None => serde_json::Value::from(c.to_string()),
            })
            .collect();
        CycIntRepr { e: self.e, coeffs }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = CycIntRepr::deserialize(d)?;
        if repr.e == 0 {
            return Err(D::Error::custom("e must be positive"));
        }
        let coeffs = repr
            .coeffs
            .iter()
            .map(|v| match v {
                serde_json::Value::Number(n) => n
                    .as_i64()
                    .map(BigInt::from)
                    .ok_or_else(|| D::Error::custom("coefficient is not an integer")),
                serde_json::Value::String(s) => s
                    .parse::<BigInt>()
                    .map_err(|_| D::Error::custom(format!("bad coefficient {s:?}"))),
                _ => Err(D::Error::custom("coefficient must be a number or string")),
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(CycInt::from_coeffs(repr.e, &coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(e: u32, c: &[i64]) -> CycInt {
        CycInt::from_coeffs(e, &c.iter().map(|&v| BigInt::from(v)).collect::<Vec<_>>())
    }

    fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    #[test]
    fn cyclotomic_polynomials_multiply_to_x_e_minus_one() {
        for e in 1..=60u32 {
            let mut prod = vec![1i64];
            for d in 1..=e {
                if e % d == 0 {
                    prod = poly_mul(&prod, &table(d).phi);
                }
            }
            let mut expect = vec![0i64; e as usize + 1];
            expect[0] = -1;
            expect[e as usize] = 1;
            assert_eq!(prod, expect, "e = {e}");
        }
        assert_eq!(table(6).phi, vec![1, -1, 1]);
        assert_eq!(euler_phi(12), 4);
    }

    #[test]
    fn small_identities() {
        assert_eq!(&CycInt::root(4, 1) * &CycInt::root(4, 1), CycInt::from_int(4, -1));
        assert_eq!(&CycInt::root(3, 1) + &CycInt::root(3, 2), CycInt::from_int(3, -1));
        assert_eq!(CycInt::root(4, 2), CycInt::from_int(4, -1));
        assert_eq!(CycInt::root(1, 0), CycInt::one(1));
        assert_eq!(CycInt::root(6, 1), z(6, &[0, 1]));
    }

    #[test]
    fn product_in_fifth_roots() {
        // (1 + z)(1 + z^4) = 2 + z + z^4 = 2 + z - (1 + z + z^2 + z^3) = 1 - z^2 - z^3
        let a = z(5, &[1, 1]);
        let b = z(5, &[1, 0, 0, 0, 1]);
        assert_eq!(&a * &b, z(5, &[1, 0, -1, -1]));
    }

    #[test]
    fn galois_examples() {
        assert_eq!(CycInt::root(5, 1).galois(-1), CycInt::root(5, 4));
        assert_eq!(CycInt::from_int(5, 7).galois(-1), CycInt::from_int(5, 7));
        let a = &CycInt::root(5, 1) + &CycInt::root(5, 2);
        assert_eq!(a.galois(2), &CycInt::root(5, 2) + &CycInt::root(5, 4));
        assert!(GaloisElt::new(6, 2).is_err());
    }

    #[test]
    fn embedding() {
        assert_eq!(CycInt::from_int(2, -1).embed(4).unwrap(), CycInt::from_int(4, -1));
        assert_eq!(CycInt::root(3, 1).embed(6).unwrap(), CycInt::root(6, 2));
        let w = z(5, &[3, -1, 2]);
        assert_eq!(w.embed(5).unwrap(), w);
        assert!(CycInt::root(4, 1).embed(6).is_err());
    }

    #[test]
    fn signed_roots() {
        assert_eq!((-CycInt::root(6, 2)).signed_root_decompose(), Some((-1, 2)));
        assert_eq!(z(5, &[1, 1]).signed_root_decompose(), None);
        assert_eq!(CycInt::one(7).signed_root_decompose(), Some((1, 0)));
    }

    #[test]
    fn rendering() {
        assert_eq!(z(5, &[1, 0, -1]).to_string(), "1 - z^2");
        assert_eq!(z(5, &[0, -1, 0, 3]).to_string(), "-z + 3z^3");
        assert_eq!(CycInt::zero(3).to_string(), "0");
        let json = serde_json::to_string(&z(5, &[1, 0, -1])).unwrap();
        assert_eq!(json, r#"{"e":5,"coeffs":[1,0,-1,0]}"#);
        let back: CycInt = serde_json::from_str(&json).unwrap();
        assert_eq!(back, z(5, &[1, 0, -1]));
        let big = CycInt::from_int(3, BigInt::from(1u64 << 62) * 8);
        let json = serde_json::to_string(&big).unwrap();
        assert!(json.contains('"'));
        assert_eq!(serde_json::from_str::<CycInt>(&json).unwrap(), big);
    }

    #[test]
    fn inverses_of_units() {
        // 1 + z is a unit in Z[z_5]: its norm is Phi_5(-1) = 1
        let u = z(5, &[1, 1]);
        let inv = u.inverse().unwrap();
        assert!((&u * &inv).is_one());
        assert_eq!(z(5, &[2]).inverse(), None);
        assert_eq!(CycInt::from_int(1, -1).inverse(), Some(CycInt::from_int(1, -1)));
    }

    fn small_cycint() -> impl Strategy<Value = CycInt> {
        prop::sample::select(vec![1u32, 2, 3, 4, 5, 6, 8, 12])
            .prop_flat_map(|e| (Just(e), prop::collection::vec(-3i64..=3, euler_phi(e))))
            .prop_map(|(e, c)| z(e, &c))
    }

    proptest! {
        #[test]
        fn orthogonal_iff_signed_root(a in small_cycint()) {
            let orth = (&a * &a.conjugate()).is_one();
            prop_assert_eq!(orth, a.signed_root_decompose().is_some());
        }

        #[test]
        fn galois_is_a_ring_automorphism(a in small_cycint(), k in 0i64..50) {
            let e = a.order();
            let units = units_mod(e);
            let i = units[(k as usize) % units.len()] as i64;
            let j = units[(k as usize * 7 + 3) % units.len()] as i64;
            let b = CycInt::root(e, k);
            prop_assert_eq!((&a * &b).galois(i), &a.galois(i) * &b.galois(i));
            prop_assert_eq!((&a + &b).galois(i), &a.galois(i) + &b.galois(i));
            prop_assert_eq!(a.galois(j).galois(i), a.galois(i * j));
            prop_assert_eq!(a.galois(1), a.clone());
            prop_assert!(CycInt::from_int(e, k).is_fixed_by(i));
        }

        #[test]
        fn embedding_is_a_ring_morphism(a in small_cycint(), b in small_cycint(), m in 1u32..4) {
            let e = a.order();
            let b = b.embed(b.order() * e).unwrap();
            let a = a.embed(b.order()).unwrap();
            let f = a.order() * m;
            prop_assert_eq!((&a * &b).embed(f).unwrap(), &a.embed(f).unwrap() * &b.embed(f).unwrap());
            prop_assert_eq!((&a - &b).embed(f).unwrap(), &a.embed(f).unwrap() - &b.embed(f).unwrap());
        }

        #[test]
        fn multiplication_is_commutative_and_associative(a in small_cycint(), k in 0i64..12, l in 0i64..12) {
            let e = a.order();
            let b = &CycInt::root(e, k) + &CycInt::from_int(e, 2);
            let c = &CycInt::root(e, l) - &a;
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }
    }
}
