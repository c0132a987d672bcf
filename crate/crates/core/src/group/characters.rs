use super::{gcd, Group};
use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};

/// A homomorphism from a subgroup into the `e`-th roots of unity, stored as
/// the exponent `k` with value `z^k` at each element of its domain.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearCharacter {
    e: u32,
    domain: Vec<usize>,
    exps: Vec<u32>,
}

impl LinearCharacter {
    pub fn trivial(domain: Vec<usize>, e: u32) -> LinearCharacter {
        let exps = vec![0; domain.len()];
        LinearCharacter { e, domain, exps }
    }

    pub fn root_order(&self) -> u32 {
        self.e
    }

    /// Sorted parent-group indices of the domain.
    pub fn domain(&self) -> &[usize] {
        &self.domain
    }

    /// Exponent of the value at parent element `x`, if `x` is in the domain.
    pub fn exponent_at(&self, x: usize) -> Option<u32> {
        self.domain.binary_search(&x).ok().map(|i| self.exps[i])
    }

    pub fn value(&self, x: usize) -> Option<CycInt> {
        self.exponent_at(x).map(|k| CycInt::root(self.e, k as i64))
    }

    /// Order of the character in the character group.
    pub fn order(&self) -> u32 {
        let g = self
            .exps
            .iter()
            .fold(self.e as usize, |acc, &k| gcd(acc, k as usize));
        self.e / g as u32
    }

    pub fn is_trivial(&self) -> bool {
        self.exps.iter().all(|&k| k == 0)
    }

    /// Pointwise product with a character on the same domain.
    pub fn mul(&self, other: &LinearCharacter) -> LinearCharacter {
        assert_eq!(self.domain, other.domain);
        assert_eq!(self.e, other.e);
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| (a + b) % self.e)
            .collect();
        LinearCharacter {
            e: self.e,
            domain: self.domain.clone(),
            exps,
        }
    }
}

/// The commutator subgroup, as a sorted element list.
pub fn derived_subgroup(g: &Group) -> Vec<usize> {
    let mut comms = Vec::new();
    for a in g.elements() {
        for b in g.elements() {
            let c = g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b)));
            comms.push(c);
        }
    }
    comms.sort_unstable();
    comms.dedup();
    g.closure(&comms)
}

/// All linear characters of `g` with values in the `e`-th roots of unity,
/// trivial character first. Fails unless `e` is a multiple of the exponent
/// of the abelianization.
pub fn linear_characters(g: &Group, e: u32) -> Result<Vec<LinearCharacter>> {
    let domain: Vec<usize> = g.elements().collect();
    characters_on(g, e, domain)
}

/// Linear characters of the subgroup with sorted element list `elems`.
pub fn linear_characters_of_subgroup(
    g: &Group,
    elems: &[usize],
    e: u32,
) -> Result<Vec<LinearCharacter>> {
    let sub = g.subgroup_as_group("S", elems)?;
    characters_on(&sub, e, elems.to_vec())
}

fn characters_on(g: &Group, e: u32, domain: Vec<usize>) -> Result<Vec<LinearCharacter>> {
    let derived = derived_subgroup(g);
    let (q, proj) = g.quotient("ab", &derived)?;
    let qexp = q.exponent() as u32;
    if e % qexp != 0 {
        return Err(Error::NotDivisible {
            divisor: qexp as u64,
            value: e as u64,
        });
    }
    // greedy generating set of the abelian quotient
    let mut gens: Vec<usize> = Vec::new();
    let mut span = vec![0usize];
    for x in q.elements() {
        if !span.contains(&x) {
            gens.push(x);
            span = q.closure(&gens);
        }
    }
    let orders: Vec<u32> = gens.iter().map(|&x| q.elem_order(x) as u32).collect();
    let combos: u64 = orders.iter().map(|&o| o as u64).product();
    if combos > 1_000_000 {
        return Err(Error::SizeBound(format!(
            "{combos} candidate characters of an abelian quotient"
        )));
    }
    let mut chars = Vec::new();
    let mut choice = vec![0u32; gens.len()];
    loop {
        // generator j goes to z^(choice[j] * e / ord_j)
        let images: Vec<u32> = choice
            .iter()
            .zip(&orders)
            .map(|(&c, &o)| c * (e / o))
            .collect();
        if let Some(values) = extend_to_quotient(&q, &gens, &images, e) {
            let exps = (0..g.order()).map(|x| values[proj[x]]).collect();
            chars.push(LinearCharacter {
                e,
                domain: domain.clone(),
                exps,
            });
        }
        let mut j = 0;
        while j < choice.len() {
            choice[j] += 1;
            if choice[j] < orders[j] {
                break;
            }
            choice[j] = 0;
            j += 1;
        }
        if j == choice.len() {
            break;
        }
    }
    if chars.len() != q.order() {
        return Err(Error::TheoryViolation(format!(
            "found {} linear characters for an abelianization of order {}",
            chars.len(),
            q.order()
        )));
    }
    Ok(chars)
}

fn extend_to_quotient(q: &Group, gens: &[usize], images: &[u32], e: u32) -> Option<Vec<u32>> {
    let mut values = vec![u32::MAX; q.order()];
    values[0] = 0;
    let mut queue = vec![0usize];
    while let Some(x) = queue.pop() {
        for (&g, &k) in gens.iter().zip(images) {
            let y = q.mul(x, g);
            let v = (values[x] + k) % e;
            if values[y] == u32::MAX {
                values[y] = v;
                queue.push(y);
            } else if values[y] != v {
                return None;
            }
        }
    }
    Some(values)
}
