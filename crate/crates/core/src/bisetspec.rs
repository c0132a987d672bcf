//! A small language for right-free bisets built from elementary ones.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := atom ('*' atom)*
//! atom  := 'id' G | 'ind' S '<=' G | 'res' S '<=' G
//!        | 'inf' G '->' G '/' S | 'iso' G '->' G | '(' sum ')'
//! ```
//!
//! `*` composes (`U * V` is `U x_H V`), `+` is disjoint union and `-` is
//! only allowed at the top level, where it yields a virtual biset. A group
//! `G` is a built-in name or a group file. A subgroup `S` is either `#k`,
//! the subgroup with index `k` in the lattice of `G`, or a group spec, which
//! selects the first subgroup in lattice order with the same order, element
//! order statistics and commutativity.

use std::collections::HashMap;
use std::sync::Arc;

use crate::biset::{Biset, VirtualBiset};
use crate::error::{Error, Result};
use crate::group::{order_cap, resolve_group_with_cap, Group, GroupRef};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Word(String),
    Open,
    Close,
    Plus,
    Minus,
    Star,
    Arrow,
    Below,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut word = String::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let flush = |word: &mut String, out: &mut Vec<Token>| {
        if !word.is_empty() {
            out.push(Token::Word(std::mem::take(word)));
        }
    };
    while i < chars.len() {
        let c = chars[i];
        let next = chars.get(i + 1).copied();
        let tok = match (c, next) {
            ('-', Some('>')) => {
                i += 1;
                Some(Token::Arrow)
            }
            ('<', Some('=')) => {
                i += 1;
                Some(Token::Below)
            }
            ('(', _) => Some(Token::Open),
            (')', _) => Some(Token::Close),
            ('+', _) => Some(Token::Plus),
            ('-', _) => Some(Token::Minus),
            ('*', _) => Some(Token::Star),
            _ => None,
        };
        match tok {
            Some(t) => {
                flush(&mut word, &mut out);
                out.push(t);
            }
            None if c.is_whitespace() => flush(&mut word, &mut out),
            None => word.push(c),
        }
        i += 1;
    }
    flush(&mut word, &mut out);
    if out.is_empty() {
        return Err(Error::Parse("empty biset spec".into()));
    }
    Ok(out)
}

/// Cheap isomorphism invariants: order, sorted element orders, abelian.
fn invariants(g: &Group) -> (usize, Vec<usize>, bool) {
    let mut orders: Vec<usize> = g.elements().map(|x| g.elem_order(x)).collect();
    orders.sort_unstable();
    (g.order(), orders, g.is_abelian())
}

/// An isomorphism `h -> g` as the list of images, found by assigning the
/// lattice generators of `h` and extending.
pub fn find_isomorphism(h: &Group, g: &Group) -> Option<Vec<usize>> {
    if invariants(h) != invariants(g) {
        return None;
    }
    let lat = h.subgroups();
    let gens = lat.get(lat.whole()).gens().to_vec();
    let mut images = vec![0usize; gens.len()];
    fn extend(h: &Group, g: &Group, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; h.order()];
        map[h.identity()] = g.identity();
        let mut queue = vec![h.identity()];
        while let Some(x) = queue.pop() {
            for (&s, &t) in gens.iter().zip(images) {
                let y = h.mul(x, s);
                let z = g.mul(map[x], t);
                if map[y] == usize::MAX {
                    map[y] = z;
                    queue.push(y);
                } else if map[y] != z {
                    return None;
                }
            }
        }
        let mut seen = vec![false; g.order()];
        for &z in &map {
            if z == usize::MAX || std::mem::replace(&mut seen[z], true) {
                return None;
            }
        }
        let hom = h.elements().all(|a| h.elements().all(|b| map[h.mul(a, b)] == g.mul(map[a], map[b])));
        hom.then_some(map)
    }
    fn search(h: &Group, g: &Group, gens: &[usize], images: &mut Vec<usize>, k: usize) -> Option<Vec<usize>> {
        if k == gens.len() {
            return extend(h, g, gens, images);
        }
        let order = h.elem_order(gens[k]);
        for t in g.elements().filter(|&t| g.elem_order(t) == order) {
            images[k] = t;
            if let Some(m) = search(h, g, gens, images, k + 1) {
                return Some(m);
            }
        }
        None
    }
    search(h, g, &gens, &mut images, 0)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    cap: usize,
    groups: HashMap<String, GroupRef>,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn expect(&mut self, t: Token) -> Result<()> {
        match self.tokens.get(self.pos) {
            Some(x) if *x == t => {
                self.pos += 1;
                Ok(())
            }
            other => Err(Error::Parse(format!("expected {t:?}, found {other:?}"))),
        }
    }

    fn word(&mut self) -> Result<String> {
        match self.tokens.get(self.pos) {
            Some(Token::Word(w)) => {
                self.pos += 1;
                Ok(w.clone())
            }
            other => Err(Error::Parse(format!("expected a name, found {other:?}"))),
        }
    }

    fn group(&mut self, spec: &str) -> Result<GroupRef> {
        if let Some(g) = self.groups.get(spec) {
            return Ok(g.clone());
        }
        let g = Arc::new(resolve_group_with_cap(spec, self.cap)?);
        self.groups.insert(spec.to_string(), g.clone());
        Ok(g)
    }

    /// Subgroup of `g` named by `spec`, as a group with its element list.
    fn subgroup(&mut self, g: &Group, spec: &str, normal: bool) -> Result<(GroupRef, Vec<usize>)> {
        let lat = g.subgroups();
        let k = if let Some(k) = spec.strip_prefix('#') {
            let k: usize = k.parse().map_err(|_| Error::Parse(format!("bad subgroup index {spec:?}")))?;
            if k >= lat.len() {
                return Err(Error::Parse(format!("{} has only {} subgroups", g.name(), lat.len())));
            }
            k
        } else {
            let target = invariants(&*self.group(spec)?);
            (0..lat.len())
                .filter(|&k| !normal || lat.is_normal(k))
                .find(|&k| {
                    let s = lat.get(k);
                    s.order() == target.0
                        && g.subgroup_as_group("", s.elems()).map(|x| invariants(&x) == target).unwrap_or(false)
                })
                .ok_or_else(|| Error::Parse(format!("{} has no subgroup like {spec}", g.name())))?
        };
        if normal && !lat.is_normal(k) {
            return Err(Error::Parse(format!("subgroup {spec} of {} is not normal", g.name())));
        }
        let elems = lat.get(k).elems().to_vec();
        let key = format!("{}#{k}", g.name());
        let sub = match self.groups.get(&key) {
            Some(s) => s.clone(),
            None => {
                let s = Arc::new(g.subgroup_as_group(spec, &elems)?);
                self.groups.insert(key, s.clone());
                s
            }
        };
        Ok((sub, elems))
    }

    fn atom(&mut self) -> Result<Biset> {
        if self.peek() == Some(&Token::Open) {
            self.pos += 1;
            let mut u = self.term()?;
            while self.peek() == Some(&Token::Plus) {
                self.pos += 1;
                u = u.union(&self.term()?)?;
            }
            self.expect(Token::Close)?;
            return Ok(u);
        }
        let kind = self.word()?;
        match kind.to_ascii_lowercase().as_str() {
            "id" => {
                let g = self.word()?;
                Ok(Biset::identity(self.group(&g)?))
            }
            "ind" | "res" => {
                let s = self.word()?;
                self.expect(Token::Below)?;
                let gname = self.word()?;
                let g = self.group(&gname)?;
                let (h, elems) = self.subgroup(&g, &s, false)?;
                if kind.eq_ignore_ascii_case("ind") {
                    Biset::induction(g, h, &elems)
                } else {
                    Biset::restriction(g, h, &elems)
                }
            }
            "inf" => {
                let gname = self.word()?;
                self.expect(Token::Arrow)?;
                let quot = self.word()?;
                let (base, n) = quot
                    .rsplit_once('/')
                    .ok_or_else(|| Error::Parse(format!("expected G/N, found {quot:?}")))?;
                if base != gname {
                    return Err(Error::Parse(format!("inflation from {gname} to a quotient of {base}")));
                }
                let g = self.group(&gname)?;
                let (_, elems) = self.subgroup(&g, n, true)?;
                let (q, proj) = g.quotient(quot.as_str(), &elems)?;
                Biset::inflation(g, Arc::new(q), &proj)
            }
            "iso" => {
                let hname = self.word()?;
                self.expect(Token::Arrow)?;
                let gname = self.word()?;
                let h = self.group(&hname)?;
                let g = self.group(&gname)?;
                let iso = find_isomorphism(&h, &g)
                    .ok_or_else(|| Error::Parse(format!("{hname} and {gname} are not isomorphic")))?;
                Biset::isomorphism(g, h, &iso)
            }
            other => Err(Error::Parse(format!("unknown biset constructor {other:?}"))),
        }
    }

    fn term(&mut self) -> Result<Biset> {
        let mut u = self.atom()?;
        while self.peek() == Some(&Token::Star) {
            self.pos += 1;
            u = u.compose(&self.atom()?)?;
        }
        Ok(u)
    }

    fn virtual_biset(&mut self) -> Result<VirtualBiset> {
        let mut plus = vec![self.term()?];
        let mut minus = Vec::new();
        while let Some(t) = self.peek().cloned() {
            self.pos += 1;
            match t {
                Token::Plus => plus.push(self.term()?),
                Token::Minus => minus.push(self.term()?),
                other => return Err(Error::Parse(format!("unexpected {other:?}"))),
            }
        }
        VirtualBiset::new(plus, minus)
    }
}

fn parser(text: &str, cap: usize) -> Result<Parser> {
    Ok(Parser {
        tokens: tokenize(text)?,
        pos: 0,
        cap,
        groups: HashMap::new(),
    })
}

/// Parses a virtual biset.
pub fn parse_virtual_biset(text: &str, cap: usize) -> Result<VirtualBiset> {
    parser(text, cap)?.virtual_biset()
}

/// Parses an effective biset; sums become disjoint unions.
pub fn parse_biset_with_cap(text: &str, cap: usize) -> Result<Biset> {
    let v = parse_virtual_biset(text, cap)?;
    if !v.minus.is_empty() {
        return Err(Error::Parse("a difference is not an effective biset".into()));
    }
    let mut terms = v.plus.into_iter();
    let first = terms.next().expect("at least one term");
    terms.try_fold(first, |acc, b| acc.union(&b))
}

pub fn parse_biset(text: &str) -> Result<Biset> {
    parse_biset_with_cap(text, order_cap())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elementary_bisets() {
        let u = parse_biset("ind C2<=C4").unwrap();
        assert_eq!((u.left().order(), u.right().order(), u.size(), u.num_orbits()), (4, 2, 4, 2));
        let r = parse_biset("res C3 <= S3").unwrap();
        assert_eq!((r.left().order(), r.right().order(), r.num_orbits()), (3, 6, 1));
        let i = parse_biset("inf S3->S3/C3").unwrap();
        assert_eq!((i.left().order(), i.right().order(), i.size()), (6, 2, 2));
        let id = parse_biset("id A4").unwrap();
        assert!(id.is_isomorphic(&Biset::identity(id.left().clone())));
        let iso = parse_biset("iso V4->V4").unwrap();
        assert_eq!(iso.num_orbits(), 1);
    }

    #[test]
    fn composites_and_unions() {
        let u = parse_biset("ind C2<=C4 * res C2<=C4").unwrap();
        assert_eq!((u.left().order(), u.right().order(), u.size()), (4, 4, 8));
        let w = parse_biset("ind C2<=S3 + id S3 * ind C2<=S3").unwrap();
        assert_eq!(w.num_orbits(), 6);
        let p = parse_biset("(ind #1<=C4 + ind #1<=C4) * res #1<=C4").unwrap();
        assert_eq!(p.size(), 16);
        let v = parse_virtual_biset("id C2 + id C2 - id C2", 360).unwrap();
        assert_eq!((v.plus.len(), v.minus.len()), (2, 1));
    }

    #[test]
    fn errors() {
        for bad in ["", "ind C3<=C4", "inf S3->S3/C2", "iso C4->V4", "frob C2", "ind C2<=C4 *", "id C2 - id C2"] {
            assert!(parse_biset(bad).is_err(), "{bad}");
        }
    }
}
