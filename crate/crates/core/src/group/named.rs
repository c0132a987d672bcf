use std::path::Path;

use super::{order_cap, Group};
use crate::error::{Error, Result};

fn cycle(degree: usize, points: &[usize]) -> Vec<usize> {
    let mut p: Vec<usize> = (0..degree).collect();
    for (k, &x) in points.iter().enumerate() {
        p[x] = points[(k + 1) % points.len()];
    }
    p
}

fn quaternion_generators() -> Vec<Vec<usize>> {
    // basis units 1, i, j, k are 0..4; index + 4 carries the sign
    const UNIT_MUL: [[(usize, bool); 4]; 4] = [
        [(0, false), (1, false), (2, false), (3, false)],
        [(1, false), (0, true), (3, false), (2, true)],
        [(2, false), (3, true), (0, true), (1, false)],
        [(3, false), (2, false), (1, true), (0, true)],
    ];
    let mul = |a: usize, b: usize| {
        let (u, neg) = UNIT_MUL[a % 4][b % 4];
        let sign = (a >= 4) ^ (b >= 4) ^ neg;
        u + if sign { 4 } else { 0 }
    };
    [1usize, 2]
        .iter()
        .map(|&g| (0..8).map(|x| mul(g, x)).collect())
        .collect()
}

/// A built-in group by name: `1`, `Cn`, `Dm` (dihedral of order `m`),
/// `Sn` (n <= 6), `An` (n <= 5), `Q8`, `V4`.
pub fn named_group(name: &str, cap: usize) -> Result<Group> {
    let bad = || Error::Parse(format!("unknown group name {name:?}"));
    let name = name.trim();
    if name == "1" {
        return Group::from_permutations("1", 1, &[], cap);
    }
    if name == "Q8" {
        return Group::from_permutations("Q8", 8, &quaternion_generators(), cap);
    }
    if name == "V4" {
        return Group::from_permutations("V4", 4, &[vec![1, 0, 3, 2], vec![2, 3, 0, 1]], cap);
    }
    let (kind, num) = name.split_at(1);
    let n: usize = num.parse().map_err(|_| bad())?;
    match kind {
        "C" if n >= 1 => {
            let gens = if n == 1 { vec![] } else { vec![cycle(n, &(0..n).collect::<Vec<_>>())] };
            Group::from_permutations(name, n.max(1), &gens, cap)
        }
        "D" if n >= 2 && n % 2 == 0 => {
            let m = n / 2;
            match m {
                1 => named_group("C2", cap).map(|g| g.renamed(name)),
                2 => named_group("V4", cap).map(|g| g.renamed(name)),
                _ => {
                    let rot = cycle(m, &(0..m).collect::<Vec<_>>());
                    let refl: Vec<usize> = (0..m).map(|x| (m - x) % m).collect();
                    Group::from_permutations(name, m, &[rot, refl], cap)
                }
            }
        }
        "S" if (1..=6).contains(&n) => {
            let gens = if n == 1 {
                vec![]
            } else {
                vec![cycle(n, &[0, 1]), cycle(n, &(0..n).collect::<Vec<_>>())]
            };
            Group::from_permutations(name, n, &gens, cap)
        }
        "A" if (1..=5).contains(&n) => {
            let gens: Vec<Vec<usize>> = (2..n).map(|k| cycle(n, &[0, 1, k])).collect();
            Group::from_permutations(name, n, &gens, cap)
        }
        _ => Err(bad()),
    }
}

/// Parses a permutation written in one-based cycle notation, e.g. `(1 2)(3 4)`.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Vec<usize>> {
    let mut perm: Vec<usize> = (0..degree).collect();
    let mut rest = text.trim();
    if rest.is_empty() {
        return Err(Error::Parse("empty permutation".into()));
    }
    while !rest.is_empty() {
        let open = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::Parse(format!("expected '(' in {text:?}")))?;
        let close = open
            .find(')')
            .ok_or_else(|| Error::Parse(format!("unbalanced parenthesis in {text:?}")))?;
        let points = open[..close]
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| {
                let v: usize = s
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad point {s:?}")))?;
                if v == 0 || v > degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {v} outside 1..{degree}"
                    )));
                }
                Ok(v - 1)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut seen = std::collections::HashSet::new();
        if !points.iter().all(|p| seen.insert(*p)) {
            return Err(Error::InvalidPermutation(format!("repeated point in {text:?}")));
        }
        // cycles apply left to right, as in GAP
        let c = cycle(degree, &points);
        perm = perm.iter().map(|&x| c[x]).collect();
        rest = open[close + 1..].trim_start();
    }
    Ok(perm)
}

/// Parses a group file: a `degree: n` line followed by one generator per
/// line in cycle notation. Blank lines and `#` comments are ignored; an
/// optional `name: ...` line sets the label.
pub fn parse_group_file(text: &str, cap: usize) -> Result<Group> {
    let mut degree = None;
    let mut name = String::from("G");
    let mut gens = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(v) = line.strip_prefix("degree:") {
            degree = Some(
                v.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad degree {v:?}")))?,
            );
        } else if let Some(v) = line.strip_prefix("name:") {
            name = v.trim().to_string();
        } else {
            let d = degree.ok_or_else(|| Error::Parse("generator before degree line".into()))?;
            gens.push(parse_cycles(line, d)?);
        }
    }
    let degree = degree.ok_or_else(|| Error::Parse("missing degree line".into()))?;
    if degree == 0 {
        return Err(Error::Parse("degree must be positive".into()));
    }
    Group::from_permutations(name, degree, &gens, cap)
}

/// A group from a built-in name or, failing that, a group file path.
pub fn resolve_group(spec: &str) -> Result<Group> {
    resolve_group_with_cap(spec, order_cap())
}

pub fn resolve_group_with_cap(spec: &str, cap: usize) -> Result<Group> {
    match named_group(spec, cap) {
        Ok(g) => Ok(g),
        Err(Error::Parse(msg)) => {
            let path = Path::new(spec);
            if path.is_file() {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Parse(format!("{spec}: {e}")))?;
                parse_group_file(&text, cap)
            } else {
                Err(Error::Parse(msg))
            }
        }
        Err(e) => Err(e),
    }
}
