//! Hermite and Smith normal forms of integer matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Row = Vec<BigInt>;

/// Row-style Hermite normal form `H = U A` of a matrix `A` with a
/// unimodular `U`. Zero rows of `H` are dropped; `transform` keeps the
/// rows of `U` belonging to the nonzero rows of `H`.
#[derive(Clone, Debug)]
pub struct Hnf {
    pub rows: Vec<Row>,
    pub pivots: Vec<usize>,
    pub transform: Vec<Row>,
    pub width: usize,
}

fn axpy(target: &mut [BigInt], k: &BigInt, src: &[BigInt]) {
    if k.is_zero() {
        return;
    }
    for (t, s) in target.iter_mut().zip(src) {
        if !s.is_zero() {
            *t += k * s;
        }
    }
}

/// Replaces rows `(a, b)` by `(x a + y b, -b/g a + a/g b)` where
/// `g = gcd` of their pivots, leaving `g` in `a` and zero in `b`.
fn combine(rows: &mut [Row], a: usize, b: usize, col: usize) -> (BigInt, BigInt, BigInt, BigInt) {
    let ea = rows[a][col].clone();
    let eb = rows[b][col].clone();
    let ext = ea.extended_gcd(&eb);
    let (g, x, y) = (ext.gcd, ext.x, ext.y);
    let (ua, ub) = (&ea / &g, &eb / &g);
    let ra = rows[a].clone();
    let rb = rows[b].clone();
    for j in 0..ra.len() {
        rows[a][j] = &x * &ra[j] + &y * &rb[j];
        rows[b][j] = &ua * &rb[j] - &ub * &ra[j];
    }
    (x, y, -ub, ua)
}

fn apply2(rows: &mut [Row], a: usize, b: usize, m: &(BigInt, BigInt, BigInt, BigInt)) {
    let ra = rows[a].clone();
    let rb = rows[b].clone();
    for j in 0..ra.len() {
        rows[a][j] = &m.0 * &ra[j] + &m.1 * &rb[j];
        rows[b][j] = &m.2 * &ra[j] + &m.3 * &rb[j];
    }
}

impl Hnf {
    pub fn new(matrix: &[Row], width: usize) -> Hnf {
        let m = matrix.len();
        let mut a: Vec<Row> = matrix.to_vec();
        let mut u: Vec<Row> = (0..m)
            .map(|i| (0..m).map(|j| BigInt::from((i == j) as i32)).collect())
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..width {
            if r == m {
                break;
            }
            let Some(first) = (r..m).find(|&i| !a[i][col].is_zero()) else {
                continue;
            };
            a.swap(r, first);
            u.swap(r, first);
            for i in r + 1..m {
                if a[i][col].is_zero() {
                    continue;
                }
                if a[i][col].is_multiple_of(&a[r][col]) {
                    let q = -(&a[i][col] / &a[r][col]);
                    let (pr, pu) = (a[r].clone(), u[r].clone());
                    axpy(&mut a[i], &q, &pr);
                    axpy(&mut u[i], &q, &pu);
                } else {
                    let op = combine(&mut a, r, i, col);
                    apply2(&mut u, r, i, &op);
                }
            }
            if a[r][col].is_negative() {
                for x in a[r].iter_mut().chain(u[r].iter_mut()) {
                    *x = -&*x;
                }
            }
            let piv = a[r][col].clone();
            for i in 0..r {
                let q = -a[i][col].div_floor(&piv);
                let (pr, pu) = (a[r].clone(), u[r].clone());
                axpy(&mut a[i], &q, &pr);
                axpy(&mut u[i], &q, &pu);
            }
            pivots.push(col);
            r += 1;
        }
        a.truncate(r);
        u.truncate(r);
        Hnf {
            rows: a,
            pivots,
            transform: u,
            width,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Coordinates `c` with `v = c H`, if `v` lies in the row lattice.
    pub fn solve(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.rows.len());
        for (row, &col) in self.rows.iter().zip(&self.pivots) {
            let (q, rem) = rest[col].div_rem(&row[col]);
            if !rem.is_zero() {
                return None;
            }
            axpy(&mut rest, &-&q, row);
            coords.push(q);
        }
        rest.iter().all(Zero::is_zero).then_some(coords)
    }

    /// Turns coordinates against the Hermite rows into a combination of
    /// the original generators.
    pub fn to_generators(&self, coords: &[BigInt]) -> Vec<BigInt> {
        let m = self.transform.first().map_or(0, Vec::len);
        let mut out = vec![BigInt::zero(); m];
        for (c, u) in coords.iter().zip(&self.transform) {
            axpy(&mut out, c, u);
        }
        out
    }
}

/// Nonzero Smith invariants `d_1 | d_2 | ...` of an integer matrix.
pub fn smith_invariants(matrix: &[Row], width: usize) -> Vec<BigInt> {
    // reduce to a square-ish full-rank matrix first
    let mut a = Hnf::new(matrix, width).rows;
    let rows = a.len();
    let mut diag = Vec::with_capacity(rows);
    for t in 0..rows {
        loop {
            // smallest nonzero entry of the trailing block as pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..width {
                    if !a[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return finish(diag);
            };
            a.swap(t, bi);
            for row in a.iter_mut() {
                row.swap(t, bj);
            }
            let piv = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t].div_floor(&piv);
                if !q.is_zero() {
                    let pr = a[t].clone();
                    axpy(&mut a[i], &-&q, &pr);
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..width {
                let q = a[t][j].div_floor(&piv);
                if !q.is_zero() {
                    for row in a.iter_mut() {
                        let s = row[t].clone();
                        row[j] -= &q * s;
                    }
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // the pivot must divide the rest of the block
            let bad = (t + 1..rows).find(|&i| (t + 1..width).any(|j| !a[i][j].is_multiple_of(&piv)));
            if let Some(i) = bad {
                let ri = a[i].clone();
                axpy(&mut a[t], &BigInt::one(), &ri);
                continue;
            }
            diag.push(piv.abs());
            break;
        }
    }
    finish(diag)
}

fn finish(mut diag: Vec<BigInt>) -> Vec<BigInt> {
    diag.sort();
    diag
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat(rows: &[&[i64]]) -> Vec<Row> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    fn ints(v: &[BigInt]) -> Vec<i64> {
        v.iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    #[test]
    fn marks_of_c2() {
        let a = mat(&[&[1, 1], &[2, 0]]);
        let h = Hnf::new(&a, 2);
        assert_eq!(h.rank(), 2);
        assert_eq!(ints(&smith_invariants(&a, 2)), vec![1, 2]);
        let c = h.solve(&[BigInt::from(1), BigInt::from(-1)]).unwrap();
        assert_eq!(ints(&h.to_generators(&c)), vec![-1, 1]);
        assert!(h.solve(&[BigInt::from(1), BigInt::from(0)]).is_none());
    }

    #[test]
    fn smith_examples() {
        assert_eq!(ints(&smith_invariants(&mat(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]), 3)), vec![2, 6, 12]);
        assert_eq!(ints(&smith_invariants(&mat(&[&[0, 0], &[0, 0]]), 2)), Vec::<i64>::new());
        assert_eq!(ints(&smith_invariants(&mat(&[&[2, 0], &[0, 3]]), 2)), vec![1, 6]);
        assert_eq!(ints(&smith_invariants(&mat(&[&[1]]), 1)), vec![1]);
    }

    #[test]
    fn dependent_rows() {
        let a = mat(&[&[2, 4], &[3, 6], &[1, 2]]);
        let h = Hnf::new(&a, 2);
        assert_eq!(h.rank(), 1);
        assert_eq!(ints(&h.rows[0]), vec![1, 2]);
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..5, 1usize..5).prop_flat_map(|(m, n)| {
            prop::collection::vec(prop::collection::vec(-6i64..7, n), m)
        })
    }

    proptest! {
        #[test]
        fn hnf_is_an_echelon_basis_of_the_same_lattice(rows in small_matrix()) {
            let width = rows[0].len();
            let a: Vec<Row> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
            let h = Hnf::new(&a, width);
            // every input row is a member, and H = U A
            for r in &a {
                prop_assert!(h.solve(r).is_some());
            }
            for (hr, ur) in h.rows.iter().zip(&h.transform) {
                let mut prod = vec![BigInt::zero(); width];
                for (c, r) in ur.iter().zip(&a) {
                    axpy(&mut prod, c, r);
                }
                prop_assert_eq!(&prod, hr);
            }
            for (k, (&p, row)) in h.pivots.iter().zip(&h.rows).enumerate() {
                prop_assert!(row[p].is_positive());
                prop_assert!(row[..p].iter().all(Zero::is_zero));
                for above in &h.rows[..k] {
                    prop_assert!(!above[p].is_negative() && above[p] < row[p]);
                }
            }
        }

        #[test]
        fn smith_product_matches_square_determinant(rows in prop::collection::vec(prop::collection::vec(-5i64..6, 3), 3)) {
            let a: Vec<Row> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
            let det = rows[0][0] * (rows[1][1] * rows[2][2] - rows[1][2] * rows[2][1])
                - rows[0][1] * (rows[1][0] * rows[2][2] - rows[1][2] * rows[2][0])
                + rows[0][2] * (rows[1][0] * rows[2][1] - rows[1][1] * rows[2][0]);
            let d = smith_invariants(&a, 3);
            if det != 0 {
                prop_assert_eq!(d.len(), 3);
                let prod: BigInt = d.iter().product();
                prop_assert_eq!(prod, BigInt::from(det.abs()));
                prop_assert!(d.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
            } else {
                prop_assert!(d.len() < 3);
            }
        }
    }
}
