//! Smith normal form over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerSnf {
    /// Nonzero diagonal entries `d_1 | d_2 | ... | d_r`, all positive.
    pub divisors: Vec<BigInt>,
    pub rank: usize,
    /// `u * m * v` is the diagonal matrix with `divisors` on its diagonal.
    pub transforms: Option<(IntMatrix, IntMatrix)>,
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = BigInt::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            acc += &row[k] * &b[k][j];
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

struct Work {
    a: IntMatrix,
    u: Option<IntMatrix>,
    v: Option<IntMatrix>,
}

/// `(g, x, y)` with `g = gcd(a, b) >= 0` and `a*x + b*y = g`.
fn egcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Replaces lines `i` and `j` of `m` by `x*l_i + y*l_j` and `z*l_i + w*l_j`.
/// Lines are rows, or columns when `cols` is set.
fn mix(m: &mut IntMatrix, cols: bool, i: usize, j: usize, k: [&BigInt; 4]) {
    let [x, y, z, w] = k;
    let step = |p: &BigInt, q: &BigInt| (x * p + y * q, z * p + w * q);
    if cols {
        for row in m.iter_mut() {
            if row[i].is_zero() && row[j].is_zero() {
                continue;
            }
            let (p, q) = step(&row[i], &row[j]);
            row[i] = p;
            row[j] = q;
        }
    } else {
        let (top, bot): (Vec<_>, Vec<_>) = m[i].iter().zip(&m[j]).map(|(p, q)| step(p, q)).unzip();
        m[i] = top;
        m[j] = bot;
    }
}

impl Work {
    fn at(&self, cols: bool, line: usize, pos: usize) -> &BigInt {
        if cols {
            &self.a[pos][line]
        } else {
            &self.a[line][pos]
        }
    }

    fn lines(&self, cols: bool) -> (usize, usize) {
        let r = self.a.len();
        let c = self.a.first().map_or(0, Vec::len);
        if cols {
            (c, r)
        } else {
            (r, c)
        }
    }

    fn mix(&mut self, cols: bool, i: usize, j: usize, k: [&BigInt; 4]) {
        mix(&mut self.a, cols, i, j, k);
        // u records the row operations, v the column operations
        if let Some(t) = if cols { &mut self.v } else { &mut self.u } {
            mix(t, cols, i, j, k);
        }
    }

    fn swap(&mut self, cols: bool, i: usize, j: usize) {
        let (o, z) = (BigInt::one(), BigInt::zero());
        self.mix(cols, i, j, [&z, &o, &o, &z]);
    }

    /// line_i -= q * line_j
    fn sub(&mut self, cols: bool, i: usize, j: usize, q: &BigInt) {
        let (o, z) = (BigInt::one(), BigInt::zero());
        let nq = -q;
        self.mix(cols, i, j, [&o, &nq, &z, &o]);
    }

    fn negate(&mut self, cols: bool, i: usize) {
        fn go(m: &mut IntMatrix, cols: bool, i: usize) {
            if cols {
                m.iter_mut().for_each(|row| row[i] = -&row[i]);
            } else {
                m[i].iter_mut().for_each(|x| *x = -&*x);
            }
        }
        go(&mut self.a, cols, i);
        if let Some(t) = if cols { &mut self.v } else { &mut self.u } {
            go(t, cols, i);
        }
    }

    /// Hermite form along lines: echelon, positive pivots, and every entry
    /// above a pivot reduced into `[0, pivot)`. Reducing as we go keeps the
    /// entries bounded, unlike plain Euclidean elimination.
    fn hermite(&mut self, cols: bool) {
        let (n, len) = self.lines(cols);
        let mut r = 0;
        for c in 0..len {
            if r == n {
                break;
            }
            for i in r + 1..n {
                if self.at(cols, i, c).is_zero() {
                    continue;
                }
                if self.at(cols, r, c).is_zero() {
                    self.swap(cols, r, i);
                    continue;
                }
                let (p, q) = (self.at(cols, r, c).clone(), self.at(cols, i, c).clone());
                if q.is_multiple_of(&p) {
                    self.sub(cols, i, r, &(&q / &p));
                    continue;
                }
                let (g, x, y) = egcd(&p, &q);
                let (pg, qg) = (&p / &g, -(&q / &g));
                self.mix(cols, r, i, [&x, &y, &qg, &pg]);
            }
            if self.at(cols, r, c).is_zero() {
                continue;
            }
            if self.at(cols, r, c).is_negative() {
                self.negate(cols, r);
            }
            let piv = self.at(cols, r, c).clone();
            for k in 0..r {
                let q = self.at(cols, k, c).div_floor(&piv);
                if !q.is_zero() {
                    self.sub(cols, k, r, &q);
                }
            }
            r += 1;
        }
    }

    fn is_diagonal(&self) -> bool {
        self.a.iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(j, x)| i == j || x.is_zero()))
    }

    /// Turns `diag(a, b)` at positions `i < j` into `diag(gcd, lcm)`.
    fn gcd_lcm(&mut self, i: usize, j: usize) {
        let (a, b) = (self.a[i][i].clone(), self.a[j][j].clone());
        let (g, x, y) = egcd(&a, &b);
        let o = BigInt::one();
        self.sub(false, i, j, &-&o);
        let (nb, a_g) = (-(&b / &g), &a / &g);
        self.mix(true, i, j, [&x, &y, &nb, &a_g]);
        let q = &self.a[j][i] / &g;
        self.sub(false, j, i, &q);
        if self.a[j][j].is_negative() {
            self.negate(false, j);
        }
    }
}

/// Computes the Smith normal form of `m` (rows of equal length).
///
/// Alternates row and column Hermite forms until the matrix is diagonal,
/// then repairs the divisibility chain.
pub fn snf_integer(m: &[Vec<BigInt>], with_transforms: bool) -> IntegerSnf {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut w = Work {
        a: m.to_vec(),
        u: with_transforms.then(|| identity(rows)),
        v: with_transforms.then(|| identity(cols)),
    };
    let mut by_cols = false;
    loop {
        w.hermite(by_cols);
        if w.is_diagonal() {
            break;
        }
        by_cols = !by_cols;
    }
    let rank = (0..rows.min(cols)).take_while(|&i| !w.a[i][i].is_zero()).count();
    for i in 0..rank {
        for j in i + 1..rank {
            if !w.a[j][j].is_multiple_of(&w.a[i][i]) {
                w.gcd_lcm(i, j);
            }
        }
    }
    let divisors: Vec<BigInt> = (0..rank).map(|i| w.a[i][i].clone()).collect();
    IntegerSnf {
        rank,
        divisors,
        transforms: with_transforms.then(|| (w.u.unwrap(), w.v.unwrap())),
    }
}

/// Integer determinant by fraction-free elimination.
pub fn determinant(m: &IntMatrix) -> BigInt {
    let n = m.len();
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[k][k] * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * &a[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_examples() {
        assert_eq!(snf_integer(&m(&[&[2, 0], &[0, 3]]), false).divisors, ints(&[1, 6]));
        let z = snf_integer(&m(&[&[0, 0], &[0, 0]]), false);
        assert_eq!((z.divisors.len(), z.rank), (0, 0));
        assert_eq!(snf_integer(&m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]), false).divisors, ints(&[2, 6, 12]));
        assert_eq!(snf_integer(&[], false).rank, 0);
    }

    #[test]
    fn transforms_diagonalise() {
        let a = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16], &[1, 1, 1]]);
        let s = snf_integer(&a, true);
        let (u, v) = s.transforms.unwrap();
        let d = mat_mul(&mat_mul(&u, &a), &v);
        for (i, row) in d.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let want = if i == j && i < s.rank { s.divisors[i].clone() } else { BigInt::zero() };
                assert_eq!(*x, want);
            }
        }
        assert_eq!(determinant(&u).abs(), BigInt::one());
        assert_eq!(determinant(&v).abs(), BigInt::one());
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&m(&[&[2, 1], &[1, 1]])), BigInt::from(1));
        assert_eq!(determinant(&m(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(determinant(&m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]])), BigInt::from(-3));
    }
}
