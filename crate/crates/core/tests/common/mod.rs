//! Independent oracles shared by the integration tests. Nothing here calls
//! the library's Smith normal form.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use schur_core::presentation::{Assignment, Presentation};
use schur_core::symring::Polynomial;

/// Extended gcd with `g >= 0` and `a*x + b*y = g`.
fn egcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Rank and the absolute value of some nonzero `rank x rank` minor, by
/// fraction-free elimination with full pivoting.
fn rank_and_minor(m: &[Vec<BigInt>]) -> (usize, BigInt) {
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut k = 0;
    while k < rows.min(cols) {
        let Some((pr, pc)) = (k..rows).flat_map(|i| (k..cols).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero())
        else {
            break;
        };
        a.swap(k, pr);
        for row in a.iter_mut() {
            row.swap(k, pc);
        }
        for i in k + 1..rows {
            for j in k + 1..cols {
                a[i][j] = (&a[k][k] * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
        k += 1;
    }
    (k, prev.abs())
}

/// Nonzero invariant factors by plain gcd elimination over `Z/N` with
/// `N = 2 * |minor|`: every invariant factor divides the minor, so none of
/// them vanishes mod `N`, and entries never grow past `N`. Pivots are the
/// smallest residue in the trailing block; the diagonal is fixed up at the
/// end with gcd/lcm swaps.
pub fn naive_snf(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let (rank, minor) = rank_and_minor(m);
    if rank == 0 {
        return Vec::new();
    }
    let n = minor * 2;
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|x| x.mod_floor(&n)).collect()).collect();
    let rows = a.len();
    let cols = a[0].len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j] < a[bi][bj]) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pr, pc)) = best else { break };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }
        loop {
            let mut moved = false;
            for i in t + 1..rows {
                let q = &a[i][t] / &a[t][t];
                let (top, rest) = a.split_at_mut(i);
                for (x, y) in rest[0].iter_mut().zip(&top[t]).skip(t) {
                    *x = (&*x - &q * y).mod_floor(&n);
                }
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    moved = true;
                }
            }
            for j in t + 1..cols {
                let q = &a[t][j] / &a[t][t];
                for row in a.iter_mut().skip(t) {
                    let v = (&row[j] - &q * &row[t]).mod_floor(&n);
                    row[j] = v;
                }
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    moved = true;
                }
            }
            if !moved {
                break;
            }
        }
        diag.push(a[t][t].gcd(&n));
        t += 1;
    }
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let g = diag[i].gcd(&diag[j]);
            let l = diag[i].lcm(&diag[j]);
            diag[i] = g;
            diag[j] = l;
        }
    }
    assert_eq!(diag.len(), rank, "modulus too small");
    diag
}

fn det_laplace(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = BigInt::zero();
    for c in 0..n {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> =
            m[1..].iter().map(|r| r.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, v)| v.clone()).collect()).collect();
        let term = &m[0][c] * det_laplace(&minor);
        if c % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors as quotients of determinantal divisors (gcds of all
/// k x k minors). Only sensible for small matrices.
pub fn determinantal_snf(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut out = Vec::new();
    for k in 1..=rows.min(cols) {
        let mut g = BigInt::zero();
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let sub: Vec<Vec<BigInt>> = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c].clone()).collect()).collect();
                g = g.gcd(&det_laplace(&sub));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

pub fn random_matrix(rng: &mut impl Rng, max_dim: usize, bound: i64) -> Vec<Vec<BigInt>> {
    let r = rng.gen_range(1..=max_dim);
    let c = rng.gen_range(1..=max_dim);
    let zero_bias = rng.gen_bool(0.5);
    (0..r)
        .map(|_| {
            (0..c)
                .map(|_| {
                    if zero_bias && rng.gen_bool(0.4) {
                        BigInt::zero()
                    } else {
                        BigInt::from(rng.gen_range(-bound..=bound))
                    }
                })
                .collect()
        })
        .collect()
}

pub fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// A presentation of the abelian ring `Z_{p^e1} + Z_{p^e2} + ...`.
pub fn abelian(exps: &[u32]) -> String {
    let mut text = format!("name abelian\ndim {}\n", exps.iter().sum::<u32>());
    let mut g = 1;
    for &e in exps {
        for _ in 1..e {
            text.push_str(&format!("p*b{g} = b{}\n", g + 1));
            g += 1;
        }
        g += 1;
    }
    text
}

/// The direct sum of two parameter-free presentations, `b`'s generators
/// numbered after `a`'s.
pub fn direct_sum(a: &Presentation, b: &Presentation) -> Presentation {
    let (n, m) = (a.dim(), b.dim());
    let mut s = Presentation::new(format!("{}+{}", a.name, b.name), n + m, &[] as &[&str]).unwrap();
    let ring = s.ring().clone();
    for (part, shift) in [(a, 0), (b, n)] {
        for (&(i, j, k), c) in part.brackets() {
            s.set_bracket(i + shift, j + shift, k + shift, &c.embed(&ring).unwrap()).unwrap();
        }
        for (&(i, k), c) in part.pmults() {
            s.set_pmult(i + shift, k + shift, &c.embed(&ring).unwrap()).unwrap();
        }
    }
    s
}

/// Invariants of the additive group of `L / [L, L]` at `prime`.
pub fn abelianization(pres: &Presentation, prime: u64) -> Vec<BigInt> {
    let n = pres.dim();
    let a = Assignment::new();
    let val = |c: &Polynomial| c.evaluate_int(prime, &a).unwrap();
    let mut rows = Vec::new();
    for i in 1..=n {
        let mut r = vec![BigInt::zero(); n];
        r[i - 1] = BigInt::from(prime);
        for k in 1..=n {
            r[k - 1] -= val(&pres.pmult_coefficient(i, k));
        }
        rows.push(r);
        for j in i + 1..=n {
            rows.push((1..=n).map(|k| val(&pres.coefficient(i, j, k))).collect());
        }
    }
    naive_snf(&rows).into_iter().filter(|d| !d.is_one()).collect()
}

/// Prime-power invariants, sorted, with units dropped.
pub fn normalized(mut v: Vec<BigInt>) -> Vec<BigInt> {
    v.retain(|d| !d.is_one());
    v.sort();
    v
}
