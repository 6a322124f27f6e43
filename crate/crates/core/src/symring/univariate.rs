//! Univariate factorization over Z: factor modulo a small prime with
//! Cantor–Zassenhaus, Hensel-lift each factor, then recombine.
//!
//! Polynomials are dense coefficient vectors, lowest degree first.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type ZPoly = Vec<BigInt>;
type FpPoly = Vec<u64>;

fn trim_z(mut f: ZPoly) -> ZPoly {
    while f.last().is_some_and(|c| c.is_zero()) {
        f.pop();
    }
    f
}

fn z_mul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim_z(out)
}

/// Exact division over Z, `None` if `b` does not divide `a`.
pub(crate) fn z_div_exact(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let b = trim_z(b.to_vec());
    if b.is_empty() {
        return None;
    }
    let mut r = trim_z(a.to_vec());
    if r.is_empty() {
        return Some(Vec::new());
    }
    if r.len() < b.len() {
        return None;
    }
    let lb = b.last().unwrap().clone();
    let mut q = vec![BigInt::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let (c, rem) = r.last().unwrap().div_rem(&lb);
        if !rem.is_zero() {
            return None;
        }
        let shift = r.len() - b.len();
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &c * bc;
        }
        q[shift] = c;
        r = trim_z(r);
        if r.is_empty() {
            return Some(trim_z(q));
        }
    }
    None
}

fn z_content(f: &[BigInt]) -> BigInt {
    f.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn z_primitive(f: &[BigInt]) -> ZPoly {
    let mut c = z_content(f);
    if f.last().is_some_and(|x| x.is_negative()) {
        c = -c;
    }
    f.iter().map(|x| x / &c).collect()
}

// --- arithmetic in F_q[x] ---

fn fp_trim(mut f: FpPoly) -> FpPoly {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

fn mulmod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

fn inv_mod(a: u64, q: u64) -> u64 {
    powmod(a, q - 2, q)
}

fn powmod(mut a: u64, mut e: u64, q: u64) -> u64 {
    let mut r = 1 % q;
    a %= q;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, q);
        }
        a = mulmod(a, a, q);
        e >>= 1;
    }
    r
}

fn fp_from_z(f: &[BigInt], q: u64) -> FpPoly {
    let qb = BigInt::from(q);
    fp_trim(f.iter().map(|c| c.mod_floor(&qb).to_u64().unwrap()).collect())
}

fn fp_sub(a: &[u64], b: &[u64], q: u64) -> FpPoly {
    let n = a.len().max(b.len());
    let mut out = vec![0; n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + q - y) % q;
    }
    fp_trim(out)
}

fn fp_mul(a: &[u64], b: &[u64], q: u64) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, q)) % q;
        }
    }
    fp_trim(out)
}

fn fp_divrem(a: &[u64], b: &[u64], q: u64) -> (FpPoly, FpPoly) {
    let b = fp_trim(b.to_vec());
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r = fp_trim(a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let inv = inv_mod(*b.last().unwrap(), q);
    let mut quot = vec![0u64; r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let c = mulmod(*r.last().unwrap(), inv, q);
        let shift = r.len() - b.len();
        for (i, &bc) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + q - mulmod(c, bc, q)) % q;
        }
        quot[shift] = c;
        r = fp_trim(r);
    }
    (fp_trim(quot), r)
}

fn fp_rem(a: &[u64], b: &[u64], q: u64) -> FpPoly {
    fp_divrem(a, b, q).1
}

fn fp_monic(f: &[u64], q: u64) -> FpPoly {
    match f.last() {
        None => Vec::new(),
        Some(&lc) => {
            let inv = inv_mod(lc, q);
            f.iter().map(|&c| mulmod(c, inv, q)).collect()
        }
    }
}

fn fp_gcd(a: &[u64], b: &[u64], q: u64) -> FpPoly {
    let mut a = fp_trim(a.to_vec());
    let mut b = fp_trim(b.to_vec());
    while !b.is_empty() {
        let r = fp_rem(&a, &b, q);
        a = b;
        b = r;
    }
    fp_monic(&a, q)
}

/// Returns `(g, s, t)` with `s a + t b = g` monic.
fn fp_ext_gcd(a: &[u64], b: &[u64], q: u64) -> (FpPoly, FpPoly, FpPoly) {
    let (mut r0, mut r1) = (fp_trim(a.to_vec()), fp_trim(b.to_vec()));
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (quot, rem) = fp_divrem(&r0, &r1, q);
        r0 = std::mem::replace(&mut r1, rem);
        let s2 = fp_sub(&s0, &fp_mul(&quot, &s1, q), q);
        s0 = std::mem::replace(&mut s1, s2);
        let t2 = fp_sub(&t0, &fp_mul(&quot, &t1, q), q);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let inv = inv_mod(*r0.last().unwrap(), q);
    let scale = |v: &[u64]| fp_trim(v.iter().map(|&c| mulmod(c, inv, q)).collect());
    (scale(&r0), scale(&s0), scale(&t0))
}

fn fp_powmod(base: &[u64], mut e: u128, m: &[u64], q: u64) -> FpPoly {
    let mut result = vec![1u64];
    let mut b = fp_rem(base, m, q);
    while e > 0 {
        if e & 1 == 1 {
            result = fp_rem(&fp_mul(&result, &b, q), m, q);
        }
        b = fp_rem(&fp_mul(&b, &b, q), m, q);
        e >>= 1;
    }
    result
}

fn fp_derivative(f: &[u64], q: u64) -> FpPoly {
    fp_trim(f.iter().enumerate().skip(1).map(|(i, &c)| mulmod(c, i as u64 % q, q)).collect())
}

/// Distinct-degree factorization of a monic square-free polynomial.
fn distinct_degree(f: &[u64], q: u64) -> Vec<(FpPoly, usize)> {
    let mut out = Vec::new();
    let mut rest = f.to_vec();
    let x = vec![0u64, 1];
    let mut h = x.clone();
    let mut d = 0;
    while rest.len() > 1 {
        d += 1;
        if 2 * d > rest.len() - 1 {
            out.push((rest.clone(), rest.len() - 1));
            break;
        }
        h = fp_powmod(&h, q as u128, &rest, q);
        let g = fp_gcd(&fp_sub(&h, &x, q), &rest, q);
        if g.len() > 1 {
            out.push((g.clone(), d));
            rest = fp_divrem(&rest, &g, q).0;
            h = fp_rem(&h, &rest, q);
        }
    }
    out
}

/// Equal-degree splitting (Cantor–Zassenhaus, odd `q`).
fn equal_degree(f: &[u64], d: usize, q: u64, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
    let n = f.len() - 1;
    if n == d {
        return vec![f.to_vec()];
    }
    let e = ((q as u128).pow(d as u32) - 1) / 2;
    loop {
        let a: FpPoly = fp_trim((0..n).map(|_| rng.gen_range(0..q)).collect());
        if a.len() < 2 {
            continue;
        }
        let b = fp_sub(&fp_powmod(&a, e, f, q), &[1], q);
        let g = fp_gcd(&b, f, q);
        if g.len() > 1 && g.len() < f.len() {
            let other = fp_divrem(f, &g, q).0;
            let mut out = equal_degree(&g, d, q, rng);
            out.extend(equal_degree(&fp_monic(&other, q), d, q, rng));
            return out;
        }
    }
}

fn is_small_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

// --- Hensel lifting over Z / q^k ---

fn z_mod(f: &[BigInt], m: &BigInt) -> ZPoly {
    trim_z(f.iter().map(|c| c.mod_floor(m)).collect())
}

fn z_from_fp(f: &[u64]) -> ZPoly {
    f.iter().map(|&c| BigInt::from(c)).collect()
}

/// Lifts the monic factor `h` of `f` (mod q) to a monic factor mod `q^k`.
fn hensel_lift(f: &[BigInt], g: &[u64], h: &[u64], q: u64, k: u32) -> ZPoly {
    let (one, s, _t) = fp_ext_gcd(g, h, q);
    debug_assert_eq!(one, vec![1]);
    let qb = BigInt::from(q);
    let mut big_g = z_from_fp(g);
    let mut big_h = z_from_fp(h);
    let mut qj = qb.clone();
    for _ in 1..k {
        // e = (f - G H) / q^j  (mod q)
        let gh = z_mul(&big_g, &big_h);
        let mut diff: ZPoly = f.to_vec();
        if diff.len() < gh.len() {
            diff.resize(gh.len(), BigInt::zero());
        }
        for (i, c) in gh.iter().enumerate() {
            diff[i] -= c;
        }
        let e: ZPoly = diff.iter().map(|c| c / &qj).collect();
        let e = fp_from_z(&e, q);
        let h1 = fp_rem(&fp_mul(&s, &e, q), h, q);
        let (g1, r) = fp_divrem(&fp_sub(&e, &fp_mul(g, &h1, q), q), h, q);
        debug_assert!(r.is_empty(), "Hensel step left a remainder");
        let next = &qj * &qb;
        let add = |big: &mut ZPoly, small: &FpPoly| {
            if big.len() < small.len() {
                big.resize(small.len(), BigInt::zero());
            }
            for (i, &c) in small.iter().enumerate() {
                big[i] += &qj * BigInt::from(c);
            }
        };
        add(&mut big_g, &g1);
        add(&mut big_h, &h1);
        big_g = z_mod(&big_g, &next);
        big_h = z_mod(&big_h, &next);
        qj = next;
    }
    big_h
}

fn symmetric(f: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m / 2;
    trim_z(
        f.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Irreducible factors over Z of a primitive, square-free `f` with positive
/// leading coefficient and degree at least one.
pub fn factor_squarefree(f: &[BigInt]) -> Vec<ZPoly> {
    let f = trim_z(f.to_vec());
    let deg = f.len() - 1;
    if deg <= 1 {
        return vec![z_primitive(&f)];
    }
    let lc = f.last().unwrap().clone();

    let q = (3u64..)
        .filter(|&q| is_small_prime(q))
        .find(|&q| {
            if (&lc % BigInt::from(q)).is_zero() {
                return false;
            }
            let fq = fp_from_z(&f, q);
            fp_gcd(&fq, &fp_derivative(&fq, q), q).len() == 1
        })
        .expect("some prime keeps f square-free");

    let fq = fp_monic(&fp_from_z(&f, q), q);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut modular: Vec<FpPoly> = Vec::new();
    for (part, d) in distinct_degree(&fq, q) {
        modular.extend(equal_degree(&part, d, q, &mut rng));
    }
    if modular.len() == 1 {
        return vec![f];
    }

    // coefficient bound for factors: 2^deg * ||f||_2, times |lc|, doubled
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let bound = (BigInt::one() << (deg + 1)) * (norm2.sqrt() + 1u32) * lc.abs();
    let qb = BigInt::from(q);
    let mut k = 1u32;
    let mut m = qb.clone();
    while m <= bound {
        m *= &qb;
        k += 1;
    }

    let lcq = lc.mod_floor(&qb).to_u64().unwrap();
    let lifted: Vec<ZPoly> = (0..modular.len())
        .map(|i| {
            let mut g = vec![lcq];
            for (j, other) in modular.iter().enumerate() {
                if j != i {
                    g = fp_mul(&g, other, q);
                }
            }
            hensel_lift(&f, &g, &modular[i], q, k)
        })
        .collect();

    let mut remaining: Vec<usize> = (0..lifted.len()).collect();
    let mut rest = f.clone();
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= remaining.len() {
        let mut hit = None;
        for sub in subsets(remaining.len(), size) {
            let rl = rest.last().unwrap().clone();
            let mut cand = vec![rl];
            for &i in &sub {
                cand = z_mod(&z_mul(&cand, &lifted[remaining[i]]), &m);
            }
            let cand = z_primitive(&symmetric(&cand, &m));
            if let Some(quot) = z_div_exact(&rest, &cand) {
                hit = Some((sub, cand, quot));
                break;
            }
        }
        match hit {
            Some((sub, cand, quot)) => {
                found.push(cand);
                rest = quot;
                remaining = remaining
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !sub.contains(i))
                    .map(|(_, &x)| x)
                    .collect();
            }
            None => size += 1,
        }
    }
    if rest.len() > 1 {
        found.push(z_primitive(&rest));
    }
    found
}
