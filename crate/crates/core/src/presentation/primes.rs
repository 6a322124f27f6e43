use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * a as u128 % m as u128) as u64;
        }
        a = (a as u128 * a as u128 % m as u128) as u64;
        e >>= 1;
    }
    r
}

/// Smallest positive primitive root modulo `prime` (1 for the prime 2).
pub fn least_primitive_root(prime: u64) -> Result<u64> {
    if !is_prime(prime) {
        return Err(Error::Domain(format!("{prime} is not a prime")));
    }
    if prime == 2 {
        return Ok(1);
    }
    let order = prime - 1;
    let factors = prime_factors(order);
    (2..prime)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, order / q, prime) != 1))
        .ok_or_else(|| Error::Domain(format!("no primitive root modulo {prime}")))
}
