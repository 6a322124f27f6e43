//! Multivariate gcd over Z by recursive primitive polynomial remainder
//! sequences. Adequate for the small, low-degree inputs that pseudo-units
//! and their factors produce.

use num_integer::Integer;

use super::poly::Polynomial;

/// Greatest common divisor, normalized to a positive leading coefficient.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return b.normalize_sign();
    }
    if b.is_zero() {
        return a.normalize_sign();
    }
    if let (Some(x), Some(y)) = (a.as_constant(), b.as_constant()) {
        return Polynomial::constant(a.ring(), x.gcd(&y));
    }
    let main = match a.used_vars().into_iter().chain(b.used_vars()).max() {
        Some(v) => v,
        None => unreachable!("constants handled above"),
    };
    if !a.contains_var(main) {
        return gcd(a, &content_in(b, main));
    }
    if !b.contains_var(main) {
        return gcd(&content_in(a, main), b);
    }

    let ca = content_in(a, main);
    let cb = content_in(b, main);
    let c = gcd(&ca, &cb);
    let mut f = a.div_exact(&ca).expect("content divides");
    let mut g = b.div_exact(&cb).expect("content divides");
    if f.degree_in(main) < g.degree_in(main) {
        std::mem::swap(&mut f, &mut g);
    }
    loop {
        let r = pseudo_rem(&f, &g, main);
        if r.is_zero() {
            break;
        }
        f = g;
        g = primitive_in(&r, main);
        if !g.contains_var(main) {
            // remainder is constant in `main`: primitive part is 1
            return c.normalize_sign();
        }
    }
    (&c * &primitive_in(&g, main)).normalize_sign()
}

/// Gcd of the coefficients of `f` viewed as a polynomial in `var`.
pub fn content_in(f: &Polynomial, var: usize) -> Polynomial {
    let mut acc = Polynomial::zero(f.ring());
    for c in f.coefficients_in(var).iter().rev() {
        if c.is_zero() {
            continue;
        }
        acc = gcd(&acc, c);
        if acc.is_one() {
            break;
        }
    }
    acc
}

/// `f` divided by its content with respect to `var`.
pub fn primitive_in(f: &Polynomial, var: usize) -> Polynomial {
    if f.is_zero() {
        return f.clone();
    }
    let c = content_in(f, var);
    f.div_exact(&c).expect("content divides").normalize_sign()
}

/// Pseudo-remainder of `f` by `g` in `var`: `lc(g)^k f` reduced below
/// `deg_var g`.
pub fn pseudo_rem(f: &Polynomial, g: &Polynomial, var: usize) -> Polynomial {
    let dg = g.degree_in(var);
    let lcg = g.lc_in(var);
    let mut r = f.clone();
    while !r.is_zero() && r.degree_in(var) >= dg {
        let dr = r.degree_in(var);
        let lcr = r.lc_in(var);
        r = &(&lcg * &r) - &(&lcr * &g.shift_var(var, dr - dg));
    }
    r
}
