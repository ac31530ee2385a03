//! Dense univariate integer polynomials in `q`, stored low degree first.
//!
//! All vectors handled here are kept trimmed: no trailing zeros, and the
//! zero polynomial is the empty vector.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) type UPoly = Vec<BigInt>;

pub(crate) fn trim(p: &mut UPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub(crate) fn constant(c: BigInt) -> UPoly {
    if c.is_zero() {
        Vec::new()
    } else {
        vec![c]
    }
}

pub(crate) fn is_one(p: &[BigInt]) -> bool {
    p.len() == 1 && p[0].is_one()
}

pub(crate) fn add(a: &[BigInt], b: &[BigInt]) -> UPoly {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o += s;
    }
    trim(&mut out);
    out
}

pub(crate) fn sub(a: &[BigInt], b: &[BigInt]) -> UPoly {
    let mut out = a.to_vec();
    if out.len() < b.len() {
        out.resize(b.len(), BigInt::zero());
    }
    for (o, s) in out.iter_mut().zip(b) {
        *o -= s;
    }
    trim(&mut out);
    out
}

pub(crate) fn neg(a: &[BigInt]) -> UPoly {
    a.iter().map(|c| -c).collect()
}

pub(crate) fn mul(a: &[BigInt], b: &[BigInt]) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if a.len() == 1 {
        return scale(b, &a[0]);
    }
    if b.len() == 1 {
        return scale(a, &b[0]);
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn scale(a: &[BigInt], c: &BigInt) -> UPoly {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|x| x * c).collect()
}

pub(crate) fn div_scalar_exact(a: &[BigInt], c: &BigInt) -> UPoly {
    a.iter().map(|x| x / c).collect()
}

/// Multiplies by `q^n`.
pub(crate) fn shift(a: &[BigInt], n: usize) -> UPoly {
    if a.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); n];
    out.extend_from_slice(a);
    out
}

pub(crate) fn content(a: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in a {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Lowest exponent carrying a nonzero coefficient.
pub(crate) fn low_degree(a: &[BigInt]) -> usize {
    a.iter().position(|c| !c.is_zero()).unwrap_or(0)
}

fn primitive(a: &[BigInt]) -> UPoly {
    let c = content(a);
    if c.is_one() {
        a.to_vec()
    } else {
        div_scalar_exact(a, &c)
    }
}

/// Pseudo-remainder of `a` by `b` (`b` nonzero).
fn prem(a: &[BigInt], b: &[BigInt]) -> UPoly {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (i, c) in b.iter().enumerate() {
            r[dr - db + i] -= &lr * c;
        }
        trim(&mut r);
    }
    r
}

/// Greatest common divisor with positive leading coefficient.
pub(crate) fn gcd(a: &[BigInt], b: &[BigInt]) -> UPoly {
    if a.is_empty() {
        return normalize_sign(b.to_vec());
    }
    if b.is_empty() {
        return normalize_sign(a.to_vec());
    }
    let c = content(a).gcd(&content(b));
    let shift_q = low_degree(a).min(low_degree(b));
    if a.len() == 1 || b.len() == 1 || a.len() - low_degree(a) == 1 || b.len() - low_degree(b) == 1 {
        // one side is a monomial
        return shift(&[c], shift_q);
    }
    let mut x = primitive(&a[low_degree(a)..]);
    let mut y = primitive(&b[low_degree(b)..]);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        if y.len() == 1 {
            x = vec![BigInt::one()];
            break;
        }
        let r = prem(&x, &y);
        x = y;
        y = if r.is_empty() { r } else { primitive(&r) };
    }
    let g = normalize_sign(primitive(&x));
    shift(&scale(&g, &c), shift_q)
}

fn normalize_sign(mut p: UPoly) -> UPoly {
    if p.last().is_some_and(Signed::is_negative) {
        for c in p.iter_mut() {
            *c = -&*c;
        }
    }
    p
}

/// Exact quotient `a / b`, or `None` when `b` does not divide `a` over Z.
pub(crate) fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<UPoly> {
    if b.is_empty() {
        return None;
    }
    if a.is_empty() {
        return Some(Vec::new());
    }
    if b.len() == 1 {
        let (q, rem): (Vec<_>, Vec<_>) = a.iter().map(|x| x.div_rem(&b[0])).unzip();
        return rem.iter().all(Zero::is_zero).then_some(q);
    }
    if a.len() < b.len() {
        return None;
    }
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    let mut quot = vec![BigInt::zero(); a.len() - db];
    while r.len() > db {
        let dr = r.len() - 1;
        let (t, rem) = r[dr].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (i, c) in b.iter().enumerate() {
            r[dr - db + i] -= &t * c;
        }
        quot[dr - db] = t;
        trim(&mut r);
    }
    if r.is_empty() {
        trim(&mut quot);
        Some(quot)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> UPoly {
        let mut out: UPoly = v.iter().map(|&x| BigInt::from(x)).collect();
        trim(&mut out);
        out
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (q-1)(q+2) and (q-1)(q^2+1)
        let a = mul(&p(&[-1, 1]), &p(&[2, 1]));
        let b = mul(&p(&[-1, 1]), &p(&[1, 0, 1]));
        assert_eq!(gcd(&a, &b), p(&[-1, 1]));
    }

    #[test]
    fn gcd_keeps_integer_content_and_q_powers() {
        let a = p(&[0, 0, 6, 6]);
        let b = p(&[0, 4, 4]);
        assert_eq!(gcd(&a, &b), p(&[0, 2, 2]));
    }

    #[test]
    fn exact_division_detects_remainders() {
        let a = mul(&p(&[1, 1]), &p(&[3, 0, 2]));
        assert_eq!(div_exact(&a, &p(&[1, 1])), Some(p(&[3, 0, 2])));
        assert_eq!(div_exact(&a, &p(&[2, 1])), None);
    }
}
