//! Dense polynomial helpers over Q and Z, little-endian coefficient order.
//!
//! Only what the cyclotomic layer needs: multiplication, division with
//! remainder, the extended Euclidean algorithm, and the cyclotomic
//! polynomials themselves (computed by recursive exact division of x^m - 1).

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub(crate) type QPoly = Vec<BigRational>;

pub(crate) fn trim(p: &mut QPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub(crate) fn is_zero(p: &QPoly) -> bool {
    p.iter().all(Zero::is_zero)
}

fn degree(p: &QPoly) -> usize {
    debug_assert!(!is_zero(p));
    p.len() - 1
}

pub(crate) fn mul(a: &QPoly, b: &QPoly) -> QPoly {
    if is_zero(a) || is_zero(b) {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    trim(&mut out);
    out
}

fn sub_scaled(a: &mut QPoly, b: &QPoly, factor: &BigRational, shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, BigRational::zero());
    }
    for (i, bi) in b.iter().enumerate() {
        if !bi.is_zero() {
            a[i + shift] -= factor * bi;
        }
    }
}

/// Quotient and remainder of `a / b`; `b` must be nonzero.
pub(crate) fn divrem(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
    assert!(!is_zero(b), "polynomial division by zero");
    let mut rem = a.clone();
    trim(&mut rem);
    let db = degree(b);
    let lead = b[db].clone();
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quo = vec![BigRational::zero(); rem.len() - db];
    while !is_zero(&rem) && degree(&rem) >= db {
        let dr = degree(&rem);
        let factor = &rem[dr] / &lead;
        quo[dr - db] = factor.clone();
        sub_scaled(&mut rem, b, &factor, dr - db);
        rem.truncate(dr);
        trim(&mut rem);
    }
    trim(&mut quo);
    (quo, rem)
}

/// Extended gcd: returns (g, u, v) with u*a + v*b = g.
pub(crate) fn ext_gcd(a: &QPoly, b: &QPoly) -> (QPoly, QPoly, QPoly) {
    let mut r0 = a.clone();
    let mut r1 = b.clone();
    trim(&mut r0);
    trim(&mut r1);
    let mut s0: QPoly = vec![BigRational::one()];
    let mut s1: QPoly = Vec::new();
    let mut t0: QPoly = Vec::new();
    let mut t1: QPoly = vec![BigRational::one()];
    while !is_zero(&r1) {
        let (q, r) = divrem(&r0, &r1);
        r0 = std::mem::replace(&mut r1, r);
        let qs = mul(&q, &s1);
        let qt = mul(&q, &t1);
        let next_s = poly_sub(&s0, &qs);
        let next_t = poly_sub(&t0, &qt);
        s0 = std::mem::replace(&mut s1, next_s);
        t0 = std::mem::replace(&mut t1, next_t);
    }
    (r0, s0, t0)
}

fn poly_sub(a: &QPoly, b: &QPoly) -> QPoly {
    let mut out = a.clone();
    if out.len() < b.len() {
        out.resize(b.len(), BigRational::zero());
    }
    for (i, bi) in b.iter().enumerate() {
        out[i] -= bi;
    }
    trim(&mut out);
    out
}

/// Exact division of integer polynomials; `b` must be monic and divide `a`.
fn int_div_exact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    assert!(b[db].is_one(), "divisor must be monic");
    let mut rem = a.to_vec();
    let mut quo = vec![BigInt::zero(); rem.len() - db];
    for top in (db..rem.len()).rev() {
        let factor = std::mem::replace(&mut rem[top], BigInt::zero());
        if factor.is_zero() {
            continue;
        }
        quo[top - db] = factor.clone();
        for (i, bi) in b.iter().enumerate().take(db) {
            let idx = top - db + i;
            rem[idx] -= &factor * bi;
        }
    }
    assert!(rem.iter().all(Zero::is_zero), "division was not exact");
    quo
}

fn divisors(m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= m {
        if m % d == 0 {
            out.push(d);
            if d != m / d {
                out.push(m / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

/// The m-th cyclotomic polynomial with integer coefficients, memoized.
pub(crate) fn cyclotomic_int(m: u64) -> Arc<Vec<BigInt>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&m) {
        return hit.clone();
    }
    // x^m - 1 divided by the cyclotomic polynomials of all proper divisors.
    let mut poly = vec![BigInt::zero(); m as usize + 1];
    poly[0] = -BigInt::one();
    poly[m as usize] = BigInt::one();
    for d in divisors(m) {
        if d == m {
            continue;
        }
        let phi_d = cyclotomic_int(d);
        poly = int_div_exact(&poly, &phi_d);
    }
    let arc = Arc::new(poly);
    cache.lock().unwrap().insert(m, arc.clone());
    arc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn cyclotomic_small_orders() {
        let to_i64 = |p: &Arc<Vec<BigInt>>| -> Vec<i64> {
            p.iter().map(|c| i64::try_from(c).unwrap()).collect()
        };
        assert_eq!(to_i64(&cyclotomic_int(1)), vec![-1, 1]);
        assert_eq!(to_i64(&cyclotomic_int(2)), vec![1, 1]);
        assert_eq!(to_i64(&cyclotomic_int(3)), vec![1, 1, 1]);
        assert_eq!(to_i64(&cyclotomic_int(4)), vec![1, 0, 1]);
        assert_eq!(to_i64(&cyclotomic_int(6)), vec![1, -1, 1]);
        assert_eq!(to_i64(&cyclotomic_int(12)), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn divrem_roundtrip() {
        // (x^2 + 1)(x + 2) + 3
        let b = vec![q(1), q(0), q(1)];
        let quo = vec![q(2), q(1)];
        let mut a = mul(&b, &quo);
        a[0] += q(3);
        let (q2, r2) = divrem(&a, &b);
        assert_eq!(q2, quo);
        assert_eq!(r2, vec![q(3)]);
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = vec![q(1), q(1), q(1)]; // x^2 + x + 1
        let b = vec![q(-1), q(1)]; // x - 1
        let (g, u, v) = ext_gcd(&a, &b);
        let mut lhs = mul(&u, &a);
        let rhs = mul(&v, &b);
        if lhs.len() < rhs.len() {
            lhs.resize(rhs.len(), BigRational::zero());
        }
        for (i, c) in rhs.iter().enumerate() {
            lhs[i] += c;
        }
        trim(&mut lhs);
        assert_eq!(lhs, g);
        // gcd is a nonzero constant
        assert_eq!(g.len(), 1);
        assert!(!g[0].is_zero());
    }
}
